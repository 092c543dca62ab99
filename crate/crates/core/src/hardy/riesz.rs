use num_complex::Complex64;

use crate::fourier::FourierSeries;

/// `P`: keep `n >= 0`, zero `n < 0`.
pub fn riesz_project(s: &FourierSeries) -> FourierSeries {
    let mut out = s.clone();
    for n in s.lo()..0 {
        *out.get_mut(n).expect("in range") = Complex64::new(0.0, 0.0);
    }
    out
}

/// `I - P`.
pub fn co_project(s: &FourierSeries) -> FourierSeries {
    let mut out = s.clone();
    for n in 0..=s.hi() {
        *out.get_mut(n).expect("in range") = Complex64::new(0.0, 0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn keeps_nonnegative_indices() {
        let s = FourierSeries::from_pairs([(-1, c(1.0)), (0, c(2.0)), (1, c(3.0))]);
        let p = riesz_project(&s);
        assert_eq!(p.get(-1), c(0.0));
        assert_eq!(p.get(0), c(2.0));
        assert_eq!(p.get(1), c(3.0));
        assert_eq!(riesz_project(&p), p);
        let neg = FourierSeries::from_pairs([(-3, c(1.0)), (-1, c(5.0))]);
        assert_eq!(riesz_project(&neg).norm(), 0.0);
    }
}
