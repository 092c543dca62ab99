//! Composite tanh-sinh quadrature on the unit circle for integrands with
//! algebraic endpoint singularities at known boundary points.

use num_complex::Complex64;

/// Nodes and weights for `integral f dm`, `dm = d theta / (2 pi)`.
#[derive(Debug, Clone)]
pub struct CircleRule {
    pub nodes: Vec<Complex64>,
    pub weights: Vec<f64>,
}

const T_MAX: f64 = 3.6;

impl CircleRule {
    /// Panels split at every point of `breaks` (unit complex numbers) and
    /// further subdivided so no panel exceeds `2 pi / min_panels`. Each panel
    /// gets a tanh-sinh rule with step `2^-level`.
    pub fn new(breaks: &[Complex64], min_panels: usize, level: u32) -> CircleRule {
        let mut angles: Vec<(f64, Complex64)> = breaks
            .iter()
            .map(|&p| {
                let p = p / p.norm();
                (p.arg().rem_euclid(std::f64::consts::TAU), p)
            })
            .collect();
        if angles.is_empty() {
            angles.push((0.0, Complex64::new(1.0, 0.0)));
        }
        angles.sort_by(|a, b| a.0.total_cmp(&b.0));
        angles.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-15);

        let max_len = std::f64::consts::TAU / min_panels.max(1) as f64;
        let h = 0.5f64.powi(level as i32);
        let k_max = (T_MAX / h).ceil() as i64;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for i in 0..angles.len() {
            let (a0, p0) = angles[i];
            let (a1, p1) = if i + 1 < angles.len() {
                angles[i + 1]
            } else {
                (angles[0].0 + std::f64::consts::TAU, angles[0].1)
            };
            let len = a1 - a0;
            if len <= 0.0 {
                continue;
            }
            let pieces = (len / max_len).ceil().max(1.0) as usize;
            let piece = len / pieces as f64;
            for s in 0..pieces {
                let left = if s == 0 { p0 } else { p0 * Complex64::from_polar(1.0, s as f64 * piece) };
                let right = if s + 1 == pieces {
                    p1
                } else {
                    p0 * Complex64::from_polar(1.0, (s + 1) as f64 * piece)
                };
                for k in -k_max..=k_max {
                    let t = k as f64 * h;
                    let u = std::f64::consts::FRAC_PI_2 * t.sinh();
                    let w = piece / 2.0 * h * std::f64::consts::FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
                    // distance to the nearer endpoint, free of cancellation
                    let off = piece / (1.0 + (2.0 * u.abs()).exp());
                    if !(off > 0.0) || w == 0.0 {
                        continue;
                    }
                    let z = if t < 0.0 {
                        left * Complex64::from_polar(1.0, off)
                    } else if t > 0.0 {
                        right * Complex64::from_polar(1.0, -off)
                    } else {
                        left * Complex64::from_polar(1.0, piece / 2.0)
                    };
                    nodes.push(z);
                    weights.push(w / std::f64::consts::TAU);
                }
            }
        }
        CircleRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `integral f dm`; non-finite values are skipped.
    pub fn integrate<F: Fn(Complex64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| {
                let v = f(z);
                if v.is_finite() {
                    v * w
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// `rho^(n) = integral rho conj(zeta)^n dm` for `n = 0..=max_n`, with
    /// weight values given at the nodes.
    pub fn fourier_of(&self, values: &[f64], max_n: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); max_n + 1];
        for ((&z, &w), &v) in self.nodes.iter().zip(&self.weights).zip(values) {
            if !v.is_finite() {
                continue;
            }
            let step = z.conj();
            let mut p = Complex64::new(v * w, 0.0);
            for c in out.iter_mut() {
                *c += p;
                p *= step;
            }
        }
        out
    }
}
