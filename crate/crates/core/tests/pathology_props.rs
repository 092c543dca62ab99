use num_complex::Complex64;
use proptest::prelude::*;
use tprod_core::analyzer::{Thresholds, Trend};
use tprod_core::pathology::{
    blaschke_value, dyadic_zeros, hp_norm_estimate, infinite_pole_step_function, oscillation_scan,
    pole_order_function, ScanTarget, ScanVerdict,
};
use tprod_core::symbol::{unit_root, Exponent, SymbolExpr};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn inside(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn unit() -> impl Strategy<Value = Complex64> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blaschke_products_are_unimodular(zeros in prop::collection::vec(inside(0.999), 0..12)) {
        for j in 0..1024 {
            let b = blaschke_value(&zeros, unit_root(j, 1024));
            prop_assert!((b.norm() - 1.0).abs() <= 1e-10);
        }
        let f = SymbolExpr::blaschke(zeros.clone());
        if let Ok(f) = f {
            let z = unit_root(37, 1024);
            prop_assert!((f.eval(z).unwrap() - blaschke_value(&zeros, z)).norm() < 1e-12);
        }
    }

    #[test]
    fn step_norms_are_exact(k in 4usize..=96, n in 0u32..=3) {
        let s = infinite_pole_step_function(k).unwrap();
        let want: f64 = (3..=k).map(|j| 1.0 / (j * j) as f64).sum();
        prop_assert!((s.norm_sqr() - want).abs() <= 1e-14 * want);
        prop_assert!(s.is_disjoint());
        let g = s.growth(n);
        for w in g.windows(2).filter(|w| w[0].0 >= 4) {
            prop_assert!(w[1].1 > w[0].1, "n = {n}: {:?}", w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pole_order_is_recovered_by_the_scan(count in 8usize..=12, n in 1u32..=3) {
        let f = pole_order_function(&dyadic_zeros(count), n).unwrap();
        let at_n = oscillation_scan(ScanTarget::Expr(&f), ONE, n, 0.5).unwrap();
        prop_assert_eq!(at_n.verdict, ScanVerdict::Bounded);
        for i in 0..n {
            let r = oscillation_scan(ScanTarget::Expr(&f), ONE, i, 0.5).unwrap();
            prop_assert!(
                matches!(r.verdict, ScanVerdict::MonotoneBlowup | ScanVerdict::Oscillatory),
                "count {count}, n {n}, i {i}: {:?}", r.verdict
            );
        }
    }

    /// A square-integrable f cannot stay above c / |z - t| on every dyadic
    /// arc, so the inf of |(z - t) f| must fall off along the scan.
    #[test]
    fn square_integrable_functions_escape_the_pole_bound(t in unit(), alpha in 0.05..0.45f64) {
        let f = SymbolExpr::root_power(t, Exponent::Real(-alpha)).unwrap();
        let grids: Vec<usize> = (10..=16).map(|k| 1 << k).collect();
        let hp = hp_norm_estimate(&f, 2.0, &grids, &Thresholds::default()).unwrap();
        prop_assume!(hp.trend == Trend::FiniteTrend);
        let r = oscillation_scan(ScanTarget::Expr(&f), t, 1, 0.5).unwrap();
        let first = r.arcs.first().unwrap().inf;
        let last = r.arcs.last().unwrap().inf;
        prop_assert!(last <= 0.1 * first, "{first} -> {last}");
    }
}

#[test]
fn step_norm_agrees_with_fine_grids() {
    let s = infinite_pole_step_function(4).unwrap();
    let integral = |g: usize| {
        let h = 0.5 / g as f64;
        (0..g).map(|j| s.value_at((j as f64 + 0.5) * h).powi(2)).sum::<f64>() * h / std::f64::consts::TAU
    };
    let (coarse, fine) = (integral(1 << 19), integral(1 << 20));
    assert!((fine - s.norm_sqr()).abs() < 1e-2 * s.norm_sqr(), "{fine} vs {}", s.norm_sqr());
    assert!((fine - coarse).abs() < 1e-2 * fine);
}

#[test]
fn oscillation_needs_enough_arcs() {
    let f = pole_order_function(&dyadic_zeros(2), 1).unwrap();
    let r = oscillation_scan(ScanTarget::Expr(&f), ONE, 0, 0.5).unwrap();
    assert_eq!(r.verdict, ScanVerdict::Inconclusive);
    assert!(r.note.is_some());
}

#[test]
fn interleaving_grows_with_truncation() {
    let pairs: Vec<usize> = [8, 12, 16]
        .iter()
        .map(|&m| {
            let f = pole_order_function(&dyadic_zeros(m), 1).unwrap();
            oscillation_scan(ScanTarget::Expr(&f), ONE, 0, 0.5).unwrap().interleaved_pairs()
        })
        .collect();
    assert!(pairs.windows(2).all(|w| w[1] > w[0]), "{pairs:?}");
}
