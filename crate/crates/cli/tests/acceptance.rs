//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tprod_core::analyzer::sarason::default_radii;
use tprod_core::analyzer::{
    analyze, carleson_constant, product_section, sarason_scan, section_norm, two_weighted_projection_norm,
    AnalysisConfig, BoundednessReport, Thresholds, Trend, VerdictKind,
};
use tprod_core::fourier::FourierSeries;
use tprod_core::hardy::kernel::{apply_coanalytic, range_inner};
use tprod_core::hardy::{outer_from_modulus_fn, range_kernel, riesz_project, KernelVector};
use tprod_core::pathology::{
    dyadic_zeros, infinite_pole_step_function, oscillation_scan, pole_order_function, ScanTarget, ScanVerdict,
};
use tprod_core::symbol::{detect_poles, parse_symbol, L2Symbol, Part, SymbolExpr};

type Outcome = Result<String, String>;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sym(s: &str) -> SymbolExpr {
    parse_symbol(s).unwrap()
}

fn rand_c(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn rand_disk(rng: &mut ChaCha8Rng, r_max: f64) -> Complex64 {
    Complex64::from_polar(r_max * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn horner(cs: &[Complex64], x: Complex64) -> Complex64 {
    cs.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * x + a)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct Pair {
    name: &'static str,
    u: SymbolExpr,
    v: L2Symbol,
    bounded: bool,
}

fn corpus() -> Vec<Pair> {
    let an = |s: &str| L2Symbol::analytic(sym(s)).unwrap();
    let co = |s: &str| L2Symbol::conjugate_of(&sym(s)).unwrap();
    let p = |name, u: &str, v, bounded| Pair { name, u: sym(u), v, bounded };
    vec![
        p("B1", "1", an("1"), true),
        p("B2", "(1-z)^-1", an("1-z"), true),
        p("B3", "z", an("z"), true),
        p("B4", "(1-z)^-0.25", co("(1-z)^0.25"), true),
        p("B5", "2+z", co("3+z"), true),
        p("B6", "(1-z)^-1*(1+z)^-1", an("(1-z)*(1+z)"), true),
        p("U1", "(1-z)^-1", an("1"), false),
        p("U2", "(1-z)^-0.25", co("(1-z)^-0.25"), false),
    ]
}

fn c1_projection() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (neg, pos) = (rng.gen_range(0..=64), rng.gen_range(0..=64));
        let f = FourierSeries::from_pairs((-(neg as i64)..=pos as i64).map(|n| (n, rand_c(&mut rng))));
        let p = riesz_project(&f);
        if riesz_project(&p) != p {
            return Err("P(Pf) != Pf".into());
        }
        let q = &f - &p;
        worst = worst.max((p.norm_sqr() + q.norm_sqr() - f.norm_sqr()).abs());
    }
    let t = start.elapsed();
    check(worst <= 1e-10 && t < Duration::from_secs(1), format!("max Pythagoras error {worst:.2e}, {t:?}"))
}

fn c2_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let deg = rng.gen_range(0..=32);
        let mut cs: Vec<Complex64> = (0..=deg).map(|_| rand_c(&mut rng)).collect();
        let direct: Vec<Complex64> = (0..20).map(|_| rand_disk(&mut rng, 0.9)).collect();
        cs.resize(513, c(0.0, 0.0));
        for x in direct {
            let k = KernelVector::new(x, 512, false).unwrap();
            worst = worst.max((horner(&cs, x) - k.pair(&cs)).norm());
        }
    }
    check(worst <= 1e-8, format!("max |f(x) - <f, k_x>| = {worst:.2e}"))
}

fn norms(r: &BoundednessReport) -> Vec<f64> {
    r.norm_table.iter().map(|x| x.section_norm.unwrap_or(f64::NAN)).collect()
}

fn c3_bounded(r: &BoundednessReport, t: Duration) -> Outcome {
    let adm = r.admissibility.value.as_ref().is_some_and(|a| a.overall);
    let ess_ok = r.ess_sup.rows.iter().all(|x| (x.max - 1.0).abs() <= 1e-12);
    let ns = norms(r);
    let degrees: Vec<usize> = r.norm_table.iter().map(|x| x.n).collect();
    let m_ok = r.norm_table.iter().all(|x| x.m == 2 * x.n);
    let mono = ns.windows(2).all(|w| w[1] >= w[0]) && ns.iter().all(|&x| x <= 3.0);
    let bounded = r.verdict.kind == VerdictKind::Bounded;
    check(
        adm && ess_ok && degrees == [32, 64, 128, 256] && m_ok && mono && bounded && t < Duration::from_secs(30),
        format!("admissible {adm}, ess_sup {:?}, norms {ns:?}, verdict {:?}, {t:?}", r.ess_sup.last(), r.verdict.kind),
    )
}

fn c4_unbounded(r: &BoundednessReport) -> Outcome {
    let ess: Vec<f64> = r.ess_sup.rows.iter().map(|x| x.max).collect();
    let grows = ess.windows(2).all(|w| w[1] >= 1.25 * w[0]);
    let ns = norms(r);
    let ratio = ns.last().unwrap() / ns[0];
    check(
        grows && ratio >= 2.0 && r.verdict.kind == VerdictKind::Unbounded,
        format!("ess_sup {ess:.3?}, |A256|/|A32| = {ratio:.2}, verdict {:?}", r.verdict.kind),
    )
}

fn disk_max(p: &Pair) -> f64 {
    let mut best = 0.0f64;
    let mut dirs: Vec<Complex64> =
        (0..256).map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 256.0)).collect();
    dirs.extend(p.u.boundary_exponents().into_iter().map(|(t, _)| t));
    for k in 0..=99 {
        let r = 0.99 * k as f64 / 99.0;
        for &d in &dirs {
            let x = d * r;
            if let (Ok(a), Ok(b)) = (p.u.eval(x), p.v.eval_disk(x)) {
                best = best.max((a * b).norm());
            }
        }
    }
    best
}

fn c5_forward(reports: &[(&Pair, BoundednessReport)]) -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (p, r) in reports {
        let largest = r.norm_table.last().and_then(|x| x.section_norm).unwrap_or(f64::NAN);
        let m = disk_max(p);
        ok &= m <= largest + 0.05;
        lines.push(format!("{} {m:.4}<={largest:.4}", p.name));
    }
    check(ok, lines.join(", "))
}

fn coanalytic_bounded() -> Vec<Pair> {
    corpus().into_iter().filter(|p| p.bounded && p.v.is_coanalytic()).collect()
}

fn c6_two_weighted() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in coanalytic_bounded() {
        let a = section_norm(&product_section(&p.u, &p.v, 64, 128).unwrap(), 1e-10).value;
        let w = two_weighted_projection_norm(&p.v, &p.u, 64).map(|x| x.value).unwrap_or(f64::NAN);
        let rel = (w - a).abs() / a;
        ok &= rel <= 0.1;
        lines.push(format!("{} {w:.4} vs {a:.4}", p.name));
    }
    check(ok, lines.join(", "))
}

fn c7_carleson() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in coanalytic_bounded() {
        let a = section_norm(&product_section(&p.u, &p.v, 128, 256).unwrap(), 1e-10).value;
        let w = p.v.conjugate_generator().unwrap();
        let k = carleson_constant(&p.u, &w, 128).unwrap_or(f64::NAN);
        let rel = (k - a).abs() / a;
        ok &= rel <= 0.1;
        lines.push(format!("{} {k:.4} vs {a:.4}", p.name));
    }
    check(ok, lines.join(", "))
}

fn c8_sarason() -> Outcome {
    let th = Thresholds::default();
    let radii = default_radii(12);
    let u = sym("(1-z)^-0.25");
    let grow = sarason_scan(&u, &u, &radii, 64, &th).map_err(|e| e.to_string())?;
    let cancel = sarason_scan(&u, &sym("(1-z)^0.25"), &radii, 64, &th).map_err(|e| e.to_string())?;
    let tail: Vec<f64> = cancel.rows.iter().filter(|r| r.r >= 1.0 - 0.5f64.powi(8) - 1e-15).map(|r| r.max).collect();
    let (lo, hi) = tail.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    let spread = (hi - lo) / lo;
    check(
        grow.slope > 0.0 && tail.len() == 5 && spread <= 0.05,
        format!("growing slope {:.4}; cancelling maxima {tail:.4?}, spread {:.2}%", grow.slope, 100.0 * spread),
    )
}

fn c9_outer() -> Outcome {
    let g = outer_from_modulus_fn(|t| (ONE - Complex64::from_polar(1.0, t)).norm(), 1024).map_err(|e| e.to_string())?;
    let phase = g.eval_analytic(c(0.0, 0.0));
    let phase = phase / phase.norm();
    let mut worst = 0.0f64;
    for k in 0..=45 {
        let r = 0.9 * k as f64 / 45.0;
        for j in 0..128 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 128.0);
            worst = worst.max((g.eval_analytic(z) - phase * (ONE - z)).norm());
        }
    }
    check(worst <= 1e-6, format!("max error {worst:.2e}"))
}

fn c10_poles() -> Outcome {
    let f = sym("(1-z)^-0.3333333333333333");
    let poles = detect_poles(&f, Part::Analytic);
    let order_ok = poles.len() == 1 && poles[0].order == 1 && (poles[0].location - ONE).norm() < 1e-12;
    let scan = |f: &SymbolExpr, n| oscillation_scan(ScanTarget::Expr(f), ONE, n, 0.5).map_err(|e| e.to_string());
    let v1 = scan(&f, 1)?.verdict;
    let v0 = scan(&f, 0)?.verdict;
    let q = pole_order_function(&dyadic_zeros(8), 1).map_err(|e| e.to_string())?;
    let osc = scan(&q, 0)?;
    check(
        order_ok
            && v1 == ScanVerdict::Bounded
            && v0 == ScanVerdict::MonotoneBlowup
            && osc.verdict == ScanVerdict::Oscillatory
            && osc.interleaved_pairs() >= 3,
        format!(
            "poles {:?}; n=1 {v1:?}, n=0 {v0:?}; quotient {:?} with {} pairs",
            poles.iter().map(|p| p.order).collect::<Vec<_>>(),
            osc.verdict,
            osc.interleaved_pairs()
        ),
    )
}

fn c11_range_kernel() -> Outcome {
    let v = sym("1-z");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 512;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let deg = rng.gen_range(0..=32);
        let mut f: Vec<Complex64> = (0..=deg).map(|_| rand_c(&mut rng)).collect();
        let f0 = f[0];
        let points: Vec<Complex64> = (0..10).map(|_| rand_disk(&mut rng, 0.9)).collect();
        let fx: Vec<Complex64> = points.iter().map(|&x| horner(&f, x)).collect();
        f.resize(n + 1, c(0.0, 0.0));
        let g = FourierSeries::analytic(apply_coanalytic(&v, &f).map_err(|e| e.to_string())?);
        for (&x, &fxv) in points.iter().zip(&fx) {
            // T_conj(1-z) f = f - (f - f(0))/z
            let want = if x.norm() == 0.0 { f0 - f[1] } else { fxv - (fxv - f0) / x };
            let k = range_kernel(&v, x, n).map_err(|e| e.to_string())?;
            let got = range_inner(&v, &g, &k).map_err(|e| e.to_string())?;
            worst = worst.max((got - want).norm());
        }
    }
    check(worst <= 1e-8, format!("max error {worst:.2e}"))
}

fn c12_step() -> Outcome {
    let s = infinite_pole_step_function(6).map_err(|e| e.to_string())?;
    let want: f64 = (3..=6).map(|k| 1.0 / (k * k) as f64).sum();
    let exact = (s.norm_sqr() - want).abs() <= 1e-15;
    let growth_ok = (0..=3).all(|n| {
        let g = s.growth(n);
        g.windows(2).filter(|w| w[0].0 >= 4).all(|w| w[1].1 > w[0].1)
    });
    check(
        exact && s.is_disjoint() && growth_ok,
        format!("norm_sqr {} vs {want}, disjoint {}, growth n=3 {:?}", s.norm_sqr(), s.is_disjoint(), s.growth(3)),
    )
}

fn c13_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_tprod"))
            .args(["analyze", "--u", "(1-z)^-1", "--v-plus", "1-z", "--report"])
            .arg(&path)
            .env_remove("TP_THREADS")
            .output()
            .map_err(|e| e.to_string())?
            .status;
        if !status.success() {
            return Err(format!("exit {status}"));
        }
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let (a, b) = (run("a.json")?, run("b.json")?);
    check(a == b && !a.is_empty(), format!("{} bytes, identical {}", a.len(), a == b))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match out {
        Ok(d) => {
            println!("PASS {name}: {d}");
            true
        }
        Err(d) => {
            println!("FAIL {name}: {d}");
            false
        }
    }
}

fn main() {
    let cfg = AnalysisConfig::default();
    let pairs = corpus();
    let mut reports = Vec::new();
    let mut b2_time = Duration::ZERO;
    for p in &pairs {
        let start = Instant::now();
        let r = analyze(&p.u, &p.v, &cfg);
        if p.name == "B2" {
            b2_time = start.elapsed();
        }
        reports.push((p, r));
    }
    let report = |name: &str| &reports.iter().find(|(p, _)| p.name == name).unwrap().1;

    let results = [
        run("projection orthogonality", c1_projection),
        run("kernel reproduction", c2_kernel),
        run("bounded pair", || c3_bounded(report("B2"), b2_time)),
        run("unbounded pair", || c4_unbounded(report("U1"))),
        run("forward inequality", || c5_forward(&reports)),
        run("two-weighted consistency", c6_two_weighted),
        run("Carleson identity", c7_carleson),
        run("Sarason radial behaviour", c8_sarason),
        run("outer reconstruction", c9_outer),
        run("pole taxonomy", c10_poles),
        run("range kernel", c11_range_kernel),
        run("step function", c12_step),
        run("determinism", c13_determinism),
    ];
    let verdicts_ok = reports.iter().all(|(p, r)| (r.ess_sup.trend == Trend::FiniteTrend) == p.bounded);
    let passed = results.iter().filter(|&&x| x).count();
    println!("{passed}/{} acceptance checks passed", results.len());
    if passed != results.len() || !verdicts_ok {
        std::process::exit(1);
    }
}
