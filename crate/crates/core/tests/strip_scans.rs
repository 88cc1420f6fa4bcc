use critstrip::chi::chi;
use critstrip::point::EvalConfig;
use critstrip::scan::{
    emit_figure_grid, scan_chi_modulus, scan_condition_a, scan_theorem, with_workers, GridSpec, Severity,
    StripRect,
};
use critstrip::zeta::zeta;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn reports_do_not_depend_on_worker_count() {
    let cfg = EvalConfig::default();
    let rect = StripRect::new(0.0, 0.5, 12.0, 16.0).unwrap();
    let grid = GridSpec::refined(0.05, 0.1).unwrap();
    let run = |workers| {
        with_workers(workers, || scan_theorem(&rect, &grid, &cfg).unwrap().without_timing().to_json())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn figure_does_not_depend_on_worker_count() {
    let cfg = EvalConfig::default();
    let rect = StripRect::new(0.0, 0.5, 6.0, 8.0).unwrap();
    let grid = GridSpec::uniform(0.05, 0.05).unwrap();
    let run = |workers| {
        with_workers(workers, || {
            let mut buf = Vec::new();
            emit_figure_grid(&rect, &grid, &cfg, &mut buf).unwrap();
            buf
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn refinement_is_sound() {
    let cfg = EvalConfig::default();
    let rect = StripRect::new(0.0, 0.5, 1.0, 7.0).unwrap();
    let coarse = scan_chi_modulus(&rect, &GridSpec::uniform(0.05, 0.25).unwrap(), &cfg).unwrap();
    for depth in 1..=3 {
        let fine = scan_chi_modulus(&rect, &GridSpec::new(0.05, 0.25, 0.01, depth).unwrap(), &cfg).unwrap();
        assert!(fine.violation_count >= coarse.violation_count);
        assert!(fine.samples > coarse.samples);
        for v in &fine.violations {
            assert!(v.sigma > rect.sigma_min && v.sigma < rect.sigma_max);
            assert!(v.t >= rect.t_min && v.t <= rect.t_max);
        }
    }
}

#[test]
fn argmin_is_a_sample_and_violations_match_sign() {
    let cfg = EvalConfig::default();
    for (t_min, t_max) in [(1.0, 6.0), (12.0, 20.0)] {
        let rect = StripRect::new(0.0, 0.5, t_min, t_max).unwrap();
        let r = scan_chi_modulus(&rect, &GridSpec::refined(0.05, 0.25).unwrap(), &cfg).unwrap();
        let at = Complex64::new(r.argmin.sigma, r.argmin.t);
        assert_eq!(1.0 - chi(at, &cfg).unwrap().norm(), r.min_margin);
        assert_eq!(r.violation_count > 0, r.min_margin < 0.0);
        let clean = r.severity == Severity::Clean;
        assert_eq!(clean, r.violation_count == 0);
    }
}

#[test]
fn condition_a_audit_agrees() {
    let cfg = EvalConfig::default();
    let rect = StripRect::new(0.01, 0.49, 6.5, 30.0).unwrap();
    let r = scan_condition_a(&rect, &GridSpec::uniform(0.04, 0.1).unwrap(), &cfg).unwrap();
    let audit = r.derivative_audit.unwrap();
    assert_eq!(audit.samples, 100);
    assert!(audit.max_abs_deviation < 1e-6, "{}", audit.max_abs_deviation);
}

proptest! {
    /// `|ζ(s)| − |ζ(1 − s)| = |ζ(s)| (1 − |g(s)|)`, so the theorem and chi
    /// margins share a sign away from zeros.
    #[test]
    fn theorem_and_chi_margins_agree_in_sign(sigma in 0.001f64..0.499, t in 0.5f64..60.0) {
        let cfg = EvalConfig::default();
        let s = Complex64::new(sigma, t);
        let z = zeta(s, &cfg).unwrap().norm();
        prop_assume!(z > 1e-6);
        let theorem = z - zeta(1.0 - s, &cfg).unwrap().norm();
        let chi_margin = 1.0 - chi(s, &cfg).unwrap().norm();
        prop_assume!(chi_margin.abs() > 1e-12);
        prop_assert_eq!(theorem > 0.0, chi_margin > 0.0);
    }
}
