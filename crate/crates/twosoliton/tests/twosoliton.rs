use std::f64::consts::PI;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use soliton_backlund::add_solitons;
use soliton_core::{Error, Grid, GridField, PhasePoint};
use soliton_evolution::Flow;
use soliton_twosoliton::*;

/// The double soliton at z = i written out by hand, in the variables
/// `X = x + β₁ − β₃` and up to the constant phase `e^{2i(β₂ − β₀)}`.
fn double_oracle(x: f64, beta: [f64; 4]) -> C {
    let [b0, b1, b2, b3] = beta;
    let (xx, b2) = (x + b1 - b3, -b2);
    let i = C::i();
    let num = 4.0 * ((1.0 - 4.0 * i * b2) * (2.0 * xx).cosh() - 2.0 * (xx - 2.0 * b3) * (2.0 * xx).sinh());
    let den = (2.0 * xx).cosh().powi(2) + 4.0 * (4.0 * b2 * b2 + (xx - 2.0 * b3).powi(2));
    C::from_polar(1.0, 2.0 * (-b2 - b0)) * num / den
}

fn random_params(rng: &mut ChaCha8Rng, min_gap: f64, max_gap: f64) -> TwoSolParams {
    loop {
        let z1 = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.5));
        let z2 = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.5));
        let gap = (z1 - z2).norm();
        let z2 = if max_gap < 0.5 { z1 + C::from_polar(rng.gen_range(min_gap..max_gap), rng.gen_range(0.0..2.0 * PI)) } else { z2 };
        if max_gap >= 0.5 && gap < min_gap {
            continue;
        }
        let beta = [rng.gen_range(0.0..PI), rng.gen_range(-2.0..2.0), rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3)];
        return TwoSolParams::new(z1, z2, beta).unwrap();
    }
}

#[test]
fn closed_form_agrees_with_gram_construction() {
    let g = Grid::centered(2048, 60.0).unwrap();
    let vac = GridField::zeros(g);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..20 {
        let p = random_params(&mut rng, 0.1, 10.0);
        let exact = add_solitons(&vac, &p.to_phase_point().unwrap()).unwrap();
        let err = closed_form_field(&p, g).unwrap().sup_distance(&exact);
        assert!(err < 1e-8, "draw {k}: {p:?} error {err}");
    }
    for k in 0..5 {
        let p = random_params(&mut rng, 1e-3, 0.1);
        let exact = add_solitons(&vac, &p.to_phase_point().unwrap()).unwrap();
        let err = closed_form_field(&p, g).unwrap().sup_distance(&exact);
        assert!(err < 1e-6, "near-confluent draw {k}: {p:?} error {err}");
    }
}

#[test]
fn double_soliton_matches_hand_formula() {
    let p = TwoSolParams::new(C::i(), C::i(), [0.0; 4]).unwrap();
    assert!((closed_form_q(&p, 0.0) - 4.0).norm() < 1e-14);
    for beta in [[0.0, 0.0, 0.3, 0.0], [0.0, 0.0, 0.0, 0.4], [0.7, -0.5, 0.2, -0.3], [1.1, 2.0, -0.6, 0.9]] {
        let p = TwoSolParams::new(C::i(), C::i(), beta).unwrap();
        for x in [-3.0, -0.7, 0.0, 0.5, 1.3, 4.0] {
            let err = (closed_form_q(&p, x) - double_oracle(x, beta)).norm();
            assert!(err < 1e-13, "β = {beta:?}, x = {x}: {err}");
        }
    }
    // The Gram construction with a double root agrees as well.
    let g = Grid::centered(1024, 40.0).unwrap();
    let p = TwoSolParams::new(C::new(0.2, 0.9), C::new(0.2, 0.9), [0.3, 0.4, -0.2, 0.1]).unwrap();
    let exact = add_solitons(&GridField::zeros(g), &p.to_phase_point().unwrap()).unwrap();
    assert!(closed_form_field(&p, g).unwrap().sup_distance(&exact) < 1e-8);
}

#[test]
fn closed_form_does_not_overflow() {
    let p = TwoSolParams::new(C::new(0.3, 2.0), C::new(-0.2, 0.3), [0.0, 0.0, 40.0, 60.0]).unwrap();
    for x in [-1e4, -300.0, -50.0, 0.0, 50.0, 300.0, 1e4] {
        let q = closed_form_q(&p, x);
        assert!(q.re.is_finite() && q.im.is_finite(), "x = {x}: {q}");
        assert!(q.norm() <= 2.0 * (p.z1.im + p.z2.im) + 1e-9);
    }
}

#[test]
fn amplitude_bound_and_mass() {
    let g = Grid::centered(4096, 120.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<TwoSolParams> = (0..6).map(|_| random_params(&mut rng, 0.1, 10.0)).collect();
    cases.push(TwoSolParams::new(C::i(), C::i(), [0.0; 4]).unwrap());
    cases.push(TwoSolParams::new(C::new(0.1, 0.8), C::new(0.1, 0.8), [0.0, 0.0, 2.0, -1.0]).unwrap());
    for p in cases {
        let f = closed_form_field(&p, g).unwrap();
        let bound = 2.0 * (p.z1.im + p.z2.im);
        assert!(f.sup_norm() <= bound + 1e-9, "{p:?}");
        let mass = f.l2_norm().powi(2);
        assert!((mass - 4.0 * (p.z1.im + p.z2.im)).abs() < 1e-6, "{p:?}: mass {mass}");
    }
}

#[test]
fn effective_parameter_invariants() {
    let p = TwoSolParams::new(C::new(0.2, 0.7), C::new(-0.1, 1.2), [0.4, -0.3, 12.0, -4.0]).unwrap();
    let e = effective_params(&p).unwrap();
    assert!((e.z_plus + e.z_minus - p.z1 - p.z2).norm() < 1e-12);
    let weighted = (p.z1.im * p.free_center(p.z1) + p.z2.im * p.free_center(p.z2)) / (p.z1.im + p.z2.im);
    assert!((e.x0 - weighted).abs() < 1e-12);
    // Double eigenvalue: α₀ = γ₀₀ = 1/σ₀, and γ₀₀ = −2β₂ − 2iβ₃ at z = i.
    let d = TwoSolParams::new(C::i(), C::i(), [0.0, 0.0, 3.0, 4.0]).unwrap();
    let e = effective_params(&d).unwrap();
    assert!((e.gamma00 - C::new(-6.0, -8.0)).norm() < 1e-12);
    assert!((e.alpha0 - e.gamma00).norm() < 1e-12);
    assert!((e.sigma0 - 1.0 / e.gamma00).norm() < 1e-12);
    // Single-bump regime.
    let s = TwoSolParams::new(C::i(), C::i(), [0.0, 0.0, 0.5, 0.0]).unwrap();
    assert!(matches!(effective_params(&s), Err(Error::SingleBump(a)) if (a - 1.0).abs() < 1e-12));
}

#[test]
fn symmetric_imaginary_case_splits_symmetrically() {
    let (w, rho) = (1.0, 0.1);
    let p = TwoSolParams::new(C::new(0.0, w + rho), C::new(0.0, w - rho), [0.3, 0.7, 5.0, 0.0]).unwrap();
    assert!((p.free_center(p.z1) - p.free_center(p.z2)).abs() < 1e-12);
    let e = effective_params(&p).unwrap();
    assert!(e.sigma0.im.abs() < 1e-12);
    assert!(((e.x_plus - e.x0) + (e.x_minus - e.x0)).abs() < 1e-9);
}

#[test]
fn effective_parameters_predict_the_bumps() {
    let g = Grid::centered(4096, 80.0).unwrap();
    let mut cases = vec![];
    for a in [20.0, 50.0, 200.0] {
        // Double eigenvalue at i: |α₀| = |γ₀₀| = 2|β₃|.
        cases.push((a, TwoSolParams::new(C::i(), C::i(), [0.3, a / 2.0 + 0.2, 0.0, a / 2.0]).unwrap()));
    }
    // Nearby distinct eigenvalues with a complex γ₀₀.
    let near = |b: f64| TwoSolParams::new(C::new(0.01, 1.0), C::new(-0.01, 0.99), [0.0, 0.0, b, b]).unwrap();
    for target in [20.0, 50.0] {
        let mut b = target / 3.0;
        for _ in 0..60 {
            b *= target / alpha0(&near(b)).norm();
        }
        cases.push((target, near(b)));
    }
    for (a, p) in cases {
        let e = effective_params(&p).unwrap();
        assert!((e.alpha0.norm() - a).abs() < 1e-6 * a, "{} vs {a}", e.alpha0.norm());
        let tol = 5.0 * a.ln().powi(2) / (a * a);
        let r = bump_analysis(&closed_form_field(&p, g).unwrap(), None);
        assert_eq!(r.count(), 2, "|α₀| = {a}");
        let (minus, plus) = (r.bumps[0], r.bumps[1]);
        assert!((plus.location - e.x_plus).abs() <= tol, "|α₀| = {a}: x+ {} vs {}", plus.location, e.x_plus);
        assert!((minus.location - e.x_minus).abs() <= tol, "|α₀| = {a}: x- {} vs {}", minus.location, e.x_minus);
        assert!((plus.amplitude - 2.0 * e.z_plus.im).abs() <= tol);
        assert!((minus.amplitude - 2.0 * e.z_minus.im).abs() <= tol);
        let phase_gap = |x: f64, y: f64| {
            let d = (x - y).rem_euclid(PI);
            d.min(PI - d)
        };
        assert!(phase_gap(plus.phase, e.theta_plus) <= tol, "θ+ {} vs {}", plus.phase, e.theta_plus);
        assert!(phase_gap(minus.phase, e.theta_minus) <= tol, "θ- {} vs {}", minus.phase, e.theta_minus);
        assert!(r.decay_ok);
    }
}

#[test]
fn well_separated_solitons_are_shifted() {
    let g = Grid::centered(4096, 80.0).unwrap();
    let (z1, z2) = (C::new(0.3, 0.8), C::new(-0.2, 1.1));
    let (x1, x2) = (9.0, -9.0);
    let point = PhasePoint::from_roots_and_kappas(&[z1, z2], &[C::new(z1.im * x1, 0.2), C::new(z2.im * x2, -0.1)]).unwrap();
    let p = TwoSolParams::from_phase_point(&point).unwrap();
    let r = bump_analysis(&closed_form_field(&p, g).unwrap(), None);
    assert_eq!(r.count(), 2);
    let (left, right) = (r.bumps[0], r.bumps[1]);
    let shift1 = ((z1 - z2.conj()).norm().ln() - (z1 - z2).norm().ln()) / (2.0 * z1.im);
    let shift2 = ((z2 - z1.conj()).norm().ln() - (z2 - z1).norm().ln()) / (2.0 * z2.im);
    assert!((right.location - (x1 + shift1)).abs() < 1e-6, "{} vs {}", right.location, x1 + shift1);
    assert!((left.location - (x2 - shift2)).abs() < 1e-6);
    assert!((separated_shift(z1, z2, true) - shift1).abs() < 1e-15);
    assert!((separated_shift(z2, z1, false) + shift2).abs() < 1e-15);
    // Dividing by the other eigenvalue's imaginary part is measurably off.
    let other = shift1 * z1.im / z2.im;
    assert!((right.location - (x1 + other)).abs() > 1e-3);
    // Amplitudes and frequencies of the separated bumps.
    assert!((right.amplitude - 2.0 * z1.im).abs() < 0.05 && (left.amplitude - 2.0 * z2.im).abs() < 0.05);
    assert!((right.frequency - z1.re).abs() < 1e-3 && (left.frequency - z2.re).abs() < 1e-3);
    assert!(r.decay_ok);
}

#[test]
fn bump_analysis_of_simple_fields() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let q0 = GridField::from_fn(g, |x| C::new(2.0 / (2.0 * x).cosh(), 0.0));
    let r = bump_analysis(&q0, None);
    assert_eq!(r.count(), 1);
    let b = r.bumps[0];
    assert!(b.location.abs() < 1e-8 && (b.amplitude - 2.0).abs() < 1e-12 && b.frequency.abs() < 1e-12 && b.phase < 1e-12);
    assert!(r.decay_ok);
    // A moving soliton 2λ sech(2λ(x−a)) e^{−2iξx − 2iθ}.
    let (lam, xi, a, th) = (0.7, 0.4, 2.5, 0.3);
    let s = GridField::from_fn(g, |x| C::from_polar(2.0 * lam / (2.0 * lam * (x - a)).cosh(), -2.0 * xi * x - 2.0 * th));
    let b = bump_analysis(&s, None).bumps[0];
    assert!((b.location - a).abs() < 1e-8, "{b:?}");
    assert!((b.frequency - xi).abs() < 1e-10, "{b:?}");
    assert!((b.phase - (xi * a + th).rem_euclid(PI)).abs() < 1e-8);
    let empty = bump_analysis(&GridField::zeros(g), None);
    assert_eq!(empty.count(), 0);
    // A field with a slow tail violates the decay bound.
    let slow = GridField::from_fn(g, |x| C::new(2.0 / (2.0 * x).cosh() + 0.2 / (1.0 + x * x), 0.0));
    assert!(!bump_analysis(&slow, None).decay_ok);
}

#[test]
fn large_offset_double_soliton_bumps() {
    let g = Grid::centered(4096, 80.0).unwrap();
    let p = TwoSolParams::new(C::i(), C::i(), [0.0, 100.0, 0.0, 100.0]).unwrap();
    let e = effective_params(&p).unwrap();
    let r = bump_analysis(&closed_form_field(&p, g).unwrap(), None);
    assert_eq!(r.count(), 2);
    assert!((r.bumps[0].location - e.x_minus).abs() < 0.1);
    assert!((r.bumps[1].location - e.x_plus).abs() < 0.1);
}

#[test]
fn breather_is_periodic_and_real() {
    let (w, rho) = (1.0, 0.3);
    let p = TwoSolParams::new(C::new(rho, w), C::new(-rho, w), [0.0, 0.4, 0.0, 0.1]).unwrap();
    // Period in β₃ units, and in mKdV time where β̇₃ = 4.
    let period = PI / (2.0 * rho * (w * w + rho * rho)) / 4.0;
    let v = 4.0 * (w * w - 3.0 * rho * rho);
    let mismatch = |t: f64, s: f64| {
        let later = params_at(&p, Flow::Mkdv, t + s).unwrap();
        let now = params_at(&p, Flow::Mkdv, t).unwrap();
        (0..600)
            .map(|k| -15.0 + 0.05 * k as f64)
            .map(|x| (closed_form_q(&later, x + v * s) - closed_form_q(&now, x)).norm())
            .fold(0.0, f64::max)
    };
    for t in [0.0, 0.17] {
        assert!(mismatch(t, period) < 1e-6, "t = {t}: {}", mismatch(t, period));
        assert!(mismatch(t, 0.5 * period) > 0.5, "half the period is not a period");
    }
    for t in [0.0, 0.1, 0.3] {
        let q = params_at(&p, Flow::Mkdv, t).unwrap();
        for k in 0..200 {
            assert!(closed_form_q(&q, -10.0 + 0.1 * k as f64).im.abs() < 1e-9);
        }
    }
}

#[test]
fn real_mkdv_cases_are_real() {
    // Two real solitons on the imaginary axis and a breather, with odd β.
    for (z1, z2, beta) in [
        (C::new(0.0, 1.2), C::new(0.0, 0.6), [0.0, 0.5, 0.0, -0.2]),
        (C::new(0.0, 0.9), C::new(0.0, 0.9), [PI / 2.0, -0.3, 0.0, 0.7]),
        (C::new(0.4, 0.8), C::new(-0.4, 0.8), [0.0, 1.0, 0.0, 0.3]),
    ] {
        let p = TwoSolParams::new(z1, z2, beta).unwrap();
        let sup_im = (0..400).map(|k| closed_form_q(&p, -20.0 + 0.1 * k as f64).im.abs()).fold(0.0, f64::max);
        assert!(sup_im <= 1e-9, "{p:?}: {sup_im}");
    }
}

#[test]
fn trajectory_starts_at_the_effective_parameters() {
    let g = Grid::centered(2048, 80.0).unwrap();
    let p = TwoSolParams::new(C::i(), C::i(), [0.0, 0.0, 0.0, 20.0]).unwrap();
    let tr = trajectory(&p, Flow::Nls, &[0.0, 1.0, 2.0], g).unwrap();
    assert_eq!(tr.regime, Regime::Double);
    assert_eq!(tr.points[0].effective, Some(effective_params(&p).unwrap()));
    assert_eq!(tr.points[0].params, p);
    let csv = tr.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,x_plus,x_minus,amp_plus,amp_minus,regime"));
    assert!(lines.next().unwrap().ends_with(",double"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn double_soliton_minimal_separation() {
    // γ₀₀(t) = −2β₂(t) − 2iβ₃ with β₂ = −20 + 2t: the offset −2iβ₃ = −200i
    // keeps |γ₀₀| ≥ 200, attained at t = 10; β₁ = β₃ centres the pair.
    let g = Grid::centered(4096, 80.0).unwrap();
    let a = 200.0;
    let p = TwoSolParams::new(C::i(), C::i(), [0.0, a / 2.0, -20.0, a / 2.0]).unwrap();
    let times: Vec<f64> = (0..=40).map(|k| 20.0 * k as f64 / 40.0).collect();
    let tr = trajectory(&p, Flow::Nls, &times, g).unwrap();
    let min_sep = tr.separations().into_iter().fold(f64::INFINITY, f64::min);
    // Predicted separation at |γ₀₀| = a: (ln|z1 − z̄2| + ln 2a)/Im z = ln 4a.
    let predicted = (4.0 * a).ln();
    assert!((min_sep - predicted).abs() < 0.2 * predicted, "{min_sep} vs {predicted}");
    let at_min = tr.points.iter().find(|q| q.t == 10.0).unwrap().effective.unwrap();
    let l = 2f64.ln() + (2.0 * at_min.alpha0.norm()).ln();
    let expected = l / (2.0 * at_min.z_plus.im) + l / (2.0 * at_min.z_minus.im);
    assert!(((at_min.x_plus - at_min.x_minus) - expected).abs() < 1e-12);
    assert!((expected - predicted).abs() < 1e-2);
}

#[test]
fn regimes_are_classified() {
    let nls = Flow::Nls;
    // Equal velocities (Re z1 = Re z2): bound state, periodic.
    let p = TwoSolParams::new(C::new(0.0, 1.1), C::new(0.0, 0.9), [0.0; 4]).unwrap();
    assert_eq!(classify(&p, nls, 0.0, 10.0).unwrap(), Regime::Quasiperiodic);
    // Equal amplitudes under mKdV: also periodic.
    let q = TwoSolParams::new(C::new(0.1, 1.0), C::new(-0.1, 1.0), [0.0; 4]).unwrap();
    assert_eq!(classify(&q, Flow::Mkdv, 0.0, 10.0).unwrap(), Regime::Quasiperiodic);
    // Equal amplitudes under NLS: different velocities.
    assert!(matches!(
        classify(&q, nls, 0.0, 10.0).unwrap(),
        Regime::SplitVelocityResonant | Regime::SplitVelocityNonresonant
    ));
    // Crossing L = 0 exactly is resonant; an offset of π/2 is not.
    let r = TwoSolParams::new(C::new(0.5, 1.0), C::new(-0.5, 1.0), [0.0, 0.0, -2.0, 0.0]).unwrap();
    assert_eq!(classify(&r, nls, 0.0, 2.0).unwrap(), Regime::SplitVelocityResonant);
    // Im L = Im((z1−z2)γ₀₀) is shifted by a β₃ offset: γ₀₀ gains a₃β₃ with a₃ imaginary here.
    let shifted = TwoSolParams::new(r.z1, r.z2, [0.0, 0.0, -2.0, 0.6]).unwrap();
    let dist = soliton_twosoliton::trajectory::resonance_distance(&shifted, nls, 0.0, 2.0).unwrap();
    assert!(dist > 0.5, "{dist}");
    assert_eq!(classify(&shifted, nls, 0.0, 2.0).unwrap(), Regime::SplitVelocityNonresonant);
    // Split scales: nearly equal velocities.
    let s = TwoSolParams::new(C::new(0.05, 1.3), C::new(0.0, 0.8), [0.0, 0.0, 0.0, 0.37]).unwrap();
    assert!(matches!(classify(&s, nls, 0.0, 5.0).unwrap(), Regime::SplitScaleResonant | Regime::SplitScaleNonresonant));
}

#[test]
fn quasiperiodic_separation_has_the_predicted_period() {
    let g = Grid::centered(4096, 80.0).unwrap();
    let p = TwoSolParams::new(C::new(0.0, 1.15), C::new(0.0, 0.85), [0.0; 4]).unwrap();
    let period = quasiperiod(&p, Flow::Nls).unwrap().unwrap();
    // L moves at (z1 − z2)·a₂·2 with a₂ = −2·Im(z1+z2)/2 here.
    let v = (p.z1 - p.z2) * C::new(-(p.z1.im + p.z2.im), 0.0) * 2.0;
    assert!((period - PI / v.norm()).abs() < 1e-12);
    let times: Vec<f64> = (0..12).map(|k| 0.3 + period * k as f64 / 8.0).collect();
    let tr = trajectory(&p, Flow::Nls, &times, g).unwrap();
    let sep = tr.separations();
    let field = |t: f64| closed_form_field(&params_at(&p, Flow::Nls, t).unwrap(), g).unwrap();
    for k in 0..4 {
        assert!((sep[k + 8] - sep[k]).abs() < 1e-6, "{:?}", sep);
        let a = field(times[k]);
        let b = field(times[k] + period);
        // The modulus pattern repeats (the carrier phase rotates).
        let diff = a.values().iter().zip(b.values()).map(|(x, y)| (x.norm() - y.norm()).abs()).fold(0.0, f64::max);
        assert!(diff < 1e-8, "{diff}");
    }
    let spread = sep.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - sep.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread > 0.1, "the separation oscillates: {sep:?}");
}
