use num_complex::Complex64 as C;
use soliton_backlund::add_solitons;
use soliton_conserved::hamiltonians;
use soliton_core::{Error, Grid, GridField, PhasePoint};
use soliton_evolution::{
    evolve, flow_phase, stability_experiment, EvolveConfig, Flow, Perturbation,
};

fn q0(g: Grid) -> GridField {
    GridField::from_fn(g, |x| C::new(2.0 / (2.0 * x).cosh(), 0.0))
}

#[test]
fn flow_phase_matches_single_soliton_flows() {
    let p = PhasePoint::single(C::i(), C::new(0.3, 0.1)).unwrap();
    // NLS: κ(t) = κ + 2itz² = κ − 2it.
    let q = flow_phase(&p, 2, 0.7).unwrap();
    assert!((q.beta().kappa(C::i()) - C::new(0.3, 0.1 - 1.4)).norm() < 1e-13);
    // mKdV at z = iλ: Re κ = λ·x_centre moves at λ·4λ².
    let lam = 0.6;
    let z = C::new(0.0, lam);
    let p = PhasePoint::single(z, C::new(0.0, 0.0)).unwrap();
    let q = flow_phase(&p, 3, 2.0).unwrap();
    let centre = q.beta().kappa(z).re / lam;
    assert!((centre - 4.0 * lam * lam * 2.0).abs() < 1e-12);
    // General n on one soliton: 2κ̇ = i(2z)^n.
    let z = C::new(0.4, 0.9);
    let p = PhasePoint::single(z, C::new(0.0, 0.0)).unwrap();
    for n in 0..5 {
        let q = flow_phase(&p, n, 1.0).unwrap();
        let expected = 0.5 * C::i() * (2.0 * z).powu(n);
        assert!((q.beta().kappa(z) - expected).norm() < 1e-12, "n = {n}");
    }
    let same = flow_phase(&p, 2, 0.0).unwrap();
    assert_eq!(same.beta().coeffs(), p.beta().coeffs());
}

#[test]
fn nls_soliton_rotates_its_phase() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let out = evolve(&q0(g), &EvolveConfig::new(Flow::Nls, 1.0)).unwrap();
    let exact = GridField::from_fn(g, |x| C::from_polar(2.0 / (2.0 * x).cosh(), 4.0));
    let err = out[0].sup_distance(&exact);
    assert!(err < 1e-6, "sup error {err}");
}

#[test]
fn mkdv_soliton_travels_at_speed_four() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let out = evolve(&q0(g), &EvolveConfig::new(Flow::Mkdv, 1.0)).unwrap();
    let exact = GridField::from_fn(g, |x| C::new(2.0 / (2.0 * x - 8.0).cosh(), 0.0));
    let err = out[0].sup_distance(&exact);
    assert!(err < 1e-6, "sup error {err}");
}

#[test]
fn hamiltonians_are_conserved_by_both_solvers() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let pt = PhasePoint::from_roots_and_kappas(&[C::new(0.2, 0.8), C::new(-0.3, 1.1)], &[C::new(0.5, 0.1), C::new(-0.4, 0.3)]).unwrap();
    let u0 = add_solitons(&GridField::zeros(g), &pt).unwrap();
    let h0 = hamiltonians(&u0);
    for flow in [Flow::Nls, Flow::Mkdv] {
        let out = evolve(&u0, &EvolveConfig::new(flow, 1.0)).unwrap();
        let h1 = hamiltonians(&out[0]);
        for n in 0..5 {
            let drift = (h1[n] - h0[n]).abs() / (1.0 + h0[n].abs());
            assert!(drift < 1e-6, "{flow:?} H{n}: {} vs {}", h1[n], h0[n]);
        }
    }
}

#[test]
fn evolution_is_reversible() {
    let g = Grid::centered(512, 40.0).unwrap();
    let u0 = GridField::from_fn(g, |x| C::new(1.2 * (-x * x / 3.0).exp(), 0.4 * x * (-x * x / 2.0).exp()));
    for flow in [Flow::Nls, Flow::Mkdv] {
        let fwd = evolve(&u0, &EvolveConfig::new(flow, 0.5)).unwrap().remove(0);
        let back = evolve(&fwd, &EvolveConfig::new(flow, -0.5)).unwrap().remove(0);
        let err = back.l2_distance(&u0);
        assert!(err < 1e-7, "{flow:?}: {err}");
    }
}

#[test]
fn record_times_are_validated_and_honoured() {
    let g = Grid::centered(256, 30.0).unwrap();
    let cfg = EvolveConfig::new(Flow::Nls, 1.0).with_record_times(vec![0.0, 0.25, 1.0]);
    let out = evolve(&q0(g), &cfg).unwrap();
    assert_eq!(out.len(), 3);
    assert_eq!(out[0], q0(g));
    let mid = out[1].values()[128];
    assert!((mid - C::from_polar(2.0, 1.0)).norm() < 1e-7);
    let bad = EvolveConfig::new(Flow::Nls, 1.0).with_record_times(vec![0.5, 0.25]);
    assert!(matches!(evolve(&q0(g), &bad), Err(Error::Domain(_))));
    assert!(matches!(evolve(&q0(g), &EvolveConfig::new(Flow::Nls, 1.0).with_dt(0.0)), Err(Error::Domain(_))));
}

#[test]
fn blow_up_is_reported() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let cfg = EvolveConfig::new(Flow::Mkdv, 5.0).with_dt(0.05);
    match evolve(&q0(g), &cfg) {
        Err(Error::Instability { sup, .. }) => assert!(sup > 20.0),
        other => panic!("expected instability, got {other:?}"),
    }
}

fn two_soliton() -> PhasePoint {
    PhasePoint::from_roots_and_kappas(&[C::new(0.0, 1.0), C::new(0.3, 1.2)], &[C::new(1.0, 0.2), C::new(-1.5, -0.4)]).unwrap()
}

#[test]
fn pde_flow_commutes_with_soliton_addition() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let vac = GridField::zeros(g);
    let pt = two_soliton();
    let u0 = add_solitons(&vac, &pt).unwrap();
    let times = vec![0.5, 1.0];
    for flow in [Flow::Nls, Flow::Mkdv] {
        let cfg = EvolveConfig::new(flow, 1.0).with_record_times(times.clone());
        let out = evolve(&u0, &cfg).unwrap();
        for (t, field) in times.iter().zip(&out) {
            let exact = add_solitons(&vac, &flow_phase(&pt, flow.order(), *t).unwrap()).unwrap();
            let err = field.sup_distance(&exact);
            assert!(err < 1e-5, "{flow:?} t = {t}: {err}");
            if flow == Flow::Nls {
                // Half the rate (β̇₂ = 1) is visibly wrong.
                let slow = add_solitons(&vac, &flow_phase(&pt, 2, t / 2.0).unwrap()).unwrap();
                assert!(field.sup_distance(&slow) > 0.1);
            }
        }
    }
}

#[test]
fn perturbations_are_normalized_and_seeded() {
    let g = Grid::centered(512, 40.0).unwrap();
    for p in [
        Perturbation::parse("gaussian", 0).unwrap(),
        Perturbation::parse("sech-bump", 0).unwrap(),
        Perturbation::parse("band-limited-noise", 7).unwrap(),
    ] {
        let f = p.sample(g).unwrap();
        assert!((soliton_core::hs_norm(&f, 0.0).unwrap() - 1.0).abs() < 1e-12, "{}", p.name());
    }
    let a = Perturbation::BandLimitedNoise { seed: 7 }.sample(g).unwrap();
    let b = Perturbation::BandLimitedNoise { seed: 7 }.sample(g).unwrap();
    let c = Perturbation::BandLimitedNoise { seed: 8 }.sample(g).unwrap();
    assert_eq!(a, b);
    assert!(a.l2_distance(&c) > 0.1);
    assert!(matches!(Perturbation::parse("square", 0), Err(Error::Schema(_))));
}

#[test]
fn unperturbed_state_stays_on_the_manifold() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let cfg = EvolveConfig::new(Flow::Nls, 1.0).with_record_times(vec![0.5, 1.0]);
    let rep = stability_experiment(g, &two_soliton(), 0.0, Perturbation::Gaussian { center: 0.0 }, &cfg, None).unwrap();
    assert!(rep.all_ok(), "{:?}", rep.flags);
    assert_eq!(rep.times, vec![0.0, 0.5, 1.0]);
    assert!(rep.max_distance() < 1e-6, "{:?}", rep.manifold_distance);
    assert!(rep.max_drift() < 1e-7, "{:?}", rep.spectrum_drift);
    let csv = rep.to_csv();
    assert!(csv.starts_with("t,dist,residual_mass,spectrum_drift,flag\n"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn small_perturbation_stays_close() {
    let g = Grid::centered(1024, 40.0).unwrap();
    let eps = 1e-3;
    let cfg = EvolveConfig::new(Flow::Nls, 2.0).with_record_times(vec![1.0, 2.0]);
    let rep = stability_experiment(g, &two_soliton(), eps, Perturbation::SechBump { center: 0.0 }, &cfg, None).unwrap();
    assert!(rep.all_ok(), "{:?}", rep.flags);
    assert!(rep.max_distance() <= 10.0 * eps, "{:?}", rep.manifold_distance);
    assert!(rep.max_drift() <= 1e-5, "{:?}", rep.spectrum_drift);
    assert!(matches!(
        stability_experiment(g, &two_soliton(), 0.5, Perturbation::SechBump { center: 0.0 }, &cfg, None),
        Err(Error::Domain(_))
    ));
}
