//! Closed forms checked against independent evaluations: brute-force
//! quadrature, a time-discretized transform, and reference values computed
//! with a separate implementation.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use photosub::conditioning::*;
use photosub::modecore::*;
use photosub::numeric::{integrate, QuadOptions};
use photosub::pulsemodel::*;
use photosub::spectralfilter::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn operating_geometry() -> PulseGeometry {
    let g = PulseGeometry::baseline();
    g.with_qle0(solve_pump_amplitude(&g, 0.56).unwrap())
}

#[test]
fn reference_values_at_s_056() {
    // computed independently in double precision, rounded to 5-6 digits
    let g = operating_geometry();
    let nf = NarrowFilter::evaluate(&g, &FilterChain::default()).unwrap();
    let v = variances_from_modered(&nf.modered);
    let lossy = apply_losses(&nf.wigner, &LossChain::new(0.93, 0.9).unwrap());
    let checks = [
        ("qlE0", g.qle0, 0.59704, 6e-6),
        ("eta", nf.modered.eta, 1.05347, 6e-6),
        ("alpha", nf.modered.alpha, 0.29713, 6e-6),
        ("beta", nf.modered.beta, 0.14666, 6e-6),
        ("g", squeeze_convert(&nf.modered).g.ratio().unwrap(), 0.5041, 5e-5),
        ("V_x", v.vx, 1.84563, 6e-6),
        ("V_p", v.vp, 0.59355, 6e-6),
        ("A", nf.wigner.a, 1.43199, 6e-6),
        ("B", nf.wigner.b, 0.31982, 6e-6),
        ("C", nf.wigner.c, -0.31471, 6e-6),
        ("xi_bar", nf.xi_bar(), 0.90855, 6e-6),
        ("theta_bar", nf.theta_bar(), 0.50026, 6e-6),
        ("theta_0", nf.theta0(), 0.45850, 6e-6),
        ("W(0,0)", nf.wigner.at_origin(), -0.09571, 6e-6),
        ("W(0,0) lossy", lossy.at_origin(), -0.032247, 6e-6),
    ];
    for (name, got, want, tol) in checks {
        assert!((got - want).abs() < tol, "{name}: {got} vs {want}");
    }
}

#[test]
fn gaussian_moments_match_quadrature() {
    let g = PulseGeometry::baseline();
    let fc = FilterChain::default();
    let opts = QuadOptions::new(1e-12, 1e-12);
    for m in 1..=6 {
        for (which, kind) in [(OracleQuantity::Pm, MomentKind::P), (OracleQuantity::Qm, MomentKind::Q), (OracleQuantity::Rm, MomentKind::R)] {
            let num = quadrature_oracle(&g, &fc, which, m, &opts).unwrap();
            let closed = moment(&g, kind, m);
            assert!((num - closed).abs() < 1e-9, "{kind:?}_{m}: {num} vs {closed}");
        }
    }
    let p0 = quadrature_oracle(&g, &fc, OracleQuantity::Pm, 0, &opts).unwrap();
    assert!((p0 - 1.0).abs() < 1e-10);
}

#[test]
fn series_sums_match_quadrature() {
    let fc = FilterChain::default();
    let opts = QuadOptions::new(1e-11, 1e-11);
    for geom in [operating_geometry(), PulseGeometry::shg_preset().with_qle0(1.1)] {
        let t = series_tables(&geom, DEFAULT_SERIES_TOL).unwrap();
        let nf = NarrowFilter::evaluate(&geom, &fc).unwrap();
        let checks = [
            (OracleQuantity::Eta2, t.eta2()),
            (OracleQuantity::EtaAlpha, t.eta_alpha()),
            (OracleQuantity::Ptot, nf.p_tot),
            (OracleQuantity::GammaBar, nf.gamma_bar),
            (OracleQuantity::DeltaBar, nf.delta_bar),
        ];
        for (which, series) in checks {
            let num = quadrature_oracle(&geom, &fc, which, 0, &opts).unwrap();
            assert!((num - series).abs() < 1e-9, "{which:?}: {num} vs {series}");
        }
    }
}

#[test]
fn discretized_transform_matches_series() {
    let fc = FilterChain::default();
    let coarse = PulseGeometry::baseline().with_qle0(1.2).with_profile(Profile::TemporalOnly);
    assert!(check_symplectic(&discretize_temporal(&coarse, 101).unwrap().transform) < 1e-12);
    for qle0 in [0.2, 0.6, 1.2] {
        for tau_p in [150.0, 106.0, 220.0] {
            let g = PulseGeometry { tau_p, ..PulseGeometry::baseline() }
                .with_qle0(qle0)
                .with_profile(Profile::TemporalOnly);
            let model = discretize_temporal(&g, 601).unwrap();
            let (mr, dc, cs) = model.detect(0.0).unwrap();
            let nf = NarrowFilter::evaluate(&g, &fc).unwrap();
            let scale = fc.scale().sqrt();
            let pairs = [
                ("eta", mr.eta, nf.modered.eta),
                ("alpha", mr.alpha, nf.modered.alpha),
                ("beta", mr.beta, nf.modered.beta),
                ("gamma", dc.gamma.re * model.continuum_scale(), nf.gamma_bar / scale),
                ("delta", dc.delta.re * model.continuum_scale(), nf.delta_bar / scale),
                ("xi", cs.xi, nf.xi_bar()),
                ("theta", cs.theta, nf.theta_bar()),
            ];
            for (name, disc, series) in pairs {
                assert!((disc - series).abs() < 1e-6, "qlE0 {qle0}, tau_P {tau_p}, {name}: {disc} vs {series}");
            }
        }
    }
}

#[test]
fn two_mode_integral_matches_closed_form_wigner() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = QuadOptions::new(1e-8, 1e-10);
    for _ in 0..20 {
        let spec = SqueezeSpec::new(rng.random_range(0.05..1.0), rng.random_range(0.05..1.5)).unwrap();
        let mr = modered_from_squeeze(&spec);
        let cs = ConditionalState::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..PI / 2.0))
            .unwrap()
            .with_phase(rng.random_range(-PI..PI));
        let (s, c) = cs.theta.sin_cos();
        let m = AveragedMoments {
            gg: cs.xi * c * c,
            dd: cs.xi * s * s,
            gd: C64::from_polar(cs.xi * s * c, cs.rel_phase),
            p_tot: 1.0,
        };
        let w = wigner_coeffs(&mr, &m).unwrap();
        let probes: Vec<(f64, f64)> = (0..5).map(|_| (rng.random_range(-2.5..2.5), rng.random_range(-2.5..2.5))).collect();
        let numeric = oracle_wigner_numeric(&mr, &cs, &probes, &opts).unwrap();
        for (&(x, p), n) in probes.iter().zip(numeric) {
            let closed = eval_wigner(&w, x, p);
            assert!((n - closed).abs() < 1e-6, "{mr:?} {cs:?} at ({x}, {p}): {n} vs {closed}");
        }
    }
}

#[test]
fn slit_transmission_matches_numeric_fourier_transform() {
    let geom = PulseGeometry::baseline();
    let opts = QuadOptions::new(1e-13, 1e-13);
    let tau = geom.tau;
    let envelope_ft = |w: f64| {
        integrate(|t| (-2.0 * t * t / (tau * tau)).exp() * (w * t).cos(), -8.0 * tau, 8.0 * tau, &opts).unwrap().value
    };
    let energy = |lo: f64, hi: f64| integrate(|w| envelope_ft(w).powi(2), lo, hi, &opts).unwrap().value;
    let total = 2.0 * energy(0.0, 60.0 / tau);
    for omega in [0.002, 0.01, 0.03] {
        let numeric = 2.0 * energy(0.0, omega / 2.0) / total;
        let closed = homodyne_slit_transmission(&geom, omega);
        assert!((numeric - closed).abs() < 1e-10, "{omega}: {numeric} vs {closed}");
    }
}

#[test]
fn kernel_peak_matches_transverse_quadrature() {
    let geom = operating_geometry();
    let (gk, dk) = time_kernels(&geom).unwrap();
    let opts = QuadOptions::new(1e-13, 1e-13);
    let e_t0 = (2.0 / (PI.sqrt() * geom.tau)).sqrt();
    let (w, wf, wp) = (geom.w, geom.w_f, geom.w_p);
    let overlap = |rho: f64| {
        let e_h = (2.0 / (PI * w * w)).sqrt() * (-rho * rho / (w * w)).exp();
        let phi = (2.0 / (PI * wf * wf)).sqrt() * (-rho * rho / (wf * wf)).exp();
        2.0 * PI * rho * e_h * phi
    };
    let pump = |rho: f64| geom.qle0 * (-rho * rho / (wp * wp)).exp();
    let gamma0 = integrate(|r| overlap(r) * pump(r).sinh() * pump(r).cosh(), 0.0, 10.0 * w, &opts).unwrap().value;
    let delta0 = integrate(|r| overlap(r) * pump(r).sinh().powi(2), 0.0, 10.0 * w, &opts).unwrap().value;
    assert!((gk.value(0.0) - e_t0 * gamma0).abs() < 1e-9);
    assert!((dk.value(0.0) - e_t0 * delta0).abs() < 1e-9);
}

#[test]
fn uniform_profile_recovers_single_mode_photon_subtraction() {
    for qle0 in [0.1, 0.5, 1.0, 1.8] {
        let g = PulseGeometry::baseline().with_qle0(qle0).with_profile(Profile::Uniform);
        let nf = NarrowFilter::evaluate(&g, &FilterChain::default()).unwrap();
        assert_eq!(nf.modered.beta, 0.0);
        assert!((nf.xi_bar() - 1.0).abs() < 1e-10);
        assert!((nf.wigner.c + 1.0).abs() < 1e-10);
        assert!((nf.wigner.at_origin() + 1.0 / PI).abs() < 1e-10);
    }
}

#[test]
fn empirical_model_with_pure_input_is_a_squeezed_photon() {
    // substituting A_emp, B_emp into the normalization identity at V_x V_p = 1
    for r in [0.05f64, 0.4, 1.2] {
        let v = QuadVariances { vx: (2.0 * r).exp(), vp: (-2.0 * r).exp() };
        let e = empirical_coeffs(&v, 1.0).unwrap();
        assert!((e.form.c + 1.0).abs() < 1e-12);
        assert!((e.form.a - v.vx).abs() < 1e-12 && (e.form.b - v.vp).abs() < 1e-12);
    }
}

#[test]
fn equivalent_beamsplitter_at_operating_point() {
    let nf = NarrowFilter::evaluate(&operating_geometry(), &FilterChain::default()).unwrap();
    let r = squeeze_convert(&nf.modered).r;
    let ratio = equivalent_bs_ratio(nf.theta_bar(), nf.theta0(), r).unwrap();
    let expected = (1.0 / nf.theta_bar().tan() - 1.0 / nf.theta0().tan()) / r.cosh();
    assert!((ratio - expected).abs() < 1e-14);
    assert!(ratio < 0.0 && ratio > -0.5);
}
