use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64 as C64;
use photosub::conditioning::{
    conditional_state, detection_coeffs, grid_minimum, integrate_wigner, oracle_wigner_numeric, wigner_coeffs,
};
use photosub::modecore::{
    check_symplectic, mode_reduce, modered_from_squeeze, modered_from_variances, squeeze_convert, variances_from_modered,
};
use photosub::numeric::QuadOptions;
use photosub::pulsemodel::{
    discretize_temporal, moment, quadrature_oracle, series_tables, DiscreteModel, MomentKind, OracleQuantity,
    DEFAULT_SERIES_TOL,
};
use photosub::{
    AveragedMoments, ConditionalState, FilterChain, FiniteBogoliubov, ModeVector, NarrowFilter, Profile, PulseGeometry,
    SqueezeSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::figures::operating_geometry;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub tolerance: f64,
    /// Largest deviation found; infinite when the evaluation itself failed.
    pub residual: f64,
    /// Negative controls pass when the residual exceeds the tolerance.
    pub expect_violation: bool,
    pub note: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        if self.expect_violation {
            self.residual > self.tolerance
        } else {
            self.residual <= self.tolerance
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let op = if self.expect_violation { ">" } else { "<=" };
        write!(f, "{verdict}  {:<52} residual {:.3e} {op} {:.1e}", self.name, self.residual, self.tolerance)?;
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    fn push(&mut self, name: &str, tolerance: f64, residual: Result<f64, photosub::Error>) {
        let (residual, note) = match residual {
            Ok(r) if r.is_nan() => (f64::INFINITY, Some("NaN residual".to_string())),
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        self.checks.push(Check { name: name.to_string(), tolerance, residual, expect_violation: false, note });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "{} of {} checks passed", self.checks.len() - self.failures(), self.checks.len())
    }
}

type Res = Result<f64, photosub::Error>;

fn max_abs(pairs: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    pairs.into_iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Random squeezing pair with `r` in `[0.02, 1.5]` and `g` in `[0.05, 2]`.
pub fn random_spec(rng: &mut impl Rng) -> SqueezeSpec {
    SqueezeSpec::new(rng.random_range(0.02..1.5), rng.random_range(0.05..2.0)).expect("valid range")
}

/// Random physically valid detection averages.
pub fn random_moments(rng: &mut impl Rng) -> AveragedMoments {
    let (xi, theta): (f64, f64) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..PI / 2.0));
    let (phase, coherence, p): (f64, f64, f64) = (rng.random_range(-PI..PI), rng.random_range(0.0..=1.0), rng.random_range(1e-4..1.0));
    let (s, c) = theta.sin_cos();
    AveragedMoments { gg: p * xi * c * c, dd: p * xi * s * s, gd: C64::from_polar(p * xi * s * c * coherence, phase), p_tot: p }
}

/// Three-mode transform from elementary squeezers and a beamsplitter.
pub fn random_transform(rng: &mut impl Rng) -> FiniteBogoliubov {
    let n = 3;
    FiniteBogoliubov::single_mode_squeezer(n, 0, rng.random_range(0.0..1.0), rng.random_range(0.0..PI))
        .followed_by(&FiniteBogoliubov::two_mode_squeezer(n, 0, 1, rng.random_range(0.0..0.8)))
        .and_then(|b| b.followed_by(&FiniteBogoliubov::beam_splitter(n, 1, 2, rng.random_range(0.0..1.5), rng.random_range(-PI..PI))))
        .and_then(|b| b.followed_by(&FiniteBogoliubov::single_mode_squeezer(n, 2, rng.random_range(0.0..0.6), 0.0)))
        .expect("matching sizes")
}

fn perturbed(model: &DiscreteModel, eps: f64) -> Result<DiscreteModel, photosub::Error> {
    if eps == 0.0 {
        return Ok(model.clone());
    }
    let u = model.transform.u() * C64::from(1.0 + eps);
    Ok(DiscreteModel { transform: FiniteBogoliubov::new(u, model.transform.v().clone())?, ..model.clone() })
}

/// Brute-force integral over the second effective mode vs the closed form.
pub fn two_mode_oracle_residual(rng: &mut impl Rng, draws: usize, probes: usize) -> Res {
    let opts = QuadOptions::new(1e-8, 1e-10);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let mr = modered_from_squeeze(&SqueezeSpec::new(rng.random_range(0.05..1.0), rng.random_range(0.05..1.5))?);
        let cs = ConditionalState::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..PI / 2.0))?
            .with_phase(rng.random_range(-PI..PI));
        let (s, c) = cs.theta.sin_cos();
        let m = AveragedMoments {
            gg: cs.xi * c * c,
            dd: cs.xi * s * s,
            gd: C64::from_polar(cs.xi * s * c, cs.rel_phase),
            p_tot: 1.0,
        };
        let w = wigner_coeffs(&mr, &m)?;
        let pts: Vec<(f64, f64)> = (0..probes).map(|_| (rng.random_range(-2.5..2.5), rng.random_range(-2.5..2.5))).collect();
        let numeric = oracle_wigner_numeric(&mr, &cs, &pts, &opts)?;
        worst = worst.max(max_abs(pts.iter().zip(numeric).map(|(&(x, p), n)| (n, w.eval(x, p)))));
    }
    Ok(worst)
}

/// Time-discretized transform vs the series closed forms.
pub fn discretization_residual(base: &PulseGeometry, qle0s: &[f64], tau_ps: &[f64], points: usize, perturb: f64) -> Res {
    let fc = FilterChain::default();
    let scale = fc.scale().sqrt();
    let mut worst: f64 = 0.0;
    for &qle0 in qle0s {
        for &tau_p in tau_ps {
            let g = PulseGeometry { tau_p, ..*base }.with_qle0(qle0).with_profile(Profile::TemporalOnly);
            let model = perturbed(&discretize_temporal(&g, points)?, perturb)?;
            let (mr, dc, cs) = model.detect(0.0)?;
            let nf = NarrowFilter::evaluate(&g, &fc)?;
            worst = worst.max(max_abs([
                (mr.eta, nf.modered.eta),
                (mr.alpha, nf.modered.alpha),
                (mr.beta, nf.modered.beta),
                (dc.gamma.re * model.continuum_scale(), nf.gamma_bar / scale),
                (dc.delta.re * model.continuum_scale(), nf.delta_bar / scale),
                (cs.xi, nf.xi_bar()),
                (cs.theta, nf.theta_bar()),
            ]));
        }
    }
    Ok(worst)
}

/// Separable gaussian moments `P_m, Q_m, R_m` vs brute-force quadrature.
pub fn moment_residual(geom: &PulseGeometry, orders: std::ops::RangeInclusive<usize>) -> Res {
    let fc = FilterChain::default();
    let opts = QuadOptions::new(1e-12, 1e-12);
    let mut worst: f64 = 0.0;
    for m in orders {
        for (which, kind) in [(OracleQuantity::Pm, MomentKind::P), (OracleQuantity::Qm, MomentKind::Q), (OracleQuantity::Rm, MomentKind::R)] {
            worst = worst.max((quadrature_oracle(geom, &fc, which, m, &opts)? - moment(geom, kind, m)).abs());
        }
    }
    Ok(worst)
}

/// Summed series (`eta²`, `eta alpha`, `P_tot`, `gamma_bar`, `delta_bar`) vs quadrature.
pub fn series_residual(geom: &PulseGeometry) -> Res {
    let fc = FilterChain::default();
    let opts = QuadOptions::new(1e-11, 1e-11);
    let t = series_tables(geom, DEFAULT_SERIES_TOL)?;
    let nf = NarrowFilter::evaluate(geom, &fc)?;
    let mut worst: f64 = 0.0;
    for (which, series) in [
        (OracleQuantity::Eta2, t.eta2()),
        (OracleQuantity::EtaAlpha, t.eta_alpha()),
        (OracleQuantity::Ptot, nf.p_tot),
        (OracleQuantity::GammaBar, nf.gamma_bar),
        (OracleQuantity::DeltaBar, nf.delta_bar),
    ] {
        worst = worst.max((quadrature_oracle(geom, &fc, which, 0, &opts)? - series).abs());
    }
    Ok(worst)
}

/// Deviation of the constant-profile model from single-mode photon subtraction.
pub fn uniform_limit_residual(base: &PulseGeometry, qle0s: &[f64]) -> Res {
    let mut worst: f64 = 0.0;
    for &q in qle0s {
        let nf = NarrowFilter::evaluate(&base.with_qle0(q).with_profile(Profile::Uniform), &FilterChain::default())?;
        worst = worst.max(max_abs([
            (nf.modered.beta, 0.0),
            (nf.xi_bar(), 1.0),
            (nf.wigner.c, -1.0),
            (nf.wigner.at_origin(), -1.0 / PI),
        ]));
    }
    Ok(worst)
}

/// Randomized structural invariants. Each entry is `(name, tolerance, residual)`.
pub fn invariant_residuals(rng: &mut impl Rng, draws: usize, integral_draws: usize) -> Vec<(&'static str, f64, Res)> {
    let mut identity: f64 = 0.0;
    let mut round_trip: f64 = 0.0;
    let mut c_identity: f64 = 0.0;
    let mut negativity: f64 = 0.0;
    let mut purity: f64 = 0.0;
    let mut scaling: f64 = 0.0;
    let mut integral: f64 = 0.0;
    let quad = QuadOptions::new(1e-9, 1e-9);
    let mut first_error = None;
    let mut record = |e: photosub::Error| {
        first_error.get_or_insert(e);
    };

    for i in 0..draws {
        let spec = random_spec(rng);
        let m = random_moments(rng);
        let mr = modered_from_squeeze(&spec);
        identity = identity.max(mr.identity_residual());
        let v = variances_from_modered(&mr);
        match modered_from_variances(&v) {
            Ok(back) => {
                let again = squeeze_convert(&back);
                let g_back = again.g.ratio().unwrap_or(f64::INFINITY);
                let spec_g = spec.g.ratio().unwrap_or(f64::INFINITY);
                round_trip = round_trip.max(max_abs([
                    (back.eta, mr.eta),
                    (back.alpha, mr.alpha),
                    (back.beta, mr.beta),
                    (again.r, spec.r),
                    (g_back, spec_g),
                ]));
            }
            Err(e) => record(e),
        }
        match wigner_coeffs(&mr, &m) {
            Ok(w) => {
                c_identity = c_identity.max((w.c - (1.0 - w.a / w.vx - w.b / w.vp)).abs());
                let half = 4.0 * w.vx.max(w.vp).sqrt();
                negativity = negativity.max(-1.0 / PI - grid_minimum(&w, half, 121));
                if i < integral_draws {
                    match integrate_wigner(&w, &quad) {
                        Ok(total) => integral = integral.max((total - 1.0).abs()),
                        Err(e) => record(e),
                    }
                }
            }
            Err(e) => record(e),
        }

        let b = random_transform(rng);
        let k = rng.random_range(0..3);
        let psi = ModeVector::basis(3, k);
        let checked = mode_reduce(&b, &psi).and_then(|mr| {
            identity = identity.max(mr.identity_residual());
            let mut worst: f64 = 0.0;
            for d in 0..3 {
                let dc = detection_coeffs(&b, &psi, &mr, &ModeVector::basis(3, d))?;
                if dc.p > 1e-12 {
                    worst = worst.max(conditional_state(&dc)?.xi - 1.0);
                }
            }
            Ok(worst)
        });
        match checked {
            Ok(w) => purity = purity.max(w),
            Err(e) => record(e),
        }

        let g = PulseGeometry::baseline().with_pump_ratio(rng.random_range(0.6..2.0)).with_qle0(rng.random_range(0.05..1.5));
        let fc = FilterChain { omega: rng.random_range(1e-4..0.05), r: rng.random_range(0.01..0.5), eta_c: rng.random_range(0.05..=1.0) };
        match (NarrowFilter::evaluate(&g, &FilterChain::default()), NarrowFilter::evaluate(&g, &fc)) {
            (Ok(a), Ok(b)) => {
                scaling = scaling.max(max_abs([
                    (a.xi_bar(), b.xi_bar()),
                    (a.theta_bar(), b.theta_bar()),
                    (a.wigner.a, b.wigner.a),
                    (a.wigner.b, b.wigner.b),
                    (a.wigner.c, b.wigner.c),
                ]));
            }
            (Err(e), _) | (_, Err(e)) => record(e),
        }
    }
    let wrap = |x: f64| match &first_error {
        Some(e) => Err(e.clone()),
        None => Ok(x),
    };
    vec![
        ("eta^2 - alpha^2 - beta^2 = 1", 1e-9, wrap(identity)),
        ("(eta,alpha,beta) <-> (Vx,Vp) <-> (r,g) round trip", 1e-9, wrap(round_trip)),
        ("C = 1 - A/Vx - B/Vp", 1e-12, wrap(c_identity)),
        ("grid minimum of W >= -1/pi", 1e-9, wrap(negativity.max(0.0))),
        ("modal purity xi <= 1 for random transforms", 1e-12, wrap(purity.max(0.0))),
        ("narrow-filter state independent of (Omega, eta_c, R)", 1e-12, wrap(scaling)),
        ("integral of W over phase space = 1", 1e-6, wrap(integral)),
    ]
}

/// Runs every oracle comparison and invariant; failures are collected, not short-circuited.
pub fn validate_suite(cfg: &ExperimentConfig, seed: u64) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::default();
    let base = cfg.geometry();
    let operating = operating_geometry(cfg);
    let operating_qle0 = operating.as_ref().map(|g| g.qle0).unwrap_or(0.6);
    let perturb = cfg.validate.perturb_symplectic;

    report.push("two-mode quadrature vs closed-form Wigner (20 draws)", 1e-6, two_mode_oracle_residual(&mut rng, 20, 3));
    report.push(
        "time-discretized transform vs series closed forms",
        1e-6,
        discretization_residual(&base, &[0.2, operating_qle0, 1.2], &[base.tau_p, base.tau / 2f64.sqrt()], 601, perturb),
    );
    let coarse = discretize_temporal(&base.with_qle0(1.2).with_profile(Profile::TemporalOnly), 101)
        .and_then(|m| perturbed(&m, perturb));
    report.push("symplectic residual of the discretized transform", 1e-12, coarse.as_ref().map(|m| check_symplectic(&m.transform)).map_err(Clone::clone));
    report.push("gaussian moments P_m, Q_m, R_m vs quadrature (m = 1..6)", 1e-9, moment_residual(&base, 1..=6));
    match &operating {
        Ok(g) => report.push("series sums vs quadrature at the operating point", 1e-9, series_residual(g)),
        Err(e) => report.push("series sums vs quadrature at the operating point", 1e-9, Err(photosub::Error::Optimizer(e.to_string()))),
    }
    report.push("constant profile: beta = 0, xi = 1, C = -1, W(0,0) = -1/pi", 1e-12, uniform_limit_residual(&base, &[0.1, 0.5, 1.0, 1.8]));
    for (name, tol, res) in invariant_residuals(&mut rng, cfg.validate.draws, cfg.validate.draws.min(40)) {
        report.push(name, tol, res);
    }

    let control = random_transform(&mut rng);
    let broken = FiniteBogoliubov::new(control.u() * C64::from(1.0 + 1e-3), control.v().clone())?;
    report.checks.push(Check {
        name: "negative control: perturbed transform is flagged".into(),
        tolerance: 1e-12,
        residual: check_symplectic(&broken),
        expect_violation: true,
        note: None,
    });
    Ok(report)
}
