//! Adaptive Gauss–Kronrod quadrature.
//!
//! The 7/15-point pair is applied on each subinterval; the interval with the
//! largest error estimate is bisected until the summed estimate meets the
//! requested tolerance. Infinite ranges are mapped onto `(-1, 1)` with
//! `x = t / (1 - t^2)`; the Kronrod nodes never touch the endpoints.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, max_intervals: 2000 }
    }
}

impl QuadOptions {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Self::default() }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let s = f(center - dx) + f(center + dx);
        kron += wk * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Segment { a, b, value: kron * half, error: ((kron - gauss) * half).abs() }
}

/// Integrate `f` over the finite interval `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let mut segments = vec![kronrod(&mut f, a, b)];
    let mut evaluations = 15;
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.is_finite() {
            return Err(Error::Quadrature { value, error });
        }
        if error <= opts.target(value) {
            return Ok(QuadResult { value, error, evaluations });
        }
        if segments.len() >= opts.max_intervals {
            return Err(Error::Quadrature { value, error });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // interval exhausted at machine resolution
            return Err(Error::Quadrature { value, error });
        }
        segments.push(kronrod(&mut f, seg.a, mid));
        segments.push(kronrod(&mut f, mid, seg.b));
        evaluations += 30;
    }
}

/// Integrate `f` over the whole real line.
pub fn integrate_infinite<F: FnMut(f64) -> f64>(mut f: F, opts: &QuadOptions) -> Result<QuadResult> {
    integrate(
        |t| {
            let d = 1.0 - t * t;
            let x = t / d;
            let jac = (1.0 + t * t) / (d * d);
            let y = f(x) * jac;
            if y.is_finite() {
                y
            } else {
                0.0
            }
        },
        -1.0,
        1.0,
        opts,
    )
}

/// Nested 2-D quadrature over `x in [ax, bx]`, `y in y_range(x)`.
///
/// The inner integrals run at a tenth of the outer tolerance.
pub fn integrate_2d<F, Y>(f: F, ax: f64, bx: f64, y_range: Y, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
    Y: Fn(f64) -> (f64, f64),
{
    let inner_opts = QuadOptions {
        abs_tol: 0.1 * opts.abs_tol / (bx - ax).abs().max(1.0),
        rel_tol: 0.1 * opts.rel_tol,
        max_intervals: opts.max_intervals,
    };
    let mut failure: Option<Error> = None;
    let mut evaluations = 0;
    let outer = integrate(
        |x| {
            let (ay, by) = y_range(x);
            match integrate(|y| f(x, y), ay, by, &inner_opts) {
                Ok(r) => {
                    evaluations += r.evaluations;
                    r.value
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        ax,
        bx,
        opts,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(QuadResult { evaluations, ..outer })
}
