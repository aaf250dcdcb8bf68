//! Adaptive Gauss-Kronrod (7, 15) quadrature along complex segments and
//! polylines.

use num_complex::Complex64;

use crate::error::{Error, Result};

type C = Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Bisection budget per segment.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: C,
    pub error: f64,
    pub evaluations: usize,
}

struct Piece {
    lo: f64,
    hi: f64,
    value: C,
    error: f64,
}

/// One G7K15 rule on `t ∈ [lo, hi]` of `f(a + t(b - a)) (b - a)`.
fn rule<F>(f: &mut F, a: C, d: C, lo: f64, hi: f64) -> Result<Piece>
where
    F: FnMut(C) -> Result<C>,
{
    let mid = (lo + hi) / 2.0;
    let half = (hi - lo) / 2.0;
    let mut kron = C::new(0.0, 0.0);
    let mut gauss = C::new(0.0, 0.0);
    for (i, (&x, &w)) in XGK.iter().zip(&WGK).enumerate() {
        let pts: &[f64] = if x == 0.0 {
            &[mid]
        } else {
            &[mid - half * x, mid + half * x]
        };
        for &t in pts {
            let v = f(a + d * t)?;
            if !v.is_finite() {
                return Err(Error::Numeric(format!(
                    "integrand not finite at {}",
                    a + d * t
                )));
            }
            kron += v * w;
            if i % 2 == 1 {
                gauss += v * WG[i / 2];
            }
        }
    }
    let value = kron * half * d;
    let error = ((kron - gauss) * half * d).norm();
    Ok(Piece {
        lo,
        hi,
        value,
        error,
    })
}

/// `∫_a^b f(z) dz` along the straight segment.
pub fn integrate_segment<F>(mut f: F, a: C, b: C, opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(C) -> Result<C>,
{
    let d = b - a;
    let mut pieces = vec![rule(&mut f, a, d, 0.0, 1.0)?];
    let mut evaluations = 15;
    loop {
        let value: C = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if error <= opts.abs_tol.max(opts.rel_tol * value.norm()) {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
            });
        }
        if pieces.len() >= opts.max_intervals {
            return Err(Error::Numeric(format!(
                "quadrature from {a} to {b} did not converge: error {error:e} after {evaluations} evaluations"
            )));
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let p = pieces.swap_remove(worst);
        let m = (p.lo + p.hi) / 2.0;
        if m <= p.lo || m >= p.hi {
            return Err(Error::Numeric(format!(
                "quadrature interval underflow near {}",
                a + d * m
            )));
        }
        pieces.push(rule(&mut f, a, d, p.lo, m)?);
        pieces.push(rule(&mut f, a, d, m, p.hi)?);
        evaluations += 30;
    }
}

/// Sum of segment integrals through consecutive `points`.
pub fn integrate_polyline<F>(mut f: F, points: &[C], opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(C) -> Result<C>,
{
    if points.len() < 2 {
        return Err(Error::InvalidInput(
            "a polyline needs at least two points".into(),
        ));
    }
    let mut total = QuadResult {
        value: C::new(0.0, 0.0),
        error: 0.0,
        evaluations: 0,
    };
    for w in points.windows(2) {
        let r = integrate_segment(&mut f, w[0], w[1], opts)?;
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
    }
    Ok(total)
}
