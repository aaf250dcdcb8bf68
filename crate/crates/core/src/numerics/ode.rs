//! Monodromy of `ψ'' = (u(z) + λ) ψ` along a complex polyline, by the
//! Fehlberg 7(8) pair with step control on both solution columns.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

type C = Complex64;

const C_NODES: [f64; 13] = [
    0.0,
    2.0 / 27.0,
    1.0 / 9.0,
    1.0 / 6.0,
    5.0 / 12.0,
    0.5,
    5.0 / 6.0,
    1.0 / 6.0,
    2.0 / 3.0,
    1.0 / 3.0,
    1.0,
    0.0,
    1.0,
];

const A: [[f64; 12]; 13] = [
    [0.0; 12],
    [
        2.0 / 27.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        1.0 / 36.0,
        1.0 / 12.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        1.0 / 24.0,
        0.0,
        1.0 / 8.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        5.0 / 12.0,
        0.0,
        -25.0 / 16.0,
        25.0 / 16.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        1.0 / 20.0,
        0.0,
        0.0,
        1.0 / 4.0,
        1.0 / 5.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        -25.0 / 108.0,
        0.0,
        0.0,
        125.0 / 108.0,
        -65.0 / 27.0,
        125.0 / 54.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        31.0 / 300.0,
        0.0,
        0.0,
        0.0,
        61.0 / 225.0,
        -2.0 / 9.0,
        13.0 / 900.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        2.0,
        0.0,
        0.0,
        -53.0 / 6.0,
        704.0 / 45.0,
        -107.0 / 9.0,
        67.0 / 90.0,
        3.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        -91.0 / 108.0,
        0.0,
        0.0,
        23.0 / 108.0,
        -976.0 / 135.0,
        311.0 / 54.0,
        -19.0 / 60.0,
        17.0 / 6.0,
        -1.0 / 12.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        2383.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -301.0 / 82.0,
        2133.0 / 4100.0,
        45.0 / 82.0,
        45.0 / 164.0,
        18.0 / 41.0,
        0.0,
        0.0,
    ],
    [
        3.0 / 205.0,
        0.0,
        0.0,
        0.0,
        0.0,
        -6.0 / 41.0,
        -3.0 / 205.0,
        -3.0 / 41.0,
        3.0 / 41.0,
        6.0 / 41.0,
        0.0,
        0.0,
    ],
    [
        -1777.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -289.0 / 82.0,
        2193.0 / 4100.0,
        51.0 / 82.0,
        33.0 / 164.0,
        12.0 / 41.0,
        0.0,
        1.0,
    ],
];

// Eighth-order weights; the seventh-order partner swaps stages 11, 12 for 0, 10.
const B8: [f64; 13] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    34.0 / 105.0,
    9.0 / 35.0,
    9.0 / 35.0,
    9.0 / 280.0,
    9.0 / 280.0,
    0.0,
    41.0 / 840.0,
    41.0 / 840.0,
];

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
    /// Allowed `|det M - 1|`.
    pub det_tol: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_steps: 2_000_000,
            det_tol: 1e-9,
        }
    }
}

/// Columns `(ψ1, ψ1', ψ2, ψ2')`.
type State = [C; 4];

fn rhs(w: C, y: &State, d: C) -> State {
    // d/dt along z = a + t d.
    [y[1] * d, w * y[0] * d, y[3] * d, w * y[2] * d]
}

/// Integrates the two columns from `y` across the segment `a → b`.
fn integrate_segment<F>(
    q: &mut F,
    a: C,
    b: C,
    y: &mut State,
    opts: &OdeOptions,
    steps: &mut usize,
) -> Result<()>
where
    F: FnMut(C) -> Result<C>,
{
    let d = b - a;
    let mut t = 0.0;
    let mut h: f64 = 0.02;
    while t < 1.0 {
        if *steps >= opts.max_steps {
            return Err(Error::Numeric(format!(
                "monodromy exceeded {} steps",
                opts.max_steps
            )));
        }
        h = h.min(1.0 - t);
        let mut k = [[C::new(0.0, 0.0); 4]; 13];
        for s in 0..13 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let c = A[s][j];
                if c != 0.0 {
                    for i in 0..4 {
                        ys[i] += kj[i] * (c * h);
                    }
                }
            }
            let z = a + d * (t + C_NODES[s] * h);
            k[s] = rhs(q(z)?, &ys, d);
        }
        let mut err = 0.0f64;
        let mut next = *y;
        for i in 0..4 {
            let mut inc = C::new(0.0, 0.0);
            for s in 5..13 {
                inc += k[s][i] * B8[s];
            }
            next[i] += inc * h;
            let e = (k[0][i] + k[10][i] - k[11][i] - k[12][i]) * (41.0 / 840.0 * h);
            let scale = opts.abs_tol + opts.rel_tol * y[i].norm().max(next[i].norm());
            err = err.max(e.norm() / scale);
        }
        *steps += 1;
        if !err.is_finite() {
            h /= 4.0;
        } else if err <= 1.0 {
            t += h;
            *y = next;
            h *= (0.9 * err.powf(-1.0 / 8.0)).clamp(0.2, 4.0);
        } else {
            h *= (0.9 * err.powf(-1.0 / 8.0)).clamp(0.1, 0.9);
        }
        if h < 1e-14 {
            return Err(Error::Numeric(format!(
                "step size underflow near z = {} (pole too close to the path?)",
                a + d * t
            )));
        }
    }
    Ok(())
}

/// Monodromy data and the Floquet exponent on the branch closest to a
/// reference value.
#[derive(Clone, Copy, Debug)]
pub struct MonodromyResult {
    /// `[[ψ1, ψ2], [ψ1', ψ2']]` at the end of the path.
    pub matrix: [[C; 2]; 2],
    pub period: C,
    pub trace: C,
    pub det: C,
    /// `ν` with multiplier `e^{iνT}`.
    pub floquet_exponent: C,
    /// `n` in `νT = ±θ0 + 2πn`.
    pub winding: i64,
    pub steps: usize,
}

impl MonodromyResult {
    /// Principal `θ0` with `cos θ0 = tr/2`, from
    /// `sin² θ = -M12 M21 - ((M11 - M22)/2)²`, which keeps the gap size
    /// accurate when the trace is close to ±2.
    pub fn principal_angle(&self) -> C {
        let m = self.matrix;
        let c = self.trace / 2.0;
        let half = (m[0][0] - m[1][1]) / 2.0;
        let s = (-(m[0][1] * m[1][0]) - half * half).sqrt();
        // -i ln(c + i s), principal branch.
        -C::i() * (c + C::i() * s).ln()
    }

    /// `ν` on the branch `±θ0 + 2πn` nearest `reference·T`.
    pub fn exponent_near(&self, reference: C) -> (C, i64) {
        let theta0 = self.principal_angle();
        let target = reference * self.period;
        let mut best = (f64::INFINITY, C::new(0.0, 0.0), 0i64);
        for sign in [1.0, -1.0] {
            let base = theta0 * sign;
            let n = ((target - base).re / (2.0 * PI)).round() as i64;
            for m in [n - 1, n, n + 1] {
                let cand = base + 2.0 * PI * m as f64;
                let dist = (cand - target).norm();
                if dist < best.0 {
                    best = (dist, cand, m);
                }
            }
        }
        (best.1 / self.period, best.2)
    }

    /// Re-selects the branch of the stored exponent.
    pub fn with_reference(mut self, reference: C) -> MonodromyResult {
        let (nu, n) = self.exponent_near(reference);
        self.floquet_exponent = nu;
        self.winding = n;
        self
    }
}

/// Monodromy of `ψ'' = (u(z) + λ)ψ` along `path`. The exponent branch is
/// the one nearest `reference`, or the free-particle value `sqrt(-λ)`.
pub fn monodromy_along<F>(
    mut u: F,
    lambda: C,
    path: &[C],
    reference: Option<C>,
    opts: &OdeOptions,
) -> Result<MonodromyResult>
where
    F: FnMut(C) -> Result<C>,
{
    if path.len() < 2 {
        return Err(Error::InvalidInput(
            "a monodromy path needs at least two points".into(),
        ));
    }
    let period = path[path.len() - 1] - path[0];
    if period.norm() == 0.0 {
        return Err(Error::InvalidInput(
            "monodromy path is closed in the z-plane".into(),
        ));
    }
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let mut y: State = [one, zero, zero, one];
    let mut steps = 0;
    let mut q = |z: C| -> Result<C> { Ok(u(z)? + lambda) };
    for w in path.windows(2) {
        integrate_segment(&mut q, w[0], w[1], &mut y, opts, &mut steps)?;
    }
    let matrix = [[y[0], y[2]], [y[1], y[3]]];
    let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
    if (det - 1.0).norm() > opts.det_tol {
        return Err(Error::Numeric(format!(
            "monodromy determinant drifted to {det}"
        )));
    }
    let trace = matrix[0][0] + matrix[1][1];
    let partial = MonodromyResult {
        matrix,
        period,
        trace,
        det,
        floquet_exponent: zero,
        winding: 0,
        steps,
    };
    Ok(partial.with_reference(reference.unwrap_or_else(|| (-lambda).sqrt())))
}
