//! Theta functions in the convention
//! `ϑ3(χ, q) = Σ q^(n²/2) e^(2inχ)`, i.e. standard Jacobi thetas with nome
//! `s = q^(1/2)`:
//!
//! ```text
//! ϑ1 = 2 q^(1/8) Σ_{n≥0} (-1)^n s^(n(n+1)) sin((2n+1)χ)
//! ϑ2 = 2 q^(1/8) Σ_{n≥0}        s^(n(n+1)) cos((2n+1)χ)
//! ϑ3 = 1 + 2 Σ_{n≥1}        s^(n²) cos(2nχ)
//! ϑ4 = 1 + 2 Σ_{n≥1} (-1)^n s^(n²) cos(2nχ)
//! ```
//!
//! Fractional powers of `q` use the principal branch.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 400;

/// Default truncation target for the series tails.
pub const THETA_TOL: f64 = 1e-16;

/// Theta constants and the `χ`-derivatives at `χ = 0` that the elliptic
/// constants need.
#[derive(Clone, Copy, Debug)]
pub struct ThetaBundle {
    pub q: Complex64,
    /// `s = q^(1/2)`, the classical Jacobi nome.
    pub nome: Complex64,
    pub theta1p: Complex64,
    pub theta1ppp: Complex64,
    pub theta2: Complex64,
    pub theta3: Complex64,
    pub theta4: Complex64,
    pub theta2pp: Complex64,
    pub theta3pp: Complex64,
    pub theta4pp: Complex64,
}

/// Values and first three `χ`-derivatives of `ϑ1..ϑ4` at one point;
/// index 0 is `ϑ1`.
#[derive(Clone, Copy, Debug)]
pub struct ThetaValues {
    pub value: [Complex64; 4],
    pub d1: [Complex64; 4],
    pub d2: [Complex64; 4],
    pub d3: [Complex64; 4],
}

impl ThetaValues {
    /// `∂_χ^j ln ϑ_r` for `j = 1, 2, 3`, `r` in 1..=4.
    pub fn log_derivatives(&self, r: usize) -> [Complex64; 3] {
        let i = r - 1;
        let t = self.value[i];
        let a = self.d1[i] / t;
        let b = self.d2[i] / t;
        let c = self.d3[i] / t;
        [a, b - a * a, c - 3.0 * b * a + 2.0 * a * a * a]
    }
}

fn check_nome(q: Complex64) -> Result<()> {
    if !q.is_finite() || q.norm() >= 1.0 {
        return Err(Error::Domain(format!("theta series need |q| < 1, got {q}")));
    }
    Ok(())
}

/// `q^(1/8)` and `q^(1/2)`.
fn roots(q: Complex64) -> (Complex64, Complex64) {
    if q == Complex64::new(0.0, 0.0) {
        return (q, q);
    }
    (q.powf(0.125), q.sqrt())
}

/// Theta constants summed until the tail drops below `tol` relative to the
/// leading term.
pub fn theta_constants(q: Complex64, tol: f64) -> Result<ThetaBundle> {
    check_nome(q)?;
    let v = theta_functions(Complex64::new(0.0, 0.0), q, tol)?;
    Ok(ThetaBundle {
        q,
        nome: roots(q).1,
        theta1p: v.d1[0],
        theta1ppp: v.d3[0],
        theta2: v.value[1],
        theta3: v.value[2],
        theta4: v.value[3],
        theta2pp: v.d2[1],
        theta3pp: v.d2[2],
        theta4pp: v.d2[3],
    })
}

/// All four theta functions with three derivatives at complex `χ`.
pub fn theta_functions(chi: Complex64, q: Complex64, tol: f64) -> Result<ThetaValues> {
    check_nome(q)?;
    let zero = Complex64::new(0.0, 0.0);
    let (q8, s) = roots(q);
    let mut out = ThetaValues {
        value: [zero; 4],
        d1: [zero; 4],
        d2: [zero; 4],
        d3: [zero; 4],
    };
    out.value[2] = Complex64::new(1.0, 0.0);
    out.value[3] = Complex64::new(1.0, 0.0);
    let growth = chi.im.abs();
    let sn = s.norm();
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        // Odd harmonics: s^{n(n+1)}, frequency 2n+1.
        let w = 2.0 * nf + 1.0;
        let p = s.powu((n * (n + 1)) as u32) * 2.0;
        let (sin, cos) = ((chi * w).sin(), (chi * w).cos());
        let odd = [
            (p * sign, [sin, cos * w, -sin * w * w, -cos * w * w * w]),
            (p, [cos, -sin * w, -cos * w * w, sin * w * w * w]),
        ];
        for (r, (c, d)) in odd.iter().enumerate() {
            out.value[r] += c * d[0];
            out.d1[r] += c * d[1];
            out.d2[r] += c * d[2];
            out.d3[r] += c * d[3];
        }
        // Even harmonics: s^{n²}, frequency 2n, n ≥ 1.
        if n >= 1 {
            let w = 2.0 * nf;
            let p = s.powu((n * n) as u32) * 2.0;
            let (sin, cos) = ((chi * w).sin(), (chi * w).cos());
            let d = [cos, -sin * w, -cos * w * w, sin * w * w * w];
            for (r, c) in [(2usize, p), (3, p * sign)] {
                out.value[r] += c * d[0];
                out.d1[r] += c * d[1];
                out.d2[r] += c * d[2];
                out.d3[r] += c * d[3];
            }
        }
        // Bound on the next terms, derivatives included.
        let m = (n + 1) as f64;
        let next = sn.powf(m * m) * (growth * (2.0 * m + 1.0)).exp() * (2.0 * m + 1.0).powi(3);
        if n >= 1 && next < tol {
            converged = true;
            break;
        }
        if sn == 0.0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "theta series did not converge at χ = {chi}, q = {q}"
        )));
    }
    for r in 0..2 {
        out.value[r] *= q8;
        out.d1[r] *= q8;
        out.d2[r] *= q8;
        out.d3[r] *= q8;
    }
    Ok(out)
}
