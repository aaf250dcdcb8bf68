//! Lattice constants, complete elliptic integrals and the Jacobi and
//! Weierstrass functions at the normalization `2ω_1 = π`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::theta::{theta_constants, theta_functions, ThetaBundle, THETA_TOL};
use crate::error::{Error, Result};

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Arithmetic-geometric mean. At each step the square root is taken on
/// the branch closer to the arithmetic mean, which is the one giving the
/// principal value of `K` for complex modulus.
pub fn agm(a: C, b: C) -> (C, Vec<C>) {
    let (mut a, mut b) = (a, b);
    let mut cs = Vec::new();
    for _ in 0..64 {
        let an = (a + b) / 2.0;
        let mut bn = (a * b).sqrt();
        if (an - bn).norm() > (an + bn).norm() {
            bn = -bn;
        }
        cs.push((a - b) / 2.0);
        a = an;
        b = bn;
        if (a - b).norm() <= 1e-16 * a.norm() {
            cs.push((a - b) / 2.0);
            break;
        }
    }
    (a, cs)
}

/// `K(m)` and `E(m)` for parameter `m = k²` by the AGM.
pub fn complete_integrals(m: C) -> Result<(C, C)> {
    if (m - c(1.0)).norm() < 1e-300 || !m.is_finite() {
        return Err(Error::Domain(format!(
            "complete integrals need k^2 != 1, got {m}"
        )));
    }
    let b0 = (c(1.0) - m).sqrt();
    let (g, cs) = agm(c(1.0), b0);
    let k = PI / (2.0 * g);
    // E/K = 1 - Σ_n 2^(n-1) c_n², c_0 = k; cs holds c_1, c_2, ...
    let mut sum = m / 2.0;
    let mut p = 1.0;
    for cn in &cs {
        sum += p * cn * cn;
        p *= 2.0;
    }
    Ok((k, k * (c(1.0) - sum)))
}

/// Nome `q = exp(-2πK'/K)` for `k²`.
pub fn nome_from_k2(k2: C) -> Result<C> {
    check_modulus(k2)?;
    let (k, _) = complete_integrals(k2)?;
    let (kp, _) = complete_integrals(c(1.0) - k2)?;
    Ok((-2.0 * PI * kp / k).exp())
}

fn check_modulus(k2: C) -> Result<()> {
    if !k2.is_finite() || k2.norm() < 1e-300 || (k2 - c(1.0)).norm() < 1e-300 {
        return Err(Error::Domain(format!(
            "elliptic modulus k^2 must avoid 0 and 1, got {k2}"
        )));
    }
    Ok(())
}

/// Lattice constants for one nome, with both routes to `e_i` kept for
/// cross-checking.
#[derive(Clone, Debug)]
pub struct EllipticConstants {
    pub q: C,
    pub theta: ThetaBundle,
    pub k2: C,
    pub kp2: C,
    /// From theta quartics.
    pub e: [C; 3],
    /// From `-ϑ_r''/ϑ_r - ζ1` with `r = 2, 4, 3`.
    pub e_from_derivatives: [C; 3],
    pub g2: C,
    pub g3: C,
    pub zeta1: C,
    /// `K = (π/2) ϑ3²`.
    pub big_k: C,
    pub big_kp: C,
    /// `E` from `E/K = k'²(1 + (ζ1 + e3)/(e1 - e3))`.
    pub big_e: C,
    /// `K` and `E` by the AGM, for the identity checks.
    pub agm_k: C,
    pub agm_e: C,
    pub omega1: f64,
}

/// Constants at nome `q` (the square of the Jacobi nome), `0 < |q| < 1`.
pub fn elliptic_constants(q: C) -> Result<EllipticConstants> {
    if q.norm() == 0.0 {
        return Err(Error::Domain("elliptic constants need q != 0".into()));
    }
    let th = theta_constants(q, THETA_TOL)?;
    let (t2, t3, t4) = (th.theta2.powu(4), th.theta3.powu(4), th.theta4.powu(4));
    let e = [
        (2.0 * t3 - t2) / 3.0,
        -(t2 + t3) / 3.0,
        (2.0 * t2 - t3) / 3.0,
    ];
    let zeta1 = -th.theta1ppp / (3.0 * th.theta1p);
    let e_from_derivatives = [
        -th.theta2pp / th.theta2 - zeta1,
        -th.theta4pp / th.theta4 - zeta1,
        -th.theta3pp / th.theta3 - zeta1,
    ];
    let k2 = t2 / t3;
    let kp2 = t4 / t3;
    let big_k = PI / 2.0 * th.theta3 * th.theta3;
    let big_kp = -big_k * q.ln() / (2.0 * PI);
    let big_e = big_k * kp2 * (c(1.0) + (zeta1 + e[2]) / (e[0] - e[2]));
    let g2 = -4.0 * (e[0] * e[1] + e[0] * e[2] + e[1] * e[2]);
    let g3 = 4.0 * e[0] * e[1] * e[2];
    let (agm_k, agm_e) = complete_integrals(k2)?;
    Ok(EllipticConstants {
        q,
        theta: th,
        k2,
        kp2,
        e,
        e_from_derivatives,
        g2,
        g3,
        zeta1,
        big_k,
        big_kp,
        big_e,
        agm_k,
        agm_e,
        omega1: PI / 2.0,
    })
}

/// Constants for modulus `k²`, through the nome.
pub fn elliptic_constants_from_k2(k2: C) -> Result<EllipticConstants> {
    elliptic_constants(nome_from_k2(k2)?)
}

fn log_theta4(q: C, r: usize) -> Result<C> {
    let th = theta_constants(q, THETA_TOL)?;
    let t = [th.theta2, th.theta3, th.theta4][r];
    Ok(4.0 * t.ln())
}

impl EllipticConstants {
    /// `q ∂_q ln ϑ_r⁴` for `r = 2, 4, 3` by a five-point stencil in `ln q`.
    pub fn numeric_log_derivatives(&self) -> Result<[C; 3]> {
        let h = 1e-3;
        let mut out = [c(0.0); 3];
        for (slot, r) in [(0usize, 0usize), (1, 2), (2, 1)] {
            let f = |t: f64| -> Result<C> { log_theta4(self.q * t.exp(), r) };
            let base = f(0.0)?;
            let g = |t: f64| -> Result<C> { Ok(f(t)? - base) };
            out[slot] = (-g(2.0 * h)? + 8.0 * g(h)? - 8.0 * g(-h)? + g(-2.0 * h)?) / (12.0 * h);
        }
        Ok(out)
    }

    /// Residuals of the lattice identities, by name.
    pub fn residuals(&self) -> Result<Vec<(&'static str, f64)>> {
        let [e1, e2, e3] = self.e;
        let [d1, d2, d3] = self.e_from_derivatives;
        let scale = e1.norm().max(1.0);
        let sum = (e1 + e2 + e3).norm() / scale;
        let cross = self
            .e
            .iter()
            .zip(&self.e_from_derivatives)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale;
        let kq = ((d3 - d2) / (d1 - d2) - self.k2).norm();
        let zeta = (self.zeta1 - ((e1 - e2) * self.agm_e / self.agm_k - e1)).norm() / scale;
        let kk = (self.big_k - self.agm_k).norm() / self.agm_k.norm();
        let ee = (self.big_e - self.agm_e).norm() / self.agm_e.norm();
        let dq = self.numeric_log_derivatives()?;
        let qd = (0..3)
            .map(|i| (dq[i] - (self.zeta1 + self.e[i]) / 2.0).norm())
            .fold(0.0, f64::max)
            / scale;
        Ok(vec![
            ("e1+e2+e3", sum),
            ("e_i quartic vs derivative forms", cross),
            ("k^2 = (e3-e2)/(e1-e2)", kq),
            ("zeta1 = (e1-e2)E/K - e1", zeta),
            ("K = (pi/2) theta3^2", kk),
            ("E from dlnK/dlnk", ee),
            ("q d/dq ln theta^4 = (zeta1+e_i)/2", qd),
        ])
    }
}

/// Jacobi functions for a fixed modulus, by theta quotients with
/// `v = πz/(2K)` after reduction into the cell `|Re| ≤ K`, `|Im| ≤ K'`.
#[derive(Clone, Debug)]
pub struct JacobiElliptic {
    pub k2: C,
    pub big_k: C,
    pub big_kp: C,
    q: C,
    t2: C,
    t3: C,
    t4: C,
}

impl JacobiElliptic {
    pub fn new(k2: C) -> Result<JacobiElliptic> {
        Ok(Self::from_constants(&elliptic_constants_from_k2(k2)?))
    }

    pub fn from_constants(ec: &EllipticConstants) -> JacobiElliptic {
        JacobiElliptic {
            k2: ec.k2,
            big_k: ec.big_k,
            big_kp: ec.big_kp,
            q: ec.q,
            t2: ec.theta.theta2,
            t3: ec.theta.theta3,
            t4: ec.theta.theta4,
        }
    }

    /// `(sn, cn, dn)` at `z`; fails within `1e-10` of a pole.
    pub fn eval(&self, z: C) -> Result<(C, C, C)> {
        // z = a·2K + b·2iK' in real coordinates.
        let p1 = 2.0 * self.big_k;
        let p2 = C::new(0.0, 2.0) * self.big_kp;
        let det = p1.re * p2.im - p1.im * p2.re;
        let a = (z.re * p2.im - z.im * p2.re) / det;
        let b = (p1.re * z.im - p1.im * z.re) / det;
        let (na, nb) = (a.round(), b.round());
        let zr = z - na * p1 - nb * p2;
        let odd = |n: f64| {
            if (n as i64).rem_euclid(2) == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let v = zr * PI / (2.0 * self.big_k);
        let th = theta_functions(v, self.q, THETA_TOL)?.value;
        if th[3].norm() < 1e-10 * th[2].norm().max(1.0) {
            return Err(Error::Domain(format!(
                "z = {z} is at a pole of the Jacobi functions"
            )));
        }
        let sn = self.t3 / self.t2 * th[0] / th[3];
        let cn = self.t4 / self.t2 * th[1] / th[3];
        let dn = self.t4 / self.t3 * th[2] / th[3];
        Ok((sn * odd(na), cn * odd(na + nb), dn * odd(nb)))
    }
}

/// `(sn z, cn z, dn z)` for modulus `k²`.
pub fn jacobi_elliptic_eval(z: C, k2: C) -> Result<(C, C, C)> {
    JacobiElliptic::new(k2)?.eval(z)
}

/// `℘(x + ω_s)`, `℘'` and `℘''` for `s = 0..3`, from
/// `℘ = -∂² ln ϑ_r(x) - ζ1` with `r = 1, 2, 4, 3`.
pub fn weierstrass_p(x: C, s: usize, ec: &EllipticConstants) -> Result<[C; 3]> {
    let p1 = c(PI);
    let p2 = PI * C::new(0.0, 1.0) * ec.big_kp / ec.big_k;
    let det = p1.re * p2.im - p1.im * p2.re;
    let a = (x.re * p2.im - x.im * p2.re) / det;
    let b = (p1.re * x.im - p1.im * x.re) / det;
    let xr = x - a.round() * p1 - b.round() * p2;
    let th = theta_functions(xr, ec.q, THETA_TOL)?;
    let r = [1, 2, 4, 3][s];
    if th.value[r - 1].norm() < 1e-12 {
        return Err(Error::Domain(format!(
            "x = {x} is at a pole of the Weierstrass function"
        )));
    }
    let logd = th.log_derivatives(r);
    let p = -logd[1] - ec.zeta1;
    let dp = -logd[2];
    Ok([p, dp, 6.0 * p * p - ec.g2 / 2.0])
}
