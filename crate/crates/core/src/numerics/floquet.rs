//! Numeric potentials, standard period paths and the Floquet-exponent
//! oracles built on them: monodromy, quadrature of truncated `v` series,
//! stationary points and asymptotic eigenfunctions.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::elliptic::{
    elliptic_constants_from_k2, weierstrass_p, EllipticConstants, JacobiElliptic,
};
use super::ode::{monodromy_along, MonodromyResult, OdeOptions};
use super::quad::{integrate_polyline, QuadOptions};
use crate::coeffring::{sym, Symbol};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::jacobi::{JacobiExpr, JacobiMode};
use crate::series::AsymSeries;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Family tag of a numeric potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Trig,
    Lame,
    EllipsoidalW,
    EllipsoidalJ,
    Dtv,
}

/// A potential with numeric parameters.
#[derive(Clone, Debug)]
pub enum PotentialSpecNumeric {
    /// `u(x) = Σ_n 2θ_n cos 2nx`.
    Trig { theta: Vec<C> },
    /// `α1 ℘(x) + α2 ℘(x)²` at `2ω1 = π`.
    EllipsoidalW {
        alpha1: C,
        alpha2: C,
        constants: Box<EllipticConstants>,
    },
    /// `Δk² sn²z + Ωk⁴ sn⁴z`; Lamé when `Ω = 0`.
    EllipsoidalJ {
        delta: C,
        omega: C,
        jacobi: JacobiElliptic,
    },
    /// `Σ_s b_s k² sn²(z + s_s)` with shifts `0, K, iK', K + iK'`, i.e.
    /// `b0 k²sn² + b1 k²cd² + b2 ns² + b3 dc²`.
    Dtv { b: [C; 4], jacobi: JacobiElliptic },
}

fn check_finite(xs: &[C]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain("potential parameters must be finite".into()))
    }
}

impl PotentialSpecNumeric {
    pub fn trig(theta: &[f64]) -> Result<Self> {
        let theta: Vec<C> = theta.iter().map(|&t| c(t)).collect();
        check_finite(&theta)?;
        Ok(PotentialSpecNumeric::Trig { theta })
    }

    pub fn ellipsoidal_w(alpha1: C, alpha2: C, k2: C) -> Result<Self> {
        Self::ellipsoidal_w_with(alpha1, alpha2, elliptic_constants_from_k2(k2)?)
    }

    /// Weierstrass form on the lattice of given constants, e.g. at a nome.
    pub fn ellipsoidal_w_with(alpha1: C, alpha2: C, constants: EllipticConstants) -> Result<Self> {
        check_finite(&[alpha1, alpha2])?;
        Ok(PotentialSpecNumeric::EllipsoidalW {
            alpha1,
            alpha2,
            constants: Box::new(constants),
        })
    }

    pub fn ellipsoidal_j(delta: C, omega: C, k2: C) -> Result<Self> {
        check_finite(&[delta, omega])?;
        Ok(PotentialSpecNumeric::EllipsoidalJ {
            delta,
            omega,
            jacobi: JacobiElliptic::new(k2)?,
        })
    }

    /// Lamé in Jacobi form, `Δk² sn²z`.
    pub fn lame(delta: C, k2: C) -> Result<Self> {
        Self::ellipsoidal_j(delta, c(0.0), k2)
    }

    pub fn dtv(b: [C; 4], k2: C) -> Result<Self> {
        check_finite(&b)?;
        Ok(PotentialSpecNumeric::Dtv {
            b,
            jacobi: JacobiElliptic::new(k2)?,
        })
    }

    pub fn family(&self) -> Family {
        match self {
            PotentialSpecNumeric::Trig { .. } => Family::Trig,
            PotentialSpecNumeric::EllipsoidalW { .. } => Family::EllipsoidalW,
            PotentialSpecNumeric::EllipsoidalJ { omega, .. } if *omega == c(0.0) => Family::Lame,
            PotentialSpecNumeric::EllipsoidalJ { .. } => Family::EllipsoidalJ,
            PotentialSpecNumeric::Dtv { .. } => Family::Dtv,
        }
    }

    /// Jacobi data for the Jacobi-form families.
    pub fn jacobi(&self) -> Option<&JacobiElliptic> {
        match self {
            PotentialSpecNumeric::EllipsoidalJ { jacobi, .. }
            | PotentialSpecNumeric::Dtv { jacobi, .. } => Some(jacobi),
            _ => None,
        }
    }

    /// The two lattice periods of `u`.
    pub fn lattice(&self) -> Option<(C, C)> {
        match self {
            PotentialSpecNumeric::Trig { .. } => None,
            PotentialSpecNumeric::EllipsoidalW { constants, .. } => {
                Some((c(PI), C::i() * PI * constants.big_kp / constants.big_k))
            }
            PotentialSpecNumeric::EllipsoidalJ { jacobi, .. }
            | PotentialSpecNumeric::Dtv { jacobi, .. } => {
                Some((2.0 * jacobi.big_k, 2.0 * C::i() * jacobi.big_kp))
            }
        }
    }

    /// `u`, `u'`, `u''` at `z`.
    pub fn eval(&self, z: C) -> Result<[C; 3]> {
        match self {
            PotentialSpecNumeric::Trig { theta } => {
                let d = self.trig_derivatives(theta, z, 2);
                Ok([d[0], d[1], d[2]])
            }
            PotentialSpecNumeric::EllipsoidalW {
                alpha1,
                alpha2,
                constants,
            } => {
                let [p, dp, ddp] = weierstrass_p(z, 0, constants)?;
                let f = alpha1 + 2.0 * alpha2 * p;
                Ok([
                    alpha1 * p + alpha2 * p * p,
                    f * dp,
                    2.0 * alpha2 * dp * dp + f * ddp,
                ])
            }
            PotentialSpecNumeric::EllipsoidalJ {
                delta,
                omega,
                jacobi,
            } => {
                let k2 = jacobi.k2;
                let [s, s1, s2] = sn_squared(jacobi, z)?;
                let f = delta * k2 + 2.0 * omega * k2 * k2 * s;
                Ok([
                    delta * k2 * s + omega * k2 * k2 * s * s,
                    f * s1,
                    2.0 * omega * k2 * k2 * s1 * s1 + f * s2,
                ])
            }
            PotentialSpecNumeric::Dtv { b, jacobi } => {
                let (k, kp) = (jacobi.big_k, C::i() * jacobi.big_kp);
                let mut out = [c(0.0); 3];
                for (bs, shift) in b.iter().zip([c(0.0), k, kp, k + kp]) {
                    if *bs == c(0.0) {
                        continue;
                    }
                    let s = sn_squared(jacobi, z + shift)?;
                    for i in 0..3 {
                        out[i] += bs * jacobi.k2 * s[i];
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn u(&self, z: C) -> Result<C> {
        Ok(self.eval(z)?[0])
    }

    /// `u, u', …, u^(n)`. Elliptic families stop at `n = 2`.
    pub fn derivatives(&self, z: C, n: usize) -> Result<Vec<C>> {
        match self {
            PotentialSpecNumeric::Trig { theta } => Ok(self.trig_derivatives(theta, z, n)),
            _ if n <= 2 => Ok(self.eval(z)?[..=n].to_vec()),
            _ => Err(Error::InvalidInput(format!(
                "derivatives beyond second order are only available for trigonometric potentials (asked {n})"
            ))),
        }
    }

    fn trig_derivatives(&self, theta: &[C], z: C, n: usize) -> Vec<C> {
        let mut out = vec![c(0.0); n + 1];
        for (i, t) in theta.iter().enumerate() {
            let w = 2.0 * (i + 1) as f64;
            let (s, co) = ((z * w).sin(), (z * w).cos());
            let mut scale = 2.0 * t;
            for (j, o) in out.iter_mut().enumerate() {
                // d^j cos(wz) cycles through cos, -sin, -cos, sin.
                let base = [co, -s, -co, s][j % 4];
                *o += scale * base;
                scale *= w;
            }
        }
        out
    }

    /// The real period path `[x0, x0 + T]`. The Weierstrass form moves to
    /// `Im x = πK'/(2K)` and DTV to `Im z = K'/2`, away from their real poles.
    pub fn real_period_path(&self, x0: f64) -> Vec<C> {
        match self {
            PotentialSpecNumeric::Trig { .. } => vec![c(x0), c(x0 + PI)],
            PotentialSpecNumeric::EllipsoidalW { constants, .. } => {
                let w2 = C::i() * PI * constants.big_kp / (2.0 * constants.big_k);
                vec![w2 + x0, w2 + x0 + PI]
            }
            PotentialSpecNumeric::EllipsoidalJ { jacobi, .. } => {
                vec![c(x0), x0 + 2.0 * jacobi.big_k]
            }
            PotentialSpecNumeric::Dtv { jacobi, .. } => {
                let z0 = x0 + C::i() * jacobi.big_kp / 2.0;
                vec![z0, z0 + 2.0 * jacobi.big_k]
            }
        }
    }
}

/// `sn²z` with its first two derivatives.
fn sn_squared(j: &JacobiElliptic, z: C) -> Result<[C; 3]> {
    let (sn, cn, dn) = j.eval(z)?;
    let s = sn * sn;
    let s1 = 2.0 * sn * cn * dn;
    let s2 = 2.0 * (cn * cn * dn * dn - s * dn * dn - j.k2 * s * cn * cn);
    Ok([s, s1, s2])
}

/// Monodromy of `ψ'' = (u + λ)ψ` along `path`, exponent branch nearest
/// `sqrt(-λ)`.
pub fn monodromy(
    potential: &PotentialSpecNumeric,
    lambda: C,
    path: &[C],
) -> Result<MonodromyResult> {
    monodromy_with(potential, lambda, path, None, &OdeOptions::default())
}

pub fn monodromy_with(
    potential: &PotentialSpecNumeric,
    lambda: C,
    path: &[C],
    reference: Option<C>,
    opts: &OdeOptions,
) -> Result<MonodromyResult> {
    monodromy_along(|z| potential.u(z), lambda, path, reference, opts)
}

/// Which period a Floquet exponent is measured along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodTag {
    /// `2K` (or `π` in `x`).
    Omega1,
    /// `2iK'`.
    Omega2,
    /// `2K - 2iK'`, the cn-mode cycle.
    Omega3,
}

/// Offset of the diagonal path from the origin, in units of `K`.
const DIAGONAL_OFFSET: f64 = 0.1;

impl PeriodTag {
    /// Standard paths in the Jacobi `z`-plane. Integrals along complex
    /// periods are the mean over the listed polylines, which run on either
    /// side of the pole between them; this is the principal value that
    /// makes the period integrals of positive odd powers vanish.
    pub fn paths(self, j: &JacobiElliptic) -> Vec<Vec<C>> {
        let (k, kp) = (j.big_k, C::i() * j.big_kp);
        match self {
            PeriodTag::Omega1 => vec![vec![c(0.0), 2.0 * k]],
            PeriodTag::Omega2 => {
                let a = k / 2.0;
                vec![vec![a, a + 2.0 * kp], vec![a, -a + kp, a + 2.0 * kp]]
            }
            PeriodTag::Omega3 => {
                let z0 = DIAGONAL_OFFSET * k;
                let z1 = z0 + 2.0 * k - 2.0 * kp;
                vec![vec![z0, z1], vec![z0, -0.5 * k - kp, z1]]
            }
        }
    }

    pub fn period(self, j: &JacobiElliptic) -> C {
        let p = &self.paths(j)[0];
        p[p.len() - 1] - p[0]
    }
}

/// Mean of `∫ f dz` over the standard paths of `tag`.
pub fn period_quadrature<F>(
    mut f: F,
    tag: PeriodTag,
    j: &JacobiElliptic,
    opts: &QuadOptions,
) -> Result<C>
where
    F: FnMut(C) -> Result<C>,
{
    let paths = tag.paths(j);
    let mut total = c(0.0);
    for p in &paths {
        total += integrate_polyline(&mut f, p, opts)?.value;
    }
    Ok(total / paths.len() as f64)
}

/// Integrands accepted by [`contour_quadrature`].
pub enum ContourIntegrand<'a> {
    SnPower(i32),
    CnPower(i32),
    /// A Jacobi expression with its symbols bound.
    Expr(&'a JacobiExpr, &'a BTreeMap<Symbol, C>),
}

/// `∫ f dz` over the standard path(s) of `tag` at modulus `k²`.
pub fn contour_quadrature(integrand: &ContourIntegrand, tag: PeriodTag, k2: C) -> Result<C> {
    let j = JacobiElliptic::new(k2)?;
    contour_quadrature_with(integrand, tag, &j, &QuadOptions::default())
}

pub fn contour_quadrature_with(
    integrand: &ContourIntegrand,
    tag: PeriodTag,
    j: &JacobiElliptic,
    opts: &QuadOptions,
) -> Result<C> {
    let f = |z: C| -> Result<C> {
        let (sn, cn, dn) = j.eval(z)?;
        Ok(match integrand {
            ContourIntegrand::SnPower(m) => sn.powi(*m),
            ContourIntegrand::CnPower(m) => cn.powi(*m),
            ContourIntegrand::Expr(e, values) => {
                let (w, p) = match e.mode() {
                    JacobiMode::Sn => (sn, cn * dn),
                    JacobiMode::Cn => (cn, sn * dn),
                };
                e.eval_complex(w, p, values)?
            }
        })
    };
    period_quadrature(f, tag, j, opts)
}

/// A truncated `v` series ready for numeric evaluation.
#[derive(Clone, Debug)]
pub enum VSeries {
    /// `v = sqrt(λ) + Σ_{ℓ≥1} v_ℓ λ^{-ℓ/2}`, with `sqrt(λ) = i sqrt(-λ)`.
    LargeEnergy { densities: Vec<DiffPoly> },
    /// `v = η Σ_{ℓ≥-1} v̂_ℓ Δ^{-ℓ/2}`, `η = 1` (sn) or `i` (cn); `densities[0]`
    /// is `v̂_{-1}`.
    SmallEnergy {
        mode: JacobiMode,
        densities: Vec<JacobiExpr>,
    },
}

/// Numeric value of a differential polynomial from `u, u', …`.
pub fn eval_diffpoly(p: &DiffPoly, derivs: &[C]) -> Result<C> {
    let empty = BTreeMap::new();
    let mut acc = c(0.0);
    for (m, coef) in p.terms() {
        let mut t = coef.eval_complex(&empty)?;
        for &k in m {
            t *= *derivs.get(k as usize).ok_or_else(|| {
                Error::InvalidInput(format!("density needs u derivative of order {k}"))
            })?;
        }
        acc += t;
    }
    Ok(acc)
}

fn max_derivative(densities: &[DiffPoly]) -> usize {
    densities
        .iter()
        .flat_map(|d| {
            d.terms()
                .flat_map(|(m, _)| m.iter().copied())
                .collect::<Vec<_>>()
        })
        .max()
        .unwrap_or(0) as usize
}

/// `sqrt(λ)` on the branch `i sqrt(-λ)`.
pub fn sqrt_energy(lambda: C) -> C {
    C::i() * (-lambda).sqrt()
}

/// Which densities of a [`VSeries`] to sum, by the parity of `ℓ`; the
/// leading `sqrt(λ)` or `v̂_{-1}` counts as odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terms {
    All,
    Odd,
    Even,
}

impl Terms {
    fn keeps(self, l: i32) -> bool {
        match self {
            Terms::All => true,
            Terms::Odd => l.rem_euclid(2) == 1,
            Terms::Even => l.rem_euclid(2) == 0,
        }
    }
}

type Evaluator<'a> = Box<dyn Fn(C) -> Result<C> + 'a>;

impl VSeries {
    /// A closure evaluating `v(z)` for the potential at energy `eigenvalue`
    /// (the `λ` of `ψ'' = (u + λ)ψ`).
    pub fn evaluator<'a>(
        &'a self,
        potential: &'a PotentialSpecNumeric,
        eigenvalue: C,
    ) -> Result<Evaluator<'a>> {
        self.evaluator_terms(potential, eigenvalue, Terms::All)
    }

    pub fn evaluator_terms<'a>(
        &'a self,
        potential: &'a PotentialSpecNumeric,
        eigenvalue: C,
        terms: Terms,
    ) -> Result<Evaluator<'a>> {
        match self {
            VSeries::LargeEnergy { densities } => {
                let nd = max_derivative(densities);
                let root = sqrt_energy(eigenvalue);
                Ok(Box::new(move |z| {
                    let d = potential.derivatives(z, nd)?;
                    let mut acc = if terms.keeps(-1) { root } else { c(0.0) };
                    let mut pw = c(1.0);
                    for (i, v) in densities.iter().enumerate() {
                        pw /= root;
                        if terms.keeps(i as i32 + 1) {
                            acc += eval_diffpoly(v, &d)? * pw;
                        }
                    }
                    Ok(acc)
                }))
            }
            VSeries::SmallEnergy { mode, densities } => {
                let (delta, omega, j) = match potential {
                    PotentialSpecNumeric::EllipsoidalJ {
                        delta,
                        omega,
                        jacobi,
                    } => (*delta, *omega, jacobi),
                    _ => {
                        return Err(Error::InvalidInput(
                            "small-energy series need the Jacobi-form ellipsoidal potential".into(),
                        ))
                    }
                };
                let k2 = j.k2;
                let mut values = BTreeMap::new();
                values.insert(sym::k(), k2.sqrt());
                values.insert(sym::kp(), (1.0 - k2).sqrt());
                values.insert(sym::omega(), omega);
                let (energy, eta) = match mode {
                    JacobiMode::Sn => (eigenvalue, c(1.0)),
                    JacobiMode::Cn => (eigenvalue + delta * k2 + omega * k2 * k2, C::i()),
                };
                values.insert(mode.energy_symbol(), energy);
                let t = delta.sqrt().inv();
                let mode = *mode;
                Ok(Box::new(move |z| {
                    let (sn, cn, dn) = j.eval(z)?;
                    let (w, p) = match mode {
                        JacobiMode::Sn => (sn, cn * dn),
                        JacobiMode::Cn => (cn, sn * dn),
                    };
                    let mut acc = c(0.0);
                    let mut pw = t.inv();
                    for (i, v) in densities.iter().enumerate() {
                        if terms.keeps(i as i32 - 1) {
                            acc += v.eval_complex(w, p, &values)? * pw;
                        }
                        pw *= t;
                    }
                    Ok(eta * acc)
                }))
            }
        }
    }
}

/// Floquet exponent from the period integral of `v`, normalized per
/// period: `ν = ∫v/(iT)` along the real period, `μ = (1/π)∫v` along
/// `2iK'` and `μ = (ik'/π)∫v` along the diagonal cycle.
///
/// Along the complex periods the odd densities take the mean over both
/// standard paths, which drops the residues at the pole between them. The
/// even densities are exact derivatives and are integrated along the
/// straight path only: `v_0 = -(ln w)'/2` picks up `∓iπ` on the detour,
/// which is a sign of the multiplier and not part of `μ`.
pub fn floquet_exponent_from_integral(
    potential: &PotentialSpecNumeric,
    eigenvalue: C,
    v_series: &VSeries,
    tag: PeriodTag,
    opts: &QuadOptions,
) -> Result<C> {
    if tag == PeriodTag::Omega1 {
        let v = v_series.evaluator(potential, eigenvalue)?;
        let path = potential.real_period_path(0.0);
        let t = path[path.len() - 1] - path[0];
        let int = integrate_polyline(&v, &path, opts)?.value;
        return Ok(int / (C::i() * t));
    }
    let j = potential.jacobi().ok_or_else(|| {
        Error::InvalidInput("complex periods need a Jacobi-form potential".into())
    })?;
    let odd = v_series.evaluator_terms(potential, eigenvalue, Terms::Odd)?;
    let even = v_series.evaluator_terms(potential, eigenvalue, Terms::Even)?;
    let int = period_quadrature(&odd, tag, j, opts)?
        + integrate_polyline(&even, &tag.paths(j)[0], opts)?.value;
    Ok(period_normalization(tag, j) * int)
}

/// `1/π` for `2iK'`, `ik'/π` for the diagonal cycle; `1/(iT)` on the real
/// period.
pub fn period_normalization(tag: PeriodTag, j: &JacobiElliptic) -> C {
    match tag {
        PeriodTag::Omega1 => (C::i() * tag.period(j)).inv(),
        PeriodTag::Omega2 => c(1.0 / PI),
        PeriodTag::Omega3 => C::i() * (1.0 - j.k2).sqrt() / PI,
    }
}

/// Solves `λ(ν) = lambda` for `ν` near `sqrt(-lambda)`, where `series` is
/// `λ` in the parameter `1/ν`. Newton on the truncated series.
pub fn invert_large_energy(
    series: &AsymSeries,
    lambda: C,
    values: &BTreeMap<Symbol, C>,
) -> Result<C> {
    let d = series.derivative();
    let mut nu = (-lambda).sqrt();
    for _ in 0..60 {
        let x = nu.inv();
        let f = series.eval_complex(x, values)? - lambda;
        // dλ/dν = -x² dλ/dx
        let df = -x * x * d.eval_complex(x, values)?;
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        nu -= step;
        if step.norm() <= 1e-15 * nu.norm() {
            return Ok(nu);
        }
    }
    let x = nu.inv();
    let resid = (series.eval_complex(x, values)? - lambda).norm();
    if resid <= 1e-12 * lambda.norm().max(1.0) {
        Ok(nu)
    } else {
        Err(Error::Numeric(format!(
            "series inversion at lambda = {lambda} stalled (residual {resid:e})"
        )))
    }
}

/// Stationary points `u'(z*) = 0` in one period cell with `u(z*)`, by
/// Newton from a grid, deduplicated modulo the lattice.
pub fn stationary_points(potential: &PotentialSpecNumeric) -> Result<Vec<(C, C)>> {
    let (p1, p2) = potential.lattice().ok_or_else(|| {
        Error::InvalidInput("stationary points need an elliptic potential".into())
    })?;
    let scale = p1.norm().min(p2.norm());
    let det = p1.re * p2.im - p1.im * p2.re;
    let reduce = |z: C| -> C {
        let a = (z.re * p2.im - z.im * p2.re) / det;
        let b = (p1.re * z.im - p1.im * z.re) / det;
        // Cell [-1/4, 3/4) in lattice coordinates, so that the
        // half-period points sit away from the cell edges.
        z - (a + 0.25).floor() * p1 - (b + 0.25).floor() * p2
    };
    let same = |x: C, y: C| -> bool {
        let d = x - y;
        let a = (d.re * p2.im - d.im * p2.re) / det;
        let b = (p1.re * d.im - p1.im * d.re) / det;
        let r = d - a.round() * p1 - b.round() * p2;
        r.norm() < 1e-7 * scale
    };
    let grid = 24;
    let mut found: Vec<(C, C)> = Vec::new();
    let mut failures = 0;
    for i in 0..grid {
        for jj in 0..grid {
            let mut z = p1 * ((i as f64 + 0.37) / grid as f64 - 0.25)
                + p2 * ((jj as f64 + 0.41) / grid as f64 - 0.25);
            let mut ok = false;
            for _ in 0..80 {
                let Ok([_, d1, d2]) = potential.eval(z) else {
                    break;
                };
                if d2.norm() == 0.0 || !d1.is_finite() {
                    break;
                }
                let step = d1 / d2;
                // Damp long jumps so Newton stays inside the cell.
                let step = if step.norm() > 0.25 * scale {
                    step * (0.25 * scale / step.norm())
                } else {
                    step
                };
                z -= step;
                if step.norm() < 1e-14 * scale {
                    ok = true;
                    break;
                }
            }
            let Ok([u0, d1, _]) = potential.eval(z) else {
                failures += 1;
                continue;
            };
            if !ok && d1.norm() > 1e-9 * u0.norm().max(1.0) {
                failures += 1;
                continue;
            }
            let z = reduce(z);
            if !found.iter().any(|(w, _)| same(*w, z)) {
                found.push((z, u0));
            }
        }
    }
    if found.is_empty() {
        return Err(Error::Numeric(format!(
            "Newton found no stationary points ({failures} starts failed)"
        )));
    }
    found.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
    Ok(found)
}

/// Asymptotic eigenfunction `ψ = exp(∫ v)` along a path and its Floquet
/// periodicity check.
#[derive(Clone, Debug)]
pub struct EigenfunctionReport {
    /// `ln ψ` at each path vertex, with `ψ(x0) = 1`.
    pub log_psi: Vec<C>,
    /// `|e^{-iνT} ψ(x0 + T)/ψ(x0) - 1|` with `T` the path span.
    pub periodicity_defect: f64,
    /// Largest `|v' + v² - u - λ|` sampled on the path.
    pub miura_residual: f64,
}

/// Evaluates `ψ = exp(∫v)` along `x_path`, whose span should be a period,
/// and the defect of `φ = e^{-iνx}ψ`.
pub fn eigenfunction_eval(
    potential: &PotentialSpecNumeric,
    v_series: &VSeries,
    x_path: &[C],
    eigenvalue: C,
    nu: C,
    opts: &QuadOptions,
) -> Result<EigenfunctionReport> {
    if x_path.len() < 2 {
        return Err(Error::InvalidInput(
            "eigenfunction path needs two points".into(),
        ));
    }
    let v = v_series.evaluator(potential, eigenvalue)?;
    let mut log_psi = vec![c(0.0)];
    for w in x_path.windows(2) {
        let last = *log_psi.last().unwrap();
        log_psi.push(last + integrate_polyline(&v, w, opts)?.value);
    }
    let span = x_path[x_path.len() - 1] - x_path[0];
    let defect = (log_psi[log_psi.len() - 1] - C::i() * nu * span).exp() - 1.0;
    // Miura residual by a central difference on v at interior samples.
    let mut miura: f64 = 0.0;
    let h = 1e-4;
    for w in x_path.windows(2) {
        for s in [0.25, 0.5, 0.75] {
            let z = w[0] + (w[1] - w[0]) * s;
            let dir = (w[1] - w[0]) / (w[1] - w[0]).norm();
            let dv = (-v(z + dir * 2.0 * h)? + 8.0 * v(z + dir * h)? - 8.0 * v(z - dir * h)?
                + v(z - dir * 2.0 * h)?)
                / (12.0 * h * dir);
            let vz = v(z)?;
            let r = dv + vz * vz - potential.u(z)? - eigenvalue;
            miura = miura.max(r.norm());
        }
    }
    Ok(EigenfunctionReport {
        log_psi,
        periodicity_defect: defect.norm(),
        miura_residual: miura,
    })
}
