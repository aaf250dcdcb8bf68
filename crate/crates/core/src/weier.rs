//! Densities on Weierstrass-form potentials and their period means.
//!
//! Generators are `P_s = ℘(x + ω_s)` and `Q_s = ℘'(x + ω_s)` for
//! `s = 0..3` (`ω_0 = 0`, `ω_3 = ω_1 + ω_2`). Multiplication applies the
//! exact identities
//!
//! ```text
//! Q_s^2     = 4 P_s^3 - g2 P_s - g3
//! Q_s Q_t   = -4 (e_r - e_a)(e_r - e_b) [P_s + P_t + e_r]
//! P_s P_t   = e_r (P_s + P_t) + e_r^2 + e_a e_b
//! ```
//!
//! with `r = s xor t` and `{a, b}` the other two labels, so a canonical
//! monomial holds at most one distinct `P` label and at most one `Q` factor.
//! Reduction modulo exact derivatives then brings everything to the affine
//! form `c_0 + sum_s c_s P_s`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{sym, ParamRat};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::series::{revert_large_energy, AsymSeries};

/// Exponents of `P_0..P_3` followed by `Q_0..Q_3`.
type WMono = [u8; 8];

const ONE: WMono = [0; 8];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeierExpr {
    terms: BTreeMap<WMono, ParamRat>,
}

/// Elliptic potentials in Weierstrass form.
#[derive(Clone, Debug, PartialEq)]
pub enum WeierPotential {
    /// `alpha1 ℘(x) + alpha2 ℘(x)^2`; Lamé when `alpha2 = 0`.
    Ellipsoidal { alpha1: ParamRat, alpha2: ParamRat },
    /// `sum_s b_s ℘(x + ω_s)`.
    Dtv { b: [ParamRat; 4] },
}

impl WeierPotential {
    pub fn lame(delta: ParamRat) -> WeierPotential {
        WeierPotential::Ellipsoidal {
            alpha1: delta,
            alpha2: ParamRat::zero(),
        }
    }

    /// The potential as an expression in the generators.
    pub fn u(&self) -> WeierExpr {
        match self {
            WeierPotential::Ellipsoidal { alpha1, alpha2 } => WeierExpr::p(0)
                .scale(alpha1)
                .add(&WeierExpr::p(0).mul(&WeierExpr::p(0)).scale(alpha2)),
            WeierPotential::Dtv { b } => (0..4).fold(WeierExpr::zero(), |acc, s| {
                acc.add(&WeierExpr::p(s).scale(&b[s]))
            }),
        }
    }
}

fn e(i: usize) -> ParamRat {
    ParamRat::sym(match i {
        1 => sym::e1(),
        2 => sym::e2(),
        _ => sym::e3(),
    })
}

fn g2() -> ParamRat {
    ParamRat::sym(sym::g2())
}

fn g3() -> ParamRat {
    ParamRat::sym(sym::g3())
}

/// The two half-period labels other than `r` among `1, 2, 3`.
fn others(r: usize) -> (usize, usize) {
    match r {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    }
}

impl WeierExpr {
    pub fn zero() -> WeierExpr {
        WeierExpr::default()
    }

    pub fn constant(c: ParamRat) -> WeierExpr {
        let mut w = WeierExpr::zero();
        w.add_term(ONE, c);
        w
    }

    /// `P_s = ℘(x + ω_s)`.
    pub fn p(s: usize) -> WeierExpr {
        let mut m = ONE;
        m[s] = 1;
        WeierExpr::from_raw(m, ParamRat::one())
    }

    /// `Q_s = ℘'(x + ω_s)`.
    pub fn q(s: usize) -> WeierExpr {
        let mut m = ONE;
        m[4 + s] = 1;
        WeierExpr::from_raw(m, ParamRat::one())
    }

    fn from_raw(m: WMono, c: ParamRat) -> WeierExpr {
        let mut w = WeierExpr::zero();
        w.add_term(m, c);
        w
    }

    fn add_term(&mut self, m: WMono, c: ParamRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(ParamRat::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Constant term.
    pub fn c0(&self) -> ParamRat {
        self.terms.get(&ONE).cloned().unwrap_or_else(ParamRat::zero)
    }

    /// Coefficient of the bare generator `P_s`.
    pub fn coeff_p(&self, s: usize) -> ParamRat {
        let mut m = ONE;
        m[s] = 1;
        self.terms.get(&m).cloned().unwrap_or_else(ParamRat::zero)
    }

    /// True when only a constant and bare `P_s` terms remain.
    pub fn is_affine(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().map(|&x| x as u32).sum::<u32>() <= 1 && m[4..] == [0; 4])
    }

    pub fn add(&self, other: &WeierExpr) -> WeierExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> WeierExpr {
        self.scale(&ParamRat::int(-1))
    }

    pub fn sub(&self, other: &WeierExpr) -> WeierExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ParamRat) -> WeierExpr {
        let mut out = WeierExpr::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x.mul(c));
        }
        out
    }

    /// Product, brought to canonical form by the exact identities.
    pub fn mul(&self, other: &WeierExpr) -> WeierExpr {
        let mut raw = WeierExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = *ma;
                for i in 0..8 {
                    m[i] += mb[i];
                }
                raw.add_term(m, ca.mul(cb));
            }
        }
        raw.canonical()
    }

    fn canonical(self) -> WeierExpr {
        let mut out = WeierExpr::zero();
        let mut work: Vec<(WMono, ParamRat)> = self.terms.into_iter().collect();
        while let Some((m, c)) = work.pop() {
            match rewrite_once(&m) {
                None => out.add_term(m, c),
                Some(expansion) => {
                    for (em, ec) in expansion {
                        work.push((em, ec.mul(&c)));
                    }
                }
            }
        }
        out
    }

    /// `d/dx` with `P_s' = Q_s`, `Q_s' = 6 P_s^2 - g2/2`.
    pub fn derivative(&self) -> WeierExpr {
        let mut raw = WeierExpr::zero();
        for (m, c) in &self.terms {
            for s in 0..4 {
                let a = m[s];
                if a > 0 {
                    let mut n = *m;
                    n[s] -= 1;
                    n[4 + s] += 1;
                    raw.add_term(n, c.mul(&ParamRat::int(a as i64)));
                }
                let b = m[4 + s];
                if b > 0 {
                    let mut n = *m;
                    n[4 + s] -= 1;
                    let k = c.mul(&ParamRat::int(b as i64));
                    let mut n2 = n;
                    n2[s] += 2;
                    raw.add_term(n2, k.mul(&ParamRat::int(6)));
                    raw.add_term(n, k.mul(&g2()).mul(&ParamRat::rat(-1, 2)));
                }
            }
        }
        raw.canonical()
    }

    /// Affine representative `c_0 + sum_s c_s P_s` modulo exact derivatives.
    ///
    /// `P_s^a Q_s` is the derivative of `P_s^(a+1)/(a+1)`, and powers drop by
    /// `(4n-2) P^n = (n - 3/2) g2 P^(n-2) + (n-2) g3 P^(n-3) + (P^(n-2) Q)'`.
    pub fn reduce(&self) -> Result<WeierExpr> {
        let mut out = WeierExpr::zero();
        let mut work: BTreeMap<WMono, ParamRat> = self.clone().canonical().terms;
        while let Some((m, c)) = work.pop_last() {
            let qdeg: u8 = m[4..].iter().sum();
            let s = (0..4).find(|&s| m[s] > 0);
            if qdeg == 1 {
                let t = (0..4).find(|&t| m[4 + t] == 1).expect("one Q factor");
                match s {
                    None => continue,
                    Some(s) if s == t => continue,
                    Some(_) => return Err(Error::IrreducibleTerm(render_mono(&m))),
                }
            }
            if qdeg > 1 {
                return Err(Error::IrreducibleTerm(render_mono(&m)));
            }
            let Some(s) = s else {
                out.add_term(m, c);
                continue;
            };
            let n = m[s] as i64;
            if n <= 1 {
                out.add_term(m, c);
                continue;
            }
            let denom = ParamRat::int(4 * n - 2);
            let mut lower = ONE;
            lower[s] = (n - 2) as u8;
            let k2 = ParamRat::rat(2 * n - 3, 2).mul(&g2()).div(&denom)?;
            push(&mut work, lower, c.mul(&k2));
            if n >= 3 {
                let mut lower3 = ONE;
                lower3[s] = (n - 3) as u8;
                let k3 = ParamRat::int(n - 2).mul(&g3()).div(&denom)?;
                push(&mut work, lower3, c.mul(&k3));
            }
        }
        Ok(out)
    }

    /// Mean over the real period `2ω_1`. Each `P_s` averages to `-ζ1`.
    pub fn period_mean(&self) -> Result<ParamRat> {
        let r = self.reduce()?;
        let zeta1 = ParamRat::sym(sym::zeta1());
        let sum = (0..4).fold(ParamRat::zero(), |acc, s| acc.add(&r.coeff_p(s)));
        Ok(r.c0().sub(&zeta1.mul(&sum)))
    }
}

fn push(work: &mut BTreeMap<WMono, ParamRat>, m: WMono, c: ParamRat) {
    if c.is_zero() {
        return;
    }
    let entry = work.entry(m).or_insert_with(ParamRat::zero);
    *entry = entry.add(&c);
    if entry.is_zero() {
        work.remove(&m);
    }
}

/// One step of the exact product identities, or `None` if `m` is canonical.
fn rewrite_once(m: &WMono) -> Option<Vec<(WMono, ParamRat)>> {
    // Q_s^2
    if let Some(s) = (0..4).find(|&s| m[4 + s] >= 2) {
        let mut base = *m;
        base[4 + s] -= 2;
        let mut p3 = base;
        p3[s] += 3;
        let mut p1 = base;
        p1[s] += 1;
        return Some(vec![
            (p3, ParamRat::int(4)),
            (p1, g2().neg()),
            (base, g3().neg()),
        ]);
    }
    // Q_s Q_t
    let qs: Vec<usize> = (0..4).filter(|&s| m[4 + s] > 0).collect();
    if qs.len() >= 2 {
        let (s, t) = (qs[0], qs[1]);
        let r = s ^ t;
        let (a, b) = others(r);
        let k = ParamRat::int(-4)
            .mul(&e(r).sub(&e(a)))
            .mul(&e(r).sub(&e(b)));
        let mut base = *m;
        base[4 + s] -= 1;
        base[4 + t] -= 1;
        let mut ps = base;
        ps[s] += 1;
        let mut pt = base;
        pt[t] += 1;
        return Some(vec![(ps, k.clone()), (pt, k.clone()), (base, k.mul(&e(r)))]);
    }
    // P_s P_t
    let ps: Vec<usize> = (0..4).filter(|&s| m[s] > 0).collect();
    if ps.len() >= 2 {
        let (s, t) = (ps[0], ps[1]);
        let r = s ^ t;
        let (a, b) = others(r);
        let mut base = *m;
        base[s] -= 1;
        base[t] -= 1;
        let mut ms = base;
        ms[s] += 1;
        let mut mt = base;
        mt[t] += 1;
        return Some(vec![
            (ms, e(r)),
            (mt, e(r)),
            (base, e(r).mul(&e(r)).add(&e(a).mul(&e(b)))),
        ]);
    }
    None
}

fn render_mono(m: &WMono) -> String {
    let mut parts = Vec::new();
    for (i, &x) in m.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let name = if i < 4 {
            format!("P{i}")
        } else {
            format!("Q{}", i - 4)
        };
        parts.push(if x == 1 { name } else { format!("{name}^{x}") });
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for WeierExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c})*{}", render_mono(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WeierExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeierExpr({self})")
    }
}

/// Evaluates a differential polynomial on a Weierstrass potential.
pub fn weier_substitute(p: &DiffPoly, potential: &WeierPotential) -> WeierExpr {
    let top = p
        .terms()
        .flat_map(|(m, _)| m.iter().copied())
        .max()
        .unwrap_or(0);
    let mut derivs = vec![potential.u()];
    for k in 1..=top as usize {
        derivs.push(derivs[k - 1].derivative());
    }
    let mut out = WeierExpr::zero();
    for (m, c) in p.terms() {
        let mut term = WeierExpr::constant(c.clone());
        for &k in m {
            term = term.mul(&derivs[k as usize]);
        }
        out = out.add(&term);
    }
    out
}

/// `eps_1 .. eps_n`: period means of the odd densities over `2ω_1`.
pub fn weier_epsilons(potential: &WeierPotential, n: usize) -> Result<Vec<ParamRat>> {
    let v = crate::diffpoly::kdv_densities(2 * n);
    (1..=n)
        .map(|l| weier_substitute(&v[2 * l - 2].reduce_mod_exact(), potential).period_mean())
        .collect()
}

/// `lambda(nu) = -nu^2 + sum_(l<n) lambda_l nu^(-2l)`.
pub fn large_energy_eigenvalue(potential: &WeierPotential, n: usize) -> Result<AsymSeries> {
    revert_large_energy(&weier_epsilons(potential, n)?)
}

/// Eliminates `e3`, `g2`, `g3` through `e1 + e2 + e3 = 0`,
/// `g2 = -4(e1 e2 + e1 e3 + e2 e3)`, `g3 = 4 e1 e2 e3`. Two values that are
/// equal as functions of the lattice normalize to the same form.
pub fn normalize_lattice(x: &ParamRat) -> Result<ParamRat> {
    let (e1, e2) = (e(1), e(2));
    let e3 = e1.add(&e2).neg();
    let g2v = ParamRat::int(-4).mul(&e1.mul(&e2).add(&e1.mul(&e3)).add(&e2.mul(&e3)));
    let g3v = ParamRat::int(4).mul(&e1).mul(&e2).mul(&e3);
    let mut b = BTreeMap::new();
    b.insert(sym::e3(), e3);
    b.insert(sym::g2(), g2v);
    b.insert(sym::g3(), g3v);
    x.substitute(&b)
}

/// How the Weierstrass-form couplings and eigenvalue map to Jacobi form
/// under `x = (z + iK')/(e1 - e2)^(1/2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum JacobiParamMap {
    /// Series in `alpha1`, `alpha2`: `alpha1 = Delta - 2 e2 Omega/(e1 - e2)`,
    /// `alpha2 = Omega/(e1 - e2)`,
    /// `Lambda = (lambda + e2 Delta - e2^2 Omega/(e1 - e2))/(e1 - e2)`.
    Ellipsoidal,
    /// Couplings unchanged; `Lambda = (lambda + e2 sum_s b_s)/(e1 - e2)`.
    Dtv { b_sum: ParamRat },
}

/// Converts `lambda(nu)` into `Lambda(mu)` with `nu = (e1 - e2)^(1/2) mu`,
/// expanding every lattice constant in `k^2` to `O(k^(2 k_order))`.
///
/// The result is a series in `1/mu` whose coefficients are polynomials in
/// `k` (even powers below `k^(2 k_order)`) and the couplings.
pub fn weier_to_jacobi_eigenvalue(
    series: &AsymSeries,
    map: &JacobiParamMap,
    k_order: i32,
) -> Result<AsymSeries> {
    use crate::numerics::kseries::{k2_param, k_expansion_constants};
    use crate::series::{substitute_series, SmallParam};

    let kc = k_expansion_constants(k_order)?;
    let d = e(1).sub(&e(2));
    let delta = ParamRat::sym(sym::delta());
    let omega = ParamRat::sym(sym::omega());
    let (bindings, shift) = match map {
        JacobiParamMap::Ellipsoidal => {
            let a1 = delta.sub(&ParamRat::int(2).mul(&e(2)).mul(&omega).div(&d)?);
            let a2 = omega.div(&d)?;
            let shift = e(2).mul(&delta).sub(&e(2).mul(&e(2)).mul(&omega).div(&d)?);
            let mut b = BTreeMap::new();
            b.insert(sym::alpha1(), a1);
            b.insert(sym::alpha2(), a2);
            (b, shift)
        }
        JacobiParamMap::Dtv { b_sum } => (BTreeMap::new(), e(2).mul(b_sum)),
    };
    let mut lattice = BTreeMap::new();
    lattice.insert(sym::e1(), kc.e1.clone());
    lattice.insert(sym::e2(), kc.e2.clone());
    lattice.insert(sym::e3(), kc.e3.clone());
    lattice.insert(sym::g2(), kc.g2.clone());
    lattice.insert(sym::g3(), kc.g3.clone());
    lattice.insert(sym::zeta1(), kc.zeta1.clone());
    let k = ParamRat::sym(sym::k());

    if series.coeff(-2) != ParamRat::int(-1)
        || series.terms().iter().any(|(e, _)| *e < -2 || e % 2 != 0)
    {
        return Err(Error::MalformedSeries(
            "expected -nu^2 + sum lambda_l nu^(-2l)".into(),
        ));
    }
    // -nu^2/(e1 - e2) = -mu^2 exactly.
    let lo = -2;
    let hi = series.order();
    let mut dense = vec![ParamRat::zero(); (hi - lo).max(0) as usize];
    dense[0] = ParamRat::int(-1);
    for l in 0..(hi + 1) / 2 {
        let mut x = series.coeff(2 * l).substitute(&bindings)?;
        if l == 0 {
            x = x.add(&shift);
        }
        let x = x.div(&d.pow(l + 1)?)?;
        let in_k = substitute_series(&x, &lattice, &k2_param(), k_order)?;
        let mut poly = ParamRat::zero();
        for (j, cj) in in_k.terms() {
            poly = poly.add(&cj.mul(&k.pow(2 * j)?));
        }
        dense[(2 * l - lo) as usize] = poly;
    }
    Ok(AsymSeries::new(SmallParam::new("mu", -1, 1), lo, dense, hi))
}
