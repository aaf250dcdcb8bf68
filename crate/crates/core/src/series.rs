//! Truncated asymptotic series in one small parameter with exact
//! coefficients, and the reversions that turn Floquet-exponent series into
//! eigenvalue series.

use std::fmt;

use num_traits::Zero;

use crate::coeffring::{int, ParamRat, Rational, Symbol};
use crate::error::{Error, Result};

/// Order used for series that are known exactly.
pub const EXACT: i32 = i32::MAX / 8;

/// The expansion variable `x = base^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallParam {
    pub base: String,
    pub power: Rational,
}

impl SmallParam {
    pub fn new(base: &str, num: i64, den: i64) -> SmallParam {
        SmallParam {
            base: base.to_string(),
            power: crate::coeffring::rat(num, den),
        }
    }

    /// Exponent of `base` corresponding to `x^e`.
    pub fn base_exponent(&self, e: i32) -> Rational {
        &self.power * int(e as i64)
    }
}

/// `Σ_{e=start}^{order-1} c_e x^e + O(x^order)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymSeries {
    param: SmallParam,
    start: i32,
    coeffs: Vec<ParamRat>,
    order: i32,
}

impl AsymSeries {
    pub fn new(param: SmallParam, start: i32, coeffs: Vec<ParamRat>, order: i32) -> AsymSeries {
        let mut s = AsymSeries {
            param,
            start,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn zero(param: SmallParam, order: i32) -> AsymSeries {
        AsymSeries::new(param, 0, Vec::new(), order)
    }

    pub fn constant(param: SmallParam, c: ParamRat, order: i32) -> AsymSeries {
        AsymSeries::new(param, 0, vec![c], order)
    }

    /// `c x^e`, exact.
    pub fn monomial(param: SmallParam, e: i32, c: ParamRat) -> AsymSeries {
        AsymSeries::new(param, e, vec![c], EXACT)
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.start).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.start = self.start.min(self.order);
        }
    }

    pub fn param(&self) -> &SmallParam {
        &self.param
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT / 2
    }

    /// Exponent of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    pub fn coeff(&self, e: i32) -> ParamRat {
        if e < self.start {
            return ParamRat::zero();
        }
        self.coeffs
            .get((e - self.start) as usize)
            .cloned()
            .unwrap_or_else(ParamRat::zero)
    }

    /// Known `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> Vec<(i32, ParamRat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.start + i as i32, c.clone()))
            .collect()
    }

    fn check_param(&self, other: &AsymSeries) -> Result<()> {
        if self.param != other.param {
            return Err(Error::IncompatibleSeries(format!(
                "{}^{} vs {}^{}",
                self.param.base, self.param.power, other.param.base, other.param.power
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AsymSeries) -> Result<AsymSeries> {
        self.check_param(other)?;
        let order = self.order.min(other.order);
        let lo = self.start.min(other.start);
        let hi = (self.start + self.coeffs.len() as i32)
            .max(other.start + other.coeffs.len() as i32)
            .min(order);
        let coeffs = (lo..hi)
            .map(|e| self.coeff(e).add(&other.coeff(e)))
            .collect();
        Ok(AsymSeries::new(self.param.clone(), lo, coeffs, order))
    }

    pub fn neg(&self) -> AsymSeries {
        AsymSeries {
            param: self.param.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &AsymSeries) -> Result<AsymSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ParamRat) -> AsymSeries {
        AsymSeries::new(
            self.param.clone(),
            self.start,
            self.coeffs.iter().map(|d| d.mul(c)).collect(),
            self.order,
        )
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: i32) -> AsymSeries {
        let order = if self.is_exact() {
            self.order
        } else {
            self.order + e
        };
        AsymSeries::new(
            self.param.clone(),
            self.start + e,
            self.coeffs.clone(),
            order,
        )
    }

    /// Valuation used for truncation bookkeeping: the first known nonzero
    /// exponent, or the order if nothing is known.
    fn effective_start(&self) -> i32 {
        self.valuation().unwrap_or(self.order)
    }

    pub fn mul(&self, other: &AsymSeries) -> Result<AsymSeries> {
        self.check_param(other)?;
        let va = self.effective_start();
        let vb = other.effective_start();
        let oa = if self.is_exact() {
            EXACT
        } else {
            self.order + vb
        };
        let ob = if other.is_exact() {
            EXACT
        } else {
            other.order + va
        };
        let order = oa.min(ob);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(AsymSeries::zero(self.param.clone(), order));
        }
        let start = self.start + other.start;
        let len = ((order - start).max(0) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![ParamRat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(AsymSeries::new(self.param.clone(), start, coeffs, order))
    }

    pub fn truncate(&self, order: i32) -> AsymSeries {
        AsymSeries::new(
            self.param.clone(),
            self.start,
            self.coeffs.clone(),
            order.min(self.order),
        )
    }

    /// Multiplicative inverse; the leading coefficient must be invertible.
    pub fn inverse(&self) -> Result<AsymSeries> {
        let v = self.valuation().ok_or_else(|| {
            Error::MalformedSeries("inverse of a series with no known terms".into())
        })?;
        let lead_inv = self.coeffs[0].inv()?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(AsymSeries::monomial(self.param.clone(), -v, lead_inv));
        }
        let rel = if self.is_exact() {
            EXACT
        } else {
            self.order - v
        };
        // Solve (1 + r)^{-1} term by term where self = c x^v (1 + r).
        let n = if rel >= EXACT / 2 {
            return Err(Error::MalformedSeries(
                "inverse of an exact series needs an explicit truncation".into(),
            ));
        } else {
            rel as usize
        };
        let r: Vec<ParamRat> = self.coeffs.iter().map(|c| c.mul(&lead_inv)).collect();
        let mut inv = vec![ParamRat::zero(); n];
        if n > 0 {
            inv[0] = ParamRat::one();
        }
        for m in 1..n {
            let mut acc = ParamRat::zero();
            for j in 1..=m.min(r.len().saturating_sub(1)) {
                acc = acc.add(&r[j].mul(&inv[m - j]));
            }
            inv[m] = acc.neg();
        }
        let coeffs = inv.into_iter().map(|c| c.mul(&lead_inv)).collect();
        Ok(AsymSeries::new(self.param.clone(), -v, coeffs, rel - v))
    }

    pub fn div(&self, other: &AsymSeries) -> Result<AsymSeries> {
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, n: i32) -> Result<AsymSeries> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = AsymSeries::monomial(self.param.clone(), 0, ParamRat::one());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self^r` for rational `r`, where the leading coefficient is 1 and
    /// `r` times the valuation is an integer. Uses the binomial series.
    pub fn powr(&self, r: &Rational) -> Result<AsymSeries> {
        let v = self.valuation().ok_or_else(|| {
            Error::MalformedSeries("power of a series with no known terms".into())
        })?;
        if !self.coeffs[0].is_one() {
            return Err(Error::MalformedSeries(
                "rational power needs leading coefficient 1".into(),
            ));
        }
        let vr = r * int(v as i64);
        if !vr.is_integer() {
            return Err(Error::MalformedSeries(
                "rational power gives a fractional exponent".into(),
            ));
        }
        let vr = vr
            .to_integer()
            .try_into()
            .map_err(|_| Error::MalformedSeries("exponent overflow".into()))?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(AsymSeries::monomial(
                self.param.clone(),
                vr,
                ParamRat::one(),
            ));
        }
        if self.is_exact() {
            return Err(Error::MalformedSeries(
                "rational power of an exact series needs an explicit truncation".into(),
            ));
        }
        let rel = self.order - v;
        // u = self / x^v - 1, valuation ≥ 1, known to O(x^rel).
        let one = AsymSeries::monomial(self.param.clone(), 0, ParamRat::one());
        let u = self.shift(-v).sub(&one)?;
        let mut acc = one.truncate(rel);
        let mut term = one.truncate(rel);
        let mut binom = Rational::from_integer(1.into());
        for n in 1..rel.max(1) {
            binom = binom * (r - int(n as i64 - 1)) / int(n as i64);
            term = term.mul(&u)?.truncate(rel);
            acc = acc.add(&term.scale(&ParamRat::from_rational(binom.clone())))?;
        }
        Ok(acc.truncate(rel).shift(vr))
    }

    /// Term-wise derivative with respect to the small parameter.
    pub fn derivative(&self) -> AsymSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&int((self.start + i as i32) as i64)))
            .collect();
        let order = if self.is_exact() {
            EXACT
        } else {
            self.order - 1
        };
        AsymSeries::new(self.param.clone(), self.start - 1, coeffs, order)
    }

    /// `self(g)`, where `g` is a series in another parameter with positive
    /// valuation.
    pub fn compose(&self, g: &AsymSeries) -> Result<AsymSeries> {
        let vg = g
            .valuation()
            .ok_or_else(|| Error::MalformedSeries("composition with an unknown series".into()))?;
        if vg <= 0 {
            return Err(Error::MalformedSeries(format!(
                "inner series must vanish at leading order (valuation {vg})"
            )));
        }
        let order = if self.is_exact() {
            EXACT
        } else {
            self.order.saturating_mul(vg)
        };
        if self.coeffs.is_empty() {
            return Ok(AsymSeries::zero(g.param.clone(), order));
        }
        let s = self.start;
        let g = if g.is_exact() && order < EXACT / 2 {
            g.truncate(order - (s - 1) * vg)
        } else {
            g.clone()
        };
        let mut power = g.pow(s)?;
        let mut acc = AsymSeries::zero(g.param.clone(), order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if (s + i as i32).saturating_mul(vg) >= order {
                break;
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale(c))?;
            }
            power = power.mul(&g)?;
        }
        Ok(acc.truncate(order))
    }

    /// Evaluates the known part at a numeric value of the small parameter.
    pub fn eval_complex(
        &self,
        x: num_complex::Complex64,
        values: &std::collections::BTreeMap<Symbol, num_complex::Complex64>,
    ) -> Result<num_complex::Complex64> {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            acc += c.eval_complex(values)? * x.powi(e);
        }
        Ok(acc)
    }

    /// Substitutes symbols in every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamRat) -> Result<ParamRat>) -> Result<AsymSeries> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(AsymSeries::new(
            self.param.clone(),
            self.start,
            coeffs,
            self.order,
        ))
    }

    pub fn with_param(&self, param: SmallParam) -> AsymSeries {
        AsymSeries {
            param,
            ..self.clone()
        }
    }

    /// Structured rendering: `coeff[<exponent of base>]<TAB><coefficient>`.
    pub fn structured_lines(&self) -> Vec<String> {
        let mut terms = self.terms();
        // Decreasing exponent of the base variable, so the leading growth
        // comes first.
        terms.sort_by(|a, b| {
            self.param
                .base_exponent(b.0)
                .cmp(&self.param.base_exponent(a.0))
        });
        terms
            .into_iter()
            .map(|(e, c)| format!("coeff[{}]\t{}", self.param.base_exponent(e), c))
            .collect()
    }
}

impl fmt::Display for AsymSeries {
    /// Human-readable rendering, one term per line in decreasing powers of
    /// the base variable, followed by the truncation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        terms.sort_by(|a, b| {
            self.param
                .base_exponent(b.0)
                .cmp(&self.param.base_exponent(a.0))
        });
        if terms.is_empty() {
            writeln!(f, "  0")?;
        }
        for (e, c) in terms {
            let p = self.param.base_exponent(e);
            if p.is_zero() {
                writeln!(f, "  ({c})")?;
            } else {
                writeln!(f, "  ({c}) * {}^{}", self.param.base, p)?;
            }
        }
        if !self.is_exact() {
            write!(
                f,
                "  + O({}^{})",
                self.param.base,
                self.param.base_exponent(self.order)
            )?;
        }
        Ok(())
    }
}

/// Compositional inverse of `f(x) = a_1 x + a_2 x^2 + …` by Newton iteration
/// on formal series, accurate to `O(y^order)`. The result is a series in
/// `param`.
pub fn revert(f: &AsymSeries, param: SmallParam, order: i32) -> Result<AsymSeries> {
    if f.valuation() != Some(1) {
        return Err(Error::MalformedSeries(
            "reversion needs a series starting at the first power".into(),
        ));
    }
    if !f.is_exact() && f.order < order {
        return Err(Error::MalformedSeries(format!(
            "series known to O(x^{}) cannot be reverted to O(y^{order})",
            f.order
        )));
    }
    let a1_inv = f.coeff(1).inv()?;
    let y = AsymSeries::monomial(param.clone(), 1, ParamRat::one());
    let fp = f.derivative();
    let mut g = y.scale(&a1_inv).truncate(2);
    let mut prec = 2;
    while prec < order {
        prec = (2 * prec).min(order);
        let g_ext = AsymSeries::new(param.clone(), g.start, g.coeffs.clone(), prec);
        let residual = f.compose(&g_ext)?.sub(&y)?.truncate(prec);
        let slope = fp.compose(&g_ext)?;
        let step = residual.div(&slope)?.truncate(prec);
        g = g_ext.sub(&step)?.truncate(prec);
    }
    Ok(g.truncate(order))
}

/// Reverts `iν = √λ + Σ_{ℓ=1}^{N} ε_ℓ λ^{-(2ℓ-1)/2}` into
/// `λ = -ν² + Σ_{l=0}^{N-1} λ_l ν^{-2l} + O(ν^{-2N})`.
///
/// The result is a series in `x = 1/ν`.
pub fn revert_large_energy(eps: &[ParamRat]) -> Result<AsymSeries> {
    let n = eps.len() as i32;
    let x_param = SmallParam::new("lambda", -1, 2);
    // X = 1/(iν) = x / (1 + Σ ε_ℓ x^{2ℓ}).
    let mut den = vec![ParamRat::one()];
    for (l, e) in eps.iter().enumerate() {
        den.resize(2 * (l + 1) + 1, ParamRat::zero());
        den[2 * (l + 1)] = e.clone();
    }
    let order = 2 * n + 3;
    let den = AsymSeries::new(x_param.clone(), 0, den, 2 * n + 2);
    let big_x = den.inverse()?.shift(1).truncate(order);
    let y_param = SmallParam::new("inu", -1, 1);
    let g = revert(&big_x, y_param.clone(), order)?;
    let lam = g.pow(-2)?; // Σ c_j X^{2j-2}, known to O(X^{2N})
    let nu_param = SmallParam::new("nu", -1, 1);
    let mut coeffs = Vec::new();
    for j in 0..=n {
        let c = lam.coeff(2 * j - 2);
        let sign = if (j - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        coeffs.push(c.scale(&int(sign)));
        coeffs.push(ParamRat::zero());
    }
    coeffs.pop();
    Ok(AsymSeries::new(nu_param, -2, coeffs, 2 * n))
}

/// The forward relation `iν(√λ)` as a series in `x = λ^{-1/2}`, for checking
/// reversions.
pub fn large_energy_forward(eps: &[ParamRat]) -> AsymSeries {
    let x_param = SmallParam::new("lambda", -1, 2);
    let mut coeffs = vec![ParamRat::one()];
    for e in eps {
        coeffs.push(ParamRat::zero());
        coeffs.push(e.clone());
    }
    AsymSeries::new(x_param, -1, coeffs, 2 * eps.len() as i32 + 1)
}

/// Solves `μ = Σ_n t^{2n-1} P_n(L)` for `L`, where each `P_n` is a
/// polynomial of degree at most `n` in `var` and `t` is the small
/// parameter. With `L = Λ t`, `μ = G(Λ t, t)` has a linear leading part
/// `p_{11} L`; the solution is returned as `Λ = Σ_j L_j t^{j-1}` with each
/// `L_j` polynomial in the symbol `target`, accurate to `O(t^{order})`.
pub fn revert_small_energy(
    mu: &AsymSeries,
    var: Symbol,
    target: Symbol,
    order: i32,
) -> Result<AsymSeries> {
    // Expand G(L, t) = Σ_{n,d} p_{n,d} L^d t^{2n-1-d}.
    let mut g_terms: Vec<(i32, u32, ParamRat)> = Vec::new();
    for (e, c) in mu.terms() {
        if c.den().contains(var) {
            return Err(Error::MalformedSeries(
                "coefficient is not polynomial in the unknown".into(),
            ));
        }
        for (d, pd) in c.coeffs_in(var)? {
            if d < 0 {
                return Err(Error::MalformedSeries(
                    "negative power of the unknown".into(),
                ));
            }
            let texp = e - d;
            if 2 * d > e + 1 {
                return Err(Error::MalformedSeries(format!(
                    "degree {d} in the unknown is too high at t^{e}"
                )));
            }
            if texp < 0 {
                return Err(Error::MalformedSeries(format!(
                    "term L^{d} t^{texp} diverges as t → 0"
                )));
            }
            g_terms.push((texp, d as u32, pd));
        }
    }
    let lin: Vec<&(i32, u32, ParamRat)> = g_terms.iter().filter(|t| t.0 == 0).collect();
    let p11 = match lin.as_slice() {
        [(_, 1, p)] => p.clone(),
        _ => {
            return Err(Error::MalformedSeries(
                "the leading part must be linear in the scaled unknown".into(),
            ))
        }
    };
    let needed = order + 1; // L_0 … L_order gives Λ to O(t^order)
    if !mu.is_exact() {
        // Missing terms t^e Λ^d with d ≤ (e+1)/2 enter G at t^{(e-1)/2} or later.
        let known = (mu.order() - 1 + 1) / 2;
        if known < needed {
            return Err(Error::MalformedSeries(format!(
                "input known to O(t^{}) is too short for O(t^{order})",
                mu.order()
            )));
        }
    }
    let p11_inv = p11.inv()?;
    let t_param = mu.param().clone();
    let target_val = ParamRat::sym(target);
    let mut l_coeffs: Vec<ParamRat> = vec![target_val.mul(&p11_inv)];
    for j in 1..needed {
        let l = AsymSeries::new(t_param.clone(), 0, l_coeffs.clone(), j + 1);
        let mut acc = ParamRat::zero();
        for (texp, d, p) in &g_terms {
            if *texp > j || (*texp == 0 && *d == 1) {
                continue;
            }
            let ld = l.pow(*d as i32)?;
            acc = acc.add(&ld.coeff(j - texp).mul(p));
        }
        l_coeffs.push(acc.mul(&p11_inv).neg());
    }
    Ok(AsymSeries::new(t_param, -1, l_coeffs, order))
}

/// Replaces the symbols in `map` by series (all in `param`, each known to at
/// least `O(x^order)` and with nonnegative valuation) and expands `p` to
/// `O(x^order)`. Other symbols stay in the coefficients.
pub fn substitute_series(
    p: &ParamRat,
    map: &std::collections::BTreeMap<Symbol, AsymSeries>,
    param: &SmallParam,
    order: i32,
) -> Result<AsymSeries> {
    let mut powers: std::collections::BTreeMap<(Symbol, i32), AsymSeries> = Default::default();
    let mut expand = |poly: &crate::coeffring::Poly| -> Result<AsymSeries> {
        let mut acc = AsymSeries::zero(param.clone(), order);
        for (mono, c) in poly.terms() {
            let mut term = AsymSeries::constant(param.clone(), ParamRat::one(), order);
            let mut rest = Vec::new();
            for &(s, e) in mono.iter() {
                match map.get(&s) {
                    Some(series) => {
                        if e < 0 {
                            return Err(Error::MalformedSeries(format!(
                                "negative power of substituted symbol {s}"
                            )));
                        }
                        let key = (s, e);
                        if let std::collections::btree_map::Entry::Vacant(slot) = powers.entry(key)
                        {
                            slot.insert(series.truncate(order).pow(e)?.truncate(order));
                        }
                        term = term.mul(&powers[&key])?.truncate(order);
                    }
                    None => rest.push((s, e)),
                }
            }
            let coeff = ParamRat::from_poly(crate::coeffring::Poly::monomial(
                crate::coeffring::Monomial::from_pairs(rest),
                c.clone(),
            ));
            acc = acc.add(&term.scale(&coeff))?;
        }
        Ok(acc)
    };
    let num = expand(p.num())?;
    if p.den().is_one() {
        return Ok(num.truncate(order));
    }
    let den = expand(p.den())?;
    Ok(num.div(&den)?.truncate(order))
}
