//! Jacobi-form densities and the two small-energy expansions of the
//! ellipsoidal equation `ψ'' = (Δk²sn²z + Ωk⁴sn⁴z + Λ) ψ`.
//!
//! Around `sn z = 0` the Riccati solution is expanded as
//! `v = Σ_{ℓ≥-1} v_ℓ Δ^{-ℓ/2}` in the variable `w = sn z`; around `sn² z = 1`
//! it is `v = i Σ v̂_ℓ Δ^{-ℓ/2}` in `w = cn z`, with `Λ = -Δk² - Ωk⁴ + Λ̃`.
//! Every expression is `a(w) + P b(w)` with Laurent polynomials `a`, `b` and
//! `P = w'` up to sign (`cn·dn` or `sn·dn`), so `P² = R(w)` closes the ring.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::coeffring::{int, sym, ParamRat, Symbol};
use crate::error::{Error, Result};
use crate::series::{revert_small_energy, AsymSeries, SmallParam};

type Laurent = BTreeMap<i32, ParamRat>;

/// Which stationary point the expansion is built around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JacobiMode {
    /// Variable `sn z`, prefactor `cn z dn z`, period path `2iK'`.
    Sn,
    /// Variable `cn z`, prefactor `sn z dn z`, period path `2K + 2iK'`.
    Cn,
}

impl JacobiMode {
    fn names(self) -> (&'static str, &'static str) {
        match self {
            JacobiMode::Sn => ("sn", "cn*dn"),
            JacobiMode::Cn => ("cn", "sn*dn"),
        }
    }

    /// `w' = sign · P`.
    fn sign(self) -> i64 {
        match self {
            JacobiMode::Sn => 1,
            JacobiMode::Cn => -1,
        }
    }

    /// Symbol of the perturbative energy.
    pub fn energy_symbol(self) -> Symbol {
        match self {
            JacobiMode::Sn => sym::lambda(),
            JacobiMode::Cn => sym::lambda_t(),
        }
    }
}

/// `a(w) + P b(w)` over `ParamRat`, for a fixed mode and modulus `k`.
#[derive(Clone, PartialEq)]
pub struct JacobiExpr {
    mode: JacobiMode,
    k: ParamRat,
    a: Laurent,
    b: Laurent,
}

fn add_into(acc: &mut Laurent, e: i32, c: ParamRat) {
    if c.is_zero() {
        return;
    }
    let sum = match acc.get(&e) {
        Some(old) => old.add(&c),
        None => c,
    };
    if sum.is_zero() {
        acc.remove(&e);
    } else {
        acc.insert(e, sum);
    }
}

fn lmul(x: &Laurent, y: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ex, cx) in x {
        for (ey, cy) in y {
            add_into(&mut out, ex + ey, cx.mul(cy));
        }
    }
    out
}

fn ladd(x: &Laurent, y: &Laurent) -> Laurent {
    let mut out = x.clone();
    for (e, c) in y {
        add_into(&mut out, *e, c.clone());
    }
    out
}

fn ldiff(x: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (e, c) in x {
        if *e != 0 {
            add_into(&mut out, e - 1, c.scale(&int(*e as i64)));
        }
    }
    out
}

fn lscale(x: &Laurent, c: &ParamRat) -> Laurent {
    let mut out = Laurent::new();
    for (e, v) in x {
        add_into(&mut out, *e, v.mul(c));
    }
    out
}

impl JacobiExpr {
    pub fn zero(mode: JacobiMode, k: &ParamRat) -> JacobiExpr {
        JacobiExpr {
            mode,
            k: k.clone(),
            a: Laurent::new(),
            b: Laurent::new(),
        }
    }

    pub fn from_parts(mode: JacobiMode, k: &ParamRat, a: Laurent, b: Laurent) -> JacobiExpr {
        let clean = |l: Laurent| l.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        JacobiExpr {
            mode,
            k: k.clone(),
            a: clean(a),
            b: clean(b),
        }
    }

    pub fn constant(mode: JacobiMode, k: &ParamRat, c: ParamRat) -> JacobiExpr {
        Self::from_parts(mode, k, Laurent::from([(0, c)]), Laurent::new())
    }

    /// `c · w^e`.
    pub fn var_power(mode: JacobiMode, k: &ParamRat, e: i32, c: ParamRat) -> JacobiExpr {
        Self::from_parts(mode, k, Laurent::from([(e, c)]), Laurent::new())
    }

    /// The prefactor `P` itself.
    pub fn prefactor(mode: JacobiMode, k: &ParamRat) -> JacobiExpr {
        Self::from_parts(
            mode,
            k,
            Laurent::new(),
            Laurent::from([(0, ParamRat::one())]),
        )
    }

    pub fn mode(&self) -> JacobiMode {
        self.mode
    }

    pub fn a_part(&self) -> &Laurent {
        &self.a
    }

    pub fn b_part(&self) -> &Laurent {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    /// `R(w) = P²`.
    fn radicand(&self) -> Laurent {
        let k2 = self.k.mul(&self.k);
        let one = ParamRat::one();
        match self.mode {
            // (1 - w²)(1 - k²w²)
            JacobiMode::Sn => Laurent::from([(0, one.clone()), (2, one.add(&k2).neg()), (4, k2)]),
            // (1 - w²)(k'² + k²w²)
            JacobiMode::Cn => Laurent::from([
                (0, one.sub(&k2)),
                (2, k2.scale(&int(2)).sub(&one)),
                (4, k2.neg()),
            ]),
        }
    }

    fn same_ring(&self, other: &JacobiExpr) {
        assert!(
            self.mode == other.mode && self.k == other.k,
            "mixing Jacobi expressions of different rings"
        );
    }

    pub fn add(&self, other: &JacobiExpr) -> JacobiExpr {
        self.same_ring(other);
        JacobiExpr {
            mode: self.mode,
            k: self.k.clone(),
            a: ladd(&self.a, &other.a),
            b: ladd(&self.b, &other.b),
        }
    }

    pub fn neg(&self) -> JacobiExpr {
        self.scale(&ParamRat::int(-1))
    }

    pub fn sub(&self, other: &JacobiExpr) -> JacobiExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ParamRat) -> JacobiExpr {
        JacobiExpr {
            mode: self.mode,
            k: self.k.clone(),
            a: lscale(&self.a, c),
            b: lscale(&self.b, c),
        }
    }

    /// Multiplies by `w^e`.
    pub fn shift(&self, e: i32) -> JacobiExpr {
        let sh = |l: &Laurent| l.iter().map(|(p, c)| (p + e, c.clone())).collect();
        JacobiExpr {
            mode: self.mode,
            k: self.k.clone(),
            a: sh(&self.a),
            b: sh(&self.b),
        }
    }

    pub fn mul(&self, other: &JacobiExpr) -> JacobiExpr {
        self.same_ring(other);
        let bb = lmul(&lmul(&self.b, &other.b), &self.radicand());
        let a = ladd(&lmul(&self.a, &other.a), &bb);
        let b = ladd(&lmul(&self.a, &other.b), &lmul(&self.b, &other.a));
        JacobiExpr {
            mode: self.mode,
            k: self.k.clone(),
            a,
            b,
        }
    }

    /// `∂_z`, using `w' = σP` and `P' = σR'(w)/2`.
    pub fn derivative(&self) -> JacobiExpr {
        let r = self.radicand();
        let half_dr = lscale(&ldiff(&r), &ParamRat::rat(1, 2));
        let sigma = ParamRat::int(self.mode.sign());
        let a = lscale(
            &ladd(&lmul(&half_dr, &self.b), &lmul(&r, &ldiff(&self.b))),
            &sigma,
        );
        let b = lscale(&ldiff(&self.a), &sigma);
        JacobiExpr {
            mode: self.mode,
            k: self.k.clone(),
            a,
            b,
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamRat) -> Result<ParamRat>) -> Result<JacobiExpr> {
        let m = |l: &Laurent| -> Result<Laurent> {
            let mut out = Laurent::new();
            for (e, c) in l {
                add_into(&mut out, *e, f(c)?);
            }
            Ok(out)
        };
        Ok(JacobiExpr {
            mode: self.mode,
            k: self.k.clone(),
            a: m(&self.a)?,
            b: m(&self.b)?,
        })
    }

    /// Numeric value from the values of `w` and `P` at the point.
    pub fn eval_complex(
        &self,
        w: Complex64,
        p: Complex64,
        values: &BTreeMap<Symbol, Complex64>,
    ) -> Result<Complex64> {
        let part = |l: &Laurent| -> Result<Complex64> {
            let mut acc = Complex64::new(0.0, 0.0);
            for (e, c) in l {
                acc += c.eval_complex(values)? * w.powi(*e);
            }
            Ok(acc)
        };
        Ok(part(&self.a)? + p * part(&self.b)?)
    }
}

/// Exact `∂_z` in canonical form.
pub fn jacobi_derive(f: &JacobiExpr) -> JacobiExpr {
    f.derivative()
}

fn fmt_laurent(
    f: &mut fmt::Formatter<'_>,
    l: &Laurent,
    var: &str,
    suffix: &str,
    first: &mut bool,
) -> fmt::Result {
    for (e, c) in l.iter().rev() {
        let s = c.to_string();
        let multi = c.num().terms().len() > 1;
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) if !multi => ("-", rest.to_string()),
            _ => ("+", if multi { format!("({s})") } else { s.clone() }),
        };
        if *first {
            if sign == "-" {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        *first = false;
        f.write_str(&body)?;
        match e {
            0 => {}
            1 => write!(f, "*{var}")?,
            _ => write!(f, "*{var}^{e}")?,
        }
        f.write_str(suffix)?;
    }
    Ok(())
}

impl fmt::Display for JacobiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (var, pre) = self.mode.names();
        let mut first = true;
        fmt_laurent(f, &self.a, var, "", &mut first)?;
        fmt_laurent(f, &self.b, var, &format!("*{pre}"), &mut first)
    }
}

impl fmt::Debug for JacobiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JacobiExpr({self})")
    }
}

/// `Δk²sn²z + Ωk⁴sn⁴z` with `Δ` as the large parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipsoidalJacobi {
    pub omega: ParamRat,
    pub k: ParamRat,
}

impl EllipsoidalJacobi {
    /// `Ω` and `k` left symbolic.
    pub fn symbolic() -> EllipsoidalJacobi {
        EllipsoidalJacobi {
            omega: ParamRat::sym(sym::omega()),
            k: ParamRat::sym(sym::k()),
        }
    }
}

/// The expansion variable `t = Δ^{-1/2}`.
pub fn delta_param() -> SmallParam {
    SmallParam::new("Delta", -1, 2)
}

/// Densities `[v_{-1}, v_0, …, v_n]`. In cn mode these are the `v̂_ℓ` of
/// `v = i Σ v̂_ℓ Δ^{-ℓ/2}`.
pub fn small_energy_v(pot: &EllipsoidalJacobi, mode: JacobiMode, n: usize) -> Vec<JacobiExpr> {
    let k = &pot.k;
    let k4 = k.pow(4).expect("integer power");
    let energy = ParamRat::sym(mode.energy_symbol());
    let w = |e: i32, c: ParamRat| JacobiExpr::var_power(mode, k, e, c);
    // Order Δ^0 source and the factor η with v = η Σ v̂.
    let (rhs0, inv_eta, inv_eta2) = match mode {
        JacobiMode::Sn => (
            w(4, pot.omega.mul(&k4)).add(&JacobiExpr::constant(mode, k, energy)),
            ParamRat::one(),
            ParamRat::one(),
        ),
        JacobiMode::Cn => {
            // -Ωk⁴w²(2 - w²) + Λ̃
            let om = pot.omega.mul(&k4);
            let src = w(2, om.scale(&int(-2)))
                .add(&w(4, om))
                .add(&JacobiExpr::constant(mode, k, energy));
            (src, ParamRat::i().neg(), ParamRat::int(-1))
        }
    };
    let rhs0 = rhs0.scale(&inv_eta2);
    let inv_2k = k.scale(&int(2)).inv().expect("k is nonzero");

    let mut v = vec![w(1, k.clone())];
    // Order Δ^{-m/2}: η v̂_m' + η² (Σ_{i+j=m} v̂_i v̂_j + 2 v̂_{-1} v̂_{m+1}) = source.
    for m in -1..n as i32 {
        let vm = &v[(m + 1) as usize];
        let mut num = vm.derivative().scale(&inv_eta).neg();
        if m == 0 {
            num = num.add(&rhs0);
        }
        for i in 0..=m {
            let j = m - i;
            num = num.sub(&v[(i + 1) as usize].mul(&v[(j + 1) as usize]));
        }
        v.push(num.shift(-1).scale(&inv_2k));
    }
    v
}

/// Which closed path a period integral runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodPath {
    /// `I_m = ∫ sn^m z dz` over `z0 → z0 + 2iK'`, in units of `iπ`.
    I,
    /// `J_m = ∫ cn^m z dz` over `z0 → z0 + 2K + 2iK'`, in units of `-iπ/k'`.
    J,
}

/// `I_m / (iπ)` or `J_m / (-iπ/k')` for odd `m`, in terms of the symbol `k`.
pub fn period_integral(m: i32, path: PeriodPath) -> Result<ParamRat> {
    period_integral_at(m, path, &ParamRat::sym(sym::k()))
}

/// As [`period_integral`] at a given modulus.
pub fn period_integral_at(m: i32, path: PeriodPath, k: &ParamRat) -> Result<ParamRat> {
    if m % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "period integral of even power {m}"
        )));
    }
    if m > 0 {
        return Ok(ParamRat::zero());
    }
    let k2 = k.mul(k);
    let kp2 = ParamRat::one().sub(&k2);
    // Downward recursion with the single-valued boundary terms dropped:
    //   (m+1) I_m = (m+2)(1+k²) I_{m+2} - (m+3) k² I_{m+4}
    //   (m+1) k'² J_m = (m+2)(1-2k²) J_{m+2} + (m+3) k² J_{m+4}
    let (c2, c4, lead) = match path {
        PeriodPath::I => (ParamRat::one().add(&k2), k2.neg(), ParamRat::one()),
        PeriodPath::J => (ParamRat::one().sub(&k2.scale(&int(2))), k2.clone(), kp2),
    };
    let (mut above, mut above2) = (ParamRat::one(), ParamRat::zero()); // values at m+2, m+4
    let mut cur = -1;
    while cur > m {
        cur -= 2;
        let mm = cur as i64;
        let rhs = c2
            .scale(&int(mm + 2))
            .mul(&above)
            .add(&c4.scale(&int(mm + 3)).mul(&above2));
        let next = rhs.div(&lead.scale(&int(mm + 1)))?;
        above2 = above;
        above = next;
    }
    Ok(above)
}

fn path_for(mode: JacobiMode) -> PeriodPath {
    match mode {
        JacobiMode::Sn => PeriodPath::I,
        JacobiMode::Cn => PeriodPath::J,
    }
}

/// Order to which `μ` is known when densities run through `v_n`.
fn mu_order(n: usize) -> i32 {
    let n = n as i32;
    if n % 2 == 1 {
        n + 2
    } else {
        n + 1
    }
}

/// `μ` as a series in `Δ^{-1/2}` with coefficients polynomial in the
/// perturbative energy. Both modes reduce to `μ = i Σ_ℓ Δ^{-ℓ/2} Σ_m a_{ℓm} c_m`
/// where `a_{ℓm}` are the coefficients of `w^m` in the odd densities and
/// `c_m` the normalized period integrals.
pub fn small_energy_mu(pot: &EllipsoidalJacobi, mode: JacobiMode, n: usize) -> Result<AsymSeries> {
    if n < 1 {
        return Err(Error::InvalidInput(
            "small-energy expansion needs N >= 1".into(),
        ));
    }
    let v = small_energy_v(pot, mode, n);
    let path = path_for(mode);
    let mut integrals: BTreeMap<i32, ParamRat> = BTreeMap::new();
    let order = mu_order(n);
    let mut coeffs = vec![ParamRat::zero(); order as usize];
    for (idx, vl) in v.iter().enumerate() {
        let l = idx as i32 - 1;
        if l < 0 {
            continue;
        }
        if l % 2 == 0 {
            // Even densities are exact derivatives of even functions of w.
            if !vl.a_part().is_empty() || vl.b_part().keys().any(|e| e % 2 == 0) {
                return Err(Error::IrreducibleTerm(format!(
                    "v_{l} is not an exact derivative: {vl}"
                )));
            }
            continue;
        }
        if !vl.b_part().is_empty() || vl.a_part().keys().any(|e| e % 2 == 0) {
            return Err(Error::IrreducibleTerm(format!(
                "v_{l} has a non-integrable part: {vl}"
            )));
        }
        let mut acc = ParamRat::zero();
        for (m, c) in vl.a_part() {
            if !integrals.contains_key(m) {
                integrals.insert(*m, period_integral_at(*m, path, &pot.k)?);
            }
            acc = acc.add(&c.mul(&integrals[m]));
        }
        coeffs[l as usize] = acc.mul(&ParamRat::i());
    }
    Ok(AsymSeries::new(delta_param(), 0, coeffs, order))
}

/// `Λ(μ)` as a series in `Δ^{-1/2}`, reverted from [`small_energy_mu`].
/// In cn mode the shift `-Δk² - Ωk⁴` is included.
pub fn small_energy_eigenvalue(
    pot: &EllipsoidalJacobi,
    mode: JacobiMode,
    n: usize,
) -> Result<AsymSeries> {
    let mu = small_energy_mu(pot, mode, n)?;
    let order = mu.order() / 2 - 1;
    let lam = revert_small_energy(&mu, mode.energy_symbol(), sym::mu(), order)?;
    match mode {
        JacobiMode::Sn => Ok(lam),
        JacobiMode::Cn => {
            let k2 = pot.k.mul(&pot.k);
            let shift = AsymSeries::new(
                delta_param(),
                -2,
                vec![
                    k2.neg(),
                    ParamRat::zero(),
                    pot.omega.mul(&k2).mul(&k2).neg(),
                ],
                order,
            );
            lam.add(&shift)
        }
    }
}
