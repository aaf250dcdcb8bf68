use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::gcd;
use super::poly::{int, Monomial, Poly, Rational};
use super::symbol::{sym, Symbol};
use crate::error::{Error, Result};

/// Exact rational function in parameter symbols, kept in canonical form.
///
/// Canonical form:
/// * `I` (with `I^2 = -1`) and `kp` (with `kp^2 = 1 - k^2`) appear at most
///   linearly in each monomial and never in the denominator;
/// * `k` may carry negative exponents, but only in the numerator; the
///   denominator contains `k` only through factors that are not powers of `k`;
/// * numerator and denominator are coprime and the denominator is monic in
///   graded lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamRat {
    num: Poly,
    den: Poly,
}

impl ParamRat {
    pub fn zero() -> ParamRat {
        ParamRat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> ParamRat {
        ParamRat::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> ParamRat {
        ParamRat {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> ParamRat {
        ParamRat::from_rational(int(n))
    }

    pub fn rat(n: i64, d: i64) -> ParamRat {
        ParamRat::from_rational(super::poly::rat(n, d))
    }

    pub fn sym(s: Symbol) -> ParamRat {
        ParamRat::from_poly(Poly::var(s))
    }

    pub fn i() -> ParamRat {
        ParamRat::sym(sym::i())
    }

    pub fn from_poly(p: Poly) -> ParamRat {
        ParamRat::new(p, Poly::one()).expect("unit denominator")
    }

    /// Builds `num/den` and canonicalizes.
    pub fn new(num: Poly, den: Poly) -> Result<ParamRat> {
        canonicalize(num, den)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn add(&self, other: &ParamRat) -> ParamRat {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return canonicalize(self.num.add(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        canonicalize(num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> ParamRat {
        ParamRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &ParamRat) -> ParamRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ParamRat) -> ParamRat {
        if self.is_zero() || other.is_zero() {
            return ParamRat::zero();
        }
        canonicalize(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn scale(&self, r: &Rational) -> ParamRat {
        if r.is_zero() {
            return ParamRat::zero();
        }
        ParamRat {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<ParamRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        canonicalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &ParamRat) -> Result<ParamRat> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        canonicalize(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn pow(&self, n: i32) -> Result<ParamRat> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        canonicalize(self.num.pow(n as u32), self.den.pow(n as u32))
    }

    /// Simultaneous substitution of symbols by values.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, ParamRat>) -> Result<ParamRat> {
        let n = eval_poly(&self.num, bindings)?;
        let d = eval_poly(&self.den, bindings)?;
        n.div(&d)
    }

    /// Substitution keyed by symbol names; rejects malformed names.
    pub fn substitute_named(&self, bindings: &[(&str, ParamRat)]) -> Result<ParamRat> {
        let mut map = BTreeMap::new();
        for (name, v) in bindings {
            map.insert(Symbol::new(name)?, v.clone());
        }
        self.substitute(&map)
    }

    /// Floating-point evaluation; every symbol present must be bound.
    pub fn eval_complex(&self, values: &BTreeMap<Symbol, Complex64>) -> Result<Complex64> {
        let n = eval_poly_complex(&self.num, values)?;
        let d = eval_poly_complex(&self.den, values)?;
        if d == Complex64::new(0.0, 0.0) {
            return Err(Error::DivisionByZero);
        }
        Ok(n / d)
    }

    /// Coefficients of the numerator viewed as a Laurent polynomial in `s`,
    /// each divided by the denominator. Requires the denominator to be free
    /// of `s`.
    pub fn coeffs_in(&self, s: Symbol) -> Result<BTreeMap<i32, ParamRat>> {
        if self.den.contains(s) {
            return Err(Error::InvalidInput(format!("denominator depends on {s}")));
        }
        self.num
            .coeffs_in(s)
            .into_iter()
            .map(|(e, c)| Ok((e, canonicalize(c, self.den.clone())?)))
            .collect()
    }
}

fn eval_poly(p: &Poly, bindings: &BTreeMap<Symbol, ParamRat>) -> Result<ParamRat> {
    let mut acc = ParamRat::zero();
    for (m, c) in p.terms() {
        let mut t = ParamRat::from_rational(c.clone());
        for (s, e) in m.iter() {
            let base = match bindings.get(s) {
                Some(v) => v.clone(),
                None => ParamRat::sym(*s),
            };
            t = t.mul(&base.pow(*e)?);
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn eval_poly_complex(p: &Poly, values: &BTreeMap<Symbol, Complex64>) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut t = Complex64::new(rational_to_f64(c), 0.0);
        for (s, e) in m.iter() {
            let v = if *s == sym::i() {
                Complex64::new(0.0, 1.0)
            } else {
                *values
                    .get(s)
                    .ok_or_else(|| Error::UnknownSymbol(s.name().to_string()))?
            };
            t *= v.powi(*e);
        }
        acc += t;
    }
    Ok(acc)
}

fn kp_squared() -> Poly {
    Poly::one().sub(&Poly::var(sym::k()).pow(2))
}

/// Applies `I^2 = -1` and `kp^2 = 1 - k^2` to every monomial.
fn reduce_algebraic(p: &Poly) -> Poly {
    let (i, kp) = (sym::i(), sym::kp());
    if !p.contains(i) && !p.terms().iter().any(|(m, _)| m.exp(kp) >= 2) {
        return p.clone();
    }
    p.map_terms(|m, c| {
        let ei = m.exp(i);
        let ek = m.exp(kp);
        let mut c = c.clone();
        if ei.rem_euclid(4) >= 2 {
            c = -c;
        }
        let base = m
            .with_exp(i, ei.rem_euclid(2))
            .with_exp(kp, ek.rem_euclid(2));
        let mut t = Poly::monomial(base, c);
        if ek >= 2 {
            t = t.mul(&kp_squared().pow((ek / 2) as u32));
        }
        t
    })
}

/// Splits `p = a + s*b` for a symbol appearing at most linearly.
fn split_linear(p: &Poly, s: Symbol) -> (Poly, Poly) {
    let groups = p.coeffs_in(s);
    (
        groups.get(&0).cloned().unwrap_or_else(Poly::zero),
        groups.get(&1).cloned().unwrap_or_else(Poly::zero),
    )
}

fn canonicalize(mut num: Poly, mut den: Poly) -> Result<ParamRat> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(ParamRat::zero());
    }
    // Fast path: rational denominator, no algebraic symbols to reduce.
    if let Some(c) = den.as_constant() {
        let needs_reduce = num.terms().iter().any(|(m, _)| {
            m.exp(sym::i()) >= 2
                || m.exp(sym::i()) < 0
                || m.exp(sym::kp()) >= 2
                || m.exp(sym::kp()) < 0
        });
        if !needs_reduce {
            return Ok(ParamRat {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            });
        }
    }
    let (k, kp, i) = (sym::k(), sym::kp(), sym::i());
    // Clear negative powers of I and kp by multiplying through.
    for s in [i, kp] {
        let lo = num.min_exp(s).min(den.min_exp(s));
        if lo < 0 {
            let m = Monomial::var(s, -lo);
            num = num.mul_monomial(&m, &Rational::one());
            den = den.mul_monomial(&m, &Rational::one());
        }
    }
    num = reduce_algebraic(&num);
    den = reduce_algebraic(&den);
    for s in [i, kp] {
        if den.contains(s) {
            let (a, b) = split_linear(&den, s);
            let conj = a.sub(&b.mul(&Poly::var(s)));
            num = reduce_algebraic(&num.mul(&conj));
            den = reduce_algebraic(&den.mul(&conj));
        }
    }
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(ParamRat::zero());
    }
    // Any monomial factor of the denominator is moved across (k) or
    // cancelled against the numerator.
    let dmon = den.monomial_content();
    if !dmon.is_one() {
        let inv = Monomial::one().div(&dmon);
        num = num.mul_monomial(&inv, &Rational::one());
        den = den.mul_monomial(&inv, &Rational::one());
    }
    // Numerator may now carry negative exponents; those of symbols other
    // than k must be pushed back into the denominator.
    let mut back = Monomial::one();
    for s in num.symbols() {
        let lo = num.min_exp(s);
        if lo < 0 && s != k {
            back = back.mul(&Monomial::var(s, -lo));
        }
    }
    if !back.is_one() {
        num = num.mul_monomial(&back, &Rational::one());
        den = den.mul_monomial(&back, &Rational::one());
    }
    if den.as_constant().is_none() {
        let klo = num.min_exp(k).min(0);
        let shift = Monomial::var(k, -klo);
        let npoly = num.mul_monomial(&shift, &Rational::one());
        let g = gcd(&npoly, &den);
        if !g.is_one() {
            let n2 = npoly.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
            num = n2.mul_monomial(&Monomial::var(k, klo), &Rational::one());
        }
    }
    let lc = den.lc();
    if !lc.is_one() {
        let inv = lc.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    Ok(ParamRat { num, den })
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let a = c.abs();
        let mut first = true;
        if m.is_one() || !a.is_one() {
            write!(f, "{a}")?;
            first = false;
        }
        for (s, e) in m.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_poly(f, &self.num)
        } else {
            f.write_str("(")?;
            write_poly(f, &self.num)?;
            f.write_str(")/(")?;
            write_poly(f, &self.den)?;
            f.write_str(")")
        }
    }
}

impl fmt::Debug for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for ParamRat {
    fn from(n: i64) -> ParamRat {
        ParamRat::int(n)
    }
}

impl From<Rational> for ParamRat {
    fn from(r: Rational) -> ParamRat {
        ParamRat::from_rational(r)
    }
}

impl From<Symbol> for ParamRat {
    fn from(s: Symbol) -> ParamRat {
        ParamRat::sym(s)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl std::ops::$tr<&ParamRat> for &ParamRat {
            type Output = ParamRat;
            fn $f(self, rhs: &ParamRat) -> ParamRat {
                self.$m(rhs)
            }
        }
        impl std::ops::$tr<ParamRat> for ParamRat {
            type Output = ParamRat;
            fn $f(self, rhs: ParamRat) -> ParamRat {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&ParamRat> for ParamRat {
            type Output = ParamRat;
            fn $f(self, rhs: &ParamRat) -> ParamRat {
                (&self).$m(rhs)
            }
        }
        impl std::ops::$tr<ParamRat> for &ParamRat {
            type Output = ParamRat;
            fn $f(self, rhs: ParamRat) -> ParamRat {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for ParamRat {
    type Output = ParamRat;
    fn neg(self) -> ParamRat {
        ParamRat::neg(&self)
    }
}

impl std::ops::Neg for &ParamRat {
    type Output = ParamRat;
    fn neg(self) -> ParamRat {
        ParamRat::neg(self)
    }
}

impl Default for ParamRat {
    fn default() -> Self {
        ParamRat::zero()
    }
}
