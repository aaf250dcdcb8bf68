//! Differential polynomials in a single function `u` and its x-derivatives.
//!
//! A monomial is a multiset of derivative orders: `[0, 0, 1]` is `u^2*u_x`.
//! Its weight is the sum of `order + 2` over the factors, so that every
//! density `v_l` coming out of [`kdv_densities`] has weight `l + 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{int, Monomial, ParamRat, Poly, Rational, Symbol};
use crate::error::{Error, Result};

/// Sorted derivative orders of the factors of a monomial.
pub type DiffMonomial = Vec<u8>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<DiffMonomial, ParamRat>,
}

/// Weight of a monomial: each `u^(k)` counts `k + 2`.
pub fn weight(m: &[u8]) -> u32 {
    m.iter().map(|&k| k as u32 + 2).sum()
}

fn mono_mul(a: &[u8], b: &[u8]) -> DiffMonomial {
    let mut out: DiffMonomial = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out
}

impl DiffPoly {
    pub fn zero() -> DiffPoly {
        DiffPoly::default()
    }

    pub fn constant(c: ParamRat) -> DiffPoly {
        DiffPoly::monomial(Vec::new(), c)
    }

    /// `u^(k)`.
    pub fn u_deriv(k: u8) -> DiffPoly {
        DiffPoly::monomial(vec![k], ParamRat::one())
    }

    pub fn u() -> DiffPoly {
        DiffPoly::u_deriv(0)
    }

    pub fn monomial(mut m: DiffMonomial, c: ParamRat) -> DiffPoly {
        let mut p = DiffPoly::zero();
        m.sort_unstable();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: DiffMonomial, c: ParamRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &ParamRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u8]) -> ParamRat {
        let mut key = m.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(ParamRat::zero)
    }

    /// The common weight of all monomials, if homogeneous and nonzero.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|m| weight(m));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffPoly {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ParamRat) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        self.map_coeffs(|x| x.mul(c))
    }

    fn map_coeffs(&self, f: impl Fn(&ParamRat) -> ParamRat) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca.mul(cb));
            }
        }
        out
    }

    /// Total x-derivative by the Leibniz rule, `u^(k) -> u^(k+1)`.
    pub fn total_x_derivative(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut i = 0;
            while i < m.len() {
                // Equal factors give the same result; count them once.
                let k = m[i];
                let mult = m[i..].iter().take_while(|&&x| x == k).count();
                let mut next = m.clone();
                next[i] = k + 1;
                next.sort_unstable();
                out.add_term(next, c.scale(&int(mult as i64)));
                i += mult;
            }
        }
        out
    }

    /// Representative modulo total x-derivatives.
    ///
    /// A monomial `M*u^(K)` whose highest order `K >= 1` occurs once is
    /// integrated by parts to `-(dM/dx)*u^(K-1)`. When `M` already holds `a`
    /// factors `u^(K-1)` the right side contains `-a` times the monomial
    /// itself, which is moved across. Every other term has all orders below
    /// `K`, so the loop terminates. What remains are monomials whose highest
    /// order is repeated, powers of `u`, and the constant term.
    pub fn reduce_mod_exact(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        let mut work = self.clone();
        if let Some(c) = work.terms.remove(&Vec::new()) {
            out.add_term(Vec::new(), c);
        }
        while let Some((m, c)) = work.pop_highest() {
            let k = *m.last().expect("nonconstant");
            if k == 0 || m.len() >= 2 && m[m.len() - 2] == k {
                out.add_term(m, c);
                continue;
            }
            let rest: DiffMonomial = m[..m.len() - 1].to_vec();
            let a = rest.iter().filter(|&&x| x == k - 1).count() as i64;
            let lowered = DiffPoly::u_deriv(k - 1);
            let d = DiffPoly::monomial(rest, ParamRat::one())
                .total_x_derivative()
                .mul(&lowered);
            let factor = c.scale(&Rational::new((-1).into(), (1 + a).into()));
            for (dm, dc) in d.terms {
                if dm != m {
                    work.add_term(dm, dc.mul(&factor));
                }
            }
        }
        out
    }

    /// Removes the nonconstant term with the largest highest order.
    fn pop_highest(&mut self) -> Option<(DiffMonomial, ParamRat)> {
        let key = self
            .terms
            .keys()
            .max_by(|a, b| a.last().cmp(&b.last()).then_with(|| a.cmp(b)))?
            .clone();
        let c = self.terms.remove(&key).expect("key present");
        Some((key, c))
    }
}

/// Densities `v_1 .. v_n` of the large-energy expansion of `v` in the Miura
/// relation `v_x + v^2 = u + lambda`, with `v = sqrt(lambda) + sum v_l
/// lambda^(-l/2)`. Matching orders gives `v_1 = u/2` and
/// `v_l = -(v_(l-1)' + sum_(i+j=l-1, i,j>=1) v_i v_j) / 2`.
pub fn kdv_densities(n: usize) -> Vec<DiffPoly> {
    let half = ParamRat::rat(-1, 2);
    let mut v: Vec<DiffPoly> = Vec::with_capacity(n);
    if n == 0 {
        return v;
    }
    v.push(DiffPoly::u().scale(&ParamRat::rat(1, 2)));
    for l in 2..=n {
        let mut acc = v[l - 2].total_x_derivative();
        for i in 1..l - 1 {
            let j = l - 1 - i;
            acc = acc.add(&v[i - 1].mul(&v[j - 1]));
        }
        v.push(acc.scale(&half));
    }
    v
}

/// Name of the `k`-th derivative: `u`, `u_x`, `u_xx`, ...
pub fn factor_name(k: u8) -> String {
    if k == 0 {
        "u".to_string()
    } else {
        format!("u_{}", "x".repeat(k as usize))
    }
}

fn parse_factor_name(name: &str) -> Option<u8> {
    if name == "u" {
        return Some(0);
    }
    let xs = name.strip_prefix("u_")?;
    (!xs.is_empty() && xs.bytes().all(|b| b == b'x')).then_some(xs.len() as u8)
}

fn render_monomial(m: &[u8]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let k = m[i];
        let mult = m[i..].iter().take_while(|&&x| x == k).count();
        if mult == 1 {
            parts.push(factor_name(k));
        } else {
            parts.push(format!("{}^{}", factor_name(k), mult));
        }
        i += mult;
    }
    parts.join("*")
}

impl fmt::Display for DiffPoly {
    /// Highest weight first, then lexicographic in the derivative orders.
    /// Coefficients with more than one term are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&DiffMonomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| weight(b).cmp(&weight(a)).then_with(|| a.cmp(b)));
        for (idx, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let mut text = c.to_string();
            let negative = text.starts_with('-') && !text[1..].contains([' ', '(']);
            if negative {
                text.remove(0);
            }
            let needs_paren = text.contains(' ') && !text.starts_with('(');
            let coeff = if needs_paren {
                format!("({text})")
            } else {
                text
            };
            let sep = match (idx, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let body = if m.is_empty() {
                coeff
            } else if coeff == "1" {
                render_monomial(m)
            } else {
                format!("{coeff}*{}", render_monomial(m))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}

impl std::str::FromStr for DiffPoly {
    type Err = Error;

    /// Reads the coefficient-ring grammar with `u`, `u_x`, `u_xx`, ... as
    /// factors. The expression must be polynomial in those factors.
    fn from_str(s: &str) -> Result<DiffPoly> {
        let r: ParamRat = s.parse()?;
        let is_factor = |sym: &Symbol| parse_factor_name(sym.name()).is_some();
        if r.den().symbols().iter().any(is_factor) {
            return Err(Error::InvalidInput(format!("`{s}` divides by u")));
        }
        let den = ParamRat::from_poly(r.den().clone());
        let mut out = DiffPoly::zero();
        for (mono, c) in r.num().terms() {
            let mut orders = Vec::new();
            let mut rest = Vec::new();
            for &(sym, e) in mono.iter() {
                match parse_factor_name(sym.name()) {
                    Some(k) if e > 0 => orders.extend(std::iter::repeat_n(k, e as usize)),
                    Some(_) => return Err(Error::InvalidInput(format!("`{s}` divides by u"))),
                    None => rest.push((sym, e)),
                }
            }
            let coeff = ParamRat::from_poly(Poly::monomial(Monomial::from_pairs(rest), c.clone()))
                .div(&den)?;
            orders.sort_unstable();
            out.add_term(orders, coeff);
        }
        Ok(out)
    }
}
