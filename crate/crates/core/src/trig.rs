//! Trigonometric polynomial potentials of period π and their period means.
//!
//! Functions are stored on the basis `e^{2inx}`, where `d/dx` is diagonal
//! (multiplication by `2in`) and products are finite convolutions.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{sym, ParamRat};
use crate::diffpoly::{kdv_densities, DiffPoly};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct FourierPoly {
    coeffs: BTreeMap<i32, ParamRat>,
}

impl FourierPoly {
    pub fn zero() -> FourierPoly {
        FourierPoly::default()
    }

    pub fn constant(c: ParamRat) -> FourierPoly {
        let mut f = FourierPoly::zero();
        f.add_term(0, c);
        f
    }

    pub fn from_coeffs(items: impl IntoIterator<Item = (i32, ParamRat)>) -> FourierPoly {
        let mut f = FourierPoly::zero();
        for (n, c) in items {
            f.add_term(n, c);
        }
        f
    }

    /// `u(x) = sum_n 2 theta_n cos(2nx)`, with `thetas[0]` the coefficient of
    /// `cos 2x`.
    pub fn from_cosines(thetas: &[ParamRat]) -> FourierPoly {
        let mut f = FourierPoly::zero();
        for (i, t) in thetas.iter().enumerate() {
            let n = i as i32 + 1;
            f.add_term(n, t.clone());
            f.add_term(-n, t.clone());
        }
        f
    }

    fn add_term(&mut self, n: i32, c: ParamRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(n).or_insert_with(ParamRat::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: i32) -> ParamRat {
        self.coeffs.get(&n).cloned().unwrap_or_else(ParamRat::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, ParamRat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when `coeff(n) = coeff(-n)` for every frequency.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().all(|(n, c)| self.coeff(-n) == *c)
    }

    pub fn add(&self, other: &FourierPoly) -> FourierPoly {
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            out.add_term(*n, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &ParamRat) -> FourierPoly {
        FourierPoly::from_coeffs(self.coeffs.iter().map(|(n, x)| (*n, x.mul(c))))
    }

    pub fn mul(&self, other: &FourierPoly) -> FourierPoly {
        let mut out = FourierPoly::zero();
        for (n, a) in &self.coeffs {
            for (m, b) in &other.coeffs {
                out.add_term(n + m, a.mul(b));
            }
        }
        out
    }

    /// `d/dx`: the coefficient at `n` is multiplied by `2in`.
    pub fn derivative(&self) -> FourierPoly {
        let i = ParamRat::sym(sym::i());
        FourierPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|(n, c)| (*n, c.mul(&i).mul(&ParamRat::int(2 * *n as i64)))),
        )
    }
}

impl fmt::Display for FourierPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(n, c)| format!("{n}: {c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for FourierPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FourierPoly{self}")
    }
}

/// Evaluates a differential polynomial on a trigonometric potential.
pub fn fourier_substitute(p: &DiffPoly, u: &FourierPoly) -> FourierPoly {
    let top = p
        .terms()
        .flat_map(|(m, _)| m.iter().copied())
        .max()
        .unwrap_or(0);
    let mut derivs = vec![u.clone()];
    for k in 1..=top as usize {
        derivs.push(derivs[k - 1].derivative());
    }
    let mut out = FourierPoly::zero();
    for (m, c) in p.terms() {
        let mut term = FourierPoly::constant(c.clone());
        for &k in m {
            term = term.mul(&derivs[k as usize]);
        }
        out = out.add(&term);
    }
    out
}

/// Mean over one period: the zero-frequency coefficient.
pub fn fourier_mean(f: &FourierPoly) -> ParamRat {
    f.coeff(0)
}

/// Period means `eps_l` of the odd densities `v_(2l-1)` for the potential
/// `sum 2 theta_n cos(2nx)`.
pub fn trig_epsilons(thetas: &[ParamRat], n: usize) -> Vec<ParamRat> {
    let u = FourierPoly::from_cosines(thetas);
    let v = kdv_densities(2 * n);
    (1..=n)
        .map(|l| fourier_mean(&fourier_substitute(&v[2 * l - 2], &u)))
        .collect()
}
