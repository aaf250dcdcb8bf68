//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive in the main variable: contents are split off, a univariate
//! image at an integer point detects the (common) coprime case cheaply, and
//! otherwise a subresultant pseudo-remainder sequence is run.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::{int, Monomial, Poly, Rational};
use super::symbol::Symbol;

/// Gcd of two polynomials with nonnegative exponents, normalized monic.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a.as_monomial().is_some() || b.as_monomial().is_some() {
        let m = a.monomial_content().lower(&b.monomial_content());
        return Poly::monomial(m, Rational::one());
    }
    // Pull out the common monomial factor first.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    if !ma.is_one() || !mb.is_one() {
        let common = ma.lower(&mb);
        let a2 = a.mul_monomial(&Monomial::one().div(&ma), &Rational::one());
        let b2 = b.mul_monomial(&Monomial::one().div(&mb), &Rational::one());
        return gcd(&a2, &b2).mul_monomial(&common, &Rational::one());
    }
    let sa = a.symbols();
    let sb = b.symbols();
    let shared: Vec<Symbol> = sa.intersection(&sb).copied().collect();
    if shared.is_empty() {
        return Poly::one();
    }
    // A univariate side only needs univariate gcds with the coefficients of
    // the other side.
    if sa.len() == 1 && sb.len() > 1 {
        return gcd_with_univariate(a, shared[0], b);
    }
    if sb.len() == 1 && sa.len() > 1 {
        return gcd_with_univariate(b, shared[0], a);
    }
    let x = *shared
        .iter()
        .min_by_key(|s| a.max_exp(**s).max(b.max_exp(**s)))
        .expect("nonempty");
    let ca = content(a, x);
    let cb = content(b, x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd(&ca, &cb);
    if !pa.contains(x) || !pb.contains(x) || image_coprime(&pa, &pb, x) {
        return cg;
    }
    cg.mul(&subresultant(&pa, &pb, x)).monic()
}

/// `gcd(u, p)` for `u` univariate in `y`: the gcd of `u` with every
/// coefficient of `p` taken as a polynomial in its other variables.
fn gcd_with_univariate(u: &Poly, y: Symbol, p: &Poly) -> Poly {
    let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exp(y);
        let rest = m.div(&Monomial::var(y, e));
        let term = Poly::monomial(Monomial::var(y, e), c.clone());
        let slot = groups.entry(rest).or_insert_with(Poly::zero);
        *slot = slot.add(&term);
    }
    let mut coeffs: Vec<Poly> = groups.into_values().collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = u.monic();
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &Poly, x: Symbol) -> Poly {
    let mut coeffs: Vec<Poly> = p.coeffs_in(x).into_values().collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = Poly::zero();
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

type Dense = Vec<Poly>;

fn to_dense(p: &Poly, x: Symbol) -> Dense {
    let groups = p.coeffs_in(x);
    let deg = groups.keys().copied().max().unwrap_or(0) as usize;
    let mut v = vec![Poly::zero(); deg + 1];
    for (e, c) in groups {
        v[e as usize] = c;
    }
    v
}

fn from_dense(v: &Dense, x: Symbol) -> Poly {
    let mut acc = Poly::zero();
    for (e, c) in v.iter().enumerate() {
        acc = acc.add(&c.mul_monomial(&Monomial::var(x, e as i32), &Rational::one()));
    }
    acc
}

fn trim(v: &mut Dense) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn is_zero_dense(v: &Dense) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn deg(v: &Dense) -> usize {
    v.len() - 1
}

/// Exact pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Dense, b: &Dense) -> Dense {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    let steps_total = deg(&r) + 1 - db;
    let mut steps = 0;
    while !is_zero_dense(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Dense = r.iter().map(|c| c.mul(&lb)).collect();
        for (i, c) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&c.mul(&lr));
        }
        next.pop();
        r = next;
        trim(&mut r);
        steps += 1;
    }
    if steps < steps_total && !is_zero_dense(&r) {
        let f = lb.pow((steps_total - steps) as u32);
        r = r.iter().map(|c| c.mul(&f)).collect();
    }
    r
}

fn dense_primitive(v: &Dense) -> Dense {
    let mut g = Poly::zero();
    let mut sorted: Vec<&Poly> = v.iter().filter(|c| !c.is_zero()).collect();
    sorted.sort_by_key(|c| c.len());
    for c in sorted {
        g = gcd(&g, c);
        if g.is_one() {
            return v.clone();
        }
    }
    if g.is_zero() {
        return v.clone();
    }
    v.iter()
        .map(|c| c.div_exact(&g).expect("content divides"))
        .collect()
}

fn subresultant(a: &Poly, b: &Poly, x: Symbol) -> Poly {
    let mut f = to_dense(a, x);
    let mut g = to_dense(b, x);
    if deg(&f) < deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut gg = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = deg(&f) - deg(&g);
        let r = prem(&f, &g);
        if is_zero_dense(&r) {
            return from_dense(&dense_primitive(&g), x);
        }
        if deg(&r) == 0 {
            return Poly::one();
        }
        let divisor = gg.mul(&h.pow(delta as u32));
        let next: Dense = r
            .iter()
            .map(|c| {
                c.div_exact(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        f = g;
        g = next;
        gg = f[deg(&f)].clone();
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Evaluates all variables except `x` at fixed integers and tests whether the
/// univariate images are coprime. A coprime image with nonvanishing leading
/// coefficients proves that the primitive parts are coprime.
fn image_coprime(a: &Poly, b: &Poly, x: Symbol) -> bool {
    let mut vars: Vec<Symbol> = a.symbols().union(&b.symbols()).copied().collect();
    vars.retain(|s| *s != x);
    for attempt in 0..3i64 {
        let point: BTreeMap<Symbol, Rational> = vars
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, int(3 + 7 * i as i64 + 13 * attempt)))
            .collect();
        let ua = eval_univariate(a, x, &point);
        let ub = eval_univariate(b, x, &point);
        if ua.len() != a.max_exp(x) as usize + 1 || ub.len() != b.max_exp(x) as usize + 1 {
            continue;
        }
        return univariate_gcd_degree(ua, ub) == 0;
    }
    false
}

fn eval_univariate(p: &Poly, x: Symbol, point: &BTreeMap<Symbol, Rational>) -> Vec<Rational> {
    let deg = p.max_exp(x).max(0) as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for (s, e) in m.iter() {
            if *s != x {
                v *= num_traits::pow(point[s].clone(), *e as usize);
            }
        }
        out[m.exp(x) as usize] += v;
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 && b[0].is_zero() {
            return a.len() - 1;
        }
        if b.len() == 1 {
            return 0;
        }
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() && !(a.len() == 1 && a[0].is_zero()) {
            let q = a.last().expect("nonempty").clone() / &lb;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= &q * c;
            }
            a.pop();
            while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
            if a.is_empty() {
                a.push(Rational::zero());
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}
