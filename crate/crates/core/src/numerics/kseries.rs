//! Exact expansions of the lattice constants in powers of `m = k^2`, at the
//! normalization `2ω_1 = π`.
//!
//! Everything starts from theta quartics in `s = q^(1/2)`:
//! `ϑ2^4 = 16 s (Σ_{n≥0} s^(n(n+1)))^4`, `ϑ3^4 = (Σ_n s^(n^2))^4`.
//! `k^2 = ϑ2^4/ϑ3^4` is reverted to `s(m)` and substituted into
//! `e1 = (2ϑ3^4 - ϑ2^4)/3`, `e2 = -(ϑ2^4 + ϑ3^4)/3`, `e3 = (2ϑ2^4 - ϑ3^4)/3`
//! and `ζ1 = -ϑ1'''/(3ϑ1')`.

use crate::coeffring::ParamRat;
use crate::error::{Error, Result};
use crate::series::{revert, AsymSeries, SmallParam};

/// Largest supported order; the rational coefficients grow quickly beyond.
pub const MAX_ORDER: i32 = 40;

/// Lattice constants as series in `m = k^2`, each known to `O(m^order)`.
#[derive(Clone, Debug)]
pub struct KExpansion {
    pub order: i32,
    pub e1: AsymSeries,
    pub e2: AsymSeries,
    pub e3: AsymSeries,
    pub e1_minus_e2: AsymSeries,
    pub zeta1: AsymSeries,
    pub g2: AsymSeries,
    pub g3: AsymSeries,
}

/// The expansion variable `k^2`.
pub fn k2_param() -> SmallParam {
    SmallParam::new("k", 2, 1)
}

fn s_param() -> SmallParam {
    SmallParam::new("q", 1, 2)
}

/// Dense integer-coefficient series in `s` truncated at `O(s^order)`.
fn s_series(order: i32, f: impl Fn(i64) -> Vec<(i64, i64)>) -> AsymSeries {
    let mut coeffs = vec![0i64; order.max(0) as usize];
    for (e, c) in f(order as i64) {
        if (0..order as i64).contains(&e) {
            coeffs[e as usize] += c;
        }
    }
    AsymSeries::new(
        s_param(),
        0,
        coeffs.into_iter().map(ParamRat::int).collect(),
        order,
    )
}

fn ex(e: i32) -> Error {
    Error::InvalidInput(format!("k-expansion order {e} outside 1..={MAX_ORDER}"))
}

pub fn k_expansion_constants(order: i32) -> Result<KExpansion> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(ex(order));
    }
    // One spare power of s: k^2 = 16 s + …, so s is known to the same order
    // in m as k^2 is in s.
    let n = order + 1;
    let theta3 = s_series(n, |n| {
        let mut t = Vec::new();
        let mut j = 0i64;
        while j * j < n {
            t.push((j * j, if j == 0 { 1 } else { 2 }));
            j += 1;
        }
        t
    });
    let theta2_core = s_series(n, |n| {
        let mut t = Vec::new();
        let mut j = 0i64;
        while j * (j + 1) < n {
            t.push((j * (j + 1), 1));
            j += 1;
        }
        t
    });
    let t3_4 = theta3.pow(4)?;
    let t2_4 = theta2_core
        .pow(4)?
        .shift(1)
        .scale(&ParamRat::int(16))
        .truncate(n);
    let k2_of_s = t2_4.div(&t3_4)?.truncate(n);
    let s_of_m = revert(&k2_of_s, k2_param(), n)?;

    // ζ1 = (1/3) Σ(-1)^j (2j+1)^3 s^{j(j+1)} / Σ(-1)^j (2j+1) s^{j(j+1)}
    let alt = |power: u32| {
        s_series(n, move |n| {
            let mut t = Vec::new();
            let mut j = 0i64;
            while j * (j + 1) < n {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                t.push((j * (j + 1), sign * (2 * j + 1).pow(power)));
                j += 1;
            }
            t
        })
    };
    let zeta1_s = alt(3).div(&alt(1))?.scale(&ParamRat::rat(1, 3));

    let third = ParamRat::rat(1, 3);
    let e1_s = t3_4.scale(&ParamRat::int(2)).sub(&t2_4)?.scale(&third);
    let e2_s = t3_4.add(&t2_4)?.scale(&third).neg();
    let e3_s = t2_4.scale(&ParamRat::int(2)).sub(&t3_4)?.scale(&third);

    let sub = |x: &AsymSeries| -> Result<AsymSeries> { Ok(x.compose(&s_of_m)?.truncate(order)) };
    let e1 = sub(&e1_s)?;
    let e2 = sub(&e2_s)?;
    let e3 = sub(&e3_s)?;
    let zeta1 = sub(&zeta1_s)?;
    let e1_minus_e2 = e1.sub(&e2)?;
    let pair = e1.mul(&e2)?.add(&e1.mul(&e3)?)?.add(&e2.mul(&e3)?)?;
    let g2 = pair.scale(&ParamRat::int(-4));
    let g3 = e1.mul(&e2)?.mul(&e3)?.scale(&ParamRat::int(4));
    Ok(KExpansion {
        order,
        e1,
        e2,
        e3,
        e1_minus_e2,
        zeta1,
        g2,
        g3,
    })
}
