use floquet_core::coeffring::{pr, ParamRat};
use floquet_core::diffpoly::{kdv_densities, weight, DiffPoly};
use proptest::prelude::*;

fn dp(s: &str) -> DiffPoly {
    s.parse().unwrap()
}

#[test]
fn first_five_densities() {
    let v = kdv_densities(5);
    assert_eq!(v[0], dp("u/2"));
    assert_eq!(v[1], dp("-u_x/4"));
    assert_eq!(v[2], dp("-(u^2 - u_xx)/8"));
    // v_4 = (2u^2 - u_xx)_x / 16
    assert_eq!(
        v[3],
        dp("2*u^2 - u_xx").total_x_derivative().scale(&pr("1/16"))
    );
    // v_5 = (2u^3 + u_x^2 + (u_xxx - 6u*u_x)_x) / 32
    let v5 = dp("2*u^3 + u_x^2").add(&dp("u_xxx - 6*u*u_x").total_x_derivative());
    assert_eq!(v[4], v5.scale(&pr("1/32")));
}

#[test]
fn rendering() {
    let v = kdv_densities(3);
    assert_eq!(v[0].to_string(), "1/2*u");
    assert_eq!(v[1].to_string(), "-1/4*u_x");
    assert_eq!(v[2].to_string(), "-1/8*u^2 + 1/8*u_xx");
    assert_eq!(DiffPoly::zero().to_string(), "0");
    let mixed = dp("(Delta - Omega)*u^2*u_x + 3");
    assert_eq!(mixed.to_string(), "(Delta - Omega)*u^2*u_x + 3");
    assert_eq!(dp(&mixed.to_string()), mixed);
}

#[test]
fn derivative_examples() {
    assert_eq!(DiffPoly::u().total_x_derivative(), dp("u_x"));
    assert_eq!(dp("u^2").total_x_derivative(), dp("2*u*u_x"));
    assert!(DiffPoly::constant(pr("theta1"))
        .total_x_derivative()
        .is_zero());
}

#[test]
fn reduction_examples() {
    let v = kdv_densities(5);
    assert!(v[1].reduce_mod_exact().is_zero());
    assert!(v[3].reduce_mod_exact().is_zero());
    // u_xx is exact, so v_3 - u_xx/8 already is the representative.
    assert_eq!(v[2].sub(&dp("u_xx/8")), dp("-u^2/8"));
    assert_eq!(v[2].reduce_mod_exact(), dp("-u^2/8"));
    assert_eq!(v[4].reduce_mod_exact(), dp("(2*u^3 + u_x^2)/32"));
    assert_eq!(dp("u*u_xx").reduce_mod_exact(), dp("-u_x^2"));
}

#[test]
fn even_densities_are_exact() {
    let v = kdv_densities(6);
    for l in [2, 4, 6] {
        assert!(v[l - 1].reduce_mod_exact().is_zero(), "v_{l}");
    }
}

#[test]
fn densities_are_homogeneous() {
    for (i, v) in kdv_densities(10).iter().enumerate() {
        assert_eq!(v.homogeneous_weight(), Some(i as u32 + 2), "v_{}", i + 1);
    }
}

/// Plugging `v = 1/t + sum v_l t^l` (t = lambda^(-1/2)) into
/// `v_x + v^2 - u - lambda` must cancel through `t^(n-1)`.
#[test]
fn miura_residual_vanishes_to_truncation() {
    let n = 7;
    let v = kdv_densities(n);
    // Series in t from t^-2 to t^(2n); index = power + 2.
    let len = 2 * n + 3;
    let mut series = vec![DiffPoly::zero(); len];
    let mut vs = vec![DiffPoly::zero(); len];
    vs[1] = DiffPoly::constant(ParamRat::one());
    for (l, d) in v.iter().enumerate() {
        vs[l + 3] = d.clone();
    }
    for i in 0..len {
        for j in 0..len {
            // power (i-2)+(j-2) lands at index i+j-2
            if i + j >= 2 && i + j - 2 < len {
                series[i + j - 2] = series[i + j - 2].add(&vs[i].mul(&vs[j]));
            }
        }
        series[i] = series[i].add(&vs[i].total_x_derivative());
    }
    series[0] = series[0].sub(&DiffPoly::constant(ParamRat::one()));
    series[2] = series[2].sub(&DiffPoly::u());
    for (idx, c) in series.iter().enumerate().take(n + 2) {
        assert!(c.is_zero(), "t^{} residual {}", idx as i32 - 2, c);
    }
    assert!(!series[n + 2].is_zero());
}

fn random_diffpoly() -> impl Strategy<Value = DiffPoly> {
    let mono = prop::collection::vec(0u8..5, 1..4).prop_filter("weight <= 8", |m| weight(m) <= 8);
    prop::collection::vec((mono, -5i64..=5), 1..5).prop_map(|ts| {
        ts.into_iter().fold(DiffPoly::zero(), |acc, (m, c)| {
            acc.add(&DiffPoly::monomial(m, ParamRat::int(c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_derivatives_reduce_to_zero(p in random_diffpoly()) {
        prop_assert!(p.total_x_derivative().reduce_mod_exact().is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_shift_invariant(p in random_diffpoly(), q in random_diffpoly()) {
        let r = p.reduce_mod_exact();
        prop_assert_eq!(r.reduce_mod_exact(), r.clone());
        prop_assert_eq!(p.add(&q.total_x_derivative()).reduce_mod_exact(), r);
    }
}
