use floquet_core::coeffring::{pr, rat, ParamRat};
use floquet_core::series::{
    large_energy_forward, revert, revert_large_energy, AsymSeries, SmallParam, EXACT,
};
use proptest::prelude::*;

fn x() -> SmallParam {
    SmallParam::new("x", 1, 1)
}

fn series(start: i32, cs: &[&str], order: i32) -> AsymSeries {
    AsymSeries::new(x(), start, cs.iter().map(|c| pr(c)).collect(), order)
}

#[test]
fn product_truncates() {
    let a = series(1, &["1", "1"], EXACT);
    let b = series(0, &["1", "-1"], EXACT);
    let p = a.mul(&b).unwrap().truncate(2);
    assert_eq!(p, series(1, &["1"], 2));
}

#[test]
fn truncation_keeps_leading_terms() {
    let a = series(-1, &["3", "2", "1"], 5);
    let t = a.truncate(0);
    assert_eq!(t.terms(), vec![(-1, pr("3"))]);
    assert_eq!(t.order(), 0);
}

#[test]
fn compose_with_identity() {
    let f = series(1, &["1", "a", "b", "c"], 5);
    let id = AsymSeries::new(SmallParam::new("y", 1, 1), 1, vec![ParamRat::one()], EXACT);
    let g = f.compose(&id).unwrap();
    assert_eq!(g.terms(), f.terms());
    assert_eq!(g.order(), 5);
}

#[test]
fn incompatible_parameters_are_rejected() {
    let a = series(0, &["1"], 3);
    let b = AsymSeries::new(SmallParam::new("y", 1, 1), 0, vec![pr("1")], 3);
    assert!(a.add(&b).is_err());
    assert!(a.compose(&a).is_err());
}

#[test]
fn inverse_and_rational_power() {
    let a = series(0, &["1", "1"], 6);
    let inv = a.inverse().unwrap();
    assert_eq!(inv, series(0, &["1", "-1", "1", "-1", "1", "-1"], 6));
    let sq = a.powr(&rat(1, 2)).unwrap();
    assert_eq!(sq.mul(&sq).unwrap(), a);
}

#[test]
fn symbolic_lambda_coefficients() {
    let eps = [pr("eps1"), pr("eps2"), pr("eps3")];
    let lam = revert_large_energy(&eps).unwrap();
    assert_eq!(lam.coeff(-2), pr("-1"));
    assert_eq!(lam.coeff(0), pr("-2*eps1"));
    assert_eq!(lam.coeff(2), pr("eps1^2 + 2*eps2"));
    assert_eq!(lam.coeff(4), pr("-2*(eps1^3 + 3*eps1*eps2 + eps3)"));
    assert_eq!(lam.order(), 6);
}

#[test]
fn zero_potential_is_free_particle() {
    let lam = revert_large_energy(&[ParamRat::zero(), ParamRat::zero()]).unwrap();
    assert_eq!(lam.terms(), vec![(-2, pr("-1"))]);
}

#[test]
fn newton_reversion_matches_lagrange() {
    // y = x + x^2 has inverse x = y - y^2 + 2y^3 - 5y^4 + 14y^5 - …
    let f = series(1, &["1", "1"], EXACT);
    let g = revert(&f, SmallParam::new("y", 1, 1), 7).unwrap();
    let expect = ["1", "-1", "2", "-5", "14", "-42"];
    for (i, c) in expect.iter().enumerate() {
        assert_eq!(g.coeff(i as i32 + 1), pr(c));
    }
}

/// Substitutes the reverted λ(ν) back into the forward relation and checks
/// that `iν` comes back to the truncation order.
fn round_trip(eps: &[ParamRat]) {
    let n = eps.len() as i32;
    let lam = revert_large_energy(eps).unwrap();
    // In X = 1/(iν): ν^{-2} = -X^2, so λ(X) = Σ_j c_j X^{2j-2}.
    let xp = SmallParam::new("inu", -1, 1);
    let mut cs = Vec::new();
    for (e, c) in lam.terms() {
        let j = (e + 2) / 2;
        let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
        cs.push((2 * j - 2, c.scale(&rat(sign, 1))));
    }
    let lo = cs.iter().map(|t| t.0).min().unwrap();
    let mut dense = vec![ParamRat::zero(); (2 * n - lo) as usize];
    for (e, c) in cs {
        dense[(e - lo) as usize] = c;
    }
    let lam_x = AsymSeries::new(xp.clone(), lo, dense, 2 * n - 2);
    // x = λ^{-1/2}, then iν = forward(x) must equal 1/X.
    let xs = lam_x.powr(&rat(-1, 2)).unwrap();
    let fwd = large_energy_forward(eps);
    let inu = fwd.compose(&xs).unwrap();
    let expect = AsymSeries::monomial(xp, -1, ParamRat::one()).truncate(inu.order());
    assert!(inu.order() >= 2 * n - 3);
    assert_eq!(inu, expect);
}

#[test]
fn round_trip_symbolic() {
    round_trip(&[pr("eps1"), pr("eps2"), pr("eps3")]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn reversion_round_trip(v in prop::collection::vec((-9i64..=9, 1i64..=5), 3..=4)) {
        let eps: Vec<ParamRat> = v.iter().map(|(n, d)| ParamRat::rat(*n, *d)).collect();
        round_trip(&eps);
    }

    #[test]
    fn large_energy_series_is_even_in_nu(v in prop::collection::vec((-9i64..=9, 1i64..=5), 1..=4)) {
        let eps: Vec<ParamRat> = v.iter().map(|(n, d)| ParamRat::rat(*n, *d)).collect();
        let lam = revert_large_energy(&eps).unwrap();
        for (e, _) in lam.terms() {
            prop_assert_eq!(e.rem_euclid(2), 0);
        }
    }
}
