use floquet_core::coeffring::{pr, sym, ParamRat};
use floquet_core::diffpoly::{kdv_densities, DiffPoly};
use floquet_core::weier::{
    large_energy_eigenvalue, normalize_lattice, weier_epsilons, weier_substitute, WeierExpr,
    WeierPotential,
};
use floquet_core::Error;

fn ellipsoidal() -> WeierPotential {
    WeierPotential::Ellipsoidal {
        alpha1: pr("alpha1"),
        alpha2: pr("alpha2"),
    }
}

fn dtv() -> WeierPotential {
    WeierPotential::Dtv {
        b: [pr("b0"), pr("b1"), pr("b2"), pr("b3")],
    }
}

fn same_on_lattice(a: &ParamRat, b: &ParamRat) -> bool {
    normalize_lattice(a).unwrap() == normalize_lattice(b).unwrap()
}

#[test]
fn substitute_examples() {
    let p0 = WeierExpr::p(0);
    let u = weier_substitute(&DiffPoly::u(), &ellipsoidal());
    assert_eq!(
        u,
        p0.scale(&pr("alpha1"))
            .add(&p0.mul(&p0).scale(&pr("alpha2")))
    );
    let lame = WeierPotential::lame(pr("alpha1"));
    assert_eq!(
        weier_substitute(&DiffPoly::u_deriv(1), &lame),
        WeierExpr::q(0).scale(&pr("alpha1"))
    );
    let single = WeierPotential::Dtv {
        b: [pr("b0"), pr("0"), pr("0"), pr("0")],
    };
    let sq = weier_substitute(&DiffPoly::u().mul(&DiffPoly::u()), &single);
    assert_eq!(sq, p0.mul(&p0).scale(&pr("b0^2")));
}

#[test]
fn reduce_examples() {
    let p0 = WeierExpr::p(0);
    assert_eq!(
        p0.mul(&p0).reduce().unwrap(),
        WeierExpr::constant(pr("g2/12"))
    );
    let cross = p0.mul(&WeierExpr::p(1));
    let expect = WeierExpr::p(0)
        .add(&WeierExpr::p(1))
        .scale(&pr("e1"))
        .add(&WeierExpr::constant(pr("e1^2 + e2*e3")));
    assert_eq!(cross, expect);
    let qq = WeierExpr::q(0).mul(&WeierExpr::q(1));
    let expect = WeierExpr::p(0)
        .add(&WeierExpr::p(1))
        .add(&WeierExpr::constant(pr("e1")))
        .scale(&pr("-4*(e1 - e2)*(e1 - e3)"));
    assert_eq!(qq, expect);
    // P2 P3 pairs through e1, Q1 Q3 through e2.
    assert_eq!(
        WeierExpr::p(2).mul(&WeierExpr::p(3)),
        WeierExpr::p(2)
            .add(&WeierExpr::p(3))
            .scale(&pr("e1"))
            .add(&WeierExpr::constant(pr("e1^2 + e2*e3")))
    );
    assert_eq!(
        WeierExpr::q(1).mul(&WeierExpr::q(3)),
        WeierExpr::p(1)
            .add(&WeierExpr::p(3))
            .add(&WeierExpr::constant(pr("e2")))
            .scale(&pr("-4*(e2 - e1)*(e2 - e3)"))
    );
}

#[test]
fn exact_parts_reduce_to_zero() {
    let p = WeierExpr::p(2);
    assert!(p.mul(&p).mul(&p).derivative().reduce().unwrap().is_zero());
    assert!(WeierExpr::q(3).reduce().unwrap().is_zero());
    // P_0 - P_1 is itself exact (the derivative of zeta(x + ω_1) - zeta(x)),
    // so mixed labels only have a well-defined period mean.
    let mixed = WeierExpr::p(0).mul(&WeierExpr::p(1)).mul(&WeierExpr::q(0));
    let d = mixed.derivative().reduce().unwrap();
    assert!(d.is_affine());
    assert!(normalize_lattice(&d.period_mean().unwrap())
        .unwrap()
        .is_zero());
}

#[test]
fn irreducible_term_is_reported() {
    let bad = WeierExpr::p(0).mul(&WeierExpr::q(1));
    assert!(matches!(bad.reduce(), Err(Error::IrreducibleTerm(_))));
}

#[test]
fn ellipsoidal_epsilons() {
    let eps = weier_epsilons(&ellipsoidal(), 2).unwrap();
    assert_eq!(eps[0], pr("-alpha1*zeta1/2 + alpha2*g2/24"));
    let eps2 = pr("-alpha1^2*g2/96 + alpha1*alpha2*(3*g2*zeta1 - 2*g3)/80 \
                   + alpha2^2*(48*g3*zeta1 - 5*g2^2)/2688");
    assert_eq!(eps[1], eps2);
}

#[test]
fn lame_epsilon() {
    let eps = weier_epsilons(&WeierPotential::lame(pr("Delta")), 1).unwrap();
    assert_eq!(eps[0], pr("-Delta*zeta1/2"));
}

#[test]
fn dtv_epsilons() {
    let eps = weier_epsilons(&dtv(), 2).unwrap();
    assert_eq!(eps[0], pr("-(b0 + b1 + b2 + b3)*zeta1/2"));
    let eps2 = pr("(b0^2 + b1^2 + b2^2 + b3^2)*(e1*e2 + e1*e3 + e2*e3)/24 \
                   - ((b0*b1 + b2*b3)*(e1^2 + e2*e3 - 2*e1*zeta1) \
                   + (b0*b2 + b1*b3)*(e2^2 + e1*e3 - 2*e2*zeta1) \
                   + (b0*b3 + b1*b2)*(e3^2 + e1*e2 - 2*e3*zeta1))/4");
    assert!(same_on_lattice(&eps[1], &eps2), "{}", eps[1]);
}

#[test]
fn dtv_single_coupling_matches_lame() {
    let single = WeierPotential::Dtv {
        b: [pr("Delta"), pr("0"), pr("0"), pr("0")],
    };
    let a = weier_epsilons(&single, 3).unwrap();
    let b = weier_epsilons(&WeierPotential::lame(pr("Delta")), 3).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!(same_on_lattice(x, y));
    }
}

/// Relabelling the half periods permutes e_i; with b_s permuted accordingly
/// the means are unchanged. Swapping labels 1 and 2 maps P_1 <-> P_2,
/// P_3 -> P_3 and e1 <-> e2; the 2ω_1 mean itself is not symmetric, so only
/// the zeta-free part is compared.
#[test]
fn dtv_relabelling_symmetry() {
    let eps = weier_epsilons(&dtv(), 3).unwrap();
    let swapped = WeierPotential::Dtv {
        b: [pr("b0"), pr("b2"), pr("b1"), pr("b3")],
    };
    let eps_s = weier_epsilons(&swapped, 3).unwrap();
    for (a, b) in eps.iter().zip(&eps_s) {
        let strip = |x: &ParamRat| x.substitute_named(&[("zeta1", ParamRat::zero())]).unwrap();
        let a0 = strip(a);
        let b0 = strip(b)
            .substitute_named(&[("e1", pr("t")), ("e2", pr("e1"))])
            .unwrap()
            .substitute_named(&[("t", pr("e2"))])
            .unwrap();
        assert!(same_on_lattice(&a0, &b0));
    }
}

#[test]
fn ellipsoidal_eigenvalue_through_nu2() {
    let lam = large_energy_eigenvalue(&ellipsoidal(), 2).unwrap();
    assert_eq!(lam.coeff(-2), pr("-1"));
    assert_eq!(lam.coeff(0), pr("(12*alpha1*zeta1 - alpha2*g2)/12"));
    let l1 = pr(
        "(105*alpha1^2*(12*zeta1^2 - g2) + 84*alpha1*alpha2*(2*g2*zeta1 - 3*g3) \
                 + 10*alpha2^2*(18*g3*zeta1 - g2^2))/5040",
    );
    assert_eq!(lam.coeff(2), l1);
}

#[test]
fn zero_potential_gives_free_particle() {
    let lam = large_energy_eigenvalue(&WeierPotential::lame(ParamRat::zero()), 3).unwrap();
    assert_eq!(lam.terms(), vec![(-2, pr("-1"))]);
}

#[test]
fn odd_densities_reduce_to_affine_form() {
    let v = kdv_densities(7);
    for l in [1, 3, 5, 7] {
        let w = weier_substitute(&v[l - 1], &dtv()).reduce().unwrap();
        assert!(w.is_affine());
    }
}

#[test]
fn jacobi_form_eigenvalue_in_k() {
    use floquet_core::weier::{weier_to_jacobi_eigenvalue, JacobiParamMap};
    let lam = large_energy_eigenvalue(&ellipsoidal(), 2).unwrap();
    let big = weier_to_jacobi_eigenvalue(&lam, &JacobiParamMap::Ellipsoidal, 6).unwrap();
    assert_eq!(big.coeff(-2), pr("-1"));
    let c0 = pr(
        "-(Delta/2*k^2 + (Delta + 6*Omega)/16*k^4 + (Delta + 2*Omega)/32*k^6 \
                 + (41*Delta + 70*Omega)/2048*k^8)",
    );
    let c0_got = big.coeff(0);
    let c2 = pr(
        "-(Delta^2/32*k^4 + Delta*Omega/16*k^6 - (Delta^2 - 8*Delta*Omega - 136*Omega^2)/4096*k^8 \
                 - (Delta - 4*Omega)*(Delta + 2*Omega)/4096*k^10)",
    );
    let c2_got = big.coeff(2);
    // Terms below k^n.
    let low = |x: &ParamRat, n: i32| -> ParamRat {
        x.coeffs_in(sym::k())
            .unwrap()
            .into_iter()
            .filter(|(e, _)| *e < n)
            .fold(ParamRat::zero(), |acc, (e, c)| {
                acc.add(&c.mul(&ParamRat::sym(sym::k()).pow(e).unwrap()))
            })
    };
    assert_eq!(low(&c0_got, 10), low(&c0, 10));
    assert_eq!(low(&c2_got, 12), c2);
}
