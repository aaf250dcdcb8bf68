//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line
//! with its measured detail and runtime; the test fails if any line fails.
//! Runtime budgets are wall-clock seconds and hold for debug builds too.

// `ensure!(!(x < tol))` style is deliberate: a NaN measurement must fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use floquet_core::coeffring::{pr, sym, ParamRat, Symbol};
use floquet_core::diffpoly::{kdv_densities, DiffPoly};
use floquet_core::jacobi::{
    small_energy_eigenvalue, small_energy_v, EllipsoidalJacobi, JacobiMode,
};
use floquet_core::numerics::{
    complete_integrals, contour_quadrature, elliptic_constants, floquet_exponent_from_integral,
    integrate_polyline, invert_large_energy, monodromy, monodromy_with, ContourIntegrand,
    MonodromyResult, OdeOptions, PeriodTag, PotentialSpecNumeric, QuadOptions, Terms, VSeries,
};
use floquet_core::series::{revert_large_energy, AsymSeries};
use floquet_core::trig::trig_epsilons;
use floquet_core::weier::{
    large_energy_eigenvalue, normalize_lattice, weier_epsilons, weier_to_jacobi_eigenvalue,
    JacobiParamMap, WeierPotential,
};
use num_complex::Complex64 as C;

// Tolerances.
const IDENTITY_TOL: f64 = 1e-10;
const SN2_TOL: f64 = 1e-9;
const TABLE_TOL: f64 = 1e-8;
const ZERO_INTEGRAL_TOL: f64 = 1e-9;
const MATHIEU_FINAL_TOL: f64 = 1e-6;
const DET_TOL: f64 = 1e-9;
const BASE_POINT_TOL: f64 = 1e-9;
const EVEN_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sci(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.1e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn dp(s: &str) -> DiffPoly {
    s.parse().unwrap()
}

fn densities_as_printed() -> Outcome {
    let v = kdv_densities(5);
    let printed = [
        dp("u/2"),
        dp("-u_x/4"),
        dp("-(u^2 - u_xx)/8"),
        dp("2*u^2 - u_xx").total_x_derivative().scale(&pr("1/16")),
        dp("2*u^3 + u_x^2")
            .add(&dp("u_xxx - 6*u*u_x").total_x_derivative())
            .scale(&pr("1/32")),
    ];
    for (l, (got, want)) in v.iter().zip(&printed).enumerate() {
        ensure!(
            got.to_string() == want.to_string(),
            "v_{}: {} vs {}",
            l + 1,
            got,
            want
        );
    }
    Ok("v_1..v_5 equal".into())
}

fn whittaker_hill_eigenvalue() -> Outcome {
    let eps = trig_epsilons(&[pr("theta1"), pr("theta2")], 4);
    let lam = revert_large_energy(&eps).map_err(|e| e.to_string())?;
    let printed = [
        (-2, pr("-1")),
        (0, ParamRat::zero()),
        (2, pr("-(theta1^2 + theta2^2)/2")),
        (4, pr("-(2*theta1^2 + 8*theta2^2 + 3*theta1^2*theta2)/4")),
        (
            6,
            pr(
                "-(16*theta1^2 + 256*theta2^2 + 120*theta1^2*theta2 + 5*theta1^4 \
                + 40*theta1^2*theta2^2 + 5*theta2^4)/32",
            ),
        ),
    ];
    for (e, want) in printed {
        ensure!(lam.coeff(e) == want, "nu^{}: {}", -e, lam.coeff(e));
    }
    Ok("lambda(nu) through 1/nu^6".into())
}

fn weierstrass_epsilons_and_eigenvalue() -> Outcome {
    let ell = WeierPotential::Ellipsoidal {
        alpha1: pr("alpha1"),
        alpha2: pr("alpha2"),
    };
    let eps = weier_epsilons(&ell, 2).map_err(|e| e.to_string())?;
    ensure!(
        eps[0] == pr("-alpha1*zeta1/2 + alpha2*g2/24"),
        "ellipsoidal eps_1: {}",
        eps[0]
    );
    let eps2 = pr("-alpha1^2*g2/96 + alpha1*alpha2*(3*g2*zeta1 - 2*g3)/80 \
                   + alpha2^2*(48*g3*zeta1 - 5*g2^2)/2688");
    ensure!(eps[1] == eps2, "ellipsoidal eps_2: {}", eps[1]);

    let dtv = WeierPotential::Dtv {
        b: [pr("b0"), pr("b1"), pr("b2"), pr("b3")],
    };
    let eps = weier_epsilons(&dtv, 2).map_err(|e| e.to_string())?;
    ensure!(
        eps[0] == pr("-(b0 + b1 + b2 + b3)*zeta1/2"),
        "DTV eps_1: {}",
        eps[0]
    );
    let eps2 = pr("(b0^2 + b1^2 + b2^2 + b3^2)*(e1*e2 + e1*e3 + e2*e3)/24 \
                   - ((b0*b1 + b2*b3)*(e1^2 + e2*e3 - 2*e1*zeta1) \
                   + (b0*b2 + b1*b3)*(e2^2 + e1*e3 - 2*e2*zeta1) \
                   + (b0*b3 + b1*b2)*(e3^2 + e1*e2 - 2*e3*zeta1))/4");
    let same = normalize_lattice(&eps[1]).map_err(|e| e.to_string())?
        == normalize_lattice(&eps2).map_err(|e| e.to_string())?;
    ensure!(same, "DTV eps_2: {}", eps[1]);

    let lam = large_energy_eigenvalue(&ell, 2).map_err(|e| e.to_string())?;
    ensure!(lam.coeff(-2) == pr("-1"), "nu^2: {}", lam.coeff(-2));
    ensure!(
        lam.coeff(0) == pr("(12*alpha1*zeta1 - alpha2*g2)/12"),
        "nu^0: {}",
        lam.coeff(0)
    );
    let l1 = pr(
        "(105*alpha1^2*(12*zeta1^2 - g2) + 84*alpha1*alpha2*(2*g2*zeta1 - 3*g3) \
                 + 10*alpha2^2*(18*g3*zeta1 - g2^2))/5040",
    );
    ensure!(lam.coeff(2) == l1, "nu^-2: {}", lam.coeff(2));
    Ok("ellipsoidal and DTV eps_1, eps_2; lambda through 1/nu^2".into())
}

fn small_energy_eigenvalues() -> Outcome {
    let sym_pot = EllipsoidalJacobi::symbolic();
    let sn = small_energy_eigenvalue(&sym_pot, JacobiMode::Sn, 9).map_err(|e| e.to_string())?;
    let sn_printed = [
        (-1, pr("-2*I*k*mu")),
        (0, pr("-(1 + k^2)*(4*mu^2 - 1)/8")),
        (1, pr("-I/(32*k)*((1 + k^2)^2*(4*mu^3 - 3*mu) - 4*k^2*(4*mu^3 - 5*mu))")),
        (
            2,
            pr("((1 + k^2)*(1 - k^2)^2*(80*mu^4 - 136*mu^2 + 9) + 384*Omega*k^4*(4*mu^2 - 1))/(1024*k^2)"),
        ),
        (
            3,
            pr("I/(8192*k^3)*((1 + k^2)^4*(528*mu^5 - 1640*mu^3 + 405*mu) \
                - 24*k^2*(1 + k^2)^2*(112*mu^5 - 360*mu^3 + 95*mu) \
                + 16*k^4*(144*mu^5 - 520*mu^3 + 173*mu) \
                - 512*Omega*k^4*(1 + k^2)*(4*mu^3 - 11*mu))"),
        ),
    ];
    for (e, want) in sn_printed {
        ensure!(
            sn.coeff(e) == want,
            "sn mode Delta^({}/2): {}",
            -e,
            sn.coeff(e)
        );
    }

    let cn = small_energy_eigenvalue(&sym_pot, JacobiMode::Cn, 9).map_err(|e| e.to_string())?;
    let cn_printed = [
        (-2, pr("-k^2")),
        (-1, pr("2*I*k*mu")),
        (0, pr("-Omega*k^4 + (1 - 2*k^2)*(4*mu^2/kp^2 + 1)/8")),
        (
            1,
            pr("I/k*((1/32)*((1 - 2*k^2)^2/kp*(4*mu^3/kp^3 + 3*mu/kp) \
                + 4*k^2*kp*(4*mu^3/kp^3 + 5*mu/kp)) + 2*Omega*k^4*mu)"),
        ),
        (
            2,
            pr("-1/k^2*((1 - 2*k^2)/(1024*kp^2)*(80*mu^4/kp^4 + 136*mu^2/kp^2 + 9) \
                - 3/8*Omega*k^4*(4*mu^2 + kp^2))"),
        ),
        (
            3,
            pr("-I/k^3*(1/8192*((1 - 2*k^2)^4/kp^3*(528*mu^5/kp^5 + 1640*mu^3/kp^3 + 405*mu/kp) \
                + 24*k^2*(1 - 2*k^2)^2/kp*(112*mu^5/kp^5 + 360*mu^3/kp^3 + 95*mu/kp) \
                + 16*k^4*kp*(144*mu^5/kp^5 + 520*mu^3/kp^3 + 173*mu/kp)) \
                + Omega*k^4/(32*kp^4)*(4*(4*k^4 - 6*k^2 + 3)*mu^3 + kp^2*(36*k^4 - 58*k^2 + 25)*mu) \
                + Omega^2*k^8*mu)"),
        ),
    ];
    for (e, want) in cn_printed {
        ensure!(
            cn.coeff(e) == want,
            "cn mode Delta^({}/2): {}",
            -e,
            cn.coeff(e)
        );
    }

    // Ω = 0: Λ̃(μ; k) = k'² Λ(iμ/k'; ik/k').
    let lame = EllipsoidalJacobi {
        omega: ParamRat::zero(),
        k: pr("k"),
    };
    let sn0 = small_energy_eigenvalue(&lame, JacobiMode::Sn, 9).map_err(|e| e.to_string())?;
    let cn0 = small_energy_eigenvalue(&lame, JacobiMode::Cn, 9).map_err(|e| e.to_string())?;
    for e in -1..4 {
        let mapped = sn0
            .coeff(e)
            .substitute_named(&[("k", pr("I*k/kp")), ("mu", pr("I*mu/kp"))])
            .map_err(|e| e.to_string())?
            .mul(&pr("kp^2"));
        ensure!(
            cn0.coeff(e) == mapped,
            "Lame limits differ at Delta^({}/2)",
            -e
        );
    }
    Ok("sn and cn modes through Delta^(-3/2); Lame limits related".into())
}

/// Coefficients of `k^e` for `e < below`.
fn k_coeffs(x: &ParamRat, below: i32) -> Result<BTreeMap<i32, ParamRat>, String> {
    let all = x.coeffs_in(sym::k()).map_err(|e| e.to_string())?;
    Ok(all.into_iter().filter(|(e, _)| *e < below).collect())
}

fn jacobi_form_from_weierstrass() -> Outcome {
    let ell = WeierPotential::Ellipsoidal {
        alpha1: pr("alpha1"),
        alpha2: pr("alpha2"),
    };
    let lam = large_energy_eigenvalue(&ell, 2).map_err(|e| e.to_string())?;
    let big = weier_to_jacobi_eigenvalue(&lam, &JacobiParamMap::Ellipsoidal, 4)
        .map_err(|e| e.to_string())?;
    ensure!(big.coeff(-2) == pr("-1"), "mu^2: {}", big.coeff(-2));
    let c0 = k_coeffs(&big.coeff(0), 8)?;
    let want0 = k_coeffs(
        &pr("-(Delta/2*k^2 + (Delta + 6*Omega)/16*k^4 + (Delta + 2*Omega)/32*k^6)"),
        8,
    )?;
    ensure!(c0 == want0, "constant part: {c0:?}");
    let c2 = k_coeffs(&big.coeff(2), 8)?;
    let want2 = k_coeffs(&pr("-(Delta^2/32*k^4 + Delta*Omega/16*k^6)"), 8)?;
    ensure!(c2 == want2, "1/mu^2 part: {c2:?}");
    Ok("k^2, k^4, k^6 of mu^0 and k^4, k^6 of mu^-2".into())
}

fn elliptic_identities() -> Outcome {
    let mut worst = (0.0f64, String::new());
    let nomes = [
        re(0.01),
        re(0.05),
        re(0.1),
        re(0.2),
        C::from_polar(0.05, PI / 7.0),
    ];
    for q in nomes {
        let ec = elliptic_constants(q).map_err(|e| e.to_string())?;
        for (name, r) in ec.residuals().map_err(|e| e.to_string())? {
            ensure!(r < IDENTITY_TOL, "q = {q}: {name} residual {r:e}");
            if r > worst.0 {
                worst = (r, format!("{name} at q = {q}"));
            }
        }
    }
    Ok(format!("max residual {:.1e} ({})", worst.0, worst.1))
}

fn contour_suite() -> Outcome {
    let mut worst = 0.0f64;
    for k2 in [0.2, 0.5] {
        let m = re(k2);
        let sn2 = contour_quadrature(&ContourIntegrand::SnPower(2), PeriodTag::Omega1, m)
            .map_err(|e| e.to_string())?;
        let (k, e) = complete_integrals(m).map_err(|e| e.to_string())?;
        let d = (sn2 - 2.0 * (k - e) / k2).norm();
        ensure!(d < SN2_TOL, "sn^2 over 2K at k^2 = {k2}: off by {d:e}");
        let kp = (1.0 - k2).sqrt();
        let i_table = [
            C::new(0.0, PI),
            C::new(0.0, PI * (1.0 + k2) / 2.0),
            C::new(0.0, PI * (3.0 + 2.0 * k2 + 3.0 * k2 * k2) / 8.0),
        ];
        let j_table = [
            C::new(0.0, -PI / kp),
            C::new(0.0, -PI / kp * (1.0 - 2.0 * k2) / (2.0 * kp * kp)),
            C::new(
                0.0,
                -PI / kp * (3.0 - 8.0 * k2 + 8.0 * k2 * k2) / (8.0 * kp.powi(4)),
            ),
        ];
        for (idx, mm) in [-1, -3, -5].into_iter().enumerate() {
            let i = contour_quadrature(&ContourIntegrand::SnPower(mm), PeriodTag::Omega2, m)
                .map_err(|e| e.to_string())?;
            let j = contour_quadrature(&ContourIntegrand::CnPower(mm), PeriodTag::Omega3, m)
                .map_err(|e| e.to_string())?;
            let (di, dj) = ((i - i_table[idx]).norm(), (j - j_table[idx]).norm());
            ensure!(di < TABLE_TOL, "I_{mm} at k^2 = {k2}: off by {di:e}");
            ensure!(dj < TABLE_TOL, "J_{mm} at k^2 = {k2}: off by {dj:e}");
            worst = worst.max(di).max(dj);
        }
        let i1 = contour_quadrature(&ContourIntegrand::SnPower(1), PeriodTag::Omega2, m)
            .map_err(|e| e.to_string())?;
        let j1 = contour_quadrature(&ContourIntegrand::CnPower(1), PeriodTag::Omega3, m)
            .map_err(|e| e.to_string())?;
        ensure!(
            i1.norm() < ZERO_INTEGRAL_TOL && j1.norm() < ZERO_INTEGRAL_TOL,
            "I_1 = {i1}, J_1 = {j1}"
        );
    }
    Ok(format!("max table deviation {worst:.1e}"))
}

/// Monodromy runs made by the oracle comparisons, kept for the structural checks.
struct OracleLog {
    runs: Vec<(String, MonodromyResult, Option<MonodromyResult>)>,
}

fn mathieu_convergence(log: &mut OracleLog) -> Outcome {
    let pot = PotentialSpecNumeric::trig(&[1.0]).map_err(|e| e.to_string())?;
    // λ through ν^{-2}: the lowest order whose error stays above the
    // double-precision floor on this sweep.
    let series =
        revert_large_energy(&trig_epsilons(&[ParamRat::int(1)], 2)).map_err(|e| e.to_string())?;
    // A longer series only to pick the branch among ±θ0 + 2πn.
    let branch =
        revert_large_energy(&trig_epsilons(&[ParamRat::int(1)], 4)).map_err(|e| e.to_string())?;
    let none = BTreeMap::new();
    let mut errs = Vec::new();
    for lambda in [-400.0, -2500.0, -10000.0] {
        let reference =
            invert_large_energy(&branch, re(lambda), &none).map_err(|e| e.to_string())?;
        let opts = OdeOptions::default();
        let m = monodromy_with(
            &pot,
            re(lambda),
            &pot.real_period_path(0.0),
            Some(reference),
            &opts,
        )
        .map_err(|e| e.to_string())?;
        let shifted = monodromy_with(
            &pot,
            re(lambda),
            &pot.real_period_path(0.7),
            Some(reference),
            &opts,
        )
        .map_err(|e| e.to_string())?;
        let nu = m.floquet_exponent;
        let lam_series = series
            .eval_complex(nu.inv(), &none)
            .map_err(|e| e.to_string())?;
        errs.push(((lam_series - lambda) / lambda).norm());
        log.runs
            .push((format!("Mathieu lambda = {lambda}"), m, Some(shifted)));
    }
    ensure!(
        errs.windows(2).all(|w| w[1] < w[0]),
        "not monotone: {}",
        sci(&errs)
    );
    ensure!(
        errs[2] < MATHIEU_FINAL_TOL,
        "error {:.1e} at lambda = -10000",
        errs[2]
    );
    Ok(format!("relative errors {}", sci(&errs)))
}

fn ellipsoidal_values(k2: f64, mu: C) -> BTreeMap<Symbol, C> {
    let mut vals = BTreeMap::new();
    vals.insert(sym::k(), re(k2.sqrt()));
    vals.insert(sym::mu(), mu);
    vals.insert(sym::omega(), re(1.0));
    vals
}

fn ellipsoidal_convergence() -> Outcome {
    let (k2, mu, n) = (0.3, C::new(0.0, 0.35), 9);
    let sym_pot = EllipsoidalJacobi {
        omega: ParamRat::int(1),
        k: pr("k"),
    };
    let lam_series =
        small_energy_eigenvalue(&sym_pot, JacobiMode::Sn, n).map_err(|e| e.to_string())?;
    let v = VSeries::SmallEnergy {
        mode: JacobiMode::Sn,
        densities: small_energy_v(&sym_pot, JacobiMode::Sn, n),
    };
    let mut errs = Vec::new();
    for delta in [100.0, 400.0, 1600.0] {
        let lam = series_value(&lam_series, delta, &ellipsoidal_values(k2, mu))?;
        let pot = PotentialSpecNumeric::ellipsoidal_j(re(delta), re(1.0), re(k2))
            .map_err(|e| e.to_string())?;
        let got = floquet_exponent_from_integral(
            &pot,
            lam,
            &v,
            PeriodTag::Omega2,
            &QuadOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        errs.push((got - mu).norm());
    }
    ensure!(
        errs.windows(2).all(|w| w[1] < w[0]),
        "not monotone: {}",
        sci(&errs)
    );
    Ok(format!("|mu_quad - mu| {}", sci(&errs)))
}

fn series_value(s: &AsymSeries, delta: f64, vals: &BTreeMap<Symbol, C>) -> Result<C, String> {
    s.eval_complex(re(delta.powf(-0.5)), vals)
        .map_err(|e| e.to_string())
}

fn structural(log: &OracleLog) -> Outcome {
    let mut runs: Vec<(String, MonodromyResult, Option<MonodromyResult>)> = log
        .runs
        .iter()
        .map(|(n, a, b)| (n.clone(), *a, *b))
        .collect();
    let ec = elliptic_constants(re(0.05)).map_err(|e| e.to_string())?;
    let lame = PotentialSpecNumeric::ellipsoidal_w_with(re(2.0), re(0.0), ec)
        .map_err(|e| e.to_string())?;
    let m = monodromy(&lame, re(-30.0), &lame.real_period_path(0.0)).map_err(|e| e.to_string())?;
    let shifted =
        monodromy(&lame, re(-30.0), &lame.real_period_path(0.4)).map_err(|e| e.to_string())?;
    runs.push(("Lame Delta = 2, q = 0.05".into(), m, Some(shifted)));
    let (mut det_worst, mut base_worst) = (0.0f64, 0.0f64);
    for (name, a, b) in &runs {
        let d = (a.det - 1.0).norm();
        ensure!(d < DET_TOL, "{name}: |det - 1| = {d:e}");
        det_worst = det_worst.max(d);
        if let Some(b) = b {
            ensure!(
                (b.det - 1.0).norm() < DET_TOL,
                "{name} (shifted): |det - 1| = {:e}",
                (b.det - 1.0).norm()
            );
            let t = (a.trace - b.trace).norm();
            ensure!(
                t < BASE_POINT_TOL,
                "{name}: trace moved by {t:e} with the base point"
            );
            base_worst = base_worst.max(t);
        }
    }

    // Even densities: large energy over the real period, small energy over
    // the straight imaginary period.
    let mut even_worst = 0.0f64;
    let mathieu = PotentialSpecNumeric::trig(&[1.0]).map_err(|e| e.to_string())?;
    let v = VSeries::LargeEnergy {
        densities: kdv_densities(8),
    };
    let f = v
        .evaluator_terms(&mathieu, re(-2500.0), Terms::Even)
        .map_err(|e| e.to_string())?;
    let int = integrate_polyline(&f, &mathieu.real_period_path(0.3), &QuadOptions::default())
        .map_err(|e| e.to_string())?
        .value;
    ensure!(
        int.norm() < EVEN_TOL,
        "Mathieu even densities integrate to {int}"
    );
    even_worst = even_worst.max(int.norm());
    let sym_pot = EllipsoidalJacobi {
        omega: ParamRat::int(1),
        k: pr("k"),
    };
    let pot = PotentialSpecNumeric::ellipsoidal_j(re(100.0), re(1.0), re(0.3))
        .map_err(|e| e.to_string())?;
    let j = pot.jacobi().unwrap();
    for (mode, tag) in [
        (JacobiMode::Sn, PeriodTag::Omega2),
        (JacobiMode::Cn, PeriodTag::Omega3),
    ] {
        let v = VSeries::SmallEnergy {
            mode,
            densities: small_energy_v(&sym_pot, mode, 6),
        };
        let f = v
            .evaluator_terms(&pot, re(2.3), Terms::Even)
            .map_err(|e| e.to_string())?;
        let int = integrate_polyline(&f, &tag.paths(j)[0], &QuadOptions::default())
            .map_err(|e| e.to_string())?
            .value;
        ensure!(
            int.norm() < EVEN_TOL,
            "{mode:?} even densities integrate to {int}"
        );
        even_worst = even_worst.max(int.norm());
    }
    Ok(format!(
        "{} runs: |det-1| <= {det_worst:.1e}, trace shift <= {base_worst:.1e}; even integrals <= {even_worst:.1e}",
        runs.len()
    ))
}

#[test]
fn acceptance() {
    let mut log = OracleLog { runs: Vec::new() };
    let mut failures = 0;
    // The harness prints "test acceptance ... " without a newline.
    println!();
    let mut report = |id: &str, what: &str, budget: f64, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs_f64(budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "[{status}] {id} {what} ({:.2} s / {budget} s): {detail}",
            elapsed.as_secs_f64()
        );
    };
    report("1", "KdV densities", 1.0, &mut densities_as_printed);
    report(
        "2",
        "Whittaker-Hill eigenvalue",
        5.0,
        &mut whittaker_hill_eigenvalue,
    );
    report(
        "3",
        "Weierstrass epsilons and eigenvalue",
        30.0,
        &mut weierstrass_epsilons_and_eigenvalue,
    );
    report(
        "4",
        "small-energy eigenvalues",
        60.0,
        &mut small_energy_eigenvalues,
    );
    report(
        "5",
        "Jacobi form in powers of k",
        60.0,
        &mut jacobi_form_from_weierstrass,
    );
    report(
        "6",
        "theta and lattice identities",
        1.0,
        &mut elliptic_identities,
    );
    report("7", "contour integrals", 10.0, &mut contour_suite);
    let mut oracle = || -> Outcome {
        let a = mathieu_convergence(&mut log)?;
        let b = ellipsoidal_convergence()?;
        Ok(format!("Mathieu {a}; ellipsoidal {b}"))
    };
    report("8", "series vs oracle convergence", 120.0, &mut oracle);
    report("9", "structural checks", 30.0, &mut || structural(&log));
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
