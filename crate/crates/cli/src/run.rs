//! The three subcommands.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use floquet_core::coeffring::{sym, ParamRat, Symbol};
use floquet_core::jacobi::{
    small_energy_eigenvalue, small_energy_mu, small_energy_v, EllipsoidalJacobi, JacobiMode,
};
use floquet_core::numerics::{
    elliptic_constants, elliptic_constants_from_k2, floquet_exponent_from_integral,
    invert_large_energy, k_expansion_constants, monodromy_with, EllipticConstants, MonodromyResult,
    OdeOptions, PeriodTag, PotentialSpecNumeric, QuadOptions, VSeries,
};
use floquet_core::series::{revert_large_energy, AsymSeries};
use floquet_core::trig::trig_epsilons;
use floquet_core::weier::{
    large_energy_eigenvalue, weier_epsilons, weier_to_jacobi_eigenvalue, JacobiParamMap,
    WeierPotential,
};
use num_complex::Complex64 as C;

use crate::job::{
    numeric, parse_complex, parse_potential, parse_samples, read_config, Family, Potential, Regime,
};
use crate::report::{num, short, Report};
use crate::{Cli, Command, Failure};

/// `|det M - 1|` allowed on the sanity row.
const DET_TOL: f64 = 1e-9;
const DEFAULT_MU: C = C::new(0.0, 0.35);
const CONFIG_KEYS: [&str; 10] = [
    "potential",
    "regime",
    "order",
    "format",
    "tolerance",
    "at",
    "mu",
    "k-order",
    "q",
    "k2",
];

struct Settings {
    values: BTreeMap<&'static str, String>,
}

impl Settings {
    fn new(cli: &Cli) -> Result<Settings, Failure> {
        let mut values = BTreeMap::new();
        if let Some(path) = &cli.config {
            for (k, v) in read_config(path)? {
                let key = CONFIG_KEYS
                    .iter()
                    .find(|c| **c == k)
                    .ok_or_else(|| Failure::Usage(format!("unknown config key `{k}`")))?;
                values.insert(*key, v);
            }
        }
        let flags = [
            ("potential", &cli.potential),
            ("regime", &cli.regime),
            ("order", &cli.order),
            ("format", &cli.format),
            ("tolerance", &cli.tolerance),
            ("at", &cli.at),
            ("mu", &cli.mu),
            ("k-order", &cli.k_order),
            ("q", &cli.q),
            ("k2", &cli.k2),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                values.insert(k, v.clone());
            }
        }
        Ok(Settings { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn structured(&self) -> Result<bool, Failure> {
        match self.get("format").unwrap_or("text") {
            "text" => Ok(false),
            "structured" => Ok(true),
            other => Err(Failure::Usage(format!(
                "unknown format `{other}` (expected text or structured)"
            ))),
        }
    }

    fn regime(&self) -> Result<Regime, Failure> {
        Regime::parse(self.get("regime").unwrap_or("large-energy"))
    }

    fn int(&self, key: &str, default: i64) -> Result<i64, Failure> {
        match self.get(key) {
            None => Ok(default),
            Some(t) => t
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("`{key}` must be an integer, got `{t}`"))),
        }
    }

    fn order(&self, regime: Regime) -> Result<usize, Failure> {
        let default = if regime == Regime::LargeEnergy { 3 } else { 9 };
        let n = self.int("order", default)?;
        if n < 1 {
            return Err(Failure::Usage("order must be at least 1".into()));
        }
        Ok(n as usize)
    }

    fn tolerance(&self, default: f64) -> Result<f64, Failure> {
        match self.get("tolerance") {
            None => Ok(default),
            Some(t) => match t.trim().parse::<f64>() {
                Ok(x) if x > 0.0 => Ok(x),
                _ => Err(Failure::Usage(format!(
                    "tolerance must be a positive number, got `{t}`"
                ))),
            },
        }
    }

    fn potential(&self, regime: Regime) -> Result<Potential, Failure> {
        let text = self
            .get("potential")
            .ok_or_else(|| Failure::Usage("missing --potential".into()))?;
        let pot = parse_potential(text)?;
        if regime != Regime::LargeEnergy && !pot.has_jacobi_form() {
            return Err(Failure::Usage(format!(
                "regime {regime} needs a Jacobi-form potential (lame or ellipsoidal-j), got {}",
                pot.name()
            )));
        }
        Ok(pot)
    }
}

pub fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let settings = Settings::new(cli)?;
    let mut report = Report::new(settings.structured()?);
    let result = match cli.command {
        Command::Expand => expand(&settings, &mut report),
        Command::Verify => verify(&settings, &mut report),
        Command::Constants => constants(&settings, &mut report),
    };
    out.push_str(&report.out);
    result
}

fn mode_of(regime: Regime) -> JacobiMode {
    if regime == Regime::SmallEnergyCn {
        JacobiMode::Cn
    } else {
        JacobiMode::Sn
    }
}

fn weier_potential(family: &Family) -> Option<WeierPotential> {
    match family {
        Family::Lame { delta } => Some(WeierPotential::lame(delta.clone())),
        Family::EllipsoidalW { alpha1, alpha2 } => Some(WeierPotential::Ellipsoidal {
            alpha1: alpha1.clone(),
            alpha2: alpha2.clone(),
        }),
        Family::Dtv { b } => Some(WeierPotential::Dtv { b: b.clone() }),
        _ => None,
    }
}

fn jacobi_potential(pot: &Potential) -> EllipsoidalJacobi {
    let omega = match &pot.family {
        Family::EllipsoidalJ { omega, .. } => omega.clone(),
        _ => ParamRat::zero(),
    };
    EllipsoidalJacobi {
        omega,
        k: pot.k.clone().unwrap_or_else(|| ParamRat::sym(sym::k())),
    }
}

fn header(report: &mut Report, pot: &Potential, regime: Regime, order: usize) {
    report.field("potential", &pot.text);
    report.field("regime", regime);
    report.field("order", order);
}

fn expand(settings: &Settings, report: &mut Report) -> Result<(), Failure> {
    let regime = settings.regime()?;
    let order = settings.order(regime)?;
    let pot = settings.potential(regime)?;
    header(report, &pot, regime, order);
    if regime != Regime::LargeEnergy {
        let ej = jacobi_potential(&pot);
        let mode = mode_of(regime);
        report.field("energy", mode.energy_symbol());
        report.series("mu", &small_energy_mu(&ej, mode, order)?);
        report.series("Lambda", &small_energy_eigenvalue(&ej, mode, order)?);
        return Ok(());
    }
    let eps = match &pot.family {
        Family::Trig { theta } => trig_epsilons(theta, order),
        Family::EllipsoidalJ { delta, omega } => {
            let k_order = settings.int("k-order", 4)?;
            let generic = WeierPotential::Ellipsoidal {
                alpha1: ParamRat::sym(sym::alpha1()),
                alpha2: ParamRat::sym(sym::alpha2()),
            };
            let lam = large_energy_eigenvalue(&generic, order)?;
            let big =
                weier_to_jacobi_eigenvalue(&lam, &JacobiParamMap::Ellipsoidal, k_order as i32)?;
            let mut bind = vec![("Delta", delta.clone()), ("Omega", omega.clone())];
            if let Some(k) = &pot.k {
                bind.push(("k", k.clone()));
            }
            let big = big.map_coeffs(|c| c.substitute_named(&bind))?;
            report.field("k-order", k_order);
            report.series("Lambda", &big);
            return Ok(());
        }
        family => weier_epsilons(&weier_potential(family).expect("Weierstrass family"), order)?,
    };
    for (l, e) in eps.iter().enumerate() {
        report.field(&format!("eps[{}]", l + 1), e);
    }
    report.series("lambda", &revert_large_energy(&eps)?);
    Ok(())
}

fn lattice_values(ec: &EllipticConstants) -> BTreeMap<Symbol, C> {
    let mut v = BTreeMap::new();
    v.insert(sym::e1(), ec.e[0]);
    v.insert(sym::e2(), ec.e[1]);
    v.insert(sym::e3(), ec.e[2]);
    v.insert(sym::g2(), ec.g2);
    v.insert(sym::g3(), ec.g3);
    v.insert(sym::zeta1(), ec.zeta1);
    v
}

fn need_k2(pot: &Potential) -> Result<C, Failure> {
    pot.k2.ok_or_else(|| {
        Failure::Usage(format!(
            "verification of `{}` needs a numeric k2=",
            pot.name()
        ))
    })
}

/// The numeric side of a large-energy comparison: the potential the ODE
/// runs on, `λ ↦` its energy, and `ν = scale · (its exponent)`.
struct LargeOracle {
    potential: PotentialSpecNumeric,
    energy_shift: C,
    energy_scale: C,
    exponent_scale: C,
    values: BTreeMap<Symbol, C>,
}

fn large_oracle(pot: &Potential) -> Result<LargeOracle, Failure> {
    let plain = |potential| LargeOracle {
        potential,
        energy_shift: C::new(0.0, 0.0),
        energy_scale: C::new(1.0, 0.0),
        exponent_scale: C::new(1.0, 0.0),
        values: BTreeMap::new(),
    };
    match &pot.family {
        Family::Trig { theta } => {
            let mut t = Vec::new();
            for (i, p) in theta.iter().enumerate() {
                let z = numeric(&format!("theta{}", i + 1), p)?;
                if z.im != 0.0 {
                    return Err(Failure::Usage(
                        "trig couplings must be real for verification".into(),
                    ));
                }
                t.push(z.re);
            }
            Ok(plain(PotentialSpecNumeric::trig(&t)?))
        }
        Family::Lame { delta } => {
            let ec = elliptic_constants_from_k2(need_k2(pot)?)?;
            let values = lattice_values(&ec);
            let p = PotentialSpecNumeric::ellipsoidal_w_with(
                numeric("delta", delta)?,
                C::new(0.0, 0.0),
                ec,
            )?;
            Ok(LargeOracle { values, ..plain(p) })
        }
        Family::EllipsoidalW { alpha1, alpha2 } => {
            let ec = elliptic_constants_from_k2(need_k2(pot)?)?;
            let values = lattice_values(&ec);
            let p = PotentialSpecNumeric::ellipsoidal_w_with(
                numeric("alpha1", alpha1)?,
                numeric("alpha2", alpha2)?,
                ec,
            )?;
            Ok(LargeOracle { values, ..plain(p) })
        }
        Family::Dtv { b } => {
            // Jacobi form with z = (e1 - e2)^(1/2) x - iK': the x-period π is
            // the z-period 2K and Λ = (λ + e2 Σb)/(e1 - e2).
            let k2 = need_k2(pot)?;
            let ec = elliptic_constants_from_k2(k2)?;
            let mut bn = [C::new(0.0, 0.0); 4];
            for (i, p) in b.iter().enumerate() {
                bn[i] = numeric(&format!("b{i}"), p)?;
            }
            let d = ec.e[0] - ec.e[1];
            let sum: C = bn.iter().sum();
            Ok(LargeOracle {
                potential: PotentialSpecNumeric::dtv(bn, k2)?,
                energy_shift: ec.e[1] * sum,
                energy_scale: d.inv(),
                exponent_scale: 2.0 * ec.big_k / PI,
                values: lattice_values(&ec),
            })
        }
        Family::EllipsoidalJ { .. } => Err(Failure::Usage(
            "large-energy verification runs on the Weierstrass form; use ellipsoidal-w".into(),
        )),
    }
}

/// One verified sample, or the error that stopped it.
type RowResult = Result<(Vec<(&'static str, String)>, bool, Option<f64>), Failure>;

fn verify(settings: &Settings, report: &mut Report) -> Result<(), Failure> {
    let regime = settings.regime()?;
    let order = settings.order(regime)?;
    let pot = settings.potential(regime)?;
    let tol = settings.tolerance(1e-6)?;
    header(report, &pot, regime, order);
    report.field("tolerance", short(tol));
    let samples = match settings.get("at") {
        Some(t) => Some(parse_samples(t)?),
        None => None,
    };
    let rows: Vec<RowResult> = if regime == Regime::LargeEnergy {
        let oracle = large_oracle(&pot)?;
        let series = match &pot.family {
            Family::Trig { theta } => revert_large_energy(&trig_epsilons(theta, order))?,
            family => large_energy_eigenvalue(
                &weier_potential(family).expect("Weierstrass family"),
                order,
            )?,
        };
        let samples = samples.unwrap_or_else(|| vec![-2500.0]);
        samples
            .iter()
            .map(|&l| large_row(&oracle, &series, l, tol))
            .collect()
    } else {
        let (delta, omega, k2) = small_numeric(&pot)?;
        let mu = match settings.get("mu") {
            Some(t) => parse_complex("mu", t)?,
            None => DEFAULT_MU,
        };
        report.field("mu", num(mu));
        let ej = EllipsoidalJacobi {
            k: ParamRat::sym(sym::k()),
            ..jacobi_potential(&pot)
        };
        let mode = mode_of(regime);
        let lam_series = small_energy_eigenvalue(&ej, mode, order)?;
        let v = VSeries::SmallEnergy {
            mode,
            densities: small_energy_v(&ej, mode, order),
        };
        let samples = samples.unwrap_or_else(|| vec![delta.re]);
        samples
            .iter()
            .map(|&d| small_row(mode, &lam_series, &v, d, omega, k2, mu, tol))
            .collect()
    };

    let mut all_failed = true;
    let mut any_failed = false;
    let mut first_error = None;
    let mut det_worst: Option<f64> = None;
    for (i, row) in rows.into_iter().enumerate() {
        match row {
            Ok((fields, pass, det)) => {
                all_failed = false;
                any_failed |= !pass;
                if let Some(d) = det {
                    det_worst = Some(det_worst.map_or(d, |w: f64| w.max(d)));
                }
                report.row(i + 1, &fields, pass);
            }
            Err(e) => {
                any_failed = true;
                let msg = match &e {
                    Failure::Usage(m) | Failure::Numeric(m) => m.clone(),
                    Failure::Verify => "failed".into(),
                };
                report.row(i + 1, &[("error", msg)], false);
                first_error.get_or_insert(e);
            }
        }
    }
    let det_pass = det_worst.is_some_and(|d| d < DET_TOL);
    let det_text = det_worst.map_or_else(|| "none".to_string(), short);
    report.row(
        0,
        &[
            ("check", "det-M".into()),
            ("max_scaled_det_residual", det_text),
            ("limit", short(DET_TOL)),
        ],
        det_pass,
    );
    if all_failed {
        return Err(first_error.unwrap_or(Failure::Verify));
    }
    if any_failed || !det_pass {
        return Err(Failure::Verify);
    }
    Ok(())
}

fn large_row(o: &LargeOracle, series: &AsymSeries, lambda: f64, tol: f64) -> RowResult {
    let lam = C::new(lambda, 0.0);
    let nu_ref = invert_large_energy(series, lam, &o.values)?;
    let energy = (lam + o.energy_shift) * o.energy_scale;
    let m = monodromy_with(
        &o.potential,
        energy,
        &o.potential.real_period_path(0.0),
        Some(nu_ref / o.exponent_scale),
        &OdeOptions::default(),
    )?;
    let nu = m.floquet_exponent * o.exponent_scale;
    let lam_series = series.eval_complex(nu.inv(), &o.values)?;
    let err = ((lam_series - lam) / lam).norm();
    let fields = vec![
        ("lambda", num(lam)),
        ("nu_oracle", num(nu)),
        ("lambda_series", num(lam_series)),
        ("rel_err", short(err)),
    ];
    Ok((fields, err < tol, Some(det_residual(&m))))
}

/// `|det M - 1|` relative to `‖M‖²`, the size of the products the
/// determinant is formed from. Below the spectrum the real-period
/// monodromy is hyperbolic with entries far above 1, and the unscaled
/// residual then only measures cancellation.
fn det_residual(m: &MonodromyResult) -> f64 {
    let size: f64 = m.matrix.iter().flatten().map(|z| z.norm_sqr()).sum();
    (m.det - 1.0).norm() / size.max(1.0)
}

fn small_numeric(pot: &Potential) -> Result<(C, C, C), Failure> {
    let k2 = need_k2(pot)?;
    match &pot.family {
        Family::Lame { delta } => Ok((numeric("delta", delta)?, C::new(0.0, 0.0), k2)),
        Family::EllipsoidalJ { delta, omega } => {
            Ok((numeric("delta", delta)?, numeric("omega", omega)?, k2))
        }
        _ => unreachable!("regime checked against the family"),
    }
}

#[allow(clippy::too_many_arguments)]
fn small_row(
    mode: JacobiMode,
    lam_series: &AsymSeries,
    v: &VSeries,
    delta: f64,
    omega: C,
    k2: C,
    mu: C,
    tol: f64,
) -> RowResult {
    let mut values = BTreeMap::new();
    values.insert(sym::k(), k2.sqrt());
    values.insert(sym::mu(), mu);
    let lam = lam_series.eval_complex(C::new(delta.powf(-0.5), 0.0), &values)?;
    let pot = PotentialSpecNumeric::ellipsoidal_j(C::new(delta, 0.0), omega, k2)?;
    let tag = if mode == JacobiMode::Sn {
        PeriodTag::Omega2
    } else {
        PeriodTag::Omega3
    };
    let mu_quad = floquet_exponent_from_integral(&pot, lam, v, tag, &QuadOptions::default())?;
    let err = ((mu_quad - mu) / mu).norm();
    // Sanity ODE run over the real period at the same energy.
    let opts = OdeOptions {
        det_tol: f64::INFINITY,
        ..Default::default()
    };
    let det = monodromy_with(&pot, lam, &pot.real_period_path(0.0), None, &opts)
        .ok()
        .map(|m| det_residual(&m));
    let fields = vec![
        ("Delta", short(delta)),
        ("Lambda_series", num(lam)),
        ("mu_quadrature", num(mu_quad)),
        ("rel_err", short(err)),
    ];
    Ok((fields, err < tol, det))
}

fn constants(settings: &Settings, report: &mut Report) -> Result<(), Failure> {
    let tol = settings.tolerance(1e-10)?;
    let ec = match (settings.get("q"), settings.get("k2")) {
        (Some(q), None) => elliptic_constants(parse_complex("q", q)?)?,
        (None, Some(k2)) => elliptic_constants_from_k2(parse_complex("k2", k2)?)?,
        _ => {
            return Err(Failure::Usage(
                "constants needs exactly one of --q or --k2".into(),
            ))
        }
    };
    let fields = [
        ("q", ec.q),
        ("jacobi_nome", ec.theta.nome),
        ("k2", ec.k2),
        ("kp2", ec.kp2),
        ("theta2", ec.theta.theta2),
        ("theta3", ec.theta.theta3),
        ("theta4", ec.theta.theta4),
        ("e1", ec.e[0]),
        ("e2", ec.e[1]),
        ("e3", ec.e[2]),
        ("g2", ec.g2),
        ("g3", ec.g3),
        ("zeta1", ec.zeta1),
        ("K", ec.big_k),
        ("Kp", ec.big_kp),
        ("E", ec.big_e),
        ("K_agm", ec.agm_k),
        ("E_agm", ec.agm_e),
    ];
    for (k, v) in fields {
        report.field(k, num(v));
    }
    report.field("omega1", format!("{:.12e}", ec.omega1));
    let mut ok = true;
    for (name, r) in ec.residuals()? {
        let pass = r < tol;
        ok &= pass;
        report.field(
            &format!("residual[{name}]"),
            format!("{} {}", short(r), if pass { "pass" } else { "FAIL" }),
        );
    }
    if let Some(t) = settings.get("order") {
        let n: i32 = t
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("`order` must be an integer, got `{t}`")))?;
        let kx = k_expansion_constants(n)?;
        for (name, s) in [
            ("e1", &kx.e1),
            ("e2", &kx.e2),
            ("e3", &kx.e3),
            ("zeta1", &kx.zeta1),
            ("g2", &kx.g2),
            ("g3", &kx.g3),
        ] {
            report.series(name, s);
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
