//! Job specification: the potential grammar, regimes and the key=value
//! config file.

use std::collections::BTreeMap;
use std::fmt;

use floquet_core::coeffring::{parse_param_rat, ParamRat};
use num_complex::Complex64 as C;

use crate::Failure;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `Σ 2θ_n cos 2nx`.
    Trig {
        theta: Vec<ParamRat>,
    },
    /// `Δ℘(x)` for large energy, `Δk²sn²z` for small energy.
    Lame {
        delta: ParamRat,
    },
    EllipsoidalW {
        alpha1: ParamRat,
        alpha2: ParamRat,
    },
    Dtv {
        b: [ParamRat; 4],
    },
    EllipsoidalJ {
        delta: ParamRat,
        omega: ParamRat,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub family: Family,
    /// Exact modulus for symbolic small-energy work; `k` stays a symbol
    /// when absent.
    pub k: Option<ParamRat>,
    /// Numeric `k²` for the oracle.
    pub k2: Option<C>,
    /// Original text, echoed in reports.
    pub text: String,
}

impl Potential {
    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Trig { .. } => "trig",
            Family::Lame { .. } => "lame",
            Family::EllipsoidalW { .. } => "ellipsoidal-w",
            Family::Dtv { .. } => "dtv",
            Family::EllipsoidalJ { .. } => "ellipsoidal-j",
        }
    }

    pub fn has_jacobi_form(&self) -> bool {
        matches!(
            self.family,
            Family::Lame { .. } | Family::EllipsoidalJ { .. }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    LargeEnergy,
    SmallEnergySn,
    SmallEnergyCn,
}

impl Regime {
    pub fn parse(text: &str) -> Result<Regime, Failure> {
        match text.trim() {
            "large-energy" => Ok(Regime::LargeEnergy),
            "small-energy-sn" => Ok(Regime::SmallEnergySn),
            "small-energy-cn" => Ok(Regime::SmallEnergyCn),
            other => Err(Failure::Usage(format!(
                "unknown regime `{other}` (expected large-energy, small-energy-sn or small-energy-cn)"
            ))),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::LargeEnergy => "large-energy",
            Regime::SmallEnergySn => "small-energy-sn",
            Regime::SmallEnergyCn => "small-energy-cn",
        })
    }
}

/// Splits on commas outside brackets.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter()
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn value(key: &str, text: &str) -> Result<ParamRat, Failure> {
    parse_param_rat(text).map_err(|e| Failure::Usage(format!("bad value for `{key}`: {e}")))
}

fn list(key: &str, text: &str) -> Result<Vec<ParamRat>, Failure> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Failure::Usage(format!("`{key}` expects a list like [a, b]")))?;
    split_top(inner)
        .into_iter()
        .map(|t| value(key, t))
        .collect()
}

/// Numeric value of an exact parameter; symbols are rejected.
pub fn numeric(name: &str, p: &ParamRat) -> Result<C, Failure> {
    p.eval_complex(&BTreeMap::new())
        .map_err(|_| Failure::Usage(format!("`{name}` must be numeric here, got `{p}`")))
}

/// Parses `family: key=value, key=[a, b], …`.
pub fn parse_potential(text: &str) -> Result<Potential, Failure> {
    let (fam, rest) = text.split_once(':').ok_or_else(|| {
        Failure::Usage(format!(
            "potential `{text}` needs the form `family: key=value, …`"
        ))
    })?;
    let mut params: BTreeMap<String, String> = BTreeMap::new();
    for item in split_top(rest) {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            Failure::Usage(format!("parameter `{item}` needs the form key=value"))
        })?;
        if params
            .insert(k.trim().to_string(), v.trim().to_string())
            .is_some()
        {
            return Err(Failure::Usage(format!(
                "parameter `{}` given twice",
                k.trim()
            )));
        }
    }
    let mut take = |key: &str| params.remove(key);
    let need = |key: &str, v: Option<String>| {
        v.ok_or_else(|| Failure::Usage(format!("potential `{}` needs `{key}=`", fam.trim())))
    };
    let family = match fam.trim() {
        "trig" => Family::Trig { theta: list("theta", &need("theta", take("theta"))?)? },
        "lame" => Family::Lame { delta: value("delta", &need("delta", take("delta"))?)? },
        "ellipsoidal-w" => Family::EllipsoidalW {
            alpha1: value("alpha1", &need("alpha1", take("alpha1"))?)?,
            alpha2: value("alpha2", &need("alpha2", take("alpha2"))?)?,
        },
        "dtv" => {
            let b = list("b", &need("b", take("b"))?)?;
            let b: [ParamRat; 4] =
                b.try_into().map_err(|_| Failure::Usage("`b` needs exactly four couplings".into()))?;
            Family::Dtv { b }
        }
        "ellipsoidal-j" => Family::EllipsoidalJ {
            delta: value("delta", &need("delta", take("delta"))?)?,
            omega: value("omega", &need("omega", take("omega"))?)?,
        },
        other => {
            return Err(Failure::Usage(format!(
                "unknown potential family `{other}` (expected trig, lame, ellipsoidal-w, dtv or ellipsoidal-j)"
            )))
        }
    };
    let is_trig = matches!(family, Family::Trig { .. });
    let k = take("k").map(|t| value("k", &t)).transpose()?;
    let k2 = match take("k2") {
        Some(t) => Some(numeric("k2", &value("k2", &t)?)?),
        None => None,
    };
    if is_trig && (k.is_some() || k2.is_some()) {
        return Err(Failure::Usage("trig potentials take no modulus".into()));
    }
    if let Some(extra) = params.keys().next() {
        return Err(Failure::Usage(format!(
            "unknown parameter `{extra}` for `{}`",
            fam.trim()
        )));
    }
    Ok(Potential {
        family,
        k,
        k2,
        text: text.trim().to_string(),
    })
}

/// Reads a `key = value` file; `#` starts a comment.
pub fn read_config(path: &str) -> Result<BTreeMap<String, String>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}")))?;
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("{path}:{}: expected key=value", n + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Comma-separated real samples.
pub fn parse_samples(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("bad sample value `{}`", t.trim())))
        })
        .collect()
}

pub fn parse_complex(name: &str, text: &str) -> Result<C, Failure> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<C>()
        .map_err(|_| Failure::Usage(format!("bad complex value for `{name}`: `{text}`")))
}
