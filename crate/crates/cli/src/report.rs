//! Text and structured rendering.

use std::fmt::Write;

use floquet_core::series::AsymSeries;
use num_complex::Complex64 as C;
use num_traits::{One, Signed, Zero};

pub struct Report {
    pub structured: bool,
    pub out: String,
}

/// Fixed-width scientific form, stable across runs.
pub fn num(z: C) -> String {
    if z.im == 0.0 {
        format!("{:.12e}", z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{:.12e}{sign}{:.12e}i", z.re, z.im.abs())
    }
}

pub fn short(x: f64) -> String {
    format!("{x:.3e}")
}

fn is_simple(c: &str) -> bool {
    let body = c.strip_prefix('-').unwrap_or(c);
    !body.contains([' ', '+', '-'])
}

/// One-line rendering `-nu^2 + (c)*nu^-2` and the truncation term.
pub fn series_text(s: &AsymSeries) -> (String, Option<String>) {
    let param = s.param();
    let power = |p: &floquet_core::coeffring::Rational| -> String {
        if p.is_one() {
            param.base.to_string()
        } else if p.is_integer() {
            format!("{}^{p}", param.base)
        } else {
            format!("{}^({p})", param.base)
        }
    };
    let mut terms = s.terms();
    terms.sort_by_key(|t| std::cmp::Reverse(param.base_exponent(t.0)));
    let mut text = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let p = param.base_exponent(*e);
        let cs = c.to_string();
        let term = if p.is_zero() {
            if is_simple(&cs) {
                cs
            } else {
                format!("({cs})")
            }
        } else if c.is_one() {
            power(&p)
        } else if cs == "-1" {
            format!("-{}", power(&p))
        } else if is_simple(&cs) {
            format!("{cs}*{}", power(&p))
        } else {
            format!("({cs})*{}", power(&p))
        };
        if i == 0 {
            text.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            let _ = write!(text, " - {rest}");
        } else {
            let _ = write!(text, " + {term}");
        }
    }
    if text.is_empty() {
        text.push('0');
    }
    let trunc = (!s.is_exact()).then(|| {
        let p = param.base_exponent(s.order());
        let p = if p.is_integer() && !p.is_negative() {
            p.to_string()
        } else {
            format!("({p})")
        };
        format!("O({}^{p})", param.base)
    });
    (text, trunc)
}

impl Report {
    pub fn new(structured: bool) -> Report {
        Report {
            structured,
            out: String::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.structured {
            let _ = writeln!(self.out, "{key}\t{value}");
        } else {
            let _ = writeln!(self.out, "{key}: {value}");
        }
    }

    pub fn series(&mut self, name: &str, s: &AsymSeries) {
        if self.structured {
            let _ = writeln!(self.out, "series\t{name}");
            let _ = writeln!(self.out, "variable\t{}", s.param().base);
            for line in s.structured_lines() {
                let _ = writeln!(self.out, "{line}");
            }
            if !s.is_exact() {
                let _ = writeln!(
                    self.out,
                    "truncation\t{}",
                    s.param().base_exponent(s.order())
                );
            }
        } else {
            let (text, trunc) = series_text(s);
            let _ = writeln!(self.out, "{name} = {text}");
            if let Some(t) = trunc {
                let _ = writeln!(self.out, "  + {t}");
            }
        }
    }

    /// A verification row. `fields` are (name, value) pairs.
    pub fn row(&mut self, index: usize, fields: &[(&str, String)], pass: bool) {
        let status = if pass { "pass" } else { "FAIL" };
        if self.structured {
            let mut line = format!("row[{index}]");
            for (k, v) in fields {
                let _ = write!(line, "\t{k}={v}");
            }
            let _ = writeln!(self.out, "{line}\tstatus={status}");
        } else {
            let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k} {v}")).collect();
            let _ = writeln!(self.out, "[{status}] {}", body.join(", "));
        }
    }
}
