use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const MAX_NAME: usize = 13;

/// A named parameter symbol.
///
/// Built-in names carry a fixed rank so that monomial ordering (and hence
/// printing) is stable; other names sort after them alphabetically.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol {
    rank: u16,
    len: u8,
    bytes: [u8; MAX_NAME],
}

const BUILTIN: &[&str] = &[
    "Delta", "Omega", "Lambda", "LambdaT", "mu", "nu", "alpha1", "alpha2", "b0", "b1", "b2", "b3",
    "theta1", "theta2", "theta3", "theta4", "theta5", "theta6", "theta7", "theta8", "theta9", "e1",
    "e2", "e3", "g2", "g3", "zeta1", "k", "kp", "I",
];

const USER_RANK: u16 = 1000;

impl Symbol {
    /// Looks up or creates a symbol. Names must be ASCII identifiers of at most
    /// 13 bytes.
    pub fn new(name: &str) -> Result<Symbol> {
        let ok_start = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        let ok_rest = name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok_start || !ok_rest || name.len() > MAX_NAME {
            return Err(Error::UnknownSymbol(name.to_string()));
        }
        let rank = BUILTIN
            .iter()
            .position(|b| *b == name)
            .map_or(USER_RANK, |p| p as u16);
        let mut bytes = [0u8; MAX_NAME];
        bytes[..name.len()].copy_from_slice(name.as_bytes());
        Ok(Symbol {
            rank,
            len: name.len() as u8,
            bytes,
        })
    }

    /// Built-in symbol by name; panics on an unknown built-in name.
    pub fn builtin(name: &str) -> Symbol {
        let s = Symbol::new(name).expect("valid symbol name");
        assert!(s.rank < USER_RANK, "not a built-in symbol: {name}");
        s
    }

    pub fn name(&self) -> &str {
        std::str::from_utf8(&self.bytes[..self.len as usize]).expect("ascii name")
    }

    /// Symbols that may carry negative exponents.
    pub fn is_laurent(&self) -> bool {
        *self == sym::k() || *self == sym::kp()
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.name().cmp(other.name()))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shorthands for the built-in symbols.
pub mod sym {
    use super::Symbol;

    macro_rules! builtin {
        ($($f:ident => $n:expr),* $(,)?) => {
            $(pub fn $f() -> Symbol { Symbol::builtin($n) })*
        };
    }

    builtin! {
        delta => "Delta", omega => "Omega", lambda => "Lambda", lambda_t => "LambdaT",
        mu => "mu", nu => "nu", alpha1 => "alpha1", alpha2 => "alpha2",
        e1 => "e1", e2 => "e2", e3 => "e3", g2 => "g2", g3 => "g3", zeta1 => "zeta1",
        k => "k", kp => "kp", i => "I",
    }

    pub fn b(s: usize) -> Symbol {
        Symbol::builtin(["b0", "b1", "b2", "b3"][s])
    }

    /// `theta<n>` for n ≥ 1; built-in rank for n ≤ 9.
    pub fn theta(n: usize) -> Symbol {
        Symbol::new(&format!("theta{n}")).expect("valid theta name")
    }
}
