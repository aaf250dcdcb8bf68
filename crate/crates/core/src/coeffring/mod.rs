//! Exact coefficient ring: rationals and rational functions in named
//! parameter symbols.

mod gcd;
mod paramrat;
mod parse;
mod poly;
mod symbol;

pub use gcd::gcd;
pub use paramrat::ParamRat;
pub use parse::parse_param_rat;
pub use poly::{int, rat, Monomial, Poly, Rational};
pub use symbol::{sym, Symbol};

/// Parses a literal expression, panicking on malformed input. Intended for
/// constants written in source code.
pub fn pr(text: &str) -> ParamRat {
    parse_param_rat(text).unwrap_or_else(|e| panic!("bad literal `{text}`: {e}"))
}
