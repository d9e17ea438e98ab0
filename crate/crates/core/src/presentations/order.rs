use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::Monomial;

/// Admissible orders on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// `a > b` iff the first nonzero entry of `a - b` is positive.
    Lex,
    /// Compare `|a|_omega` first, ties broken lexicographically.
    WeightedGradedLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial, omega: &[u32]) -> Ordering {
        let lex = || a.exponents().cmp(b.exponents());
        match self {
            MonomialOrder::Lex => lex(),
            MonomialOrder::WeightedGradedLex => {
                let weight = |m: &Monomial| -> u64 {
                    m.exponents()
                        .iter()
                        .zip(omega)
                        .map(|(&e, &w)| e as u64 * w as u64)
                        .sum()
                };
                weight(a).cmp(&weight(b)).then_with(lex)
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::WeightedGradedLex => "wgrlex",
        })
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "wgrlex" => Ok(MonomialOrder::WeightedGradedLex),
            other => Err(format!("unknown order `{other}` (expected lex or wgrlex)")),
        }
    }
}
