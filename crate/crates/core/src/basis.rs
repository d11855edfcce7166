use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Basis tag shared by NCSym and Sym expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Monomial.
    M,
    /// Power sum.
    P,
    /// Elementary.
    E,
    /// The extra basis `x`.
    X,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::M, Basis::P, Basis::E, Basis::X];

    pub fn letter(self) -> char {
        match self {
            Basis::M => 'm',
            Basis::P => 'p',
            Basis::E => 'e',
            Basis::X => 'x',
        }
    }

    pub fn from_letter(c: char) -> Option<Basis> {
        match c {
            'm' => Some(Basis::M),
            'p' => Some(Basis::P),
            'e' => Some(Basis::E),
            'x' => Some(Basis::X),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        match (chars.next().and_then(Basis::from_letter), chars.next()) {
            (Some(b), None) => Ok(b),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown basis `{s}` (expected m, p, e or x)"),
            }),
        }
    }
}
