//! Plain-text rendering and parsing of expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := [rational '*'] basis '{' key '}'  |  rational
//! rational := int ['/' int]
//! ```
//!
//! NCSym keys are set partitions (`x{1,3/2}`), Sym keys are integer
//! partitions with comma-separated parts (`x{3,2,1}`). The empty key is
//! written `()`. A bare rational is a multiple of the unit.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::hopf_monoid::{SpeciesBasis, SpeciesElement};
use crate::ncsym::NCSymExpr;
use crate::partitions::{IntegerPartition, SetPartition};
use crate::sym::SymExpr;
use crate::Rational;

/// `{1,3/2}`, or `{()}` for the empty partition.
pub fn braced(pi: &SetPartition) -> String {
    if pi.is_empty() {
        return "{()}".into();
    }
    let blocks: Vec<String> = pi
        .blocks()
        .iter()
        .map(|b| b.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("{{{}}}", blocks.join("/"))
}

/// Joins `c*label` terms with ` + ` and ` - `; the empty sum is `0`.
pub fn render_terms(terms: &[(String, Rational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (label, c)) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(&format!("{c}*{label}"));
        } else if c.is_negative() {
            out.push_str(&format!(" - {}*{label}", -c));
        } else {
            out.push_str(&format!(" + {c}*{label}"));
        }
    }
    out
}

/// One parsed term before its key is interpreted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    /// Byte offset of the term in the input.
    pub pos: usize,
    pub coefficient: Rational,
    /// Basis and the text between the braces, with its byte offset.
    pub key: Option<(Basis, String, usize)>,
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn int(&mut self) -> Result<Option<BigInt>> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        Ok(Some(self.s[start..self.pos].parse().expect("digits")))
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        let Some(num) = self.int()? else {
            return Ok(None);
        };
        self.skip_ws();
        if self.peek() != Some('/') {
            return Ok(Some(Rational::from_integer(num)));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        match self.int()? {
            Some(d) if !d.is_zero() => Ok(Some(Rational::new(num, d))),
            Some(_) => Err(Error::Parse {
                pos: at,
                msg: "zero denominator".into(),
            }),
            None => self.err("expected a denominator"),
        }
    }
}

/// Splits an expression into signed terms without interpreting the keys.
pub fn parse_terms(s: &str) -> Result<Vec<RawTerm>> {
    let mut cur = Cursor { s, pos: 0 };
    let mut out = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return cur.err("empty expression");
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let pos = cur.pos;
        let mut negative = false;
        match cur.peek() {
            Some('+') => cur.pos += 1,
            Some('-') => {
                negative = true;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(c) => return cur.err(format!("expected `+` or `-`, found `{c}`")),
            None => break,
        }
        first = false;
        cur.skip_ws();
        let mut coefficient = cur.rational()?;
        cur.skip_ws();
        if coefficient.is_some() {
            if cur.peek() == Some('*') {
                cur.pos += 1;
                cur.skip_ws();
            } else {
                let c = coefficient.take().unwrap();
                let c = if negative { -c } else { c };
                out.push(RawTerm {
                    pos,
                    coefficient: c,
                    key: None,
                });
                continue;
            }
        }
        let Some(letter) = cur.peek() else {
            return cur.err("expected a basis letter");
        };
        let Some(basis) = Basis::from_letter(letter) else {
            return cur.err(format!("unknown basis `{letter}` (expected m, p, e or x)"));
        };
        cur.pos += 1;
        cur.skip_ws();
        if cur.peek() != Some('{') {
            return cur.err("expected `{`");
        }
        cur.pos += 1;
        let start = cur.pos;
        let Some(len) = s[start..].find('}') else {
            return cur.err("unclosed `{`");
        };
        cur.pos = start + len + 1;
        let c = coefficient.unwrap_or_else(|| Rational::from_integer(1.into()));
        out.push(RawTerm {
            pos,
            coefficient: if negative { -c } else { c },
            key: Some((basis, s[start..start + len].to_string(), start)),
        });
    }
    Ok(out)
}

fn shift_err(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        Error::Domain(msg) => Error::Parse { pos: offset, msg },
    }
}

fn basis_of(terms: &[RawTerm]) -> Basis {
    terms
        .iter()
        .find_map(|t| t.key.as_ref().map(|k| k.0))
        .unwrap_or(Basis::P)
}

fn set_partition_key(text: &str, offset: usize) -> Result<SetPartition> {
    text.parse::<SetPartition>()
        .map_err(|e| shift_err(e, offset))
}

/// Parses an NCSym expression. Terms in other bases than the first are
/// converted into it.
pub fn parse_ncsym(s: &str) -> Result<NCSymExpr> {
    let terms = parse_terms(s)?;
    let basis = basis_of(&terms);
    let mut out = NCSymExpr::zero(basis);
    for t in terms {
        match t.key {
            None => out = out.add(&NCSymExpr::one(basis).scale(&t.coefficient)),
            Some((b, text, offset)) => {
                let pi = set_partition_key(&text, offset)?;
                if !pi.is_standard() {
                    return Err(Error::Parse {
                        pos: offset,
                        msg: format!("{pi} is not a partition of [n]"),
                    });
                }
                out = out.add(&NCSymExpr::basis_element(b, pi).scale(&t.coefficient));
            }
        }
    }
    Ok(out)
}

/// Parses a Sym expression with integer-partition keys.
pub fn parse_sym(s: &str) -> Result<SymExpr> {
    let terms = parse_terms(s)?;
    let basis = basis_of(&terms);
    let mut out = SymExpr::zero(basis);
    for t in terms {
        match t.key {
            None => out = out.add(&SymExpr::one(basis).scale(&t.coefficient)),
            Some((b, text, offset)) => {
                let lambda = text
                    .parse::<IntegerPartition>()
                    .map_err(|e| shift_err(e, offset))?;
                out = out.add(&SymExpr::basis_element(b, lambda).scale(&t.coefficient));
            }
        }
    }
    Ok(out)
}

/// Parses an element of `Π[S]`; every key must partition `ground`.
pub fn parse_species(s: &str, ground: &[u32]) -> Result<SpeciesElement> {
    let terms = parse_terms(s)?;
    let basis = basis_of(&terms);
    let Some(sb) = SpeciesBasis::from_basis(basis) else {
        return Err(Error::Parse {
            pos: 0,
            msg: "species elements use the m, p or x basis".into(),
        });
    };
    let mut out = SpeciesElement::zero(ground, sb).map_err(|e| shift_err(e, 0))?;
    for t in terms {
        let (b, pi) = match t.key {
            None => (basis, SetPartition::empty()),
            Some((b, text, offset)) => (b, set_partition_key(&text, offset)?),
        };
        let Some(b) = SpeciesBasis::from_basis(b) else {
            return Err(Error::Parse {
                pos: t.pos,
                msg: "species elements use the m, p or x basis".into(),
            });
        };
        let term = SpeciesElement::from_terms(ground, b, [(pi, t.coefficient)])
            .map_err(|e| shift_err(e, t.pos))?;
        out = out.add(&term).map_err(|e| shift_err(e, t.pos))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_n;
    use crate::rat;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let v = parse_ncsym("x{1,3/2}").unwrap();
        assert_eq!(
            v,
            NCSymExpr::basis_element(Basis::X, "13/2".parse().unwrap())
        );
        let v = parse_ncsym("-1*m{1/2/3} + 2*m{1,2/3}").unwrap();
        assert_eq!(v.to_string(), "-1*m{1/2/3} + 2*m{1,2/3}");
        let v = parse_ncsym("1/2*p{1} - 3/4 * p{()} ").unwrap();
        assert_eq!(
            v.coefficient(&SetPartition::empty()),
            Rational::new((-3).into(), 4.into())
        );
        assert_eq!(parse_ncsym("1").unwrap(), NCSymExpr::one(Basis::P));
        assert_eq!(parse_ncsym("p{12/3}").unwrap().to_string(), "1*p{1,2/3}");
        // mixed bases convert into the first one
        let v = parse_ncsym("p{1/2} + x{1,2}").unwrap();
        assert_eq!(v, NCSymExpr::basis_element(Basis::P, "12".parse().unwrap()));
        let s = parse_sym("x{3,2,1,1}").unwrap();
        assert_eq!(s.to_string(), "1*x{3,2,1,1}");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let pos = |s: &str| match parse_ncsym(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("q{1}"), 0);
        assert_eq!(pos("p{1} + y{1}"), 7);
        assert_eq!(pos("p{1"), 2);
        assert_eq!(pos("p{1,3}"), 2);
        assert_eq!(pos("p{1} p{2}"), 5);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("1/0*p{1}"), 2);
        assert!(parse_sym("x{1,2}").is_err());
        assert!(parse_species("e{1}", &[1]).is_err());
    }

    #[test]
    fn species_parse() {
        let v = parse_species("m{3,5/4}", &[3, 4, 5]).unwrap();
        assert_eq!(v.to_string(), "1*m{3,5/4}");
        assert!(parse_species("m{1,2}", &[1, 2, 3]).is_err());
    }

    #[test]
    fn round_trip_basis_elements() {
        for n in 0..=5 {
            for pi in enumerate_n(n) {
                for b in Basis::ALL {
                    let v = NCSymExpr::basis_element(b, pi.clone()).scale(&rat(-3));
                    assert_eq!(parse_ncsym(&v.to_string()).unwrap(), v);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_random_expressions(
            n in 0u32..6,
            picks in proptest::collection::vec((0usize..203, -20i64..20, 1i64..5), 0..6),
            b in 0usize..4,
        ) {
            let all: Vec<SetPartition> = enumerate_n(n).collect();
            let basis = Basis::ALL[b];
            let v = NCSymExpr::from_terms(
                basis,
                picks.iter().map(|&(i, num, den)| {
                    (all[i % all.len()].clone(), Rational::new(num.into(), den.into()))
                }),
            );
            if v.is_zero() {
                prop_assert_eq!(v.to_string(), "0");
            } else {
                prop_assert_eq!(parse_ncsym(&v.to_string()).unwrap(), v);
            }
        }
    }
}
