//! Exact computer algebra for symmetric functions in noncommuting variables.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`] and [`lattice`] provide integer and set partitions, the
//!   refinement order and its Möbius function.
//! * [`ncsym`] holds expressions in the `m`, `p`, `e` and `x` bases of NCSym
//!   with change of basis, product, coproduct, `ω`, `ρ` and the lift `R`.
//! * [`sym`] is the commutative counterpart indexed by integer partitions.
//! * [`hopf_monoid`] materialises the Hopf monoid of set partitions at
//!   concrete ground sets and bridges to NCSym through the Fock functor.
//! * [`graphs`] covers complete multipartite graphs, chromatic polynomials and
//!   acyclic orientations with a unique sink.
//! * [`oracle`] expands everything into truncated polynomials in finitely many
//!   variables and serves as ground truth for the tests.
//! * [`verify`] and [`conjecture`] bundle the property suites and the sign
//!   report used by the command-line tool.
//!
//! All coefficients are exact rationals.

pub mod basis;
pub mod conjecture;
pub mod error;
pub mod graphs;
pub mod hopf_monoid;
pub mod lattice;
pub mod ncsym;
pub mod oracle;
pub mod partitions;
pub mod sym;
pub mod text;
pub mod verify;

pub use basis::Basis;
pub use error::{Error, Result};
pub use hopf_monoid::{SpeciesBasis, SpeciesElement, SpeciesTensor};
pub use ncsym::{NCSymExpr, NCTensorExpr};
pub use partitions::{IntegerPartition, Permutation, SetPartition};
pub use sym::SymExpr;

use num_bigint::BigInt;

/// Exact coefficient type used throughout.
pub type Rational = num_rational::BigRational;

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// `(-1)^(k-1) (k-1)!`, the Möbius value of a block merging `k` smaller blocks.
pub(crate) fn signed_factorial(k: usize) -> BigInt {
    debug_assert!(k >= 1);
    let f = factorial(k as u32 - 1);
    if k % 2 == 0 {
        -f
    } else {
        f
    }
}
