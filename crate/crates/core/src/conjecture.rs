//! Sign report for the `e`-expansion of `x_⟦n⟧`.
//!
//! The conjectured pattern is that every coefficient has sign `(-1)^(n-1)`.
//! Nothing here asserts it: each row records what was observed, together with
//! an internal consistency check between two independent routes to the
//! coefficients (the interval sum and `convert(x → e)`).

use num_traits::Zero;

use crate::basis::Basis;
use crate::lattice::enumerate_n;
use crate::ncsym::{sign, x_e_expansion_coefficient, NCSymExpr};
use crate::partitions::{IntegerPartition, SetPartition};
use crate::sym::{is_e_positive, SymExpr};
use crate::Rational;

/// Observations for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: u32,
    /// Number of `σ ⊢ [n]`, i.e. of coefficients inspected.
    pub coefficients: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub min: Rational,
    pub max: Rational,
    /// `(-1)^(n-1)`.
    pub predicted_sign: i8,
    /// Nonzero coefficients whose sign differs from the prediction.
    pub violations: Vec<(SetPartition, Rational)>,
    /// Interval sum and change of basis agree on every coefficient.
    pub internal_agreement: bool,
    /// `x_n` in Sym: `Some(true)` if `e`-positive, `Some(false)` if
    /// `e`-negative, `None` if mixed.
    pub sym_sign: Option<bool>,
}

impl ConjectureRow {
    pub fn consistent_with_conjecture(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn internally_consistent(&self) -> bool {
        self.rows.iter().all(|r| r.internal_agreement)
    }
}

pub fn conjecture_row(n: u32) -> ConjectureRow {
    let top = SetPartition::top(n);
    let via_convert = NCSymExpr::basis_element(Basis::X, top.clone()).convert(Basis::E);
    let predicted_sign: i8 = if n % 2 == 1 { 1 } else { -1 };
    let mut row = ConjectureRow {
        n,
        coefficients: 0,
        positive: 0,
        negative: 0,
        zero: 0,
        min: Rational::zero(),
        max: Rational::zero(),
        predicted_sign,
        violations: Vec::new(),
        internal_agreement: true,
        sym_sign: None,
    };
    for (i, sigma) in enumerate_n(n).enumerate() {
        let c = x_e_expansion_coefficient(&top, &sigma).expect("same ground set");
        if c != via_convert.coefficient(&sigma) {
            row.internal_agreement = false;
        }
        if i == 0 || c < row.min {
            row.min = c.clone();
        }
        if i == 0 || c > row.max {
            row.max = c.clone();
        }
        row.coefficients += 1;
        match sign(&c) {
            1 => row.positive += 1,
            -1 => row.negative += 1,
            _ => row.zero += 1,
        }
        if !c.is_zero() && sign(&c) != predicted_sign {
            row.violations.push((sigma, c));
        }
    }
    if n >= 1 {
        let x_n = SymExpr::basis_element(
            Basis::X,
            IntegerPartition::new(vec![n]).expect("single part"),
        );
        row.sym_sign = if is_e_positive(&x_n).positive {
            Some(true)
        } else if is_e_positive(&x_n.scale(&-Rational::from_integer(1.into()))).positive {
            Some(false)
        } else {
            None
        };
    }
    row
}

/// Rows for `n = 1, …, max_n`.
pub fn conjecture_report(max_n: u32) -> ConjectureReport {
    ConjectureReport {
        rows: (1..=max_n).map(conjecture_row).collect(),
    }
}
