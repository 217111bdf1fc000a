//! Pfaffian matrix pairs and matroid parities: counting, verification, base construction.

mod extend;
mod lawler;
mod pair;
mod parity;

pub use extend::{
    find_common_base, find_parity_base, is_extensible_pair, is_extensible_pair_unchecked, is_extensible_parity,
    is_extensible_parity_unchecked,
};
pub use lawler::lawler_reduce;
pub use pair::{build_xi, resolve_constant as resolve_pair_constant, count_common_bases, verify_pfaffian_pair, xi_grid, MatrixPair};
pub use parity::{
    resolve_constant as resolve_parity_constant, build_delta, build_phi, count_parity_bases, parity_form, phi_grid, verify_pfaffian_parity, MatroidParity,
};

use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

/// Enumeration guards. Defaults follow desk-scale limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub pair_columns: usize,
    pub parity_lines: usize,
    pub edges: usize,
    pub hyperedges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { pair_columns: 16, parity_lines: 12, edges: 16, hyperedges: 10 }
    }
}

impl Limits {
    /// Every guard set to the same ground-set size.
    pub fn uniform(n: usize) -> Limits {
        Limits { pair_columns: n, parity_lines: n, edges: n, hyperedges: n }
    }

    pub(crate) fn check(what: &str, needed: usize, limit: usize) -> Result<()> {
        if needed > limit {
            return Err(Error::Budget { what: what.to_string(), needed, limit });
        }
        Ok(())
    }
}

/// Outcome of a counting formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    /// The count `c⁻¹ · raw` in the instance field.
    pub count: Scalar,
    /// The constant divided out.
    pub constant_used: Scalar,
    /// The determinant or Pfaffian that was evaluated.
    pub raw: Scalar,
    pub field: Field,
    /// False when no base exists, in which case the constant is a placeholder 1.
    pub has_base: bool,
    pub note: String,
}

impl CountResult {
    pub(crate) fn new(raw: Scalar, constant: Scalar, note: impl Into<String>) -> Result<CountResult> {
        let inv = constant.inv().ok_or(Error::ConstantUnavailable)?;
        Ok(CountResult {
            count: &raw * &inv,
            field: raw.field(),
            constant_used: constant,
            raw,
            has_base: true,
            note: note.into(),
        })
    }

    pub(crate) fn empty(field: Field, note: impl Into<String>) -> CountResult {
        CountResult {
            count: field.zero(),
            constant_used: field.one(),
            raw: field.zero(),
            field,
            has_base: false,
            note: note.into(),
        }
    }
}

/// Result of an enumerative Pfaffian-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_pfaffian: bool,
    /// Common value of the base products when they all coincide.
    pub constant: Option<Scalar>,
    pub bases: usize,
    /// True when the base set is empty, so the property holds vacuously.
    pub vacuous: bool,
}

pub(crate) fn verdict_from_values(values: impl IntoIterator<Item = Scalar>) -> Verdict {
    let mut constant: Option<Scalar> = None;
    let mut same = true;
    let mut bases = 0;
    for v in values {
        bases += 1;
        match &constant {
            None => constant = Some(v),
            Some(c) if *c != v => same = false,
            _ => {}
        }
    }
    Verdict {
        is_pfaffian: same,
        constant: if same { constant } else { None },
        bases,
        vacuous: bases == 0,
    }
}
