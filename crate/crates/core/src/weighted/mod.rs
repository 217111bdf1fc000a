//! Minimum-weight counting: weight splitting for pairs, polynomial Pfaffians for parities,
//! and multimodular reconstruction.

mod crt;
mod hungarian;
mod intersection;
mod parity;
mod tight;

pub use crt::{count_over_primes, prime_plan, CrtOutcome, CrtTarget};
pub use hungarian::{assignment, Assignment};
pub use intersection::{min_weight_common_base_only, split_from_pivoted};
pub use parity::{bordered_theta_pfaffian, count_min_weight_parity_bases, theta_pfaffian};
pub use tight::{
    build_sharp, check_local_condition, count_min_weight_common_bases, min_weight_common_base, pivot_to_base,
    theta_determinant, theta_product, tight_matrix_crosscheck,
};

use crate::algebra::{Field, Matrix, Scalar};

/// `w = w₁ + w₂` certifying that a common base has minimum weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSplit {
    pub w1: Vec<i64>,
    pub w2: Vec<i64>,
}

/// Pivoted matrices with every entry between different split weights removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightPair {
    pub a1: Matrix,
    pub a2: Matrix,
    pub base: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCount {
    pub count: Scalar,
    /// `None` when there is no base at all.
    pub min_weight: Option<i64>,
    pub base: Option<Vec<usize>>,
    pub field: Field,
}

impl WeightedCount {
    pub fn none(field: Field) -> WeightedCount {
        WeightedCount { count: field.zero(), min_weight: None, base: None, field }
    }
}
