use crate::algebra::elim::Grid;
use crate::algebra::{poly_matrix_det, Matrix, Scalar, WeightPoly};
use crate::error::{Error, Result};
use crate::matroid::MatrixPair;

use super::hungarian::assignment;
use super::intersection::{min_weight_common_base_only, split_from_pivoted};
use super::{TightPair, WeightSplit, WeightedCount};

/// `A_k ← A_k[B]⁻¹ A_k`; rows are relabeled by the base columns and the constant becomes 1.
pub fn pivot_to_base(pair: &MatrixPair, base: &[usize]) -> Result<MatrixPair> {
    if base.len() != pair.rank() {
        return Err(Error::Dimension(format!("base of size {} for rank {}", base.len(), pair.rank())));
    }
    let rows = pair.col_names(base);
    let pivot = |a: &Matrix| -> Result<Matrix> {
        let inv = a.select_cols(base).inverse()?;
        inv.mul(a)?.with_row_labels(rows.clone())
    };
    let f = pair.field();
    MatrixPair::new(pivot(pair.a1())?, pivot(pair.a2())?, Some(f.one()))
}

/// Minimum-weight common base with a certifying split, or `None` when there is no common base.
pub fn min_weight_common_base(pair: &MatrixPair, w: &[i64]) -> Result<Option<(Vec<usize>, WeightSplit)>> {
    let Some(base) = min_weight_common_base_only(pair, w)? else {
        return Ok(None);
    };
    let pivoted = pivot_to_base(pair, &base)?;
    let split = split_from_pivoted(&pivoted, &base, w)?;
    check_local_condition(&pivoted, &base, &split)?;
    Ok(Some((base, split)))
}

/// A nonzero `(u, j)` entry of a pivoted `A_k` must satisfy `w_k(u) ≤ w_k(j)`.
pub fn check_local_condition(pivoted: &MatrixPair, base: &[usize], split: &WeightSplit) -> Result<()> {
    for (k, (a, wk)) in [(pivoted.a1(), &split.w1), (pivoted.a2(), &split.w2)].into_iter().enumerate() {
        for (row, &u) in base.iter().enumerate() {
            for j in 0..a.ncols() {
                if !a.get(row, j).is_zero() && wk[u] > wk[j] {
                    return Err(Error::Internal(format!(
                        "split violates the local condition in matrix {} at ({}, {})",
                        k + 1,
                        pivoted.col_labels()[u],
                        pivoted.col_labels()[j]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Keeps entry `(u, j)` of each pivoted matrix only when `w_k(u) = w_k(j)`.
pub fn build_sharp(pivoted: &MatrixPair, base: &[usize], split: &WeightSplit) -> Result<TightPair> {
    check_local_condition(pivoted, base, split)?;
    let mask = |a: &Matrix, wk: &[i64]| -> Matrix {
        let mut out = a.clone();
        let f = a.field();
        for (row, &u) in base.iter().enumerate() {
            for j in 0..a.ncols() {
                if wk[u] != wk[j] {
                    out.set(row, j, f.zero());
                }
            }
        }
        out
    };
    Ok(TightPair { a1: mask(pivoted.a1(), &split.w1), a2: mask(pivoted.a2(), &split.w2), base: base.to_vec() })
}

/// Minimum-weight common bases as `det A₁# A₂#ᵀ` after pivoting.
pub fn count_min_weight_common_bases(pair: &MatrixPair, w: &[i64]) -> Result<WeightedCount> {
    let f = pair.field();
    let Some((base, split)) = min_weight_common_base(pair, w)? else {
        return Ok(WeightedCount::none(f));
    };
    let pivoted = pivot_to_base(pair, &base)?;
    let sharp = build_sharp(&pivoted, &base, &split)?;
    let count = sharp.a1.mul(&sharp.a2.transpose())?.det()?;
    let min_weight = base.iter().map(|&j| w[j]).sum();
    Ok(WeightedCount { count, min_weight: Some(min_weight), base: Some(base), field: f })
}

/// `P(θ) = A₁ D(θ^w) A₂ᵀ` entrywise.
pub fn theta_product(pair: &MatrixPair, w: &[i64]) -> Grid<WeightPoly> {
    let f = pair.field();
    let r = pair.rank();
    let mut p = vec![vec![WeightPoly::zero(f); r]; r];
    for (u, row) in p.iter_mut().enumerate() {
        for (v, entry) in row.iter_mut().enumerate() {
            for (j, &wj) in w.iter().enumerate() {
                let (x, y) = (pair.a1().get(u, j), pair.a2().get(v, j));
                if !x.is_zero() && !y.is_zero() {
                    entry.add_term(wj, &(x * y));
                }
            }
        }
    }
    p
}

/// Tight coefficient matrix route: optimal duals of the assignment problem on `ord P_{uv}`
/// select one coefficient per entry, and the count is `det P#`.
pub fn tight_matrix_crosscheck(pivoted: &MatrixPair, w: &[i64]) -> Result<Scalar> {
    let f = pivoted.field();
    let p = theta_product(pivoted, w);
    let cost: Vec<Vec<Option<i64>>> = p.iter().map(|row| row.iter().map(|x| x.ord().finite()).collect()).collect();
    let Some(assign) = assignment(&cost) else {
        return Ok(f.zero());
    };
    if !assign.is_optimal(&cost) {
        return Err(Error::Internal("assignment duals are not optimal".into()));
    }
    let sharp: Vec<Vec<Scalar>> = p
        .iter()
        .enumerate()
        .map(|(u, row)| row.iter().enumerate().map(|(v, x)| x.coeff(assign.row[u] + assign.col[v])).collect())
        .collect();
    Ok(crate::algebra::elim::det(&f, &sharp))
}

/// `det P(θ)` in full, for cross-checks against the weight-sliced base counts.
pub fn theta_determinant(pair: &MatrixPair, w: &[i64]) -> Result<WeightPoly> {
    poly_matrix_det(pair.field(), &theta_product(pair, w))
}
