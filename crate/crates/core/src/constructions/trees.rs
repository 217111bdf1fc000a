use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};
use crate::matroid::MatrixPair;

use super::Graph;

fn without_row(m: &Matrix, root: usize) -> Result<Matrix> {
    if root >= m.nrows() {
        return Err(Error::InvalidInput(format!("root index {root} out of range")));
    }
    let keep: Vec<usize> = (0..m.nrows()).filter(|&i| i != root).collect();
    Ok(m.select_rows(&keep))
}

/// `(A⁽ʳ⁾, A⁽ʳ⁾)` for the incidence matrix with the root row removed; constant 1.
/// Common bases are the spanning trees.
pub fn spanning_tree_pair(g: &Graph, root: usize, field: Field) -> Result<MatrixPair> {
    let a = without_row(&g.incidence(field), root)?;
    MatrixPair::new(a.clone(), a, Some(field.one()))
}

/// `R` with `−1` at the head of every edge, loops included.
pub fn head_matrix(g: &Graph, field: Field) -> Matrix {
    let mut r = Matrix::zeros(field, g.vertices().to_vec(), g.edges().iter().map(|e| e.label.clone()).collect());
    for (j, e) in g.edges().iter().enumerate() {
        r.set(e.head, j, field.from_i64(-1));
    }
    r
}

/// `(A⁽ʳ⁾, R⁽ʳ⁾)`; common bases are the arborescences rooted at `root`, constant 1.
pub fn arborescence_pair(g: &Graph, root: usize, field: Field) -> Result<MatrixPair> {
    let a = without_row(&g.incidence(field), root)?;
    let r = without_row(&head_matrix(g, field), root)?;
    MatrixPair::new(a, r, Some(field.one()))
}
