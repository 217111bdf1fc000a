use crate::algebra::Matrix;
use crate::error::Result;

use super::{MatrixPair, MatroidParity};

/// The 2r×2n parity whose line `j` is `diag(A₁[{j}], A₂[{j}])`.
///
/// Its parity bases are the common bases of the pair; the constant picks up
/// `(−1)^{r(r−1)/2}`.
pub fn lawler_reduce(pair: &MatrixPair) -> Result<MatroidParity> {
    let f = pair.field();
    let (r, n) = (pair.rank(), pair.len());
    let mut g = vec![vec![f.zero(); 2 * n]; 2 * r];
    for j in 0..n {
        for i in 0..r {
            g[i][2 * j] = pair.a1().get(i, j).clone();
            g[r + i][2 * j + 1] = pair.a2().get(i, j).clone();
        }
    }
    let rows = pair
        .a1()
        .row_labels()
        .iter()
        .map(|l| format!("{l}#1"))
        .chain(pair.a2().row_labels().iter().map(|l| format!("{l}#2")))
        .collect();
    let cols = pair.col_labels().iter().flat_map(|l| [l.clone(), format!("{l}~")]).collect();
    let a = Matrix::new(f, rows, cols, g)?;
    let flip = (r * r.saturating_sub(1) / 2) % 2 == 1;
    let constant = pair.constant().map(|c| if flip { -c } else { c.clone() });
    MatroidParity::new(a, pair.col_labels().to_vec(), constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::matroid::{count_common_bases, count_parity_bases};

    #[test]
    fn sign_of_reduced_constant() {
        let q = Field::Rational;
        let a = Matrix::from_i64(q, &[vec![1, 1, 0], vec![-1, 0, 1]]);
        let pair = MatrixPair::new(a.clone(), a, Some(q.one())).unwrap();
        let par = lawler_reduce(&pair).unwrap();
        assert_eq!(par.constant(), Some(&q.from_i64(-1)));
        assert_eq!(count_parity_bases(&par).unwrap().count, count_common_bases(&pair).unwrap().count);
        let one = Matrix::from_i64(q, &[vec![2]]);
        let p1 = MatrixPair::new(one.clone(), one, Some(q.from_i64(4))).unwrap();
        assert_eq!(lawler_reduce(&p1).unwrap().constant(), Some(&q.from_i64(4)));
    }
}
