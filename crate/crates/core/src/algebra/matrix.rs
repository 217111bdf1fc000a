use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::elim::{self, Grid};
use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense exact matrix with labeled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: Vec<String>,
    cols: Vec<String>,
    data: Grid<Scalar>,
}

fn check_unique(labels: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::InvalidInput(format!("duplicate {what} label '{l}'")));
        }
    }
    Ok(())
}

pub(crate) fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl Matrix {
    pub fn new(field: Field, rows: Vec<String>, cols: Vec<String>, data: Grid<Scalar>) -> Result<Matrix> {
        if data.len() != rows.len() || data.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Dimension(format!(
                "grid does not match {}x{} labels",
                rows.len(),
                cols.len()
            )));
        }
        check_unique(&rows, "row")?;
        check_unique(&cols, "column")?;
        if data.iter().flatten().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Matrix with labels `r0, r1, ...` and `c0, c1, ...`.
    pub fn from_grid(field: Field, data: Grid<Scalar>) -> Result<Matrix> {
        let r = data.len();
        let c = data.first().map_or(0, |row| row.len());
        Matrix::new(field, default_labels("r", r), default_labels("c", c), data)
    }

    pub fn from_i64(field: Field, data: &[Vec<i64>]) -> Matrix {
        let grid = data.iter().map(|row| row.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_grid(field, grid).expect("rectangular integer grid")
    }

    pub fn zeros(field: Field, rows: Vec<String>, cols: Vec<String>) -> Matrix {
        let data = vec![vec![field.zero(); cols.len()]; rows.len()];
        Matrix::new(field, rows, cols, data).expect("unique labels")
    }

    pub fn identity(field: Field, labels: Vec<String>) -> Matrix {
        let mut m = Matrix::zeros(field, labels.clone(), labels);
        for i in 0..m.nrows() {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }
    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }
    pub fn grid(&self) -> &Grid<Scalar> {
        &self.data
    }
    pub fn into_grid(self) -> Grid<Scalar> {
        self.data
    }
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch");
        self.data[i][j] = v;
    }
    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|l| l == label)
    }
    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.cols.iter().position(|l| l == label)
    }

    pub fn with_row_labels(mut self, rows: Vec<String>) -> Result<Matrix> {
        if rows.len() != self.rows.len() {
            return Err(Error::Dimension("row label count".into()));
        }
        check_unique(&rows, "row")?;
        self.rows = rows;
        Ok(self)
    }

    pub fn with_col_labels(mut self, cols: Vec<String>) -> Result<Matrix> {
        if cols.len() != self.cols.len() {
            return Err(Error::Dimension("column label count".into()));
        }
        check_unique(&cols, "column")?;
        self.cols = cols;
        Ok(self)
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            data: elim::transpose(&self.data),
        }
    }

    /// Product; row labels from `self`, column labels from `rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        // An empty inner dimension leaves the grids no column count to go by.
        let data = if self.ncols() == 0 {
            vec![vec![self.field.zero(); rhs.ncols()]; self.nrows()]
        } else {
            elim::matmul(&self.field, &self.data, &rhs.data)
        };
        Ok(Matrix { field: self.field, rows: self.rows.clone(), cols: rhs.cols.clone(), data })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.nrows() != rhs.nrows() || self.ncols() != rhs.ncols() {
            return Err(Error::Dimension("sum of different shapes".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows.clone(), cols: self.cols.clone(), data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        Matrix { field: self.field, rows: self.rows.clone(), cols: self.cols.clone(), data }
    }

    /// Submatrix on the given row and column positions, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix {
            field: self.field,
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: cols.iter().map(|&j| self.cols[j].clone()).collect(),
            data: rows.iter().map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect()).collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let all: Vec<usize> = (0..self.nrows()).collect();
        self.select(&all, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let all: Vec<usize> = (0..self.ncols()).collect();
        self.select(rows, &all)
    }

    /// Reduces every entry into `target`.
    pub fn convert(&self, target: Field) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| target.convert(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Grid<_>>>()?;
        Ok(Matrix { field: target, rows: self.rows.clone(), cols: self.cols.clone(), data })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().flatten().all(Scalar::is_integral)
    }

    pub fn det(&self) -> Result<Scalar> {
        det(self)
    }

    pub fn rank(&self) -> usize {
        elim::rank(&self.field, &self.data)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let inv = elim::inverse(&self.field, &self.data).ok_or(Error::Singular)?;
        Ok(Matrix { field: self.field, rows: self.cols.clone(), cols: self.rows.clone(), data: inv })
    }

    /// Largest absolute value among entries of a rational matrix.
    pub fn max_abs(&self) -> Option<BigRational> {
        self.data
            .iter()
            .flatten()
            .map(|s| s.as_rational().map(|q| if q < &BigRational::zero() { -q } else { q.clone() }))
            .try_fold(BigRational::zero(), |acc, q| q.map(|q| if q > acc { q } else { acc }))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Skew-symmetric matrix with zero diagonal and one shared label list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    field: Field,
    labels: Vec<String>,
    data: Grid<Scalar>,
}

impl SkewMatrix {
    pub fn new(field: Field, labels: Vec<String>, data: Grid<Scalar>) -> Result<SkewMatrix> {
        let n = labels.len();
        if data.len() != n || data.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("skew grid does not match {n} labels")));
        }
        check_unique(&labels, "skew")?;
        if data.iter().flatten().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        for i in 0..n {
            if !data[i][i].is_zero() {
                return Err(Error::NotSkew(i, i));
            }
            for j in i + 1..n {
                if !(&data[i][j] + &data[j][i]).is_zero() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(SkewMatrix { field, labels, data })
    }

    pub fn from_grid(field: Field, data: Grid<Scalar>) -> Result<SkewMatrix> {
        let n = data.len();
        SkewMatrix::new(field, default_labels("s", n), data)
    }

    pub fn from_i64(field: Field, data: &[Vec<i64>]) -> Result<SkewMatrix> {
        let grid = data.iter().map(|row| row.iter().map(|&v| field.from_i64(v)).collect()).collect();
        SkewMatrix::from_grid(field, grid)
    }

    /// Builds from the strict upper triangle, filling the rest by skew symmetry.
    pub fn from_upper(field: Field, labels: Vec<String>, upper: impl Fn(usize, usize) -> Scalar) -> Result<SkewMatrix> {
        let n = labels.len();
        let mut data = vec![vec![field.zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j);
                data[j][i] = -&v;
                data[i][j] = v;
            }
        }
        SkewMatrix::new(field, labels, data)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn order(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn grid(&self) -> &Grid<Scalar> {
        &self.data
    }
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.labels.clone(),
            cols: self.labels.clone(),
            data: self.data.clone(),
        }
    }

    /// Principal submatrix on the given positions.
    pub fn principal(&self, idx: &[usize]) -> SkewMatrix {
        SkewMatrix {
            field: self.field,
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            data: idx.iter().map(|&i| idx.iter().map(|&j| self.data[i][j].clone()).collect()).collect(),
        }
    }

    /// `B S Bᵀ`, which is again skew.
    pub fn congruence(&self, b: &Matrix) -> Result<SkewMatrix> {
        let prod = b.mul(&self.to_matrix())?.mul(&b.transpose())?;
        let labels = b.row_labels().to_vec();
        SkewMatrix::new(self.field, labels, prod.into_grid())
    }

    pub fn pfaffian(&self) -> Result<Scalar> {
        pfaffian(self)
    }

    pub fn det(&self) -> Result<Scalar> {
        det(&self.to_matrix())
    }
}

/// Exact determinant; fraction-free Bareiss over Z when every entry is an integer.
pub fn det(m: &Matrix) -> Result<Scalar> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("det of {}x{} matrix", m.nrows(), m.ncols())));
    }
    if m.field == Field::Rational && m.is_integral() {
        let grid: Grid<BigInt> = m.data.iter().map(|r| r.iter().map(|s| s.to_integer().unwrap()).collect()).collect();
        return Ok(m.field.from_bigint(&bareiss(grid)));
    }
    Ok(elim::det(&m.field, &m.data))
}

/// Fraction-free determinant of an integer matrix.
pub fn bareiss(mut a: Grid<BigInt>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_floor(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Exact Pfaffian; ties in pivot choice go to the lowest index.
pub fn pfaffian(s: &SkewMatrix) -> Result<Scalar> {
    if s.order() % 2 == 1 {
        return Err(Error::OddOrder(s.order()));
    }
    Ok(elim::pfaffian(&s.field, &s.data))
}

/// `X − Y W⁻¹ Z` where `W` is the principal block on `block` positions.
pub fn schur_complement(m: &Matrix, block: &[usize]) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::Dimension("Schur complement of non-square matrix".into()));
    }
    let n = m.nrows();
    let mut in_block = vec![false; n];
    for &b in block {
        if b >= n || in_block[b] {
            return Err(Error::InvalidInput("bad block index set".into()));
        }
        in_block[b] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| !in_block[i]).collect();
    let w = m.select(block, block);
    let w_inv = w.inverse()?;
    let x = m.select(&rest, &rest);
    let y = m.select(&rest, block);
    let z = m.select(block, &rest);
    let corr = y.mul(&w_inv)?.mul(&z)?;
    x.add(&corr.scale(&m.field.from_i64(-1)))
}
