use crate::algebra::elim::Grid;
use crate::algebra::perm::{binomial, combinations};
use crate::algebra::{Field, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

use super::{verdict_from_values, CountResult, Limits, Verdict};

/// Two matrices with equal row counts and a shared, identically labeled column set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    a1: Matrix,
    a2: Matrix,
    constant: Option<Scalar>,
}

impl MatrixPair {
    pub fn new(a1: Matrix, a2: Matrix, constant: Option<Scalar>) -> Result<MatrixPair> {
        if a1.field() != a2.field() {
            return Err(Error::FieldMismatch);
        }
        if a1.nrows() != a2.nrows() {
            return Err(Error::Dimension(format!("row counts {} and {}", a1.nrows(), a2.nrows())));
        }
        if a1.col_labels() != a2.col_labels() {
            return Err(Error::Dimension("column label lists differ".into()));
        }
        if let Some(c) = &constant {
            if c.field() != a1.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(MatrixPair { a1, a2, constant })
    }

    pub fn a1(&self) -> &Matrix {
        &self.a1
    }
    pub fn a2(&self) -> &Matrix {
        &self.a2
    }
    pub fn constant(&self) -> Option<&Scalar> {
        self.constant.as_ref()
    }
    pub fn field(&self) -> Field {
        self.a1.field()
    }
    /// Row count r.
    pub fn rank(&self) -> usize {
        self.a1.nrows()
    }
    /// Column count n.
    pub fn len(&self) -> usize {
        self.a1.ncols()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn col_labels(&self) -> &[String] {
        self.a1.col_labels()
    }

    pub fn with_constant(mut self, c: Option<Scalar>) -> MatrixPair {
        self.constant = c;
        self
    }

    /// Both matrices and the constant reduced into another field.
    pub fn convert(&self, target: Field) -> Result<MatrixPair> {
        MatrixPair::new(
            self.a1.convert(target)?,
            self.a2.convert(target)?,
            self.constant.as_ref().map(|c| target.convert(c)).transpose()?,
        )
    }

    /// `det A₁[B] · det A₂[B]`; zero unless `cols` has exactly r entries.
    pub fn base_product(&self, cols: &[usize]) -> Scalar {
        let zero = self.field().zero();
        let Ok(d1) = self.a1.select_cols(cols).det() else { return zero };
        if d1.is_zero() {
            return d1;
        }
        &d1 * &self.a2.select_cols(cols).det().unwrap_or(zero)
    }

    pub fn is_common_base(&self, cols: &[usize]) -> bool {
        cols.len() == self.rank() && !self.base_product(cols).is_zero()
    }

    /// All common bases in lexicographic order, with their products.
    pub fn common_bases(&self, limits: &Limits) -> Result<Vec<(Vec<usize>, Scalar)>> {
        Limits::check("pair columns", self.len(), limits.pair_columns)?;
        Ok(self.enumerate_bases())
    }

    pub(crate) fn enumerate_bases(&self) -> Vec<(Vec<usize>, Scalar)> {
        if self.rank() > self.len() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(binomial(self.len() as u64, self.rank() as u64).min(1 << 16) as usize);
        for b in combinations(self.len(), self.rank()) {
            let v = self.base_product(&b);
            if !v.is_zero() {
                out.push((b, v));
            }
        }
        out
    }

    pub fn col_names(&self, cols: &[usize]) -> Vec<String> {
        cols.iter().map(|&j| self.col_labels()[j].clone()).collect()
    }

    pub fn col_positions(&self, names: &[String]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.a1
                    .col_index(n)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown column '{n}'")))
            })
            .collect()
    }
}

/// `[[O, A₁], [A₂ᵀ, D(z)]]` over an arbitrary ring; `embed` maps matrix entries into it.
pub fn xi_grid<R: Ring>(
    ring: &R,
    embed: impl Fn(&Scalar) -> R::Elem,
    pair: &MatrixPair,
    z: &[R::Elem],
) -> Result<Grid<R::Elem>> {
    let (r, n) = (pair.rank(), pair.len());
    if z.len() != n {
        return Err(Error::Dimension(format!("z has {} entries for {} columns", z.len(), n)));
    }
    let mut g = vec![vec![ring.zero(); r + n]; r + n];
    for i in 0..r {
        for j in 0..n {
            g[i][r + j] = embed(pair.a1.get(i, j));
            g[r + j][i] = embed(pair.a2.get(i, j));
        }
    }
    for j in 0..n {
        g[r + j][r + j] = z[j].clone();
    }
    Ok(g)
}

/// The bordered matrix of a pair at a scalar point.
pub fn build_xi(pair: &MatrixPair, z: &[Scalar]) -> Result<Matrix> {
    let f = pair.field();
    let g = xi_grid(&f, |s| s.clone(), pair, z)?;
    let rows: Vec<String> = pair
        .a1
        .row_labels()
        .iter()
        .map(|l| format!("row:{l}"))
        .chain(pair.col_labels().iter().map(|l| format!("col:{l}")))
        .collect();
    let cols: Vec<String> = pair
        .a2
        .row_labels()
        .iter()
        .map(|l| format!("row:{l}"))
        .chain(pair.col_labels().iter().map(|l| format!("col:{l}")))
        .collect();
    Matrix::new(f, rows, cols, g)
}

/// Number of common bases as `c⁻¹ det A₁A₂ᵀ`.
pub fn count_common_bases(pair: &MatrixPair) -> Result<CountResult> {
    let raw = pair.a1.mul(&pair.a2.transpose())?.det()?;
    let constant = match pair.constant() {
        Some(c) => c.clone(),
        None => match resolve_constant(pair)? {
            Some(c) => c,
            None => return Ok(CountResult::empty(pair.field(), "no common base")),
        },
    };
    if constant.is_zero() {
        return Err(Error::ConstantUnavailable);
    }
    CountResult::new(raw, constant, "common bases")
}

/// Product of one common base, found greedily in characteristic zero or by enumeration.
pub fn resolve_constant(pair: &MatrixPair) -> Result<Option<Scalar>> {
    let base = if pair.field() == Field::Rational {
        match super::find_common_base(pair)? {
            Some(b) => Some(b),
            None => first_base(pair),
        }
    } else {
        first_base(pair)
    };
    Ok(base.map(|b| pair.base_product(&b)))
}

fn first_base(pair: &MatrixPair) -> Option<Vec<usize>> {
    if pair.rank() > pair.len() {
        return None;
    }
    combinations(pair.len(), pair.rank()).find(|b| pair.is_common_base(b))
}

/// Enumerates common bases and checks whether all products coincide.
pub fn verify_pfaffian_pair(pair: &MatrixPair, limits: &Limits) -> Result<Verdict> {
    let bases = pair.common_bases(limits)?;
    Ok(verdict_from_values(bases.into_iter().map(|(_, v)| v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> MatrixPair {
        let q = Field::Rational;
        let a = Matrix::from_i64(q, &[vec![1, 1, 0], vec![-1, 0, 1]]);
        MatrixPair::new(a.clone(), a, Some(q.one())).unwrap()
    }

    #[test]
    fn xi_single_entry() {
        let q = Field::Rational;
        let a = Matrix::from_i64(q, &[vec![1]]);
        let p = MatrixPair::new(a.clone(), a, None).unwrap();
        let xi = build_xi(&p, &[q.one()]).unwrap();
        assert_eq!(xi.grid(), Matrix::from_i64(q, &[vec![0, 1], vec![1, 1]]).grid());
        assert_eq!(xi.det().unwrap(), q.from_i64(-1));
    }

    #[test]
    fn triangle_count() {
        let c = count_common_bases(&k3()).unwrap();
        assert_eq!(c.count, Field::Rational.from_i64(3));
        let unset = k3().with_constant(None);
        assert_eq!(count_common_bases(&unset).unwrap().count, Field::Rational.from_i64(3));
    }

    #[test]
    fn no_base_gives_zero() {
        let q = Field::Rational;
        let a1 = Matrix::from_i64(q, &[vec![1, 0], vec![0, 0]]);
        let p = MatrixPair::new(a1.clone(), a1, None).unwrap();
        let c = count_common_bases(&p).unwrap();
        assert!(c.count.is_zero());
        assert!(!c.has_base);
        let v = verify_pfaffian_pair(&p, &Limits::default()).unwrap();
        assert!(v.is_pfaffian && v.vacuous && v.constant.is_none());
    }
}
