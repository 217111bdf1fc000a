use std::collections::HashSet;

use crate::algebra::elim::{self, Grid};
use crate::algebra::perm::combinations;
use crate::algebra::{Field, Matrix, Ring, Scalar, SkewMatrix};
use crate::error::{Error, Result};

use super::{verdict_from_values, CountResult, Limits, Verdict};

/// A 2r×2n matrix whose columns are grouped into lines. Line `l` owns columns `2l` and `2l+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidParity {
    a: Matrix,
    lines: Vec<String>,
    constant: Option<Scalar>,
}

impl MatroidParity {
    /// Columns must already be in line order.
    pub fn new(a: Matrix, lines: Vec<String>, constant: Option<Scalar>) -> Result<MatroidParity> {
        if a.nrows() % 2 == 1 {
            return Err(Error::Dimension(format!("parity matrix has odd row count {}", a.nrows())));
        }
        if a.ncols() != 2 * lines.len() {
            return Err(Error::Dimension(format!("{} columns for {} lines", a.ncols(), lines.len())));
        }
        let mut seen = HashSet::new();
        for l in &lines {
            if !seen.insert(l) {
                return Err(Error::InvalidInput(format!("duplicate line label '{l}'")));
            }
        }
        if let Some(c) = &constant {
            if c.field() != a.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(MatroidParity { a, lines, constant })
    }

    /// Builds from arbitrary column pairs, reordering columns into line order.
    pub fn from_pairs(a: &Matrix, lines: &[(String, String, String)], constant: Option<Scalar>) -> Result<MatroidParity> {
        let mut used = vec![false; a.ncols()];
        let mut order = Vec::with_capacity(a.ncols());
        for (name, c1, c2) in lines {
            for c in [c1, c2] {
                let j = a
                    .col_index(c)
                    .ok_or_else(|| Error::InvalidInput(format!("line '{name}' uses unknown column '{c}'")))?;
                if used[j] {
                    return Err(Error::InvalidInput(format!("column '{c}' in more than one line")));
                }
                used[j] = true;
                order.push(j);
            }
        }
        if used.iter().any(|u| !u) {
            return Err(Error::InvalidInput("some column belongs to no line".into()));
        }
        let names = lines.iter().map(|(n, _, _)| n.clone()).collect();
        MatroidParity::new(a.select_cols(&order), names, constant)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }
    pub fn lines(&self) -> &[String] {
        &self.lines
    }
    pub fn constant(&self) -> Option<&Scalar> {
        self.constant.as_ref()
    }
    pub fn field(&self) -> Field {
        self.a.field()
    }
    /// Half the row count.
    pub fn rank(&self) -> usize {
        self.a.nrows() / 2
    }
    /// Number of lines.
    pub fn len(&self) -> usize {
        self.lines.len()
    }
    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn with_constant(mut self, c: Option<Scalar>) -> MatroidParity {
        self.constant = c;
        self
    }

    pub fn convert(&self, target: Field) -> Result<MatroidParity> {
        MatroidParity::new(
            self.a.convert(target)?,
            self.lines.clone(),
            self.constant.as_ref().map(|c| target.convert(c)).transpose()?,
        )
    }

    /// Column positions of a set of lines, in column order.
    pub fn columns_of(&self, lines: &[usize]) -> Vec<usize> {
        let mut cols: Vec<usize> = lines.iter().flat_map(|&l| [2 * l, 2 * l + 1]).collect();
        cols.sort_unstable();
        cols
    }

    /// `det A[B]`; zero unless `lines` has exactly r entries.
    pub fn base_det(&self, lines: &[usize]) -> Scalar {
        self.a.select_cols(&self.columns_of(lines)).det().unwrap_or_else(|_| self.field().zero())
    }

    pub fn is_parity_base(&self, lines: &[usize]) -> bool {
        lines.len() == self.rank() && !self.base_det(lines).is_zero()
    }

    /// All parity bases in lexicographic order with their determinants.
    pub fn parity_bases(&self, limits: &Limits) -> Result<Vec<(Vec<usize>, Scalar)>> {
        Limits::check("parity lines", self.len(), limits.parity_lines)?;
        Ok(self.enumerate_bases())
    }

    pub(crate) fn enumerate_bases(&self) -> Vec<(Vec<usize>, Scalar)> {
        if self.rank() > self.len() {
            return Vec::new();
        }
        combinations(self.len(), self.rank())
            .filter_map(|b| {
                let d = self.base_det(&b);
                (!d.is_zero()).then_some((b, d))
            })
            .collect()
    }

    pub fn line_names(&self, lines: &[usize]) -> Vec<String> {
        lines.iter().map(|&l| self.lines[l].clone()).collect()
    }

    pub fn line_positions(&self, names: &[String]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.lines
                    .iter()
                    .position(|l| l == n)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown line '{n}'")))
            })
            .collect()
    }

    /// The first and second columns of every line as two r×n matrices.
    pub fn split_columns(&self) -> (Matrix, Matrix) {
        let n = self.len();
        let first: Vec<usize> = (0..n).map(|l| 2 * l).collect();
        let second: Vec<usize> = (0..n).map(|l| 2 * l + 1).collect();
        let relabel = |m: Matrix| m.with_col_labels(self.lines.clone()).expect("unique line labels");
        (relabel(self.a.select_cols(&first)), relabel(self.a.select_cols(&second)))
    }
}

/// `A Δ(z) Aᵀ`, assembled line by line as `A₁D(z)A₂ᵀ − A₂D(z)A₁ᵀ`.
pub fn parity_form<R: Ring>(
    ring: &R,
    embed: impl Fn(&Scalar) -> R::Elem,
    parity: &MatroidParity,
    z: &[R::Elem],
) -> Result<Grid<R::Elem>> {
    let n = parity.len();
    if z.len() != n {
        return Err(Error::Dimension(format!("z has {} entries for {} lines", z.len(), n)));
    }
    let m = parity.a.nrows();
    let g: Grid<R::Elem> = parity.a.grid().iter().map(|row| row.iter().map(&embed).collect()).collect();
    let mut out = vec![vec![ring.zero(); m]; m];
    for (l, zl) in z.iter().enumerate() {
        if ring.is_zero(zl) {
            continue;
        }
        let (a, b) = (2 * l, 2 * l + 1);
        for i in 0..m {
            for k in i + 1..m {
                let t = ring.sub(&ring.mul(&g[i][a], &g[k][b]), &ring.mul(&g[i][b], &g[k][a]));
                if ring.is_zero(&t) {
                    continue;
                }
                let t = ring.mul(zl, &t);
                out[i][k] = ring.add(&out[i][k], &t);
                out[k][i] = ring.sub(&out[k][i], &t);
            }
        }
    }
    Ok(out)
}

/// Block-diagonal `Δ(z)` with one `[[0, z_l], [−z_l, 0]]` block per line.
pub fn build_delta(field: Field, z: &[Scalar]) -> Result<SkewMatrix> {
    let n = z.len();
    let labels: Vec<String> = (0..2 * n).map(|i| format!("d{i}")).collect();
    SkewMatrix::from_upper(field, labels, |i, j| if i % 2 == 0 && j == i + 1 { z[i / 2].clone() } else { field.zero() })
}

/// `[[O, A], [−Aᵀ, Δ(z)]]` over an arbitrary ring.
pub fn phi_grid<R: Ring>(
    ring: &R,
    embed: impl Fn(&Scalar) -> R::Elem,
    parity: &MatroidParity,
    z: &[R::Elem],
) -> Result<Grid<R::Elem>> {
    let n = parity.len();
    if z.len() != n {
        return Err(Error::Dimension(format!("z has {} entries for {} lines", z.len(), n)));
    }
    let m = parity.a.nrows();
    let size = m + 2 * n;
    let mut g = vec![vec![ring.zero(); size]; size];
    for i in 0..m {
        for j in 0..2 * n {
            let v = embed(parity.a.get(i, j));
            g[m + j][i] = ring.neg(&v);
            g[i][m + j] = v;
        }
    }
    for l in 0..n {
        let (a, b) = (m + 2 * l, m + 2 * l + 1);
        g[a][b] = z[l].clone();
        g[b][a] = ring.neg(&z[l]);
    }
    Ok(g)
}

/// The bordered skew matrix of a parity at a scalar point.
pub fn build_phi(parity: &MatroidParity, z: &[Scalar]) -> Result<SkewMatrix> {
    let f = parity.field();
    let g = phi_grid(&f, |s| s.clone(), parity, z)?;
    let labels: Vec<String> = parity
        .a
        .row_labels()
        .iter()
        .map(|l| format!("row:{l}"))
        .chain(parity.a.col_labels().iter().map(|l| format!("col:{l}")))
        .collect();
    SkewMatrix::new(f, labels, g)
}

/// Number of parity bases as `c⁻¹ pf A Δ(1) Aᵀ`.
pub fn count_parity_bases(parity: &MatroidParity) -> Result<CountResult> {
    let f = parity.field();
    let ones = vec![f.one(); parity.len()];
    let form = parity_form(&f, |s| s.clone(), parity, &ones)?;
    let raw = elim::pfaffian(&f, &form);
    let constant = match parity.constant() {
        Some(c) => c.clone(),
        None => match resolve_constant(parity)? {
            Some(c) => c,
            None => return Ok(CountResult::empty(f, "no parity base")),
        },
    };
    if constant.is_zero() {
        return Err(Error::ConstantUnavailable);
    }
    CountResult::new(raw, constant, "parity bases")
}

/// Determinant of one parity base, or `None` when there is none.
pub fn resolve_constant(parity: &MatroidParity) -> Result<Option<Scalar>> {
    let base = if parity.field() == Field::Rational {
        match super::find_parity_base(parity)? {
            Some(b) => Some(b),
            None => first_base(parity),
        }
    } else {
        first_base(parity)
    };
    Ok(base.map(|b| parity.base_det(&b)))
}

fn first_base(parity: &MatroidParity) -> Option<Vec<usize>> {
    if parity.rank() > parity.len() {
        return None;
    }
    combinations(parity.len(), parity.rank()).find(|b| parity.is_parity_base(b))
}

/// Enumerates parity bases and checks whether all determinants coincide.
pub fn verify_pfaffian_parity(parity: &MatroidParity, limits: &Limits) -> Result<Verdict> {
    let bases = parity.parity_bases(limits)?;
    Ok(verdict_from_values(bases.into_iter().map(|(_, v)| v)))
}
