//! Elimination kernels over abstract rings and fields, on plain row-major grids.

use std::collections::HashMap;

use super::ring::{FieldOps, Ring};

pub type Grid<T> = Vec<Vec<T>>;

/// Determinant by Gaussian elimination, pivoting on the first nonzero entry.
pub fn det<F: FieldOps>(f: &F, m: &Grid<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = f.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !f.is_zero(&a[i][k])) else {
            return f.zero();
        };
        if piv != k {
            a.swap(piv, k);
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &a[k][k]);
        let inv = f.inv(&a[k][k]).expect("nonzero pivot");
        for i in k + 1..n {
            if f.is_zero(&a[i][k]) {
                continue;
            }
            let factor = f.mul(&a[i][k], &inv);
            for j in k + 1..n {
                let t = f.mul(&factor, &a[k][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
            a[i][k] = f.zero();
        }
    }
    acc
}

/// Pfaffian of a skew-symmetric grid by paired-pivot elimination.
///
/// At step `k` the partner of row `k` is the lowest index `j > k` with a nonzero entry;
/// it is swapped into position `k + 1` and the trailing block is replaced by its Schur
/// complement.
pub fn pfaffian<F: FieldOps>(f: &F, m: &Grid<F::Elem>) -> F::Elem {
    let n = m.len();
    if n % 2 == 1 {
        return f.zero();
    }
    let mut a = m.clone();
    let mut acc = f.one();
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !f.is_zero(&a[k][j])) else {
            return f.zero();
        };
        if j != k + 1 {
            a.swap(j, k + 1);
            for row in a.iter_mut() {
                row.swap(j, k + 1);
            }
            acc = f.neg(&acc);
        }
        let piv = a[k][k + 1].clone();
        acc = f.mul(&acc, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        for i in k + 2..n {
            for jj in i + 1..n {
                // S_ij += (S_{k+1,i} S_{k,j} - S_{k,i} S_{k+1,j}) / S_{k,k+1}
                let t1 = f.mul(&a[k + 1][i], &a[k][jj]);
                let t2 = f.mul(&a[k][i], &a[k + 1][jj]);
                let upd = f.mul(&f.sub(&t1, &t2), &inv);
                let v = f.add(&a[i][jj], &upd);
                a[jj][i] = f.neg(&v);
                a[i][jj] = v;
            }
        }
        k += 2;
    }
    acc
}

/// Rank and reduced row echelon form; returns (rank, pivot columns, rref).
pub fn rref<F: FieldOps>(f: &F, m: &Grid<F::Elem>) -> (usize, Vec<usize>, Grid<F::Elem>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(p, r);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        for j in 0..cols {
            a[r][j] = f.mul(&a[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let t = f.mul(&factor, &a[r][j]);
                    a[i][j] = f.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots, a)
}

pub fn rank<F: FieldOps>(f: &F, m: &Grid<F::Elem>) -> usize {
    rref(f, m).0
}

/// Inverse of a square grid, `None` when singular.
pub fn inverse<F: FieldOps>(f: &F, m: &Grid<F::Elem>) -> Option<Grid<F::Elem>> {
    let n = m.len();
    let aug: Grid<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let (_, pivots, red) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Product of two grids.
pub fn matmul<R: Ring>(r: &R, a: &Grid<R::Elem>, b: &Grid<R::Elem>) -> Grid<R::Elem> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = r.zero();
                    for k in 0..inner {
                        if !r.is_zero(&row[k]) && !r.is_zero(&b[k][j]) {
                            acc = r.add(&acc, &r.mul(&row[k], &b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &Grid<T>) -> Grid<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Division-free determinant over any commutative ring by Laplace expansion over
/// column subsets. Exponential in the order.
pub fn det_division_free<R: Ring>(r: &R, m: &Grid<R::Elem>) -> R::Elem {
    let n = m.len();
    assert!(n <= 24, "division-free determinant limited to order 24");
    // dp[mask]: determinant of rows 0..|mask| restricted to columns in mask.
    let mut dp: Vec<Option<R::Elem>> = vec![None; 1 << n];
    dp[0] = Some(r.one());
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].clone() else { continue };
        if r.is_zero(&cur) {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for c in 0..n {
            if mask >> c & 1 == 1 || r.is_zero(&m[row][c]) {
                continue;
            }
            // Sign from the number of already used columns to the right of c.
            let after = (mask >> (c + 1)).count_ones();
            let term = r.mul(&cur, &m[row][c]);
            let term = if after % 2 == 1 { r.neg(&term) } else { term };
            let next = mask | (1 << c);
            dp[next] = Some(match dp[next].take() {
                Some(prev) => r.add(&prev, &term),
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].clone().unwrap_or_else(|| r.zero())
}

/// Division-free Pfaffian over any commutative ring, expanding along the lowest index.
pub fn pfaffian_division_free<R: Ring>(r: &R, m: &Grid<R::Elem>) -> R::Elem {
    let n = m.len();
    if n % 2 == 1 {
        return r.zero();
    }
    assert!(n <= 30, "division-free Pfaffian limited to order 30");
    let mut memo: HashMap<u32, R::Elem> = HashMap::new();
    pf_rec(r, m, if n == 0 { 0 } else { (1u32 << n) - 1 }, &mut memo)
}

fn pf_rec<R: Ring>(r: &R, m: &Grid<R::Elem>, mask: u32, memo: &mut HashMap<u32, R::Elem>) -> R::Elem {
    if mask == 0 {
        return r.one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = r.zero();
    let mut between = 0u32;
    let mut j = i + 1;
    while (rest >> j) != 0 {
        if rest >> j & 1 == 1 {
            if !r.is_zero(&m[i][j]) {
                let sub = pf_rec(r, m, rest & !(1 << j), memo);
                if !r.is_zero(&sub) {
                    let t = r.mul(&m[i][j], &sub);
                    acc = if between % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
                }
            }
            between += 1;
        }
        j += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}
