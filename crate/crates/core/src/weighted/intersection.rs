use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::matroid::MatrixPair;

use super::WeightSplit;

fn independent(a: &Matrix, cols: &[usize]) -> bool {
    cols.len() <= a.nrows() && a.select_cols(cols).rank() == cols.len()
}

/// Lexicographic `(length, hops)` labels for Bellman–Ford.
type Label = Option<(i64, usize)>;

fn better(a: (i64, usize), b: Label) -> bool {
    b.map_or(true, |b| a < b)
}

/// Shortest augmenting path on the exchange graph of a common independent set, by node lengths
/// `w(x)` outside and `−w(y)` inside. Returns the path as node indices.
fn augmenting_path(pair: &MatrixPair, w: &[i64], inside: &[bool]) -> Result<Option<Vec<usize>>> {
    let n = pair.len();
    let set: Vec<usize> = (0..n).filter(|&j| inside[j]).collect();
    let with = |extra: usize, drop: Option<usize>| -> Vec<usize> {
        let mut s: Vec<usize> = set.iter().copied().filter(|&y| Some(y) != drop).collect();
        s.push(extra);
        s.sort_unstable();
        s
    };
    let len = |v: usize| if inside[v] { -w[v] } else { w[v] };
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for x in (0..n).filter(|&x| !inside[x]) {
        for &y in &set {
            let swapped = with(x, Some(y));
            if independent(pair.a1(), &swapped) {
                arcs.push((y, x));
            }
            if independent(pair.a2(), &swapped) {
                arcs.push((x, y));
            }
        }
    }
    let mut dist: Vec<Label> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    let mut sinks = vec![false; n];
    for x in (0..n).filter(|&x| !inside[x]) {
        if independent(pair.a1(), &with(x, None)) {
            dist[x] = Some((len(x), 0));
        }
        sinks[x] = independent(pair.a2(), &with(x, None));
    }
    let mut rounds = 0;
    loop {
        let mut changed = false;
        for &(a, b) in &arcs {
            if let Some((d, h)) = dist[a] {
                let cand = (d + len(b), h + 1);
                if better(cand, dist[b]) {
                    dist[b] = Some(cand);
                    pred[b] = a;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        rounds += 1;
        if rounds > n + 1 {
            return Err(Error::Internal("negative cycle in the exchange graph".into()));
        }
    }
    let end = (0..n)
        .filter(|&x| sinks[x] && dist[x].is_some())
        .min_by_key(|&x| (dist[x].expect("reachable"), x));
    let Some(mut v) = end else { return Ok(None) };
    let mut path = vec![v];
    while pred[v] != usize::MAX {
        v = pred[v];
        path.push(v);
        if path.len() > n {
            return Err(Error::Internal("cyclic predecessor chain".into()));
        }
    }
    path.reverse();
    Ok(Some(path))
}

/// Minimum-weight common base by successive shortest augmenting paths.
pub fn min_weight_common_base_only(pair: &MatrixPair, w: &[i64]) -> Result<Option<Vec<usize>>> {
    let (r, n) = (pair.rank(), pair.len());
    if w.len() != n {
        return Err(Error::Dimension(format!("{} weights for {} columns", w.len(), n)));
    }
    if pair.a1().rank() < r || pair.a2().rank() < r {
        return Ok(None);
    }
    let mut inside = vec![false; n];
    for _ in 0..r {
        let Some(path) = augmenting_path(pair, w, &inside)? else {
            return Ok(None);
        };
        for v in path {
            inside[v] = !inside[v];
        }
    }
    let base: Vec<usize> = (0..n).filter(|&j| inside[j]).collect();
    if !pair.is_common_base(&base) {
        return Err(Error::Internal("augmentation ended on a non-base".into()));
    }
    Ok(Some(base))
}

/// Potentials `p` with `p(u) ≤ p(j)` for every first-matroid exchange `B − u + j` and
/// `p(j) − p(u) ≤ w(j) − w(u)` for every second-matroid exchange; the split is `(p, w − p)`.
/// Exchanges are read off a pair pivoted at `base`.
pub fn split_from_pivoted(pivoted: &MatrixPair, base: &[usize], w: &[i64]) -> Result<WeightSplit> {
    let n = pivoted.len();
    // Edge (from, to, weight) encodes p(to) ≤ p(from) + weight.
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let in_base: Vec<bool> = (0..n).map(|j| base.contains(&j)).collect();
    for (row, &u) in base.iter().enumerate() {
        for j in (0..n).filter(|&j| !in_base[j]) {
            if !pivoted.a1().get(row, j).is_zero() {
                edges.push((j, u, 0));
            }
            if !pivoted.a2().get(row, j).is_zero() {
                edges.push((u, j, w[j] - w[u]));
            }
        }
    }
    let mut p = vec![0i64; n];
    let mut rounds = 0;
    loop {
        let mut changed = false;
        for &(a, b, c) in &edges {
            if p[a] + c < p[b] {
                p[b] = p[a] + c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        rounds += 1;
        if rounds > n + 1 {
            return Err(Error::Internal("base is not of minimum weight: negative exchange cycle".into()));
        }
    }
    let w2 = w.iter().zip(&p).map(|(a, b)| a - b).collect();
    Ok(WeightSplit { w1: p, w2 })
}
