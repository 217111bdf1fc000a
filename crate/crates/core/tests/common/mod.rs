//! Brute-force algebra oracles shared by integration tests.
#![allow(dead_code)]

use pfcount::algebra::{Field, Scalar};
use pfcount::constructions::{Graph, TerminalSpec};
use rand::Rng;

pub type Grid = Vec<Vec<Scalar>>;

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// Sum over all permutations of signed diagonal products.
pub fn leibniz_det(f: Field, m: &Grid) -> Scalar {
    let n = m.len();
    let mut acc = f.zero();
    for p in perms(n) {
        let mut t = f.one();
        for i in 0..n {
            t = &t * &m[i][p[i]];
        }
        if inversions(&p) % 2 == 1 {
            t = -t;
        }
        acc = &acc + &t;
    }
    acc
}

fn pairings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let a = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let mut rest = items[1..k].to_vec();
        rest.extend_from_slice(&items[k + 1..]);
        for mut tail in pairings(&rest) {
            tail.insert(0, (a, items[k]));
            out.push(tail);
        }
    }
    out
}

/// Sum over perfect pairings `{(i1,j1),…}` with `i < j`, signed by the permutation
/// `i1 j1 i2 j2 …`. Returns the value and the number of pairings.
pub fn pairing_pf(f: Field, m: &Grid) -> (Scalar, usize) {
    let idx: Vec<usize> = (0..m.len()).collect();
    let all = pairings(&idx);
    let mut acc = f.zero();
    for pr in &all {
        let perm: Vec<usize> = pr.iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut t = f.one();
        for &(a, b) in pr {
            t = &t * &m[a][b];
        }
        if inversions(&perm) % 2 == 1 {
            t = -t;
        }
        acc = &acc + &t;
    }
    (acc, all.len())
}

pub fn random_grid<R: Rng>(rng: &mut R, f: Field, rows: usize, cols: usize, lo: i64, hi: i64) -> Grid {
    (0..rows).map(|_| (0..cols).map(|_| f.from_i64(rng.gen_range(lo..=hi))).collect()).collect()
}

pub fn random_skew<R: Rng>(rng: &mut R, f: Field, n: usize, lo: i64, hi: i64) -> Grid {
    let mut g = vec![vec![f.zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = f.from_i64(rng.gen_range(lo..=hi));
            g[j][i] = -&v;
            g[i][j] = v;
        }
    }
    g
}

pub fn int_grid(f: Field, rows: &[&[i64]]) -> Grid {
    rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect()
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// `n` vertices `v0…`, `m` random non-loop edges `e0…` with optional lengths in `lo..=hi`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize, lengths: Option<(i64, i64)>) -> Graph {
    let mut g = Graph::new((0..n).map(|i| format!("v{i}"))).unwrap();
    for j in 0..m {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let l = lengths.map(|(lo, hi)| rng.gen_range(lo..=hi));
        g.add_edge_by_index(format!("e{j}"), a, b, l).unwrap();
    }
    g
}

/// A random graph containing a spanning tree.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize, lengths: Option<(i64, i64)>) -> Graph {
    let mut g = Graph::new((0..n).map(|i| format!("v{i}"))).unwrap();
    let mut j = 0;
    let len = |rng: &mut R| lengths.map(|(lo, hi)| rng.gen_range(lo..=hi));
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let l = len(rng);
        if rng.gen_bool(0.5) {
            g.add_edge_by_index(format!("e{j}"), u, v, l).unwrap();
        } else {
            g.add_edge_by_index(format!("e{j}"), v, u, l).unwrap();
        }
        j += 1;
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let l = len(rng);
        g.add_edge_by_index(format!("e{j}"), a, b, l).unwrap();
        j += 1;
    }
    g
}

pub fn spec(groups: &[&[&str]]) -> TerminalSpec {
    TerminalSpec::new(groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect())
}

pub fn triangle(lengths: [i64; 3]) -> Graph {
    let mut g = Graph::new(["a", "b", "c"]).unwrap();
    g.add_edge("e1", "a", "b", Some(lengths[0])).unwrap();
    g.add_edge("e2", "b", "c", Some(lengths[1])).unwrap();
    g.add_edge("e3", "a", "c", Some(lengths[2])).unwrap();
    g
}
