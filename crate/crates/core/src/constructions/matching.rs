use crate::algebra::perm::permutation_sign;
use crate::algebra::{Field, Matrix, SkewMatrix};
use crate::error::{Error, Result};
use crate::matroid::{Limits, MatrixPair, MatroidParity};

use super::Graph;

/// Side membership for a bipartition given as two ordered vertex lists.
#[derive(Clone, Debug)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Position of each vertex within its side, and whether it is on the left.
    slot: Vec<(usize, bool)>,
}

impl Bipartition {
    pub fn new(g: &Graph, left: &[String], right: &[String]) -> Result<Bipartition> {
        if left.len() != right.len() {
            return Err(Error::InvalidInput(format!("sides of sizes {} and {}", left.len(), right.len())));
        }
        let n = g.vertex_count();
        let mut slot = vec![None; n];
        let mut resolve = |names: &[String], is_left: bool| -> Result<Vec<usize>> {
            names
                .iter()
                .enumerate()
                .map(|(pos, v)| {
                    let i = g.vertex(v)?;
                    if slot[i].replace((pos, is_left)).is_some() {
                        return Err(Error::InvalidInput(format!("vertex '{v}' on both sides or repeated")));
                    }
                    Ok(i)
                })
                .collect()
        };
        let left = resolve(left, true)?;
        let right = resolve(right, false)?;
        let slot = slot
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::InvalidInput(format!("vertex '{}' on no side", g.vertices()[i]))))
            .collect::<Result<Vec<_>>>()?;
        for e in g.edges() {
            if slot[e.tail].1 == slot[e.head].1 {
                return Err(Error::InvalidInput(format!("edge '{}' joins one side to itself", e.label)));
            }
        }
        Ok(Bipartition { left, right, slot })
    }

    /// `(left position, right position, s_e)` where `s_e = +1` for edges leaving the left side.
    pub fn edge_ends(&self, g: &Graph, e: usize) -> (usize, usize, i64) {
        let ed = &g.edges()[e];
        let (t, h) = (self.slot[ed.tail], self.slot[ed.head]);
        if t.1 {
            (t.0, h.0, 1)
        } else {
            (h.0, t.0, -1)
        }
    }
}

/// `(A_U D(s), A_V)`; common bases are the perfect matchings and each product is `sgn M⃗`.
/// The constant is left unset.
pub fn bipartite_matching_pair(g: &Graph, sides: &Bipartition, field: Field) -> Result<MatrixPair> {
    let k = sides.left.len();
    let cols: Vec<String> = g.edges().iter().map(|e| e.label.clone()).collect();
    let names = |idx: &[usize]| idx.iter().map(|&v| g.vertices()[v].clone()).collect::<Vec<_>>();
    let mut a1 = Matrix::zeros(field, names(&sides.left), cols.clone());
    let mut a2 = Matrix::zeros(field, names(&sides.right), cols);
    for j in 0..g.edge_count() {
        let (u, v, s) = sides.edge_ends(g, j);
        debug_assert!(u < k && v < k);
        a1.set(u, j, field.from_i64(s));
        a2.set(v, j, field.one());
    }
    MatrixPair::new(a1, a2, None)
}

/// `sgn σ_M · ∏ s_e` for a matching given as edge indices.
pub fn bipartite_matching_sign(g: &Graph, sides: &Bipartition, matching: &[usize]) -> Option<i8> {
    let k = sides.left.len();
    if matching.len() != k {
        return None;
    }
    let mut perm = vec![usize::MAX; k];
    let mut sign = 1i8;
    for &e in matching {
        let (u, v, s) = sides.edge_ends(g, e);
        if perm[u] != usize::MAX {
            return None;
        }
        perm[u] = v;
        if s < 0 {
            sign = -sign;
        }
    }
    let mut hit = vec![false; k];
    for &v in &perm {
        if std::mem::replace(&mut hit[v], true) {
            return None;
        }
    }
    Some(sign * permutation_sign(&perm))
}

/// The |V|×2|E| parity whose line per edge `{vᵢ, vⱼ}`, `i < j`, puts `(1,0)` in row `i`
/// and `(0,1)` in row `j`, swapped when the edge is oriented from `vⱼ` to `vᵢ`.
pub fn general_matching_parity(g: &Graph, field: Field) -> Result<MatroidParity> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Err(Error::InvalidInput(format!("odd vertex count {n}: no perfect matching")));
    }
    let mut cols = Vec::with_capacity(2 * g.edge_count());
    let mut grid = vec![vec![field.zero(); 2 * g.edge_count()]; n];
    for (l, e) in g.edges().iter().enumerate() {
        if e.tail == e.head {
            return Err(Error::InvalidInput(format!("loop '{}' cannot be matched", e.label)));
        }
        // First column carries the tail.
        grid[e.tail][2 * l] = field.one();
        grid[e.head][2 * l + 1] = field.one();
        cols.push(format!("{}:1", e.label));
        cols.push(format!("{}:2", e.label));
    }
    let a = Matrix::new(field, g.vertices().to_vec(), cols, grid)?;
    MatroidParity::new(a, g.edges().iter().map(|e| e.label.clone()).collect(), None)
}

/// Skew adjacency with `+1` at `(i, j)` for each arc from `vᵢ` to `vⱼ`, summed over parallel arcs.
pub fn skew_adjacency(g: &Graph, field: Field) -> Result<SkewMatrix> {
    let n = g.vertex_count();
    let mut grid = vec![vec![field.zero(); n]; n];
    for e in g.edges() {
        if e.tail == e.head {
            continue;
        }
        grid[e.tail][e.head] = &grid[e.tail][e.head] + &field.one();
        grid[e.head][e.tail] = &grid[e.head][e.tail] - &field.one();
    }
    SkewMatrix::new(field, g.vertices().to_vec(), grid)
}

/// Sign of the sequence `(t₁ h₁ t₂ h₂ …)` over the arcs of a perfect matching.
pub fn matching_sign(g: &Graph, matching: &[usize]) -> Option<i8> {
    let n = g.vertex_count();
    if 2 * matching.len() != n {
        return None;
    }
    let seq: Vec<usize> = matching.iter().flat_map(|&e| [g.edges()[e].tail, g.edges()[e].head]).collect();
    let mut hit = vec![false; n];
    for &v in &seq {
        if std::mem::replace(&mut hit[v], true) {
            return None;
        }
    }
    Some(permutation_sign(&seq))
}

/// Copy of `g` with the edges whose bit is set in `mask` reversed.
pub fn reorient(g: &Graph, mask: u64) -> Graph {
    let mut h = Graph::new(g.vertices().iter().cloned()).expect("unique");
    for (j, e) in g.edges().iter().enumerate() {
        let (t, hd) = if mask >> j & 1 == 1 { (e.head, e.tail) } else { (e.tail, e.head) };
        h.add_edge_by_index(e.label.clone(), t, hd, e.length).expect("unique");
    }
    h
}

/// First orientation mask (in increasing order) under which every perfect matching has the same sign.
/// Reversing an arc flips the sign of exactly the matchings through it. `None` when there is none.
pub fn find_pfaffian_orientation(g: &Graph, max_edges: usize) -> Result<Option<u64>> {
    let m = g.edge_count();
    Limits::check("edges", m, max_edges.min(63))?;
    let matchings = crate::oracle::perfect_matchings(g, Field::Rational, &Limits::uniform(m))?;
    let base: Vec<(u64, bool)> = matchings
        .items
        .iter()
        .map(|s| {
            let bits = s.elements.iter().fold(0u64, |acc, &e| acc | 1 << e);
            (bits, matching_sign(g, &s.elements) == Some(-1))
        })
        .collect();
    Ok((0..1u64 << m).find(|&mask| {
        let mut signs = base.iter().map(|&(bits, neg)| neg ^ ((bits & mask).count_ones() % 2 == 1));
        signs.next().map_or(true, |first| signs.all(|x| x == first))
    }))
}
