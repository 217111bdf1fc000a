use std::collections::HashSet;

use crate::algebra::elim::Grid;
use crate::algebra::perm::permutation_sign;
use crate::algebra::{Field, Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::matroid::{MatrixPair, MatroidParity};

use super::{Graph, TerminalSpec};

fn two_groups(g: &Graph, spec: &TerminalSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    let groups = spec.resolve(g)?;
    if groups.len() != 2 {
        return Err(Error::InvalidInput(format!("expected two terminal groups, got {}", groups.len())));
    }
    let (s, t) = (groups[0].clone(), groups[1].clone());
    if s.len() != t.len() {
        return Err(Error::InvalidInput(format!("|S| = {} but |T| = {}", s.len(), t.len())));
    }
    Ok((s, t))
}

/// Vertices outside every group, in vertex order.
fn internal_vertices(n: usize, groups: &[Vec<usize>]) -> Vec<usize> {
    let term: HashSet<usize> = groups.iter().flatten().copied().collect();
    (0..n).filter(|v| !term.contains(v)).collect()
}

/// The bipartite-matching pair of the split graph of an acyclic digraph.
#[derive(Clone, Debug)]
pub struct DagReduction {
    pub pair: MatrixPair,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    /// Vertices outside `S ∪ T`; vertex `internal[i]` owns column `arcs + i`.
    pub internal: Vec<usize>,
    pub arcs: usize,
}

impl DagReduction {
    pub fn k(&self) -> usize {
        self.sources.len()
    }

    /// The perfect matching of a disjoint path system: its arcs plus the copy edges of unvisited vertices.
    pub fn matching_of_paths(&self, g: &Graph, arcs: &[usize]) -> Vec<usize> {
        let mut visited = vec![false; g.vertex_count()];
        for &e in arcs {
            visited[g.edges()[e].tail] = true;
            visited[g.edges()[e].head] = true;
        }
        let mut cols: Vec<usize> = arcs.to_vec();
        cols.extend(self.internal.iter().enumerate().filter(|(_, &v)| !visited[v]).map(|(i, _)| self.arcs + i));
        cols.sort_unstable();
        cols
    }
}

/// Rows `s₁…s_k, Ṽ` and `t₁…t_k, Ṽ`; an arc `(u, v)` joins `u_S` to `v_T` oriented towards `V_S`,
/// and each internal `v` joins `v_S` to `v_T` oriented towards `V_T`. The constant is left unset.
pub fn dag_st_pair(g: &Graph, spec: &TerminalSpec, field: Field) -> Result<DagReduction> {
    let (sources, sinks) = two_groups(g, spec)?;
    if g.topological_order().is_none() {
        return Err(Error::InvalidInput("graph has a directed cycle".into()));
    }
    for &s in &sources {
        if g.in_degree(s) > 0 {
            return Err(Error::InvalidInput(format!("source '{}' has an entering arc", g.vertices()[s])));
        }
    }
    for &t in &sinks {
        if g.out_degree(t) > 0 {
            return Err(Error::InvalidInput(format!("sink '{}' has a leaving arc", g.vertices()[t])));
        }
    }
    let internal = internal_vertices(g.vertex_count(), &[sources.clone(), sinks.clone()]);
    let n = g.vertex_count();
    let (mut s_row, mut t_row) = (vec![None; n], vec![None; n]);
    for (i, &v) in sources.iter().chain(&internal).enumerate() {
        s_row[v] = Some(i);
    }
    for (i, &v) in sinks.iter().chain(&internal).enumerate() {
        t_row[v] = Some(i);
    }
    let m = g.edge_count();
    let mut cols: Vec<String> = g.edges().iter().map(|e| e.label.clone()).collect();
    for &v in &internal {
        cols.push(g.fresh_label(&format!("{}~", g.vertices()[v])));
    }
    let name = |v: &usize| g.vertices()[*v].clone();
    let rows1: Vec<String> = sources.iter().chain(&internal).map(name).collect();
    let rows2: Vec<String> = sinks.iter().chain(&internal).map(name).collect();
    let mut a1 = Matrix::zeros(field, rows1, cols.clone());
    let mut a2 = Matrix::zeros(field, rows2, cols);
    for (j, e) in g.edges().iter().enumerate() {
        let (Some(u), Some(v)) = (s_row[e.tail], t_row[e.head]) else {
            return Err(Error::Internal(format!("arc '{}' escapes the split graph", e.label)));
        };
        a1.set(u, j, field.from_i64(-1));
        a2.set(v, j, field.one());
    }
    for (i, &v) in internal.iter().enumerate() {
        a1.set(s_row[v].expect("internal"), m + i, field.one());
        a2.set(t_row[v].expect("internal"), m + i, field.one());
    }
    Ok(DagReduction { pair: MatrixPair::new(a1, a2, None)?, sources, sinks, internal, arcs: m })
}

/// `Ω(z)`: entry `(i, j)` sums `∏ z_e` over the directed `sᵢ`–`tⱼ` paths, by dynamic programming
/// along a topological order.
pub fn lgv_matrix<R: Ring>(ring: &R, g: &Graph, spec: &TerminalSpec, z: &[R::Elem]) -> Result<Grid<R::Elem>> {
    let (sources, sinks) = two_groups(g, spec)?;
    if z.len() != g.edge_count() {
        return Err(Error::Dimension(format!("z has {} entries for {} arcs", z.len(), g.edge_count())));
    }
    let order = g.topological_order().ok_or_else(|| Error::InvalidInput("graph has a directed cycle".into()))?;
    let mut out = Vec::with_capacity(sources.len());
    for &s in &sources {
        let mut reach = vec![ring.zero(); g.vertex_count()];
        reach[s] = ring.one();
        for &v in &order {
            if ring.is_zero(&reach[v]) {
                continue;
            }
            for (j, e) in g.edges().iter().enumerate() {
                if e.tail == v {
                    let t = ring.mul(&reach[v], &z[j]);
                    reach[e.head] = ring.add(&reach[e.head], &t);
                }
            }
        }
        out.push(sinks.iter().map(|&t| reach[t].clone()).collect());
    }
    Ok(out)
}

/// `N(z) = A₁ D(z) A₂ᵀ` with `z` on arcs and 1 on the copy edges.
pub fn lgv_bordered<R: Ring>(
    ring: &R,
    embed: impl Fn(&Scalar) -> R::Elem,
    red: &DagReduction,
    z: &[R::Elem],
) -> Result<Grid<R::Elem>> {
    if z.len() != red.arcs {
        return Err(Error::Dimension(format!("z has {} entries for {} arcs", z.len(), red.arcs)));
    }
    let (a1, a2) = (red.pair.a1(), red.pair.a2());
    let r = a1.nrows();
    let mut out = vec![vec![ring.zero(); r]; r];
    for j in 0..red.pair.len() {
        let w = if j < red.arcs { z[j].clone() } else { ring.one() };
        for i in 0..r {
            let x = a1.get(i, j);
            if x.is_zero() {
                continue;
            }
            let xw = ring.mul(&embed(x), &w);
            for k in 0..r {
                let y = a2.get(k, j);
                if !y.is_zero() {
                    out[i][k] = ring.add(&out[i][k], &ring.mul(&xw, &embed(y)));
                }
            }
        }
    }
    Ok(out)
}

/// `sgn σ` for a linkage sending the i-th source to the `sigma[i]`-th sink.
pub fn path_sign(sigma: &[usize]) -> i8 {
    permutation_sign(sigma)
}

/// Sign of a pairing of `0..2k` as the sequence `(a₁ b₁ a₂ b₂ …)` in normal form.
pub fn pairing_sign(pairs: &[(usize, usize)]) -> i8 {
    let mut norm: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    norm.sort_unstable();
    let seq: Vec<usize> = norm.iter().flat_map(|&(a, b)| [a, b]).collect();
    permutation_sign(&seq)
}

/// A graph prepared for the undirected path reductions.
#[derive(Clone, Debug)]
pub struct PreparedGraph {
    /// The input with terminal-to-terminal edges subdivided; lengths always present.
    pub graph: Graph,
    /// Factor applied to every input length.
    pub length_scale: i64,
    /// Index of the input edge each prepared edge came from.
    pub origin: Vec<usize>,
    /// Terminal groups as prepared-vertex indices.
    pub groups: Vec<Vec<usize>>,
    /// Non-terminal vertices; `internal[i]` owns the star column `graph.edge_count() + i`.
    pub internal: Vec<usize>,
    /// Labels of the star edges to the apex.
    pub star_labels: Vec<String>,
}

impl PreparedGraph {
    pub fn new(g: &Graph, spec: &TerminalSpec) -> Result<PreparedGraph> {
        let groups = spec.resolve(g)?;
        if let Some(e) = g.edges().iter().find(|e| e.length.is_some_and(|l| l <= 0)) {
            return Err(Error::InvalidInput(format!("edge '{}' needs a positive length", e.label)));
        }
        let term: HashSet<usize> = groups.iter().flatten().copied().collect();
        let cut: Vec<bool> = g.edges().iter().map(|e| term.contains(&e.tail) && term.contains(&e.head)).collect();
        let length_scale = if cut.iter().any(|&c| c) { 2 } else { 1 };
        let mut h = Graph::new(g.vertices().iter().cloned())?;
        let mut origin = Vec::with_capacity(g.edge_count());
        for (j, e) in g.edges().iter().enumerate() {
            let l = e.length.unwrap_or(1);
            if cut[j] {
                let mid_label = h.fresh_label(&format!("{}^", e.label));
                let mid = h.add_vertex(mid_label)?;
                let first = h.fresh_label(&format!("{}.1", e.label));
                h.add_edge_by_index(first, e.tail, mid, Some(l))?;
                let second = h.fresh_label(&format!("{}.2", e.label));
                h.add_edge_by_index(second, mid, e.head, Some(l))?;
                origin.extend([j, j]);
            } else {
                h.add_edge_by_index(e.label.clone(), e.tail, e.head, Some(l * length_scale))?;
                origin.push(j);
            }
        }
        // Subdivided edges carry labels that must not collide with later input labels.
        for e in g.edges() {
            if h.edges().iter().filter(|x| x.label == e.label).count() > 1 {
                return Err(Error::InvalidInput(format!("edge label '{}' clashes after subdivision", e.label)));
            }
        }
        let internal = internal_vertices(h.vertex_count(), &groups);
        let mut star_labels = Vec::with_capacity(internal.len());
        let mut used: HashSet<String> = HashSet::new();
        for &v in &internal {
            let mut l = h.fresh_label(&format!("{}*", h.vertices()[v]));
            while used.contains(&l) {
                l.push('*');
            }
            used.insert(l.clone());
            star_labels.push(l);
        }
        Ok(PreparedGraph { graph: h, length_scale, origin, groups, internal, star_labels })
    }

    /// Column labels: prepared edges, then star edges.
    pub fn column_labels(&self) -> Vec<String> {
        self.graph.edges().iter().map(|e| e.label.clone()).chain(self.star_labels.iter().cloned()).collect()
    }

    /// `l` on prepared edges, 0 on star edges.
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.graph.lengths();
        w.extend(std::iter::repeat(0).take(self.internal.len()));
        w
    }

    /// Prepared edges arising from a set of input edges.
    pub fn lift_edges(&self, input: &[usize]) -> Vec<usize> {
        (0..self.origin.len()).filter(|&j| input.contains(&self.origin[j])).collect()
    }

    /// A path system (prepared edge indices) completed by star edges at the vertices it misses.
    pub fn base_of_paths(&self, edges: &[usize]) -> Vec<usize> {
        let mut visited = vec![false; self.graph.vertex_count()];
        for &e in edges {
            visited[self.graph.edges()[e].tail] = true;
            visited[self.graph.edges()[e].head] = true;
        }
        let m = self.graph.edge_count();
        let mut cols = edges.to_vec();
        cols.extend(self.internal.iter().enumerate().filter(|(_, &v)| !visited[v]).map(|(i, _)| m + i));
        cols.sort_unstable();
        cols
    }

    fn star_incidence(&self, field: Field) -> Matrix {
        let mut star = self.graph.clone();
        let apex_label = star.fresh_label("*");
        let apex = star.add_vertex(apex_label).expect("fresh");
        for (&v, l) in self.internal.iter().zip(&self.star_labels) {
            star.add_edge_by_index(l.clone(), v, apex, Some(1)).expect("fresh");
        }
        star.incidence(field)
    }
}

/// The undirected S–T reduction with its column weight.
#[derive(Clone, Debug)]
pub struct StReduction {
    pub pair: MatrixPair,
    pub weights: Vec<i64>,
    pub prepared: PreparedGraph,
}

/// `A₁ = A[S ∪ Ṽ, E*]`, `A₂ = A[T ∪ Ṽ, E*]` for the incidence matrix of the graph with an apex
/// joined to every non-terminal; weight `l` on edges and 0 on the apex star. Constant left unset.
pub fn undirected_st_pair(g: &Graph, spec: &TerminalSpec, field: Field) -> Result<StReduction> {
    two_groups(g, spec)?;
    let prepared = PreparedGraph::new(g, spec)?;
    let a = prepared.star_incidence(field);
    let (s, t) = (&prepared.groups[0], &prepared.groups[1]);
    let rows1: Vec<usize> = s.iter().chain(&prepared.internal).copied().collect();
    let rows2: Vec<usize> = t.iter().chain(&prepared.internal).copied().collect();
    let all: Vec<usize> = (0..a.ncols()).collect();
    let pair = MatrixPair::new(a.select(&rows1, &all), a.select(&rows2, &all), None)?;
    Ok(StReduction { pair, weights: prepared.weights(), prepared })
}

/// The S–T–U (more generally 𝒮-path) parity with its line weight.
#[derive(Clone, Debug)]
pub struct StuReduction {
    pub parity: MatroidParity,
    pub weights: Vec<i64>,
    pub prepared: PreparedGraph,
    pub vectors: Vec<[i64; 2]>,
    /// Terminal order `u₁ … u_{2k}` with the group of each terminal.
    pub terminals: Vec<(usize, usize)>,
    /// Set when the group count is not three, so the constant may vary between paths.
    pub warning: Option<String>,
}

impl StuReduction {
    /// `∏ det [b_α; b_β]` over the pairs `(a, b)` of terminal positions, each taken with `a < b`.
    pub fn c_p(&self, pairs: &[(usize, usize)]) -> i64 {
        pairs
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (a.min(b), a.max(b));
                let (x, y) = (self.vectors[self.terminals[a].1], self.vectors[self.terminals[b].1]);
                x[0] * y[1] - x[1] * y[0]
            })
            .product()
    }
}

/// Rows `u₁ … u_{2k}` then two rows per non-terminal; one line per prepared edge and per star edge.
pub fn stu_parity(g: &Graph, spec: &TerminalSpec, field: Field) -> Result<StuReduction> {
    let vectors = spec.row_vectors()?;
    let prepared = PreparedGraph::new(g, spec)?;
    let terminals: Vec<(usize, usize)> = prepared
        .groups
        .iter()
        .enumerate()
        .flat_map(|(alpha, grp)| grp.iter().map(move |&v| (v, alpha)))
        .collect();
    if terminals.len() % 2 == 1 {
        return Err(Error::InvalidInput(format!("odd number of terminals {}", terminals.len())));
    }
    for (i, x) in vectors.iter().enumerate() {
        for y in &vectors[i + 1..] {
            if field.from_i64(x[0] * y[1] - x[1] * y[0]).is_zero() {
                return Err(Error::InvalidInput(format!("row vectors are dependent over {field}")));
            }
        }
    }
    let h = &prepared.graph;
    let nv = h.vertex_count();
    let mut term_row = vec![None; nv];
    for (i, &(v, alpha)) in terminals.iter().enumerate() {
        term_row[v] = Some((i, alpha));
    }
    let k2 = terminals.len();
    let mut pair_row = vec![None; nv];
    for (i, &v) in prepared.internal.iter().enumerate() {
        pair_row[v] = Some(k2 + 2 * i);
    }
    let mut rows: Vec<String> = terminals.iter().map(|&(v, _)| h.vertices()[v].clone()).collect();
    for &v in &prepared.internal {
        rows.push(format!("{}.x", h.vertices()[v]));
        rows.push(format!("{}.y", h.vertices()[v]));
    }
    let lines = prepared.column_labels();
    let cols: Vec<String> = lines.iter().flat_map(|l| [format!("{l}:1"), format!("{l}:2")]).collect();
    let mut grid = vec![vec![field.zero(); cols.len()]; rows.len()];
    let put_pair = |grid: &mut Grid<Scalar>, row: usize, line: usize, s: i64| {
        grid[row][2 * line] = &grid[row][2 * line] + &field.from_i64(s);
        grid[row + 1][2 * line + 1] = &grid[row + 1][2 * line + 1] + &field.from_i64(s);
    };
    for (j, e) in h.edges().iter().enumerate() {
        match (term_row[e.tail], term_row[e.head]) {
            (Some(_), Some(_)) => return Err(Error::Internal("terminal edge survived subdivision".into())),
            (Some((u, alpha)), None) | (None, Some((u, alpha))) => {
                let v = if term_row[e.tail].is_some() { e.head } else { e.tail };
                grid[u][2 * j] = field.from_i64(vectors[alpha][0]);
                grid[u][2 * j + 1] = field.from_i64(vectors[alpha][1]);
                put_pair(&mut grid, pair_row[v].expect("internal"), j, 1);
            }
            (None, None) if e.tail != e.head => {
                put_pair(&mut grid, pair_row[e.tail].expect("internal"), j, 1);
                put_pair(&mut grid, pair_row[e.head].expect("internal"), j, -1);
            }
            (None, None) => {}
        }
    }
    let m = h.edge_count();
    for (i, &v) in prepared.internal.iter().enumerate() {
        put_pair(&mut grid, pair_row[v].expect("internal"), m + i, 1);
    }
    let a = Matrix::new(field, rows, cols, grid)?;
    let parity = MatroidParity::new(a, lines, None)?;
    let warning = (prepared.groups.len() != 3)
        .then(|| format!("{} terminal groups: the base determinant may vary between paths", prepared.groups.len()));
    Ok(StuReduction { weights: prepared.weights(), parity, prepared, vectors, terminals, warning })
}
