//! Brute-force enumeration of every structure family, independent of the algebraic routes.

use std::fmt;

use crate::algebra::perm::combinations;
use crate::algebra::{Field, Ring, Scalar, SkewMatrix};
use crate::constructions::{
    bipartite_matching_sign, hypertree_sign, matching_sign, pairing_sign, path_sign, Bipartition, Dsu,
    EulerSystem, Graph, Hypergraph3, TerminalSpec,
};
use crate::error::{Error, Result};
use crate::matroid::{Limits, MatrixPair, MatroidParity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SpanningTrees,
    Arborescences,
    BipartiteMatchings,
    PerfectMatchings,
    Hypertrees,
    DagPaths,
    StPaths,
    TerminalPaths,
    FeasibleSets,
    EulerTours,
    CommonBases,
    ParityBases,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::SpanningTrees => "spanning-trees",
            Family::Arborescences => "arborescences",
            Family::BipartiteMatchings => "bipartite-matchings",
            Family::PerfectMatchings => "perfect-matchings",
            Family::Hypertrees => "spanning-hypertrees",
            Family::DagPaths => "disjoint-directed-paths",
            Family::StPaths => "disjoint-st-paths",
            Family::TerminalPaths => "disjoint-terminal-paths",
            Family::FeasibleSets => "feasible-sets",
            Family::EulerTours => "euler-tours",
            Family::CommonBases => "common-bases",
            Family::ParityBases => "parity-bases",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    /// Sorted positions in the ground set (edges, hyperedges, vertices, columns or lines).
    pub elements: Vec<usize>,
    pub labels: Vec<String>,
    pub weight: i64,
    /// `±1` for combinatorial families; the determinant (product) for bases and feasible sets.
    pub sign: Scalar,
    /// Linkage of path families: the partner of each source or terminal in order.
    pub linkage: Vec<usize>,
    /// Product of row-vector determinants for terminal paths.
    pub factor: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEnumeration {
    pub family: Family,
    pub field: Field,
    pub items: Vec<Structure>,
}

impl StructureEnumeration {
    fn new(family: Family, field: Field, mut items: Vec<Structure>) -> StructureEnumeration {
        items.sort_by(|a, b| a.elements.cmp(&b.elements));
        StructureEnumeration { family, field, items }
    }

    pub fn count(&self) -> usize {
        self.items.len()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.items.iter().map(|s| s.weight).min()
    }

    pub fn min_weight_count(&self) -> usize {
        self.min_weight().map_or(0, |w| self.items.iter().filter(|s| s.weight == w).count())
    }

    /// Structures of total weight exactly `x`.
    pub fn weight_slice(&self, x: i64) -> impl Iterator<Item = &Structure> {
        self.items.iter().filter(move |s| s.weight == x)
    }

    /// The common value of all signs, if there is one.
    pub fn uniform_sign(&self) -> Option<&Scalar> {
        let first = &self.items.first()?.sign;
        self.items.iter().all(|s| &s.sign == first).then_some(first)
    }
}

/// `Σ sign · ∏_{e ∈ S} z_e` over the enumeration.
pub fn signed_sum<R: Ring>(
    en: &StructureEnumeration,
    ring: &R,
    embed: impl Fn(&Scalar) -> R::Elem,
    z: &[R::Elem],
) -> R::Elem {
    let mut acc = ring.zero();
    for s in &en.items {
        let mut t = embed(&s.sign);
        for &e in &s.elements {
            t = ring.mul(&t, &z[e]);
        }
        acc = ring.add(&acc, &t);
    }
    acc
}

fn plain(field: Field, elements: Vec<usize>, labels: Vec<String>, weight: i64, sign: i8) -> Structure {
    Structure { elements, labels, weight, sign: field.from_i64(sign as i64), linkage: Vec::new(), factor: None }
}

fn weight_of(lengths: &[i64], elements: &[usize]) -> i64 {
    elements.iter().map(|&e| lengths[e]).sum()
}

fn forms_forest(n: usize, ends: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut dsu = Dsu::new(n);
    ends.into_iter().all(|(a, b)| a != b && dsu.union(a, b))
}

pub fn spanning_trees(g: &Graph, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    Limits::check("edges", g.edge_count(), limits.edges)?;
    let n = g.vertex_count();
    let len = g.lengths();
    let items = if n == 0 {
        Vec::new()
    } else {
        combinations(g.edge_count(), n - 1)
            .filter(|t| forms_forest(n, t.iter().map(|&e| (g.edges()[e].tail, g.edges()[e].head))))
            .map(|t| plain(field, t.clone(), g.edge_names(&t), weight_of(&len, &t), 1))
            .collect()
    };
    Ok(StructureEnumeration::new(Family::SpanningTrees, field, items))
}

/// Spanning trees in which every vertex except `root` has exactly one entering arc.
pub fn arborescences(g: &Graph, root: usize, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    Limits::check("edges", g.edge_count(), limits.edges)?;
    let n = g.vertex_count();
    if root >= n {
        return Err(Error::InvalidInput(format!("root index {root} out of range")));
    }
    let len = g.lengths();
    let items = combinations(g.edge_count(), n - 1)
        .filter(|t| {
            let mut indeg = vec![0; n];
            for &e in t {
                indeg[g.edges()[e].head] += 1;
            }
            (0..n).all(|v| indeg[v] == usize::from(v != root))
                && forms_forest(n, t.iter().map(|&e| (g.edges()[e].tail, g.edges()[e].head)))
        })
        .map(|t| plain(field, t.clone(), g.edge_names(&t), weight_of(&len, &t), 1))
        .collect();
    Ok(StructureEnumeration::new(Family::Arborescences, field, items))
}

fn matchings(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Vec::new();
    }
    combinations(g.edge_count(), n / 2)
        .filter(|m| {
            let mut hit = vec![false; n];
            m.iter().all(|&e| {
                let ed = &g.edges()[e];
                ed.tail != ed.head
                    && !std::mem::replace(&mut hit[ed.tail], true)
                    && !std::mem::replace(&mut hit[ed.head], true)
            })
        })
        .collect()
}

pub fn perfect_matchings(g: &Graph, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    Limits::check("edges", g.edge_count(), limits.edges)?;
    let len = g.lengths();
    let items = matchings(g)
        .into_iter()
        .map(|m| {
            let s = matching_sign(g, &m).expect("perfect matching");
            plain(field, m.clone(), g.edge_names(&m), weight_of(&len, &m), s)
        })
        .collect();
    Ok(StructureEnumeration::new(Family::PerfectMatchings, field, items))
}

pub fn bipartite_matchings(
    g: &Graph,
    sides: &Bipartition,
    field: Field,
    limits: &Limits,
) -> Result<StructureEnumeration> {
    Limits::check("edges", g.edge_count(), limits.edges)?;
    let len = g.lengths();
    let items = matchings(g)
        .into_iter()
        .map(|m| {
            let s = bipartite_matching_sign(g, sides, &m).expect("perfect matching");
            plain(field, m.clone(), g.edge_names(&m), weight_of(&len, &m), s)
        })
        .collect();
    Ok(StructureEnumeration::new(Family::BipartiteMatchings, field, items))
}

/// Hyperedge sets whose two arcs each form a spanning tree, signed by `sgn T⃗`.
pub fn spanning_hypertrees(h: &Hypergraph3, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    Limits::check("hyperedges", h.edge_count(), limits.hyperedges)?;
    let n = h.vertex_count();
    let len = h.lengths();
    let items = if n % 2 == 0 {
        Vec::new()
    } else {
        combinations(h.edge_count(), n / 2)
            .filter(|t| {
                forms_forest(
                    n,
                    t.iter().flat_map(|&e| {
                        let [a, b, c] = h.edges()[e].verts;
                        [(a, b), (a, c)]
                    }),
                )
            })
            .map(|t| {
                let s = hypertree_sign(h, &t).expect("a spanning hypertree yields one cycle");
                let labels = t.iter().map(|&e| h.edges()[e].label.clone()).collect();
                plain(field, t.clone(), labels, weight_of(&len, &t), s)
            })
            .collect()
    };
    Ok(StructureEnumeration::new(Family::Hypertrees, field, items))
}

/// Depth-first search for vertex-disjoint path systems.
struct PathSearch<'a> {
    g: &'a Graph,
    directed: bool,
    /// Per vertex: the terminal index, if any.
    terminal: Vec<Option<usize>>,
    used: Vec<bool>,
    edges: Vec<usize>,
    found: Vec<(Vec<usize>, Vec<(usize, usize)>)>,
}

impl PathSearch<'_> {
    fn neighbours(&self, v: usize) -> Vec<(usize, usize)> {
        self.g
            .edges()
            .iter()
            .enumerate()
            .filter_map(|(j, e)| {
                if e.tail == e.head {
                    None
                } else if e.tail == v {
                    Some((j, e.head))
                } else if !self.directed && e.head == v {
                    Some((j, e.tail))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Extends the path ending at `v` towards any terminal accepted by `accept`, then calls `next`.
    fn walk(
        &mut self,
        v: usize,
        accept: &dyn Fn(usize) -> bool,
        next: &mut dyn FnMut(&mut Self, usize),
    ) {
        for (j, w) in self.neighbours(v) {
            if self.used[w] {
                continue;
            }
            match self.terminal[w] {
                Some(t) if accept(t) => {
                    self.used[w] = true;
                    self.edges.push(j);
                    next(self, t);
                    self.edges.pop();
                    self.used[w] = false;
                }
                Some(_) => {}
                None => {
                    self.used[w] = true;
                    self.edges.push(j);
                    self.walk(w, accept, next);
                    self.edges.pop();
                    self.used[w] = false;
                }
            }
        }
    }
}

/// Linkages from `sources[i]` to sinks, one path per source, all vertex-disjoint.
fn linkages(g: &Graph, sources: &[usize], sinks: &[usize], directed: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    let k = sources.len();
    let mut terminal = vec![None; g.vertex_count()];
    for (i, &s) in sources.iter().enumerate() {
        terminal[s] = Some(i);
    }
    for (i, &t) in sinks.iter().enumerate() {
        terminal[t] = Some(k + i);
    }
    let mut search = PathSearch {
        g,
        directed,
        terminal,
        used: vec![false; g.vertex_count()],
        edges: Vec::new(),
        found: Vec::new(),
    };
    for &s in sources {
        search.used[s] = true;
    }
    fn step(search: &mut PathSearch, i: usize, k: usize, sources: &[usize], pairs: &mut Vec<(usize, usize)>) {
        if i == k {
            search.found.push((search.edges.clone(), pairs.clone()));
            return;
        }
        let accept = move |t: usize| t >= k;
        let mut next = |s: &mut PathSearch, t: usize| {
            pairs.push((i, t - k));
            step(s, i + 1, k, sources, pairs);
            pairs.pop();
        };
        search.walk(sources[i], &accept, &mut next);
    }
    step(&mut search, 0, k, sources, &mut Vec::new());
    search
        .found
        .into_iter()
        .map(|(mut edges, pairs)| {
            edges.sort_unstable();
            (edges, pairs.into_iter().map(|(_, t)| t).collect())
        })
        .collect()
}

fn two_groups(g: &Graph, spec: &TerminalSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    let groups = spec.resolve(g)?;
    match <[Vec<usize>; 2]>::try_from(groups) {
        Ok([s, t]) if s.len() == t.len() => Ok((s, t)),
        _ => Err(Error::InvalidInput("expected two terminal groups of equal size".into())),
    }
}

fn path_family(g: &Graph, spec: &TerminalSpec, directed: bool, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    Limits::check("edges", g.edge_count(), limits.edges)?;
    let (s, t) = two_groups(g, spec)?;
    let len = g.lengths();
    let items = linkages(g, &s, &t, directed)
        .into_iter()
        .map(|(edges, sigma)| Structure {
            labels: g.edge_names(&edges),
            weight: weight_of(&len, &edges),
            sign: field.from_i64(path_sign(&sigma) as i64),
            elements: edges,
            linkage: sigma,
            factor: None,
        })
        .collect();
    let family = if directed { Family::DagPaths } else { Family::StPaths };
    Ok(StructureEnumeration::new(family, field, items))
}

/// Vertex-disjoint directed paths linking each source to a distinct sink.
pub fn dag_paths(g: &Graph, spec: &TerminalSpec, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    path_family(g, spec, true, field, limits)
}

/// Vertex-disjoint undirected paths linking each source to a distinct sink.
pub fn st_paths(g: &Graph, spec: &TerminalSpec, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    path_family(g, spec, false, field, limits)
}

/// Vertex-disjoint paths pairing up all terminals, each joining two different groups.
/// `linkage[i]` is the partner of terminal `i` in group-concatenated order.
pub fn terminal_paths(g: &Graph, spec: &TerminalSpec, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    Limits::check("edges", g.edge_count(), limits.edges)?;
    let groups = spec.resolve(g)?;
    let vectors = spec.row_vectors()?;
    let order: Vec<(usize, usize)> =
        groups.iter().enumerate().flat_map(|(a, gr)| gr.iter().map(move |&v| (v, a))).collect();
    let k2 = order.len();
    let len = g.lengths();
    if k2 % 2 == 1 {
        return Ok(StructureEnumeration::new(Family::TerminalPaths, field, Vec::new()));
    }
    let mut terminal = vec![None; g.vertex_count()];
    for (i, &(v, _)) in order.iter().enumerate() {
        terminal[v] = Some(i);
    }
    let mut search = PathSearch {
        g,
        directed: false,
        terminal,
        used: vec![false; g.vertex_count()],
        edges: Vec::new(),
        found: Vec::new(),
    };
    fn step(search: &mut PathSearch, order: &[(usize, usize)], paired: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>) {
        let Some(a) = paired.iter().position(|p| !p) else {
            search.found.push((search.edges.clone(), pairs.clone()));
            return;
        };
        paired[a] = true;
        search.used[order[a].0] = true;
        let snapshot = paired.clone();
        let accept = move |t: usize| !snapshot[t] && order[t].1 != order[a].1;
        let mut next = |s: &mut PathSearch, t: usize| {
            paired[t] = true;
            pairs.push((a, t));
            step(s, order, paired, pairs);
            pairs.pop();
            paired[t] = false;
        };
        search.walk(order[a].0, &accept, &mut next);
        search.used[order[a].0] = false;
        paired[a] = false;
    }
    step(&mut search, &order, &mut vec![false; k2], &mut Vec::new());
    let det2 = |a: usize, b: usize| {
        let (x, y) = (vectors[order[a].1], vectors[order[b].1]);
        x[0] * y[1] - x[1] * y[0]
    };
    let items = search
        .found
        .into_iter()
        .map(|(mut edges, pairs)| {
            edges.sort_unstable();
            let mut linkage = vec![0; k2];
            for &(a, b) in &pairs {
                linkage[a] = b;
                linkage[b] = a;
            }
            Structure {
                labels: g.edge_names(&edges),
                weight: weight_of(&len, &edges),
                sign: field.from_i64(pairing_sign(&pairs) as i64),
                factor: Some(pairs.iter().map(|&(a, b)| det2(a, b)).product()),
                elements: edges,
                linkage,
            }
        })
        .collect();
    Ok(StructureEnumeration::new(Family::TerminalPaths, field, items))
}

/// Subsets `F` with `S[F]` nonsingular, each signed by `det S[F]`.
pub fn feasible_sets(s: &SkewMatrix, twist: &[usize], limits: &Limits) -> Result<StructureEnumeration> {
    let n = s.order();
    Limits::check("elements", n, limits.edges)?;
    let mut items = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let f: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let d = s.principal(&f).det()?;
        if d.is_zero() {
            continue;
        }
        let mut inside = vec![false; n];
        for &j in &f {
            inside[j] = true;
        }
        for &x in twist {
            inside[x] = !inside[x];
        }
        let twisted: Vec<usize> = (0..n).filter(|&j| inside[j]).collect();
        let labels = twisted.iter().map(|&j| s.labels()[j].clone()).collect();
        items.push(Structure { elements: twisted, labels, weight: 0, sign: d, linkage: Vec::new(), factor: None });
    }
    Ok(StructureEnumeration::new(Family::FeasibleSets, s.field(), items))
}

/// Euler tours as the vertex sets where their transitions differ from the reference tour's.
pub fn euler_tours(g: &Graph, sys: &EulerSystem, field: Field, limits: &Limits) -> Result<StructureEnumeration> {
    Limits::check("edges", g.edge_count(), limits.edges)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let reference = sys.reference_transitions(m);
    let mut items = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let mut succ = vec![usize::MAX; m];
        for v in 0..n {
            let [i1, i2] = sys.entering[v];
            let [o1, o2] = sys.leaving[v];
            let first = if reference[v] == o1 { o1 } else { o2 };
            let other = if first == o1 { o2 } else { o1 };
            let (a, b) = if mask >> v & 1 == 1 { (other, first) } else { (first, other) };
            succ[i1] = a;
            succ[i2] = b;
        }
        let mut len = 1;
        let mut e = succ[0];
        while e != 0 && len <= m {
            e = succ[e];
            len += 1;
        }
        if len == m {
            let f: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let labels = f.iter().map(|&v| g.vertices()[v].clone()).collect();
            items.push(plain(field, f, labels, 0, 1));
        }
    }
    Ok(StructureEnumeration::new(Family::EulerTours, field, items))
}

pub fn common_bases(pair: &MatrixPair, weights: Option<&[i64]>, limits: &Limits) -> Result<StructureEnumeration> {
    let items = pair
        .common_bases(limits)?
        .into_iter()
        .map(|(b, v)| Structure {
            labels: pair.col_names(&b),
            weight: weights.map_or(0, |w| weight_of(w, &b)),
            elements: b,
            sign: v,
            linkage: Vec::new(),
            factor: None,
        })
        .collect();
    Ok(StructureEnumeration::new(Family::CommonBases, pair.field(), items))
}

pub fn parity_bases(parity: &MatroidParity, weights: Option<&[i64]>, limits: &Limits) -> Result<StructureEnumeration> {
    let items = parity
        .parity_bases(limits)?
        .into_iter()
        .map(|(b, v)| Structure {
            labels: parity.line_names(&b),
            weight: weights.map_or(0, |w| weight_of(w, &b)),
            elements: b,
            sign: v,
            linkage: Vec::new(),
            factor: None,
        })
        .collect();
    Ok(StructureEnumeration::new(Family::ParityBases, parity.field(), items))
}
