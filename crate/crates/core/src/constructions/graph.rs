use std::collections::{HashMap, HashSet};

use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub tail: usize,
    pub head: usize,
    pub length: Option<i64>,
}

/// Ordered vertices and an ordered edge list; parallel edges and loops allowed.
///
/// The stored endpoint order is the orientation. Undirected uses treat it as an arbitrary one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_labels: HashSet<String>,
}

pub type UGraph = Graph;
pub type DiGraph = Graph;

impl Graph {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Graph> {
        let mut g = Graph::default();
        for v in vertices {
            g.add_vertex(v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::InvalidInput(format!("duplicate vertex '{label}'")));
        }
        self.index.insert(label.clone(), self.vertices.len());
        self.vertices.push(label);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, label: impl Into<String>, tail: &str, head: &str, length: Option<i64>) -> Result<usize> {
        let (t, h) = (self.vertex(tail)?, self.vertex(head)?);
        self.add_edge_by_index(label, t, h, length)
    }

    pub fn add_edge_by_index(&mut self, label: impl Into<String>, tail: usize, head: usize, length: Option<i64>) -> Result<usize> {
        let label = label.into();
        if tail >= self.vertices.len() || head >= self.vertices.len() {
            return Err(Error::InvalidInput(format!("edge '{label}' has an undeclared endpoint")));
        }
        if !self.edge_labels.insert(label.clone()) {
            return Err(Error::InvalidInput(format!("duplicate edge '{label}'")));
        }
        self.edges.push(Edge { label, tail, head, length });
        Ok(self.edges.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index(label)
            .ok_or_else(|| Error::InvalidInput(format!("undeclared vertex '{label}'")))
    }

    pub fn edge_names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&e| self.edges[e].label.clone()).collect()
    }

    pub fn has_lengths(&self) -> bool {
        self.edges.iter().any(|e| e.length.is_some())
    }

    /// Edge lengths with 1 substituted where absent.
    pub fn lengths(&self) -> Vec<i64> {
        self.edges.iter().map(|e| e.length.unwrap_or(1)).collect()
    }

    /// `+1` at the tail, `−1` at the head; loops give zero columns.
    pub fn incidence(&self, field: Field) -> Matrix {
        let mut g = vec![vec![field.zero(); self.edges.len()]; self.vertices.len()];
        for (j, e) in self.edges.iter().enumerate() {
            if e.tail != e.head {
                g[e.tail][j] = field.one();
                g[e.head][j] = field.from_i64(-1);
            }
        }
        Matrix::new(field, self.vertices.clone(), self.edges.iter().map(|e| e.label.clone()).collect(), g)
            .expect("labels validated on insertion")
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }
    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut dsu = Dsu::new(n);
        for e in &self.edges {
            dsu.union(e.tail, e.head);
        }
        (1..n).all(|v| dsu.find(v) == dsu.find(0))
    }

    /// Kahn order, or `None` when a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.head] += 1;
        }
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for e in self.edges.iter().filter(|e| e.tail == v) {
                indeg[e.head] -= 1;
                if indeg[e.head] == 0 {
                    ready.push(e.head);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// A label not yet used by any vertex or edge, built from `base`.
    pub(crate) fn fresh_label(&self, base: &str) -> String {
        let taken = |s: &str| self.index.contains_key(s) || self.edge_labels.contains(s);
        if !taken(base) {
            return base.to_string();
        }
        (1..).map(|i| format!("{base}{i}")).find(|s| !taken(s)).expect("unbounded")
    }
}

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperedge {
    pub label: String,
    /// The orientation; as a set this is the hyperedge.
    pub verts: [usize; 3],
    pub length: Option<i64>,
}

/// A 3-uniform hypergraph with oriented hyperedges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hypergraph3 {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Hyperedge>,
}

impl Hypergraph3 {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Hypergraph3> {
        let mut h = Hypergraph3::default();
        for v in vertices {
            let v = v.into();
            if h.index.insert(v.clone(), h.vertices.len()).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex '{v}'")));
            }
            h.vertices.push(v);
        }
        Ok(h)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::InvalidInput(format!("duplicate vertex '{label}'")));
        }
        self.index.insert(label.clone(), self.vertices.len());
        self.vertices.push(label);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, label: impl Into<String>, verts: [&str; 3], length: Option<i64>) -> Result<usize> {
        let mut idx = [0; 3];
        for (slot, v) in idx.iter_mut().zip(verts) {
            *slot = *self
                .index
                .get(v)
                .ok_or_else(|| Error::InvalidInput(format!("undeclared vertex '{v}'")))?;
        }
        self.add_edge_by_index(label, idx, length)
    }

    pub fn add_edge_by_index(&mut self, label: impl Into<String>, verts: [usize; 3], length: Option<i64>) -> Result<usize> {
        let label = label.into();
        if verts.iter().any(|&v| v >= self.vertices.len()) {
            return Err(Error::InvalidInput(format!("hyperedge '{label}' has an undeclared vertex")));
        }
        if verts[0] == verts[1] || verts[1] == verts[2] || verts[0] == verts[2] {
            return Err(Error::InvalidInput(format!("hyperedge '{label}' repeats a vertex")));
        }
        if self.edges.iter().any(|e| e.label == label) {
            return Err(Error::InvalidInput(format!("duplicate hyperedge '{label}'")));
        }
        self.edges.push(Hyperedge { label, verts, length });
        Ok(self.edges.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
    pub fn lengths(&self) -> Vec<i64> {
        self.edges.iter().map(|e| e.length.unwrap_or(1)).collect()
    }
    pub fn has_lengths(&self) -> bool {
        self.edges.iter().any(|e| e.length.is_some())
    }

    /// The directed multigraph with arcs `(a,b)` then `(a,c)` per oriented hyperedge `(a,b,c)`.
    pub fn arc_graph(&self) -> Graph {
        let mut g = Graph::new(self.vertices.iter().cloned()).expect("vertices unique");
        for e in &self.edges {
            let [a, b, c] = e.verts;
            g.add_edge_by_index(format!("{}:1", e.label), a, b, None).expect("fresh labels");
            g.add_edge_by_index(format!("{}:2", e.label), a, c, None).expect("fresh labels");
        }
        g
    }
}

/// Ordered terminal groups and the row vectors attached to each group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalSpec {
    pub groups: Vec<Vec<String>>,
    pub vectors: Option<Vec<[i64; 2]>>,
}

impl TerminalSpec {
    pub fn new(groups: Vec<Vec<String>>) -> TerminalSpec {
        TerminalSpec { groups, vectors: None }
    }

    pub fn with_vectors(mut self, vectors: Vec<[i64; 2]>) -> TerminalSpec {
        self.vectors = Some(vectors);
        self
    }

    /// Vertex indices per group; groups must be disjoint.
    pub fn resolve(&self, g: &Graph) -> Result<Vec<Vec<usize>>> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.groups.len());
        for group in &self.groups {
            let mut idx = Vec::with_capacity(group.len());
            for v in group {
                let i = g.vertex(v)?;
                if !seen.insert(i) {
                    return Err(Error::InvalidInput(format!("terminal '{v}' appears twice")));
                }
                idx.push(i);
            }
            out.push(idx);
        }
        Ok(out)
    }

    /// Supplied vectors, or `(1,0), (0,1), (1,1), (1,α−1), …`.
    pub fn row_vectors(&self) -> Result<Vec<[i64; 2]>> {
        let s = self.groups.len();
        let vs = match &self.vectors {
            Some(v) if v.len() != s => {
                return Err(Error::InvalidInput(format!("{} vectors for {} groups", v.len(), s)));
            }
            Some(v) => v.clone(),
            None => (1..=s as i64)
                .map(|a| match a {
                    1 => [1, 0],
                    2 => [0, 1],
                    3 => [1, 1],
                    _ => [1, a - 1],
                })
                .collect(),
        };
        for i in 0..s {
            for j in i + 1..s {
                if vs[i][0] * vs[j][1] - vs[i][1] * vs[j][0] == 0 {
                    return Err(Error::InvalidInput(format!("vectors of groups {} and {} are dependent", i + 1, j + 1)));
                }
            }
        }
        Ok(vs)
    }
}
