use crate::algebra::{Field, Matrix, Scalar, SkewMatrix};
use crate::constructions::{
    arborescence_pair, bipartite_matching_pair, bipartite_matching_sign, dag_st_pair, delta_matroid_pair,
    euler_tour_matrix, general_matching_parity, hypertree_parity, hypertree_sign, is_principally_unimodular,
    matching_sign, spanning_tree_pair, stu_parity, undirected_st_pair, Bipartition, DagReduction, EulerSystem,
    StReduction, StuReduction, TerminalSpec,
};
use crate::error::{Error, Result};
use crate::matroid::{verify_pfaffian_pair, verify_pfaffian_parity, Limits, MatrixPair, MatroidParity, Verdict};
use crate::oracle::{self, StructureEnumeration};

use super::{Instance, Kind, Row};

/// The algebraic object an instance reduces to.
#[derive(Clone, Debug)]
pub enum Target {
    Pair(MatrixPair),
    Parity(MatroidParity),
}

impl Target {
    pub fn field(&self) -> Field {
        match self {
            Target::Pair(p) => p.field(),
            Target::Parity(p) => p.field(),
        }
    }

    /// Ground-set size: columns of a pair, lines of a parity.
    pub fn len(&self) -> usize {
        match self {
            Target::Pair(p) => p.len(),
            Target::Parity(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn verify(&self, limits: &Limits) -> Result<Verdict> {
        match self {
            Target::Pair(p) => verify_pfaffian_pair(p, limits),
            Target::Parity(p) => verify_pfaffian_parity(p, limits),
        }
    }
}

/// Family data kept for the sign checks.
#[derive(Clone, Debug)]
enum Detail {
    None,
    Root(usize),
    Sides(Bipartition),
    Dag(DagReduction),
    St(StReduction),
    Stu(StuReduction),
    Skew(SkewMatrix),
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub target: Target,
    /// One weight per column (pair) or line (parity).
    pub weights: Vec<i64>,
    /// Factor between reduced weights and input lengths.
    pub length_scale: i64,
    pub warning: Option<String>,
    detail: Detail,
}

/// Outcome of one sign identity checked against the enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCheck {
    pub name: &'static str,
    pub holds: bool,
    pub checked: usize,
}

fn grid(field: Field, rows: &[Row]) -> Result<Vec<Vec<Scalar>>> {
    rows.iter().map(|(_, v)| v.iter().map(|q| field.from_rational(q)).collect()).collect()
}

fn matrix(field: Field, rows: &[Row], cols: &[String]) -> Result<Matrix> {
    Matrix::new(field, rows.iter().map(|r| r.0.clone()).collect(), cols.to_vec(), grid(field, rows)?)
}

impl Instance {
    fn root_index(&self) -> usize {
        let find = |r: &String| match self.kind {
            Kind::Hypertree => self.hypergraph.vertex_index(r),
            _ => self.graph.vertex_index(r),
        };
        self.root.as_ref().and_then(find).unwrap_or(0)
    }

    fn spec(&self) -> TerminalSpec {
        let spec = TerminalSpec::new(self.groups.clone());
        if self.vectors.is_empty() {
            spec
        } else {
            spec.with_vectors(self.vectors.clone())
        }
    }

    fn skew(&self, field: Field) -> Result<(SkewMatrix, Vec<usize>)> {
        let s = SkewMatrix::new(field, self.elements.clone(), grid(field, &self.rows)?)?;
        let twist = self
            .twist
            .iter()
            .map(|t| self.elements.iter().position(|e| e == t).expect("checked on parse"))
            .collect();
        Ok((s, twist))
    }

    fn need_vertices(&self) -> Result<()> {
        let n = match self.kind {
            Kind::Hypertree => self.hypergraph.vertex_count(),
            _ => self.graph.vertex_count(),
        };
        if n == 0 {
            return Err(Error::InvalidInput(format!("family {} needs at least one vertex", self.kind)));
        }
        Ok(())
    }

    /// Runs the family's construction over `field` (the file's field when `None`).
    pub fn build(&self, field: Option<Field>) -> Result<Reduction> {
        let field = field.unwrap_or(self.field);
        let g = &self.graph;
        let lengths = g.lengths();
        let plain = |target: Target, weights: Vec<i64>, detail: Detail| Reduction {
            target,
            weights,
            length_scale: 1,
            warning: None,
            detail,
        };
        let mut red = match self.kind {
            Kind::Tree | Kind::Arborescence => {
                self.need_vertices()?;
                let root = self.root_index();
                let pair = if self.kind == Kind::Tree {
                    spanning_tree_pair(g, root, field)?
                } else {
                    arborescence_pair(g, root, field)?
                };
                plain(Target::Pair(pair), lengths, Detail::Root(root))
            }
            Kind::Matching => plain(Target::Parity(general_matching_parity(g, field)?), lengths, Detail::None),
            Kind::BipartiteMatching => {
                let sides = Bipartition::new(g, &self.left, &self.right)?;
                let pair = bipartite_matching_pair(g, &sides, field)?;
                plain(Target::Pair(pair), lengths, Detail::Sides(sides))
            }
            Kind::Hypertree => {
                self.need_vertices()?;
                let root = self.root_index();
                let parity = hypertree_parity(&self.hypergraph, root, field)?;
                plain(Target::Parity(parity), self.hypergraph.lengths(), Detail::Root(root))
            }
            Kind::DagSt => {
                let dag = dag_st_pair(g, &self.spec(), field)?;
                let mut w = lengths;
                w.resize(dag.pair.len(), 0);
                plain(Target::Pair(dag.pair.clone()), w, Detail::Dag(dag))
            }
            Kind::St => {
                let st = undirected_st_pair(g, &self.spec(), field)?;
                Reduction {
                    target: Target::Pair(st.pair.clone()),
                    weights: st.weights.clone(),
                    length_scale: st.prepared.length_scale,
                    warning: None,
                    detail: Detail::St(st),
                }
            }
            Kind::Stu => {
                let stu = stu_parity(g, &self.spec(), field)?;
                Reduction {
                    target: Target::Parity(stu.parity.clone()),
                    weights: stu.weights.clone(),
                    length_scale: stu.prepared.length_scale,
                    warning: stu.warning.clone(),
                    detail: Detail::Stu(stu),
                }
            }
            Kind::DeltaMatroid => {
                let (s, twist) = self.skew(field)?;
                let pair = delta_matroid_pair(&s, &twist)?;
                let n = pair.len();
                plain(Target::Pair(pair), vec![0; n], Detail::Skew(s))
            }
            Kind::Euler => {
                let sys = EulerSystem::new(g, &self.tour)?;
                let s = euler_tour_matrix(g, &sys, field)?;
                let pair = delta_matroid_pair(&s, &[])?;
                let n = pair.len();
                plain(Target::Pair(pair), vec![0; n], Detail::None)
            }
            Kind::RawPair => {
                let a1 = matrix(field, &self.rows1, &self.columns)?;
                let a2 = matrix(field, &self.rows2, &self.columns)?;
                let pair = MatrixPair::new(a1, a2, None)?;
                plain(Target::Pair(pair), self.raw_weights(&self.columns), Detail::None)
            }
            Kind::RawParity => {
                let a = matrix(field, &self.rows, &self.columns)?;
                let parity = MatroidParity::from_pairs(&a, &self.lines, None)?;
                let names: Vec<String> = self.lines.iter().map(|l| l.0.clone()).collect();
                plain(Target::Parity(parity), self.raw_weights(&names), Detail::None)
            }
        };
        if let Some(c) = &self.constant {
            let c = field.from_rational(c)?;
            if c.is_zero() {
                return Err(Error::InvalidInput(format!("the constant vanishes over {field}")));
            }
            red.target = match red.target {
                Target::Pair(p) => Target::Pair(p.with_constant(Some(c))),
                Target::Parity(p) => Target::Parity(p.with_constant(Some(c))),
            };
        }
        Ok(red)
    }

    /// Brute-force enumeration of the family's structures over `field`.
    pub fn enumerate(&self, field: Option<Field>, limits: &Limits) -> Result<StructureEnumeration> {
        let field = field.unwrap_or(self.field);
        let g = &self.graph;
        match self.kind {
            Kind::Tree => oracle::spanning_trees(g, field, limits),
            Kind::Arborescence => {
                self.need_vertices()?;
                oracle::arborescences(g, self.root_index(), field, limits)
            }
            Kind::Matching => oracle::perfect_matchings(g, field, limits),
            Kind::BipartiteMatching => {
                oracle::bipartite_matchings(g, &Bipartition::new(g, &self.left, &self.right)?, field, limits)
            }
            Kind::Hypertree => oracle::spanning_hypertrees(&self.hypergraph, field, limits),
            Kind::DagSt => oracle::dag_paths(g, &self.spec(), field, limits),
            Kind::St => oracle::st_paths(g, &self.spec(), field, limits),
            Kind::Stu => oracle::terminal_paths(g, &self.spec(), field, limits),
            Kind::DeltaMatroid => {
                let (s, twist) = self.skew(field)?;
                oracle::feasible_sets(&s, &twist, limits)
            }
            Kind::Euler => oracle::euler_tours(g, &EulerSystem::new(g, &self.tour)?, field, limits),
            Kind::RawPair | Kind::RawParity => {
                let red = self.build(Some(field))?;
                match &red.target {
                    Target::Pair(p) => oracle::common_bases(p, Some(&red.weights), limits),
                    Target::Parity(p) => oracle::parity_bases(p, Some(&red.weights), limits),
                }
            }
        }
    }
}

impl Reduction {
    /// The family's sign identities, each checked on every enumerated structure.
    pub fn sign_checks(&self, inst: &Instance, en: &StructureEnumeration) -> Result<Vec<SignCheck>> {
        let f = self.target.field();
        let g = &inst.graph;
        let check = |name: &'static str, ok: &mut dyn FnMut(&oracle::Structure) -> bool| SignCheck {
            name,
            holds: en.items.iter().all(|s| ok(s)),
            checked: en.items.len(),
        };
        let sign = |s: &oracle::Structure| s.sign.clone();
        let minus_one_to = |k: usize| if k % 2 == 0 { f.one() } else { f.from_i64(-1) };
        let out = match (&self.detail, &self.target) {
            (Detail::Root(_), Target::Pair(p)) => {
                vec![check("base-product-is-one", &mut |s| p.base_product(&s.elements) == f.one())]
            }
            (Detail::Root(root), Target::Parity(p)) => {
                let h = &inst.hypergraph;
                vec![check("hypertree-sign", &mut |s| {
                    hypertree_sign(h, &s.elements)
                        .is_some_and(|t| p.base_det(&s.elements) == &minus_one_to(*root) * &f.from_i64(t as i64))
                })]
            }
            (Detail::Sides(sides), Target::Pair(p)) => vec![check("bipartite-matching-sign", &mut |s| {
                bipartite_matching_sign(g, sides, &s.elements)
                    .is_some_and(|t| p.base_product(&s.elements) == f.from_i64(t as i64))
            })],
            (Detail::None, Target::Parity(p)) if inst.kind == Kind::Matching => {
                vec![check("matching-sign", &mut |s| {
                    matching_sign(g, &s.elements).is_some_and(|t| p.base_det(&s.elements) == f.from_i64(t as i64))
                })]
            }
            (Detail::Dag(dag), Target::Pair(p)) => {
                let k = minus_one_to(dag.k());
                vec![check("path-matching-sign", &mut |s| {
                    p.base_product(&dag.matching_of_paths(g, &s.elements)) == &k * &sign(s)
                })]
            }
            (Detail::St(st), Target::Pair(p)) => {
                let k = minus_one_to(st.prepared.groups[0].len());
                vec![check("path-base-sign", &mut |s| {
                    let cols = st.prepared.base_of_paths(&st.prepared.lift_edges(&s.elements));
                    &k * &p.base_product(&cols) == sign(s)
                })]
            }
            (Detail::Stu(stu), Target::Parity(p)) => vec![check("path-base-sign", &mut |s| {
                let cols = stu.prepared.base_of_paths(&stu.prepared.lift_edges(&s.elements));
                let factor = s.factor.unwrap_or(1);
                p.base_det(&cols) == &f.from_i64(factor) * &sign(s)
            })],
            (Detail::Skew(s), _) => vec![SignCheck {
                name: "principally-unimodular",
                holds: is_principally_unimodular(s)?,
                checked: 1,
            }],
            _ => Vec::new(),
        };
        Ok(out)
    }

    /// Whether the reduced object can be counted by its determinant or Pfaffian:
    /// enumerates bases, so it is guarded by `limits`.
    pub fn verify(&self, limits: &Limits) -> Result<Verdict> {
        self.target.verify(limits)
    }
}
