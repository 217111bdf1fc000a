use std::collections::HashSet;

use crate::algebra::perm::combinations;
use crate::algebra::{Field, Matrix, SkewMatrix};
use crate::error::{Error, Result};
use crate::matroid::MatrixPair;

use super::Graph;

/// Label of the copy column `j̄`.
pub fn bar(label: &str) -> String {
    format!("{label}~")
}

/// `((S I), (I I))` on `E ∪ Ē`, constant 1.
///
/// For `j ∈ twist` the two columns of `j` trade labels, so the column named after `j`
/// is always the one whose presence puts `j` into the feasible set.
pub fn delta_matroid_pair(s: &SkewMatrix, twist: &[usize]) -> Result<MatrixPair> {
    let f = s.field();
    let n = s.order();
    let twisted: HashSet<usize> = twist.iter().copied().collect();
    if twisted.iter().any(|&j| j >= n) {
        return Err(Error::InvalidInput("twist element out of range".into()));
    }
    let mut cols = Vec::with_capacity(2 * n);
    for (j, l) in s.labels().iter().enumerate() {
        cols.push(if twisted.contains(&j) { bar(l) } else { l.clone() });
    }
    for (j, l) in s.labels().iter().enumerate() {
        cols.push(if twisted.contains(&j) { l.clone() } else { bar(l) });
    }
    let mut g1 = vec![vec![f.zero(); 2 * n]; n];
    let mut g2 = vec![vec![f.zero(); 2 * n]; n];
    for i in 0..n {
        for j in 0..n {
            g1[i][j] = s.get(i, j).clone();
        }
        g1[i][n + i] = f.one();
        g2[i][i] = f.one();
        g2[i][n + i] = f.one();
    }
    let rows = s.labels().to_vec();
    MatrixPair::new(Matrix::new(f, rows.clone(), cols.clone(), g1)?, Matrix::new(f, rows, cols, g2)?, Some(f.one()))
}

/// The feasible set `(B ∩ E) △ X` of a common base given by column positions.
pub fn feasible_set_of_base(n: usize, base: &[usize], twist: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    for &c in base {
        if c < n {
            inside[c] = true;
        }
    }
    for &x in twist {
        inside[x] = !inside[x];
    }
    (0..n).filter(|&j| inside[j]).collect()
}

/// Enumerates all principal minors; true when each lies in `{−1, 0, 1}`.
pub fn is_principally_unimodular(s: &SkewMatrix) -> Result<bool> {
    let n = s.order();
    for k in 1..=n {
        for idx in combinations(n, k) {
            let d = s.principal(&idx).det()?;
            let ok = d.is_zero() || d.is_one() || (-&d).is_one();
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A 4-regular digraph with a reference tour and the `e⁺`/`e⁻` labels of every vertex.
#[derive(Clone, Debug)]
pub struct EulerSystem {
    /// Per vertex: the two entering edges in list order.
    pub entering: Vec<[usize; 2]>,
    /// Per vertex: `[e⁺, e⁻]`, the leaving edges in list order.
    pub leaving: Vec<[usize; 2]>,
    /// Edge indices in tour order.
    pub tour: Vec<usize>,
}

impl EulerSystem {
    pub fn new(g: &Graph, tour_labels: &[String]) -> Result<EulerSystem> {
        let n = g.vertex_count();
        let mut entering = vec![Vec::with_capacity(2); n];
        let mut leaving = vec![Vec::with_capacity(2); n];
        for (j, e) in g.edges().iter().enumerate() {
            leaving[e.tail].push(j);
            entering[e.head].push(j);
        }
        for v in 0..n {
            if entering[v].len() != 2 || leaving[v].len() != 2 {
                return Err(Error::InvalidInput(format!("vertex '{}' is not of in- and out-degree two", g.vertices()[v])));
            }
        }
        let tour: Vec<usize> = tour_labels
            .iter()
            .map(|l| {
                g.edges()
                    .iter()
                    .position(|e| &e.label == l)
                    .ok_or_else(|| Error::InvalidInput(format!("tour uses unknown edge '{l}'")))
            })
            .collect::<Result<_>>()?;
        if tour.len() != g.edge_count() || tour.iter().collect::<HashSet<_>>().len() != tour.len() {
            return Err(Error::InvalidInput("tour must use every edge exactly once".into()));
        }
        for (i, &e) in tour.iter().enumerate() {
            let next = tour[(i + 1) % tour.len()];
            if g.edges()[e].head != g.edges()[next].tail {
                return Err(Error::InvalidInput(format!(
                    "tour breaks between '{}' and '{}'",
                    g.edges()[e].label,
                    g.edges()[next].label
                )));
            }
        }
        let pair = |v: Vec<usize>| [v[0], v[1]];
        Ok(EulerSystem {
            entering: entering.into_iter().map(pair).collect(),
            leaving: leaving.into_iter().map(pair).collect(),
            tour,
        })
    }

    /// For each vertex, the leaving edge that follows its first entering edge in the tour.
    pub fn reference_transitions(&self, m: usize) -> Vec<usize> {
        let mut succ = vec![0; m];
        for (i, &e) in self.tour.iter().enumerate() {
            succ[e] = self.tour[(i + 1) % self.tour.len()];
        }
        self.entering.iter().map(|ins| succ[ins[0]]).collect()
    }
}

/// `S^U` recording how the reference tour interlaces the leaving edges at each pair of vertices.
pub fn euler_tour_matrix(g: &Graph, sys: &EulerSystem, field: Field) -> Result<SkewMatrix> {
    let n = g.vertex_count();
    let m = sys.tour.len();
    let mut pos = vec![0usize; m];
    for (i, &e) in sys.tour.iter().enumerate() {
        pos[e] = i;
    }
    let entry = |u: usize, v: usize| -> i64 {
        let start = pos[sys.leaving[u][0]];
        let rel = |e: usize| (pos[e] + m - start) % m;
        let (um, vp, vm) = (rel(sys.leaving[u][1]), rel(sys.leaving[v][0]), rel(sys.leaving[v][1]));
        if vp < um && um < vm {
            1
        } else if vm < um && um < vp {
            -1
        } else {
            0
        }
    };
    let labels = g.vertices().to_vec();
    SkewMatrix::from_upper(field, labels, |u, v| field.from_i64(entry(u, v)))
        .and_then(|s| {
            // The rule is skew by construction; confirm the lower triangle agrees.
            for u in 0..n {
                for v in 0..u {
                    if field.from_i64(entry(u, v)) != *s.get(u, v) {
                        return Err(Error::Internal("interlacement rule is not skew".into()));
                    }
                }
            }
            Ok(s)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::count_common_bases;

    #[test]
    fn two_by_two() {
        let q = Field::Rational;
        let s = SkewMatrix::from_i64(q, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let p = delta_matroid_pair(&s, &[]).unwrap();
        assert_eq!(count_common_bases(&p).unwrap().count, q.from_i64(2));
        assert!(is_principally_unimodular(&s).unwrap());
        let t = delta_matroid_pair(&s, &[1]).unwrap();
        assert_eq!(t.col_labels(), &["s0", "s1~", "s0~", "s1"]);
        assert_eq!(feasible_set_of_base(2, &[2, 3], &[1]), vec![1]);
    }

    #[test]
    fn one_vertex_two_loops() {
        let mut g = Graph::new(["v"]).unwrap();
        g.add_edge("a", "v", "v", None).unwrap();
        g.add_edge("b", "v", "v", None).unwrap();
        let sys = EulerSystem::new(&g, &["a".into(), "b".into()]).unwrap();
        let s = euler_tour_matrix(&g, &sys, Field::Rational).unwrap();
        assert!(s.get(0, 0).is_zero());
        assert!(EulerSystem::new(&g, &["a".into()]).is_err());
    }
}
