//! Minimum-cost perfect assignment with dual potentials.

/// An optimal assignment with feasible duals: `row[i] + col[j] ≤ cost[i][j]` on every edge,
/// with equality on the assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    /// Column matched to each row.
    pub matching: Vec<usize>,
    pub row: Vec<i64>,
    pub col: Vec<i64>,
    pub cost: i64,
}

/// Hungarian method on a square matrix with `None` marking absent edges.
/// Returns `None` when no perfect matching exists.
pub fn assignment(cost: &[Vec<Option<i64>>]) -> Option<Assignment> {
    let n = cost.len();
    if n == 0 {
        return Some(Assignment { matching: Vec::new(), row: Vec::new(), col: Vec::new(), cost: 0 });
    }
    let span: i128 = cost.iter().flatten().flatten().map(|&c| (c as i128).abs()).sum::<i128>() + 1;
    let inf_edge = span * (n as i128 + 1);
    let c = |i: usize, j: usize| cost[i][j].map_or(inf_edge, |v| v as i128);
    // 1-based arrays; index 0 is the virtual column.
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i128::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i128::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = c(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut matching = vec![0; n];
    for j in 1..=n {
        matching[p[j] - 1] = j - 1;
    }
    if matching.iter().enumerate().any(|(i, &j)| cost[i][j].is_none()) {
        return None;
    }
    let total: i64 = matching.iter().enumerate().map(|(i, &j)| cost[i][j].expect("edge")).sum();
    let row: Vec<i64> = u[1..].iter().map(|&x| x as i64).collect();
    let col: Vec<i64> = v[1..].iter().map(|&x| x as i64).collect();
    Some(Assignment { matching, row, col, cost: total })
}

impl Assignment {
    /// Dual feasibility on all edges and complementary slackness on the matching.
    pub fn is_optimal(&self, cost: &[Vec<Option<i64>>]) -> bool {
        let feasible = cost.iter().enumerate().all(|(i, r)| {
            r.iter().enumerate().all(|(j, c)| c.map_or(true, |c| self.row[i] + self.col[j] <= c))
        });
        let tight = self.matching.iter().enumerate().all(|(i, &j)| cost[i][j] == Some(self.row[i] + self.col[j]));
        let dual: i64 = self.row.iter().sum::<i64>() + self.col.iter().sum::<i64>();
        feasible && tight && dual == self.cost
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_assignment() {
        let c = vec![
            vec![Some(4), Some(1), Some(3)],
            vec![Some(2), Some(0), Some(5)],
            vec![Some(3), Some(2), Some(2)],
        ];
        let a = assignment(&c).unwrap();
        assert_eq!(a.cost, 5);
        assert!(a.is_optimal(&c));
    }

    #[test]
    fn missing_edges() {
        let c = vec![vec![Some(1), None], vec![Some(1), None]];
        assert!(assignment(&c).is_none());
        let d = vec![vec![None, Some(7)], vec![Some(-2), None]];
        let a = assignment(&d).unwrap();
        assert_eq!((a.cost, a.matching.clone()), (5, vec![1, 0]));
        assert!(a.is_optimal(&d));
    }
}
