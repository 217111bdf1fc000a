use crate::algebra::elim::Grid;
use crate::algebra::perm::inversion_sign;
use crate::algebra::{Field, Ring};
use crate::error::{Error, Result};
use crate::matroid::MatroidParity;

use super::Hypergraph3;

/// Parity of the arc graph's incidence matrix with row `root` removed; one line per hyperedge.
/// The constant is left unset.
pub fn hypertree_parity(h: &Hypergraph3, root: usize, field: Field) -> Result<MatroidParity> {
    let n = h.vertex_count();
    if n % 2 == 0 {
        return Err(Error::InvalidInput(format!("even vertex count {n}: no spanning hypertree")));
    }
    if root >= n {
        return Err(Error::InvalidInput(format!("root index {root} out of range")));
    }
    let a = h.arc_graph().incidence(field);
    let keep: Vec<usize> = (0..n).filter(|&i| i != root).collect();
    let lines = h.edges().iter().map(|e| e.label.clone()).collect();
    MatroidParity::new(a.select_rows(&keep), lines, None)
}

/// `Λ(z)` with each hyperedge `{vᵢ, vⱼ, v_k}` adding `ε_{ijk} ε_{abc} z_e` at `(i, j)`,
/// where `(a, b, c)` is its orientation. For increasingly oriented hyperedges this is `ε_{ijk} z_e`.
pub fn lambda_grid<R: Ring>(ring: &R, h: &Hypergraph3, z: &[R::Elem]) -> Result<Grid<R::Elem>> {
    if z.len() != h.edge_count() {
        return Err(Error::Dimension(format!("z has {} entries for {} hyperedges", z.len(), h.edge_count())));
    }
    let n = h.vertex_count();
    let mut g = vec![vec![ring.zero(); n]; n];
    for (e, ze) in h.edges().iter().zip(z) {
        let orient = inversion_sign(&e.verts);
        for (x, y, w) in [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (2, 1, 0), (0, 2, 1)] {
            let (i, j, k) = (e.verts[x], e.verts[y], e.verts[w]);
            let t = if inversion_sign(&[i, j, k]) * orient > 0 { ze.clone() } else { ring.neg(ze) };
            g[i][j] = ring.add(&g[i][j], &t);
        }
    }
    Ok(g)
}

/// `Λ⁽ʳ⁾(z)`: row and column `root` removed.
pub fn lambda_minor<R: Ring>(ring: &R, h: &Hypergraph3, root: usize, z: &[R::Elem]) -> Result<Grid<R::Elem>> {
    let g = lambda_grid(ring, h, z)?;
    Ok(g.into_iter()
        .enumerate()
        .filter(|(i, _)| *i != root)
        .map(|(_, row)| row.into_iter().enumerate().filter(|(j, _)| *j != root).map(|(_, x)| x).collect())
        .collect())
}

/// `sgn T⃗`: the product of the 3-cycles `(a b c)` in the given order must be a single cycle
/// `(s₁ … s_{2n+1})`, and the result is the sign of `s`. `None` if the product is not one full cycle.
pub fn hypertree_sign(h: &Hypergraph3, tree: &[usize]) -> Option<i8> {
    let n = h.vertex_count();
    if n != 2 * tree.len() + 1 {
        return None;
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    // Apply the rightmost factor first.
    for &e in tree.iter().rev() {
        let [a, b, c] = h.edges()[e].verts;
        for x in sigma.iter_mut() {
            *x = if *x == a {
                b
            } else if *x == b {
                c
            } else if *x == c {
                a
            } else {
                *x
            };
        }
    }
    let mut s = Vec::with_capacity(n);
    let mut x = 0;
    loop {
        s.push(x);
        x = sigma[x];
        if x == 0 {
            break;
        }
    }
    (s.len() == n).then(|| inversion_sign(&s))
}
