mod common;

use common::{int_grid, leibniz_det, pairing_pf};
use num_bigint::BigInt;
use pfcount::algebra::elim;
use pfcount::algebra::{
    crt_reconstruct, poly_matrix_pfaffian, poly_matrix_pfaffian_eliminated, poly_matrix_pfaffian_interpolated, schur_complement, Field, Matrix,
    MultiPolyRing, Ring, Scalar, SkewMatrix, WeightPoly, WeightPolyRing,
};
use proptest::prelude::*;

#[test]
fn det_gf7_matches_leibniz() {
    let f = Field::Prime(7);
    let g = int_grid(f, &[&[3, 6, 0, 2], &[5, 1, 4, 4], &[2, 2, 6, 1], &[0, 3, 5, 6]]);
    let m = Matrix::from_grid(f, g.clone()).unwrap();
    assert_eq!(m.det().unwrap(), leibniz_det(f, &g));
    assert_eq!(m.det().unwrap().residue(), Some(4));
    let q = Field::Rational;
    let mq = Matrix::from_grid(q, int_grid(q, &[&[3, 6, 0, 2], &[5, 1, 4, 4], &[2, 2, 6, 1], &[0, 3, 5, 6]])).unwrap();
    assert_eq!(mq.det().unwrap(), q.from_i64(-941));
}

#[test]
fn pf6_matches_fifteen_term_expansion() {
    let q = Field::Rational;
    let upper = [
        [0, 2, -1, 3, 0, 5],
        [0, 0, 4, -3, 1, 2],
        [0, 0, 0, -2, 5, -4],
        [0, 0, 0, 0, 3, 1],
        [0, 0, 0, 0, 0, -5],
    ];
    let labels: Vec<String> = (0..6).map(|i| format!("v{i}")).collect();
    let s = SkewMatrix::from_upper(q, labels, |i, j| q.from_i64(upper[i][j])).unwrap();
    let (oracle, terms) = pairing_pf(q, s.grid());
    assert_eq!(terms, 15);
    assert_eq!(s.pfaffian().unwrap(), oracle);
    assert_eq!(oracle, q.from_i64(113));
    assert_eq!(s.det().unwrap(), q.from_i64(12769));
}

#[test]
fn schur_det_identity_random_5x5() {
    let q = Field::Rational;
    let g = int_grid(
        q,
        &[&[2, -1, 0, 3, 1], &[4, 1, -2, 0, 5], &[1, 0, 3, -1, 2], &[0, 2, 1, 4, -3], &[3, -2, 5, 1, 0]],
    );
    let m = Matrix::from_grid(q, g).unwrap();
    let block = [1, 3];
    let w = m.select(&block, &block);
    let s = schur_complement(&m, &block).unwrap();
    assert_eq!(m.det().unwrap(), &w.det().unwrap() * &s.det().unwrap());
}

#[test]
fn crt_example_checked_directly() {
    let r = crt_reconstruct(
        &[(3, Scalar::Mod { v: 2, p: 3 }), (5, Scalar::Mod { v: 3, p: 5 })],
        &BigInt::from(7),
    )
    .unwrap();
    assert_eq!(r, BigInt::from(-7));
    assert_eq!((-7i64).rem_euclid(3), 2);
    assert_eq!((-7i64).rem_euclid(5), 3);
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(101)), Just(Field::Prime(7))]
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))
}

fn skew(max_half: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max_half).prop_flat_map(|h| {
        let n = 2 * h;
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            let mut g = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    g[i][j] = v[i * n + j];
                    g[j][i] = -v[i * n + j];
                }
            }
            g
        })
    })
}

fn to_grid(f: Field, g: &[Vec<i64>]) -> common::Grid {
    g.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn det_matches_leibniz(f in field_strategy(), g in square(5)) {
        let grid = to_grid(f, &g);
        let m = Matrix::from_grid(f, grid.clone()).unwrap();
        prop_assert_eq!(m.det().unwrap(), leibniz_det(f, &grid));
        prop_assert_eq!(elim::det_division_free(&f, &grid), leibniz_det(f, &grid));
    }

    #[test]
    fn pfaffian_matches_pairing_expansion(f in field_strategy(), g in skew(4)) {
        let grid = to_grid(f, &g);
        let s = SkewMatrix::from_grid(f, grid.clone()).unwrap();
        let pf = s.pfaffian().unwrap();
        prop_assert_eq!(&pf, &pairing_pf(f, &grid).0);
        prop_assert_eq!(&pf, &elim::pfaffian_division_free(&f, &grid));
        prop_assert_eq!(&pf * &pf, s.det().unwrap());
    }

    #[test]
    fn pfaffian_congruence(f in field_strategy(), g in skew(3), seed in any::<u64>()) {
        use rand::SeedableRng;
        let n = g.len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let s = SkewMatrix::from_grid(f, to_grid(f, &g)).unwrap();
        let b = Matrix::from_grid(f, common::random_grid(&mut rng, f, n, n, -3, 3)).unwrap();
        let bsbt = s.congruence(&b).unwrap();
        prop_assert_eq!(bsbt.pfaffian().unwrap(), &b.det().unwrap() * &s.pfaffian().unwrap());
    }

    #[test]
    fn gf_reduction_commutes(g in square(5), sk in skew(3)) {
        let q = Field::Rational;
        let p = Field::Prime(101);
        let dq = Matrix::from_grid(q, to_grid(q, &g)).unwrap().det().unwrap();
        let dp = Matrix::from_grid(p, to_grid(p, &g)).unwrap().det().unwrap();
        prop_assert_eq!(p.convert(&dq).unwrap(), dp);
        let pq = SkewMatrix::from_grid(q, to_grid(q, &sk)).unwrap().pfaffian().unwrap();
        let pp = SkewMatrix::from_grid(p, to_grid(p, &sk)).unwrap().pfaffian().unwrap();
        prop_assert_eq!(p.convert(&pq).unwrap(), pp);
    }

    #[test]
    fn schur_complement_det_identity(g in square(5), k in 1usize..3) {
        let q = Field::Rational;
        let n = g.len();
        prop_assume!(k < n);
        let m = Matrix::from_grid(q, to_grid(q, &g)).unwrap();
        let block: Vec<usize> = (n - k..n).collect();
        let w = m.select(&block, &block);
        prop_assume!(!w.det().unwrap().is_zero());
        let s = schur_complement(&m, &block).unwrap();
        prop_assert_eq!(m.det().unwrap(), &w.det().unwrap() * &s.det().unwrap());
    }

    #[test]
    fn poly_pfaffian_substitution(
        f in prop_oneof![Just(Field::Rational), Just(Field::Prime(101)), Just(Field::Prime(3))],
        h in 1usize..=3,
        raw in prop::collection::vec((-2i64..=2, -2i64..=3, -2i64..=2, -2i64..=3), 15),
        x in 1i64..6,
    ) {
        let n = 2 * h;
        let z = WeightPoly::zero(f);
        let mut m = vec![vec![z.clone(); n]; n];
        let mut t = 0;
        for i in 0..n {
            for j in i + 1..n {
                let (c1, e1, c2, e2) = raw[t];
                t += 1;
                let p = WeightPoly::monomial(f.from_i64(c1), e1).add(&WeightPoly::monomial(f.from_i64(c2), e2));
                m[j][i] = p.neg();
                m[i][j] = p;
            }
        }
        let pf = poly_matrix_pfaffian(f, &m).unwrap();
        prop_assert_eq!(&pf, &elim::pfaffian_division_free(&WeightPolyRing(f), &m));
        let xv = f.from_i64(x);
        prop_assume!(!xv.is_zero());
        let scalar: common::Grid = m.iter().map(|r| r.iter().map(|p| p.eval(&xv)).collect()).collect();
        prop_assert_eq!(pf.eval(&xv), SkewMatrix::from_grid(f, scalar).unwrap().pfaffian().unwrap());
        prop_assert_eq!(&poly_matrix_pfaffian_eliminated(f, &m).unwrap(), &pf);
        if let Some(interp) = poly_matrix_pfaffian_interpolated(f, &m).unwrap() {
            prop_assert_eq!(interp, pf);
        }
    }
}

/// Pfaffian of `A S Aᵀ` equals the sum over row-sized column subsets `J` of
/// `det A[J] · pf S[J, J]`, checked for every 2r ≤ 4 and column count ≤ 6.
#[test]
fn ishikawa_wakayama_exhaustive_shapes() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for f in [Field::Rational, Field::Prime(101)] {
        for rows in [2usize, 4] {
            for cols in rows..=6 {
                for _ in 0..6 {
                    let a = Matrix::from_grid(f, common::random_grid(&mut rng, f, rows, cols, -5, 5)).unwrap();
                    let s = SkewMatrix::from_grid(f, common::random_skew(&mut rng, f, cols, -5, 5)).unwrap();
                    let lhs = s.congruence(&a).unwrap().pfaffian().unwrap();
                    let mut rhs = f.zero();
                    for j in pfcount::algebra::perm::combinations(cols, rows) {
                        let dj = a.select_cols(&j).det().unwrap();
                        let pj = s.principal(&j).pfaffian().unwrap();
                        rhs = &rhs + &(&dj * &pj);
                    }
                    assert_eq!(lhs, rhs, "rows={rows} cols={cols}");
                }
            }
        }
    }
}

#[test]
fn empty_inner_dimension_product_keeps_shape() {
    let f = Field::Rational;
    let a = Matrix::from_grid(f, vec![vec![], vec![]]).unwrap();
    let p = a.mul(&a.transpose()).unwrap();
    assert_eq!((p.nrows(), p.ncols()), (2, 2));
    assert!(p.grid().iter().flatten().all(|x| x.is_zero()));
}

#[test]
fn symbolic_division_free_det_of_generic_2x2() {
    let r = MultiPolyRing::new(Field::Rational, 4);
    let m = vec![vec![r.var(0), r.var(1)], vec![r.var(2), r.var(3)]];
    let d = elim::det_division_free(&r, &m);
    let expected = r.sub(&r.mul(&r.var(0), &r.var(3)), &r.mul(&r.var(1), &r.var(2)));
    assert_eq!(d, expected);
}
