mod common;

use std::collections::BTreeSet;

use common::{random_connected, random_graph, rng, spec};
use pfcount::algebra::perm::inversion_sign;
use pfcount::algebra::{Field, SkewMatrix};
use pfcount::constructions::{
    arborescence_pair, bipartite_matching_pair, dag_st_pair, delta_matroid_pair, euler_tour_matrix,
    feasible_set_of_base, find_pfaffian_orientation, general_matching_parity, hypertree_parity, hypertree_sign,
    matching_sign, pairing_sign, path_sign, reorient, spanning_tree_pair, stu_parity, undirected_st_pair,
    Bipartition, EulerSystem, Graph, Hypergraph3,
};
use pfcount::matroid::{
    count_common_bases, count_parity_bases, verify_pfaffian_pair, verify_pfaffian_parity, Limits,
};
use pfcount::oracle;
use pfcount::weighted::{count_min_weight_common_bases, count_min_weight_parity_bases};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const Q: Field = Field::Rational;

fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
    let mut g = Graph::new(vertices.iter().copied()).unwrap();
    for (j, (a, b)) in edges.iter().enumerate() {
        g.add_edge(format!("e{j}"), a, b, None).unwrap();
    }
    g
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn spanning_tree_counts() {
    let k3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
    let p3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
    let k4 = graph(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]);
    for (g, n) in [(k3, 3), (p3, 1), (k4, 16)] {
        let c = count_common_bases(&spanning_tree_pair(&g, 0, Q).unwrap()).unwrap();
        assert_eq!(c.count, Q.from_i64(n));
        assert_eq!(oracle::spanning_trees(&g, Q, &Limits::default()).unwrap().count(), n as usize);
    }
}

#[test]
fn arborescence_counts() {
    let cycle = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
    let parallel = graph(&["u", "v"], &[("u", "v"), ("u", "v")]);
    let bidirected =
        graph(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("a", "c"), ("c", "a")]);
    for root in 0..3 {
        assert_eq!(count_common_bases(&arborescence_pair(&cycle, root, Q).unwrap()).unwrap().count, Q.one());
    }
    assert_eq!(count_common_bases(&arborescence_pair(&parallel, 0, Q).unwrap()).unwrap().count, Q.from_i64(2));
    assert_eq!(count_common_bases(&arborescence_pair(&parallel, 1, Q).unwrap()).unwrap().count, Q.zero());
    let pair = arborescence_pair(&bidirected, 0, Q).unwrap();
    assert_eq!(pair.constant(), Some(&Q.one()));
    assert_eq!(count_common_bases(&pair).unwrap().count, Q.from_i64(3));
    assert_eq!(oracle::arborescences(&bidirected, 0, Q, &Limits::default()).unwrap().count(), 3);
}

#[test]
fn bipartite_matchings_and_cancellation() {
    let single = graph(&["u", "v"], &[("u", "v")]);
    let sides = Bipartition::new(&single, &strings(&["u"]), &strings(&["v"])).unwrap();
    let pair = bipartite_matching_pair(&single, &sides, Q).unwrap();
    assert_eq!(count_common_bases(&pair).unwrap().count, Q.one());
    assert_eq!(verify_pfaffian_pair(&pair, &Limits::default()).unwrap().constant, Some(Q.one()));

    let k22 = graph(&["u1", "u2", "v1", "v2"], &[("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2")]);
    let sides = Bipartition::new(&k22, &strings(&["u1", "u2"]), &strings(&["v1", "v2"])).unwrap();
    let pair = bipartite_matching_pair(&k22, &sides, Q).unwrap();
    let raw = pair.a1().mul(&pair.a2().transpose()).unwrap().det().unwrap();
    assert_eq!(raw, Q.zero());
    assert!(!verify_pfaffian_pair(&pair, &Limits::default()).unwrap().is_pfaffian);
    assert_eq!(oracle::bipartite_matchings(&k22, &sides, Q, &Limits::default()).unwrap().count(), 2);

    let fixed = reorient(&k22, 0b1000);
    let pair = bipartite_matching_pair(&fixed, &sides, Q).unwrap();
    let v = verify_pfaffian_pair(&pair, &Limits::default()).unwrap();
    assert!(v.is_pfaffian);
    let c = count_common_bases(&pair.with_constant(v.constant)).unwrap();
    assert_eq!(c.count, Q.from_i64(2));
}

#[test]
fn general_matchings() {
    let single = graph(&["a", "b"], &[("a", "b")]);
    assert_eq!(count_parity_bases(&general_matching_parity(&single, Q).unwrap()).unwrap().count, Q.one());
    let square = graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
    let oriented = reorient(&square, 0b0001);
    let parity = general_matching_parity(&oriented, Q).unwrap();
    assert!(verify_pfaffian_parity(&parity, &Limits::default()).unwrap().is_pfaffian);
    assert_eq!(count_parity_bases(&parity).unwrap().count, Q.from_i64(2));
    let triangle = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
    assert!(general_matching_parity(&triangle, Q).is_err());
}

#[test]
fn matching_signs_equal_base_determinants() {
    let mut r = rng(21);
    for _ in 0..30 {
        let g = random_graph(&mut r, 6, 8, None);
        let parity = general_matching_parity(&g, Q).unwrap();
        let en = oracle::perfect_matchings(&g, Q, &Limits::default()).unwrap();
        for s in &en.items {
            let sign = matching_sign(&g, &s.elements).unwrap();
            assert_eq!(parity.base_det(&s.elements), Q.from_i64(sign as i64));
        }
    }
}

#[test]
fn orientation_search_finds_pfaffian_orientations() {
    let k4 = graph(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]);
    let mask = find_pfaffian_orientation(&k4, 16).unwrap().unwrap();
    let g = reorient(&k4, mask);
    let parity = general_matching_parity(&g, Q).unwrap();
    let v = verify_pfaffian_parity(&parity, &Limits::default()).unwrap();
    assert!(v.is_pfaffian);
    assert_eq!(count_parity_bases(&parity).unwrap().count, Q.from_i64(3));
}

#[test]
fn delta_matroid_feasible_sets() {
    let zero = SkewMatrix::from_i64(Q, &[vec![0, 0], vec![0, 0]]).unwrap();
    assert_eq!(count_common_bases(&delta_matroid_pair(&zero, &[]).unwrap()).unwrap().count, Q.one());
    let s = SkewMatrix::from_i64(Q, &[vec![0, 1], vec![-1, 0]]).unwrap();
    let en = oracle::feasible_sets(&s, &[], &Limits::default()).unwrap();
    let sets: Vec<Vec<usize>> = en.items.iter().map(|x| x.elements.clone()).collect();
    assert_eq!(sets, vec![vec![], vec![0, 1]]);

    let mut r = rng(22);
    for _ in 0..20 {
        let n = r.gen_range(1..=4);
        let g = random_graph(&mut r, n + 1, n + 1, None);
        let skew = pfcount::constructions::skew_adjacency(&g, Q).unwrap();
        if !pfcount::constructions::is_principally_unimodular(&skew).unwrap() {
            continue;
        }
        let m = skew.order();
        let twist: Vec<usize> = (0..m).filter(|_| r.gen_bool(0.4)).collect();
        let pair = delta_matroid_pair(&skew, &twist).unwrap();
        let from_bases: BTreeSet<Vec<usize>> = pair
            .common_bases(&Limits::default())
            .unwrap()
            .into_iter()
            .map(|(b, _)| feasible_set_of_base(m, &b, &twist))
            .collect();
        let en = oracle::feasible_sets(&skew, &twist, &Limits::default()).unwrap();
        let expected: BTreeSet<Vec<usize>> = en.items.iter().map(|x| x.elements.clone()).collect();
        assert_eq!(from_bases, expected);
        assert_eq!(count_common_bases(&pair).unwrap().count, Q.from_i64(en.count() as i64));
    }
}

fn euler_count(g: &Graph, tour: &[&str]) -> (usize, Field) {
    let sys = EulerSystem::new(g, &strings(tour)).unwrap();
    let s = euler_tour_matrix(g, &sys, Q).unwrap();
    let algebraic = count_common_bases(&delta_matroid_pair(&s, &[]).unwrap()).unwrap().count;
    let en = oracle::euler_tours(g, &sys, Q, &Limits::default()).unwrap();
    assert_eq!(algebraic, Q.from_i64(en.count() as i64));
    (en.count(), Q)
}

#[test]
fn euler_tours() {
    let mut digon = Graph::new(["u", "v"]).unwrap();
    for (l, a, b) in [("a", "u", "v"), ("b", "v", "u"), ("c", "u", "v"), ("d", "v", "u")] {
        digon.add_edge(l, a, b, None).unwrap();
    }
    assert_eq!(euler_count(&digon, &["a", "b", "c", "d"]).0, 2);
    let mut loops = Graph::new(["v"]).unwrap();
    loops.add_edge("a", "v", "v", None).unwrap();
    loops.add_edge("b", "v", "v", None).unwrap();
    assert_eq!(euler_count(&loops, &["a", "b"]).0, 1);
    // Two vertices each with a loop, joined by a digon.
    let mut g = Graph::new(["u", "v"]).unwrap();
    for (l, a, b) in [("x", "u", "u"), ("p", "u", "v"), ("y", "v", "v"), ("q", "v", "u")] {
        g.add_edge(l, a, b, None).unwrap();
    }
    euler_count(&g, &["x", "p", "y", "q"]);
    // A 4-regular digraph on three vertices.
    let mut t = Graph::new(["a", "b", "c"]).unwrap();
    for (l, x, y) in [("1", "a", "b"), ("2", "b", "c"), ("3", "c", "a"), ("4", "a", "c"), ("5", "c", "b"), ("6", "b", "a")] {
        t.add_edge(l, x, y, None).unwrap();
    }
    euler_count(&t, &["1", "2", "3", "4", "5", "6"]);
    assert!(EulerSystem::new(&t, &strings(&["1", "3", "2", "4", "5", "6"])).is_err());
}

fn hyper(n: usize, edges: &[[usize; 3]]) -> Hypergraph3 {
    let mut h = Hypergraph3::new((1..=n).map(|i| i.to_string())).unwrap();
    for (j, e) in edges.iter().enumerate() {
        h.add_edge_by_index(format!("h{j}"), e.map(|v| v - 1), None).unwrap();
    }
    h
}

#[test]
fn hypertree_examples() {
    let one = hyper(3, &[[1, 2, 3]]);
    assert_eq!(hypertree_sign(&one, &[0]), Some(1));
    assert_eq!(hypertree_sign(&hyper(3, &[[2, 1, 3]]), &[0]), Some(-1));
    let two = hyper(5, &[[1, 2, 3], [3, 4, 5]]);
    assert_eq!(count_parity_bases(&hypertree_parity(&two, 0, Q).unwrap()).unwrap().count, Q.one());
    assert_eq!(oracle::spanning_hypertrees(&two, Q, &Limits::default()).unwrap().count(), 1);
    assert!(hypertree_parity(&hyper(4, &[[1, 2, 3]]), 0, Q).is_err());
}

#[test]
fn hypertree_sign_matches_base_determinant() {
    let mut r = rng(23);
    for _ in 0..30 {
        let n = 2 * r.gen_range(1..=3) + 1;
        let m = r.gen_range(1..=6);
        let edges: Vec<[usize; 3]> = (0..m)
            .map(|_| {
                let mut v: Vec<usize> = (1..=n).collect();
                v.shuffle(&mut r);
                [v[0], v[1], v[2]]
            })
            .collect();
        let h = hyper(n, &edges);
        for root in 0..n {
            let parity = hypertree_parity(&h, root, Q).unwrap();
            let en = oracle::spanning_hypertrees(&h, Q, &Limits::default()).unwrap();
            let sign = if root % 2 == 0 { 1 } else { -1 };
            for t in &en.items {
                let s = hypertree_sign(&h, &t.elements).unwrap() as i64;
                assert_eq!(parity.base_det(&t.elements), Q.from_i64(sign * s));
            }
        }
    }
}

#[test]
fn dag_examples() {
    let mut g = Graph::new(["s1", "s2", "t1", "t2"]).unwrap();
    g.add_edge("a", "s1", "t1", None).unwrap();
    g.add_edge("b", "s2", "t2", None).unwrap();
    g.add_edge("c", "s1", "t2", None).unwrap();
    let sp = spec(&[&["s1", "s2"], &["t1", "t2"]]);
    let red = dag_st_pair(&g, &sp, Q).unwrap();
    assert_eq!(count_common_bases(&red.pair).unwrap().count, Q.one());

    let mut x = Graph::new(["s1", "s2", "t1", "t2"]).unwrap();
    x.add_edge("a", "s1", "t2", None).unwrap();
    x.add_edge("b", "s2", "t1", None).unwrap();
    let red = dag_st_pair(&x, &sp, Q).unwrap();
    let v = verify_pfaffian_pair(&red.pair, &Limits::default()).unwrap();
    assert_eq!(v.constant, Some(Q.from_i64(-1)));
    assert_eq!(count_common_bases(&red.pair.with_constant(v.constant)).unwrap().count, Q.one());
}

/// Sources enter rows of a grid on the left, sinks leave on the right; arcs go right and down.
pub fn grid_dag(rows: usize, cols: usize) -> (Graph, pfcount::constructions::TerminalSpec) {
    let mut names: Vec<String> = Vec::new();
    for i in 0..rows {
        names.push(format!("s{i}"));
        names.push(format!("t{i}"));
    }
    for i in 0..rows {
        for j in 0..cols {
            names.push(format!("g{i}{j}"));
        }
    }
    let mut g = Graph::new(names).unwrap();
    for i in 0..rows {
        g.add_edge(format!("in{i}"), &format!("s{i}"), &format!("g{i}0"), None).unwrap();
        g.add_edge(format!("out{i}"), &format!("g{i}{}", cols - 1), &format!("t{i}"), None).unwrap();
        for j in 0..cols {
            if j + 1 < cols {
                g.add_edge(format!("r{i}{j}"), &format!("g{i}{j}"), &format!("g{i}{}", j + 1), None).unwrap();
            }
            if i + 1 < rows {
                g.add_edge(format!("d{i}{j}"), &format!("g{i}{j}"), &format!("g{}{j}", i + 1), None).unwrap();
            }
        }
    }
    let s: Vec<String> = (0..rows).map(|i| format!("s{i}")).collect();
    let t: Vec<String> = (0..rows).map(|i| format!("t{i}")).collect();
    (g, pfcount::constructions::TerminalSpec::new(vec![s, t]))
}

#[test]
fn planar_grid_is_in_lgv_position() {
    let (g, sp) = grid_dag(2, 3);
    let red = dag_st_pair(&g, &sp, Q).unwrap();
    let v = verify_pfaffian_pair(&red.pair, &Limits::uniform(20)).unwrap();
    assert!(v.is_pfaffian);
    let en = oracle::dag_paths(&g, &sp, Q, &Limits::uniform(20)).unwrap();
    assert!(en.uniform_sign().is_some());
    let c = count_common_bases(&red.pair.with_constant(v.constant)).unwrap();
    assert_eq!(c.count, Q.from_i64(en.count() as i64));
}

#[test]
fn undirected_st_examples() {
    let mut g = Graph::new(["s1", "s2", "t1", "t2"]).unwrap();
    g.add_edge("a", "s1", "t1", Some(1)).unwrap();
    g.add_edge("b", "s2", "t2", Some(1)).unwrap();
    let sp = spec(&[&["s1", "s2"], &["t1", "t2"]]);
    let red = undirected_st_pair(&g, &sp, Q).unwrap();
    let res = count_min_weight_common_bases(&red.pair, &red.weights).unwrap();
    assert_eq!(res.count, Q.one());
    assert_eq!(res.min_weight.map(|w| w / red.prepared.length_scale), Some(2));

    let mut z = Graph::new(["s", "t", "a"]).unwrap();
    z.add_edge("x", "s", "a", Some(0)).unwrap();
    assert!(undirected_st_pair(&z, &spec(&[&["s"], &["t"]]), Q).is_err());
    assert!(stu_parity(&z, &spec(&[&["s"], &["t"]]), Q).is_err());

    let mut h = Graph::new(["s", "a", "t"]).unwrap();
    h.add_edge("x", "s", "a", Some(1)).unwrap();
    let red = undirected_st_pair(&h, &spec(&[&["s"], &["t"]]), Q).unwrap();
    let res = count_min_weight_common_bases(&red.pair, &red.weights).unwrap();
    assert_eq!((res.count, res.min_weight), (Q.zero(), None));
}

#[test]
fn stu_degenerates_to_st() {
    let mut g = Graph::new(["s", "a", "b", "t"]).unwrap();
    for (l, x, y) in [("sa", "s", "a"), ("sb", "s", "b"), ("ab", "a", "b"), ("at", "a", "t"), ("bt", "b", "t")] {
        g.add_edge(l, x, y, Some(1)).unwrap();
    }
    let sp = spec(&[&["s"], &["t"]]);
    let st = undirected_st_pair(&g, &sp, Q).unwrap();
    let stu = stu_parity(&g, &sp, Q).unwrap();
    assert!(stu.warning.is_some());
    let a = count_min_weight_common_bases(&st.pair, &st.weights).unwrap();
    let b = count_min_weight_parity_bases(&stu.parity, &stu.weights).unwrap();
    assert_eq!((a.count.clone(), a.min_weight), (b.count, b.min_weight));
    assert_eq!((a.count, a.min_weight), (Q.from_i64(2), Some(2)));
}

#[test]
fn stu_constant_from_vectors() {
    let mut g = Graph::new(["s", "t", "u1", "u2", "m"]).unwrap();
    for (l, x, y) in [("e1", "s", "m"), ("e2", "m", "u1"), ("e3", "t", "u2")] {
        g.add_edge(l, x, y, Some(1)).unwrap();
    }
    let sp = spec(&[&["s"], &["t"], &["u1", "u2"]]);
    let red = stu_parity(&g, &sp, Q).unwrap();
    assert!(red.warning.is_none());
    // b₁ = (1,0), b₂ = (0,1), b₃ = (1,1): det[b₁;b₃] = 1 and det[b₂;b₃] = −1.
    assert_eq!(red.c_p(&[(0, 2), (1, 3)]), -1);
    let en = oracle::terminal_paths(&g, &sp, Q, &Limits::default()).unwrap();
    assert_eq!(en.count(), 1);
    assert_eq!(en.items[0].factor, Some(-1));
    let s = en.items[0].sign.to_i64().unwrap() * en.items[0].factor.unwrap();
    let cols = red.prepared.base_of_paths(&red.prepared.lift_edges(&en.items[0].elements));
    assert_eq!(red.parity.base_det(&cols), Q.from_i64(s));
}

#[test]
fn terminal_path_factor_is_constant_for_three_groups() {
    let mut r = rng(24);
    for _ in 0..30 {
        let g = random_graph(&mut r, 7, 9, Some((1, 3)));
        let sp = spec(&[&["v0", "v1"], &["v2"], &["v3", "v4", "v5"]]);
        let en = oracle::terminal_paths(&g, &sp, Q, &Limits::default()).unwrap();
        let factors: BTreeSet<i64> = en.items.iter().map(|s| s.factor.unwrap()).collect();
        assert!(factors.len() <= 1, "{factors:?}");
    }
}

#[test]
fn sign_helpers() {
    assert_eq!(path_sign(&[0, 1, 2]), 1);
    assert_eq!(path_sign(&[1, 0, 2]), -1);
    assert_eq!(pairing_sign(&[(0, 1), (2, 3)]), 1);
    assert_eq!(pairing_sign(&[(0, 2), (1, 3)]), -1);
    let mut r = rng(25);
    for _ in 0..50 {
        let mut p: Vec<usize> = (0..6).collect();
        p.shuffle(&mut r);
        assert_eq!(path_sign(&p), inversion_sign(&p));
    }
}

#[test]
fn oracle_small_cases() {
    let k3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
    assert_eq!(oracle::spanning_trees(&k3, Q, &Limits::default()).unwrap().count(), 3);
    let square = graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
    assert_eq!(oracle::perfect_matchings(&square, Q, &Limits::default()).unwrap().count(), 2);
    let empty = graph(&["a", "b"], &[]);
    assert_eq!(oracle::perfect_matchings(&empty, Q, &Limits::default()).unwrap().count(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trees_match_oracle(seed in any::<u64>(), n in 1usize..6, extra in 0usize..5) {
        let mut r = rng(seed);
        let g = random_connected(&mut r, n.max(2), extra, None);
        let c = count_common_bases(&spanning_tree_pair(&g, 0, Q).unwrap()).unwrap();
        let en = oracle::spanning_trees(&g, Q, &Limits::default()).unwrap();
        prop_assert_eq!(c.count, Q.from_i64(en.count() as i64));
    }

    #[test]
    fn tree_count_invariant_under_relabeling(seed in any::<u64>(), n in 2usize..6, extra in 0usize..5) {
        let mut r = rng(seed);
        let g = random_connected(&mut r, n, extra, None);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let mut h = Graph::new(perm.iter().map(|&i| format!("v{i}"))).unwrap();
        for e in g.edges() {
            h.add_edge(e.label.clone(), &g.vertices()[e.tail], &g.vertices()[e.head], None).unwrap();
        }
        let a = oracle::spanning_trees(&g, Q, &Limits::default()).unwrap().count();
        let b = oracle::spanning_trees(&h, Q, &Limits::default()).unwrap().count();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hypertree_sign_independent_of_product_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = hyper(5, &[[1, 2, 3], [3, 4, 5], [2, 4, 1]]);
        let en = oracle::spanning_hypertrees(&h, Q, &Limits::default()).unwrap();
        for t in &en.items {
            let want = hypertree_sign(&h, &t.elements);
            let mut order = t.elements.clone();
            order.shuffle(&mut r);
            prop_assert_eq!(hypertree_sign(&h, &order), want);
        }
    }
}
