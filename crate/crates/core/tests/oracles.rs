//! Library values against frozen numbers and independent brute-force code.

use cheeger::decomp::{bound_general, bound_strong, decomposition_bound, tree_graft_decomposition, validate};
use cheeger::graphcore::{
    admissible_vertices, cycle_graph, grid_window, interior_cheeger, path_graph, window_minimum, Certificate, Graph,
    WindowMethod, WindowSearch,
};
use cheeger::hyperapprox::{
    boundary_identification_check, build_truncated, degree_cap, level_certificate, random_deepest_pairs, relevel,
    structural_checks_default, DEFAULT_VISUAL_SLACK,
};
use cheeger::hyperbolicity::{delta_graph, DeltaMode, DEFAULT_DELTA_BUDGET};
use cheeger::metricspace::cantor_sample;
use cheeger::rational::{int, ratio, Rational};
use cheeger::trees::{end_space, growing_chain, homogeneous_tree, layered_tree, RootedTree};

/// All-pairs distances by Floyd–Warshall, independent of the library BFS.
fn floyd(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.len();
    let inf = i64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for &v in g.neighbors(u) {
            row[v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Four-point δ: half the gap between the two largest pair sums.
fn naive_delta(g: &Graph) -> Rational {
    let d = floyd(g);
    let n = g.len();
    let mut best = 0i64;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
                    s.sort_unstable();
                    best = best.max(s[2] - s[1]);
                }
            }
        }
    }
    ratio(best, 2)
}

/// Exhaustive window minimum over bitmasks of admissible vertices.
fn naive_window(g: &Graph, max_size: usize) -> Rational {
    let adm = admissible_vertices(g);
    let mut best: Option<Rational> = None;
    for mask in 1u64..(1 << adm.len()) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let mut inside = vec![false; g.len()];
        for (i, &v) in adm.iter().enumerate() {
            inside[v] = mask >> i & 1 == 1;
        }
        let bd = (0..g.len())
            .filter(|&v| !inside[v] && g.neighbors(v).iter().any(|&w| inside[w]))
            .count();
        let r = ratio(bd as i64, mask.count_ones() as i64);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    best.unwrap()
}

#[test]
fn t3_windows_match_brute_force() {
    let g = homogeneous_tree(3, 4).to_graph();
    assert_eq!(admissible_vertices(&g).len(), 10);
    for (size, expect) in [(8, ratio(5, 4)), (10, ratio(6, 5))] {
        let lib = window_minimum(&g, WindowSearch::new(size).method(WindowMethod::Enumerate)).unwrap();
        assert_eq!(lib.ratio(), expect);
        assert_eq!(naive_window(&g, size), expect);
    }
}

#[test]
fn deep_t3_window_by_dynamic_program() {
    let g = homogeneous_tree(3, 6).to_graph();
    let b = interior_cheeger(&g, WindowSearch::new(46)).unwrap();
    assert_eq!(b.upper, Some(ratio(24, 23)));
    b.verify(&g).unwrap();
    // depth 5 is still small enough for the independent bitmask scan
    let g5 = homogeneous_tree(3, 5).to_graph();
    let m = admissible_vertices(&g5).len();
    let dp = window_minimum(&g5, WindowSearch::new(m).method(WindowMethod::TreeDp)).unwrap();
    assert_eq!(dp.ratio(), naive_window(&g5, m));
    assert_eq!(dp.ratio(), ratio(12, 11));
}

#[test]
fn path_windows() {
    for n in 6..=14 {
        let g = path_graph(n).with_frontier(&[0, n - 1]).unwrap();
        let b = interior_cheeger(&g, WindowSearch::new(n - 4)).unwrap();
        assert_eq!(b.upper, Some(ratio(2, n as i64 - 4)));
        assert_eq!(naive_window(&g, n - 4), ratio(2, n as i64 - 4));
    }
}

#[test]
fn delta_matches_floyd_warshall() {
    let frozen = [(4, ratio(1, 1)), (5, ratio(1, 2)), (6, ratio(1, 1)), (9, ratio(3, 2)), (12, ratio(3, 1))];
    for (n, expect) in frozen {
        let g = cycle_graph(n);
        let lib = delta_graph(&g, DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET).unwrap().delta;
        assert_eq!(lib, expect, "cycle {n}");
        assert_eq!(naive_delta(&g), expect, "cycle {n}");
    }
    for (w, expect) in [(3, 2), (4, 3), (5, 4), (7, 6)] {
        let g = grid_window(w, w);
        assert_eq!(delta_graph(&g, DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET).unwrap().delta, int(expect));
        assert_eq!(naive_delta(&g), int(expect));
    }
}

#[test]
fn decomposition_constants() {
    assert_eq!(bound_general(3, 0, &int(1)).unwrap(), ratio(1, 22));
    assert_eq!(bound_strong(3, 0, &int(1)).unwrap(), ratio(1, 7));
    assert_eq!(bound_strong(7, 0, &ratio(1, 7)).unwrap(), ratio(1, 99));
    let (layout, spec) = tree_graft_decomposition(&grid_window(7, 7), &homogeneous_tree(3, 4)).unwrap();
    assert_eq!(layout.graph.len(), 2254);
    let rep = validate(&spec);
    assert!(rep.valid() && rep.strong);
    assert_eq!(rep.mu, 7);
    assert_eq!(decomposition_bound(&spec, &rep).unwrap().lower, ratio(1, 99));
    let w = window_minimum(&layout.graph, WindowSearch::new(8).method(WindowMethod::Connected)).unwrap();
    assert_eq!(w.ratio(), ratio(5, 3));
}

#[test]
fn cantor_approximations() {
    let r = 1.0 / 9.0;
    let l = build_truncated(&cantor_sample(5), r, 2).unwrap();
    assert_eq!(l.level_sizes(), vec![1, 4, 16]);
    let s = structural_checks_default(&l).unwrap();
    assert_eq!(s.delta.as_ref().unwrap().delta, ratio(1, 2));
    assert_eq!(s.max_degree, 9);
    let cap = degree_cap(&l).unwrap();
    assert_eq!((cap.m1, cap.m2, cap.m3), (4, 9, 3));
    assert_eq!(level_certificate(&l).unwrap().bound().unwrap().lower, ratio(1, 18));

    let l = build_truncated(&cantor_sample(6), r, 3).unwrap();
    assert_eq!(l.level_sizes(), vec![1, 4, 16, 64]);
    assert_eq!(structural_checks_default(&l).unwrap().max_degree, 10);
    assert_eq!(level_certificate(&l).unwrap().bound().unwrap().lower, ratio(1, 35));

    let l = build_truncated(&cantor_sample(6), r, 4).unwrap();
    assert!(matches!(level_certificate(&l).unwrap(), Certificate::NoCertificate { .. }));
    let m = relevel(&l, 2).unwrap();
    assert_eq!(level_certificate(&m).unwrap().bound().unwrap().lower, ratio(1, 32));
}

#[test]
fn boundary_identification_regression() {
    let l = build_truncated(&cantor_sample(6), 1.0 / 9.0, 3).unwrap();
    let pairs = random_deepest_pairs(&l, 50, 7);
    let rep = boundary_identification_check(&l, &pairs, DEFAULT_VISUAL_SLACK).unwrap();
    assert_eq!(rep.pairs.len(), 50);
    assert_eq!(rep.max_deviation, 0.47273918096543144);
    assert!(rep.within_slack());
}

fn stride_one_certified(t: &RootedTree) -> bool {
    let x = end_space(t).unwrap();
    // keep every level above the sample resolution e^{-(D-1)}
    let k_max = (t.horizon() as i32 - 1) / 2;
    let l = build_truncated(&x, (-2.0f64).exp(), k_max).unwrap();
    matches!(level_certificate(&l).unwrap(), Certificate::Certified(_))
}

#[test]
fn end_space_approximations_follow_pseudo_regularity() {
    for t in [homogeneous_tree(3, 7), layered_tree(7, |_| 2), homogeneous_tree(4, 5)] {
        assert!(stride_one_certified(&t), "pseudo-regular tree of {} vertices", t.len());
    }
    assert!(!stride_one_certified(&growing_chain(9)));
}
