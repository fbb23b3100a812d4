//! Hyperbolic approximation of a finite metric space: levels of
//! `r^k`-separated sets, joined horizontally within a level and radially
//! between consecutive levels.
//!
//! ```text
//! cargo run --example hyperbolic_approximation
//! ```

use cheeger::hyperapprox::{
    boundary_identification_check, build_truncated, find_certifying_stride, level_certificate, random_deepest_pairs,
    structural_checks_default, DEFAULT_VISUAL_SLACK,
};
use cheeger::graphcore::Certificate;
use cheeger::metricspace::{cantor_sample, two_point, FiniteMetricSpace};

fn main() -> cheeger::Result<()> {
    let r = 1.0 / 9.0;
    let x = cantor_sample(6);
    for k_max in [2, 3] {
        let l = build_truncated(&x, r, k_max)?;
        let s = structural_checks_default(&l)?;
        println!(
            "Cantor, k_max {k_max}: levels {:?}, {} radial + {} horizontal edges, max degree {} (cap {}), delta {}, passes {}",
            l.level_sizes(),
            s.radial_edges,
            s.horizontal_edges,
            s.max_degree,
            s.degree_cap.total(),
            s.delta.as_ref().map_or("-".into(), |d| d.delta.to_string()),
            s.passes()
        );
        if let Certificate::Certified(b) = level_certificate(&l)? {
            println!("  level certificate: h >= {}", b.lower);
        }
        let pairs = random_deepest_pairs(&l, 40, 7);
        let bd = boundary_identification_check(&l, &pairs, DEFAULT_VISUAL_SLACK)?;
        println!("  Gromov products vs visual exponent: max deviation {:.4}", bd.max_deviation);
    }

    // Deeper truncations need a coarser stride before levels grow fast enough.
    let l = build_truncated(&x, r, 4)?;
    match find_certifying_stride(&l, 3)? {
        Some((s, m, b)) => println!("k_max 4: stride {s} gives levels {:?} and h >= {}", m.level_sizes(), b.lower),
        None => println!("k_max 4: no stride up to 3 certifies"),
    }

    // Degenerate boundaries: a chain and a twin chain, laplacian zero.
    let singleton = FiniteMetricSpace::new(vec!["o".into()], vec![vec![0.0]])?;
    for (name, x) in [("singleton", singleton), ("two points", two_point(1.0))] {
        let l = build_truncated(&x, 1.0 / 6.0, 4)?;
        let certified = matches!(level_certificate(&l)?, Certificate::Certified(_));
        println!("{name}: {} vertices, {} edges, certified {certified}", l.graph.len(), l.graph.edge_count());
    }
    Ok(())
}
