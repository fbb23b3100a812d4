//! Squeezing a Cheeger constant with a decomposition: graft a 3-regular tree
//! onto every vertex of a grid window, certify each tree copy by the tree
//! theorem, and let the decomposition bound cover the whole graph.
//!
//! ```text
//! cargo run --example decomposition
//! ```

use cheeger::decomp::{
    bound_general, bound_strong, decomposition_bound, load_decomposition, tree_graft_decomposition, validate,
    DecompositionFile,
};
use cheeger::graphcore::{grid_window, window_minimum, GraphFile, WindowMethod, WindowSearch};
use cheeger::ratio;
use cheeger::trees::homogeneous_tree;

fn main() -> cheeger::Result<()> {
    let base = grid_window(7, 7);
    let tree = homogeneous_tree(3, 4);
    let (layout, spec) = tree_graft_decomposition(&base, &tree)?;
    let g = &layout.graph;
    println!(
        "grafted graph: {} vertices, max degree {}, base distances preserved (checked: {})",
        g.len(),
        g.max_degree(),
        layout.isometry_checked
    );

    let report = validate(&spec);
    println!("valid {}, strong {}, mu {}", report.valid(), report.strong, report.mu);
    let b = decomposition_bound(&spec, &report)?;
    println!("decomposition bound: h >= {} ({})", b.lower, b.lower_witness.tag());

    // The exact connected-set search on the window gives the other side.
    let w = window_minimum(g, WindowSearch::new(8).method(WindowMethod::Connected))?;
    println!("connected window sets up to 8: h_i <= {}", w.ratio());

    // Constants of the two decomposition theorems.
    for (mu, big_r, r) in [(3, 0, ratio(1, 1)), (4, 1, ratio(1, 2)), (7, 0, ratio(1, 7))] {
        println!(
            "mu={mu} R={big_r} r={r}: general {} strong {}",
            bound_general(mu, big_r, &r)?,
            bound_strong(mu, big_r, &r)?
        );
    }

    // Round trip through the on-disk format.
    let dir = std::env::temp_dir().join("cheeger-decomposition-example");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("ambient.json"), GraphFile::from_graph(g).to_json())?;
    std::fs::write(dir.join("spec.json"), DecompositionFile::from_spec(&spec, "ambient.json").to_json())?;
    let reloaded = load_decomposition(&dir.join("spec.json"))?;
    println!("reloaded from {}: valid {}", dir.display(), validate(&reloaded).valid());
    Ok(())
}
