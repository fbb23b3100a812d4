//! Exact interior Cheeger constants of finite windows.
//!
//! A window is a finite graph whose frontier stands in for the rest of an
//! infinite graph. Sets may only use vertices at distance at least 2 from
//! the frontier, so their boundary is the same as in the ambient graph.
//!
//! ```text
//! cargo run --example window_cheeger
//! ```

use cheeger::graphcore::{
    admissible_vertices, grid_window, interior_cheeger, path_graph, window_minimum, WindowMethod, WindowSearch,
};
use cheeger::trees::homogeneous_tree;

fn main() -> cheeger::Result<()> {
    // Paths: the best set is the whole interior, ratio 2/|A|.
    for n in [8, 12, 20] {
        let g = path_graph(n).with_frontier(&[0, n - 1])?;
        let m = admissible_vertices(&g).len();
        let b = interior_cheeger(&g, WindowSearch::new(m))?;
        println!("path {n:>2}: h_i = {} over {m} admissible vertices", b.upper.unwrap());
    }

    // A tree window is a forest, so dynamic programming agrees with enumeration.
    let t = homogeneous_tree(3, 4).to_graph();
    let m = admissible_vertices(&t).len();
    for method in [WindowMethod::Enumerate, WindowMethod::TreeDp] {
        let w = window_minimum(&t, WindowSearch::new(m).method(method))?;
        println!("T3 depth 4 via {:<9}: {} (set of {})", method.name(), w.ratio(), w.set.len());
    }

    // Grid windows: full enumeration is hopeless past a few dozen vertices,
    // the connected-set search still gives an exact upper bound.
    let g = grid_window(9, 9);
    let w = window_minimum(&g, WindowSearch::new(10).method(WindowMethod::Connected))?;
    println!("grid 9x9, connected sets up to 10: {} with {:?}", w.ratio(), g.set_labels(&w.set));

    // Every bound carries its witness and re-verifies against the graph.
    let g = homogeneous_tree(3, 6).to_graph();
    let b = interior_cheeger(&g, WindowSearch::new(46))?;
    b.verify(&g)?;
    println!(
        "T3 depth 6: h_i = {} ({})",
        b.upper.as_ref().unwrap(),
        b.verified_region.as_deref().unwrap_or("")
    );
    Ok(())
}
