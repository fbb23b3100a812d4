//! Four-point hyperbolicity: trees are 0-hyperbolic, cycles and grids are not.
//!
//! ```text
//! cargo run --example hyperbolicity
//! ```

use cheeger::graphcore::{cycle_graph, grid_window};
use cheeger::hyperbolicity::{delta_graph, delta_metric, gromov_product_graph, DeltaMode, DEFAULT_DELTA_BUDGET};
use cheeger::metricspace::cantor_sample;
use cheeger::trees::{homogeneous_tree, random_branching_tree};

fn main() -> cheeger::Result<()> {
    let exhaustive = |g: &cheeger::Graph| delta_graph(g, DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET);

    let t = homogeneous_tree(3, 3).to_graph();
    println!("T3 depth 3: delta = {}", exhaustive(&t)?.delta);
    let r = random_branching_tree(4, 1, 3, 11).to_graph();
    println!("random tree ({} vertices): delta = {}", r.len(), exhaustive(&r)?.delta);

    for n in [4, 6, 9, 12] {
        let d = exhaustive(&cycle_graph(n))?;
        println!("cycle {n:>2}: delta = {}", d.delta);
    }
    for w in [3, 5, 7] {
        let d = exhaustive(&grid_window(w, w))?;
        let [x, y, z, o] = d.witness.expect("a grid has four points");
        println!("grid {w}x{w}: delta = {} at ({x}, {y}, {z}; {o})", d.delta);
    }

    // Sampling only gives a lower bound, flagged in the report.
    let g = grid_window(20, 20);
    let s = delta_graph(&g, DeltaMode::Sampled { seed: 7, count: 20_000 }, DEFAULT_DELTA_BUDGET)?;
    println!("grid 20x20 sampled: delta >= {} (lower bound only: {})", s.delta, s.lower_bound_only);

    println!("(x|y)_o in T3: {}", gromov_product_graph(&t, 5, 9, 0)?);
    let c = cantor_sample(4);
    println!("Cantor sample: delta = {:.4}", delta_metric(&c, DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET)?.delta);
    Ok(())
}
