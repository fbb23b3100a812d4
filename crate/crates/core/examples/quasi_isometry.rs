//! Checking a map between graphs against quasi-isometry constants.
//!
//! ```text
//! cargo run --example quasi_isometry
//! ```

use cheeger::graphcore::{grid_graph, path_graph, quasi_isometry_check};
use cheeger::ratio;

fn main() -> cheeger::Result<()> {
    // Subdividing a path doubles distances.
    let p = path_graph(10);
    let q = path_graph(19);
    let double: Vec<usize> = (0..10).map(|i| 2 * i).collect();
    for (a, b, e) in [(2, 0, 1), (1, 0, 1), (2, 0, 0)] {
        let rep = quasi_isometry_check(&p, &q, &double, &ratio(a, 1), &ratio(b, 1), &ratio(e, 1))?;
        println!("path -> subdivided path, alpha {a} beta {b} eps {e}: holds {}", rep.holds());
    }

    // Collapsing a ladder onto one rail.
    let ladder = grid_graph(12, 2);
    let rail = path_graph(12);
    let collapse: Vec<usize> = (0..ladder.len()).map(|v| v % 12).collect();
    let rep = quasi_isometry_check(&ladder, &rail, &collapse, &ratio(1, 1), &ratio(1, 1), &ratio(0, 1))?;
    println!("ladder -> rail: {}", rep.to_json(&ladder, &rail));
    Ok(())
}
