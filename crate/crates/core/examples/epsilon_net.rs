//! Greedy separated sets and epsilon-net graphs of finite metric spaces.
//!
//! ```text
//! cargo run --example epsilon_net
//! ```

use cheeger::graphcore::GraphFile;
use cheeger::metricspace::{cantor_sample, epsilon_net, greedy_separated, interval_sample, line_space};

fn main() -> cheeger::Result<()> {
    let x = interval_sample(101);
    for eps in [0.05, 0.1, 0.25] {
        let g = epsilon_net(&x, eps)?;
        println!(
            "[0,1] at eps {eps}: {} net points, {} edges, connected {}",
            g.len(),
            g.edge_count(),
            g.is_connected()
        );
    }

    let c = cantor_sample(5);
    for eps in [0.3, 0.1, 0.03] {
        let s = greedy_separated(&c, eps);
        let g = epsilon_net(&c, eps)?;
        println!("Cantor at eps {eps}: {} separated points, net max degree {}", s.len(), g.max_degree());
    }

    let g = epsilon_net(&line_space(&[0.0, 0.4, 1.0, 1.3, 3.0]), 0.5)?;
    print!("{}", GraphFile::from_graph(&g).to_json());
    Ok(())
}
