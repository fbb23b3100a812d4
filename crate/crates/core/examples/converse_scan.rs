//! Detecting a vanishing Cheeger constant from a growing family of windows.
//!
//! ```text
//! cargo run --example converse_scan
//! ```

use cheeger::decomp::{converse_scan, ScanConfig};
use cheeger::graphcore::{path_graph, Graph};
use cheeger::ratio;
use cheeger::trees::{growing_chain, homogeneous_tree};

fn main() -> cheeger::Result<()> {
    let paths: Vec<Graph> = [8, 12, 20, 36]
        .iter()
        .map(|&n| path_graph(n).with_frontier(&[0, n - 1]))
        .collect::<cheeger::Result<_>>()?;
    let rep = converse_scan(&paths, &ScanConfig::default())?;
    println!("paths: decay {}\n{}", rep.decay, serde_json::to_string_pretty(&rep.to_json()).unwrap());

    let chains: Vec<Graph> = (6..=12).step_by(2).map(|d| growing_chain(d).to_graph()).collect();
    let rep = converse_scan(&chains, &ScanConfig::default())?;
    let hs: Vec<String> = rep.entries.iter().map(|e| e.h_interior.to_string()).collect();
    println!("growing chains: {hs:?}, decay {}", rep.decay);

    // Regular trees keep a floor above the certified lower bound.
    let trees: Vec<Graph> = (4..=6).map(|d| homogeneous_tree(3, d).to_graph()).collect();
    let config = ScanConfig {
        ambient_lower: Some(ratio(1, 7)),
        ..ScanConfig::default()
    };
    let rep = converse_scan(&trees, &config)?;
    println!("T3 windows: floor {}, decay {}, squeeze {:?}", rep.floor, rep.decay, rep.squeeze);
    Ok(())
}
