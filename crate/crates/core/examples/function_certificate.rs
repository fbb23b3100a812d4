//! Lower bounds from a single function: if `Δf ≥ c₂ > 0` at every interior
//! vertex and `|∇f| ≤ c₁` on every edge, then `h ≥ c₂ / (μ c₁)`.
//!
//! ```text
//! cargo run --example function_certificate
//! ```

use cheeger::graphcore::{
    certificate_lower_bound, corollary_connected_bound, green_identity_check, interior, path_graph, Certificate,
    VertexFunction,
};
use cheeger::trees::homogeneous_tree;
use cheeger::{ratio, Graph};

fn report(name: &str, g: &Graph, f: &VertexFunction) -> cheeger::Result<()> {
    match certificate_lower_bound(g, f)? {
        Certificate::Certified(b) => {
            b.verify(g)?;
            println!("{name}: h >= {}", b.lower);
        }
        Certificate::NoCertificate { vertex, laplacian, .. } => {
            println!("{name}: no certificate, laplacian {laplacian} at {}", g.label(vertex));
        }
    }
    Ok(())
}

fn main() -> cheeger::Result<()> {
    // Depth in a 3-regular tree grows in every direction but one.
    for k in [3, 4, 5] {
        let t = homogeneous_tree(k, 5);
        let g = t.to_graph();
        report(&format!("T{k} with f = depth"), &g, &VertexFunction::distance_from(&g, t.root()))?;
    }

    // On a path the laplacian of any distance function vanishes somewhere.
    let p = path_graph(12).with_frontier(&[0, 11])?;
    report("path with f = distance to an end", &p, &VertexFunction::distance_from(&p, 0))?;

    // Green's identity on finitely supported functions is exact.
    let t = homogeneous_tree(3, 4).to_graph();
    let inner = interior(&t);
    let f = VertexFunction::from_fn(&t, |v| if inner.contains(&v) { ratio(v as i64 % 5, 3) } else { ratio(0, 1) });
    let g2 = VertexFunction::from_fn(&t, |v| {
        if inner.contains(&v) {
            ratio(1 - (v as i64 % 4), 2)
        } else {
            ratio(0, 1)
        }
    });
    println!("Green residual: {}", green_identity_check(&t, &f, &g2)?);

    // Corollary form: a bound for one connected set from the function alone.
    let tree = homogeneous_tree(3, 5);
    let g = tree.to_graph();
    let depth = VertexFunction::distance_from(&g, tree.root());
    let branch = tree.children(tree.root())[0];
    let subtree: Vec<_> = tree.subtree_past(branch)?.into_iter().filter(|&v| tree.depth(v) <= 3).collect();
    let c = corollary_connected_bound(&g, &depth, &subtree)?;
    println!(
        "connected set of {}: ratio {} >= c2/c1 = {}: {}",
        subtree.len(),
        c.ratio,
        c.bound.map_or("-".into(), |b| b.to_string()),
        c.holds
    );
    Ok(())
}
