//! End spaces of rooted trees and uniform perfectness.
//!
//! Ends at the horizon are the live leaves, with `d(ξ, η) = e^{-(ξ|η)}`.
//! A `K`-pseudo-regular tree has an `e^K`-uniformly perfect end space down
//! to the resolution of the truncation.
//!
//! ```text
//! cargo run --example end_space
//! ```

use cheeger::metricspace::{cantor_sample, two_point, two_point_perfectness_check, uniformly_perfect_check};
use cheeger::trees::{end_space, homogeneous_tree, layered_tree, pseudo_regularity_index, RootedTree};

fn check(name: &str, t: &RootedTree) -> cheeger::Result<()> {
    let x = end_space(t)?;
    let d = t.horizon() as i32;
    let Some(k) = pseudo_regularity_index(t)?.k else {
        println!("{name}: not pseudo-regular");
        return Ok(());
    };
    let eps0 = (-1.0f64).exp();
    let floor = (-((d - k as i32) as f64)).exp();
    let one = uniformly_perfect_check(&x, (k as f64).exp(), eps0, floor, &[])?;
    // smallest integer R for which the two-point form holds on the same range
    let r = (2..200)
        .map(f64::from)
        .find(|&r| two_point_perfectness_check(&x, r, eps0, floor, &[]).is_ok_and(|c| c.holds()));
    println!(
        "{name:<18} {} ends, K={k}: e^K one-point holds = {}, smallest two-point R = {:?} (ceil ln R = {:?})",
        x.len(),
        one.holds(),
        r,
        r.map(|r| r.ln().ceil())
    );
    Ok(())
}

fn main() -> cheeger::Result<()> {
    check("T3 depth 7", &homogeneous_tree(3, 7))?;
    check("T5 depth 5", &homogeneous_tree(5, 5))?;
    check("branch every 2nd", &layered_tree(9, |t| if t % 2 == 1 { 2 } else { 1 }))?;
    check("branch every 3rd", &layered_tree(10, |t| if t % 3 == 2 { 2 } else { 1 }))?;

    // A two-point space is perfect at no scale between its points.
    let x = two_point(1.0);
    let c = uniformly_perfect_check(&x, 4.0, 0.9, 0.1, &[])?;
    println!("two points: {}", c.to_json(&x));
    let c = uniformly_perfect_check(&cantor_sample(6), 9.0, 0.3, 0.01, &[])?;
    println!("Cantor sample, S = 9: holds = {}", c.holds());
    Ok(())
}
