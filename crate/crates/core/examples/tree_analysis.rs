//! Rooted trees with a depth horizon: pseudo-regularity `K`,
//! complementedness `C`, and the Cheeger bounds that follow from them.
//!
//! ```text
//! cargo run --example tree_analysis
//! ```

use cheeger::trees::{
    analyze, comb, grafted_dead_branches, growing_chain, homogeneous_tree, layered_tree, lemma_suite, RootedTree,
};

fn show(name: &str, t: &RootedTree) -> cheeger::Result<()> {
    let a = analyze(t, None)?;
    let fmt = |r: &Option<cheeger::Rational>| r.as_ref().map_or("-".to_string(), |r| r.to_string());
    println!(
        "{name:<22} D={} |T|={:<4} K={:<4} C={:<3} theorem={:<6} sandwich={:<6} lower={} upper={}",
        a.horizon,
        t.len(),
        a.pseudo_regularity.k.map_or("none".into(), |k| k.to_string()),
        a.complementedness.c,
        fmt(&a.bounds.theorem_lower),
        fmt(&a.bounds.sandwich_lower),
        a.bounds.bound.lower,
        fmt(&a.bounds.bound.upper),
    );
    Ok(())
}

fn main() -> cheeger::Result<()> {
    show("T3", &homogeneous_tree(3, 6))?;
    show("T4", &homogeneous_tree(4, 5))?;
    show("binary every 2nd level", &layered_tree(8, |t| if t % 2 == 0 { 2 } else { 1 }))?;
    show("T3 + dead branches", &grafted_dead_branches(&homogeneous_tree(3, 5), &[1, 3]))?;
    show("comb", &comb(8, 3))?;
    // No pseudo-regularity index at all: the windows witness h = 0.
    show("growing chain", &growing_chain(12))?;

    let t = homogeneous_tree(3, 6);
    let rep = lemma_suite(&t, 6, 1 << 22)?;
    println!(
        "\nboundary lemmas on T3 over {} connected sets of size <= 6: all hold = {}",
        rep.sets_checked,
        rep.all_hold()
    );
    Ok(())
}
