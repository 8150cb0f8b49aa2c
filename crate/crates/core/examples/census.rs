//! Full census of the pencil: `cargo run --release --example census -- 8`.

use hyperquintic::census::census;

fn main() -> hyperquintic::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let report = census(n)?;
    println!("n = {n}: {} multiplicity patterns", report.patterns);
    for o in &report.generic_orbits {
        println!("  every member: {:>6} x {}  {}", o.orbit_length, o.letters, o.constraint.as_deref().unwrap_or(""));
    }
    for s in &report.special_params {
        println!("  {:<40} {:>7} nodes", s.param.display, s.total_nodes);
    }
    println!("exceptional: {}", report.exceptional_displays().join(" "));
    if let Some(best) = &report.best {
        println!("best: {} with {} nodes = {:?}", best.param.display, best.total_nodes, report.best_decomposition());
    }
    for w in &report.warnings {
        println!("note: {w}");
    }
    Ok(())
}
