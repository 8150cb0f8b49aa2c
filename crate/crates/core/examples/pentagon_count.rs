//! Node counts of the pentagon construction by spectrum convolution.

use hyperquintic::pentagon::{pentagon_node_count, pentagon_spectrum};

fn main() -> hyperquintic::Result<()> {
    for (v, m) in pentagon_spectrum().entries() {
        println!("critical value {v:>2}: {m} points");
    }
    for n in 3..=12 {
        println!("n = {n:>2}: {}", pentagon_node_count(n)?);
    }
    Ok(())
}
