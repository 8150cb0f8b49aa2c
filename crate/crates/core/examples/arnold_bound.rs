//! Spectral upper bounds Ar_n(d) next to the binomial count for cubics.

use hyperquintic::bounds::{arnold_number, kalker_cubic_count, BoundQuery};

fn main() -> hyperquintic::Result<()> {
    println!("{:>3} {:>12} {:>10} {:>10}", "n", "Ar_n(5)", "Ar_n(3)", "C(n+1,n/2)");
    for n in 3..=12 {
        println!(
            "{n:>3} {:>12} {:>10} {:>10}",
            arnold_number(BoundQuery::new(n, 5)?),
            arnold_number(BoundQuery::new(n, 3)?),
            kalker_cubic_count(n)
        );
    }
    Ok(())
}
