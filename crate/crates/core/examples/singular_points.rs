//! Checks that a few points are singular on members of the pencil and that
//! their coordinates are roots of the associated quartic.

use hyperquintic::pencil::{evaluate_F, singular_quartic, power_sums, verify_singular, PencilParam, SymPoint};

fn main() -> hyperquintic::Result<()> {
    let cases = [
        (&[1, -1][..], &[5, 5][..], (3, -1)),
        (&[1, 0, -2][..], &[4, 4, 2][..], (2, -1)),
        (&[1, -9][..], &[9, 1][..], (75, 7)),
    ];
    for (values, mults, (a, b)) in cases {
        let pt = SymPoint::from_ints(values, mults)?;
        let p = PencilParam::from_ints(a, b)?;
        let quartic = singular_quartic(p.lambda().expect("alpha != 0"), &power_sums(&pt));
        println!(
            "{values:?} x {mults:?} on {p}: singular={} F={} P={}",
            verify_singular(&pt, &p)?,
            evaluate_F(&pt, &p),
            quartic.as_poly().map(|q| q.render("X")).unwrap_or_default()
        );
    }
    Ok(())
}
