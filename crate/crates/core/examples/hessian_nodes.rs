//! Certifies the orbit (1^5, b^2, (-4-b)^2, 3) with b^2 + 4b + 7 = 0 as
//! ordinary nodes of the member (3:-1), and shows a degenerate case.

use hyperquintic::exactnum::{FieldElement, NumberField, UniPoly};
use hyperquintic::hessian::{chart_reduce, hessian_at, verify_orbit_nodes};
use hyperquintic::pencil::{PencilParam, SymPoint};

fn main() -> hyperquintic::Result<()> {
    let k = NumberField::new(&UniPoly::from_ints(&[7, 4, 1]), "b")?;
    let b = k.generator();
    let pt = SymPoint::new(
        vec![FieldElement::int(1), b.clone(), FieldElement::int(-4) - b, FieldElement::int(3)],
        vec![5, 2, 2, 1],
    )?;
    let p = PencilParam::from_ints(3, -1)?;
    let h = hessian_at(&chart_reduce(&pt), &p)?;
    println!("det Hess at {p} = {}", h.determinant);
    println!("status: {}", verify_orbit_nodes(&pt, &p)?);

    let pt = SymPoint::from_ints(&[1, -1], &[5, 5])?;
    for (a, b) in [(3, -1), (5, -3)] {
        let p = PencilParam::from_ints(a, b)?;
        println!("(1^5, (-1)^5) on {p}: {}", verify_orbit_nodes(&pt, &p)?);
    }
    Ok(())
}
