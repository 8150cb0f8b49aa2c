//! Exact arithmetic in Q(b) with b^2 = 85, and factoring over Q.

use hyperquintic::exactnum::{poly_factor, FieldElement, NumberField, UniPoly};

fn main() -> hyperquintic::Result<()> {
    let k = NumberField::new(&UniPoly::from_ints(&[-85, 0, 1]), "b")?;
    let b = k.generator();
    let lambda = (FieldElement::int(17) + b.clone()) / FieldElement::int(60);
    println!("lambda = {lambda}");
    println!("minimal polynomial: {}", lambda.minimal_polynomial().render("x"));
    println!("1/lambda = {}", FieldElement::int(1) / lambda.clone());

    let p = UniPoly::from_ints(&[-364, -413, -189, -39, -3]) * UniPoly::from_ints(&[-1, 1]) * UniPoly::from_ints(&[4, 1]);
    println!("\nfactoring {}", p.render("x"));
    for f in poly_factor(&p)?.factors {
        println!("  ({})^{}", f.poly.render("x"), f.multiplicity);
    }
    Ok(())
}
