//! Conjugacy classes and the modular character table of S_4.

use sunada::group::{character_table, conjugacy_classes, generate_group, PermutationCarrier};

fn main() -> sunada::Result<()> {
    let c = PermutationCarrier::new(4)?;
    let gens = [c.from_cycles(&[vec![1, 2]])?, c.from_cycles(&[vec![1, 2, 3, 4]])?];
    let g = generate_group(&c, &gens, 100)?;
    let classes = conjugacy_classes(&g);
    println!("|S_4| = {}, class sizes {:?}", g.order(), classes.class_sizes);
    let t = character_table(&g)?;
    println!("degrees {:?} (computed mod {})", t.degrees, t.prime);
    Ok(())
}
