//! Z/7 ⋊ Z/3 from the automorphism x ↦ 2x.

use sunada::constructions::semidirect_product;
use sunada::group::{conjugacy_classes, generate_group, CyclicCarrier};

fn main() -> sunada::Result<()> {
    let c = CyclicCarrier { n: 7 };
    let a = generate_group(&c, &[1], 10)?;
    // θ as an image table on the element indices of A
    let theta: Vec<usize> = (0..7).map(|i| {
        let x = c_value(&a, &c, i);
        a.find(&c, &((2 * x) % 7)).unwrap()
    }).collect();
    let s = semidirect_product(&a, &[theta])?;
    println!("order {}, classes {:?}", s.group.order(), conjugacy_classes(&s.group).class_sizes);
    println!("base normal: {}", s.base_subgroup().is_normal());
    Ok(())
}

fn c_value(a: &sunada::group::ConcreteGroup, c: &CyclicCarrier, i: usize) -> u64 {
    (0..c.n).find(|x| a.find(c, x) == Some(i)).unwrap()
}
