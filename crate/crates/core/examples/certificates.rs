//! All four certificates for the Klein-four pair in S_6, with rechecks.

use sunada::certify::{certify, Relation};
use sunada::group::{generate_group, PermutationCarrier, Subgroup};

fn main() -> sunada::Result<()> {
    let c = PermutationCarrier::new(6)?;
    let g = generate_group(&c, &[c.from_cycles(&[vec![1, 2]])?, c.from_cycles(&[vec![1, 2, 3, 4, 5, 6]])?], 1000)?;
    let el = |cy: &[Vec<usize>]| g.find(&c, &c.from_cycles(cy).unwrap()).unwrap();
    let h = Subgroup::generated(&g, &[el(&[vec![1, 2], vec![3, 4]]), el(&[vec![1, 3], vec![2, 4]])])?;
    let k = Subgroup::generated(&g, &[el(&[vec![1, 2], vec![3, 4]]), el(&[vec![1, 2], vec![5, 6]])])?;
    for r in [Relation::AlmostConjugate, Relation::ElementwiseConjugate, Relation::FixedPointEquivalent, Relation::Primitive] {
        for cert in certify(r, &g, &h, &k)? {
            println!("{:<24} {:<5} recheck {}", r.name(), cert.verdict, cert.recheck());
        }
    }
    Ok(())
}
