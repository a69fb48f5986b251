//! Line and plane subgroups of F_3² ⋊ SL(2, F_3): elementwise conjugate and
//! fixed point equivalent, yet of different order.

use sunada::suites::affine_suite;

fn main() -> sunada::Result<()> {
    for r in affine_suite(3, 2, &[[1, 1], [1, 2]])? {
        println!("dims {:?}, indices {:?}", r.dims, r.indices);
        for e in &r.expectations {
            println!("  {:<48} expected {:?} observed {}", e.claim, e.expected, e.observed);
        }
    }
    Ok(())
}
