//! Schreier graph characteristic polynomials for a twisted pair in N₃(F_4).

use sunada::constructions::{heisenberg_group, horizontal_subgroup, twisted_horizontal, TwistMap};
use sunada::covers::{schreier_charpoly, schreier_spectrum_compare, SchreierMode};

fn main() -> sunada::Result<()> {
    let h = heisenberg_group(2, 2)?;
    let g = &h.group;
    let a = horizontal_subgroup(&h);
    let b = twisted_horizontal(&h, &TwistMap::frobenius(&h.field))?;
    let s: Vec<usize> = g.generators().iter().flat_map(|&x| [x, g.inv(x)]).collect();
    println!("charpoly: {}", schreier_charpoly(g, &a, &s)?);
    for mode in [SchreierMode::Multiset, SchreierMode::Set] {
        let c = schreier_spectrum_compare(g, &a, &b, &s, mode)?;
        println!("{}: equal {} on {:?} vertices", mode.name(), c.equal, c.dims);
    }
    Ok(())
}
