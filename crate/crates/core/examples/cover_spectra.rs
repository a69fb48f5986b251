//! Trace spectra of the two degree-180 covers from the S_6 Gassmann pair.

use sunada::covers::{compare_spectra, spectrum_from_catalog, BaseCatalog, CompareMode, FreeBase, Homomorphism};
use sunada::group::{generate_group, PermutationCarrier, Subgroup};

fn main() -> sunada::Result<()> {
    let c = PermutationCarrier::new(6)?;
    let (a, b) = (c.from_cycles(&[vec![1, 2]])?, c.from_cycles(&[vec![1, 2, 3, 4, 5, 6]])?);
    let g = generate_group(&c, &[a.clone(), b.clone()], 1000)?;
    let el = |x: &Vec<u32>| g.find(&c, x).unwrap();
    let pc = |cy: &[Vec<usize>]| el(&c.from_cycles(cy).unwrap());
    let h = Subgroup::generated(&g, &[pc(&[vec![1, 2], vec![3, 4]]), pc(&[vec![1, 3], vec![2, 4]])])?;
    let k = Subgroup::generated(&g, &[pc(&[vec![1, 2], vec![3, 4]]), pc(&[vec![1, 2], vec![5, 6]])])?;
    let phi = Homomorphism::from_pair(&g, el(&a), el(&b))?;
    let catalog = BaseCatalog::new(&FreeBase::level_two(), 6)?;
    println!("{} primitive classes, floor {}", catalog.classes.len(), catalog.floor);
    for mode in CompareMode::ALL {
        let sh = spectrum_from_catalog(&catalog, &g, &h, &phi, mode.kind())?;
        let sk = spectrum_from_catalog(&catalog, &g, &k, &phi, mode.kind())?;
        let cmp = compare_spectra(&sh, &sk, mode)?;
        println!("{:<20} equal below floor: {}  enumerated equal: {}", mode.name(), cmp.equal, sh.entries == sk.entries);
    }
    Ok(())
}
