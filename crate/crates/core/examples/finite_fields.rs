//! Arithmetic in F_9 and the Frobenius map.

use sunada::algebra::make_finite_field;

fn main() -> sunada::Result<()> {
    let f = make_finite_field(3, 2)?;
    println!("F_{} with modulus {:?}", f.order(), f.modulus);
    let theta = f.generator();
    println!("θ^2 = {:?}", f.mul(&theta, &theta).coeffs);
    // a primitive element: multiplicative order q - 1
    let q = f.order();
    let g = f
        .elements()
        .find(|x| !f.is_zero(x) && (1..q - 1).all(|k| f.pow(x, k) != f.one()))
        .expect("F_q^× is cyclic");
    for k in 0..q - 1 {
        let x = f.pow(&g, k);
        println!("g^{k} = {:?}  frobenius {:?}", x.coeffs, f.frobenius(&x).coeffs);
    }
    let x = f.element(5);
    let y = f.inv(&x).expect("nonzero");
    assert_eq!(f.mul(&x, &y), f.one());
    Ok(())
}
