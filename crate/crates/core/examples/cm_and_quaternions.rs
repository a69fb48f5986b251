//! A CM extension of Q(√2) and a totally definite quaternion algebra.

use sunada::algebra::{IntegerPolynomial, NumberField};
use sunada::forms::{make_cm_extension, quaternion_totally_definite, QuaternionAlgebraDescriptor};

fn main() -> sunada::Result<()> {
    let k = NumberField::new(&IntegerPolynomial::from_i64(&[-2, 0, 1]))?;
    let e = make_cm_extension(&k, 1)?;
    println!("E = Q[x]/({}), r1 = {}, r2 = {}", e.field.minpoly(), e.field.r1(), e.field.r2());
    let q = QuaternionAlgebraDescriptor::new(&k, k.from_int(-1), k.element_i64(&[-2, 1])?)?;
    let d = quaternion_totally_definite(&q)?;
    println!("(-1, θ-2): totally definite {} signs {:?}", d.totally_definite, d.signs);
    Ok(())
}
