//! Exact signs of elements of Q(√2) at both real embeddings.

use sunada::algebra::{make_number_field, sign_at_embedding, IntegerPolynomial};

fn main() -> sunada::Result<()> {
    let k = make_number_field(&IntegerPolynomial::from_i64(&[-2, 0, 1]))?;
    println!("minpoly {}  r1 = {}  r2 = {}", k.minpoly(), k.r1(), k.r2());
    let x = k.element_i64(&[1, -1])?; // 1 - √2
    for e in k.embeddings() {
        println!("embedding {}: sign(1 - θ) = {}", e.index, sign_at_embedding(&x, e)?);
    }
    let inv = x.inv()?;
    println!("(1 - θ)^-1 = {:?}", inv.to_strings());
    Ok(())
}
