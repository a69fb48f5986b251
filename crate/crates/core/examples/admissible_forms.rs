//! Admissible model forms over Q(√2) and cocompactness verdicts.

use sunada::algebra::{IntegerPolynomial, NumberField};
use sunada::forms::{classify_cocompactness, is_admissible, search_admissible_diagonal, Geometry, ModelForm};

fn main() -> sunada::Result<()> {
    let k = NumberField::new(&IntegerPolynomial::from_i64(&[-2, 0, 1]))?;
    let b = search_admissible_diagonal(&k, 3, 3)?.expect("found within height 3");
    println!("{}", serde_json::to_string(&b.to_json()).unwrap());
    let r = is_admissible(&b)?;
    println!("admissible {} signatures {:?}", r.admissible, r.signatures);
    println!("{:?}", classify_cocompactness(Geometry::R, &k, 3, &b)?.verdict);

    let q = NumberField::rationals();
    let f = ModelForm::diagonal(&q, vec![q.from_int(1), q.from_int(1), q.from_int(-7)], 0)?;
    let v = classify_cocompactness(Geometry::R, &q, 2, &f)?;
    println!("diag(1,1,-7): {:?} by {} {:?}", v.verdict, v.rule, v.obstruction);
    let std = ModelForm::standard(&q, 4)?;
    let v = classify_cocompactness(Geometry::R, &q, 4, &std)?;
    println!("standard n=4: {:?} witness {:?}", v.verdict, v.witness);
    Ok(())
}
