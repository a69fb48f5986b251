//! CM extensions F(√−d) of totally real fields and quaternion algebras
//! (α, β / F).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{sign_at_embedding, IntegerPolynomial, NumberField, NumberFieldElement};
use crate::error::{Error, Result};

/// E = F(√−d) presented as a primitive extension Q(θ + √−d).
#[derive(Debug, Clone, PartialEq)]
pub struct CmField {
    pub field: NumberField,
    pub base: NumberField,
    pub d: u64,
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Minimal polynomial of θ + √−d: with f(x + s) = A(x) + s·B(x) modulo
/// s² = −d, it is f(x + s)·f(x − s) = A² + d·B².
pub fn cm_minpoly(f: &IntegerPolynomial, d: u64) -> IntegerPolynomial {
    let d = BigInt::from(d);
    let x = IntegerPolynomial::from_i64(&[0, 1]);
    let one = IntegerPolynomial::one();
    // (A, B) for (x + s)^k, accumulated by Horner from the top coefficient
    let mut acc = (IntegerPolynomial::zero(), IntegerPolynomial::zero());
    for c in f.coeffs().iter().rev() {
        let (a, b) = acc;
        // (a + s b)(x + s) = (a x − d b) + s (a + b x)
        let na = a.mul(&x).sub(&b.scale(&d)).add(&one.scale(c));
        let nb = a.add(&b.mul(&x));
        acc = (na, nb);
    }
    let (a, b) = acc;
    a.mul(&a).add(&b.mul(&b).scale(&d))
}

pub fn make_cm_extension(f: &NumberField, d: u64) -> Result<CmField> {
    if !f.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    if d == 0 || !is_squarefree(d) {
        return Err(Error::InvalidArgument(format!("d = {d} is not a positive squarefree integer")));
    }
    let h = cm_minpoly(f.minpoly(), d);
    let e = NumberField::new(&h).map_err(|err| {
        Error::DegenerateComposite(format!("θ + √−{d} does not generate a field of degree {}: {err}", 2 * f.degree()))
    })?;
    if e.degree() != 2 * f.degree() || e.r1() != 0 {
        return Err(Error::DegenerateComposite(format!(
            "composite has degree {} with {} real embeddings",
            e.degree(),
            e.r1()
        )));
    }
    Ok(CmField { field: e, base: f.clone(), d })
}

/// The quaternion algebra over F with i² = α, j² = β, ij = −ji.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionAlgebraDescriptor {
    pub base: NumberField,
    pub alpha: NumberFieldElement,
    pub beta: NumberFieldElement,
}

impl QuaternionAlgebraDescriptor {
    pub fn new(base: &NumberField, alpha: NumberFieldElement, beta: NumberFieldElement) -> Result<Self> {
        if alpha.field() != base || beta.field() != base {
            return Err(Error::FieldMismatch);
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::InvalidArgument("α and β must be nonzero".into()));
        }
        Ok(QuaternionAlgebraDescriptor { base: base.clone(), alpha, beta })
    }

    /// Product in the basis 1, i, j, ij.
    pub fn mul(&self, x: &[NumberFieldElement; 4], y: &[NumberFieldElement; 4]) -> Result<[NumberFieldElement; 4]> {
        let (a, b) = (&self.alpha, &self.beta);
        let ab = a.mul(b)?;
        let m = |u: &NumberFieldElement, v: &NumberFieldElement| u.mul(v);
        // (x0 + x1 i + x2 j + x3 k)(y0 + y1 i + y2 j + y3 k), k = ij, k² = −αβ
        let c0 = m(&x[0], &y[0])?
            .add(&a.mul(&m(&x[1], &y[1])?)?)?
            .add(&b.mul(&m(&x[2], &y[2])?)?)?
            .sub(&ab.mul(&m(&x[3], &y[3])?)?)?;
        let c1 = m(&x[0], &y[1])?
            .add(&m(&x[1], &y[0])?)?
            .sub(&b.mul(&m(&x[2], &y[3])?)?)?
            .add(&b.mul(&m(&x[3], &y[2])?)?)?;
        let c2 = m(&x[0], &y[2])?
            .add(&m(&x[2], &y[0])?)?
            .add(&a.mul(&m(&x[1], &y[3])?)?)?
            .sub(&a.mul(&m(&x[3], &y[1])?)?)?;
        let c3 = m(&x[0], &y[3])?
            .add(&m(&x[3], &y[0])?)?
            .add(&m(&x[1], &y[2])?)?
            .sub(&m(&x[2], &y[1])?)?;
        Ok([c0, c1, c2, c3])
    }

    /// Reduced norm x0² − αx1² − βx2² + αβx3².
    pub fn reduced_norm(&self, x: &[NumberFieldElement; 4]) -> Result<NumberFieldElement> {
        let ab = self.alpha.mul(&self.beta)?;
        x[0].mul(&x[0])?
            .sub(&self.alpha.mul(&x[1].mul(&x[1])?)?)?
            .sub(&self.beta.mul(&x[2].mul(&x[2])?)?)?
            .add(&ab.mul(&x[3].mul(&x[3])?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinitenessReport {
    pub totally_definite: bool,
    /// Signs of σⱼ(α) and σⱼ(β) for each real embedding.
    pub signs: Vec<(i8, i8)>,
}

/// Totally definite iff σ(α) < 0 and σ(β) < 0 at every real embedding σ,
/// i.e. the algebra ramifies at every infinite place.
pub fn quaternion_totally_definite(a: &QuaternionAlgebraDescriptor) -> Result<DefinitenessReport> {
    if !a.base.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let signs = a
        .base
        .embeddings()
        .iter()
        .map(|e| Ok((sign_at_embedding(&a.alpha, e)?, sign_at_embedding(&a.beta, e)?)))
        .collect::<Result<Vec<_>>>()?;
    let totally_definite = signs.iter().all(|&(x, y)| x < 0 && y < 0);
    Ok(DefinitenessReport { totally_definite, signs })
}
