//! Number fields Q[x]/(f) with their real embeddings, and exact signs of
//! field elements at each real embedding.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modular::is_prime;
use super::poly::IntegerPolynomial;
use super::polymod;
use super::real_roots::{count_roots, isolate_real_roots, sign_of, sturm_sequence, RatPoly, RootInterval};
use crate::error::{Error, Result};

#[derive(Debug)]
struct FieldData {
    minpoly: IntegerPolynomial,
    embeddings: Vec<RealEmbedding>,
    r1: usize,
    r2: usize,
}

/// Q(θ) with θ a root of an irreducible integer polynomial.
///
/// Real embeddings are listed in descending order of the real root, so
/// embedding 0 sends θ to the largest real root.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

/// One real embedding σ: θ ↦ the unique root of the minimal polynomial in
/// `interval`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealEmbedding {
    pub index: usize,
    pub interval: RootInterval,
    /// Minimal polynomial of the owning field, for mismatch detection.
    pub minpoly: IntegerPolynomial,
}

/// Element Σ c_i θ^i with rational coordinates in the power basis.
#[derive(Clone)]
pub struct NumberFieldElement {
    field: NumberField,
    coords: Vec<BigRational>,
}

pub fn make_number_field(minpoly: &IntegerPolynomial) -> Result<NumberField> {
    NumberField::new(minpoly)
}

impl NumberField {
    pub fn new(minpoly: &IntegerPolynomial) -> Result<Self> {
        let degree = match minpoly.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        let minpoly = minpoly.primitive_part();
        if !minpoly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if !is_irreducible_over_q(&minpoly)? {
            return Err(Error::Reducible);
        }
        let mut roots = isolate_real_roots(&minpoly)?;
        roots.reverse();
        let r1 = roots.len();
        let embeddings = roots
            .into_iter()
            .enumerate()
            .map(|(index, interval)| RealEmbedding { index, interval, minpoly: minpoly.clone() })
            .collect();
        Ok(NumberField(Arc::new(FieldData {
            minpoly,
            embeddings,
            r1,
            r2: (degree - r1) / 2,
        })))
    }

    pub fn rationals() -> Self {
        Self::new(&IntegerPolynomial::from_i64(&[0, 1])).expect("x is irreducible")
    }

    pub fn minpoly(&self) -> &IntegerPolynomial {
        &self.0.minpoly
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.degree().unwrap()
    }

    pub fn embeddings(&self) -> &[RealEmbedding] {
        &self.0.embeddings
    }

    pub fn r1(&self) -> usize {
        self.0.r1
    }

    pub fn r2(&self) -> usize {
        self.0.r2
    }

    pub fn is_totally_real(&self) -> bool {
        self.0.r2 == 0
    }

    pub fn is_totally_imaginary(&self) -> bool {
        self.0.r1 == 0
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn element(&self, coords: Vec<BigRational>) -> Result<NumberFieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(NumberFieldElement { field: self.clone(), coords })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<NumberFieldElement> {
        self.element(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_int(&self, k: i64) -> NumberFieldElement {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = BigRational::from_integer(BigInt::from(k));
        NumberFieldElement { field: self.clone(), coords }
    }

    pub fn zero(&self) -> NumberFieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> NumberFieldElement {
        self.from_int(1)
    }

    /// θ itself (for degree 1, the rational root of the linear minpoly).
    pub fn theta(&self) -> NumberFieldElement {
        if self.degree() == 1 {
            let c = self.minpoly().coeffs();
            let root = BigRational::new(-c[0].clone(), c[1].clone());
            return NumberFieldElement { field: self.clone(), coords: vec![root] };
        }
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[1] = BigRational::one();
        NumberFieldElement { field: self.clone(), coords }
    }

    fn same(&self, other: &NumberField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.0.minpoly)
    }
}

impl NumberFieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(NumberFieldElement { field: self.field.clone(), coords })
    }

    pub fn neg(&self) -> Self {
        let coords = self.coords.iter().map(|a| -a).collect();
        NumberFieldElement { field: self.field.clone(), coords }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.field.degree() == 1 {
            let coords = vec![&self.coords[0] * &other.coords[0]];
            return Ok(NumberFieldElement { field: self.field.clone(), coords });
        }
        let n = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let m = RatPoly::from_integer(self.field.minpoly());
        let mut r = RatPoly::new(prod).rem(&m).0;
        r.resize(n, BigRational::zero());
        Ok(NumberFieldElement { field: self.field.clone(), coords: r })
    }

    /// a⁻¹, from the extended Euclidean algorithm on a(x) and the minimal
    /// polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("zero has no inverse".into()));
        }
        let n = self.field.degree();
        let m = RatPoly::from_integer(self.field.minpoly());
        // invariant: r_i ≡ s_i · a (mod m)
        let (mut r0, mut r1) = (m, self.as_polynomial());
        let (mut s0, mut s1) = (RatPoly::new(vec![]), RatPoly::new(vec![BigRational::one()]));
        while r1.degree().is_some_and(|d| d > 0) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1.0.first().cloned().filter(|c| !c.is_zero()).ok_or(Error::Reducible)?;
        let mut coords: Vec<BigRational> = s1.rem(&RatPoly::from_integer(self.field.minpoly())).0;
        coords.iter_mut().for_each(|x| *x = &*x / &c);
        coords.resize(n, BigRational::zero());
        Ok(NumberFieldElement { field: self.field.clone(), coords })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// The polynomial a(x) with a = a(θ). For degree-1 fields the element is
    /// the constant itself.
    pub fn as_polynomial(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(field: &NumberField, coords: &[String]) -> Result<Self> {
        let parsed = coords
            .iter()
            .map(|s| {
                s.parse::<BigRational>()
                    .map_err(|_| Error::InvalidArgument(format!("bad rational {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        field.element(parsed)
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coords == other.coords
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})θ"),
                _ => format!("({c})θ^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn poly_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_zero() || b.is_zero() {
        return RatPoly::new(vec![]);
    }
    let mut out = vec![BigRational::zero(); a.0.len() + b.0.len() - 1];
    for (i, x) in a.0.iter().enumerate() {
        for (j, y) in b.0.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    RatPoly::new(out)
}

fn poly_sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.0.len().max(b.0.len());
    let at = |p: &RatPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(BigRational::zero);
    RatPoly::new((0..n).map(|i| at(a, i) - at(b, i)).collect())
}

fn poly_divmod(a: &RatPoly, d: &RatPoly) -> (RatPoly, RatPoly) {
    let dd = d.degree().expect("nonzero divisor");
    let lead = &d.0[dd];
    let mut r = a.0.clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd).max(1)];
    while r.len() > dd && !r.is_empty() {
        let k = r.len() - 1 - dd;
        let c = &r[r.len() - 1] / lead;
        for (j, x) in d.0.iter().enumerate() {
            r[k + j] -= &c * x;
        }
        q[k] = c;
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    (RatPoly::new(q), RatPoly::new(r))
}

/// Exact sign of σ(a) for the real embedding σ.
///
/// Zero is detected algebraically: σ(a) = 0 iff the embedded root is also a
/// root of gcd(f, a(x)). Otherwise the isolating interval is bisected until
/// a(x) has no root in it, and a(x) is evaluated at the right endpoint.
pub fn sign_at_embedding(a: &NumberFieldElement, e: &RealEmbedding) -> Result<i8> {
    if *a.field.minpoly() != e.minpoly {
        return Err(Error::FieldMismatch);
    }
    if a.is_zero() {
        return Ok(0);
    }
    let f = RatPoly::from_integer(&e.minpoly);
    let fseq = sturm_sequence(&f);
    let apoly = a.as_polynomial();
    if apoly.degree() == Some(0) {
        return Ok(sign_of(&apoly.0[0]));
    }
    let mut iv = e.interval.clone();
    // rational root sitting on the right endpoint
    if f.eval(&iv.hi).is_zero() {
        return Ok(sign_of(&apoly.eval(&iv.hi)));
    }
    let g = e.minpoly.gcd(&apoly.to_integer());
    if g.degree().unwrap_or(0) > 0 {
        let gseq = sturm_sequence(&RatPoly::from_integer(&g));
        if count_roots(&gseq, &iv.lo, &iv.hi) > 0 {
            return Ok(0);
        }
    }
    let aseq = sturm_sequence(&RatPoly::from_integer(&super::poly::poly_radical(&apoly.to_integer())?));
    loop {
        if count_roots(&aseq, &iv.lo, &iv.hi) == 0 {
            let v = apoly.eval(&iv.hi);
            if !v.is_zero() {
                return Ok(sign_of(&v));
            }
        }
        iv.bisect(&fseq);
        if f.eval(&iv.hi).is_zero() {
            return Ok(sign_of(&apoly.eval(&iv.hi)));
        }
    }
}

/// Floating approximation of σ(a), for display only.
pub fn approx_at_embedding(a: &NumberFieldElement, e: &RealEmbedding) -> f64 {
    let f = RatPoly::from_integer(&e.minpoly);
    let seq = sturm_sequence(&f);
    let mut iv = e.interval.clone();
    for _ in 0..60 {
        iv.bisect(&seq);
    }
    a.as_polynomial().eval(&iv.midpoint()).to_f64().unwrap_or(f64::NAN)
}

/// Irreducibility over Q of a primitive squarefree polynomial.
///
/// Factor-degree patterns modulo several primes rule out most factor
/// degrees; any degree that survives is settled by Kronecker's method.
pub fn is_irreducible_over_q(f: &IntegerPolynomial) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n <= 1 {
        return Ok(n == 1);
    }
    let f = f.primitive_part();
    let lead = f.leading().unwrap().clone();
    // possible[d]: some factorization could have a factor of degree d
    let mut possible = vec![true; n + 1];
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 40 && p < 2000 {
        p += 1;
        if !is_prime(p) || (&lead % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = f.reduce_mod(p);
        let dfp = polymod::derivative(&fp, p);
        if polymod::degree(&polymod::gcd(&fp, &dfp, p)) != Some(0) {
            continue;
        }
        tried += 1;
        let degs = polymod::factor_degrees(&fp, p);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degs {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for d in 0..=n {
            possible[d] &= sums[d];
        }
    }
    for d in 1..=n / 2 {
        if possible[d] && has_factor_of_degree(&f, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Kronecker's method: search for an integer factor of exact degree `d`.
fn has_factor_of_degree(f: &IntegerPolynomial, d: usize) -> Result<bool> {
    let mut points: Vec<(i64, BigInt)> = Vec::new();
    for k in 0..40i64 {
        let x = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let v = f.eval(&BigInt::from(x));
        if v.is_zero() {
            return Ok(true);
        }
        points.push((x, v));
    }
    points.sort_by_key(|(_, v)| divisor_count(&v.abs()));
    let chosen: Vec<(i64, BigInt)> = points.into_iter().take(d + 1).collect();
    let divisor_lists: Vec<Vec<BigInt>> = chosen
        .iter()
        .enumerate()
        .map(|(i, (_, v))| {
            let pos = divisors(&v.abs());
            if i == 0 {
                pos
            } else {
                pos.iter().flat_map(|x| [x.clone(), -x.clone()]).collect()
            }
        })
        .collect();
    let combos: f64 = divisor_lists.iter().map(|l| l.len() as f64).product();
    if combos > 2e6 {
        return Err(Error::InvalidArgument(
            "irreducibility check exceeds Kronecker search budget".into(),
        ));
    }
    let xs: Vec<BigRational> = chosen
        .iter()
        .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let ys: Vec<BigRational> = idx
            .iter()
            .zip(&divisor_lists)
            .map(|(&i, l)| BigRational::from_integer(l[i].clone()))
            .collect();
        let g = lagrange(&xs, &ys);
        if g.degree() == Some(d) && g.0.iter().all(|c| c.is_integer()) {
            let gi = IntegerPolynomial::new(g.0.iter().map(|c| c.to_integer()).collect());
            if f.exact_div(&gi).is_some() {
                return Ok(true);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k > d {
                return Ok(false);
            }
            idx[k] += 1;
            if idx[k] < divisor_lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn lagrange(xs: &[BigRational], ys: &[BigRational]) -> RatPoly {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    RatPoly::new(acc)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().unwrap_or(u64::MAX);
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

fn divisor_count(n: &BigInt) -> usize {
    match n.to_u64() {
        Some(v) if v < 1 << 40 => divisors(n).len(),
        _ => usize::MAX,
    }
}

/// Lowest-terms rational helper used by callers that build elements from
/// integer numerators and a common denominator.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        let f = NumberField::new(&IntegerPolynomial::from_i64(&[-2, 0, 0, 1])).unwrap();
        let one = f.one();
        for coords in [[1, 1, 0], [0, 0, 1], [3, -1, 2], [-5, 0, 0]] {
            let a = f.element_i64(&coords).unwrap();
            assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
        }
        assert!(f.zero().inv().is_err());
        let q = NumberField::rationals();
        assert_eq!(q.from_int(4).inv().unwrap().coords()[0], rational(1, 4));
    }
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    #[test]
    fn signatures_of_small_fields() {
        let k = make_number_field(&ip(&[-2, 0, 1])).unwrap();
        assert_eq!((k.r1(), k.r2()), (2, 0));
        assert!(k.is_totally_real());
        let gauss = make_number_field(&ip(&[1, 0, 1])).unwrap();
        assert_eq!((gauss.r1(), gauss.r2()), (0, 1));
        assert!(gauss.is_totally_imaginary());
        let q = make_number_field(&ip(&[0, 1])).unwrap();
        assert_eq!((q.degree(), q.r1()), (1, 1));
    }

    #[test]
    fn embeddings_descend() {
        let k = make_number_field(&ip(&[-2, 0, 1])).unwrap();
        let e = k.embeddings();
        assert!(e[0].interval.lo >= e[1].interval.hi);
        let theta = k.theta();
        assert!((approx_at_embedding(&theta, &e[0]) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn minus_sqrt_two_signs() {
        let k = make_number_field(&ip(&[-2, 0, 1])).unwrap();
        let a = k.element_i64(&[0, -1]).unwrap();
        assert_eq!(sign_at_embedding(&a, &k.embeddings()[0]).unwrap(), -1);
        assert_eq!(sign_at_embedding(&a, &k.embeddings()[1]).unwrap(), 1);
        for e in k.embeddings() {
            assert_eq!(sign_at_embedding(&k.zero(), e).unwrap(), 0);
        }
    }

    #[test]
    fn sign_of_tiny_differences() {
        // 140/99 < sqrt 2 < 577/408
        let k = make_number_field(&ip(&[-2, 0, 1])).unwrap();
        let e = &k.embeddings()[0];
        let a = k.element(vec![rational(-140, 99), rational(1, 1)]).unwrap();
        assert_eq!(sign_at_embedding(&a, e).unwrap(), 1);
        let b = k.element(vec![rational(-577, 408), rational(1, 1)]).unwrap();
        assert_eq!(sign_at_embedding(&b, e).unwrap(), -1);
    }

    #[test]
    fn mismatch_is_reported() {
        let k = make_number_field(&ip(&[-2, 0, 1])).unwrap();
        let l = make_number_field(&ip(&[-3, 0, 1])).unwrap();
        assert_eq!(
            sign_at_embedding(&k.one(), &l.embeddings()[0]),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn reducible_and_nonsquarefree_rejected() {
        assert_eq!(make_number_field(&ip(&[-1, 0, 1])).err(), Some(Error::Reducible));
        assert_eq!(make_number_field(&ip(&[1, 2, 1])).err(), Some(Error::NotSquarefree));
        // x^4 + 1 is reducible mod every prime but irreducible over Q
        assert!(make_number_field(&ip(&[1, 0, 0, 0, 1])).is_ok());
        // (x^2 - 2)(x^2 - 3)
        assert_eq!(make_number_field(&ip(&[6, 0, -5, 0, 1])).err(), Some(Error::Reducible));
        // x^4 - 2x^2 + 9 = minpoly of sqrt2 + i
        assert!(make_number_field(&ip(&[9, 0, -2, 0, 1])).is_ok());
    }

    #[test]
    fn multiplication_reduces_modulo_minpoly() {
        let k = make_number_field(&ip(&[-2, 0, 1])).unwrap();
        let t = k.theta();
        assert_eq!(t.mul(&t).unwrap(), k.from_int(2));
        let cube = make_number_field(&ip(&[-2, 0, 0, 1])).unwrap();
        let c = cube.theta();
        assert_eq!(c.mul(&c).unwrap().mul(&c).unwrap(), cube.from_int(2));
    }

    proptest! {
        #[test]
        fn sign_is_multiplicative(a in proptest::collection::vec(-6i64..7, 3), b in proptest::collection::vec(-6i64..7, 3)) {
            let k = make_number_field(&ip(&[-2, 0, 0, 1])).unwrap();
            let k2 = make_number_field(&ip(&[-1, -3, 0, 1])).unwrap();
            for field in [k, k2] {
                let x = field.element_i64(&a).unwrap();
                let y = field.element_i64(&b).unwrap();
                let xy = x.mul(&y).unwrap();
                for e in field.embeddings() {
                    let sx = sign_at_embedding(&x, e).unwrap();
                    let sy = sign_at_embedding(&y, e).unwrap();
                    prop_assert_eq!(sign_at_embedding(&xy, e).unwrap(), sx * sy);
                }
            }
        }
    }
}
