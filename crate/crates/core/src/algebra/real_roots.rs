//! Sturm sequences and exact real root isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntegerPolynomial;
use crate::error::{Error, Result};

/// Dense polynomial over Q, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn from_integer(f: &IntegerPolynomial) -> Self {
        RatPoly::new(f.coeffs().iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lead = &d.0[dd];
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let q = &r[r.len() - 1] / lead;
            for (j, c) in d.0.iter().enumerate() {
                r[k + j] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        RatPoly::new(r)
    }

    /// Scales to a primitive integer polynomial with the same roots and the
    /// same sign pattern (the scale factor is positive).
    pub fn to_integer(&self) -> IntegerPolynomial {
        use num_integer::Integer;
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &den).to_integer()).collect();
        let p = IntegerPolynomial::new(ints);
        let g = p.content();
        if g.is_zero() {
            p
        } else {
            IntegerPolynomial::new(p.coeffs().iter().map(|c| c / &g).collect())
        }
    }
}

/// Sturm chain f, f', -rem(f, f'), ...
pub fn sturm_sequence(f: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() != Some(0) {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(RatPoly::new(r.0.into_iter().map(|c| -c).collect()));
    }
    if seq.last().is_some_and(|p| p.is_zero()) {
        seq.pop();
    }
    seq
}

fn variations(seq: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| sign_of(&p.eval(x)))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

pub fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots of `f` in the half-open interval (lo, hi].
pub fn count_roots(seq: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
    variations(seq, lo).saturating_sub(variations(seq, hi))
}

/// All roots lie strictly inside (-B, B).
pub fn cauchy_bound(f: &RatPoly) -> BigRational {
    let lead = f.0.last().expect("nonzero").abs();
    let m = f.0[..f.0.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_default();
    BigRational::one() + m
}

/// A half-open rational interval (lo, hi] holding exactly one real root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "rational_string")]
    pub lo: BigRational,
    #[serde(with = "rational_string")]
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halves the interval, keeping the half that holds the root.
    pub fn bisect(&mut self, seq: &[RatPoly]) {
        let mid = self.midpoint();
        if count_roots(seq, &self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }
}

/// Disjoint isolating intervals for the real roots of a squarefree
/// nonconstant polynomial, in ascending order.
pub fn isolate_real_roots(f: &IntegerPolynomial) -> Result<Vec<RootInterval>> {
    match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let rp = RatPoly::from_integer(f);
    let seq = sturm_sequence(&rp);
    let b = cauchy_bound(&rp);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&seq, &lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

pub mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
