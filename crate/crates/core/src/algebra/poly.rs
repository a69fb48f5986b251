//! Integer polynomials with arbitrary-precision coefficients.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::modular::{inv_mod, large_primes};
use super::polymod;
use crate::error::{Error, Result};

/// Polynomial with integer coefficients in ascending degree order.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// x - c
    pub fn linear_root(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| self.coeff(i) - other.coeff(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division over Z; `None` unless `divisor` divides `self` with an
    /// integral quotient.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let db = divisor.degree()?;
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect();
        polymod::trim(&mut v);
        v
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Greatest common divisor over Z, primitive with positive leading
    /// coefficient. Computed modularly and certified by trial division.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        modular_gcd(&self.primitive_part(), &other.primitive_part())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

/// Squarefree part f / gcd(f, f'), primitive with positive leading
/// coefficient.
pub fn poly_radical(f: &IntegerPolynomial) -> Result<IntegerPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(IntegerPolynomial::one());
    }
    let f = f.primitive_part();
    let g = f.gcd(&f.derivative());
    let r = f
        .exact_div(&g)
        .ok_or_else(|| Error::Internal("gcd does not divide polynomial".into()))?;
    Ok(r.primitive_part())
}

/// Modular gcd of two primitive nonzero polynomials.
fn modular_gcd(a: &IntegerPolynomial, b: &IntegerPolynomial) -> IntegerPolynomial {
    let lc_gcd = a.leading().unwrap().gcd(b.leading().unwrap());
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut last: Option<IntegerPolynomial> = None;
    for p in large_primes() {
        let pb = BigInt::from(p);
        if (a.leading().unwrap() % &pb).is_zero() || (b.leading().unwrap() % &pb).is_zero() {
            continue;
        }
        let g = polymod::gcd(&a.reduce_mod(p), &b.reduce_mod(p), p);
        let d = polymod::degree(&g).unwrap_or(0);
        if d == 0 {
            return IntegerPolynomial::one();
        }
        let scale = lc_gcd.mod_floor(&pb).to_u64().unwrap();
        let image: Vec<u64> = g
            .iter()
            .map(|&c| super::modular::mul_mod(c, scale, p))
            .collect();
        if d < best_deg {
            best_deg = d;
            modulus = BigInt::one();
            acc = vec![BigInt::zero(); d + 1];
            last = None;
        } else if d > best_deg {
            continue;
        }
        crt_accumulate(&mut acc, &mut modulus, &image, p);
        let candidate = IntegerPolynomial::new(
            acc.iter().map(|c| symmetric(c, &modulus)).collect(),
        )
        .primitive_part();
        if last.as_ref() == Some(&candidate)
            && a.exact_div(&candidate).is_some()
            && b.exact_div(&candidate).is_some()
        {
            return candidate;
        }
        last = Some(candidate);
    }
    unreachable!("prime supply exhausted")
}

/// Folds residues modulo `p` into `acc` (residues modulo `modulus`).
pub(crate) fn crt_accumulate(acc: &mut [BigInt], modulus: &mut BigInt, image: &[u64], p: u64) {
    let pb = BigInt::from(p);
    let m_mod_p = modulus.mod_floor(&pb).to_u64().unwrap();
    let m_inv = inv_mod(m_mod_p, p).expect("coprime moduli");
    for (i, slot) in acc.iter_mut().enumerate() {
        let r = image.get(i).copied().unwrap_or(0);
        let cur = slot.mod_floor(&pb).to_u64().unwrap();
        let diff = (r + p - cur) % p;
        let t = super::modular::mul_mod(diff, m_inv, p);
        *slot += &*modulus * BigInt::from(t);
    }
    *modulus *= pb;
}

pub(crate) fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Big integers in JSON: plain numbers when they fit in i64, decimal
/// strings otherwise. Both forms are accepted on input.
pub mod bigint_json {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Small(i64),
        Text(String),
    }

    pub fn to_repr(c: &BigInt) -> serde_json::Value {
        match c.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(c.to_string()),
        }
    }

    pub(crate) fn from_repr(r: Repr) -> std::result::Result<BigInt, String> {
        match r {
            Repr::Small(v) => Ok(BigInt::from(v)),
            Repr::Text(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self.coeffs.iter().map(bigint_json::to_repr).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<bigint_json::Repr> = Vec::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(bigint_json::from_repr)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(IntegerPolynomial::new(coeffs))
    }
}
