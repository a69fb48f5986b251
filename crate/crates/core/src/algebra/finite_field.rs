//! Prime and prime-power finite fields F_q = F_p[x]/(m(x)).

use serde::{Deserialize, Serialize};

use super::modular::{is_prime, mul_mod};
use super::polymod;
use crate::caps::{self, Caps};
use crate::error::{Error, Result};

/// A finite field of order p^n, presented by a monic irreducible modulus.
///
/// For n = 1 the modulus is `x`, so the generator θ is 0 and the power basis
/// is just `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: usize,
    /// Ascending coefficients, length n + 1, leading coefficient 1.
    pub modulus: Vec<u64>,
}

/// An element of F_q as its coefficient vector in the power basis
/// 1, θ, …, θ^(n-1). Always reduced, so equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    pub coeffs: Vec<u64>,
}

/// Builds F_{p^n} with the least monic irreducible modulus, where
/// polynomials are ordered by the integer Σ c_i p^i of their non-leading
/// coefficients.
pub fn make_finite_field(p: u64, n: usize) -> Result<FieldDescriptor> {
    FieldDescriptor::new(p, n)
}

impl FieldDescriptor {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let cap = Caps::current().field_size as u128;
        let q = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        caps::check("field size", q, cap)?;
        let q = q as u64;
        if n == 1 {
            return Ok(FieldDescriptor { p, n, modulus: vec![0, 1] });
        }
        for code in 0..q {
            let mut modulus = digits(code, p, n);
            modulus.push(1);
            if polymod::is_irreducible(&modulus, p) {
                return Ok(FieldDescriptor { p, n, modulus });
            }
        }
        Err(Error::Internal(format!("no irreducible of degree {n} over F_{p}")))
    }

    /// Explicit modulus, verified irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = modulus.len().saturating_sub(1);
        if n == 0 || modulus[n] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument("modulus must be monic and reduced".into()));
        }
        if !polymod::is_irreducible(&modulus, p) {
            return Err(Error::Reducible);
        }
        Ok(FieldDescriptor { p, n, modulus })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = k.rem_euclid(self.p as i64) as u64;
        FieldElement { coeffs }
    }

    /// θ^i in the power basis. For n = 1, θ = 0.
    pub fn basis(&self, i: usize) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        coeffs[i] = 1;
        FieldElement { coeffs }
    }

    /// θ, generating F_q over F_p (0 when n = 1). Not in general a
    /// generator of the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        if self.n == 1 {
            self.zero()
        } else {
            self.basis(1)
        }
    }

    /// Base-p integer code of an element, in 0..q.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn element(&self, index: u64) -> FieldElement {
        FieldElement { coeffs: digits(index, self.p, self.n) }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "expected {} residues below {}",
                self.n, self.p
            )));
        }
        Ok(FieldElement { coeffs: coeffs.to_vec() })
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement { coeffs: vec![mul_mod(a.coeffs[0], b.coeffs[0], self.p)] };
        }
        let prod = polymod::mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p);
        self.pad(prod)
    }

    pub fn scale(&self, c: u64, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| mul_mod(x, c % self.p, self.p)).collect();
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(q-2); `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Matrix over F_p (rows indexed by output coordinate) of the
    /// F_p-linear map x ↦ c·x in the power basis.
    pub fn multiplication_matrix(&self, c: &FieldElement) -> Vec<Vec<u64>> {
        let cols: Vec<FieldElement> = (0..self.n).map(|j| self.mul(c, &self.basis(j))).collect();
        (0..self.n)
            .map(|i| cols.iter().map(|col| col.coeffs[i]).collect())
            .collect()
    }

    /// Applies an n×n matrix over F_p to the coefficient vector of `x`.
    pub fn apply_linear(&self, m: &[Vec<u64>], x: &FieldElement) -> FieldElement {
        let coeffs = m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x.coeffs)
                    .fold(0, |acc, (&a, &b)| (acc + mul_mod(a, b, self.p)) % self.p)
            })
            .collect();
        FieldElement { coeffs }
    }

    fn pad(&self, mut v: Vec<u64>) -> FieldElement {
        v.resize(self.n, 0);
        FieldElement { coeffs: v }
    }
}

fn digits(mut code: u64, p: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}
