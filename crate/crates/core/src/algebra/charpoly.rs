//! Exact characteristic polynomials of integer matrices.
//!
//! The polynomial det(xI - M) is computed modulo enough 62-bit primes to
//! exceed twice a Hadamard-type coefficient bound, then lifted by Chinese
//! remaindering. Each modular image comes from a Hessenberg reduction, so no
//! rational arithmetic is ever performed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modular::{large_primes, Montgomery};
use super::poly::{crt_accumulate, symmetric, IntegerPolynomial};
use crate::caps::{self, Caps};
use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// det(xI - M), monic of degree dim(M).
pub fn integer_charpoly(m: &[Vec<BigInt>]) -> Result<IntegerPolynomial> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    caps::check("matrix dimension", n as u128, Caps::current().matrix_dim as u128)?;
    if n == 0 {
        return Ok(IntegerPolynomial::one());
    }

    let needed_bits = coefficient_bound_bits(m) + 2;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for p in large_primes() {
        if modulus.bits() > needed_bits {
            break;
        }
        let image = charpoly_mod(m, p);
        crt_accumulate(&mut acc, &mut modulus, &image, p);
    }
    let coeffs = acc.iter().map(|c| symmetric(c, &modulus)).collect();
    Ok(IntegerPolynomial::new(coeffs))
}

/// log2 of Π (1 + ‖row_i‖₂), which bounds every coefficient: the k-th
/// coefficient is a signed sum of k×k principal minors, each bounded by the
/// product of its row norms.
fn coefficient_bound_bits(m: &[Vec<BigInt>]) -> u64 {
    let mut bits = 0f64;
    for row in m {
        let sq: BigInt = row.iter().map(|x| x * x).sum();
        let norm = bigint_log2(&sq) / 2.0;
        bits += if norm > 60.0 { norm + 1e-9 } else { (1.0 + norm.exp2()).log2() };
    }
    // slack for rounding in the sum
    (bits * (1.0 + 1e-12)).ceil() as u64 + 1
}

fn bigint_log2(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let b = x.bits();
    if b < 1000 {
        x.to_f64().unwrap().log2()
    } else {
        let shifted: BigInt = x >> (b - 64);
        shifted.to_f64().unwrap().log2() + (b - 64) as f64
    }
}

/// Characteristic polynomial modulo an odd prime `p`, ascending residues.
pub fn charpoly_mod(m: &[Vec<BigInt>], p: u64) -> Vec<u64> {
    let mont = Montgomery::new(p);
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| mont.to_mont(x.mod_floor(&pb).to_u64().unwrap()))
                .collect()
        })
        .collect();
    hessenberg(&mut a, &mont);
    hessenberg_charpoly(&a, &mont)
        .into_iter()
        .map(|c| mont.from_mont(c))
        .collect()
}

/// Characteristic polynomial of a matrix of residues modulo an odd prime.
pub fn charpoly_residues(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mont = Montgomery::new(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| mont.to_mont(x % p)).collect())
        .collect();
    hessenberg(&mut a, &mont);
    hessenberg_charpoly(&a, &mont)
        .into_iter()
        .map(|c| mont.from_mont(c))
        .collect()
}

/// In-place reduction to upper Hessenberg form by similarity transforms.
fn hessenberg(a: &mut [Vec<u64>], mont: &Montgomery) {
    let n = a.len();
    if n < 3 {
        return;
    }
    for j in 0..n - 2 {
        let Some(piv) = (j + 1..n).find(|&i| a[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            a.swap(piv, j + 1);
            for row in a.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = mont.inv(a[j + 1][j]);
        for k in j + 2..n {
            if a[k][j] == 0 {
                continue;
            }
            let u = mont.mul(a[k][j], inv);
            // row_k -= u * row_{j+1}
            let (upper, lower) = a.split_at_mut(k);
            let src = &upper[j + 1];
            let dst = &mut lower[0];
            for c in j..n {
                if src[c] != 0 {
                    dst[c] = mont.sub(dst[c], mont.mul(u, src[c]));
                }
            }
            // col_{j+1} += u * col_k
            for row in a.iter_mut() {
                if row[k] != 0 {
                    row[j + 1] = mont.add(row[j + 1], mont.mul(u, row[k]));
                }
            }
        }
    }
}

/// Characteristic polynomial of an upper Hessenberg matrix (Montgomery form
/// in and out).
fn hessenberg_charpoly(h: &[Vec<u64>], mont: &Montgomery) -> Vec<u64> {
    let n = h.len();
    let one = mont.to_mont(1);
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![one]);
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        // (x - h[m-1][m-1]) * prev
        let d = h[m - 1][m - 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = mont.add(next[i + 1], c);
            next[i] = mont.sub(next[i], mont.mul(d, c));
        }
        let mut t = one;
        for i in 1..m {
            t = mont.mul(t, h[m - i][m - i - 1]);
            if t == 0 {
                break;
            }
            let coef = mont.mul(t, h[m - i - 1][m - 1]);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                next[k] = mont.sub(next[k], mont.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Faddeev-LeVerrier over the rationals: an independent route to the
    /// characteristic polynomial for small matrices.
    fn faddeev_leverrier(m: &[Vec<i64>]) -> IntegerPolynomial {
        let n = m.len();
        let a: Vec<Vec<BigRational>> = m
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let ident = |i: usize, j: usize| {
            if i == j { BigRational::one() } else { BigRational::zero() }
        };
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut mk = vec![vec![BigRational::zero(); n]; n];
        let mut c_prev = BigRational::one();
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigRational::zero();
                    for l in 0..n {
                        s += &a[i][l] * &mk[l][j];
                    }
                    next[i][j] = s + ident(i, j) * &c_prev;
                }
            }
            mk = next;
            let mut tr = BigRational::zero();
            for i in 0..n {
                for l in 0..n {
                    tr += &a[i][l] * &mk[l][i];
                }
            }
            let c = -tr / BigRational::from_integer(BigInt::from(k));
            coeffs[n - k] = c.clone();
            c_prev = c;
        }
        IntegerPolynomial::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
    }

    #[test]
    fn small_examples() {
        let zero = int_matrix(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(integer_charpoly(&zero).unwrap(), IntegerPolynomial::from_i64(&[0, 0, 1]));
        let swap = int_matrix(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(integer_charpoly(&swap).unwrap(), IntegerPolynomial::from_i64(&[-1, 0, 1]));
        let c3 = int_matrix(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(integer_charpoly(&c3).unwrap(), IntegerPolynomial::from_i64(&[-2, -3, 0, 1]));
    }

    #[test]
    fn rejects_non_square() {
        let m = int_matrix(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert!(matches!(integer_charpoly(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn permutation_matrix_is_product_of_cycle_factors() {
        // cycles (0 1 2)(3 4)(5)
        let perm = [1usize, 2, 0, 4, 3, 5];
        let n = perm.len();
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(perm[i] == j)).collect())
            .collect();
        let expected = [3u32, 2, 1].iter().fold(IntegerPolynomial::one(), |acc, &c| {
            let mut v = vec![0i64; c as usize + 1];
            v[0] = -1;
            v[c as usize] = 1;
            acc.mul(&IntegerPolynomial::from_i64(&v))
        });
        let cp = integer_charpoly(&int_matrix(&m)).unwrap();
        assert_eq!(cp, expected);
        assert!(cp.eval(&BigInt::one()).is_zero());
        assert!(cp.eval(&BigInt::from(-1)).is_zero());
    }

    proptest! {
        #[test]
        fn agrees_with_faddeev_leverrier(entries in proptest::collection::vec(-50i64..50, 25)) {
            let n = 5;
            let m: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
            prop_assert_eq!(integer_charpoly(&int_matrix(&m)).unwrap(), faddeev_leverrier(&m));
        }
    }

    #[test]
    fn large_entries_lift_correctly() {
        let big = 1_000_000_007i64;
        let m = vec![vec![big, 3, -big], vec![2, -big, 5], vec![big, big, 1]];
        assert_eq!(integer_charpoly(&int_matrix(&m)).unwrap(), faddeev_leverrier(&m));
    }
}
