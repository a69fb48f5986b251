//! Free subgroups of the level-2 congruence group Γ(2) ⊂ SL(2, Z), used as
//! the fundamental group of the base surface.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::words::FreeWord;
use crate::error::{Error, Result};

pub type Mat2 = [[i128; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];
/// a ↦ [[1,2],[0,1]]
pub const GAMMA2_A: Mat2 = [[1, 2], [0, 1]];
/// b ↦ [[1,0],[2,1]]
pub const GAMMA2_B: Mat2 = [[1, 0], [2, 1]];

fn overflow() -> Error {
    Error::CapExceeded { what: "word matrix entry".into(), value: u128::MAX, cap: i128::MAX as u128 }
}

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Result<Mat2> {
    let mut out = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let a = x[i][0].checked_mul(y[0][j]).ok_or_else(overflow)?;
            let b = x[i][1].checked_mul(y[1][j]).ok_or_else(overflow)?;
            out[i][j] = a.checked_add(b).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

/// Inverse of a determinant-one matrix.
pub fn mat_inv(x: &Mat2) -> Mat2 {
    [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]
}

/// A free group of rank r embedded in Γ(2) by explicit matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBase {
    pub generators: Vec<Mat2>,
}

impl FreeBase {
    /// Γ(2) itself, free on a = [[1,2],[0,1]] and b = [[1,0],[2,1]].
    pub fn level_two() -> Self {
        FreeBase { generators: vec![GAMMA2_A, GAMMA2_B] }
    }

    /// A free subgroup of rank r ≥ 2: for r = 2 this is Γ(2); otherwise the
    /// kernel of Γ(2) → Z/(r−1) sending a ↦ 1, b ↦ 0, with Schreier basis
    /// a^(r−1), b, a b a⁻¹, …, a^(r−2) b a^(−(r−2)). It has index r − 1 in
    /// Γ(2).
    pub fn of_rank(r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument("base rank must be at least 2".into()));
        }
        if r == 2 {
            return Ok(Self::level_two());
        }
        let m = r - 1;
        let mut a_pow = vec![IDENTITY];
        for i in 1..=m {
            a_pow.push(mat_mul(&a_pow[i - 1], &GAMMA2_A)?);
        }
        let mut gens = vec![a_pow[m]];
        for i in 0..m {
            let conj = mat_mul(&mat_mul(&a_pow[i], &GAMMA2_B)?, &mat_inv(&a_pow[i]))?;
            gens.push(conj);
        }
        Ok(FreeBase { generators: gens })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn word_matrix(&self, w: &FreeWord) -> Result<Mat2> {
        let mut m = IDENTITY;
        for &x in &w.letters {
            let g = self
                .generators
                .get(x as usize / 2)
                .ok_or_else(|| Error::InvalidArgument(format!("letter {x} beyond rank")))?;
            let g = if x & 1 == 0 { *g } else { mat_inv(g) };
            m = mat_mul(&m, &g)?;
        }
        Ok(m)
    }

    pub fn trace(&self, w: &FreeWord) -> Result<i128> {
        let m = self.word_matrix(w)?;
        Ok(m[0][0] + m[1][1])
    }
}

/// Matrix and trace of a word in a, b under a ↦ [[1,2],[0,1]],
/// b ↦ [[1,0],[2,1]].
pub fn word_matrix(w: &FreeWord) -> Result<(Mat2, i128)> {
    let m = FreeBase::level_two().word_matrix(w)?;
    Ok((m, m[0][0] + m[1][1]))
}

/// tr(M^m) from t = tr(M) for det M = 1: t_m = t·t_{m−1} − t_{m−2}.
pub fn power_trace(t: &BigInt, m: u64) -> BigInt {
    let mut prev = BigInt::from(2);
    let mut cur = t.clone();
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = t * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn abs_power_trace(t: &BigInt, m: u64) -> BigInt {
    power_trace(t, m).abs()
}

pub fn is_hyperbolic(trace: i128) -> bool {
    trace.abs() > 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hand_examples() {
        assert_eq!(word_matrix(&FreeWord::empty()).unwrap(), (IDENTITY, 2));
        let (m, t) = word_matrix(&FreeWord::parse("ab").unwrap()).unwrap();
        assert_eq!(m, [[5, 2], [2, 1]]);
        assert_eq!(t, 6);
        assert_eq!(word_matrix(&FreeWord::parse("a").unwrap()).unwrap().1, 2);
        assert_eq!(power_trace(&BigInt::from(6), 2), BigInt::from(34));
    }

    #[test]
    fn higher_rank_generators_lie_in_gamma2() {
        for r in 2..6 {
            let base = FreeBase::of_rank(r).unwrap();
            assert_eq!(base.rank(), r);
            for g in &base.generators {
                assert_eq!(g[0][0] * g[1][1] - g[0][1] * g[1][0], 1);
                assert_eq!(g[0][1].rem_euclid(2), 0);
                assert_eq!(g[1][0].rem_euclid(2), 0);
                assert_eq!((g[0][0] - 1).rem_euclid(2), 0);
            }
        }
    }

    proptest! {
        #[test]
        fn power_trace_matches_powering(letters in proptest::collection::vec(0u8..4, 1..8), m in 1u64..=10) {
            let w = FreeWord::new(&letters);
            let (mat, t) = word_matrix(&w).unwrap();
            let mut p = IDENTITY;
            for _ in 0..m {
                p = mat_mul(&p, &mat).unwrap();
            }
            prop_assert_eq!(power_trace(&BigInt::from(t), m), BigInt::from(p[0][0] + p[1][1]));
        }
    }
}
