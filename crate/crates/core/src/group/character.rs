//! Irreducible characters modulo a prime, by simultaneous diagonalization of
//! the class-sum multiplication maps (Burnside, Dixon).
//!
//! Working modulo a prime r ≡ 1 (mod exp G) with r > 2|G| keeps everything
//! exact: the character values live in F_r, and the integers we need
//! (degrees, fixed-space dimensions) are smaller than r, so they lift
//! uniquely.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classes::{conjugacy_classes, exponent};
use super::concrete::ConcreteGroup;
use super::subgroup::Subgroup;
use crate::algebra::charpoly::charpoly_residues;
use crate::algebra::linalg::{nullspace, rref};
use crate::algebra::modular::{inv_mod, is_prime, mul_mod, pow_mod, primitive_root};
use crate::algebra::polymod;
use crate::caps::{self, Caps};
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0xd1c0_5eed;
const RANDOM_ROUNDS: usize = 8;
const PRIME_SEARCH_STEPS: u64 = 10_000_000;

/// Character table over F_r. Rows are irreducible characters, columns are
/// conjugacy classes in partition order. Row 0 is the trivial character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub prime: u64,
    pub exponent: u64,
    /// An element of order `exponent` in F_r.
    pub root_of_unity: u64,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<u64>>,
    pub class_sizes: Vec<usize>,
    pub group_order: usize,
}

pub fn character_table(g: &ConcreteGroup) -> Result<&CharacterTable> {
    g.0.characters
        .get_or_init(|| compute(g))
        .as_ref()
        .map_err(|e| e.clone())
}

/// Least prime r ≡ 1 (mod e) with r > bound.
pub fn table_prime(e: u64, bound: u64) -> Result<u64> {
    let mut m = bound / e + 1;
    for _ in 0..PRIME_SEARCH_STEPS {
        let r = 1 + m * e;
        if r > bound && r > 2 && is_prime(r) {
            return Ok(r);
        }
        m += 1;
    }
    Err(Error::PrimeSearchExhausted(1 + m * e))
}

fn compute(g: &ConcreteGroup) -> Result<CharacterTable> {
    let n = g.order();
    caps::check("character table group order", n as u128, Caps::current().character_table as u128)?;
    let cl = conjugacy_classes(g);
    let k = cl.len();
    let e = exponent(g);
    let r = table_prime(e, 2 * n as u64)?;
    let sizes = &cl.class_sizes;
    let class_of: &[u32] = &cl.class_of;
    let reps = &cl.class_reps;

    // A = Σ_j c_j M_j with (M_j)[l][m] = #{x ∈ C_j : x⁻¹ z_m ∈ C_l}
    let combo = |coef: &[u64]| -> Vec<Vec<u64>> {
        let cols: Vec<Vec<u64>> = (0..k)
            .into_par_iter()
            .map(|m| {
                let mut col = vec![0u64; k];
                let z = reps[m];
                for x in 0..n {
                    let c = coef[class_of[x] as usize];
                    if c != 0 {
                        let l = class_of[g.mul(g.inv(x), z)] as usize;
                        col[l] = (col[l] + c) % r;
                    }
                }
                col
            })
            .collect();
        (0..k).map(|l| (0..k).map(|m| cols[m][l]).collect()).collect()
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut round = 0;
    while spaces.iter().any(|s| s.len() > 1) {
        let coef: Vec<u64> = if round < RANDOM_ROUNDS {
            (0..k).map(|_| rng.gen_range(0..r)).collect()
        } else if round - RANDOM_ROUNDS < k {
            (0..k).map(|j| u64::from(j == round - RANDOM_ROUNDS)).collect()
        } else {
            return Err(Error::Internal("class-sum maps failed to split".into()));
        };
        round += 1;
        let a = combo(&coef);
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(&a, space, r)?);
            }
        }
        spaces = next;
    }

    let inv_size: Vec<u64> = sizes.iter().map(|&h| inv_mod(h as u64 % r, r).unwrap()).collect();
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        let s = inv_mod(v[0], r)
            .ok_or_else(|| Error::Internal("central character vanishes at 1".into()))?;
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, s, r)).collect();
        // Σ ω_i ω_{i*} / h_i = |G| / d²
        let mut sum = 0;
        for i in 0..k {
            let t = mul_mod(mul_mod(omega[i], omega[cl.inverse_class[i]], r), inv_size[i], r);
            sum = (sum + t) % r;
        }
        let d2 = mul_mod(n as u64 % r, inv_mod(sum, r).unwrap_or(0), r);
        let d = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d == d2)
            .ok_or_else(|| Error::Internal(format!("no integer degree for d² = {d2}")))?;
        let values = (0..k).map(|i| mul_mod(mul_mod(d, omega[i], r), inv_size[i], r)).collect();
        rows.push((d, values));
    }
    rows.sort();
    let table = CharacterTable {
        prime: r,
        exponent: e,
        root_of_unity: pow_mod(primitive_root(r), (r - 1) / e, r),
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        values: rows.into_iter().map(|(_, v)| v).collect(),
        class_sizes: sizes.clone(),
        group_order: n,
    };
    table.verify(&cl.inverse_class)?;
    Ok(table)
}

/// Splits an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `a` acting on column vectors.
fn split(a: &[Vec<u64>], basis: Vec<Vec<u64>>, r: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let k = a.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).unwrap())
        .collect();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|l| a[l].iter().zip(b).fold(0, |acc, (&x, &y)| (acc + mul_mod(x, y, r)) % r))
                .collect()
        })
        .collect();
    // restricted[t][i] = coordinate t of A b_i
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|t| (0..d).map(|i| images[i][pivots[t]]).collect())
        .collect();
    let eig = polymod::roots(&charpoly_residues(&restricted, r), r);
    if eig.len() == 1 {
        return Ok(vec![basis]);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in eig {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|t| {
                (0..d)
                    .map(|i| {
                        let x = restricted[t][i];
                        if t == i { (x + r - lambda) % r } else { x }
                    })
                    .collect()
            })
            .collect();
        let mut vecs: Vec<Vec<u64>> = nullspace(&shifted, d, r)
            .into_iter()
            .map(|u| {
                (0..k)
                    .map(|c| {
                        u.iter()
                            .zip(&basis)
                            .fold(0, |acc, (&ut, b)| (acc + mul_mod(ut, b[c], r)) % r)
                    })
                    .collect()
            })
            .collect();
        rref(&mut vecs, r);
        total += vecs.len();
        out.push(vecs);
    }
    if total != d {
        return Err(Error::Internal("class-sum map is not diagonalizable".into()));
    }
    Ok(out)
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    fn verify(&self, inverse_class: &[usize]) -> Result<()> {
        let r = self.prime;
        let n = self.group_order as u64;
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != n {
            return Err(Error::Internal("Σ d² ≠ |G|".into()));
        }
        for (i, a) in self.values.iter().enumerate() {
            for (j, b) in self.values.iter().enumerate() {
                let mut s = 0;
                for c in 0..a.len() {
                    let t = mul_mod(a[c], b[inverse_class[c]], r);
                    s = (s + mul_mod(t, self.class_sizes[c] as u64, r)) % r;
                }
                if s != if i == j { n % r } else { 0 } {
                    return Err(Error::Internal(format!("rows {i} and {j} not orthogonal")));
                }
            }
        }
        Ok(())
    }

    /// ⟨Res_H χ, 1_H⟩ for row `chi`, given the number of H-elements in
    /// each class.
    pub fn fixed_dim_from_counts(&self, chi: usize, counts: &[usize]) -> Result<u64> {
        let r = self.prime;
        let h: usize = counts.iter().sum();
        let mut s = 0;
        for (c, &m) in counts.iter().enumerate() {
            s = (s + mul_mod(m as u64 % r, self.values[chi][c], r)) % r;
        }
        let v = mul_mod(s, inv_mod(h as u64 % r, r).unwrap(), r);
        if v > self.degrees[chi] {
            return Err(Error::Internal(format!(
                "fixed-space sum {v} does not lift to a dimension ≤ {}",
                self.degrees[chi]
            )));
        }
        Ok(v)
    }
}

/// dim Fix(ρ_χ(H)) = (1/|H|) Σ_{h∈H} χ(h) for row `chi` of G's table.
pub fn fixed_space_dim(g: &ConcreteGroup, chi: usize, h: &Subgroup) -> Result<u64> {
    h.check_parent(g)?;
    let t = character_table(g)?;
    if chi >= t.len() {
        return Err(Error::InvalidArgument(format!("no character row {chi}")));
    }
    t.fixed_dim_from_counts(chi, &h.class_counts())
}
