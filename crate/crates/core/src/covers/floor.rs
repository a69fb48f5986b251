//! Hyperbolic conjugacy classes of the base group counted by trace, through
//! PSL(2, Z) rather than through words.
//!
//! Every hyperbolic class of PSL(2, Z) contains exactly one cyclic word in
//! R = [[1,1],[0,1]], L = [[1,0],[1,1]] with both letters present, and its
//! trace is that word's trace. Appending R or L to a nonnegative matrix never
//! lowers the trace, so all such words below a bound are found by a pruned
//! search. A PSL(2, Z) class C with primitive root γ₀ (γ = γ₀^k) meets the
//! base group Γ' in as many Γ'-classes as ⟨γ₀⟩ has orbits on the cosets
//! Γ'h fixed by γ.

use std::collections::BTreeMap;

use super::base::{mat_inv, mat_mul, Mat2};
use crate::error::{Error, Result};

const R: Mat2 = [[1, 1], [0, 1]];
const L: Mat2 = [[1, 0], [1, 1]];

type Mod2 = [[u8; 2]; 2];

fn reduce2(m: &Mat2) -> Mod2 {
    [
        [m[0][0].rem_euclid(2) as u8, m[0][1].rem_euclid(2) as u8],
        [m[1][0].rem_euclid(2) as u8, m[1][1].rem_euclid(2) as u8],
    ]
}

/// Exponent sum of a in the word for ±M ∈ ⟨a, b⟩ (a = [[1,2],[0,1]],
/// b = [[1,0],[2,1]]), by ping-pong reduction of the first column.
fn a_exponent_sum(m: &Mat2) -> Result<i128> {
    if reduce2(m) != [[1, 0], [0, 1]] {
        return Err(Error::Internal("matrix is not in the level-2 subgroup".into()));
    }
    let mut m = *m;
    let mut sum = 0i128;
    loop {
        let (p, r) = (m[0][0], m[1][0]);
        if r == 0 {
            // ±[[1, 2j], [0, 1]] = a^{±j}
            return Ok(sum + m[0][1] / (2 * p));
        }
        if p.abs() > r.abs() {
            // M = a^e (a^{-e} M) with e chosen to shrink |p|
            let e = if (p > 0) == (r > 0) { 1 } else { -1 };
            m = mat_mul(&[[1, -2 * e], [0, 1]], &m)?;
            sum += e;
        } else {
            let e = if (p > 0) == (r > 0) { 1 } else { -1 };
            m = mat_mul(&[[1, 0], [-2 * e, 1]], &m)?;
        }
    }
}

/// Right cosets of the base Γ' = ker(⟨a, b⟩ → Z/m, a ↦ 1, b ↦ 0) in
/// PSL(2, Z), as pairs (reduction mod 2, residue), with the right action of
/// R and L.
struct CosetSpace {
    m: i128,
    lifts: Vec<(Mod2, Mat2)>,
}

impl CosetSpace {
    fn new(m: usize) -> Self {
        let mut lifts: Vec<(Mod2, Mat2)> = Vec::new();
        for a in -1..=1i128 {
            for b in -1..=1i128 {
                for c in -1..=1i128 {
                    for d in -1..=1i128 {
                        let x = [[a, b], [c, d]];
                        if a * d - b * c == 1 && !lifts.iter().any(|(s, _)| *s == reduce2(&x)) {
                            lifts.push((reduce2(&x), x));
                        }
                    }
                }
            }
        }
        debug_assert_eq!(lifts.len(), 6);
        CosetSpace { m: m as i128, lifts }
    }

    fn len(&self) -> usize {
        self.lifts.len() * self.m as usize
    }

    fn permutation(&self, g: &Mat2) -> Result<Vec<usize>> {
        let mut out = vec![0; self.len()];
        for (i, (_, t)) in self.lifts.iter().enumerate() {
            let tg = mat_mul(t, g)?;
            let tau = reduce2(&tg);
            let j = self.lifts.iter().position(|(s, _)| *s == tau).unwrap();
            let y = mat_mul(&tg, &mat_inv(&self.lifts[j].1))?;
            let shift = a_exponent_sum(&y)?.rem_euclid(self.m);
            for k in 0..self.m {
                out[i * self.m as usize + k as usize] = j * self.m as usize + ((k + shift) % self.m) as usize;
            }
        }
        Ok(out)
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&x| q[x]).collect()
}

fn is_least_rotation(w: &[u8]) -> bool {
    let n = w.len();
    (1..n).all(|s| (0..n).map(|i| w[(i + s) % n]).cmp(w.iter().copied()) != std::cmp::Ordering::Less)
}

fn period(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n).find(|&d| n % d == 0 && (0..n).all(|i| w[i] == w[(i + d) % n])).unwrap()
}

/// Number of hyperbolic conjugacy classes of the rank-r base with each
/// absolute trace t ≤ `max_trace` (γ and γ⁻¹ counted separately).
pub fn class_counts_by_trace(rank: usize, max_trace: i128) -> Result<BTreeMap<i128, u64>> {
    if rank < 2 {
        return Err(Error::InvalidArgument("base rank must be at least 2".into()));
    }
    let space = CosetSpace::new(rank - 1);
    let pr = space.permutation(&R)?;
    let pl = space.permutation(&L)?;
    let mut counts = BTreeMap::new();
    let mut word = vec![0u8];
    search(&mut word, &R, max_trace, &space, [&pr, &pl], &mut counts)?;
    Ok(counts)
}

fn search(
    word: &mut Vec<u8>,
    mat: &Mat2,
    max_trace: i128,
    space: &CosetSpace,
    gens: [&Vec<usize>; 2],
    counts: &mut BTreeMap<i128, u64>,
) -> Result<()> {
    let trace = mat[0][0] + mat[1][1];
    if trace > max_trace {
        return Ok(());
    }
    if word.contains(&1) && is_least_rotation(word) {
        let d = period(word);
        let mut root: Vec<usize> = (0..space.len()).collect();
        for &x in &word[..d] {
            root = compose(&root, gens[x as usize]);
        }
        let mut full: Vec<usize> = (0..space.len()).collect();
        for _ in 0..word.len() / d {
            full = compose(&full, &root);
        }
        // orbits of the root on the fixed points of the full power
        let mut seen = vec![false; space.len()];
        let mut orbits = 0u64;
        for x in 0..space.len() {
            if full[x] != x || seen[x] {
                continue;
            }
            orbits += 1;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                y = root[y];
            }
        }
        if orbits > 0 {
            *counts.entry(trace).or_insert(0) += orbits;
        }
    }
    // a word with both letters has trace at least its length plus one
    if word.len() as i128 + 2 > max_trace {
        return Ok(());
    }
    for (x, g) in [(0u8, &R), (1u8, &L)] {
        word.push(x);
        let next = mat_mul(mat, g)?;
        search(word, &next, max_trace, space, gens, counts)?;
        word.pop();
    }
    Ok(())
}
