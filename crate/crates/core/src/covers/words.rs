//! Free-group words and conjugacy classes (cyclic words).
//!
//! Letters are coded as 2i for generator i and 2i + 1 for its inverse, so
//! for rank 2 the letter order is a < a⁻¹ < b < b⁻¹.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::{self, Caps};
use crate::error::{Error, Result};

#[inline]
pub fn inverse_letter(x: u8) -> u8 {
    x ^ 1
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    pub letters: Vec<u8>,
}

impl FreeWord {
    /// Freely reduces `letters`.
    pub fn new(letters: &[u8]) -> Self {
        let mut out: Vec<u8> = Vec::with_capacity(letters.len());
        for &x in letters {
            if out.last() == Some(&inverse_letter(x)) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        FreeWord { letters: out }
    }

    pub fn empty() -> Self {
        FreeWord { letters: Vec::new() }
    }

    /// Parses `a`, `b`, `c`, … with upper case for inverses, e.g. `"aB"`.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Ok((c as u8 - b'a') * 2)
                } else if c.is_ascii_uppercase() {
                    Ok((c as u8 - b'A') * 2 + 1)
                } else {
                    Err(Error::InvalidArgument(format!("bad letter {c:?}")))
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(FreeWord::new(&letters))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|&x| inverse_letter(x)).collect() }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut l = self.letters.clone();
        l.extend_from_slice(&other.letters);
        FreeWord::new(&l)
    }

    pub fn pow(&self, k: usize) -> Self {
        let l: Vec<u8> = std::iter::repeat(&self.letters).take(k).flatten().copied().collect();
        FreeWord::new(&l)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.len() == 1 || f != inverse_letter(l),
            _ => true,
        }
    }

    /// Largest generator index used, plus one.
    pub fn rank_used(&self) -> usize {
        self.letters.iter().map(|&x| x as usize / 2 + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &x in &self.letters {
            let base = if x & 1 == 0 { b'a' } else { b'A' };
            write!(f, "{}", (base + x / 2) as char)?;
        }
        Ok(())
    }
}

/// A conjugacy class of the free group, represented by the
/// lexicographically least rotation of a cyclically reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicClass {
    pub canonical: FreeWord,
    pub length: usize,
    /// Not a proper power.
    pub primitive: bool,
}

fn is_least_rotation(w: &[u8]) -> bool {
    let n = w.len();
    (1..n).all(|s| {
        for i in 0..n {
            let (a, b) = (w[(i + s) % n], w[i]);
            if a != b {
                return a > b;
            }
        }
        true
    })
}

/// Least period d | n with w invariant under rotation by d.
fn period(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (0..n).all(|i| w[i] == w[(i + d) % n]))
        .unwrap()
}

impl CyclicClass {
    /// Class of an arbitrary cyclically reduced word.
    pub fn of(w: &FreeWord) -> Result<Self> {
        if w.is_empty() || !w.is_cyclically_reduced() {
            return Err(Error::InvalidArgument(format!("{w} is not cyclically reduced")));
        }
        let n = w.len();
        let best = (0..n)
            .map(|s| {
                let mut r = w.letters[s..].to_vec();
                r.extend_from_slice(&w.letters[..s]);
                r
            })
            .min()
            .unwrap();
        let primitive = period(&best) == n;
        Ok(CyclicClass { canonical: FreeWord { letters: best }, length: n, primitive })
    }
}

/// Classes of cyclically reduced words of length exactly `len` in a free
/// group of rank `rank`, in lexicographic order of canonical words.
pub fn classes_of_length(rank: usize, len: usize) -> Vec<CyclicClass> {
    let mut out = Vec::new();
    if len == 0 || rank == 0 {
        return out;
    }
    let letters = (2 * rank) as u8;
    let mut w = Vec::with_capacity(len);
    // the least rotation starts with its least letter
    for first in 0..letters {
        w.clear();
        w.push(first);
        extend(&mut w, first, letters, len, &mut out);
    }
    out
}

fn extend(w: &mut Vec<u8>, first: u8, letters: u8, len: usize, out: &mut Vec<CyclicClass>) {
    if w.len() == len {
        if (len == 1 || w[0] != inverse_letter(w[len - 1])) && is_least_rotation(w) {
            let primitive = period(w) == len;
            out.push(CyclicClass { canonical: FreeWord { letters: w.clone() }, length: len, primitive });
        }
        return;
    }
    let last = *w.last().unwrap();
    for x in first..letters {
        if x == inverse_letter(last) {
            continue;
        }
        w.push(x);
        extend(w, first, letters, len, out);
        w.pop();
    }
}

/// All classes of length 1..=L in the free group on a, b.
pub fn cyclic_classes(l: usize, primitive_only: bool) -> Result<Vec<CyclicClass>> {
    cyclic_classes_of_rank(2, l, primitive_only)
}

pub fn cyclic_classes_of_rank(rank: usize, l: usize, primitive_only: bool) -> Result<Vec<CyclicClass>> {
    caps::check("word length", l as u128, Caps::current().word_length as u128)?;
    let mut out = Vec::new();
    for len in 1..=l {
        out.extend(
            classes_of_length(rank, len)
                .into_iter()
                .filter(|c| c.primitive || !primitive_only),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Necklace count by brute force: canonicalize every cyclically reduced
    /// word of the given length.
    fn brute(rank: usize, len: usize) -> HashSet<CyclicClass> {
        let k = 2 * rank;
        let mut set = HashSet::new();
        for code in 0..k.pow(len as u32) {
            let mut c = code;
            let letters: Vec<u8> = (0..len)
                .map(|_| {
                    let d = (c % k) as u8;
                    c /= k;
                    d
                })
                .collect();
            let w = FreeWord { letters: letters.clone() };
            if FreeWord::new(&letters).len() == len && w.is_cyclically_reduced() {
                set.insert(CyclicClass::of(&w).unwrap());
            }
        }
        set
    }

    #[test]
    fn small_lengths() {
        let one = cyclic_classes(1, false).unwrap();
        assert_eq!(one.len(), 4);
        assert!(one.iter().all(|c| c.primitive));
        let two = classes_of_length(2, 2);
        assert_eq!(two.len(), 8);
        let names: Vec<String> = two.iter().map(|c| c.canonical.to_string()).collect();
        for n in ["aa", "AA", "bb", "BB", "ab", "aB", "Ab", "AB"] {
            assert!(names.contains(&n.to_string()), "{n}");
        }
        let prim = cyclic_classes(2, true).unwrap();
        assert_eq!(prim.len(), 8);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (rank, len) in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)] {
            let fast: HashSet<CyclicClass> = classes_of_length(rank, len).into_iter().collect();
            assert_eq!(fast, brute(rank, len), "rank {rank} len {len}");
        }
    }

    #[test]
    fn parse_and_reduce() {
        let w = FreeWord::parse("abBA").unwrap();
        assert!(w.is_empty());
        let w = FreeWord::parse("abA").unwrap();
        assert!(!w.is_cyclically_reduced());
        assert_eq!(FreeWord::parse("ab").unwrap().inverse().to_string(), "BA");
        assert!(!CyclicClass::of(&FreeWord::parse("abab").unwrap()).unwrap().primitive);
    }
}
