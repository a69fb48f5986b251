//! Schreier coset graphs and their adjacency spectra.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{integer_charpoly, int_matrix, poly_radical, IntegerPolynomial};
use crate::error::{Error, Result};
use crate::group::{coset_table, ConcreteGroup, Subgroup};

/// Adjacency matrix of the right-coset graph: A[c][c·s] += 1 for s ∈ S.
pub fn schreier_adjacency(g: &ConcreteGroup, h: &Subgroup, s: &[usize]) -> Result<Vec<Vec<i64>>> {
    check_generating_multiset(g, s)?;
    let table = coset_table(g, h)?;
    let n = table.index();
    let mut a = vec![vec![0i64; n]; n];
    for (c, row) in a.iter_mut().enumerate() {
        for &x in s {
            row[table.act(c, x)] += 1;
        }
    }
    Ok(a)
}

/// S must be closed under inverses as a multiset and generate G.
fn check_generating_multiset(g: &ConcreteGroup, s: &[usize]) -> Result<()> {
    if s.iter().any(|&x| x >= g.order()) {
        return Err(Error::NotInGroup);
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let mut inverses: Vec<usize> = s.iter().map(|&x| g.inv(x)).collect();
    inverses.sort_unstable();
    if sorted != inverses {
        return Err(Error::NotSymmetric);
    }
    if Subgroup::generated(g, s)?.order() != g.order() {
        return Err(Error::NotGenerating);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchreierMode {
    /// Characteristic polynomials equal.
    Multiset,
    /// Radicals of the characteristic polynomials equal.
    Set,
}

impl SchreierMode {
    pub fn name(self) -> &'static str {
        match self {
            SchreierMode::Multiset => "multiset",
            SchreierMode::Set => "set",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [SchreierMode::Multiset, SchreierMode::Set].into_iter().find(|m| m.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchreierComparison {
    pub mode: SchreierMode,
    pub equal: bool,
    /// Number of cosets of H and of K.
    pub dims: [usize; 2],
    /// Degrees of the compared polynomials.
    pub poly_degrees: [usize; 2],
    /// SHA-256 of the decimal coefficient lists.
    pub poly_digests: [String; 2],
}

fn poly_digest(p: &IntegerPolynomial) -> String {
    let mut h = Sha256::new();
    for c in p.coeffs() {
        h.update(c.to_string().as_bytes());
        h.update(b",");
    }
    hex::encode(h.finalize())
}

pub fn schreier_charpoly(g: &ConcreteGroup, h: &Subgroup, s: &[usize]) -> Result<IntegerPolynomial> {
    integer_charpoly(&int_matrix(&schreier_adjacency(g, h, s)?))
}

pub fn schreier_spectrum_compare(
    g: &ConcreteGroup,
    h: &Subgroup,
    k: &Subgroup,
    s: &[usize],
    mode: SchreierMode,
) -> Result<SchreierComparison> {
    let ph = schreier_charpoly(g, h, s)?;
    let pk = if h == k { ph.clone() } else { schreier_charpoly(g, k, s)? };
    let dims = [ph.degree().unwrap_or(0), pk.degree().unwrap_or(0)];
    let (a, b) = match mode {
        SchreierMode::Multiset => (ph, pk),
        SchreierMode::Set => (poly_radical(&ph)?, poly_radical(&pk)?),
    };
    Ok(SchreierComparison {
        mode,
        equal: a == b,
        dims,
        poly_degrees: [a.degree().unwrap_or(0), b.degree().unwrap_or(0)],
        poly_digests: [poly_digest(&a), poly_digest(&b)],
    })
}
