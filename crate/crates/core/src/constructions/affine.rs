//! Affine groups F_p^n ⋊ SL(n; F_p) and their translation subgroups.

use crate::algebra::linalg::rank;
use crate::error::{Error, Result};
use crate::group::{AffineCarrier, ConcreteGroup, GroupCarrier, Subgroup};

#[derive(Debug, Clone)]
pub struct AffineGroup {
    pub group: ConcreteGroup,
    pub p: u64,
    pub n: usize,
    carrier: AffineCarrier,
}

/// F_p^n ⋊ SL(n; F_p), generated by the translation e₁ and the elementary
/// transvections I + E_ij.
pub fn affine_group(p: u64, n: usize) -> Result<AffineGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let carrier = AffineCarrier::new(p, n)?;
    let id = carrier.identity();
    let mut e1 = vec![0u32; n];
    e1[0] = 1;
    let mut gens = vec![carrier.pack(&e1, &id[n..])];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = id[n..].to_vec();
                m[i * n + j] = 1;
                gens.push(carrier.pack(&vec![0; n], &m));
            }
        }
    }
    let label = format!("affine(p={p}, n={n})");
    let group = ConcreteGroup::generate(&carrier, &gens, usize::MAX, &label)?;
    Ok(AffineGroup { group, p, n, carrier })
}

impl AffineGroup {
    fn check_vector(&self, v: &[u64]) -> Result<Vec<u32>> {
        if v.len() != self.n || v.iter().any(|&x| x >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "vector {v:?} is not in F_{}^{}",
                self.p, self.n
            )));
        }
        Ok(v.iter().map(|&x| x as u32).collect())
    }

    /// Index of (v, I).
    pub fn translation(&self, v: &[u64]) -> Result<usize> {
        let v = self.check_vector(v)?;
        let id = self.carrier.identity();
        Ok(self.group.find(&self.carrier, &self.carrier.pack(&v, &id[self.n..])).unwrap())
    }

    /// Index of (v, M), if M ∈ SL(n; F_p).
    pub fn element(&self, v: &[u64], m: &[Vec<u64>]) -> Result<usize> {
        let v = self.check_vector(v)?;
        let flat: Vec<u32> = m.iter().flatten().map(|&x| (x % self.p) as u32).collect();
        if flat.len() != self.n * self.n {
            return Err(Error::NotSquare { rows: m.len(), cols: m.first().map_or(0, |r| r.len()) });
        }
        self.group
            .find(&self.carrier, &self.carrier.pack(&v, &flat))
            .ok_or(Error::NotInGroup)
    }

    /// (v, M) of element `i`.
    pub fn parts(&self, i: usize) -> (Vec<u64>, Vec<Vec<u64>>) {
        let vals: Vec<u64> = self
            .group
            .encoding(i)
            .chunks(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]) as u64)
            .collect();
        let (v, m) = vals.split_at(self.n);
        (v.to_vec(), m.chunks(self.n).map(|r| r.to_vec()).collect())
    }

    /// The element as the (n+1)×(n+1) matrix [[M, v], [0, 1]].
    pub fn projective_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let (v, m) = self.parts(i);
        let mut rows: Vec<Vec<u64>> = m
            .into_iter()
            .zip(v)
            .map(|(mut r, x)| {
                r.push(x);
                r
            })
            .collect();
        let mut last = vec![0; self.n];
        last.push(1);
        rows.push(last);
        rows
    }

    pub fn translation_subgroup(&self) -> Subgroup {
        let basis: Vec<Vec<u64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| u64::from(i == j)).collect())
            .collect();
        subspace_subgroup(self, &basis).unwrap()
    }

    pub fn carrier(&self) -> &AffineCarrier {
        &self.carrier
    }
}

/// {(v, I) : v ∈ span(basis)}
pub fn subspace_subgroup(g: &AffineGroup, basis: &[Vec<u64>]) -> Result<Subgroup> {
    let seeds = basis
        .iter()
        .map(|v| g.translation(v))
        .collect::<Result<Vec<_>>>()?;
    if rank(basis, g.p) != basis.len() {
        return Err(Error::DependentBasis);
    }
    Subgroup::generated(&g.group, &seeds)
}
