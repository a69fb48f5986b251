//! Whole-family verifications: the twist lemma in N₃(F_q) and the
//! subspace pairs of affine groups.

use serde::{Deserialize, Serialize};

use crate::certify::{
    certify_almost_conjugate, certify_elementwise_conjugate, certify_fixed_point_equivalent, certify_primitive,
    Certificate,
};
use crate::constructions::{
    affine_group, all_twist_maps, heisenberg_group, subspace_subgroup, twist_representatives, twisted_horizontal,
    AffineGroup,
};
use crate::error::{Error, Result};
use crate::group::{coset_table, normalizer, ConcreteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistLemmaReport {
    pub p: u64,
    pub n: usize,
    pub group_order: usize,
    pub group_digest: String,
    /// Number of F_p-linear endomorphisms f, each giving {(x, 0, f(x))}.
    pub maps: usize,
    /// Ordered pairs (f, g) checked.
    pub pairs: u64,
    pub all_almost_conjugate: bool,
    /// For every pair: conjugate iff f − g is multiplication by a field element.
    pub conjugacy_matches_multiplication: bool,
    /// Conjugacy classes among all twisted horizontal subgroups.
    pub conjugacy_classes: usize,
    /// p^{n(n−1)}.
    pub expected_classes: u64,
    /// The complement representatives are pairwise nonconjugate and meet
    /// every class.
    pub representatives_separate_classes: bool,
    pub confirmed: bool,
}

/// Conjugacy class labels of `subs`, assigned against class representatives
/// by explicit conjugating-element search.
fn conjugacy_labels(g: &ConcreteGroup, subs: &[Subgroup]) -> Result<Vec<usize>> {
    // (representative, transversal of its normalizer)
    let mut reps: Vec<(Subgroup, Vec<usize>)> = Vec::new();
    let mut labels = Vec::with_capacity(subs.len());
    for s in subs {
        let mut found = None;
        for (i, (r, transversal)) in reps.iter().enumerate() {
            if r.order() != s.order() {
                continue;
            }
            if transversal.iter().any(|&x| r.generators().iter().all(|&y| s.contains(g.conj(y, x)))) {
                found = Some(i);
                break;
            }
        }
        let label = match found {
            Some(i) => i,
            None => {
                let t = coset_table(g, &normalizer(g, s))?;
                reps.push((s.clone(), t.cosets.clone()));
                reps.len() - 1
            }
        };
        labels.push(label);
    }
    Ok(labels)
}

/// Checks, over all pairs of F_p-linear maps f, g: F_q → F_q, that the
/// twisted horizontal subgroups are almost conjugate, and conjugate exactly
/// when f − g is a multiplication operator; then counts classes.
pub fn twist_lemma_suite(p: u64, n: usize) -> Result<TwistLemmaReport> {
    let h = heisenberg_group(p, n)?;
    let g = &h.group;
    let maps = all_twist_maps(p, n)?;
    let subs = maps.iter().map(|f| twisted_horizontal(&h, f)).collect::<Result<Vec<_>>>()?;
    let counts: Vec<Vec<usize>> = subs.iter().map(|s| s.class_counts()).collect();
    let labels = conjugacy_labels(g, &subs)?;
    let mut all_ac = true;
    let mut matches = true;
    let mut pairs = 0u64;
    for i in 0..maps.len() {
        for j in 0..maps.len() {
            pairs += 1;
            all_ac &= counts[i] == counts[j];
            let conj = labels[i] == labels[j];
            matches &= conj == maps[i].sub(&maps[j], p).is_multiplication(&h.field);
        }
    }
    let classes = labels.iter().max().map_or(0, |m| m + 1);
    let expected = p.pow((n * (n - 1)) as u32);
    let reps = twist_representatives(p, n)?;
    let mut rep_labels: Vec<usize> = reps
        .iter()
        .map(|f| labels[maps.iter().position(|m| m == f).expect("representatives are twist maps")])
        .collect();
    rep_labels.sort_unstable();
    rep_labels.dedup();
    let separate = rep_labels.len() == reps.len() && rep_labels.len() == classes;
    Ok(TwistLemmaReport {
        p,
        n,
        group_order: g.order(),
        group_digest: g.digest_hex(),
        maps: maps.len(),
        pairs,
        all_almost_conjugate: all_ac,
        conjugacy_matches_multiplication: matches,
        conjugacy_classes: classes,
        expected_classes: expected,
        representatives_separate_classes: separate,
        confirmed: all_ac && matches && classes as u64 == expected && separate,
    })
}

/// A claimed property, its expected truth value when one is claimed, and
/// what the certificate found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub claim: String,
    pub expected: Option<bool>,
    pub observed: bool,
}

impl Expectation {
    pub fn holds(&self) -> bool {
        self.expected.map_or(true, |e| e == self.observed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePairReport {
    pub p: u64,
    pub n: usize,
    /// Dimensions of the coordinate subspaces W and V.
    pub dims: [usize; 2],
    /// Index of each subgroup, the degree of the corresponding cover.
    pub indices: [usize; 2],
    pub certificates: Vec<Certificate>,
    pub expectations: Vec<Expectation>,
    pub confirmed: bool,
}

/// span(e₁, …, e_d) as a translation subgroup.
pub fn coordinate_subspace(g: &AffineGroup, d: usize) -> Result<Subgroup> {
    if d > g.n {
        return Err(Error::InvalidArgument(format!("subspace dimension {d} exceeds {}", g.n)));
    }
    let basis: Vec<Vec<u64>> = (0..d).map(|i| (0..g.n).map(|j| u64::from(i == j)).collect()).collect();
    subspace_subgroup(g, &basis)
}

/// Certifies the pair (W, V) of coordinate subspaces of dimensions `dims`
/// in F_p^n ⋊ SL(n; F_p) against the expected pattern: nontrivial subspaces
/// are elementwise conjugate, proper ones fixed point equivalent, proper
/// nontrivial ones primitive, and subspaces of different dimension not
/// almost conjugate.
pub fn affine_pair(g: &AffineGroup, dims: [usize; 2]) -> Result<AffinePairReport> {
    let w = coordinate_subspace(g, dims[0])?;
    let v = coordinate_subspace(g, dims[1])?;
    let nontrivial = dims.iter().all(|&d| d > 0);
    let proper = dims.iter().all(|&d| d < g.n);
    let ac = certify_almost_conjugate(&g.group, &w, &v)?;
    let ec = certify_elementwise_conjugate(&g.group, &w, &v)?;
    let fpe = certify_fixed_point_equivalent(&g.group, &w, &v)?;
    let pw = certify_primitive(&g.group, &w)?;
    let pv = certify_primitive(&g.group, &v)?;
    let prim_expect = |d: usize| if d > 0 && d < g.n { Some(true) } else if d == g.n { Some(false) } else { None };
    let expectations = vec![
        Expectation {
            claim: "almost conjugate iff equal dimension".into(),
            expected: Some(dims[0] == dims[1]),
            observed: ac.verdict,
        },
        Expectation {
            claim: "nontrivial subspaces are elementwise conjugate".into(),
            expected: nontrivial.then_some(true),
            observed: ec.verdict,
        },
        Expectation {
            claim: "proper subspaces are fixed point equivalent".into(),
            expected: proper.then_some(true),
            observed: fpe.verdict,
        },
        Expectation { claim: "W primitive".into(), expected: prim_expect(dims[0]), observed: pw.verdict },
        Expectation { claim: "V primitive".into(), expected: prim_expect(dims[1]), observed: pv.verdict },
    ];
    let certificates = vec![ac, ec, fpe, pw, pv];
    let confirmed = expectations.iter().all(Expectation::holds) && certificates.iter().all(Certificate::recheck);
    let order = g.group.order();
    Ok(AffinePairReport {
        p: g.p,
        n: g.n,
        dims,
        indices: [order / w.order(), order / v.order()],
        certificates,
        expectations,
        confirmed,
    })
}

pub fn affine_suite(p: u64, n: usize, pairs: &[[usize; 2]]) -> Result<Vec<AffinePairReport>> {
    let g = affine_group(p, n)?;
    pairs.iter().map(|&d| affine_pair(&g, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_lemma_q4() {
        let r = twist_lemma_suite(2, 2).unwrap();
        assert_eq!(r.maps, 16);
        assert_eq!(r.pairs, 256);
        assert_eq!(r.conjugacy_classes, 4);
        assert!(r.confirmed, "{r:?}");
    }

    #[test]
    fn prime_field_has_one_class() {
        let r = twist_lemma_suite(3, 1).unwrap();
        assert_eq!((r.maps, r.conjugacy_classes, r.expected_classes), (3, 1, 1));
        assert!(r.confirmed);
    }

    #[test]
    fn affine_line_plane_and_full() {
        let reports = affine_suite(3, 2, &[[1, 1], [1, 2]]).unwrap();
        assert!(reports.iter().all(|r| r.confirmed), "{reports:?}");
        assert_eq!(reports[1].indices, [72, 24]);
        assert!(!reports[1].certificates[0].verdict);
    }
}
