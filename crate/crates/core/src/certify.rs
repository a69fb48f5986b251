//! Certificates for the subgroup-pair relations: almost conjugate,
//! elementwise conjugate, fixed point equivalent, and primitive.
//!
//! Every certificate carries enough evidence to re-derive its verdict
//! without the group (see [`Certificate::recheck`]).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::modular::is_prime;
use crate::error::Result;
use crate::group::{
    character_table, conjugacy_classes, element_order, normal_core, ConcreteGroup, Subgroup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AlmostConjugate,
    ElementwiseConjugate,
    FixedPointEquivalent,
    Primitive,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::AlmostConjugate => "almost_conjugate",
            Relation::ElementwiseConjugate => "elementwise_conjugate",
            Relation::FixedPointEquivalent => "fixed_point_equivalent",
            Relation::Primitive => "primitive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Relation::AlmostConjugate,
            Relation::ElementwiseConjugate,
            Relation::FixedPointEquivalent,
            Relation::Primitive,
        ]
        .into_iter()
        .find(|r| r.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// |H ∩ C| and |K ∩ C| for every class C, in class-id order.
    ClassCounts { class_sizes: Vec<usize>, h: Vec<usize>, k: Vec<usize> },
    /// Whether H (resp. K) meets each class.
    ClassMeets { h: Vec<bool>, k: Vec<bool> },
    /// dim Fix(ρ_χ(H)) and dim Fix(ρ_χ(K)) per irreducible χ, in table row
    /// order, computed modulo `prime`.
    FixedDims { prime: u64, degrees: Vec<u64>, h: Vec<u64>, k: Vec<u64> },
    /// Element orders of H with multiplicities, and the normal core.
    Orders { order_counts: BTreeMap<u64, usize>, core_members: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub relation: Relation,
    pub verdict: bool,
    pub evidence: Evidence,
    pub group_digest: String,
    pub subgroup_digests: Vec<String>,
}

impl Certificate {
    /// Re-derives the verdict from the evidence alone.
    pub fn recheck(&self) -> bool {
        let derived = match (&self.relation, &self.evidence) {
            (Relation::AlmostConjugate, Evidence::ClassCounts { h, k, class_sizes }) => {
                h.len() == class_sizes.len() && h == k
            }
            (Relation::ElementwiseConjugate, Evidence::ClassMeets { h, k }) => h == k,
            (Relation::FixedPointEquivalent, Evidence::FixedDims { h, k, .. }) => {
                h.len() == k.len() && h.iter().zip(k).all(|(a, b)| (*a > 0) == (*b > 0))
            }
            (Relation::Primitive, Evidence::Orders { order_counts, core_members }) => {
                primitive_from_evidence(order_counts, core_members)
            }
            _ => return false,
        };
        derived == self.verdict
    }
}

fn primitive_from_evidence(order_counts: &BTreeMap<u64, usize>, core: &[usize]) -> bool {
    let nontrivial: Vec<u64> = order_counts.keys().copied().filter(|&o| o != 1).collect();
    let same_prime = nontrivial.len() == 1 && is_prime(nontrivial[0]);
    same_prime && core.len() == 1
}

fn header(g: &ConcreteGroup, subs: &[&Subgroup]) -> (String, Vec<String>) {
    (g.digest_hex(), subs.iter().map(|s| s.digest_hex()).collect())
}

/// |H ∩ [g]| = |K ∩ [g]| for every class [g].
pub fn certify_almost_conjugate(g: &ConcreteGroup, h: &Subgroup, k: &Subgroup) -> Result<Certificate> {
    h.check_parent(g)?;
    k.check_parent(g)?;
    let hc = h.class_counts();
    let kc = k.class_counts();
    let (group_digest, subgroup_digests) = header(g, &[h, k]);
    Ok(Certificate {
        relation: Relation::AlmostConjugate,
        verdict: hc == kc,
        evidence: Evidence::ClassCounts {
            class_sizes: conjugacy_classes(g).class_sizes.clone(),
            h: hc,
            k: kc,
        },
        group_digest,
        subgroup_digests,
    })
}

/// H meets [g] iff K meets [g], for every class.
pub fn certify_elementwise_conjugate(
    g: &ConcreteGroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Certificate> {
    h.check_parent(g)?;
    k.check_parent(g)?;
    let hm: Vec<bool> = h.class_counts().iter().map(|&c| c > 0).collect();
    let km: Vec<bool> = k.class_counts().iter().map(|&c| c > 0).collect();
    let (group_digest, subgroup_digests) = header(g, &[h, k]);
    Ok(Certificate {
        relation: Relation::ElementwiseConjugate,
        verdict: hm == km,
        evidence: Evidence::ClassMeets { h: hm, k: km },
        group_digest,
        subgroup_digests,
    })
}

/// χ ↦ dim Fix(ρ_χ(H)) over the irreducible characters of G.
pub fn spade_profile(g: &ConcreteGroup, h: &Subgroup) -> Result<Vec<u64>> {
    h.check_parent(g)?;
    let t = character_table(g)?;
    let counts = h.class_counts();
    (0..t.len()).map(|chi| t.fixed_dim_from_counts(chi, &counts)).collect()
}

/// For every irreducible ρ: ρ|_H has a nonzero fixed vector iff ρ|_K does.
/// Checking irreducibles suffices since every representation is a direct
/// sum of them.
pub fn certify_fixed_point_equivalent(
    g: &ConcreteGroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Certificate> {
    k.check_parent(g)?;
    let hp = spade_profile(g, h)?;
    let kp = spade_profile(g, k)?;
    let t = character_table(g)?;
    let verdict = hp.iter().zip(&kp).all(|(a, b)| (*a > 0) == (*b > 0));
    let (group_digest, subgroup_digests) = header(g, &[h, k]);
    Ok(Certificate {
        relation: Relation::FixedPointEquivalent,
        verdict,
        evidence: Evidence::FixedDims {
            prime: t.prime,
            degrees: t.degrees.clone(),
            h: hp,
            k: kp,
        },
        group_digest,
        subgroup_digests,
    })
}

/// (a) every nonidentity element of H has the same prime order, and
/// (b) the normal core of H is trivial. The trivial subgroup is not
/// primitive: (a) asks for an actual prime.
pub fn certify_primitive(g: &ConcreteGroup, h: &Subgroup) -> Result<Certificate> {
    h.check_parent(g)?;
    let mut order_counts = BTreeMap::new();
    for &x in h.members() {
        *order_counts.entry(element_order(g, x)).or_insert(0) += 1;
    }
    let core = normal_core(g, h)?;
    let core_members = core.members().to_vec();
    let (group_digest, subgroup_digests) = header(g, &[h]);
    Ok(Certificate {
        relation: Relation::Primitive,
        verdict: primitive_from_evidence(&order_counts, &core_members),
        evidence: Evidence::Orders { order_counts, core_members },
        group_digest,
        subgroup_digests,
    })
}

/// Runs the certifier for `relation` on (H, K); `Primitive` certifies H and
/// K separately and returns both.
pub fn certify(
    relation: Relation,
    g: &ConcreteGroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Vec<Certificate>> {
    Ok(match relation {
        Relation::AlmostConjugate => vec![certify_almost_conjugate(g, h, k)?],
        Relation::ElementwiseConjugate => vec![certify_elementwise_conjugate(g, h, k)?],
        Relation::FixedPointEquivalent => vec![certify_fixed_point_equivalent(g, h, k)?],
        Relation::Primitive => vec![certify_primitive(g, h)?, certify_primitive(g, k)?],
    })
}
