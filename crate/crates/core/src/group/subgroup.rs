//! Subgroups, right cosets, normal cores and subgroup conjugacy.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::classes::conjugacy_classes;
use super::concrete::ConcreteGroup;
use crate::error::{Error, Result};

/// A subgroup H ≤ G as a sorted index set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: ConcreteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

/// Smallest subgroup containing `seeds`.
pub fn subgroup_from(g: &ConcreteGroup, seeds: &[usize]) -> Result<Subgroup> {
    Subgroup::generated(g, seeds)
}

impl Subgroup {
    pub fn generated(g: &ConcreteGroup, seeds: &[usize]) -> Result<Self> {
        let n = g.order();
        if seeds.iter().any(|&s| s >= n) {
            return Err(Error::NotInGroup);
        }
        let gens: Vec<usize> = {
            let mut v: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
            v.dedup();
            v
        };
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in &gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let h = Subgroup { parent: g.clone(), members, mask, gens };
        debug_assert_eq!(n % h.order(), 0);
        if n % h.order() != 0 {
            return Err(Error::Internal("Lagrange check failed".into()));
        }
        Ok(h)
    }

    /// Checks that an arbitrary index set is a subgroup.
    pub fn from_members(g: &ConcreteGroup, members: &[usize]) -> Result<Self> {
        let n = g.order();
        let mut mask = vec![false; n];
        for &m in members {
            if m >= n {
                return Err(Error::NotInGroup);
            }
            mask[m] = true;
        }
        if !mask[0] {
            return Err(Error::NotASubgroup);
        }
        let mut sorted: Vec<usize> = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &a in &sorted {
            if !mask[g.inv(a)] {
                return Err(Error::NotASubgroup);
            }
            for &b in &sorted {
                if !mask[g.mul(a, b)] {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        let h = Subgroup::generated(g, &sorted)?;
        Ok(h)
    }

    pub fn whole(g: &ConcreteGroup) -> Self {
        Subgroup {
            parent: g.clone(),
            members: (0..g.order()).collect(),
            mask: vec![true; g.order()],
            gens: g.generators().to_vec(),
        }
    }

    pub fn trivial(g: &ConcreteGroup) -> Self {
        Subgroup::generated(g, &[]).unwrap()
    }

    pub fn parent(&self) -> &ConcreteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators()
            .iter()
            .all(|&s| self.gens.iter().all(|&h| self.contains(g.conj(h, s))))
    }

    /// g⁻¹ H g
    pub fn conjugate_by(&self, x: usize) -> Subgroup {
        let g = &self.parent;
        let seeds: Vec<usize> = self.gens.iter().map(|&h| g.conj(h, x)).collect();
        Subgroup::generated(g, &seeds).unwrap()
    }

    /// Number of members in each conjugacy class of the parent.
    pub fn class_counts(&self) -> Vec<usize> {
        let cl = conjugacy_classes(&self.parent);
        let mut counts = vec![0; cl.len()];
        for &x in &self.members {
            counts[cl.class_of[x] as usize] += 1;
        }
        counts
    }

    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(self.parent.digest());
        for &m in &self.members {
            h.update((m as u32).to_le_bytes());
        }
        h.finalize().into()
    }

    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest())
    }

    pub fn to_json(&self) -> SubgroupJson {
        SubgroupJson {
            parent_digest: self.parent.digest_hex(),
            digest: self.digest_hex(),
            order: self.order(),
            generators: self.gens.clone(),
            members: self.members.clone(),
        }
    }

    pub(crate) fn check_parent(&self, g: &ConcreteGroup) -> Result<()> {
        if self.parent.same_as(g) {
            Ok(())
        } else {
            Err(Error::NotASubgroup)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub parent_digest: String,
    pub digest: String,
    pub order: usize,
    pub generators: Vec<usize>,
    pub members: Vec<usize>,
}

/// Right cosets Hg of H in G with the right-multiplication action.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub subgroup: Subgroup,
    /// Least element index in each coset.
    pub cosets: Vec<usize>,
    /// coset_of[g] = the coset containing g.
    pub coset_of: Vec<u32>,
}

pub fn coset_table(g: &ConcreteGroup, h: &Subgroup) -> Result<CosetTable> {
    h.check_parent(g)?;
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut cosets = Vec::with_capacity(n / h.order());
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let c = cosets.len() as u32;
        cosets.push(x);
        for &m in h.members() {
            coset_of[g.mul(m, x)] = c;
        }
    }
    Ok(CosetTable { subgroup: h.clone(), cosets, coset_of })
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    /// Coset (Hg)·x.
    pub fn act(&self, coset: usize, x: usize) -> usize {
        let g = self.subgroup.parent();
        self.coset_of[g.mul(self.cosets[coset], x)] as usize
    }

    /// The permutation of cosets induced by x.
    pub fn permutation(&self, x: usize) -> Vec<usize> {
        (0..self.index()).map(|c| self.act(c, x)).collect()
    }
}

/// ⋂_g g⁻¹ H g, verified normal.
pub fn normal_core(g: &ConcreteGroup, h: &Subgroup) -> Result<Subgroup> {
    let table = coset_table(g, h)?;
    // g ranges over coset representatives: (h r)⁻¹ H (h r) = r⁻¹ H r
    let core: Vec<usize> = h
        .members()
        .iter()
        .copied()
        .filter(|&x| {
            table
                .cosets
                .iter()
                .all(|&r| h.contains(g.mul(g.mul(r, x), g.inv(r))))
        })
        .collect();
    let k = Subgroup::generated(g, &core)?;
    if k.order() != core.len() || !k.is_normal() {
        return Err(Error::Internal("normal core is not a normal subgroup".into()));
    }
    Ok(k)
}

/// N_G(H) = {g : g⁻¹ H g = H}.
pub fn normalizer(g: &ConcreteGroup, h: &Subgroup) -> Subgroup {
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| h.generators().iter().all(|&s| h.contains(g.conj(s, x))))
        .collect();
    Subgroup::generated(g, &members).unwrap()
}

/// Some g with g⁻¹ H g = K, or `None` when H and K are not conjugate.
pub fn are_subgroups_conjugate(
    g: &ConcreteGroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Option<usize>> {
    h.check_parent(g)?;
    k.check_parent(g)?;
    if h.order() != k.order() || h.class_counts() != k.class_counts() {
        return Ok(None);
    }
    if h == k {
        return Ok(Some(0));
    }
    // g⁻¹Hg depends only on the right coset N_G(H)·g
    let n = normalizer(g, h);
    let table = coset_table(g, &n)?;
    Ok(table
        .cosets
        .iter()
        .copied()
        .find(|&x| h.generators().iter().all(|&s| k.contains(g.conj(s, x)))))
}

/// Every subgroup of G, by joining cyclic subgroups until nothing new
/// appears. Intended for groups of a few hundred elements.
pub fn all_subgroups(g: &ConcreteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic = Vec::new();
    for x in 0..n {
        let c = Subgroup::generated(g, &[x]).unwrap();
        if seen.insert(c.members.clone()) {
            cyclic.push(c);
        }
    }
    let mut all: Vec<Subgroup> = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.is_subset_of(a) {
                    continue;
                }
                let mut seeds = a.gens.clone();
                seeds.extend_from_slice(&c.gens);
                let j = Subgroup::generated(g, &seeds).unwrap();
                if seen.insert(j.members.clone()) {
                    next.push(j);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::carrier::{AffineCarrier, GroupCarrier, PermutationCarrier};
    use crate::group::generate_group;

    fn sym(n: usize) -> (PermutationCarrier, ConcreteGroup) {
        let s = PermutationCarrier::new(n).unwrap();
        let t = s.from_cycles(&[vec![1, 2]]).unwrap();
        let c = s.from_cycles(&[(1..=n).collect()]).unwrap();
        let g = generate_group(&s, &[t, c], 100_000).unwrap();
        (s, g)
    }

    fn perm(s: &PermutationCarrier, g: &ConcreteGroup, cycles: &[Vec<usize>]) -> usize {
        g.find(s, &s.from_cycles(cycles).unwrap()).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let (s, g) = sym(4);
        assert_eq!(subgroup_from(&g, &[]).unwrap().order(), 1);
        let c = perm(&s, &g, &[vec![1, 2, 3]]);
        assert_eq!(subgroup_from(&g, &[c]).unwrap().order(), 3);
        assert_eq!(subgroup_from(&g, &[99]), Err(Error::NotInGroup));
        assert!(Subgroup::from_members(&g, &[0, c]).is_err());
    }

    #[test]
    fn cosets_of_trivial_and_whole() {
        let (_, g) = sym(4);
        assert_eq!(coset_table(&g, &Subgroup::whole(&g)).unwrap().index(), 1);
        let t = coset_table(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(t.index(), 24);
        for x in 0..24 {
            let p = t.permutation(x);
            let mut q = p.clone();
            q.sort();
            assert_eq!(q, (0..24).collect::<Vec<_>>());
        }
    }

    #[test]
    fn coset_action_is_an_action() {
        let (s, g) = sym(5);
        let h = subgroup_from(&g, &[perm(&s, &g, &[vec![1, 2]]), perm(&s, &g, &[vec![3, 4, 5]])]).unwrap();
        let t = coset_table(&g, &h).unwrap();
        assert_eq!(t.index(), 20);
        for x in (0..120).step_by(7) {
            for y in (0..120).step_by(11) {
                for c in 0..t.index() {
                    assert_eq!(t.act(t.act(c, x), y), t.act(c, g.mul(x, y)));
                }
            }
        }
        for &m in h.members() {
            assert_eq!(t.act(0, m), 0);
        }
    }

    #[test]
    fn s6_gassmann_pair_is_not_conjugate() {
        let (s, g) = sym(6);
        let a = perm(&s, &g, &[vec![1, 2], vec![3, 4]]);
        let b = perm(&s, &g, &[vec![1, 3], vec![2, 4]]);
        let c = perm(&s, &g, &[vec![1, 2], vec![5, 6]]);
        let h = subgroup_from(&g, &[a, b]).unwrap();
        let k = subgroup_from(&g, &[a, c]).unwrap();
        assert_eq!(h.class_counts(), k.class_counts());
        assert_eq!(are_subgroups_conjugate(&g, &h, &k).unwrap(), None);
        let x = perm(&s, &g, &[vec![1, 5, 3]]);
        let hx = h.conjugate_by(x);
        let w = are_subgroups_conjugate(&g, &h, &hx).unwrap().unwrap();
        assert_eq!(h.conjugate_by(w), hx);
        assert_eq!(are_subgroups_conjugate(&g, &h, &h).unwrap(), Some(0));
    }

    #[test]
    fn normal_core_is_largest_normal_subgroup_inside() {
        let (_, g) = sym(4);
        let subs = all_subgroups(&g);
        assert_eq!(subs.len(), 30);
        let normals: Vec<&Subgroup> = subs.iter().filter(|s| s.is_normal()).collect();
        assert_eq!(normals.len(), 4);
        for h in &subs {
            let core = normal_core(&g, h).unwrap();
            let best = normals
                .iter()
                .filter(|n| n.is_subset_of(h))
                .max_by_key(|n| n.order())
                .unwrap();
            assert_eq!(&core, *best);
        }
    }

    #[test]
    fn affine_line_has_trivial_core() {
        let c = AffineCarrier::new(3, 2).unwrap();
        let gens = vec![
            c.pack(&[1, 0], &[1, 0, 0, 1]),
            c.pack(&[0, 0], &[1, 1, 0, 1]),
            c.pack(&[0, 0], &[1, 0, 1, 1]),
        ];
        let g = generate_group(&c, &gens, 1000).unwrap();
        assert_eq!(g.order(), 216);
        let line = subgroup_from(&g, &[g.find(&c, &gens[0]).unwrap()]).unwrap();
        assert_eq!(coset_table(&g, &line).unwrap().index(), 72);
        assert_eq!(normal_core(&g, &line).unwrap().order(), 1);
        let e2 = g.find(&c, &c.pack(&[0, 1], &c.identity()[2..])).unwrap();
        let plane = subgroup_from(&g, &[g.find(&c, &gens[0]).unwrap(), e2]).unwrap();
        assert_eq!(normal_core(&g, &plane).unwrap(), plane);
    }
}
