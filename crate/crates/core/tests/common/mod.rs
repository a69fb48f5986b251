#![allow(dead_code)]

use sunada::constructions::heisenberg_group;
use sunada::group::{generate_group, ConcreteGroup, PermutationCarrier, Subgroup};

pub fn perm_group(degree: usize, gens: &[&[&[usize]]]) -> (ConcreteGroup, PermutationCarrier) {
    let c = PermutationCarrier::new(degree).unwrap();
    let g: Vec<Vec<u32>> = gens
        .iter()
        .map(|cy| c.from_cycles(&cy.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap())
        .collect();
    (generate_group(&c, &g, 100_000).unwrap(), c)
}

pub fn perm(g: &ConcreteGroup, c: &PermutationCarrier, cycles: &[&[usize]]) -> usize {
    let cy: Vec<Vec<usize>> = cycles.iter().map(|x| x.to_vec()).collect();
    g.find(c, &c.from_cycles(&cy).unwrap()).unwrap()
}

pub fn s3() -> ConcreteGroup {
    perm_group(3, &[&[&[1, 2]], &[&[1, 2, 3]]]).0
}

pub fn d4() -> ConcreteGroup {
    perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]).0
}

/// Regular representation: i = (1234)(5678), j = (1537)(2846).
pub fn q8() -> ConcreteGroup {
    perm_group(8, &[&[&[1, 2, 3, 4], &[5, 6, 7, 8]], &[&[1, 5, 3, 7], &[2, 8, 4, 6]]]).0
}

pub fn s4() -> ConcreteGroup {
    perm_group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]).0
}

pub fn n3_f2() -> ConcreteGroup {
    heisenberg_group(2, 1).unwrap().group
}

/// S_6 with the Klein-four pair H = ⟨(12)(34), (13)(24)⟩,
/// K = ⟨(12)(34), (12)(56)⟩ and the images of a = (12), b = (123456).
pub struct S6Pair {
    pub g: ConcreteGroup,
    pub h: Subgroup,
    pub k: Subgroup,
    pub a: usize,
    pub b: usize,
}

pub fn s6_pair() -> S6Pair {
    let (g, c) = perm_group(6, &[&[&[1, 2]], &[&[1, 2, 3, 4, 5, 6]]]);
    let h = Subgroup::generated(&g, &[perm(&g, &c, &[&[1, 2], &[3, 4]]), perm(&g, &c, &[&[1, 3], &[2, 4]])]).unwrap();
    let k = Subgroup::generated(&g, &[perm(&g, &c, &[&[1, 2], &[3, 4]]), perm(&g, &c, &[&[1, 2], &[5, 6]])]).unwrap();
    let a = perm(&g, &c, &[&[1, 2]]);
    let b = perm(&g, &c, &[&[1, 2, 3, 4, 5, 6]]);
    S6Pair { g, h, k, a, b }
}

/// The S_6 pair as a covers job document.
pub const S6_COVERS_JOB: &str = r#"{"covers": {"group": {"type": "symmetric", "n": 6},
  "subgroups": [{"generators": [{"cycles": [[1,2],[3,4]]}, {"cycles": [[1,3],[2,4]]}]},
                {"generators": [{"cycles": [[1,2],[3,4]]}, {"cycles": [[1,2],[5,6]]}]}],
  "phi": {"a": {"cycles": [[1,2]]}, "b": {"cycles": [[1,2,3,4,5,6]]}},
  "L": 8, "modes": ["multiset_all", "set_primitive"]}}"#;
