//! Groups, elements and subgroups described in job documents.

use serde::Deserialize;

use crate::constructions::{
    affine_group, heisenberg_group, horizontal_subgroup, semidirect_product, subspace_subgroup,
    twisted_horizontal, AffineGroup, HeisenbergGroup, SemidirectProduct, TwistMap,
};
use crate::error::{Error, Result};
use crate::group::{generate_group, ConcreteGroup, CyclicCarrier, PermutationCarrier, Subgroup};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Heisenberg { p: u64, n: usize },
    Affine { p: u64, n: usize },
    Symmetric { n: usize },
    Cyclic { n: u64 },
    /// Generators as lists of 1-based cycles.
    Permutation { degree: usize, generators: Vec<Vec<Vec<usize>>> },
    /// A ⋊ ⟨θ⟩ with automorphisms given as image tables on indices of A.
    Semidirect { base: Box<GroupSpec>, theta: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Index(usize),
    Tagged(ElementTag),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ElementTag {
    Cycles(Vec<Vec<usize>>),
    /// 0-based image list.
    Images(Vec<usize>),
    /// (x, y, t) as field element indices.
    Heisenberg([u64; 3]),
    Affine { v: Vec<u64>, m: Vec<Vec<u64>> },
    Translation(Vec<u64>),
    /// (a, σ): index in the base group and in the acting group.
    Semidirect([usize; 2]),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Named(String),
    Tagged(SubgroupTag),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SubgroupTag {
    Twist(Vec<Vec<u64>>),
    Subspace(Vec<Vec<u64>>),
    Generators(Vec<ElementSpec>),
}

pub enum BuiltGroup {
    Heisenberg(HeisenbergGroup),
    Affine(AffineGroup),
    Permutation(ConcreteGroup, PermutationCarrier),
    Cyclic(ConcreteGroup, CyclicCarrier),
    Semidirect(SemidirectProduct),
}

fn mismatch(what: &str, kind: &str) -> Error {
    Error::KindMismatch(format!("{what} needs a {kind} group"))
}

pub fn build_group(spec: &GroupSpec) -> Result<BuiltGroup> {
    Ok(match spec {
        GroupSpec::Heisenberg { p, n } => BuiltGroup::Heisenberg(heisenberg_group(*p, *n)?),
        GroupSpec::Affine { p, n } => BuiltGroup::Affine(affine_group(*p, *n)?),
        GroupSpec::Symmetric { n } => {
            let c = PermutationCarrier::new(*n)?;
            let mut gens = Vec::new();
            if *n > 1 {
                gens.push(c.from_cycles(&[vec![1, 2]])?);
                gens.push(c.from_cycles(&[(1..=*n).collect()])?);
            }
            let g = generate_group(&c, &gens, usize::MAX)?;
            BuiltGroup::Permutation(g, c)
        }
        GroupSpec::Cyclic { n } => {
            if *n == 0 {
                return Err(Error::InvalidArgument("cyclic group of order 0".into()));
            }
            let c = CyclicCarrier { n: *n };
            let g = generate_group(&c, &[1 % n], usize::MAX)?;
            BuiltGroup::Cyclic(g, c)
        }
        GroupSpec::Permutation { degree, generators } => {
            let c = PermutationCarrier::new(*degree)?;
            let gens = generators.iter().map(|g| c.from_cycles(g)).collect::<Result<Vec<_>>>()?;
            let g = generate_group(&c, &gens, usize::MAX)?;
            BuiltGroup::Permutation(g, c)
        }
        GroupSpec::Semidirect { base, theta } => {
            let a = build_group(base)?;
            BuiltGroup::Semidirect(semidirect_product(a.group(), theta)?)
        }
    })
}

impl BuiltGroup {
    pub fn group(&self) -> &ConcreteGroup {
        match self {
            BuiltGroup::Heisenberg(h) => &h.group,
            BuiltGroup::Affine(a) => &a.group,
            BuiltGroup::Permutation(g, _) | BuiltGroup::Cyclic(g, _) => g,
            BuiltGroup::Semidirect(s) => &s.group,
        }
    }

    pub fn element(&self, spec: &ElementSpec) -> Result<usize> {
        let tag = match spec {
            ElementSpec::Index(i) => {
                return if *i < self.group().order() { Ok(*i) } else { Err(Error::NotInGroup) };
            }
            ElementSpec::Tagged(t) => t,
        };
        match (tag, self) {
            (ElementTag::Cycles(c), BuiltGroup::Permutation(g, pc)) => {
                g.find(pc, &pc.from_cycles(c)?).ok_or(Error::NotInGroup)
            }
            (ElementTag::Images(im), BuiltGroup::Permutation(g, pc)) => {
                g.find(pc, &pc.from_images(im)?).ok_or(Error::NotInGroup)
            }
            (ElementTag::Heisenberg(c), BuiltGroup::Heisenberg(h)) => {
                if c.iter().any(|&x| x >= h.q()) {
                    return Err(Error::InvalidArgument(format!("field index beyond q = {}", h.q())));
                }
                let f = &h.field;
                Ok(h.index(&f.element(c[0]), &f.element(c[1]), &f.element(c[2])))
            }
            (ElementTag::Affine { v, m }, BuiltGroup::Affine(a)) => a.element(v, m),
            (ElementTag::Translation(v), BuiltGroup::Affine(a)) => a.translation(v),
            (ElementTag::Semidirect([x, s]), BuiltGroup::Semidirect(sd)) => {
                sd.element(*x, *s).ok_or(Error::NotInGroup)
            }
            (ElementTag::Cycles(_) | ElementTag::Images(_), _) => Err(mismatch("a permutation element", "permutation")),
            (ElementTag::Heisenberg(_), _) => Err(mismatch("a Heisenberg element", "heisenberg")),
            (ElementTag::Affine { .. } | ElementTag::Translation(_), _) => Err(mismatch("an affine element", "affine")),
            (ElementTag::Semidirect(_), _) => Err(mismatch("a semidirect element", "semidirect")),
        }
    }

    pub fn subgroup(&self, spec: &SubgroupSpec) -> Result<Subgroup> {
        let g = self.group();
        match spec {
            SubgroupSpec::Named(name) => match (name.as_str(), self) {
                ("trivial", _) => Ok(Subgroup::trivial(g)),
                ("whole", _) => Ok(Subgroup::whole(g)),
                ("horizontal", BuiltGroup::Heisenberg(h)) => Ok(horizontal_subgroup(h)),
                ("center", BuiltGroup::Heisenberg(h)) => Ok(h.center()),
                ("translation", BuiltGroup::Affine(a)) => Ok(a.translation_subgroup()),
                ("base", BuiltGroup::Semidirect(s)) => Ok(s.base_subgroup()),
                ("horizontal" | "center", _) => Err(mismatch(name, "heisenberg")),
                ("translation", _) => Err(mismatch(name, "affine")),
                ("base", _) => Err(mismatch(name, "semidirect")),
                _ => Err(Error::Schema(format!("unknown subgroup name {name:?}"))),
            },
            SubgroupSpec::Tagged(SubgroupTag::Twist(m)) => match self {
                BuiltGroup::Heisenberg(h) => twisted_horizontal(h, &TwistMap { matrix: m.clone() }),
                _ => Err(mismatch("a twist selector", "heisenberg")),
            },
            SubgroupSpec::Tagged(SubgroupTag::Subspace(b)) => match self {
                BuiltGroup::Affine(a) => subspace_subgroup(a, b),
                _ => Err(mismatch("a subspace selector", "affine")),
            },
            SubgroupSpec::Tagged(SubgroupTag::Generators(gens)) => {
                let seeds = gens.iter().map(|e| self.element(e)).collect::<Result<Vec<_>>>()?;
                Subgroup::generated(g, &seeds)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: serde_json::Value) -> GroupSpec {
        serde_json::from_value(v).unwrap()
    }

    #[test]
    fn builds_each_type() {
        let cases = [
            (serde_json::json!({"type": "heisenberg", "p": 2, "n": 2}), 64),
            (serde_json::json!({"type": "affine", "p": 3, "n": 2}), 216),
            (serde_json::json!({"type": "symmetric", "n": 4}), 24),
            (serde_json::json!({"type": "cyclic", "n": 7}), 7),
            (serde_json::json!({"type": "permutation", "degree": 4, "generators": [[[1, 2, 3, 4]], [[1, 3]]]}), 8),
        ];
        for (v, order) in cases {
            assert_eq!(build_group(&spec(v)).unwrap().group().order(), order);
        }
    }

    #[test]
    fn selectors() {
        let g = build_group(&spec(serde_json::json!({"type": "affine", "p": 3, "n": 2}))).unwrap();
        let sub: SubgroupSpec = serde_json::from_value(serde_json::json!({"subspace": [[1, 0]]})).unwrap();
        assert_eq!(g.subgroup(&sub).unwrap().order(), 3);
        let tw: SubgroupSpec = serde_json::from_value(serde_json::json!({"twist": [[0, 1], [1, 0]]})).unwrap();
        assert!(matches!(g.subgroup(&tw), Err(Error::KindMismatch(_))));
        let s6 = build_group(&spec(serde_json::json!({"type": "symmetric", "n": 6}))).unwrap();
        let e: ElementSpec = serde_json::from_value(serde_json::json!({"cycles": [[1, 2], [3, 4]]})).unwrap();
        let x = s6.element(&e).unwrap();
        assert_eq!(s6.group().mul(x, x), 0);
        assert_eq!(s6.element(&ElementSpec::Index(720)), Err(Error::NotInGroup));
    }
}
