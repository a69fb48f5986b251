//! Semidirect products A ⋊ Θ of an abelian group by explicit automorphisms.

use crate::error::{Error, Result};
use crate::group::{ConcreteGroup, GroupCarrier, PermutationCarrier, Subgroup};

/// A ⋊ ⟨θ⟩ with elements (a, σ) and (a, σ)(b, τ) = (a·σ(b), σ∘τ).
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: ConcreteGroup,
    pub base: ConcreteGroup,
    /// The group ⟨θ⟩ as permutations of the indices of `base`.
    pub acting: ConcreteGroup,
}

struct SemidirectCarrier<'a> {
    base: &'a ConcreteGroup,
    acting: &'a ConcreteGroup,
    perms: Vec<Vec<u32>>,
}

impl GroupCarrier for SemidirectCarrier<'_> {
    type Elem = (u32, u32);

    fn identity(&self) -> (u32, u32) {
        (0, 0)
    }

    fn mul(&self, x: &(u32, u32), y: &(u32, u32)) -> (u32, u32) {
        let sb = self.perms[x.1 as usize][y.0 as usize] as usize;
        let a = self.base.mul(x.0 as usize, sb);
        // permutation products apply the left factor first, so σ∘τ = τ·σ
        let s = self.acting.mul(y.1 as usize, x.1 as usize);
        (a as u32, s as u32)
    }

    fn inv(&self, x: &(u32, u32)) -> (u32, u32) {
        // (a, σ)⁻¹ = (σ⁻¹(a⁻¹), σ⁻¹)
        let si = self.acting.inv(x.1 as usize);
        let ai = self.base.inv(x.0 as usize);
        (self.perms[si][ai], si as u32)
    }

    fn encode(&self, x: &(u32, u32)) -> Vec<u8> {
        let mut out = x.0.to_le_bytes().to_vec();
        out.extend_from_slice(&x.1.to_le_bytes());
        out
    }
}

/// `theta` lists automorphisms of `a` as image tables on element indices.
pub fn semidirect_product(a: &ConcreteGroup, theta: &[Vec<usize>]) -> Result<SemidirectProduct> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = a.order();
    let pc = PermutationCarrier::new(n)?;
    let mut perms = Vec::new();
    for (k, t) in theta.iter().enumerate() {
        let p = pc
            .from_images(t)
            .map_err(|_| Error::NotAutomorphism(format!("map {k} is not a bijection")))?;
        for x in 0..n {
            for &g in a.generators() {
                if t[a.mul(x, g)] != a.mul(t[x], t[g]) {
                    return Err(Error::NotAutomorphism(format!("map {k} is not multiplicative")));
                }
            }
        }
        perms.push(p);
    }
    let acting = ConcreteGroup::generate(&pc, &perms, usize::MAX, "automorphisms")?;
    let all_perms: Vec<Vec<u32>> = (0..acting.order())
        .map(|i| {
            acting
                .encoding(i)
                .chunks(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
                .collect()
        })
        .collect();
    let carrier = SemidirectCarrier { base: a, acting: &acting, perms: all_perms };
    let mut gens: Vec<(u32, u32)> = a.generators().iter().map(|&g| (g as u32, 0)).collect();
    gens.extend(theta.iter().map(|t| {
        let p: Vec<u32> = t.iter().map(|&x| x as u32).collect();
        (0, acting.find(&pc, &p).unwrap() as u32)
    }));
    let label = format!("semidirect(|A|={n}, |Θ|={})", acting.order());
    let group = ConcreteGroup::generate(&carrier, &gens, usize::MAX, &label)?;
    Ok(SemidirectProduct { group, base: a.clone(), acting })
}

impl SemidirectProduct {
    /// Index of (a, σ) with σ given by its index in `acting`.
    pub fn element(&self, a: usize, sigma: usize) -> Option<usize> {
        let mut code = (a as u32).to_le_bytes().to_vec();
        code.extend_from_slice(&(sigma as u32).to_le_bytes());
        self.group.index_of(&code)
    }

    /// The normal subgroup A × {1}.
    pub fn base_subgroup(&self) -> Subgroup {
        let seeds: Vec<usize> = self
            .base
            .generators()
            .iter()
            .map(|&g| self.element(g, 0).unwrap())
            .collect();
        Subgroup::generated(&self.group, &seeds).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::affine_group;
    use crate::group::{conjugacy_classes, generate_group, AffineCarrier, CyclicCarrier};

    #[test]
    fn identity_action_is_direct() {
        let z = generate_group(&CyclicCarrier { n: 6 }, &[1], 10).unwrap();
        let id: Vec<usize> = (0..6).collect();
        let sd = semidirect_product(&z, &[id]).unwrap();
        assert_eq!(sd.group.order(), 6);
    }

    #[test]
    fn inversion_gives_dihedral() {
        let c = CyclicCarrier { n: 5 };
        let z = generate_group(&c, &[1], 10).unwrap();
        let inv: Vec<usize> = (0..5).map(|x| z.inv(x)).collect();
        let sd = semidirect_product(&z, &[inv]).unwrap();
        let g = &sd.group;
        assert_eq!(g.order(), 10);
        let r = sd.element(z.find(&c, &1).unwrap(), 0).unwrap();
        let s = sd.element(0, 1).unwrap();
        assert_eq!(g.pow(r, 5), 0);
        assert_eq!(g.mul(s, s), 0);
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        assert!(sd.base_subgroup().is_normal());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let z = generate_group(&CyclicCarrier { n: 4 }, &[1], 10).unwrap();
        let bad: Vec<usize> = vec![0, 2, 1, 3];
        assert!(matches!(semidirect_product(&z, &[bad]), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn plane_by_sl2_is_affine() {
        let c = AffineCarrier::new(3, 2).unwrap();
        let id = c.identity();
        let a = generate_group(&c, &[c.pack(&[1, 0], &id[2..]), c.pack(&[0, 1], &id[2..])], 100).unwrap();
        let act = |m: [u32; 4]| -> Vec<usize> {
            (0..a.order())
                .map(|x| {
                    let v: Vec<u32> = a.encoding(x).chunks(2).take(2).map(|b| b[0] as u32).collect();
                    let w = [(m[0] * v[0] + m[1] * v[1]) % 3, (m[2] * v[0] + m[3] * v[1]) % 3];
                    a.find(&c, &c.pack(&w, &id[2..])).unwrap()
                })
                .collect()
        };
        let sd = semidirect_product(&a, &[act([1, 1, 0, 1]), act([1, 0, 1, 1])]).unwrap();
        assert_eq!(sd.group.order(), 216);
        let aff = affine_group(3, 2).unwrap();
        let mut s1 = conjugacy_classes(&sd.group).class_sizes.clone();
        let mut s2 = conjugacy_classes(&aff.group).class_sizes.clone();
        s1.sort();
        s2.sort();
        assert_eq!(s1, s2);
    }
}
