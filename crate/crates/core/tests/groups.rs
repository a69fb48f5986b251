mod common;

use common::*;
use proptest::prelude::*;
use sunada::constructions::{affine_group, heisenberg_group};
use sunada::group::{
    character_table, conjugacy_classes, coset_table, element_order, fixed_space_dim, ConcreteGroup, Subgroup,
};

fn groups() -> Vec<ConcreteGroup> {
    vec![s4(), q8(), heisenberg_group(2, 2).unwrap().group, affine_group(3, 2).unwrap().group]
}

#[test]
fn heisenberg_orders_are_p_to_the_3n() {
    for (p, n) in [(2u64, 1usize), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1)] {
        assert_eq!(heisenberg_group(p, n).unwrap().group.order() as u64, p.pow(3 * n as u32));
    }
}

#[test]
fn character_tables_square_sum_to_order() {
    for g in groups() {
        let t = character_table(&g).unwrap();
        let s: u64 = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(s, g.order() as u64);
        assert_eq!(t.len(), conjugacy_classes(&g).len());
    }
}

/// Counting the identity in every class: Σ |classes| = |G| and the sizes
/// divide |G|.
#[test]
fn class_sizes_divide_order() {
    for g in groups() {
        let c = conjugacy_classes(&g);
        assert_eq!(c.class_sizes.iter().sum::<usize>(), g.order());
        assert!(c.class_sizes.iter().all(|s| g.order() % s == 0));
    }
}

fn subgroup(g: &ConcreteGroup, seeds: &[usize]) -> Subgroup {
    let s: Vec<usize> = seeds.iter().map(|x| x % g.order()).collect();
    Subgroup::generated(g, &s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lagrange(which in 0usize..4, seeds in prop::collection::vec(0usize..10_000, 0..3)) {
        let g = &groups()[which];
        let h = subgroup(g, &seeds);
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert_eq!(coset_table(g, &h).unwrap().index() * h.order(), g.order());
    }

    #[test]
    fn conjugation_preserves_classes(which in 0usize..4, w in 0usize..10_000, xs in prop::collection::vec(0usize..10_000, 1..20)) {
        let g = &groups()[which];
        let c = conjugacy_classes(g);
        let w = w % g.order();
        for x in xs {
            let x = x % g.order();
            prop_assert_eq!(c.class_of[g.conj(x, w)], c.class_of[x]);
        }
    }

    /// The permutation character on G/H is Σ_χ dim Fix(χ|_H)·χ, so
    /// Σ deg χ · dim Fix(χ|_H) = [G:H].
    #[test]
    fn fixed_dims_count_cosets(which in 0usize..4, seeds in prop::collection::vec(0usize..10_000, 0..3)) {
        let g = &groups()[which];
        let h = subgroup(g, &seeds);
        let t = character_table(g).unwrap();
        let total: u64 = (0..t.len()).map(|chi| t.degrees[chi] * fixed_space_dim(g, chi, &h).unwrap()).sum();
        prop_assert_eq!(total as usize, g.order() / h.order());
    }

    /// Orbits of ⟨x⟩ on the cosets partition them, and each orbit length
    /// divides the order of x.
    #[test]
    fn coset_orbits_partition(which in 0usize..4, seeds in prop::collection::vec(0usize..10_000, 0..3), x in 0usize..10_000) {
        let g = &groups()[which];
        let h = subgroup(g, &seeds);
        let t = coset_table(g, &h).unwrap();
        let x = x % g.order();
        let ct = sunada::covers::coset_cycle_type(&t, x);
        prop_assert_eq!(ct.iter().map(|(len, n)| len * n).sum::<usize>(), t.index());
        let o = element_order(g, x) as usize;
        prop_assert!(ct.keys().all(|len| o % len == 0));
    }
}
