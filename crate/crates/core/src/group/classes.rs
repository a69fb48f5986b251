//! Conjugacy classes by orbit computation under conjugation by generators.

use serde::{Deserialize, Serialize};

use super::concrete::{element_order, ConcreteGroup};

/// Partition of G into conjugacy classes.
///
/// Classes are numbered by their least element index, so class 0 is {1}.
/// For every x, `witness[x]` is some w with w⁻¹·rep·w = x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClassPartition {
    pub class_of: Vec<u32>,
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub witness: Vec<u32>,
    /// Order of the elements in each class.
    pub class_orders: Vec<u64>,
    /// Class of the inverses of each class.
    pub inverse_class: Vec<usize>,
}

impl ConjugacyClassPartition {
    pub fn len(&self) -> usize {
        self.class_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_reps.is_empty()
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|(_, &k)| k as usize == c)
            .map(|(i, _)| i)
            .collect()
    }

    /// Members of every class, each list ascending.
    pub fn all_members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(i);
        }
        out
    }
}

pub fn conjugacy_classes(g: &ConcreteGroup) -> &ConjugacyClassPartition {
    g.0.classes.get_or_init(|| compute(g))
}

fn compute(g: &ConcreteGroup) -> ConjugacyClassPartition {
    let n = g.order();
    let gens: Vec<(usize, usize)> = g.generators().iter().map(|&s| (s, g.inv(s))).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut witness = vec![0u32; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(start);
        class_of[start] = c;
        witness[start] = 0;
        let mut size = 1;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for &(s, si) in &gens {
                let y = g.mul(g.mul(si, x), s);
                if class_of[y] == u32::MAX {
                    class_of[y] = c;
                    witness[y] = g.mul(witness[x] as usize, s) as u32;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    let class_orders = reps.iter().map(|&r| element_order(g, r)).collect();
    let inverse_class = reps.iter().map(|&r| class_of[g.inv(r)] as usize).collect();
    ConjugacyClassPartition {
        class_of,
        class_reps: reps,
        class_sizes: sizes,
        witness,
        class_orders,
        inverse_class,
    }
}

/// Least common multiple of the element orders.
pub fn exponent(g: &ConcreteGroup) -> u64 {
    use num_integer::Integer;
    conjugacy_classes(g)
        .class_orders
        .iter()
        .fold(1u64, |acc, &o| acc.lcm(&o))
}
