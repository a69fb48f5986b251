//! Fully enumerated finite groups with index-based multiplication.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::carrier::GroupCarrier;
use super::character::CharacterTable;
use super::classes::ConjugacyClassPartition;
use crate::caps::{self, Caps};
use crate::error::{Error, Result};

/// Groups up to this order keep a full Cayley table.
pub const CAYLEY_TABLE_LIMIT: usize = 3000;

const ASSOCIATIVITY_SAMPLES: usize = 1000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550c;

pub(crate) struct GroupData {
    pub(crate) label: String,
    pub(crate) encodings: Vec<Vec<u8>>,
    pub(crate) lookup: HashMap<Vec<u8>, u32>,
    pub(crate) inv: Vec<u32>,
    pub(crate) gens: Vec<usize>,
    /// right[s][i] = index of element_i * gen_s.
    pub(crate) right: Vec<Vec<u32>>,
    /// BFS spanning tree: element i = parent[i] * gens[via[i]].
    parent: Vec<u32>,
    via: Vec<u8>,
    table: Option<Vec<u32>>,
    digest: [u8; 32],
    pub(crate) classes: OnceLock<ConjugacyClassPartition>,
    pub(crate) characters: OnceLock<Result<CharacterTable>>,
}

/// A finite group enumerated as indices 0..N with identity 0.
///
/// Cheap to clone; all tables are shared and immutable.
#[derive(Clone)]
pub struct ConcreteGroup(pub(crate) Arc<GroupData>);

/// Closes `gens` under multiplication, enumerating elements in
/// breadth-first discovery order from the identity.
pub fn generate_group<C: GroupCarrier>(
    carrier: &C,
    gens: &[C::Elem],
    cap: usize,
) -> Result<ConcreteGroup> {
    ConcreteGroup::generate(carrier, gens, cap, "")
}

impl ConcreteGroup {
    pub fn generate<C: GroupCarrier>(
        carrier: &C,
        gens: &[C::Elem],
        cap: usize,
        label: &str,
    ) -> Result<Self> {
        let cap = cap.min(Caps::current().closure);
        if gens.len() > u8::MAX as usize {
            return Err(Error::InvalidArgument("too many generators".into()));
        }
        let e = carrier.identity();
        let e_code = carrier.encode(&e);
        for g in gens {
            let code = carrier.encode(g);
            let ok = carrier.encode(&carrier.mul(&e, g)) == code
                && carrier.encode(&carrier.mul(g, &e)) == code
                && carrier.encode(&carrier.mul(g, &carrier.inv(g))) == e_code;
            if !ok {
                return Err(Error::InconsistentCarrier(
                    "identity or inverse law fails on a generator".into(),
                ));
            }
        }

        let mut elems = vec![e];
        let mut encodings = vec![e_code.clone()];
        let mut lookup: HashMap<Vec<u8>, u32> = HashMap::new();
        lookup.insert(e_code, 0);
        let mut parent = vec![0u32];
        let mut via = vec![0u8];
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let y = carrier.mul(&elems[i], g);
                let code = carrier.encode(&y);
                let j = match lookup.get(&code) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len();
                        caps::check("group order", j as u128 + 1, cap as u128)?;
                        lookup.insert(code.clone(), j as u32);
                        encodings.push(code);
                        elems.push(y);
                        parent.push(i as u32);
                        via.push(s as u8);
                        queue.push_back(j);
                        j as u32
                    }
                };
                right[s].push(j);
            }
        }

        let n = elems.len();
        let mut inv = Vec::with_capacity(n);
        for x in &elems {
            let code = carrier.encode(&carrier.inv(x));
            match lookup.get(&code) {
                Some(&j) => inv.push(j),
                None => {
                    return Err(Error::InconsistentCarrier("inverse escapes closure".into()))
                }
            }
        }
        let gen_idx = gens
            .iter()
            .map(|g| lookup[&carrier.encode(g)] as usize)
            .collect();

        let mut hasher = Sha256::new();
        for code in &encodings {
            hasher.update((code.len() as u32).to_le_bytes());
            hasher.update(code);
        }
        let digest: [u8; 32] = hasher.finalize().into();

        let mut data = GroupData {
            label: label.to_string(),
            encodings,
            lookup,
            inv,
            gens: gen_idx,
            right,
            parent,
            via,
            table: None,
            digest,
            classes: OnceLock::new(),
            characters: OnceLock::new(),
        };
        if n <= CAYLEY_TABLE_LIMIT {
            data.table = Some(build_table(&data));
        }
        let g = ConcreteGroup(Arc::new(data));
        g.verify_laws(carrier, &elems)?;
        Ok(g)
    }

    fn verify_laws<C: GroupCarrier>(&self, carrier: &C, elems: &[C::Elem]) -> Result<()> {
        let n = self.order();
        for i in 0..n {
            if self.mul(i, 0) != i || self.mul(0, i) != i || self.mul(i, self.inv(i)) != 0 {
                return Err(Error::InconsistentCarrier(format!(
                    "group law fails at element {i}"
                )));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::InconsistentCarrier("associativity fails".into()));
            }
            // the index product must agree with the carrier product
            let direct = carrier.encode(&carrier.mul(&elems[a], &elems[b]));
            if direct != self.0.encodings[self.mul(a, b)] {
                return Err(Error::InconsistentCarrier("product is not well defined".into()));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.0.encodings.len()
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.gens
    }

    pub fn encoding(&self, i: usize) -> &[u8] {
        &self.0.encodings[i]
    }

    pub fn index_of(&self, encoding: &[u8]) -> Option<usize> {
        self.0.lookup.get(encoding).map(|&j| j as usize)
    }

    /// Index of a carrier element, if it belongs to the group.
    pub fn find<C: GroupCarrier>(&self, carrier: &C, x: &C::Elem) -> Option<usize> {
        self.index_of(&carrier.encode(x))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.0.table {
            return t[a * self.order() + b] as usize;
        }
        // walk b's spanning-tree word from the root, starting at a
        let mut word = Vec::new();
        let mut x = b;
        while x != 0 {
            word.push(self.0.via[x]);
            x = self.0.parent[x] as usize;
        }
        let mut acc = a;
        for &s in word.iter().rev() {
            acc = self.0.right[s as usize][acc] as usize;
        }
        acc
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    /// g⁻¹ x g
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn digest(&self) -> [u8; 32] {
        self.0.digest
    }

    pub fn digest_hex(&self) -> String {
        hex::encode(self.0.digest)
    }

    pub fn same_as(&self, other: &ConcreteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.digest == other.0.digest
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            label: self.0.label.clone(),
            order: self.order(),
            digest: self.digest_hex(),
            generators: self.0.gens.clone(),
            elements: self.0.encodings.iter().map(hex::encode).collect(),
        }
    }
}

fn build_table(d: &GroupData) -> Vec<u32> {
    let n = d.encodings.len();
    let mut t = vec![0u32; n * n];
    // column 0: a * e = a
    for a in 0..n {
        t[a * n] = a as u32;
    }
    // elements are in BFS order so parent[b] < b is already filled
    for b in 1..n {
        let p = d.parent[b] as usize;
        let r = &d.right[d.via[b] as usize];
        for a in 0..n {
            t[a * n + b] = r[t[a * n + p] as usize];
        }
    }
    t
}

impl fmt::Debug for ConcreteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ConcreteGroup({:?}, order {}, {}…)",
            self.0.label,
            self.order(),
            &self.digest_hex()[..12]
        )
    }
}

/// Serialized form of a group: element encodings as hex strings in index
/// order (identity first), generator indices, and a SHA-256 digest of the
/// encodings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub label: String,
    pub order: usize,
    pub digest: String,
    pub generators: Vec<usize>,
    pub elements: Vec<String>,
}

/// Least m ≥ 1 with g^m = 1.
pub fn element_order(g: &ConcreteGroup, x: usize) -> u64 {
    let mut m = 1;
    let mut y = x;
    while y != 0 {
        y = g.mul(y, x);
        m += 1;
    }
    m
}
