//! Trace spectra of finite covers M_H → M, where π₁(M) is a free subgroup of
//! Γ(2) and the cover is the pullback of H ≤ G along φ: π₁(M) → G.
//!
//! Geodesics are recorded by absolute trace; length 2·arccosh(|tr|/2) is
//! monotone in |tr|, so equality of trace multisets is equality of length
//! multisets.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::de::Deserializer;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::base::{abs_power_trace, is_hyperbolic, FreeBase};
use super::floor::class_counts_by_trace;
use super::words::{classes_of_length, CyclicClass, FreeWord};
use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::group::{coset_table, ConcreteGroup, CosetTable, Subgroup};

/// φ: F_r → G given by the images of the free generators.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    target: ConcreteGroup,
    images: Vec<usize>,
}

impl Homomorphism {
    /// Fails with [`Error::NotGenerating`] unless the images generate G.
    pub fn new(target: &ConcreteGroup, images: &[usize]) -> Result<Self> {
        if images.iter().any(|&x| x >= target.order()) {
            return Err(Error::NotInGroup);
        }
        if Subgroup::generated(target, images)?.order() != target.order() {
            return Err(Error::NotGenerating);
        }
        Ok(Homomorphism { target: target.clone(), images: images.to_vec() })
    }

    /// a ↦ `a`, b ↦ `b`.
    pub fn from_pair(target: &ConcreteGroup, a: usize, b: usize) -> Result<Self> {
        Self::new(target, &[a, b])
    }

    pub fn target(&self) -> &ConcreteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image_a(&self) -> usize {
        self.images[0]
    }

    pub fn image_b(&self) -> usize {
        self.images[1]
    }

    pub fn apply(&self, w: &FreeWord) -> Result<usize> {
        let g = &self.target;
        let mut x = g.identity();
        for &l in &w.letters {
            let y = *self
                .images
                .get(l as usize / 2)
                .ok_or_else(|| Error::InvalidArgument(format!("letter {l} beyond rank")))?;
            x = g.mul(x, if l & 1 == 0 { y } else { g.inv(y) });
        }
        Ok(x)
    }
}

/// Hyperbolic classes of the base up to length L with their traces, and
/// the computed completeness floor.
///
/// The floor is the least |tr| of any class longer than L. It is found by
/// counting classes per trace independently of word length
/// ([`class_counts_by_trace`]) and locating the first trace whose count
/// exceeds the number of classes of length ≤ L. Below the floor the two
/// counts must agree exactly, which is checked.
#[derive(Debug, Clone)]
pub struct BaseCatalog {
    pub base: FreeBase,
    pub cutoff: usize,
    /// Primitive hyperbolic classes of length ≤ L and |tr|.
    pub classes: Vec<(CyclicClass, BigInt)>,
    /// Least hyperbolic |tr| at each length 0..=L+1 (None when every class
    /// of that length is parabolic).
    pub min_trace_by_length: Vec<Option<BigInt>>,
    /// Least |tr| at length L + 1, an upper bound for the floor.
    pub observed_floor: BigInt,
    /// No class of length > L has |tr| below this.
    pub floor: BigInt,
}

impl BaseCatalog {
    pub fn new(base: &FreeBase, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidArgument("word length cutoff must be at least 1".into()));
        }
        caps::check("word length", l as u128, Caps::current().word_length as u128)?;
        if *base != FreeBase::of_rank(base.rank())? {
            return Err(Error::InvalidArgument("floor computation needs a standard base".into()));
        }
        let rank = base.rank();
        let mut classes = Vec::new();
        let mut short_counts: BTreeMap<i128, u64> = BTreeMap::new();
        let mut mins = vec![None];
        for len in 1..=l + 1 {
            let traced: Vec<(CyclicClass, i128)> = classes_of_length(rank, len)
                .into_par_iter()
                .map(|c| base.trace(&c.canonical).map(|t| (c, t.abs())))
                .collect::<Result<Vec<_>>>()?;
            let min = traced.iter().filter(|(_, t)| is_hyperbolic(*t)).map(|(_, t)| *t).min();
            mins.push(min.map(BigInt::from));
            if len <= l {
                for (_, t) in traced.iter().filter(|(_, t)| is_hyperbolic(*t)) {
                    *short_counts.entry(*t).or_insert(0) += 1;
                }
                classes.extend(
                    traced
                        .into_iter()
                        .filter(|(c, t)| c.primitive && is_hyperbolic(*t))
                        .map(|(c, t)| (c, BigInt::from(t))),
                );
            }
        }
        let observed = mins[l + 1]
            .clone()
            .ok_or_else(|| Error::Internal(format!("no hyperbolic class of length {}", l + 1)))?;
        let observed_i: i128 = (&observed).try_into().map_err(|_| Error::Internal("trace overflow".into()))?;
        let by_trace = class_counts_by_trace(rank, observed_i)?;
        let mut floor = None;
        for (&t, &expected) in &by_trace {
            let have = short_counts.get(&t).copied().unwrap_or(0);
            if expected < have {
                return Err(Error::Internal(format!(
                    "trace {t}: {have} classes enumerated but only {expected} exist"
                )));
            }
            if expected > have {
                floor = Some(t);
                break;
            }
        }
        let floor = floor.ok_or_else(|| {
            Error::Internal(format!("length {} class of trace {observed} not accounted for", l + 1))
        })?;
        if short_counts.keys().any(|&t| t < floor && !by_trace.contains_key(&t)) {
            return Err(Error::Internal("enumerated trace missing from trace count".into()));
        }
        Ok(BaseCatalog {
            base: base.clone(),
            cutoff: l,
            classes,
            min_trace_by_length: mins,
            observed_floor: observed,
            floor: BigInt::from(floor),
        })
    }

    /// Whether the least hyperbolic trace is nondecreasing in length from
    /// length 2 up to L + 1.
    pub fn least_trace_monotone(&self) -> bool {
        let present: Vec<&BigInt> = self.min_trace_by_length.iter().skip(2).flatten().collect();
        present.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Cycle lengths of x acting on right cosets, with multiplicities.
pub fn coset_cycle_type(table: &CosetTable, x: usize) -> BTreeMap<usize, usize> {
    let n = table.index();
    let mut seen = vec![false; n];
    let mut out = BTreeMap::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut c = start;
        let mut len = 0;
        while !seen[c] {
            seen[c] = true;
            c = table.act(c, x);
            len += 1;
        }
        *out.entry(len).or_insert(0) += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    /// Primitive cover geodesics only.
    Primitive,
    /// Primitive geodesics and their powers (powers kept below the floor).
    All,
}

/// Absolute trace ↦ multiplicity for a cover, complete below `floor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSpectrum {
    pub kind: SpectrumKind,
    pub cutoff: usize,
    pub floor: BigInt,
    /// Degree of the cover, [G:H].
    pub degree: usize,
    pub entries: BTreeMap<BigInt, u64>,
}

impl TraceSpectrum {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Entries with trace strictly below `bound`.
    pub fn below(&self, bound: &BigInt) -> impl Iterator<Item = (&BigInt, &u64)> {
        self.entries.range(..bound.clone())
    }
}

impl Serialize for TraceSpectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a BTreeMap<BigInt, u64>);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(&k.to_string(), v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("kind", &self.kind)?;
        m.serialize_entry("L", &self.cutoff)?;
        m.serialize_entry("floor", &self.floor.to_string())?;
        m.serialize_entry("degree", &self.degree)?;
        m.serialize_entry("entries", &Entries(&self.entries))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for TraceSpectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            kind: SpectrumKind,
            #[serde(rename = "L")]
            cutoff: usize,
            floor: String,
            degree: usize,
            entries: BTreeMap<String, u64>,
        }
        let raw = Raw::deserialize(d)?;
        let big = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        let mut entries = BTreeMap::new();
        for (k, v) in raw.entries {
            entries.insert(big(&k)?, v);
        }
        Ok(TraceSpectrum {
            kind: raw.kind,
            cutoff: raw.cutoff,
            floor: big(&raw.floor)?,
            degree: raw.degree,
            entries,
        })
    }
}

/// Primitive trace spectrum of M_H over the Γ(2) base, classes up to
/// length L.
pub fn cover_trace_spectrum(
    g: &ConcreteGroup,
    h: &Subgroup,
    phi: &Homomorphism,
    l: usize,
) -> Result<TraceSpectrum> {
    let base = FreeBase::of_rank(phi.rank())?;
    let catalog = BaseCatalog::new(&base, l)?;
    spectrum_from_catalog(&catalog, g, h, phi, SpectrumKind::Primitive)
}

pub fn spectrum_from_catalog(
    catalog: &BaseCatalog,
    g: &ConcreteGroup,
    h: &Subgroup,
    phi: &Homomorphism,
    kind: SpectrumKind,
) -> Result<TraceSpectrum> {
    if !phi.target().same_as(g) {
        return Err(Error::NotASubgroup);
    }
    if phi.rank() != catalog.base.rank() {
        return Err(Error::DimensionMismatch(format!(
            "homomorphism has rank {}, base has rank {}",
            phi.rank(),
            catalog.base.rank()
        )));
    }
    let table = coset_table(g, h)?;
    let floor = &catalog.floor;
    let partial: Vec<BTreeMap<BigInt, u64>> = catalog
        .classes
        .par_iter()
        .map(|(class, t)| -> Result<BTreeMap<BigInt, u64>> {
            let x = phi.apply(&class.canonical)?;
            let cycles = coset_cycle_type(&table, x);
            let mut out = BTreeMap::new();
            for (&m, &count) in &cycles {
                let tm = abs_power_trace(t, m as u64);
                if kind == SpectrumKind::All {
                    let mut k = 2u64;
                    loop {
                        let tp = abs_power_trace(t, m as u64 * k);
                        if &tp >= floor {
                            break;
                        }
                        *out.entry(tp).or_insert(0) += count as u64;
                        k += 1;
                    }
                }
                *out.entry(tm).or_insert(0) += count as u64;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = BTreeMap::new();
    for part in partial {
        for (k, v) in part {
            *entries.entry(k).or_insert(0) += v;
        }
    }
    Ok(TraceSpectrum {
        kind,
        cutoff: catalog.cutoff,
        floor: floor.clone(),
        degree: table.index(),
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    MultisetAll,
    SetAll,
    SetPrimitive,
    MultisetPrimitive,
}

impl CompareMode {
    pub const ALL: [CompareMode; 4] =
        [CompareMode::MultisetAll, CompareMode::SetAll, CompareMode::SetPrimitive, CompareMode::MultisetPrimitive];

    pub fn name(self) -> &'static str {
        match self {
            CompareMode::MultisetAll => "multiset_all",
            CompareMode::SetAll => "set_all",
            CompareMode::SetPrimitive => "set_primitive",
            CompareMode::MultisetPrimitive => "multiset_primitive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn kind(self) -> SpectrumKind {
        match self {
            CompareMode::MultisetAll | CompareMode::SetAll => SpectrumKind::All,
            _ => SpectrumKind::Primitive,
        }
    }

    pub fn is_multiset(self) -> bool {
        matches!(self, CompareMode::MultisetAll | CompareMode::MultisetPrimitive)
    }
}

impl fmt::Display for CompareMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub trace: String,
    pub left: u64,
    pub right: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumComparison {
    pub mode: CompareMode,
    pub equal: bool,
    /// Traces strictly below this value were compared.
    pub window: String,
    pub compared_entries: [usize; 2],
    pub degrees: [usize; 2],
    pub first_divergence: Option<Divergence>,
}

pub fn compare_spectra(s1: &TraceSpectrum, s2: &TraceSpectrum, mode: CompareMode) -> Result<SpectrumComparison> {
    if s1.cutoff != s2.cutoff {
        return Err(Error::CutoffMismatch(s1.cutoff, s2.cutoff));
    }
    if s1.kind != mode.kind() || s2.kind != mode.kind() {
        return Err(Error::KindMismatch(mode.name().into()));
    }
    let window = (&s1.floor).min(&s2.floor).clone();
    let left: BTreeMap<&BigInt, u64> = s1.below(&window).map(|(k, v)| (k, *v)).collect();
    let right: BTreeMap<&BigInt, u64> = s2.below(&window).map(|(k, v)| (k, *v)).collect();
    let mut keys: Vec<&BigInt> = left.keys().chain(right.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let first_divergence = keys.into_iter().find_map(|k| {
        let a = left.get(k).copied().unwrap_or(0);
        let b = right.get(k).copied().unwrap_or(0);
        let differs = if mode.is_multiset() { a != b } else { (a > 0) != (b > 0) };
        differs.then(|| Divergence { trace: k.to_string(), left: a, right: b })
    });
    Ok(SpectrumComparison {
        mode,
        equal: first_divergence.is_none(),
        window: window.to_string(),
        compared_entries: [left.len(), right.len()],
        degrees: [s1.degree, s2.degree],
        first_divergence,
    })
}
