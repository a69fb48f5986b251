//! Heisenberg groups N₃(F_q) and their twisted horizontal subgroups.

use serde::{Deserialize, Serialize};

use crate::algebra::finite_field::{FieldDescriptor, FieldElement};
use crate::algebra::linalg::rref;
use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::group::{ConcreteGroup, FieldTables, HeisenbergCarrier, Subgroup};

/// N₃(F_q): unitriangular matrices [[1,x,t],[0,1,y],[0,0,1]].
#[derive(Debug, Clone)]
pub struct HeisenbergGroup {
    pub group: ConcreteGroup,
    pub field: FieldDescriptor,
    carrier: HeisenbergCarrier,
}

/// An F_p-linear endomorphism of F_q as an n×n matrix acting on power-basis
/// coordinate vectors (rows index output coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistMap {
    pub matrix: Vec<Vec<u64>>,
}

impl TwistMap {
    pub fn zero(n: usize) -> Self {
        TwistMap { matrix: vec![vec![0; n]; n] }
    }

    /// x ↦ c·x
    pub fn multiplication(field: &FieldDescriptor, c: &FieldElement) -> Self {
        TwistMap { matrix: field.multiplication_matrix(c) }
    }

    /// x ↦ x^p, which is F_p-linear but F_q-linear only when n = 1.
    pub fn frobenius(field: &FieldDescriptor) -> Self {
        let n = field.n;
        let cols: Vec<FieldElement> = (0..n).map(|j| field.frobenius(&field.basis(j))).collect();
        TwistMap {
            matrix: (0..n).map(|i| cols.iter().map(|c| c.coeffs[i]).collect()).collect(),
        }
    }

    pub fn apply(&self, field: &FieldDescriptor, x: &FieldElement) -> FieldElement {
        field.apply_linear(&self.matrix, x)
    }

    pub fn sub(&self, other: &TwistMap, p: u64) -> TwistMap {
        TwistMap {
            matrix: self
                .matrix
                .iter()
                .zip(&other.matrix)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect())
                .collect(),
        }
    }

    fn flat(&self) -> Vec<u64> {
        self.matrix.iter().flatten().copied().collect()
    }

    fn from_flat(v: &[u64], n: usize) -> Self {
        TwistMap { matrix: v.chunks(n).map(|r| r.to_vec()).collect() }
    }

    /// Whether the map is multiplication by some element of F_q.
    pub fn is_multiplication(&self, field: &FieldDescriptor) -> bool {
        // such a map is determined by the image of 1
        let c = self.apply(field, &field.one());
        TwistMap::multiplication(field, &c) == *self
    }
}

pub fn heisenberg_group(p: u64, n: usize) -> Result<HeisenbergGroup> {
    let field = FieldDescriptor::new(p, n)?;
    let q = field.order() as u128;
    caps::check("Heisenberg group order", q * q * q, Caps::current().closure as u128)?;
    let carrier = HeisenbergCarrier { tables: FieldTables::new(&field)? };
    let mut gens = Vec::new();
    for i in 0..n {
        let b = field.index_of(&field.basis(i)) as u32;
        gens.push([b, 0, 0]);
        gens.push([0, b, 0]);
    }
    let label = format!("heisenberg(p={p}, n={n})");
    let group = ConcreteGroup::generate(&carrier, &gens, usize::MAX, &label)?;
    Ok(HeisenbergGroup { group, field, carrier })
}

impl HeisenbergGroup {
    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn index(&self, x: &FieldElement, y: &FieldElement, t: &FieldElement) -> usize {
        let f = &self.field;
        let e = [f.index_of(x) as u32, f.index_of(y) as u32, f.index_of(t) as u32];
        self.group.find(&self.carrier, &e).expect("all triples lie in N₃")
    }

    /// (x, y, t) coordinates of element `i`.
    pub fn coords(&self, i: usize) -> [FieldElement; 3] {
        let bytes = self.group.encoding(i);
        let at = |k: usize| {
            let v = u16::from_le_bytes([bytes[2 * k], bytes[2 * k + 1]]) as u64;
            self.field.element(v)
        };
        [at(0), at(1), at(2)]
    }

    /// The 3×3 matrix of element `i`, entries as field indices.
    pub fn matrix(&self, i: usize) -> [[u64; 3]; 3] {
        let [x, y, t] = self.coords(i).map(|c| self.field.index_of(&c));
        [[1, x, t], [0, 1, y], [0, 0, 1]]
    }

    /// {x = y = 0}
    pub fn center(&self) -> Subgroup {
        let f = &self.field;
        let seeds: Vec<usize> = f.elements().map(|t| self.index(&f.zero(), &f.zero(), &t)).collect();
        Subgroup::generated(&self.group, &seeds).unwrap()
    }

    pub fn carrier(&self) -> &HeisenbergCarrier {
        &self.carrier
    }
}

/// {(x, 0, 0) : x ∈ F_q}
pub fn horizontal_subgroup(h: &HeisenbergGroup) -> Subgroup {
    twisted_horizontal(h, &TwistMap::zero(h.field.n)).unwrap()
}

/// {(x, 0, f(x)) : x ∈ F_q}
pub fn twisted_horizontal(h: &HeisenbergGroup, f: &TwistMap) -> Result<Subgroup> {
    let n = h.field.n;
    if f.matrix.len() != n || f.matrix.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("twist map must be {n}×{n}")));
    }
    if f.matrix.iter().flatten().any(|&c| c >= h.field.p) {
        return Err(Error::InvalidArgument("twist entries must be reduced mod p".into()));
    }
    let fld = &h.field;
    let seeds: Vec<usize> = (0..n)
        .map(|i| {
            let x = fld.basis(i);
            h.index(&x, &fld.zero(), &f.apply(fld, &x))
        })
        .collect();
    Subgroup::generated(&h.group, &seeds)
}

/// The n² coordinates of the multiplication operators span an n-dimensional
/// subspace of Mat(n; F_p). Its reduced echelon basis leaves n² − n
/// non-pivot positions; the standard matrices at those positions span the
/// chosen complement, and every F_p-combination of them is returned, in
/// base-p counting order.
pub fn twist_representatives(p: u64, n: usize) -> Result<Vec<TwistMap>> {
    let field = FieldDescriptor::new(p, n)?;
    let count = (p as u128).checked_pow((n * (n - 1)) as u32).unwrap_or(u128::MAX);
    caps::check("twist representatives", count, Caps::current().closure as u128)?;
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| TwistMap::multiplication(&field, &field.basis(i)).flat())
        .collect();
    let pivots = rref(&mut rows, p);
    debug_assert_eq!(pivots.len(), n);
    let free: Vec<usize> = (0..n * n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(count as usize);
    for code in 0..count as u64 {
        let mut flat = vec![0u64; n * n];
        let mut c = code;
        for &pos in &free {
            flat[pos] = c % p;
            c /= p;
        }
        out.push(TwistMap::from_flat(&flat, n));
    }
    Ok(out)
}

/// Every F_p-linear endomorphism of F_q (p^{n²} of them).
pub fn all_twist_maps(p: u64, n: usize) -> Result<Vec<TwistMap>> {
    let count = (p as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    caps::check("twist maps", count, Caps::current().closure as u128)?;
    Ok((0..count as u64)
        .map(|code| {
            let mut c = code;
            let flat: Vec<u64> = (0..n * n)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect();
            TwistMap::from_flat(&flat, n)
        })
        .collect())
}
