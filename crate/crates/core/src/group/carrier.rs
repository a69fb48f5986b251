//! Concrete element representations that can be closed into a
//! [`ConcreteGroup`](super::ConcreteGroup).

use crate::algebra::finite_field::FieldDescriptor;
use crate::error::{Error, Result};

/// A set of elements with a group law and a canonical byte encoding.
///
/// Two elements are considered equal exactly when their encodings agree.
pub trait GroupCarrier {
    type Elem: Clone;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn encode(&self, a: &Self::Elem) -> Vec<u8>;
}

fn encode_u16s<I: IntoIterator<Item = u32>>(it: I) -> Vec<u8> {
    it.into_iter()
        .flat_map(|x| (x as u16).to_le_bytes())
        .collect()
}

/// Permutations of {0, …, n−1}; `a * b` applies `a` first.
#[derive(Debug, Clone)]
pub struct PermutationCarrier {
    pub degree: usize,
}

impl PermutationCarrier {
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 || degree > u16::MAX as usize {
            return Err(Error::InvalidArgument(format!("permutation degree {degree}")));
        }
        Ok(PermutationCarrier { degree })
    }

    /// Permutation from cycles written with 1-based points, e.g. `[[1, 2, 3]]`.
    pub fn from_cycles(&self, cycles: &[Vec<usize>]) -> Result<Vec<u32>> {
        let mut img: Vec<u32> = (0..self.degree as u32).collect();
        let mut seen = vec![false; self.degree];
        for cyc in cycles {
            for (i, &pt) in cyc.iter().enumerate() {
                if pt == 0 || pt > self.degree || seen[pt - 1] {
                    return Err(Error::InvalidArgument(format!("bad cycle point {pt}")));
                }
                seen[pt - 1] = true;
                img[pt - 1] = (cyc[(i + 1) % cyc.len()] - 1) as u32;
            }
        }
        Ok(img)
    }

    /// Validates an image list (0-based).
    pub fn from_images(&self, images: &[usize]) -> Result<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        if images.len() != self.degree {
            return Err(Error::InvalidArgument("permutation length".into()));
        }
        for &x in images {
            if x >= self.degree || seen[x] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(images.iter().map(|&x| x as u32).collect())
    }
}

impl GroupCarrier for PermutationCarrier {
    type Elem = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        (0..self.degree as u32).collect()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| b[x as usize]).collect()
    }

    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        out
    }

    fn encode(&self, a: &Vec<u32>) -> Vec<u8> {
        encode_u16s(a.iter().copied())
    }
}

/// Integers modulo n under addition.
#[derive(Debug, Clone)]
pub struct CyclicCarrier {
    pub n: u64,
}

impl GroupCarrier for CyclicCarrier {
    type Elem = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }

    fn inv(&self, a: &u64) -> u64 {
        (self.n - a % self.n) % self.n
    }

    fn encode(&self, a: &u64) -> Vec<u8> {
        a.to_le_bytes().to_vec()
    }
}

/// Addition and multiplication tables of F_q on element indices.
#[derive(Debug, Clone)]
pub struct FieldTables {
    pub field: FieldDescriptor,
    pub q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

pub const FIELD_TABLE_LIMIT: u64 = 1024;

impl FieldTables {
    pub fn new(field: &FieldDescriptor) -> Result<Self> {
        let q = field.order();
        if q > FIELD_TABLE_LIMIT {
            return Err(Error::CapExceeded {
                what: "field size for matrix carriers".into(),
                value: q as u128,
                cap: FIELD_TABLE_LIMIT as u128,
            });
        }
        let q = q as usize;
        let elems: Vec<_> = field.elements().collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = field.index_of(&field.add(&elems[i], &elems[j])) as u32;
                mul[i * q + j] = field.index_of(&field.mul(&elems[i], &elems[j])) as u32;
            }
        }
        let neg = elems.iter().map(|a| field.index_of(&field.neg(a)) as u32).collect();
        let inv = elems
            .iter()
            .map(|a| field.inv(a).map_or(0, |b| field.index_of(&b) as u32))
            .collect();
        Ok(FieldTables { field: field.clone(), q, add, mul, neg, inv })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero element (0 maps to 0).
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn one(&self) -> u32 {
        1
    }
}

/// Invertible d×d matrices over F_q, row-major, entries as field indices.
#[derive(Debug, Clone)]
pub struct MatrixCarrier {
    pub tables: FieldTables,
    pub dim: usize,
}

impl MatrixCarrier {
    pub fn new(field: &FieldDescriptor, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension 0".into()));
        }
        Ok(MatrixCarrier { tables: FieldTables::new(field)?, dim })
    }

    /// Matrix from rows of field-element indices; must be invertible.
    pub fn from_rows(&self, rows: &[Vec<u64>]) -> Result<Vec<u32>> {
        if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
            return Err(Error::NotSquare {
                rows: rows.len(),
                cols: rows.first().map_or(0, |r| r.len()),
            });
        }
        let m: Vec<u32> = rows
            .iter()
            .flatten()
            .map(|&x| {
                if (x as usize) < self.tables.q {
                    Ok(x as u32)
                } else {
                    Err(Error::InvalidArgument(format!("entry {x} outside F_{}", self.tables.q)))
                }
            })
            .collect::<Result<_>>()?;
        if self.invert(&m).is_none() {
            return Err(Error::InvalidArgument("matrix is singular".into()));
        }
        Ok(m)
    }

    pub fn invert(&self, m: &[u32]) -> Option<Vec<u32>> {
        invert_matrix(&self.tables, m, self.dim)
    }

    pub fn determinant(&self, m: &[u32]) -> u32 {
        determinant(&self.tables, m, self.dim)
    }
}

pub(crate) fn mat_mul(t: &FieldTables, a: &[u32], b: &[u32], d: usize) -> Vec<u32> {
    let mut out = vec![0u32; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == 0 {
                continue;
            }
            for j in 0..d {
                let prod = t.mul(aik, b[k * d + j]);
                out[i * d + j] = t.add(out[i * d + j], prod);
            }
        }
    }
    out
}

pub(crate) fn mat_vec(t: &FieldTables, a: &[u32], v: &[u32], d: usize) -> Vec<u32> {
    (0..d)
        .map(|i| (0..d).fold(0, |acc, k| t.add(acc, t.mul(a[i * d + k], v[k]))))
        .collect()
}

pub(crate) fn invert_matrix(t: &FieldTables, m: &[u32], d: usize) -> Option<Vec<u32>> {
    let w = 2 * d;
    let mut aug = vec![0u32; d * w];
    for i in 0..d {
        aug[i * w..i * w + d].copy_from_slice(&m[i * d..(i + 1) * d]);
        aug[i * w + d + i] = 1;
    }
    for col in 0..d {
        let piv = (col..d).find(|&r| aug[r * w + col] != 0)?;
        if piv != col {
            for j in 0..w {
                aug.swap(piv * w + j, col * w + j);
            }
        }
        let s = t.inv(aug[col * w + col]);
        for j in 0..w {
            aug[col * w + j] = t.mul(s, aug[col * w + j]);
        }
        for r in 0..d {
            let f = aug[r * w + col];
            if r != col && f != 0 {
                for j in 0..w {
                    let sub = t.mul(f, aug[col * w + j]);
                    aug[r * w + j] = t.sub(aug[r * w + j], sub);
                }
            }
        }
    }
    Some((0..d).flat_map(|i| aug[i * w + d..(i + 1) * w].to_vec()).collect())
}

pub(crate) fn determinant(t: &FieldTables, m: &[u32], d: usize) -> u32 {
    let mut a = m.to_vec();
    let mut det = 1u32;
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| a[r * d + col] != 0) else {
            return 0;
        };
        if piv != col {
            for j in 0..d {
                a.swap(piv * d + j, col * d + j);
            }
            det = t.neg(det);
        }
        let p = a[col * d + col];
        det = t.mul(det, p);
        let s = t.inv(p);
        for r in col + 1..d {
            let f = t.mul(a[r * d + col], s);
            if f != 0 {
                for j in col..d {
                    let sub = t.mul(f, a[col * d + j]);
                    a[r * d + j] = t.sub(a[r * d + j], sub);
                }
            }
        }
    }
    det
}

impl GroupCarrier for MatrixCarrier {
    type Elem = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        let d = self.dim;
        (0..d * d).map(|k| u32::from(k / d == k % d)).collect()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        mat_mul(&self.tables, a, b, self.dim)
    }

    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        self.invert(a).expect("carrier elements are invertible")
    }

    fn encode(&self, a: &Vec<u32>) -> Vec<u8> {
        encode_u16s(a.iter().copied())
    }
}

/// Triples (x, y, t) over F_q with (x,y,t)(x',y',t') = (x+x', y+y', t+t'+x y'),
/// i.e. the unitriangular matrix [[1,x,t],[0,1,y],[0,0,1]].
#[derive(Debug, Clone)]
pub struct HeisenbergCarrier {
    pub tables: FieldTables,
}

impl GroupCarrier for HeisenbergCarrier {
    type Elem = [u32; 3];

    fn identity(&self) -> [u32; 3] {
        [0, 0, 0]
    }

    fn mul(&self, a: &[u32; 3], b: &[u32; 3]) -> [u32; 3] {
        let t = &self.tables;
        [
            t.add(a[0], b[0]),
            t.add(a[1], b[1]),
            t.add(t.add(a[2], b[2]), t.mul(a[0], b[1])),
        ]
    }

    fn inv(&self, a: &[u32; 3]) -> [u32; 3] {
        let t = &self.tables;
        [t.neg(a[0]), t.neg(a[1]), t.sub(t.mul(a[0], a[1]), a[2])]
    }

    fn encode(&self, a: &[u32; 3]) -> Vec<u8> {
        encode_u16s(a.iter().copied())
    }
}

/// Pairs (v, M) with v ∈ F_p^n and M ∈ GL(n, F_p), product
/// (v, M)(w, N) = (v + M w, M N). Stored flat as v followed by M row-major.
#[derive(Debug, Clone)]
pub struct AffineCarrier {
    pub tables: FieldTables,
    pub n: usize,
}

impl AffineCarrier {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        let field = FieldDescriptor::new(p, 1)?;
        Ok(AffineCarrier { tables: FieldTables::new(&field)?, n })
    }

    pub fn split<'a>(&self, a: &'a [u32]) -> (&'a [u32], &'a [u32]) {
        a.split_at(self.n)
    }

    pub fn pack(&self, v: &[u32], m: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        out.extend_from_slice(m);
        out
    }

    /// The (n+1)×(n+1) matrix [[M, v], [0, 1]].
    pub fn to_projective_matrix(&self, a: &[u32]) -> Vec<u32> {
        let n = self.n;
        let (v, m) = self.split(a);
        let d = n + 1;
        let mut out = vec![0u32; d * d];
        for i in 0..n {
            out[i * d..i * d + n].copy_from_slice(&m[i * n..(i + 1) * n]);
            out[i * d + n] = v[i];
        }
        out[d * d - 1] = 1;
        out
    }
}

impl GroupCarrier for AffineCarrier {
    type Elem = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0u32; n];
        out.extend((0..n * n).map(|k| u32::from(k / n == k % n)));
        out
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let t = &self.tables;
        let (v, m) = self.split(a);
        let (w, nm) = self.split(b);
        let mw = mat_vec(t, m, w, self.n);
        let sum: Vec<u32> = v.iter().zip(&mw).map(|(&x, &y)| t.add(x, y)).collect();
        self.pack(&sum, &mat_mul(t, m, nm, self.n))
    }

    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        let t = &self.tables;
        let (v, m) = self.split(a);
        let mi = invert_matrix(t, m, self.n).expect("invertible linear part");
        let w: Vec<u32> = mat_vec(t, &mi, v, self.n).into_iter().map(|x| t.neg(x)).collect();
        self.pack(&w, &mi)
    }

    fn encode(&self, a: &Vec<u32>) -> Vec<u8> {
        encode_u16s(a.iter().copied())
    }
}
