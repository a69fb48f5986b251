//! Diagonal model forms over number fields: signatures at real embeddings,
//! admissibility, and a bounded search for admissible forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{sign_at_embedding, NumberField, NumberFieldElement};
use crate::error::{Error, Result};

/// B = diag(α₁, …, α_{n+1}) over a number field, with σ₁ the distinguished
/// real embedding at which B has signature (n, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelForm {
    field: NumberField,
    entries: Vec<NumberFieldElement>,
    distinguished: usize,
}

impl ModelForm {
    pub fn diagonal(field: &NumberField, entries: Vec<NumberFieldElement>, distinguished: usize) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidArgument("a model form needs at least two entries".into()));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if entries.iter().any(|e| e.is_zero()) {
            return Err(Error::InvalidArgument("diagonal entries must be nonzero".into()));
        }
        if distinguished >= field.r1() {
            return Err(Error::InvalidArgument(format!(
                "embedding {distinguished} is not one of the {} real embeddings",
                field.r1()
            )));
        }
        let form = ModelForm { field: field.clone(), entries, distinguished };
        let n = form.n();
        let sig = signature_at_embedding(&form, distinguished)?;
        if sig != (n, 1) {
            return Err(Error::InvalidArgument(format!(
                "signature at the distinguished embedding is {sig:?}, not ({n}, 1)"
            )));
        }
        Ok(form)
    }

    /// I_{n,1} over `field`.
    pub fn standard(field: &NumberField, n: usize) -> Result<Self> {
        let mut entries = vec![field.one(); n];
        entries.push(field.from_int(-1));
        Self::diagonal(field, entries, 0)
    }

    /// Diagonalizes a symmetric matrix over the field by symmetric Gaussian
    /// elimination, then checks it is a model form.
    pub fn from_symmetric(
        field: &NumberField,
        matrix: &[Vec<NumberFieldElement>],
        distinguished: usize,
    ) -> Result<Self> {
        Self::diagonal(field, diagonalize_symmetric(matrix)?, distinguished)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn entries(&self) -> &[NumberFieldElement] {
        &self.entries
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    /// Dimension of the hyperbolic space: the form has n + 1 entries.
    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }

    /// B(v, v) = Σ αᵢ vᵢ².
    pub fn value(&self, v: &[NumberFieldElement]) -> Result<NumberFieldElement> {
        if v.len() != self.entries.len() {
            return Err(Error::DimensionMismatch(format!("vector of length {}", v.len())));
        }
        let mut acc = self.field.zero();
        for (a, x) in self.entries.iter().zip(v) {
            acc = acc.add(&a.mul(&x.mul(x)?)?)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            minpoly: self.field.minpoly().coeffs().iter().map(|c| c.to_string()).collect(),
            entries: self.entries.iter().map(|e| e.to_strings()).collect(),
            distinguished: self.distinguished,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub minpoly: Vec<String>,
    /// Power-basis coordinates of each diagonal entry.
    pub entries: Vec<Vec<String>>,
    pub distinguished: usize,
}

/// Diagonal entries of a congruent diagonal form.
pub fn diagonalize_symmetric(matrix: &[Vec<NumberFieldElement>]) -> Result<Vec<NumberFieldElement>> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: matrix.first().map_or(0, |r| r.len()) });
    }
    for i in 0..n {
        for j in 0..i {
            if matrix[i][j] != matrix[j][i] {
                return Err(Error::InvalidArgument("matrix is not symmetric".into()));
            }
        }
    }
    let mut a: Vec<Vec<NumberFieldElement>> = matrix.to_vec();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // e_i ← e_i + e_j makes the pivot 2·a_ij
                for c in 0..n {
                    let v = a[i][c].add(&a[j][c])?;
                    a[i][c] = v;
                }
                for r in 0..n {
                    let v = a[r][i].add(&a[r][j])?;
                    a[r][i] = v;
                }
            } else {
                return Err(Error::InvalidArgument("form is degenerate".into()));
            }
        }
        let pivot_inv = a[i][i].inv()?;
        for k in i + 1..n {
            if a[k][i].is_zero() {
                continue;
            }
            let f = a[k][i].mul(&pivot_inv)?;
            for c in i..n {
                let v = a[k][c].sub(&f.mul(&a[i][c])?)?;
                a[k][c] = v;
            }
            for r in i..n {
                let v = a[r][k].sub(&f.mul(&a[r][i])?)?;
                a[r][k] = v;
            }
        }
        diag.push(a[i][i].clone());
    }
    Ok(diag)
}

/// (p, q): entries positive and negative at real embedding `j`.
pub fn signature_at_embedding(b: &ModelForm, j: usize) -> Result<(usize, usize)> {
    let e = b
        .field
        .embeddings()
        .get(j)
        .ok_or_else(|| Error::InvalidArgument(format!("no real embedding {j}")))?;
    let (mut p, mut q) = (0, 0);
    for a in &b.entries {
        match sign_at_embedding(a, e)? {
            1 => p += 1,
            -1 => q += 1,
            _ => return Err(Error::Internal("nonzero entry vanishes at an embedding".into())),
        }
    }
    Ok((p, q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub distinguished: usize,
    /// (p_j, q_j) for every real embedding, in embedding order.
    pub signatures: Vec<(usize, usize)>,
}

/// Signature (n, 1) at σ₁ and (n + 1, 0) at every other real embedding.
pub fn is_admissible(b: &ModelForm) -> Result<AdmissibilityReport> {
    if !b.field.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let n = b.n();
    let signatures = (0..b.field.r1())
        .map(|j| signature_at_embedding(b, j))
        .collect::<Result<Vec<_>>>()?;
    let admissible = signatures.iter().enumerate().all(|(j, &s)| {
        if j == b.distinguished {
            s == (n, 1)
        } else {
            s == (n + 1, 0)
        }
    });
    Ok(AdmissibilityReport { admissible, distinguished: b.distinguished, signatures })
}

/// Elements of Z[θ] with coordinate height exactly `h` (max |cᵢ| = h), in
/// lexicographic order of coordinates, integers ordered 0, 1, −1, 2, −2, ….
pub fn elements_of_height(field: &NumberField, h: i64) -> Vec<NumberFieldElement> {
    let d = field.degree();
    let mut values: Vec<i64> = (-h..=h).collect();
    values.sort_by_key(|&c| (c.abs(), c < 0));
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let coords: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        if coords.iter().map(|c| c.abs()).max() == Some(h) {
            out.push(
                field
                    .element(coords.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
                    .expect("degree-many coordinates"),
            );
        }
        // odometer, last coordinate fastest
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// diag(α, …, α, β) with α the first totally positive element and β the
/// first element negative at σ₁ (embedding 0) and positive elsewhere, in
/// the order of [`elements_of_height`] for heights 1..=`height`. `None`
/// means the bound was exhausted, not that no admissible form exists.
pub fn search_admissible_diagonal(field: &NumberField, n: usize, height: u64) -> Result<Option<ModelForm>> {
    if !field.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut alpha: Option<NumberFieldElement> = None;
    let mut beta: Option<NumberFieldElement> = None;
    for h in 1..=height as i64 {
        for x in elements_of_height(field, h) {
            let signs = field
                .embeddings()
                .iter()
                .map(|e| sign_at_embedding(&x, e))
                .collect::<Result<Vec<i8>>>()?;
            if alpha.is_none() && signs.iter().all(|&s| s == 1) {
                alpha = Some(x.clone());
            }
            if beta.is_none() && signs[0] == -1 && signs[1..].iter().all(|&s| s == 1) {
                beta = Some(x);
            }
        }
        if let (Some(a), Some(b)) = (&alpha, &beta) {
            let mut entries = vec![a.clone(); n];
            entries.push(b.clone());
            return ModelForm::diagonal(field, entries, 0).map(Some);
        }
    }
    Ok(None)
}
