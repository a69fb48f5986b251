//! Cocompactness of the arithmetic lattice attached to a model form.
//!
//! Over F ≠ Q an admissible form always gives a cocompact lattice. Over Q
//! the answer is fixed for large n; for small n it reduces to whether the
//! form (or its trace form over Q for X = C) has a nonzero rational zero,
//! which is decided here only partially: a residue obstruction certifies
//! anisotropy, an explicit zero certifies isotropy.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::model::{is_admissible, ModelForm};
use super::Geometry;
use crate::algebra::NumberField;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cocompactness {
    Cocompact,
    Noncocompact,
    Indeterminate,
}

/// No solution modulo `modulus` has a coordinate prime to `prime`, so the
/// integer form has no primitive zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub modulus: u64,
    pub prime: u64,
    /// Integer coefficients that were scanned, square factors removed.
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocompactnessVerdict {
    pub verdict: Cocompactness,
    pub rule: String,
    /// Integer coordinates of a zero of B; Gaussian integers "a+bi" for X = C.
    pub witness: Option<Vec<String>>,
    pub obstruction: Option<Obstruction>,
    /// Height bound reached by the isotropy search, when one ran.
    pub search_height: Option<u64>,
}

const RULE_NOT_Q: [&str; 3] = [
    "F != Q totally real, B admissible: PSO(B; O_F) is cocompact",
    "F != Q totally real with CM extension E/F, B admissible: PSU(B; O_E) is cocompact",
    "F != Q totally real with totally definite quaternion algebra, B admissible: PSp(B; O) is cocompact",
];
const RULE_Q_H: &str = "F = Q, X = H: noncocompact for all B";
const RULE_Q_C: &str = "F = Q, X = C, n > 1: noncocompact for all B";
const RULE_Q_R: &str = "F = Q, X = R, n > 3: noncocompact for all B";
const RULE_ANISOTROPIC: &str = "F = Q, small n: B has no rational zero (residue obstruction), so the lattice is cocompact";
const RULE_ISOTROPIC: &str = "F = Q, small n: B has a rational zero, so the lattice is noncocompact";
const RULE_UNDECIDED: &str = "F = Q, small n: no obstruction and no zero within the search bound";

/// Total candidate budget of the isotropy search.
pub const SEARCH_BUDGET: f64 = 1e7;
/// Largest coordinate height tried by the isotropy search.
pub const MAX_SEARCH_HEIGHT: u64 = 10_000;

fn index(x: Geometry) -> usize {
    match x {
        Geometry::R => 0,
        Geometry::C => 1,
        Geometry::H => 2,
    }
}

pub fn classify_cocompactness(
    x: Geometry,
    field: &NumberField,
    n: usize,
    b: &ModelForm,
) -> Result<CocompactnessVerdict> {
    classify_with_height(x, field, n, b, None)
}

/// As [`classify_cocompactness`], with an explicit isotropy search height.
pub fn classify_with_height(
    x: Geometry,
    field: &NumberField,
    n: usize,
    b: &ModelForm,
    height: Option<u64>,
) -> Result<CocompactnessVerdict> {
    if b.field() != field {
        return Err(Error::FieldMismatch);
    }
    if b.n() != n {
        return Err(Error::DimensionMismatch(format!("form has n = {}, expected {n}", b.n())));
    }
    let verdict = |v, rule: &str| CocompactnessVerdict {
        verdict: v,
        rule: rule.to_string(),
        witness: None,
        obstruction: None,
        search_height: None,
    };
    if !field.is_rationals() {
        if !is_admissible(b)?.admissible {
            return Err(Error::Inadmissible);
        }
        return Ok(verdict(Cocompactness::Cocompact, RULE_NOT_Q[index(x)]));
    }
    match x {
        Geometry::H => return Ok(verdict(Cocompactness::Noncocompact, RULE_Q_H)),
        Geometry::C if n > 1 => return Ok(verdict(Cocompactness::Noncocompact, RULE_Q_C)),
        Geometry::R if n > 3 => return Ok(verdict(Cocompactness::Noncocompact, RULE_Q_R)),
        _ => {}
    }
    let coeffs = rational_form_coefficients(x, b)?;
    if let Some(obs) = residue_obstruction(&coeffs)? {
        let mut v = verdict(Cocompactness::Cocompact, RULE_ANISOTROPIC);
        v.obstruction = Some(obs);
        return Ok(v);
    }
    let free = coeffs.len() - 1;
    let budget_height = ((SEARCH_BUDGET.powf(1.0 / free as f64) - 1.0) / 2.0).floor().max(1.0) as u64;
    let h = height.unwrap_or(MAX_SEARCH_HEIGHT).min(budget_height);
    let found = isotropy_search(&coeffs, h)?;
    let mut v = match found {
        Some(w) => {
            let mut v = verdict(Cocompactness::Noncocompact, RULE_ISOTROPIC);
            v.witness = Some(format_witness(x, &w));
            v
        }
        None => verdict(Cocompactness::Indeterminate, RULE_UNDECIDED),
    };
    v.search_height = Some(h);
    if let Some(w) = &v.witness {
        if !witness_value(x, b, w)?.is_zero() {
            return Err(Error::Internal("isotropy witness failed re-evaluation".into()));
        }
    }
    Ok(v)
}

/// Integer coefficients of the diagonal form over Q to be tested: B itself
/// scaled to integers for X = R, and the trace form Σ aᵢ(xᵢ² + yᵢ²) for
/// X = C.
pub fn rational_form_coefficients(x: Geometry, b: &ModelForm) -> Result<Vec<BigInt>> {
    let rats: Vec<BigRational> = b.entries().iter().map(|e| e.coords()[0].clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    Ok(match x {
        Geometry::R => ints,
        Geometry::C => ints.iter().flat_map(|a| [a.clone(), a.clone()]).collect(),
        Geometry::H => return Err(Error::InvalidArgument("no rational isotropy test for X = H".into())),
    })
}

fn odd_primes_dividing(coeffs: &[BigInt], bound: u64) -> Vec<u64> {
    (3..=bound)
        .step_by(2)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .filter(|&p| coeffs.iter().any(|a| (a % BigInt::from(p)).is_zero()))
        .collect()
}

/// Divides each coefficient by its square factors p² for p below 1000.
/// Substituting x ↦ px does not change whether a rational zero exists.
pub fn strip_square_factors(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .map(|c| {
            let mut c = c.clone();
            for p in (2u64..1000).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
                let sq = BigInt::from(p * p);
                while !c.is_zero() && (&c % &sq).is_zero() {
                    c /= &sq;
                }
            }
            c
        })
        .collect()
}

/// Strips square factors, then scans moduli 8, 16, and p, p² for odd
/// primes p ≤ 50 dividing a coefficient, for one where no solution has a
/// coordinate prime to p.
pub fn residue_obstruction(coeffs: &[BigInt]) -> Result<Option<Obstruction>> {
    let coeffs = &strip_square_factors(coeffs);
    let mut moduli = vec![(8u64, 2u64), (16, 2)];
    for p in odd_primes_dividing(coeffs, 50) {
        moduli.push((p, p));
        moduli.push((p * p, p));
    }
    for (m, p) in moduli {
        if !has_primitive_solution_mod(coeffs, m, p) {
            return Ok(Some(Obstruction {
                modulus: m,
                prime: p,
                coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
            }));
        }
    }
    Ok(None)
}

/// Whether Σ aᵢxᵢ² ≡ 0 (mod m) has a solution with some xᵢ prime to p
/// (m a power of p), by dynamic programming over reachable residues.
pub fn has_primitive_solution_mod(coeffs: &[BigInt], m: u64, p: u64) -> bool {
    let mu = m as usize;
    // reach[f][r]: residue r reachable, f = some coordinate so far prime to p
    let mut reach = [vec![false; mu], vec![false; mu]];
    reach[0][0] = true;
    for a in coeffs {
        let a = a.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        let mut vals = [Vec::new(), Vec::new()];
        for x in 0..m {
            let v = (a * (x * x % m) % m) as usize;
            vals[(x % p != 0) as usize].push(v);
        }
        for v in vals.iter_mut() {
            v.sort_unstable();
            v.dedup();
        }
        let mut next = [vec![false; mu], vec![false; mu]];
        for f in 0..2 {
            for r in 0..mu {
                if !reach[f][r] {
                    continue;
                }
                for (g, vs) in vals.iter().enumerate() {
                    for &v in vs {
                        next[f | g][(r + v) % mu] = true;
                    }
                }
            }
        }
        reach = next;
    }
    reach[1][0]
}

fn overflow() -> Error {
    Error::CapExceeded { what: "isotropy search value".into(), value: u128::MAX, cap: i128::MAX as u128 }
}

/// First nonzero integer zero of Σ aᵢxᵢ² whose free coordinates x₀ … x_{k−2}
/// lie in the box of height `height`, enumerating shells of increasing
/// height and solving for the last coordinate.
pub fn isotropy_search(coeffs: &[BigInt], height: u64) -> Result<Option<Vec<BigInt>>> {
    if coeffs.len() < 2 {
        return Ok(None);
    }
    let a: Vec<i128> = coeffs
        .iter()
        .map(|c| c.to_i128().filter(|v| v.unsigned_abs() < 1u128 << 80).ok_or_else(overflow))
        .collect::<Result<_>>()?;
    let (free, last) = a.split_at(a.len() - 1);
    let last = last[0];
    let mut xs = vec![0i64; free.len()];
    for h in 1..=height as i64 {
        if let Some(w) = shell(free, last, h, 0, false, &mut xs)? {
            return Ok(Some(w.into_iter().map(BigInt::from).collect()));
        }
    }
    Ok(None)
}

/// Coordinates from `pos` on, where the first coordinate reaching |x| = h
/// is the first one allowed to; coordinates before it stay below h.
fn shell(free: &[i128], last: i128, h: i64, pos: usize, hit: bool, xs: &mut Vec<i64>) -> Result<Option<Vec<i128>>> {
    if pos == free.len() {
        if !hit {
            return Ok(None);
        }
        let mut s: i128 = 0;
        for (a, &x) in free.iter().zip(xs.iter()) {
            let t = a.checked_mul((x as i128) * (x as i128)).ok_or_else(overflow)?;
            s = s.checked_add(t).ok_or_else(overflow)?;
        }
        // last · z² = −s
        if (-s) % last != 0 {
            return Ok(None);
        }
        let t = -s / last;
        if t < 0 {
            return Ok(None);
        }
        let z = t.sqrt();
        if z * z != t {
            return Ok(None);
        }
        let mut w: Vec<i128> = xs.iter().map(|&x| x as i128).collect();
        w.push(z);
        return Ok(Some(w));
    }
    let range: Vec<i64> = if hit || pos + 1 < free.len() {
        let bound = if hit { h } else { h - 1 };
        let mut r: Vec<i64> = (-bound..=bound).collect();
        r.sort_by_key(|&c| (c.abs(), c < 0));
        if !hit {
            // this coordinate may also be the first to reach h
            r.push(h);
            r.push(-h);
        }
        r
    } else {
        vec![h, -h]
    };
    for x in range {
        xs[pos] = x;
        let hit_now = hit || x.abs() == h;
        if let Some(w) = shell(free, last, h, pos + 1, hit_now, xs)? {
            return Ok(Some(w));
        }
    }
    xs[pos] = 0;
    Ok(None)
}

fn format_witness(x: Geometry, w: &[BigInt]) -> Vec<String> {
    match x {
        Geometry::C => w
            .chunks(2)
            .map(|c| {
                if c[1].is_negative() {
                    format!("{}-{}i", c[0], c[1].abs())
                } else {
                    format!("{}+{}i", c[0], c[1])
                }
            })
            .collect(),
        _ => w.iter().map(|c| c.to_string()).collect(),
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad integer {s:?}")))
}

fn parse_gaussian(s: &str) -> Result<(BigInt, BigInt)> {
    let body = s
        .strip_suffix('i')
        .ok_or_else(|| Error::InvalidArgument(format!("bad Gaussian integer {s:?}")))?;
    // split at the sign that starts the imaginary part
    let cut = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .last()
        .map(|(i, _)| i)
        .ok_or_else(|| Error::InvalidArgument(format!("bad Gaussian integer {s:?}")))?;
    let re = parse_int(&body[..cut])?;
    let im = parse_int(body[cut..].trim_start_matches('+'))?;
    Ok((re, im))
}

/// B(v, v) for a witness, exactly; also rejects the zero vector.
pub fn witness_value(x: Geometry, b: &ModelForm, witness: &[String]) -> Result<BigRational> {
    if witness.len() != b.entries().len() {
        return Err(Error::DimensionMismatch(format!("witness of length {}", witness.len())));
    }
    let mut acc = BigRational::zero();
    let mut nonzero = false;
    for (a, w) in b.entries().iter().zip(witness) {
        let sq = match x {
            Geometry::C => {
                let (re, im) = parse_gaussian(w)?;
                &re * &re + &im * &im
            }
            _ => {
                let v = parse_int(w)?;
                &v * &v
            }
        };
        nonzero |= !sq.is_zero();
        acc += a.coords()[0].clone() * BigRational::from_integer(sq);
    }
    if !nonzero {
        return Err(Error::InvalidArgument("witness is the zero vector".into()));
    }
    Ok(acc)
}
