//! Dense univariate polynomials over a prime field F_p, coefficients
//! ascending. The zero polynomial is the empty vector.

use super::modular::{inv_mod, mul_mod};

pub type PolyMod = Vec<u64>;

pub fn trim(f: &mut PolyMod) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PolyMod {
    let n = a.len().max(b.len());
    let mut out: PolyMod = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PolyMod {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (PolyMod, PolyMod) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut r: PolyMod = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        q[dr - db] = c;
        for j in 0..=db {
            let t = mul_mod(c, b[j], p);
            r[dr - db + j] = (r[dr - db + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> PolyMod {
    divrem(a, b, p).1
}

pub fn make_monic(f: &mut PolyMod, p: u64) {
    trim(f);
    if let Some(&lc) = f.last() {
        let inv = inv_mod(lc, p).expect("invertible leading coefficient");
        for c in f.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyMod {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&mut x, p);
    x
}

pub fn derivative(f: &[u64], p: u64) -> PolyMod {
    let mut out: PolyMod = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
        .collect();
    trim(&mut out);
    out
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> PolyMod {
    rem(&mul(a, b, p), m, p)
}

/// `base^exp mod m`.
pub fn powmod(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> PolyMod {
    let mut acc: PolyMod = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a polynomial of degree >= 1 over F_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x: PolyMod = vec![0, 1];
    // x^(p^k) mod f for k = 1..n
    let mut frob = Vec::with_capacity(n + 1);
    let mut cur = rem(&x, f, p);
    frob.push(cur.clone());
    for _ in 0..n {
        cur = powmod(&cur, p as u128, f, p);
        frob.push(cur.clone());
    }
    if sub(&frob[n], &rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    for q in super::modular::prime_factors(n as u64) {
        let k = n / q as usize;
        let g = gcd(&sub(&frob[k], &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Degrees of the irreducible factors of a squarefree `f` over F_p
/// (distinct-degree factorization).
pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let mut g = f.to_vec();
    make_monic(&mut g, p);
    let mut out = Vec::new();
    let x: PolyMod = vec![0, 1];
    let mut h = rem(&x, &g, p);
    let mut d = 0;
    while let Some(dg) = degree(&g) {
        if dg == 0 {
            break;
        }
        d += 1;
        if 2 * d > dg {
            out.push(dg);
            break;
        }
        h = powmod(&h, p as u128, &g, p);
        let common = gcd(&sub(&h, &x, p), &g, p);
        let dc = degree(&common).unwrap_or(0);
        if dc > 0 {
            out.extend(std::iter::repeat(d).take(dc / d));
            g = divrem(&g, &common, p).0;
            h = rem(&h, &g, p);
        }
    }
    out.sort_unstable();
    out
}

/// Distinct roots in F_p of a nonzero `f`, ascending. Odd p only.
///
/// Isolates the product of linear factors as gcd(f, x^p − x), then splits
/// it with gcd((x + a)^((p−1)/2) − 1, ·) for a = 0, 1, 2, …
pub fn roots(f: &[u64], p: u64) -> Vec<u64> {
    let mut g = f.to_vec();
    trim(&mut g);
    if degree(&g).unwrap_or(0) == 0 {
        return Vec::new();
    }
    make_monic(&mut g, p);
    let xp = powmod(&[0, 1], p as u128, &g, p);
    let mut lin = gcd(&sub(&xp, &[0, 1], p), &g, p);
    make_monic(&mut lin, p);
    let mut out = Vec::new();
    let mut stack = vec![lin];
    let mut shift = 0u64;
    while let Some(h) = stack.pop() {
        match degree(&h) {
            None | Some(0) => continue,
            Some(1) => {
                // h = x + c
                out.push((p - h[0] % p) % p);
                continue;
            }
            _ => {}
        }
        loop {
            let a = shift % p;
            shift += 1;
            let t = powmod(&[a, 1], ((p - 1) / 2) as u128, &h, p);
            let mut d = gcd(&sub(&t, &[1], p), &h, p);
            make_monic(&mut d, p);
            let dd = degree(&d).unwrap_or(0);
            if dd > 0 && dd < degree(&h).unwrap() {
                let other = divrem(&h, &d, p).0;
                stack.push(d);
                stack.push(other);
                break;
            }
        }
    }
    out.sort_unstable();
    out
}
