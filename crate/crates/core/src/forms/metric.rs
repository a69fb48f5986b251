//! The projective model: negative lines for I_{n,1} over R, C or H, the
//! distance between them, and checks that a matrix preserves a form.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Geometry;
use crate::algebra::NumberFieldElement;
use crate::error::{Error, Result};

/// a + b·i + c·j + d·k in double precision. Reals and complex numbers are
/// the quaternions with vanishing tail components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quat(pub [f64; 4]);

impl Quat {
    pub const ZERO: Quat = Quat([0.0; 4]);
    pub const ONE: Quat = Quat([1.0, 0.0, 0.0, 0.0]);

    pub fn real(x: f64) -> Self {
        Quat([x, 0.0, 0.0, 0.0])
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Quat([re, im, 0.0, 0.0])
    }

    pub fn re(self) -> f64 {
        self.0[0]
    }

    pub fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        Quat([a, -b, -c, -d])
    }

    pub fn add(self, o: Self) -> Self {
        Quat(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(self, o: Self) -> Self {
        Quat(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn scale(self, s: f64) -> Self {
        Quat(self.0.map(|x| x * s))
    }

    pub fn mul(self, o: Self) -> Self {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quat([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }

    pub fn norm_sq(self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Components outside the subalgebra for `x`.
    fn fits(self, x: Geometry) -> bool {
        match x {
            Geometry::R => self.0[1] == 0.0 && self.0[2] == 0.0 && self.0[3] == 0.0,
            Geometry::C => self.0[2] == 0.0 && self.0[3] == 0.0,
            Geometry::H => true,
        }
    }
}

/// B_{n,1}(x, y) = y* I_{n,1} x = Σ conj(yᵢ) εᵢ xᵢ with ε = (1, …, 1, −1).
pub fn standard_form(x: &[Quat], y: &[Quat]) -> Result<Quat> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!("{} vs {} coordinates", x.len(), y.len())));
    }
    let last = x.len().saturating_sub(1);
    let mut acc = Quat::ZERO;
    for (i, (a, b)) in x.iter().zip(y).enumerate() {
        let t = b.conj().mul(*a);
        acc = if i == last { acc.sub(t) } else { acc.add(t) };
    }
    Ok(acc)
}

/// A representative of a B_{n,1}-negative X-line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    geometry: Geometry,
    coords: Vec<Quat>,
    /// B(x, x), always negative.
    norm: f64,
}

impl ProjectivePoint {
    pub fn new(geometry: Geometry, coords: Vec<Quat>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionMismatch("a point needs at least two coordinates".into()));
        }
        if let Some(c) = coords.iter().find(|c| !c.fits(geometry)) {
            return Err(Error::InvalidArgument(format!("coordinate {c:?} is not in {geometry:?}")));
        }
        if coords.iter().any(|c| c.0.iter().any(|v| !v.is_finite())) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        let norm = standard_form(&coords, &coords)?.re();
        if norm.is_nan() || norm >= 0.0 {
            return Err(Error::NotNegative(format!("B(x, x) = {norm}")));
        }
        Ok(ProjectivePoint { geometry, coords, norm })
    }

    pub fn real(coords: &[f64]) -> Result<Self> {
        Self::new(Geometry::R, coords.iter().map(|&x| Quat::real(x)).collect())
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn coords(&self) -> &[Quat] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// n, for a point of n-dimensional hyperbolic space.
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    /// The same line represented by xλ.
    pub fn scaled(&self, lambda: Quat) -> Result<Self> {
        Self::new(self.geometry, self.coords.iter().map(|c| c.mul(lambda)).collect())
    }

    /// A x for a matrix over X.
    pub fn apply(&self, a: &[Vec<Quat>]) -> Result<Self> {
        let n = self.coords.len();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("matrix does not act on {n} coordinates")));
        }
        let coords = a
            .iter()
            .map(|row| row.iter().zip(&self.coords).fold(Quat::ZERO, |acc, (m, x)| acc.add(m.mul(*x))))
            .collect();
        Self::new(self.geometry, coords)
    }
}

/// The quotient B(x,y)B(y,x) / (B(x,x)B(y,y)) = |B(x,y)|² / (B(x,x)B(y,y)),
/// which is at least 1 for negative points.
pub fn distance_quotient(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<f64> {
    if x.geometry != y.geometry {
        return Err(Error::InvalidArgument("points over different division algebras".into()));
    }
    let bxy = standard_form(&x.coords, &y.coords)?;
    let byx = standard_form(&y.coords, &x.coords)?;
    // B(y,x) = conj B(x,y), so the product is real
    let num = bxy.mul(byx).re();
    Ok(num / (x.norm * y.norm))
}

/// d with cosh² d equal to the quotient; this normalization gives the
/// hyperboloid distance (curvature −1 for X = R).
pub fn hyperbolic_distance(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<f64> {
    let q = distance_quotient(x, y)?;
    if !(q >= 1.0 - 1e-12) {
        return Err(Error::ToleranceBreach(format!("distance quotient {q} below 1")));
    }
    Ok(q.max(1.0).sqrt().acosh())
}

fn check_square<T>(a: &[Vec<T>], b: &[Vec<T>]) -> Result<usize> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: b.first().map_or(0, |r| r.len()) });
    }
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("matrix is not {n}×{n}")));
    }
    Ok(n)
}

/// Exact check of AᵀBA = B for integer matrices (equivalently B⁻¹AᵀBA = I).
pub fn preserves_form(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<bool> {
    let n = check_square(a, b)?;
    for i in 0..n {
        for j in 0..n {
            let mut s = BigInt::zero();
            for k in 0..n {
                for l in 0..n {
                    s += BigInt::from(a[k][i]) * b[k][l] * a[l][j];
                }
            }
            if s != BigInt::from(b[i][j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact check of AᵀBA = B over a totally real number field, where the
/// involution is trivial.
pub fn preserves_form_field(a: &[Vec<NumberFieldElement>], b: &[Vec<NumberFieldElement>]) -> Result<bool> {
    let n = check_square(a, b)?;
    let field = b[0][0].field().clone();
    for i in 0..n {
        for j in 0..n {
            let mut s = field.zero();
            for k in 0..n {
                for l in 0..n {
                    s = s.add(&a[k][i].mul(&b[k][l])?.mul(&a[l][j])?)?;
                }
            }
            if s != b[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A*BA = B componentwise to 1e−10, with A* the conjugate transpose.
pub fn preserves_form_float(a: &[Vec<Quat>], b: &[Vec<Quat>]) -> Result<bool> {
    let n = check_square(a, b)?;
    for i in 0..n {
        for j in 0..n {
            let mut s = Quat::ZERO;
            for k in 0..n {
                for l in 0..n {
                    s = s.add(a[k][i].conj().mul(b[k][l]).mul(a[l][j]));
                }
            }
            let d = s.sub(b[i][j]);
            if d.0.iter().any(|x| x.abs() > 1e-10) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// I_{n,1} as an integer matrix.
pub fn standard_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..=n)
        .map(|i| (0..=n).map(|j| if i != j { 0 } else if i == n { -1 } else { 1 }).collect())
        .collect()
}

pub fn to_quat_matrix(a: &[Vec<i64>]) -> Vec<Vec<Quat>> {
    a.iter().map(|r| r.iter().map(|&x| Quat::real(x as f64)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const LORENTZ: [[i64; 3]; 3] = [[1, 2, 2], [2, 1, 2], [2, 2, 3]];

    fn lorentz() -> Vec<Vec<i64>> {
        LORENTZ.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn form_preservation() {
        let b = standard_matrix(2);
        assert!(preserves_form(&lorentz(), &b).unwrap());
        let id = standard_matrix(2).iter().map(|r| r.iter().map(|x| x.abs()).collect()).collect::<Vec<Vec<i64>>>();
        assert!(preserves_form(&id, &b).unwrap());
        assert!(!preserves_form(&[vec![1, 1], vec![0, 1]], &standard_matrix(1)).unwrap());
        assert!(preserves_form_float(&to_quat_matrix(&lorentz()), &to_quat_matrix(&b)).unwrap());
        assert!(preserves_form(&[vec![1, 0], vec![0, 1]], &b).is_err());
    }

    #[test]
    fn distance_examples() {
        for s in [0.5f64, 1.0, 2.0] {
            let x = ProjectivePoint::real(&[0.0, 1.0]).unwrap();
            let y = ProjectivePoint::real(&[s.sinh(), s.cosh()]).unwrap();
            assert!((hyperbolic_distance(&x, &y).unwrap() - s).abs() < 1e-9);
            let xh = ProjectivePoint::new(Geometry::H, vec![Quat::ZERO, Quat::ONE]).unwrap();
            let yh =
                ProjectivePoint::new(Geometry::H, vec![Quat([0.0, s.sinh(), 0.0, 0.0]), Quat::real(s.cosh())]).unwrap();
            assert!((hyperbolic_distance(&xh, &yh).unwrap() - s).abs() < 1e-9);
            assert_eq!(hyperbolic_distance(&y, &y).unwrap(), 0.0);
        }
        assert!(matches!(ProjectivePoint::real(&[1.0, 1.0]), Err(Error::NotNegative(_))));
        assert!(ProjectivePoint::new(Geometry::R, vec![Quat::complex(0.0, 1.0), Quat::real(2.0)]).is_err());
    }

    fn random_point(rng: &mut ChaCha8Rng, g: Geometry, n: usize) -> ProjectivePoint {
        loop {
            let mut coords: Vec<Quat> = (0..n)
                .map(|_| {
                    let mut q = Quat(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
                    if g != Geometry::H {
                        q.0[2] = 0.0;
                        q.0[3] = 0.0;
                    }
                    if g == Geometry::R {
                        q.0[1] = 0.0;
                    }
                    q
                })
                .collect();
            coords.push(Quat::real(rng.gen_range(1.5..3.0)));
            if let Ok(p) = ProjectivePoint::new(g, coords) {
                return p;
            }
        }
    }

    fn random_scalar(rng: &mut ChaCha8Rng, g: Geometry) -> Quat {
        let mut q = Quat(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
        if g != Geometry::H {
            q.0[2] = 0.0;
            q.0[3] = 0.0;
        }
        if g == Geometry::R {
            q.0[1] = 0.0;
        }
        if q.norm_sq() < 0.01 {
            q.0[0] += 1.0;
        }
        q
    }

    #[test]
    fn triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [Geometry::R, Geometry::C, Geometry::H] {
            for _ in 0..1000 {
                let [x, y, z] = [0; 3].map(|_| random_point(&mut rng, g, 2));
                let (a, b, c) = (
                    hyperbolic_distance(&x, &y).unwrap(),
                    hyperbolic_distance(&y, &z).unwrap(),
                    hyperbolic_distance(&x, &z).unwrap(),
                );
                assert!(c <= a + b + 1e-9, "{g:?}: {c} > {a} + {b}");
            }
        }
    }

    #[test]
    fn isometry_invariance() {
        // Lorentz matrix, a coordinate swap and a reflection, all exact
        let swap = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
        let refl = vec![vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let gens = [lorentz(), swap, refl];
        let b = standard_matrix(2);
        for m in &gens {
            assert!(preserves_form(m, &b).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let len = rng.gen_range(1..=3);
            let mut a = standard_matrix(2).iter().map(|r| r.iter().map(|x| x.abs()).collect()).collect::<Vec<Vec<i64>>>();
            for _ in 0..len {
                let g = &gens[rng.gen_range(0..gens.len())];
                a = (0..3).map(|i| (0..3).map(|j| (0..3).map(|k| a[i][k] * g[k][j]).sum()).collect()).collect();
            }
            assert!(preserves_form(&a, &b).unwrap());
            let aq = to_quat_matrix(&a);
            for g in [Geometry::R, Geometry::C, Geometry::H] {
                let x = random_point(&mut rng, g, 2);
                let y = random_point(&mut rng, g, 2);
                let d = hyperbolic_distance(&x, &y).unwrap();
                let d2 = hyperbolic_distance(&x.apply(&aq).unwrap(), &y.apply(&aq).unwrap()).unwrap();
                assert!((d - d2).abs() < 1e-9 * (1.0 + d), "{d} vs {d2}");
            }
        }
    }

    #[test]
    fn preserved_values_are_exact() {
        let a = lorentz();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let eps = [1i64, 1, -1];
        for _ in 0..200 {
            let x: Vec<i64> = (0..3).map(|_| rng.gen_range(-50..50)).collect();
            let y: Vec<i64> = (0..3).map(|_| rng.gen_range(-50..50)).collect();
            let ax: Vec<i64> = (0..3).map(|i| (0..3).map(|k| a[i][k] * x[k]).sum()).collect();
            let ay: Vec<i64> = (0..3).map(|i| (0..3).map(|k| a[i][k] * y[k]).sum()).collect();
            let b = |u: &[i64], v: &[i64]| (0..3).map(|i| eps[i] * u[i] * v[i]).sum::<i64>();
            assert_eq!(b(&ax, &ay), b(&x, &y));
        }
    }

    #[test]
    fn quaternionic_evaluation_agrees_with_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = random_point(&mut rng, Geometry::R, 3);
            let y = random_point(&mut rng, Geometry::R, 3);
            let xh = ProjectivePoint::new(Geometry::H, x.coords().to_vec()).unwrap();
            let yh = ProjectivePoint::new(Geometry::H, y.coords().to_vec()).unwrap();
            let real = {
                let c = |p: &ProjectivePoint| p.coords().iter().map(|q| q.re()).collect::<Vec<_>>();
                let (u, v) = (c(&x), c(&y));
                let b = |u: &[f64], v: &[f64]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3];
                (b(&u, &v).powi(2) / (b(&u, &u) * b(&v, &v))).sqrt().acosh()
            };
            assert!((hyperbolic_distance(&xh, &yh).unwrap() - real).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_scale_invariant(seed in any::<u64>(), g in 0usize..3) {
            let g = [Geometry::R, Geometry::C, Geometry::H][g];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_point(&mut rng, g, 3);
            let y = random_point(&mut rng, g, 3);
            let d = hyperbolic_distance(&x, &y).unwrap();
            prop_assert!((d - hyperbolic_distance(&y, &x).unwrap()).abs() < 1e-10);
            let xs = x.scaled(random_scalar(&mut rng, g)).unwrap();
            let ys = y.scaled(random_scalar(&mut rng, g)).unwrap();
            prop_assert!((d - hyperbolic_distance(&xs, &ys).unwrap()).abs() < 1e-10);
        }
    }
}
