//! Distances in real and quaternionic hyperbolic space.

use sunada::forms::{hyperbolic_distance, Geometry, ProjectivePoint, Quat};

fn main() -> sunada::Result<()> {
    for s in [0.5f64, 1.0, 2.0] {
        let o = ProjectivePoint::real(&[0.0, 1.0])?;
        let y = ProjectivePoint::real(&[s.sinh(), s.cosh()])?;
        println!("R: s = {s}  d = {}", hyperbolic_distance(&o, &y)?);
    }
    let x = ProjectivePoint::new(Geometry::H, vec![Quat([0.1, 0.2, -0.3, 0.4]), Quat::real(1.0)])?;
    let y = ProjectivePoint::new(Geometry::H, vec![Quat([0.0, 0.0, 0.5, 0.0]), Quat::real(1.0)])?;
    println!("H: d = {}", hyperbolic_distance(&x, &y)?);
    Ok(())
}
