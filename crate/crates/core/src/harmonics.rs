//! Spherical harmonics up to `l = 1` (Condon–Shortley phase) and unit
//! vectors on the sphere.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `(sinθ cosψ, sinθ sinψ, cosθ)`.
pub fn unit_vector(theta: f64, psi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = psi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Polar and azimuthal angle of a nonzero vector, `ψ ∈ [0, 2π)`.
pub fn angles_of(v: &[f64; 3]) -> (f64, f64) {
    let rho = v[0].hypot(v[1]);
    let theta = rho.atan2(v[2]);
    let psi = v[1].atan2(v[0]).rem_euclid(2.0 * PI);
    (theta, psi)
}

pub fn y00() -> f64 {
    0.5 / PI.sqrt()
}

/// `Y_{1m}(θ, ψ)` for `m ∈ {−1, 0, 1}`.
pub fn y1(m: i32, theta: f64, psi: f64) -> Complex64 {
    let a = (3.0 / (8.0 * PI)).sqrt();
    match m {
        1 => -Complex64::from_polar(a * theta.sin(), psi),
        0 => Complex64::new((3.0 / (4.0 * PI)).sqrt() * theta.cos(), 0.0),
        -1 => Complex64::from_polar(a * theta.sin(), -psi),
        _ => panic!("m = {m} outside -1..=1"),
    }
}

/// `Y_{1m}` evaluated at a unit vector.
pub fn y1_at(m: i32, n: &[f64; 3]) -> Complex64 {
    let (theta, psi) = angles_of(n);
    y1(m, theta, psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartesian_forms() {
        let (theta, psi) = (0.7, 2.1);
        let n = unit_vector(theta, psi);
        let a = (3.0 / (8.0 * PI)).sqrt();
        let plus = Complex64::new(n[0], n[1]);
        assert!((y1(1, theta, psi) + plus * a).norm() < 1e-15);
        assert!((y1(-1, theta, psi) - plus.conj() * a).norm() < 1e-15);
        assert!((y1(0, theta, psi).re - a * 2f64.sqrt() * n[2]).abs() < 1e-15);
        assert!((y1(-1, theta, psi) + y1(1, theta, psi).conj()).norm() < 1e-15);
    }

    #[test]
    fn addition_theorem() {
        // Σ_m |Y_1m|² = 3/4π
        for &(t, p) in &[(0.1, 0.2), (1.5, 4.0), (3.0, 6.0)] {
            let s: f64 = (-1..=1).map(|m| y1(m, t, p).norm_sqr()).sum();
            assert!((s - 3.0 / (4.0 * PI)).abs() < 1e-15);
        }
    }

    #[test]
    fn angles_round_trip() {
        let (t, p) = angles_of(&unit_vector(2.3, 5.5));
        assert!((t - 2.3).abs() < 1e-14 && (p - 5.5).abs() < 1e-14);
    }
}
