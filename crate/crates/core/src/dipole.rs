//! Dipole coupling between pair amplitudes.
//!
//! The Cartesian kernel `K_ij = δ_ij − 3q̂_i q̂_j` acting on `⟨T⟩` is compared
//! with its spherical-basis form `½I + (3/2)D¹(ψ, 2ω, π − ψ)`, where
//! `q̂ = (sinω cosψ, sinω sinψ, cosω)`. The spherical components are
//!
//! ```text
//! pair side: (⟨T₋⟩/2i, i⟨T_z⟩/√2, i⟨T₊⟩/2)   = M_T ⟨T⟩
//! gap side:  (Δ↑↑, √2 Δ↑↓, Δ↓↓)              = M_Δ Δ
//! ```
//!
//! with `T_± = T_x ± iT_y` and `Δ_αβ` the coefficient of `a†_{kα}a†_{−kβ}` in
//! `Δ·T†`. Since `M_Δ = −2M_T`, the kernel maps to
//! `½ M_Δ K M_T⁻¹ = −M_T K M_T⁻¹`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{DenseComplexMatrix, FockSpace, ModeIndex, Momentum, Spin, FOCK_DIM, VACUUM};
use crate::gap::{thermal_factor, unit_ansatz, GapSolution};
use crate::harmonics::unit_vector;
use crate::matrix::{c, I, ONE, ZERO};
use crate::meanfield::{coherent_state, pair_expectation, CoherentParams, DVector, MeanFieldPoint};
use crate::quadrature::AngularNode;
use crate::so5::GeneratorSet;

pub const UNIT_TOL: f64 = 1e-12;
pub const EQUIV_TOL: f64 = 1e-10;

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn check_unit(v: &[f64; 3]) -> Result<()> {
    let norm = norm3(v);
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

/// Unit vector along `n − n'`.
pub fn qhat(n: &[f64; 3], nprime: &[f64; 3]) -> Result<[f64; 3]> {
    check_unit(n)?;
    check_unit(nprime)?;
    let d = [n[0] - nprime[0], n[1] - nprime[1], n[2] - nprime[2]];
    let len = norm3(&d);
    if len < UNIT_TOL {
        return Err(Error::CoincidentDirections);
    }
    Ok(d.map(|x| x / len))
}

/// `δ_ij − 3q_i q_j`.
pub fn cartesian_kernel(q: &[f64; 3]) -> Result<[[f64; 3]; 3]> {
    check_unit(q)?;
    let mut k = [[0.0; 3]; 3];
    for (i, row) in k.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j { 1.0 } else { 0.0 } - 3.0 * q[i] * q[j];
        }
    }
    Ok(k)
}

fn kernel_matrix(k: &[[f64; 3]; 3]) -> DenseComplexMatrix {
    DenseComplexMatrix::from_fn(3, |i, j| c(k[i][j]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// `α = ψ`, `β = 2ω`, `γ = π − ψ` from `q̂ = (sinω cosψ, sinω sinψ, cosω)`.
    pub fn from_q(q: &[f64; 3]) -> Result<Self> {
        check_unit(q)?;
        let (omega, psi) = q_angles(q);
        Ok(Self::new(psi, 2.0 * omega, PI - psi))
    }

    /// Zyz angles of a proper rotation matrix.
    pub fn from_rotation(r: &[[f64; 3]; 3]) -> Self {
        let beta = r[2][2].clamp(-1.0, 1.0).acos();
        if beta.sin().abs() < 1e-12 {
            // gimbal lock, only α ± γ is defined
            let a = r[1][0].atan2(r[0][0]);
            if r[2][2] > 0.0 {
                return Self::new(a, 0.0, 0.0);
            }
            return Self::new(-a, PI, 0.0);
        }
        Self::new(r[1][2].atan2(r[0][2]), beta, r[2][1].atan2(-r[2][0]))
    }

    /// `R_z(α) R_y(β) R_z(γ)`.
    pub fn rotation(&self) -> [[f64; 3]; 3] {
        matmul3(&matmul3(&rot_z(self.alpha), &rot_y(self.beta)), &rot_z(self.gamma))
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// `(ω, ψ)` of a unit vector, `ω ∈ [0, π]`.
pub fn q_angles(q: &[f64; 3]) -> (f64, f64) {
    (q[2].clamp(-1.0, 1.0).acos(), q[1].atan2(q[0]))
}

pub fn rot_z(a: f64) -> [[f64; 3]; 3] {
    let (s, c) = a.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

pub fn rot_y(b: f64) -> [[f64; 3]; 3] {
    let (s, c) = b.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

pub fn matmul3(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Small-d matrix `d¹_{m'm}(β)`, rows and columns ordered `m = +1, 0, −1`.
pub fn small_d1(beta: f64) -> [[f64; 3]; 3] {
    let (s, c) = beta.sin_cos();
    let s2 = s * FRAC_1_SQRT_2;
    [
        [0.5 * (1.0 + c), -s2, 0.5 * (1.0 - c)],
        [s2, c, -s2],
        [0.5 * (1.0 - c), s2, 0.5 * (1.0 + c)],
    ]
}

/// `D¹_{m'm}(α, β, γ) = e^{−im'α} d¹_{m'm}(β) e^{−imγ}`.
pub fn wigner_d1(e: &EulerAngles) -> DenseComplexMatrix {
    let m = [1.0, 0.0, -1.0];
    let d = small_d1(e.beta);
    DenseComplexMatrix::from_fn(3, |r, col| {
        Complex64::from_polar(d[r][col], -m[r] * e.alpha - m[col] * e.gamma)
    })
}

/// Pair-side map `M_T`: spherical components of `⟨T⟩`.
pub fn pair_spherical_map() -> DenseComplexMatrix {
    let h = 0.5;
    DenseComplexMatrix::from_row_major(
        3,
        &[
            Complex64::new(0.0, -h),
            c(-h),
            ZERO,
            ZERO,
            ZERO,
            Complex64::new(0.0, FRAC_1_SQRT_2),
            Complex64::new(0.0, h),
            c(-h),
            ZERO,
        ],
    )
    .expect("3x3 literal")
}

/// Gap-side map `M_Δ`: `(Δ↑↑, √2Δ↑↓, Δ↓↓)` of a Cartesian `Δ`.
pub fn gap_spherical_map() -> DenseComplexMatrix {
    DenseComplexMatrix::from_row_major(
        3,
        &[I, ONE, ZERO, ZERO, ZERO, Complex64::new(0.0, -SQRT_2), -I, ONE, ZERO],
    )
    .expect("3x3 literal")
}

/// `M_Δ` read off the Fock-space operator `Δ·T†` column by column.
pub fn gap_spherical_map_from_operators(fock: &FockSpace, gen: &GeneratorSet) -> DenseComplexMatrix {
    let amp = |x: &DenseComplexMatrix, a: Spin, b: Spin| -> Complex64 {
        let ket = fock.create(ModeIndex::new(Momentum::Plus, a)) * fock.create(ModeIndex::new(Momentum::Minus, b));
        let v: Vec<Complex64> = (0..FOCK_DIM).map(|r| ket.get(r, VACUUM)).collect();
        let out: Vec<Complex64> = (0..FOCK_DIM).map(|r| x.get(r, VACUUM)).collect();
        v.iter().zip(&out).map(|(p, q)| p.conj() * q).sum()
    };
    let mut m = DenseComplexMatrix::zeros(3);
    for j in 0..3 {
        let mut d = [ZERO; 3];
        d[j] = ONE;
        let x = gen.dot_tdag(&d);
        m.set(0, j, amp(&x, Spin::Up, Spin::Up));
        m.set(1, j, amp(&x, Spin::Up, Spin::Down) * SQRT_2);
        m.set(2, j, amp(&x, Spin::Down, Spin::Down));
    }
    m
}

fn inverse3(m: &DenseComplexMatrix) -> DenseComplexMatrix {
    let inv = m
        .as_nalgebra()
        .clone()
        .try_inverse()
        .expect("spherical map is invertible");
    DenseComplexMatrix::from_nalgebra(inv).expect("square")
}

/// Cartesian kernel carried to the spherical basis: `½ M_Δ K M_T⁻¹`.
pub fn spherical_kernel(q: &[f64; 3]) -> Result<DenseComplexMatrix> {
    let k = kernel_matrix(&cartesian_kernel(q)?);
    let mt_inv = inverse3(&pair_spherical_map());
    Ok((&(&gap_spherical_map() * &k) * &mt_inv).scale_re(0.5))
}

/// `½I + (3/2)D¹(α, β, γ)`.
pub fn wigner_kernel(e: &EulerAngles) -> DenseComplexMatrix {
    &DenseComplexMatrix::identity(3).scale_re(0.5) + &wigner_d1(e).scale_re(1.5)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivReport {
    pub q: [f64; 3],
    pub residual: f64,
    pub euler: [f64; 3],
}

pub fn kernel_equivalence(q: &[f64; 3]) -> Result<EquivReport> {
    let e = EulerAngles::from_q(q)?;
    let residual = wigner_kernel(&e).max_abs_diff(&spherical_kernel(q)?);
    Ok(EquivReport {
        q: *q,
        residual,
        euler: e.as_array(),
    })
}

/// `D¹` built from the Cartesian rotation: `U† R U` with Condon–Shortley
/// basis columns `e₊₁ = −(x̂ + iŷ)/√2`, `e₀ = ẑ`, `e₋₁ = (x̂ − iŷ)/√2`.
pub fn wigner_d1_from_rotation(r: &[[f64; 3]; 3]) -> DenseComplexMatrix {
    let s = FRAC_1_SQRT_2;
    let u = DenseComplexMatrix::from_row_major(
        3,
        &[
            c(-s),
            ZERO,
            c(s),
            Complex64::new(0.0, -s),
            ZERO,
            Complex64::new(0.0, -s),
            ZERO,
            ONE,
            ZERO,
        ],
    )
    .expect("3x3 literal");
    let rm = DenseComplexMatrix::from_fn(3, |i, j| c(r[i][j]));
    &(&u.adjoint() * &rm) * &u
}

/// `Δ = prefactor · K ⟨T⟩` as a mean-field point at energy `ε`.
pub fn dipole_point(epsilon: f64, pair: &[Complex64; 3], q: &[f64; 3], prefactor: f64) -> Result<MeanFieldPoint> {
    let k = cartesian_kernel(q)?;
    let mut delta = [ZERO; 3];
    for (i, d) in delta.iter_mut().enumerate() {
        *d = (0..3).map(|j| pair[j] * k[i][j]).sum::<Complex64>() * prefactor;
    }
    Ok(MeanFieldPoint::new(epsilon, DVector::from_complex(delta)?))
}

/// Thermal `⟨T(k')⟩` of a solved gap at angular node `node` and energy
/// `epsilon`, passed through the dipole kernel.
pub fn dipole_meanfield_point(
    solution: &GapSolution,
    node: usize,
    epsilon: f64,
    q: &[f64; 3],
    prefactor: f64,
) -> Result<MeanFieldPoint> {
    let (theta, psi) = match (solution.theta.get(node), solution.psi.get(node)) {
        (Some(&t), Some(&p)) => (t, p),
        _ => {
            return Err(Error::InvalidParameter {
                name: "node",
                reason: format!("{node} outside the {} solution nodes", solution.theta.len()),
            })
        }
    };
    let nd = AngularNode {
        theta,
        psi,
        n: unit_vector(theta, psi),
        weight: 0.0,
        ring: 0,
    };
    let dv = unit_ansatz(solution.branch, &nd).map(|z| z * solution.delta0);
    let point = MeanFieldPoint::new(epsilon, DVector::from_complex(dv)?);
    let fock = FockSpace::new();
    let gen = GeneratorSet::build(&fock);
    let state = coherent_state(&CoherentParams::from_point(&point), &gen)?;
    let th = thermal_factor(point.energy(), solution.temperature);
    let pair = pair_expectation(&state, &gen).map(|z| z * th);
    dipole_point(epsilon, &pair, q, prefactor)
}
