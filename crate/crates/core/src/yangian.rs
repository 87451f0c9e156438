//! Yangian operators on two spin-½ slots and the transition between the
//! singlet s-wave state `Ψ₀` and the `J = 0` p-wave state `Ψ₁`.
//!
//! ```text
//! J_α = μ₁ S_α⊗1 + μ₂ 1⊗S_α − (ih/4) ε_αβγ (S_β⊗S_γ − S_γ⊗S_β)
//! Ψ₀  = Y₀₀ (|↑↓⟩ − |↓↑⟩)/√2
//! Ψ₁  = (k̂₋|↑↑⟩ − k̂_z(|↑↓⟩ + |↓↑⟩) − k̂₊|↓↓⟩)/√(8π)
//! ```
//!
//! Basis order is `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`. Identities are checked pointwise
//! on sampled directions; a residual is the Euclidean norm of the four
//! amplitude differences.
//!
//! With `c = μ₂ − μ₁ + h/2` the exact actions are
//! `k̂±J∓Ψ₀ = (c/√3) Y₁±₁ χ₁∓₁`, `k̂_zJ_zΨ₀ = −(c/2√3) Y₁₀ χ₁₀`,
//! `(k̂·J)Ψ₀ = (c/2) Ψ₁` and `(k̂·J)Ψ₁ = ½(μ₂ − μ₁ − h/2) Ψ₀`, while
//! `(k̂·S)Ψ₁ = 0`, so a translation `J → J + ηS` leaves `(k̂·J)Ψ₁` unchanged.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::{angles_of, y00, y1};
use crate::matrix::{c, commutator, linear_combination, DenseComplexMatrix, I, ONE, ZERO};
use crate::quadrature::AngularGrid;

pub type Spinor = [Complex64; 4];

/// Minimum number of sampled directions for a verification run.
pub const MIN_SAMPLES: usize = 20;

/// Samples closer than this to a pole (in `sinθ`) are refused.
pub const POLE_MARGIN: f64 = 1e-6;

const DEGENERATE_TOL: f64 = 1e-24;

fn spin_half(alpha: usize) -> DenseComplexMatrix {
    let h = 0.5;
    let entries = match alpha {
        0 => [ZERO, c(h), c(h), ZERO],
        1 => [ZERO, Complex64::new(0.0, -h), Complex64::new(0.0, h), ZERO],
        2 => [c(h), ZERO, ZERO, c(-h)],
        _ => panic!("spin component {alpha} out of range"),
    };
    DenseComplexMatrix::from_row_major(2, &entries).expect("2x2 literal")
}

/// `A ⊗ B` for 2×2 factors.
pub fn kron2(a: &DenseComplexMatrix, b: &DenseComplexMatrix) -> DenseComplexMatrix {
    DenseComplexMatrix::from_fn(4, |r, col| a.get(r / 2, col / 2) * b.get(r % 2, col % 2))
}

fn levi_civita(a: usize, b: usize, g: usize) -> f64 {
    match (a, b, g) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Spin operators of both slots and their sum.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub first: [DenseComplexMatrix; 3],
    pub second: [DenseComplexMatrix; 3],
    pub total: [DenseComplexMatrix; 3],
}

impl SpinOps {
    pub fn new() -> Self {
        let id = DenseComplexMatrix::identity(2);
        let first = [0, 1, 2].map(|a| kron2(&spin_half(a), &id));
        let second = [0, 1, 2].map(|a| kron2(&id, &spin_half(a)));
        let total = [0, 1, 2].map(|a| &first[a] + &second[a]);
        Self { first, second, total }
    }

    /// Residual of `[S_x, S_y] = iS_z` and cyclic permutations.
    pub fn su2_residual(&self) -> f64 {
        (0..3)
            .map(|a| {
                let (b, g) = ((a + 1) % 3, (a + 2) % 3);
                commutator(&self.total[a], &self.total[b])
                    .unwrap()
                    .max_abs_diff(&self.total[g].scale(I))
            })
            .fold(0.0, f64::max)
    }
}

impl Default for SpinOps {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YangianParams {
    pub mu1: f64,
    pub mu2: f64,
    pub h: f64,
    pub eta: f64,
}

impl YangianParams {
    /// `μ₂ − μ₁ + h/2`.
    pub fn coefficient(&self) -> f64 {
        self.mu2 - self.mu1 + 0.5 * self.h
    }
}

#[derive(Debug, Clone)]
pub struct YangianOp {
    pub params: YangianParams,
    /// `J + ηS`.
    pub j: [DenseComplexMatrix; 3],
    pub spin: SpinOps,
}

pub fn build_yangian(mu1: f64, mu2: f64, h: f64) -> YangianOp {
    let spin = SpinOps::new();
    let single = [0, 1, 2].map(spin_half);
    let j = [0, 1, 2].map(|a| {
        let mut terms: Vec<(Complex64, DenseComplexMatrix)> =
            vec![(c(mu1), spin.first[a].clone()), (c(mu2), spin.second[a].clone())];
        for b in 0..3 {
            for g in 0..3 {
                let e = levi_civita(a, b, g);
                if e != 0.0 {
                    let anti = &kron2(&single[b], &single[g]) - &kron2(&single[g], &single[b]);
                    terms.push((Complex64::new(0.0, -0.25 * h * e), anti));
                }
            }
        }
        linear_combination(4, terms.iter().map(|(z, m)| (*z, m)))
    });
    YangianOp {
        params: YangianParams { mu1, mu2, h, eta: 0.0 },
        j,
        spin,
    }
}

impl YangianOp {
    /// Translation `J → J + ηS`, replacing any earlier translation.
    pub fn translated(&self, eta: f64) -> Self {
        let shift = eta - self.params.eta;
        let j = [0, 1, 2].map(|a| &self.j[a] + &self.spin.total[a].scale_re(shift));
        Self {
            params: YangianParams { eta, ..self.params },
            j,
            spin: self.spin.clone(),
        }
    }

    /// Largest residual of `[S_α, J_β] = iε_αβγ J_γ`.
    pub fn commutator_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let lhs = commutator(&self.spin.total[a], &self.j[b]).unwrap();
                let rhs = linear_combination(
                    4,
                    (0..3).map(|g| (Complex64::new(0.0, levi_civita(a, b, g)), &self.j[g])),
                );
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        worst
    }

    /// `k̂·J`.
    pub fn along(&self, k: &[f64; 3]) -> DenseComplexMatrix {
        linear_combination(4, (0..3).map(|a| (c(k[a]), &self.j[a])))
    }

    /// `J₊ = J_x + iJ_y` and `J₋ = J_x − iJ_y`.
    pub fn ladder(&self) -> (DenseComplexMatrix, DenseComplexMatrix) {
        (&self.j[0] + &self.j[1].scale(I), &self.j[0] - &self.j[1].scale(I))
    }
}

pub fn triplet(m: i32) -> Spinor {
    let s = c(FRAC_1_SQRT_2);
    match m {
        1 => [ONE, ZERO, ZERO, ZERO],
        0 => [ZERO, s, s, ZERO],
        -1 => [ZERO, ZERO, ZERO, ONE],
        _ => panic!("triplet m = {m} out of range"),
    }
}

pub fn psi0(_k: &[f64; 3]) -> Spinor {
    let a = c(y00() * FRAC_1_SQRT_2);
    [ZERO, a, -a, ZERO]
}

/// `Ψ₁` from the harmonic form `(1/√3)(Y₁₋₁, −Y₁₀/√2; −Y₁₀/√2, Y₁₁)`.
pub fn psi1(k: &[f64; 3]) -> Spinor {
    let (theta, psi) = angles_of(k);
    let s = 1.0 / 3f64.sqrt();
    let off = -y1(0, theta, psi) * FRAC_1_SQRT_2 * s;
    [y1(-1, theta, psi) * s, off, off, y1(1, theta, psi) * s]
}

/// `Ψ₁` from the Cartesian form `(k̂₋, −k̂_z; −k̂_z, −k̂₊)/√(8π)`.
pub fn psi1_cartesian(k: &[f64; 3]) -> Spinor {
    let n = 1.0 / (8.0 * PI).sqrt();
    let kp = Complex64::new(k[0], k[1]);
    [kp.conj() * n, c(-k[2] * n), c(-k[2] * n), -kp * n]
}

fn apply(m: &DenseComplexMatrix, v: &Spinor) -> Spinor {
    let out = m.apply(v);
    [out[0], out[1], out[2], out[3]]
}

fn scaled(v: &Spinor, z: Complex64) -> Spinor {
    v.map(|x| x * z)
}

fn distance(a: &Spinor, b: &Spinor) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn norm(a: &Spinor) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &Spinor, b: &Spinor) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Spinor-valued function sampled on a set of directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularState {
    pub directions: Vec<[f64; 3]>,
    pub amplitudes: Vec<Spinor>,
}

impl AngularState {
    pub fn sample(f: impl Fn(&[f64; 3]) -> Spinor, directions: &[[f64; 3]]) -> Self {
        Self {
            directions: directions.to_vec(),
            amplitudes: directions.iter().map(&f).collect(),
        }
    }

    /// `∫‖Ψ‖² dΩ` on a product grid.
    pub fn norm_squared(f: impl Fn(&[f64; 3]) -> Spinor, grid: &AngularGrid) -> f64 {
        4.0 * PI * grid.average(|nd| norm(&f(&nd.n)).powi(2))
    }

    /// Largest pointwise distance to another sampling on the same directions.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| distance(a, b))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YangianReport {
    pub identity: String,
    pub max_residual: f64,
    pub n_samples: usize,
    pub params: YangianParams,
}

fn check_samples(samples: &[[f64; 3]]) -> Result<()> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InvalidSamples(format!(
            "{} directions, need at least {MIN_SAMPLES}",
            samples.len()
        )));
    }
    for k in samples {
        let len = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        if (len - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit { norm: len });
        }
        if k[0].hypot(k[1]) < POLE_MARGIN {
            return Err(Error::InvalidSamples("direction at a pole".into()));
        }
    }
    Ok(())
}

fn report(name: &str, y: &YangianOp, n: usize, residuals: impl Iterator<Item = f64>) -> YangianReport {
    YangianReport {
        identity: name.to_string(),
        max_residual: residuals.fold(0.0, f64::max),
        n_samples: n,
        params: y.params,
    }
}

pub const EQ_PLUS: &str = "k+ J- Psi0 = c Y11 chi1-1";
pub const EQ_MINUS: &str = "k- J+ Psi0 = c Y1-1 chi11";
pub const EQ_Z: &str = "kz Jz Psi0 = -c/2 Y10 chi10";
pub const EQ_SINGLET: &str = "(k.J') Psi0 = sqrt3/2 c Psi1";
pub const EQ_TRIPLET: &str = "(k.J') Psi1 = 0";

/// Residuals of the three component transitions at one direction, in the
/// order `k̂₊J₋`, `k̂₋J₊`, `k̂_zJ_z`.
pub fn component_residuals_at(y: &YangianOp, k: &[f64; 3]) -> [f64; 3] {
    let (jp, jm) = y.ladder();
    let (theta, psi) = angles_of(k);
    let cc = y.params.coefficient();
    let kp = Complex64::new(k[0], k[1]);
    let p0 = psi0(k);
    let lhs_plus = scaled(&apply(&jm, &p0), kp);
    let rhs_plus = scaled(&triplet(-1), y1(1, theta, psi) * cc);
    let lhs_minus = scaled(&apply(&jp, &p0), kp.conj());
    let rhs_minus = scaled(&triplet(1), y1(-1, theta, psi) * cc);
    let lhs_z = scaled(&apply(&y.j[2], &p0), c(k[2]));
    let rhs_z = scaled(&triplet(0), y1(0, theta, psi) * (-0.5 * cc));
    [
        distance(&lhs_plus, &rhs_plus),
        distance(&lhs_minus, &rhs_minus),
        distance(&lhs_z, &rhs_z),
    ]
}

pub fn verify_component_transitions(y: &YangianOp, samples: &[[f64; 3]]) -> Result<Vec<YangianReport>> {
    check_samples(samples)?;
    let per: Vec<[f64; 3]> = samples.iter().map(|k| component_residuals_at(y, k)).collect();
    Ok([EQ_PLUS, EQ_MINUS, EQ_Z]
        .iter()
        .enumerate()
        .map(|(i, name)| report(name, y, samples.len(), per.iter().map(|r| r[i])))
        .collect())
}

/// Residuals of the singlet and triplet identities at one direction.
pub fn transition_residuals_at(y: &YangianOp, k: &[f64; 3]) -> [f64; 2] {
    let kj = y.along(k);
    let cc = y.params.coefficient();
    let p1 = psi1(k);
    let singlet = apply(&kj, &psi0(k));
    let want = scaled(&p1, c(0.5 * 3f64.sqrt() * cc));
    [distance(&singlet, &want), norm(&apply(&kj, &p1))]
}

pub fn verify_transition_identities(y: &YangianOp, samples: &[[f64; 3]]) -> Result<Vec<YangianReport>> {
    check_samples(samples)?;
    let per: Vec<[f64; 2]> = samples.iter().map(|k| transition_residuals_at(y, k)).collect();
    Ok([EQ_SINGLET, EQ_TRIPLET]
        .iter()
        .enumerate()
        .map(|(i, name)| report(name, y, samples.len(), per.iter().map(|r| r[i])))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Translation {
    pub eta: f64,
    /// Largest `‖(k̂·(J + ηS))Ψ₁‖` over the samples at the returned `η`.
    pub residual: f64,
    /// `(k̂·S)Ψ₁` vanished on every sample, so no `η` changes the residual
    /// and `η = 0` is returned.
    pub degenerate: bool,
}

/// Least-squares `η` minimizing `Σ‖(k̂·(J + ηS))Ψ₁‖²` over the samples.
pub fn find_translation(y: &YangianOp, samples: &[[f64; 3]]) -> Result<Translation> {
    check_samples(samples)?;
    let base = y.translated(0.0);
    let mut ba = 0.0;
    let mut bb = 0.0;
    for k in samples {
        let p1 = psi1(k);
        let a = apply(&base.along(k), &p1);
        let ks = linear_combination(4, (0..3).map(|i| (c(k[i]), &base.spin.total[i])));
        let b = apply(&ks, &p1);
        ba += inner(&b, &a).re;
        bb += inner(&b, &b).re;
    }
    let degenerate = bb < DEGENERATE_TOL * samples.len() as f64;
    let eta = if degenerate { 0.0 } else { -ba / bb };
    let shifted = base.translated(eta);
    let residual = samples
        .iter()
        .map(|k| transition_residuals_at(&shifted, k)[1])
        .fold(0.0, f64::max);
    Ok(Translation {
        eta,
        residual,
        degenerate,
    })
}

/// `∫dΩ ⟨Ψ₁|k̂·J|Ψ₀⟩` on a product grid.
pub fn transition_amplitude(y: &YangianOp, grid: &AngularGrid) -> Complex64 {
    grid.nodes
        .iter()
        .map(|nd| inner(&psi1(&nd.n), &apply(&y.along(&nd.n), &psi0(&nd.n))) * (4.0 * PI * nd.weight))
        .sum()
}

/// Transition amplitude relative to the claimed `(√3/2)c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientCheck {
    pub amplitude: Complex64,
    pub claimed: f64,
    /// `|amplitude − claimed|`.
    pub residual: f64,
}

pub fn coefficient_check(y: &YangianOp, grid: &AngularGrid) -> CoefficientCheck {
    let amplitude = transition_amplitude(y, grid);
    let claimed = 0.5 * 3f64.sqrt() * y.params.coefficient();
    CoefficientCheck {
        amplitude,
        claimed,
        residual: (amplitude - claimed).norm(),
    }
}

/// Spin-½ rotation matrix `exp(−iθ n̂·σ/2)`.
pub fn spin_half_rotation(axis: &[f64; 3], angle: f64) -> DenseComplexMatrix {
    let (s, co) = (0.5 * angle).sin_cos();
    let halves = [0, 1, 2].map(spin_half);
    let gen = linear_combination(2, (0..3).map(|a| (c(2.0 * axis[a]), &halves[a])));
    &DenseComplexMatrix::identity(2).scale_re(co) - &gen.scale(Complex64::new(0.0, s))
}

/// Cartesian rotation by `angle` about the unit `axis` (Rodrigues).
pub fn rotation_matrix(axis: &[f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let (s, co) = angle.sin_cos();
    let t = 1.0 - co;
    let [x, y, z] = *axis;
    [
        [co + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, co + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, co + z * z * t],
    ]
}

pub fn rotate(r: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|j| r[i][j] * v[j]).sum())
}

/// Largest change of the per-direction residuals (the `(k̂·J')` identities
/// and, for rotations about `ẑ`, the component transitions) when the
/// sample set is rotated.
pub fn rotation_covariance(y: &YangianOp, samples: &[[f64; 3]], axis: &[f64; 3], angle: f64) -> f64 {
    let r = rotation_matrix(axis, angle);
    let about_z = axis[0].abs() < 1e-15 && axis[1].abs() < 1e-15;
    let mut worst: f64 = 0.0;
    for k in samples {
        let rk = rotate(&r, k);
        let a = transition_residuals_at(y, k);
        let b = transition_residuals_at(y, &rk);
        worst = worst.max((a[0] - b[0]).abs()).max((a[1] - b[1]).abs());
        if about_z {
            let a = component_residuals_at(y, k);
            let b = component_residuals_at(y, &rk);
            for i in 0..3 {
                worst = worst.max((a[i] - b[i]).abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_unit_vector, random_unit_vector_off_poles, seeded_rng};
    use rand::Rng;

    fn samples(seed: u64, n: usize) -> Vec<[f64; 3]> {
        let mut rng = seeded_rng(seed);
        (0..n).map(|_| random_unit_vector_off_poles(&mut rng, 1e-3)).collect()
    }

    #[test]
    fn total_spin_is_su2() {
        assert!(SpinOps::new().su2_residual() < 1e-15);
    }

    #[test]
    fn plain_yangian_is_total_spin() {
        let y = build_yangian(1.0, 1.0, 0.0);
        for a in 0..3 {
            assert_eq!(y.j[a].max_abs_diff(&y.spin.total[a]), 0.0);
        }
    }

    #[test]
    fn commutator_with_spin_holds() {
        let mut rng = seeded_rng(10);
        for _ in 0..20 {
            let y = build_yangian(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            assert!(y.commutator_residual() < 1e-13);
            assert!(y.translated(rng.random_range(-3.0..3.0)).commutator_residual() < 1e-13);
        }
    }

    #[test]
    fn aligned_state_eigenvalue() {
        let y = build_yangian(0.4, 1.3, 2.0);
        let out = apply(&y.j[2], &triplet(1));
        assert!(distance(&out, &scaled(&triplet(1), c(0.5 * 1.7))) < 1e-15);
    }

    #[test]
    fn psi1_forms_agree() {
        let mut rng = seeded_rng(12);
        for _ in 0..200 {
            let k = random_unit_vector(&mut rng);
            assert!(distance(&psi1(&k), &psi1_cartesian(&k)) < 1e-13);
        }
    }

    #[test]
    fn states_are_normalized() {
        let g = AngularGrid::product(16, 16).unwrap();
        assert!((AngularState::norm_squared(psi0, &g) - 1.0).abs() < 1e-8);
        assert!((AngularState::norm_squared(psi1, &g) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn degenerate_parameters_give_zero() {
        let y = build_yangian(0.7, 0.7, 0.0);
        let s = samples(1, 50);
        for r in verify_component_transitions(&y, &s).unwrap() {
            assert!(r.max_residual < 1e-15, "{r:?}");
        }
        let t = find_translation(&y, &s).unwrap();
        assert!(t.degenerate);
        for r in verify_transition_identities(&y.translated(t.eta), &s).unwrap() {
            assert!(r.max_residual < 1e-15, "{r:?}");
        }
    }

    #[test]
    fn component_transitions_carry_inverse_sqrt3() {
        let mut rng = seeded_rng(13);
        for _ in 0..20 {
            let y = build_yangian(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let cc = y.params.coefficient() / 3f64.sqrt();
            let k = random_unit_vector_off_poles(&mut rng, 1e-3);
            let (th, ps) = angles_of(&k);
            let (jp, jm) = y.ladder();
            let kp = Complex64::new(k[0], k[1]);
            let lhs = scaled(&apply(&jm, &psi0(&k)), kp);
            assert!(distance(&lhs, &scaled(&triplet(-1), y1(1, th, ps) * cc)) < 1e-13);
            let lhs = scaled(&apply(&jp, &psi0(&k)), kp.conj());
            assert!(distance(&lhs, &scaled(&triplet(1), y1(-1, th, ps) * cc)) < 1e-13);
            let lhs = scaled(&apply(&y.j[2], &psi0(&k)), c(k[2]));
            assert!(distance(&lhs, &scaled(&triplet(0), y1(0, th, ps) * (-0.5 * cc))) < 1e-13);
        }
    }

    #[test]
    fn singlet_maps_to_half_coefficient() {
        let y = build_yangian(0.2, 1.1, 0.6);
        let cc = y.params.coefficient();
        for k in samples(2, 30) {
            let out = apply(&y.along(&k), &psi0(&k));
            assert!(distance(&out, &scaled(&psi1(&k), c(0.5 * cc))) < 1e-13);
        }
        let g = AngularGrid::product(16, 16).unwrap();
        let amp = transition_amplitude(&y, &g);
        assert!((amp - 0.5 * cc).norm() < 1e-12);
    }

    #[test]
    fn triplet_maps_back_to_singlet() {
        let y = build_yangian(0.2, 1.1, 0.6);
        let want = 0.5 * (1.1 - 0.2 - 0.3);
        for k in samples(3, 30) {
            let out = apply(&y.along(&k), &psi1(&k));
            assert!(distance(&out, &scaled(&psi0(&k), c(want))) < 1e-13);
        }
    }

    #[test]
    fn spin_annihilates_both_states_along_k() {
        let sp = SpinOps::new();
        for k in samples(4, 30) {
            let ks = linear_combination(4, (0..3).map(|i| (c(k[i]), &sp.total[i])));
            assert!(norm(&apply(&ks, &psi0(&k))) < 1e-15);
            assert!(norm(&apply(&ks, &psi1(&k))) < 1e-15);
        }
    }

    #[test]
    fn translation_is_sample_independent() {
        for (m1, m2, h) in [(0.0, 1.0, 0.0), (0.5, 0.5, 1.0)] {
            let y = build_yangian(m1, m2, h);
            let a = find_translation(&y, &samples(5, 50)).unwrap();
            let b = find_translation(&y, &samples(6, 50)).unwrap();
            assert!((a.eta - b.eta).abs() < 1e-10);
            assert_eq!(a.degenerate, b.degenerate);
        }
    }

    #[test]
    fn singlet_identity_ignores_translation() {
        let y = build_yangian(0.0, 1.0, 0.0);
        for k in samples(7, 20) {
            let a = apply(&y.along(&k), &psi0(&k));
            let b = apply(&y.translated(2.5).along(&k), &psi0(&k));
            assert!(distance(&a, &b) < 1e-15);
        }
    }

    #[test]
    fn scaling_parameters_scales_residuals() {
        let s = samples(8, 25);
        let a = verify_component_transitions(&build_yangian(0.1, 0.9, 0.4), &s).unwrap();
        let b = verify_component_transitions(&build_yangian(0.3, 2.7, 1.2), &s).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((3.0 * x.max_residual - y.max_residual).abs() < 1e-13);
        }
    }

    #[test]
    fn residuals_covariant_under_rotation() {
        let y = build_yangian(0.3, 1.2, 0.5).translated(0.4);
        let s = samples(9, 40);
        let mut rng = seeded_rng(19);
        for _ in 0..5 {
            let axis = random_unit_vector(&mut rng);
            assert!(rotation_covariance(&y, &s, &axis, rng.random_range(0.0..6.0)) < 1e-10);
        }
        assert!(rotation_covariance(&y, &s, &[0.0, 0.0, 1.0], 1.3) < 1e-10);
    }

    #[test]
    fn spin_half_rotation_is_unitary() {
        let u = spin_half_rotation(&[0.0, 0.6, 0.8], 1.1);
        assert!((&u * &u.adjoint()).max_abs_diff(&DenseComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn sample_preconditions() {
        let y = build_yangian(0.0, 1.0, 0.0);
        assert!(verify_component_transitions(&y, &samples(1, 5)).is_err());
        let mut s = samples(1, 25);
        s[3] = [0.0, 0.0, 1.0];
        assert!(matches!(
            verify_component_transitions(&y, &s),
            Err(Error::InvalidSamples(_))
        ));
    }

    #[test]
    fn report_serializes() {
        let y = build_yangian(0.0, 1.0, 0.0);
        let r = &verify_transition_identities(&y, &samples(1, 20)).unwrap()[0];
        let v = serde_json::to_value(r).unwrap();
        for key in ["identity", "max_residual", "n_samples", "params"] {
            assert!(v.get(key).is_some());
        }
        assert!(v["params"].get("eta").is_some());
    }
}
