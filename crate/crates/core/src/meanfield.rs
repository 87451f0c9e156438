//! Linearized pair Hamiltonian, its coherent-operator diagonalization and
//! the paired ground state.
//!
//! For one momentum pair
//!
//! ```text
//! H(k) = ε Q + Δ·T† + Δ*·T,      Δ = −½|Δ| e^{iλ} d(Θ, Φ)
//! W    = exp{ξ d·T† − ξ* d·T},   ξ = r e^{iλ},  tan 2r = |Δ|/ε
//! ```
//!
//! and `W†H(k)W = E Q` with `E = √(ε² + |Δ|²)`. The branch `2r = atan2(|Δ|, ε)`
//! keeps `E > 0` on both sides of the Fermi surface, so `W|vac⟩` is the
//! ground state with energy `−E`.
//!
//! Pair kets `|α,β⟩` carry spin `α` at `+k` and `β` at `−k` and are built as
//! `a†_{−kβ} a†_{kα}|vac⟩`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{matrix_exponential, DenseComplexMatrix, FockSpace, ModeIndex, Spin, StateVector};
use crate::harmonics::{angles_of, y1};
use crate::matrix::{c, I, ZERO};
use crate::so5::GeneratorSet;

pub const DIAG_TOL: f64 = 1e-10;

/// Largest `|Δ × Δ*|` accepted as "a phase times a real vector".
pub const UNITARY_TOL: f64 = 1e-12;

/// Complex order-parameter vector with its polar decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DVector {
    pub delta: [Complex64; 3],
    pub magnitude: f64,
    pub lambda: f64,
    pub theta: f64,
    pub phi: f64,
}

impl DVector {
    pub fn zero() -> Self {
        Self::from_polar(0.0, 0.0, 0.0, 0.0)
    }

    /// `Δ = −½ magnitude e^{iλ} d(Θ, Φ)`.
    pub fn from_polar(magnitude: f64, lambda: f64, theta: f64, phi: f64) -> Self {
        let d = direction(theta, phi);
        let pre = Complex64::from_polar(-0.5 * magnitude, lambda);
        Self {
            delta: d.map(|x| pre * x),
            magnitude,
            lambda: lambda.rem_euclid(TAU),
            theta,
            phi,
        }
    }

    /// Decomposes a complex vector. The phase is chosen so that the largest
    /// component of `d` is positive.
    pub fn from_complex(delta: [Complex64; 3]) -> Result<Self> {
        let norm = delta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(Self::zero());
        }
        let cross = cross_conj_norm(&delta);
        if cross > UNITARY_TOL * norm * norm {
            return Err(Error::NotUnitaryOrderParameter { cross });
        }
        let big = (0..3)
            .max_by(|&a, &b| delta[a].norm().total_cmp(&delta[b].norm()))
            .unwrap();
        let lambda = (-delta[big]).arg().rem_euclid(TAU);
        let unphase = Complex64::from_polar(-1.0 / norm, -lambda);
        let d = delta.map(|z| (z * unphase).re);
        let (theta, phi) = angles_of(&d);
        Ok(Self {
            delta,
            magnitude: 2.0 * norm,
            lambda,
            theta,
            phi,
        })
    }

    pub fn d(&self) -> [f64; 3] {
        direction(self.theta, self.phi)
    }

    /// Residual of `Δ = −½|Δ|e^{iλ}d` against the stored vector.
    pub fn reconstruction_residual(&self) -> f64 {
        let back = Self::from_polar(self.magnitude, self.lambda, self.theta, self.phi);
        (0..3)
            .map(|i| (back.delta[i] - self.delta[i]).norm())
            .fold(0.0, f64::max)
    }
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    crate::harmonics::unit_vector(theta, phi)
}

fn cross_conj_norm(v: &[Complex64; 3]) -> f64 {
    let w = v.map(|z| z.conj());
    let x = [
        v[1] * w[2] - v[2] * w[1],
        v[2] * w[0] - v[0] * w[2],
        v[0] * w[1] - v[1] * w[0],
    ];
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldPoint {
    pub epsilon: f64,
    pub delta: DVector,
}

impl MeanFieldPoint {
    pub fn new(epsilon: f64, delta: DVector) -> Self {
        Self { epsilon, delta }
    }

    pub fn energy(&self) -> f64 {
        self.epsilon.hypot(self.delta.magnitude)
    }
}

/// Parameters of the coherent operator `W(ξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentParams {
    pub r: f64,
    pub lambda: f64,
    pub theta: f64,
    pub phi: f64,
}

impl CoherentParams {
    /// `2r = atan2(|Δ|, ε)`, so `r ∈ [0, π/2]` and `r = π/4` on the Fermi
    /// surface.
    pub fn from_point(p: &MeanFieldPoint) -> Self {
        Self {
            r: 0.5 * p.delta.magnitude.atan2(p.epsilon),
            lambda: p.delta.lambda,
            theta: p.delta.theta,
            phi: p.delta.phi,
        }
    }

    pub fn d(&self) -> [f64; 3] {
        direction(self.theta, self.phi)
    }
}

fn real_vec(d: [f64; 3]) -> [Complex64; 3] {
    d.map(c)
}

pub fn build_hk(point: &MeanFieldPoint, gen: &GeneratorSet) -> DenseComplexMatrix {
    let conj = point.delta.delta.map(|z| z.conj());
    &(&gen.q.scale_re(point.epsilon) + &gen.dot_tdag(&point.delta.delta)) + &gen.dot_t(&conj)
}

pub fn coherent_operator(p: &CoherentParams, gen: &GeneratorSet) -> Result<DenseComplexMatrix> {
    let x = gen.dot_tdag(&real_vec(p.d()));
    let xi = Complex64::from_polar(p.r, p.lambda);
    let gen_matrix = &x.scale(xi) - &x.adjoint().scale(xi.conj());
    matrix_exponential(&gen_matrix)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagReport {
    pub epsilon: f64,
    pub delta_magnitude: f64,
    /// `[λ, Θ, Φ]`.
    pub angles: [f64; 3],
    pub energy: f64,
    /// `‖W†H(k)W − E Q‖_max`.
    pub residual: f64,
    /// `‖W†H(k)W + E Q‖_max`, the opposite overall sign.
    pub opposite_sign_residual: f64,
    /// Largest gap between the sorted spectra of `H(k)` and `E Q`.
    pub spectrum_residual: f64,
    pub passed: bool,
}

pub fn verify_diagonalization(point: &MeanFieldPoint, gen: &GeneratorSet) -> Result<DiagReport> {
    let params = CoherentParams::from_point(point);
    let w = coherent_operator(&params, gen)?;
    let h = build_hk(point, gen);
    let rotated = &(&w.adjoint() * &h) * &w;
    let e = point.energy();
    let eq = gen.q.scale_re(e);
    let residual = rotated.max_abs_diff(&eq);
    let opposite_sign_residual = rotated.max_abs_diff(&eq.scale_re(-1.0));
    let spectrum_residual = h
        .hermitian_eigenvalues()
        .iter()
        .zip(eq.hermitian_eigenvalues())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(DiagReport {
        epsilon: point.epsilon,
        delta_magnitude: point.delta.magnitude,
        angles: [params.lambda, params.theta, params.phi],
        energy: e,
        residual,
        opposite_sign_residual,
        spectrum_residual,
        passed: residual < DIAG_TOL && spectrum_residual < DIAG_TOL,
    })
}

/// `W(ξ)|vac⟩`.
pub fn coherent_state(p: &CoherentParams, gen: &GeneratorSet) -> Result<StateVector> {
    let w = coherent_operator(p, gen)?;
    let n = w.dim();
    Ok(StateVector((0..n).map(|row| w.get(row, 0)).collect()))
}

/// The coherent state expanded on pair kets:
/// `cos²r|0,0⟩ − e^{2iλ}sin²r|↑↓,↑↓⟩ + (i/2)e^{iλ}sin2r{cosΘ(|↑,↓⟩+|↓,↑⟩)
/// − sinΘe^{−iΦ}|↑,↑⟩ + sinΘe^{iΦ}|↓,↓⟩}`.
pub fn closed_form_state(p: &CoherentParams, fock: &FockSpace) -> StateVector {
    let (sr, cr) = p.r.sin_cos();
    let pre = 0.5 * I * Complex64::from_polar((2.0 * p.r).sin(), p.lambda);
    let (st, ct) = p.theta.sin_cos();
    triplet_state(
        fock,
        c(cr * cr),
        -Complex64::from_polar(sr * sr, 2.0 * p.lambda),
        [
            -pre * Complex64::from_polar(st, -p.phi),
            pre * ct,
            pre * Complex64::from_polar(st, p.phi),
        ],
    )
}

/// `a|0,0⟩ + b|↑↓,↑↓⟩ + t₊|↑,↑⟩ + t₀(|↑,↓⟩+|↓,↑⟩) + t₋|↓,↓⟩`.
fn triplet_state(fock: &FockSpace, a: Complex64, b: Complex64, t: [Complex64; 3]) -> StateVector {
    let mut v = StateVector::zeros(fock.dim());
    v.axpy(a, &fock.vacuum());
    v.axpy(b, &fock.full_ket());
    v.axpy(t[0], &fock.pair_ket(Spin::Up, Spin::Up));
    v.axpy(t[1], &fock.pair_ket(Spin::Up, Spin::Down));
    v.axpy(t[1], &fock.pair_ket(Spin::Down, Spin::Up));
    v.axpy(t[2], &fock.pair_ket(Spin::Down, Spin::Down));
    v
}

/// Ground state with `d = n` along the momentum direction `(θ, ψ)`,
/// written with `(E±ε)/2E` weights and `l = 1` harmonics.
pub fn bw_state(fock: &FockSpace, epsilon: f64, magnitude: f64, lambda: f64, theta: f64, psi: f64) -> StateVector {
    let e = epsilon.hypot(magnitude);
    if e == 0.0 {
        return fock.vacuum();
    }
    let pre = -I * Complex64::from_polar(magnitude / (2.0 * e), lambda) * (8.0 * PI / 3.0).sqrt();
    triplet_state(
        fock,
        c((e + epsilon) / (2.0 * e)),
        -Complex64::from_polar((e - epsilon) / (2.0 * e), 2.0 * lambda),
        [
            pre * y1(-1, theta, psi),
            -pre * y1(0, theta, psi) * std::f64::consts::FRAC_1_SQRT_2,
            pre * y1(1, theta, psi),
        ],
    )
}

/// Order parameter of the non-ESP state: `d = ẑ` and complex pair amplitude
/// `A = |Δ|e^{i(λ+π/2)} = Δ₀ Y₁₁(θ, ψ)`, so that `Δ = (i/2) A ẑ`.
pub fn nonesp_delta(delta0: f64, theta: f64, psi: f64) -> Result<DVector> {
    let a = y1(1, theta, psi) * delta0;
    DVector::from_complex([ZERO, ZERO, 0.5 * I * a])
}

/// Ground state of the non-ESP order parameter with pair amplitude `A`:
/// `(E+ε)/2E|0,0⟩ + (A/|A|)²(E−ε)/2E|↑↓,↑↓⟩ + A/2E(|↑,↓⟩+|↓,↑⟩)`.
pub fn nonesp_state(fock: &FockSpace, epsilon: f64, amplitude: Complex64) -> StateVector {
    let mag = amplitude.norm();
    let e = epsilon.hypot(mag);
    if e == 0.0 {
        return fock.vacuum();
    }
    let phase2 = if mag == 0.0 { ZERO } else { (amplitude / mag).powi(2) };
    triplet_state(
        fock,
        c((e + epsilon) / (2.0 * e)),
        phase2 * ((e - epsilon) / (2.0 * e)),
        [ZERO, amplitude / (2.0 * e), ZERO],
    )
}

/// `⟨ψ|T_i|ψ⟩`.
pub fn pair_expectation(state: &StateVector, gen: &GeneratorSet) -> [Complex64; 3] {
    let v = state.amplitudes();
    [0, 1, 2].map(|i| gen.t[i].expectation(v, v))
}

/// `⟨ψ|H|ψ⟩` and the variance `⟨H²⟩ − ⟨H⟩²`.
pub fn energy_and_variance(h: &DenseComplexMatrix, state: &StateVector) -> (f64, f64) {
    let v = state.amplitudes();
    let hv = h.apply(v);
    let mean = h.expectation(v, v).re;
    let sq: f64 = hv.iter().map(|z| z.norm_sqr()).sum();
    (mean, sq - mean * mean)
}

/// The c-number offset `E* = Δ·⟨T†⟩ − ε` of the linearized Hamiltonian
/// `H_mf = Σ_k {H(k) − E*(k)}`.
pub fn offset_energy(point: &MeanFieldPoint, pair: &[Complex64; 3]) -> Complex64 {
    let dot: Complex64 = (0..3).map(|i| point.delta.delta[i] * pair[i].conj()).sum();
    dot - point.epsilon
}

/// Gap between `⟨H(k)⟩ − E*` and the factorized energy
/// `ε⟨Q + 1⟩ + Δ·⟨T†⟩` of the pair in the state.
pub fn offset_bookkeeping_residual(point: &MeanFieldPoint, state: &StateVector, gen: &GeneratorSet) -> f64 {
    let v = state.amplitudes();
    let pair = pair_expectation(state, gen);
    let h = build_hk(point, gen);
    let lhs = h.expectation(v, v) - offset_energy(point, &pair);
    let q = gen.q.expectation(v, v);
    let dot: Complex64 = (0..3).map(|i| point.delta.delta[i] * pair[i].conj()).sum();
    let rhs = (q + 1.0) * point.epsilon + dot;
    (lhs - rhs).norm()
}

/// `H(k) − μB(n_{k↑} − n_{k↓} + n_{−k↑} − n_{−k↓})`.
pub fn field_hamiltonian(
    point: &MeanFieldPoint,
    mu_b: f64,
    gen: &GeneratorSet,
    fock: &FockSpace,
) -> DenseComplexMatrix {
    let mz = &(&fock.number(ModeIndex::K_UP) - &fock.number(ModeIndex::K_DOWN))
        + &(&fock.number(ModeIndex::MINUS_K_UP) - &fock.number(ModeIndex::MINUS_K_DOWN));
    &build_hk(point, gen) - &mz.scale_re(mu_b)
}

/// The diagonal form claimed for the rotated field Hamiltonian:
/// `½E(1+μB/ε)(n_{k↓}+n_{−k↓}) + ½E(1−μB/ε)(n_{k↑}+n_{−k↑}) − E`.
pub fn claimed_field_form(point: &MeanFieldPoint, mu_b: f64, fock: &FockSpace) -> Result<DenseComplexMatrix> {
    if point.epsilon == 0.0 {
        return Err(Error::FermiSurfaceSingularity);
    }
    let e = point.energy();
    let ratio = mu_b / point.epsilon;
    let down = &fock.number(ModeIndex::K_DOWN) + &fock.number(ModeIndex::MINUS_K_DOWN);
    let up = &fock.number(ModeIndex::K_UP) + &fock.number(ModeIndex::MINUS_K_UP);
    Ok(
        &(&down.scale_re(0.5 * e * (1.0 + ratio)) + &up.scale_re(0.5 * e * (1.0 - ratio)))
            - &fock.identity().scale_re(e),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub epsilon: f64,
    pub delta_magnitude: f64,
    pub mu_b: f64,
    pub angles: [f64; 3],
    /// `‖W†H_B W − claimed‖_max` with the zero-field `W`.
    pub residual: f64,
    /// Largest gap between the sorted spectra of `H_B` and the claimed form.
    pub spectrum_residual: f64,
    pub claim_holds: bool,
}

pub fn verify_field_diagonalization(
    point: &MeanFieldPoint,
    mu_b: f64,
    gen: &GeneratorSet,
    fock: &FockSpace,
) -> Result<FieldReport> {
    let claimed = claimed_field_form(point, mu_b, fock)?;
    let params = CoherentParams::from_point(point);
    let w = coherent_operator(&params, gen)?;
    let hb = field_hamiltonian(point, mu_b, gen, fock);
    let rotated = &(&w.adjoint() * &hb) * &w;
    let residual = rotated.max_abs_diff(&claimed);
    let spectrum_residual = hb
        .hermitian_eigenvalues()
        .iter()
        .zip(claimed.hermitian_eigenvalues())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(FieldReport {
        epsilon: point.epsilon,
        delta_magnitude: point.delta.magnitude,
        mu_b,
        angles: [params.lambda, params.theta, params.phi],
        residual,
        spectrum_residual,
        claim_holds: residual < DIAG_TOL,
    })
}
