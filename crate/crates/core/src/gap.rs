//! Self-consistent gap equation for the separable p-wave pairing kernel
//! `V_kk' = −3V₁ n·n'` inside the shell `|ε| < ωc`.
//!
//! In vector form, with `g = N₀V₁`, `|Δ| = 2‖Δ‖` and `E = √(ε² + |Δ|²)`,
//!
//! ```text
//! Δ(k) = 3g ∫dε' ∫dΩ'/4π (n·n') Δ(k') tanh(βE'/2) / 2E'
//! ```
//!
//! The kernel is rank three, `3 n·n' = 3 Σ_j n_j n'_j`, so the full
//! right-hand side on an angular grid costs one energy integral per polar
//! ring plus a 3×3 moment sum.
//!
//! Two ansätze close under the kernel (phase `λ = 0`):
//! * BW, `Δ(k) = −½Δ₀ n`, with isotropic `|Δ| = Δ₀`;
//! * non-ESP, `Δ(k) = (i/2)Δ₀ Y₁₁(n) ẑ`, with `|Δ| = Δ₀ √(3/8π) sinθ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::harmonics::y1;
use crate::matrix::{c, I, ZERO};
use crate::meanfield::{coherent_state, pair_expectation, CoherentParams, DVector, MeanFieldPoint};
use crate::quadrature::{AngularGrid, AngularNode, EnergyGrid};
use crate::so5::GeneratorSet;

/// sinh-map scale of the energy grid, in units of `ωc`.
pub const ENERGY_SCALE: f64 = 1e-3;

/// Upper end of the `Δ₀` bracket, in units of `ωc`.
pub const DELTA_BRACKET: f64 = 10.0;

pub const RESIDUAL_TOL: f64 = 1e-10;
pub const BRACKET_TOL: f64 = 1e-12;

/// Lowest critical temperature the solver resolves, in units of `ωc`.
pub const MIN_TC: f64 = 1e-6;

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Bw,
    NonEsp,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Bw => "bw",
            Branch::NonEsp => "non_esp",
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "bw" => Ok(Branch::Bw),
            "non_esp" | "nonesp" => Ok(Branch::NonEsp),
            _ => Err(Error::InvalidParameter {
                name: "branch",
                reason: format!("unknown branch `{s}`, expected bw or non_esp"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapModel {
    /// Pairing strength `V₁`.
    pub coupling: f64,
    /// Density of states `N₀` at the Fermi level.
    pub dos: f64,
    pub omega_c: f64,
    /// Temperature in energy units (`k_B = 1`).
    pub temperature: f64,
    pub branch: Branch,
    /// Zeeman energy `μB`.
    pub mu_b: f64,
    /// Gauss–Legendre nodes on each side of the Fermi surface.
    pub n_energy: usize,
    pub n_theta: usize,
    pub n_psi: usize,
}

impl Default for GapModel {
    fn default() -> Self {
        Self {
            coupling: 0.25,
            dos: 1.0,
            omega_c: 1.0,
            temperature: 0.0,
            branch: Branch::Bw,
            mu_b: 0.0,
            n_energy: 256,
            n_theta: 16,
            n_psi: 16,
        }
    }
}

fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

impl GapModel {
    pub fn with_coupling(g: f64) -> Self {
        Self {
            coupling: g,
            ..Self::default()
        }
    }

    /// Dimensionless coupling `g = N₀V₁`.
    pub fn g(&self) -> f64 {
        self.dos * self.coupling
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.g();
        if !(g > 0.0 && g < 1.0) {
            return Err(invalid("g", format!("N0*V1 = {g} outside (0, 1)")));
        }
        if !(self.omega_c.is_finite() && self.omega_c > 0.0) {
            return Err(invalid("omega_c", format!("{} is not a positive cutoff", self.omega_c)));
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(invalid("T", format!("{} is not a temperature", self.temperature)));
        }
        if !self.mu_b.is_finite() {
            return Err(invalid("muB", "not finite"));
        }
        Ok(())
    }

    pub fn at_temperature(&self, t: f64) -> Self {
        Self {
            temperature: t,
            ..self.clone()
        }
    }

    pub fn discretize(&self) -> Result<Discretization> {
        self.validate()?;
        Ok(Discretization {
            energy: EnergyGrid::sinh_mapped(self.omega_c, self.n_energy, ENERGY_SCALE * self.omega_c)?,
            angles: AngularGrid::product(self.n_theta, self.n_psi)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub energy: EnergyGrid,
    pub angles: AngularGrid,
}

pub fn quasiparticle_energy(epsilon: f64, delta_mag: f64) -> f64 {
    epsilon.hypot(delta_mag)
}

/// `tanh(βE/2)`, equal to one at `T = 0`.
pub fn thermal_factor(e: f64, t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        (0.5 * e / t).tanh()
    }
}

/// `⟨n_kα⟩ = ½[1 − (ε/E) tanh(βE/2)]`.
pub fn occupation(epsilon: f64, e: f64, t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(invalid("T", format!("{t} is negative")));
    }
    let ratio_tanh = if e == 0.0 {
        // tanh(βE/2)/E → β/2
        if t == 0.0 {
            return Ok(if epsilon > 0.0 { 0.0 } else { 0.5 });
        }
        0.5 / t
    } else {
        thermal_factor(e, t) / e
    };
    Ok(0.5 * (1.0 - epsilon * ratio_tanh))
}

/// Branch order parameter at unit `Δ₀`.
pub fn unit_ansatz(branch: Branch, node: &AngularNode) -> [Complex64; 3] {
    match branch {
        Branch::Bw => node.n.map(|x| c(-0.5 * x)),
        Branch::NonEsp => [ZERO, ZERO, 0.5 * I * y1(1, node.theta, node.psi)],
    }
}

/// `|Δ(k)|` per unit `Δ₀` on a ring of polar angle `θ`.
pub fn unit_magnitude(branch: Branch, theta: f64) -> f64 {
    match branch {
        Branch::Bw => 1.0,
        Branch::NonEsp => (3.0 / (8.0 * PI)).sqrt() * theta.sin().abs(),
    }
}

/// `∫dε tanh(βE/2)/2E` at fixed `|Δ|`.
fn energy_kernel(grid: &EnergyGrid, magnitude: f64, t: f64) -> f64 {
    grid.integrate(|e| {
        let en = quasiparticle_energy(e, magnitude);
        thermal_factor(en, t) / (2.0 * en)
    })
}

fn ring_kernels(model: &GapModel, disc: &Discretization, delta0: f64) -> Vec<f64> {
    disc.angles
        .ring_theta
        .iter()
        .map(|&th| {
            energy_kernel(
                &disc.energy,
                delta0 * unit_magnitude(model.branch, th),
                model.temperature,
            )
        })
        .collect()
}

/// Kernel applied to `Δ₀ × ansatz`, per unit `Δ₀`, on every grid node.
fn unit_rhs(model: &GapModel, disc: &Discretization, delta0: f64) -> Vec<[Complex64; 3]> {
    let kern = ring_kernels(model, disc, delta0);
    // m[j][i] = ∫dΩ'/4π n'_j Δ_i(n') F(n')
    let mut m = [[ZERO; 3]; 3];
    for nd in &disc.angles.nodes {
        let a = unit_ansatz(model.branch, nd);
        let f = kern[nd.ring] * nd.weight;
        for (j, row) in m.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                *entry += a[i] * (nd.n[j] * f);
            }
        }
    }
    let g3 = 3.0 * model.g();
    disc.angles
        .nodes
        .iter()
        .map(|nd| {
            let mut out = [ZERO; 3];
            for (i, o) in out.iter_mut().enumerate() {
                *o = (0..3).map(|j| m[j][i] * nd.n[j]).sum::<Complex64>() * g3;
            }
            out
        })
        .collect()
}

/// Projection of the kernel output on the branch profile, per unit `Δ₀`.
/// The nonzero root of the gap equation is where this equals one.
fn gain(model: &GapModel, disc: &Discretization, delta0: f64) -> f64 {
    let rhs = unit_rhs(model, disc, delta0);
    let mut num = 0.0;
    let mut den = 0.0;
    for (nd, r) in disc.angles.nodes.iter().zip(&rhs) {
        let a = unit_ansatz(model.branch, nd);
        for i in 0..3 {
            num += nd.weight * (a[i].conj() * r[i]).re;
            den += nd.weight * a[i].norm_sqr();
        }
    }
    num / den
}

/// `Δ₀` minus the profile projection of the right-hand side at `Δ₀`.
pub fn gap_residual(delta0: f64, model: &GapModel) -> Result<f64> {
    let disc = model.discretize()?;
    Ok(residual_on(model, &disc, delta0))
}

fn residual_on(model: &GapModel, disc: &Discretization, delta0: f64) -> f64 {
    if delta0 == 0.0 {
        return 0.0;
    }
    delta0 * (1.0 - gain(model, disc, delta0))
}

/// Kernel output at `Δ₀` on every angular node, without any projection.
pub fn full_rhs(model: &GapModel, delta0: f64) -> Result<Vec<[Complex64; 3]>> {
    let disc = model.discretize()?;
    Ok(unit_rhs(model, &disc, delta0)
        .into_iter()
        .map(|r| r.map(|z| z * delta0))
        .collect())
}

/// Largest nodewise `|RHS_i(k) − Δ_i(k)|` at `Δ₀`.
pub fn self_consistency_residual(model: &GapModel, delta0: f64) -> Result<f64> {
    let disc = model.discretize()?;
    let rhs = unit_rhs(model, &disc, delta0);
    Ok(disc
        .angles
        .nodes
        .iter()
        .zip(&rhs)
        .flat_map(|(nd, r)| {
            let a = unit_ansatz(model.branch, nd);
            (0..3).map(move |i| ((r[i] - a[i]) * delta0).norm())
        })
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSolution {
    pub delta0: f64,
    pub branch: Branch,
    pub temperature: f64,
    pub g: f64,
    pub omega_c: f64,
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
    pub theta: Vec<f64>,
    pub psi: Vec<f64>,
    /// `|Δ(k)|` regenerated from the kernel at `Δ₀` on each angular node.
    pub gap_function: Vec<f64>,
}

impl GapSolution {
    /// Largest deviation of the normalized gap function from the branch
    /// profile (a constant for BW, `|sinθ|` for non-ESP).
    pub fn profile_residual(&self) -> f64 {
        if self.delta0 == 0.0 {
            return self.gap_function.iter().fold(0.0, |m, x| m.max(x.abs()));
        }
        let shape: Vec<f64> = self.theta.iter().map(|&t| unit_magnitude(self.branch, t)).collect();
        let scale = self.delta0;
        self.gap_function
            .iter()
            .zip(&shape)
            .map(|(g, s)| (g / scale - s).abs())
            .fold(0.0, f64::max)
            / shape.iter().fold(0.0, |m: f64, s| m.max(*s))
    }
}

/// Largest root of the gap equation in `[0, 10ωc]` by bisection.
pub fn solve_gap(model: &GapModel) -> Result<GapSolution> {
    let disc = model.discretize()?;
    let wc = model.omega_c;
    let mut iterations = 0;
    let (delta0, residual, converged) = if gain(model, &disc, 0.0) <= 1.0 {
        (0.0, 0.0, true)
    } else {
        let mut hi = DELTA_BRACKET * wc;
        if residual_on(model, &disc, hi) <= 0.0 {
            return Err(invalid("g", "gap root lies above the search bracket"));
        }
        let mut lo = hi;
        loop {
            lo *= 0.1;
            if residual_on(model, &disc, lo) < 0.0 {
                break;
            }
            hi = lo;
            if lo < 1e-30 * wc {
                return Ok(normal_solution(model, &disc, 0, false));
            }
        }
        let mut mid = 0.5 * (lo + hi);
        let mut res = residual_on(model, &disc, mid);
        while iterations < MAX_BISECTIONS && !(hi - lo < BRACKET_TOL * wc && res.abs() < RESIDUAL_TOL * wc) {
            if res < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            mid = 0.5 * (lo + hi);
            res = residual_on(model, &disc, mid);
            iterations += 1;
        }
        let ok = hi - lo < BRACKET_TOL * wc && res.abs() < RESIDUAL_TOL * wc;
        (mid, res, ok)
    };
    if delta0 == 0.0 {
        return Ok(normal_solution(model, &disc, iterations, converged));
    }
    let rhs = unit_rhs(model, &disc, delta0);
    let gap_function = rhs
        .iter()
        .map(|r| 2.0 * delta0 * r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    Ok(GapSolution {
        delta0,
        branch: model.branch,
        temperature: model.temperature,
        g: model.g(),
        omega_c: wc,
        residual,
        converged,
        iterations,
        theta: disc.angles.nodes.iter().map(|n| n.theta).collect(),
        psi: disc.angles.nodes.iter().map(|n| n.psi).collect(),
        gap_function,
    })
}

fn normal_solution(model: &GapModel, disc: &Discretization, iterations: usize, converged: bool) -> GapSolution {
    GapSolution {
        delta0: 0.0,
        branch: model.branch,
        temperature: model.temperature,
        g: model.g(),
        omega_c: model.omega_c,
        residual: 0.0,
        converged,
        iterations,
        theta: disc.angles.nodes.iter().map(|n| n.theta).collect(),
        psi: disc.angles.nodes.iter().map(|n| n.psi).collect(),
        gap_function: vec![0.0; disc.angles.len()],
    }
}

/// Temperature at which the linearized kernel has unit gain on the branch
/// profile, by bisection to `1e-12 ωc`.
pub fn critical_temperature(model: &GapModel) -> Result<f64> {
    let disc = model.discretize()?;
    let wc = model.omega_c;
    let gain_at = |t: f64| gain(&model.at_temperature(t), &disc, 0.0);
    let mut lo = MIN_TC * wc;
    if gain_at(lo) <= 1.0 {
        return Err(Error::CriticalTemperatureUnresolved { limit: lo });
    }
    let mut hi = wc;
    while gain_at(hi) > 1.0 {
        hi *= 2.0;
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo < BRACKET_TOL * wc {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if gain_at(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `Δ₀(T)` on `n` evenly spaced temperatures in `[t_min, t_max]`.
pub fn sweep_temperature(model: &GapModel, t_min: f64, t_max: f64, n: usize) -> Result<Vec<GapSolution>> {
    if n == 0 {
        return Err(invalid("n", "sweep needs at least one temperature"));
    }
    if !(t_min >= 0.0 && t_max >= t_min) {
        return Err(invalid("T", format!("bad sweep range [{t_min}, {t_max}]")));
    }
    (0..n)
        .map(|i| {
            let t = if n == 1 {
                t_min
            } else {
                t_min + (t_max - t_min) * i as f64 / (n - 1) as f64
            };
            solve_gap(&model.at_temperature(t))
        })
        .collect()
}

/// Spin components of the order parameter in a Zeeman field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGap {
    pub mu_b: f64,
    pub theta: Vec<f64>,
    pub psi: Vec<f64>,
    pub up_up: Vec<Complex64>,
    pub down_down: Vec<Complex64>,
    /// Energy weight `∫dε` of the dropped window `|ε| ≤ |μB|`.
    pub excluded_weight: f64,
}

impl FieldGap {
    /// Largest `||Δ↑↑| − |Δ↓↓||` over nodes.
    pub fn magnitude_split(&self) -> f64 {
        self.up_up
            .iter()
            .zip(&self.down_down)
            .map(|(a, b)| (a.norm() - b.norm()).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation of `Δ(k)/Y_{1m}(k)` from its mean, relative to the
    /// mean, for `Δ↑↑` against `m = 1` and `Δ↓↓` against `m = −1`.
    pub fn harmonic_residual(&self) -> f64 {
        let ratio = |vals: &[Complex64], m: i32| -> f64 {
            let r: Vec<Complex64> = vals
                .iter()
                .zip(self.theta.iter().zip(&self.psi))
                .map(|(v, (&t, &p))| v / y1(m, t, p))
                .collect();
            let mean = r.iter().sum::<Complex64>() / r.len() as f64;
            if mean.norm() == 0.0 {
                return r.iter().fold(0.0, |a, z| a.max(z.norm()));
            }
            r.iter().fold(0.0_f64, |a, z| a.max((z - mean).norm())) / mean.norm()
        };
        ratio(&self.up_up, 1).max(ratio(&self.down_down, -1))
    }
}

/// Equal-spin components from an input with `|Δ(k')| = Δ₀√(3/8π) sinθ'`,
/// spin azimuth `Φ' = ψ'` and `λ = 0`:
///
/// ```text
/// Δ↑↑(k) = −¾g ∫dε'∫dΩ'/4π (n·n') |Δ'|/2E' e^{iΦ'} tanh[½βE'(1 − μB/ε')]
/// Δ↓↓(k) = −¾g ∫dε'∫dΩ'/4π (n·n') |Δ'|/2E' e^{−iΦ'} tanh[½βE'(1 + μB/ε')]
/// ```
///
/// Energy nodes with `|ε'| ≤ |μB|` are dropped.
pub fn field_gap_components(model: &GapModel, delta0: f64) -> Result<FieldGap> {
    let disc = model.discretize()?;
    if model.temperature <= 0.0 {
        return Err(invalid("T", "field components need T > 0"));
    }
    let t = model.temperature;
    let b = model.mu_b;
    let mut excluded_weight = 0.0;
    for (&e, &w) in disc.energy.nodes.iter().zip(&disc.energy.weights) {
        if e.abs() <= b.abs() {
            excluded_weight += w;
        }
    }
    let ring_weight = |mag: f64, sign: f64| -> f64 {
        disc.energy
            .nodes
            .iter()
            .zip(&disc.energy.weights)
            .filter(|(e, _)| e.abs() > b.abs())
            .map(|(&e, &w)| {
                let en = quasiparticle_energy(e, mag);
                w * mag / (2.0 * en) * (0.5 * en * (1.0 - sign * b / e) / t).tanh()
            })
            .sum()
    };
    let mut mom_up = [ZERO; 3];
    let mut mom_down = [ZERO; 3];
    let mags: Vec<f64> = disc
        .angles
        .ring_theta
        .iter()
        .map(|&th| delta0 * unit_magnitude(Branch::NonEsp, th))
        .collect();
    let up: Vec<f64> = mags.iter().map(|&m| ring_weight(m, 1.0)).collect();
    let down: Vec<f64> = mags.iter().map(|&m| ring_weight(m, -1.0)).collect();
    for nd in &disc.angles.nodes {
        let ph = Complex64::from_polar(1.0, nd.psi);
        for j in 0..3 {
            mom_up[j] += ph * (nd.n[j] * nd.weight * up[nd.ring]);
            mom_down[j] += ph.conj() * (nd.n[j] * nd.weight * down[nd.ring]);
        }
    }
    let pre = -0.75 * model.g();
    let apply =
        |mom: &[Complex64; 3], n: &[f64; 3]| -> Complex64 { (0..3).map(|j| mom[j] * n[j]).sum::<Complex64>() * pre };
    Ok(FieldGap {
        mu_b: b,
        theta: disc.angles.nodes.iter().map(|n| n.theta).collect(),
        psi: disc.angles.nodes.iter().map(|n| n.psi).collect(),
        up_up: disc.angles.nodes.iter().map(|nd| apply(&mom_up, &nd.n)).collect(),
        down_down: disc.angles.nodes.iter().map(|nd| apply(&mom_down, &nd.n)).collect(),
        excluded_weight,
    })
}

/// Compares the gap integrand `Δ(k')/2E' tanh(βE'/2)` with `−¼⟨T(k')⟩`
/// taken from the coherent ground state and weighted by `tanh(βE'/2)`,
/// on a strided subset of grid nodes. Returns the largest mismatch.
pub fn meanfield_consistency_residual(model: &GapModel, delta0: f64, stride: usize) -> Result<f64> {
    let disc = model.discretize()?;
    let fock = FockSpace::new();
    let gen = GeneratorSet::build(&fock);
    let stride = stride.max(1);
    let mut worst: f64 = 0.0;
    for nd in disc.angles.nodes.iter().step_by(stride) {
        let dv = unit_ansatz(model.branch, nd).map(|z| z * delta0);
        let delta = DVector::from_complex(dv)?;
        for &eps in disc.energy.nodes.iter().step_by(stride) {
            let point = MeanFieldPoint::new(eps, delta);
            let e = point.energy();
            let th = thermal_factor(e, model.temperature);
            let state = coherent_state(&CoherentParams::from_point(&point), &gen)?;
            let t = pair_expectation(&state, &gen);
            for i in 0..3 {
                let integrand = dv[i] / (2.0 * e) * th;
                worst = worst.max((integrand + 0.25 * t[i] * th).norm());
            }
        }
    }
    Ok(worst)
}
