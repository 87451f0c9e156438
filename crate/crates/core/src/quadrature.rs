//! Quadrature grids for the Fermi shell.
//!
//! The energy axis `[−ωc, ωc]` is split at the Fermi surface and each half
//! is mapped through `ε = ±s sinh t`, which crowds Gauss–Legendre nodes
//! toward `ε = 0` where the gap integrand varies fastest. No node sits on
//! `ε = 0`. Directions use Gauss–Legendre in `cosθ` and the trapezoid rule
//! in `ψ`; angular weights are normalized to `∫dΩ/4π = 1`.

use std::f64::consts::TAU;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::unit_vector;

/// Smallest order accepted per axis.
pub const MIN_ORDER: usize = 8;

fn legendre(order: usize) -> Result<Vec<(f64, f64)>> {
    let rule = GaussLegendre::new(order).map_err(|e| Error::InvalidParameter {
        name: "quadrature order",
        reason: e.to_string(),
    })?;
    let mut pairs = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs)
}

fn check_order(name: &'static str, n: usize) -> Result<()> {
    if n < MIN_ORDER {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("{n} < {MIN_ORDER}"),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl EnergyGrid {
    /// `per_side` Gauss–Legendre nodes on each half of the shell, sinh
    /// mapped with scale `s`.
    pub fn sinh_mapped(omega_c: f64, per_side: usize, s: f64) -> Result<Self> {
        check_order("n_energy", per_side)?;
        if !(omega_c > 0.0 && s > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega_c",
                reason: format!("shell half-width {omega_c} and scale {s} must be positive"),
            });
        }
        let tmax = (omega_c / s).asinh();
        let mut half: Vec<(f64, f64)> = legendre(per_side)?
            .into_iter()
            .map(|(x, w)| {
                let t = 0.5 * tmax * (x + 1.0);
                (s * t.sinh(), 0.5 * tmax * w * s * t.cosh())
            })
            .collect();
        half.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut nodes = Vec::with_capacity(2 * per_side);
        let mut weights = Vec::with_capacity(2 * per_side);
        for &(e, w) in half.iter().rev() {
            nodes.push(-e);
            weights.push(w);
        }
        for &(e, w) in &half {
            nodes.push(e);
            weights.push(w);
        }
        Ok(Self { nodes, weights })
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&e, &w)| w * f(e)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularNode {
    pub theta: f64,
    pub psi: f64,
    pub n: [f64; 3],
    pub weight: f64,
    /// Index of the `cosθ` node this direction belongs to.
    pub ring: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularGrid {
    pub nodes: Vec<AngularNode>,
    /// Polar angle of each `cosθ` ring.
    pub ring_theta: Vec<f64>,
}

impl AngularGrid {
    pub fn product(n_theta: usize, n_psi: usize) -> Result<Self> {
        check_order("n_theta", n_theta)?;
        check_order("n_psi", n_psi)?;
        let rings = legendre(n_theta)?;
        let mut nodes = Vec::with_capacity(n_theta * n_psi);
        let mut ring_theta = Vec::with_capacity(n_theta);
        for (ring, &(x, w)) in rings.iter().enumerate() {
            let theta = x.acos();
            ring_theta.push(theta);
            for j in 0..n_psi {
                let psi = TAU * j as f64 / n_psi as f64;
                nodes.push(AngularNode {
                    theta,
                    psi,
                    n: unit_vector(theta, psi),
                    weight: 0.5 * w / n_psi as f64,
                    ring,
                });
            }
        }
        Ok(Self { nodes, ring_theta })
    }

    /// `∫dΩ/4π f`.
    pub fn average<T>(&self, f: impl Fn(&AngularNode) -> T) -> T
    where
        T: std::ops::Mul<f64, Output = T> + std::iter::Sum,
    {
        self.nodes.iter().map(|nd| f(nd) * nd.weight).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_grid_is_symmetric_and_avoids_zero() {
        let g = EnergyGrid::sinh_mapped(1.0, 64, 1e-3).unwrap();
        assert_eq!(g.len(), 128);
        let total: f64 = g.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
        assert!(g.nodes.iter().all(|&e| e != 0.0 && e.abs() < 1.0));
        for i in 0..64 {
            assert_eq!(g.nodes[i], -g.nodes[127 - i]);
        }
    }

    #[test]
    fn energy_grid_integrates_log_kernel() {
        // ∫ dε / (2√(ε²+Δ²)) over the shell = asinh(ωc/Δ)
        let g = EnergyGrid::sinh_mapped(1.0, 128, 1e-3).unwrap();
        for delta in [1e-3, 0.0366, 0.5] {
            let v = g.integrate(|e| 0.5 / e.hypot(delta));
            assert!((v - (1.0 / delta).asinh()).abs() < 1e-12, "{delta}");
        }
    }

    #[test]
    fn angular_moments() {
        let a = AngularGrid::product(8, 8).unwrap();
        assert!((a.average(|_| 1.0) - 1.0).abs() < 1e-14);
        for i in 0..3 {
            for j in 0..3 {
                let m = a.average(|nd| nd.n[i] * nd.n[j]);
                let want = if i == j { 1.0 / 3.0 } else { 0.0 };
                assert!((m - want).abs() < 1e-14);
            }
        }
        assert!((a.average(|nd| nd.theta.sin().powi(2)) - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn orders_below_minimum_rejected() {
        assert!(EnergyGrid::sinh_mapped(1.0, 4, 1e-3).is_err());
        assert!(AngularGrid::product(8, 2).is_err());
        assert!(EnergyGrid::sinh_mapped(0.0, 16, 1e-3).is_err());
    }
}
