//! Fock space of one momentum pair: the four fermion modes
//! `(k↑, k↓, −k↑, −k↓)`.
//!
//! Basis states are occupation bitmasks (bit `b` set means mode `b` is
//! occupied); the vacuum is index 0. Creation operators carry a
//! Jordan–Wigner string over the lower-indexed modes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use crate::matrix::{anticommutator, commutator, matrix_exponential, DenseComplexMatrix};
use crate::matrix::{ONE, ZERO};

pub const N_MODES: usize = 4;
pub const FOCK_DIM: usize = 1 << N_MODES;
pub const VACUUM: usize = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Momentum {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    /// Row/column index in the Pauli matrices.
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub momentum: Momentum,
    pub spin: Spin,
}

impl ModeIndex {
    pub const K_UP: ModeIndex = ModeIndex::new(Momentum::Plus, Spin::Up);
    pub const K_DOWN: ModeIndex = ModeIndex::new(Momentum::Plus, Spin::Down);
    pub const MINUS_K_UP: ModeIndex = ModeIndex::new(Momentum::Minus, Spin::Up);
    pub const MINUS_K_DOWN: ModeIndex = ModeIndex::new(Momentum::Minus, Spin::Down);

    /// All modes in canonical order.
    pub const ALL: [ModeIndex; N_MODES] = [
        ModeIndex::K_UP,
        ModeIndex::K_DOWN,
        ModeIndex::MINUS_K_UP,
        ModeIndex::MINUS_K_DOWN,
    ];

    pub const fn new(momentum: Momentum, spin: Spin) -> Self {
        Self { momentum, spin }
    }

    pub fn bit(self) -> usize {
        let m = match self.momentum {
            Momentum::Plus => 0,
            Momentum::Minus => 2,
        };
        m + self.spin.index()
    }
}

/// `a†_mode` on the 16-dimensional space.
pub fn creation_op(mode: ModeIndex) -> DenseComplexMatrix {
    let j = mode.bit();
    let mut m = DenseComplexMatrix::zeros(FOCK_DIM);
    for n in 0..FOCK_DIM {
        if n & (1 << j) == 0 {
            let parity = (n & ((1 << j) - 1)).count_ones();
            let sign = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
            m.set(n | (1 << j), n, Complex64::new(sign, 0.0));
        }
    }
    m
}

pub fn annihilation_op(mode: ModeIndex) -> DenseComplexMatrix {
    creation_op(mode).adjoint()
}

pub fn number_op(mode: ModeIndex) -> DenseComplexMatrix {
    &creation_op(mode) * &annihilation_op(mode)
}

/// Cached ladder operators for the four modes.
#[derive(Debug, Clone)]
pub struct FockSpace {
    create: [DenseComplexMatrix; N_MODES],
    annihilate: [DenseComplexMatrix; N_MODES],
}

impl Default for FockSpace {
    fn default() -> Self {
        Self::new()
    }
}

impl FockSpace {
    pub fn new() -> Self {
        let create = ModeIndex::ALL.map(creation_op);
        let annihilate = create.clone().map(|m| m.adjoint());
        Self { create, annihilate }
    }

    pub fn dim(&self) -> usize {
        FOCK_DIM
    }

    pub fn create(&self, mode: ModeIndex) -> &DenseComplexMatrix {
        &self.create[mode.bit()]
    }

    pub fn annihilate(&self, mode: ModeIndex) -> &DenseComplexMatrix {
        &self.annihilate[mode.bit()]
    }

    pub fn number(&self, mode: ModeIndex) -> DenseComplexMatrix {
        self.create(mode) * self.annihilate(mode)
    }

    pub fn total_number(&self) -> DenseComplexMatrix {
        ModeIndex::ALL
            .iter()
            .fold(DenseComplexMatrix::zeros(FOCK_DIM), |acc, &m| &acc + &self.number(m))
    }

    pub fn identity(&self) -> DenseComplexMatrix {
        DenseComplexMatrix::identity(FOCK_DIM)
    }

    pub fn vacuum(&self) -> StateVector {
        StateVector::basis(VACUUM)
    }

    /// Applies creation operators to the vacuum in descending canonical
    /// mode order. This is the ket convention used for the pair states
    /// `|α,β⟩` (spin content at `+k`, then at `−k`).
    pub fn ordered_ket(&self, modes: &[ModeIndex]) -> StateVector {
        let mut sorted: Vec<ModeIndex> = modes.to_vec();
        sorted.sort_by_key(|m| m.bit());
        let mut v = self.vacuum();
        for m in sorted {
            v = StateVector(self.create(m).apply(&v.0));
        }
        v
    }

    /// `|α,β⟩ = a†_{−kβ} a†_{kα} |vac⟩`.
    pub fn pair_ket(&self, at_k: Spin, at_minus_k: Spin) -> StateVector {
        self.ordered_ket(&[
            ModeIndex::new(Momentum::Plus, at_k),
            ModeIndex::new(Momentum::Minus, at_minus_k),
        ])
    }

    /// `|↑↓,↑↓⟩`, all four modes occupied.
    pub fn full_ket(&self) -> StateVector {
        self.ordered_ket(&ModeIndex::ALL)
    }
}

/// Amplitudes over a dense basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector(pub Vec<Complex64>);

impl StateVector {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![ZERO; dim])
    }

    pub fn basis(index: usize) -> Self {
        let mut v = vec![ZERO; FOCK_DIM];
        v[index] = ONE;
        Self(v)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn axpy(&mut self, alpha: Complex64, x: &Self) {
        for (y, xi) in self.0.iter_mut().zip(&x.0) {
            *y += alpha * xi;
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}
