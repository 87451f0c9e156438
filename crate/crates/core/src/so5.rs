//! The SO(5) generator family of one momentum pair.
//!
//! Spin operators `S_i(±k) = a†_{±kα} (σ_i)_{αβ} a_{±kβ}`, pair operators
//! `T_i(k) = a_{−kα} (σ₂σ_i)_{αβ} a_{kβ}`, the charge `Q = ½(S₀(k)+S₀(−k)−2)`
//! and `S̄ = ½(S(k)+S(−k))` are assembled into the antisymmetric 5×5 array
//! `I_ab` and checked against the SO(5) commutation relation
//!
//! ```text
//! [I_ab, I_cd] = s·i (δ_ac I_bd + δ_bd I_ac − δ_ad I_bc − δ_bc I_ad)
//! ```
//!
//! where the sign `s` and the orientation of the generator array are explicit
//! parameters: the array read row-major closes with `s = +1`, its transpose
//! with `s = −1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{commutator, DenseComplexMatrix, FockSpace, ModeIndex, Momentum, Spin, FOCK_DIM};
use crate::matrix::{c, linear_combination, I, ONE, ZERO};

/// Closure tolerance in max-norm.
pub const CLOSURE_TOL: f64 = 1e-12;

/// Pauli matrices `σ₀..σ₃` with `σ₂ = [[0, −i], [i, 0]]`.
pub fn pauli(i: usize) -> [[Complex64; 2]; 2] {
    match i {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index {i} out of range 0..=3"),
    }
}

fn mul2(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (col, entry) in row.iter_mut().enumerate() {
            *entry = a[r][0] * b[0][col] + a[r][1] * b[1][col];
        }
    }
    out
}

/// The generator family as 16×16 matrices. Index 0 of the three-vectors is
/// `x`, 1 is `y`, 2 is `z`.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub s_k: [DenseComplexMatrix; 3],
    pub s_minus_k: [DenseComplexMatrix; 3],
    pub s0_k: DenseComplexMatrix,
    pub s0_minus_k: DenseComplexMatrix,
    pub sbar: [DenseComplexMatrix; 3],
    pub t: [DenseComplexMatrix; 3],
    pub tdag: [DenseComplexMatrix; 3],
    pub t0: DenseComplexMatrix,
    pub t0dag: DenseComplexMatrix,
    pub q: DenseComplexMatrix,
}

fn spin_density(fock: &FockSpace, momentum: Momentum, sigma: usize) -> DenseComplexMatrix {
    let s = pauli(sigma);
    let mut terms = Vec::with_capacity(4);
    for a in Spin::BOTH {
        for b in Spin::BOTH {
            let coeff = s[a.index()][b.index()];
            if coeff != ZERO {
                let op = fock.create(ModeIndex::new(momentum, a)) * fock.annihilate(ModeIndex::new(momentum, b));
                terms.push((coeff, op));
            }
        }
    }
    linear_combination(FOCK_DIM, terms.iter().map(|(z, m)| (*z, m)))
}

fn pair_annihilator(fock: &FockSpace, sigma: usize) -> DenseComplexMatrix {
    let m = mul2(pauli(2), pauli(sigma));
    let mut terms = Vec::with_capacity(4);
    for a in Spin::BOTH {
        for b in Spin::BOTH {
            let coeff = m[a.index()][b.index()];
            if coeff != ZERO {
                let op = fock.annihilate(ModeIndex::new(Momentum::Minus, a))
                    * fock.annihilate(ModeIndex::new(Momentum::Plus, b));
                terms.push((coeff, op));
            }
        }
    }
    linear_combination(FOCK_DIM, terms.iter().map(|(z, m)| (*z, m)))
}

impl GeneratorSet {
    pub fn build(fock: &FockSpace) -> Self {
        let s_k = [1, 2, 3].map(|i| spin_density(fock, Momentum::Plus, i));
        let s_minus_k = [1, 2, 3].map(|i| spin_density(fock, Momentum::Minus, i));
        let s0_k = spin_density(fock, Momentum::Plus, 0);
        let s0_minus_k = spin_density(fock, Momentum::Minus, 0);
        let sbar = [0, 1, 2].map(|i| (&s_k[i] + &s_minus_k[i]).scale_re(0.5));
        let t = [1, 2, 3].map(|i| pair_annihilator(fock, i));
        let tdag = t.clone().map(|m| m.adjoint());
        let t0 = pair_annihilator(fock, 0);
        let t0dag = t0.adjoint();
        let q = (&(&s0_k + &s0_minus_k) - &fock.identity().scale_re(2.0)).scale_re(0.5);
        Self {
            s_k,
            s_minus_k,
            s0_k,
            s0_minus_k,
            sbar,
            t,
            tdag,
            t0,
            t0dag,
            q,
        }
    }

    /// `d·T†` for a complex three-vector `d`.
    pub fn dot_tdag(&self, d: &[Complex64; 3]) -> DenseComplexMatrix {
        linear_combination(FOCK_DIM, d.iter().copied().zip(self.tdag.iter()))
    }

    /// `d·T` for a complex three-vector `d`.
    pub fn dot_t(&self, d: &[Complex64; 3]) -> DenseComplexMatrix {
        linear_combination(FOCK_DIM, d.iter().copied().zip(self.t.iter()))
    }
}

/// How the lower-triangular generator layout maps onto `I_ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Entry at row `a`, column `b` is `I_ab` (so `I_51 = Q`).
    Literal,
    /// Entry at row `a`, column `b` is `I_ba` (so `I_15 = Q`).
    Transposed,
}

/// Sign of the imaginary unit on the right-hand side of the closure relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureSign {
    /// `[I_ab, I_cd] = −i(...)`.
    MinusI,
    PlusI,
}

impl StructureSign {
    fn factor(self) -> Complex64 {
        match self {
            StructureSign::MinusI => -I,
            StructureSign::PlusI => I,
        }
    }
}

#[derive(Debug, Clone)]
pub struct So5Matrix {
    entries: Vec<Vec<DenseComplexMatrix>>,
    pub orientation: Orientation,
}

impl So5Matrix {
    /// `I_ab` with one-based indices.
    pub fn get(&self, a: usize, b: usize) -> &DenseComplexMatrix {
        &self.entries[a - 1][b - 1]
    }

    /// Index pairs `(a, b)` with `a < b`, one-based.
    pub fn index_pairs() -> Vec<(usize, usize)> {
        (1..=5).flat_map(|a| ((a + 1)..=5).map(move |b| (a, b))).collect()
    }

    /// `Σ_{a<b} I_ab²`.
    pub fn casimir(&self) -> DenseComplexMatrix {
        Self::index_pairs()
            .into_iter()
            .fold(DenseComplexMatrix::zeros(FOCK_DIM), |acc, (a, b)| {
                let g = self.get(a, b);
                &acc + &(g * g)
            })
    }

    /// Largest `‖[C, I_cd]‖_max` over all generators, with `C` the Casimir.
    pub fn casimir_commutator_residual(&self) -> f64 {
        let cas = self.casimir();
        Self::index_pairs()
            .into_iter()
            .map(|(a, b)| commutator(&cas, self.get(a, b)).unwrap().max_norm())
            .fold(0.0, f64::max)
    }

    pub fn max_hermiticity_residual(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|m| m.max_abs_diff(&m.adjoint()))
            .fold(0.0, f64::max)
    }

    pub fn max_antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 1..=5 {
            for b in 1..=5 {
                worst = worst.max((self.get(a, b) + self.get(b, a)).max_norm());
            }
        }
        worst
    }
}

/// Fills the array of the generator layout: lower triangle from the layout,
/// upper triangle by antisymmetry, zero diagonal.
pub fn assemble_so5(gen: &GeneratorSet, orientation: Orientation) -> So5Matrix {
    let zero = DenseComplexMatrix::zeros(FOCK_DIM);
    let mut entries = vec![vec![zero; 5]; 5];
    let half_sum = |i: usize| (&gen.tdag[i] + &gen.t[i]).scale_re(-0.5);
    let half_diff = |i: usize| (&gen.t[i] - &gen.tdag[i]).scale(Complex64::new(0.0, -0.5));
    // (row, column) in the layout, one-based
    let layout: [((usize, usize), DenseComplexMatrix); 10] = [
        ((2, 1), half_sum(0)),
        ((3, 1), half_sum(1)),
        ((4, 1), half_sum(2)),
        ((3, 2), gen.sbar[2].scale_re(-1.0)),
        ((4, 2), gen.sbar[1].clone()),
        ((4, 3), gen.sbar[0].scale_re(-1.0)),
        ((5, 1), gen.q.clone()),
        ((5, 2), half_diff(0)),
        ((5, 3), half_diff(1)),
        ((5, 4), half_diff(2)),
    ];
    for ((row, col), m) in layout {
        let (a, b) = match orientation {
            Orientation::Literal => (row, col),
            Orientation::Transposed => (col, row),
        };
        entries[b - 1][a - 1] = m.scale_re(-1.0);
        entries[a - 1][b - 1] = m;
    }
    So5Matrix { entries, orientation }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResidual {
    pub pair: [usize; 4],
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub orientation: Orientation,
    pub structure_sign: StructureSign,
    pub pairs: Vec<PairResidual>,
    pub max_residual: f64,
}

impl ClosureReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

fn kron(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Residual of the closure relation for one pair of generators.
pub fn closure_residual(m: &So5Matrix, sign: StructureSign, a: usize, b: usize, cc: usize, d: usize) -> f64 {
    let lhs = commutator(m.get(a, b), m.get(cc, d)).unwrap();
    let rhs = linear_combination(
        FOCK_DIM,
        [
            (c(kron(a, cc)), m.get(b, d)),
            (c(kron(b, d)), m.get(a, cc)),
            (c(-kron(a, d)), m.get(b, cc)),
            (c(-kron(b, cc)), m.get(a, d)),
        ],
    )
    .scale(sign.factor());
    lhs.max_abs_diff(&rhs)
}

/// Sweeps all ordered pairs of generators `(a<b)`, `(c<d)`. Momentum
/// arguments are equal throughout, so the delta function is one.
pub fn verify_so5_closure(m: &So5Matrix, sign: StructureSign) -> ClosureReport {
    let idx = So5Matrix::index_pairs();
    let mut pairs = Vec::with_capacity(idx.len() * idx.len());
    for &(a, b) in &idx {
        for &(cc, d) in &idx {
            pairs.push(PairResidual {
                pair: [a, b, cc, d],
                residual: closure_residual(m, sign, a, b, cc, d),
            });
        }
    }
    let max_residual = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
    ClosureReport {
        orientation: m.orientation,
        structure_sign: sign,
        pairs,
        max_residual,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedResidual {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiSpinReport {
    /// SU(2) relations `[Λz, Λ±] = ±Λ±`, `[Λ+, Λ−] = Λz`; residuals.
    pub closure: Vec<NamedResidual>,
    pub max_closure_residual: f64,
    /// Max-norms of `[Λ_μ, S_i(k)]`.
    pub spin_commutators: Vec<NamedResidual>,
    pub max_spin_commutator: f64,
}

/// The quasi-spin triple `(Λ+, Λ−, Λz) = ((i/√2)T₃, (−i/√2)T₃†, −Q)`.
pub fn quasispin(gen: &GeneratorSet) -> [DenseComplexMatrix; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        gen.t[2].scale(Complex64::new(0.0, s)),
        gen.tdag[2].scale(Complex64::new(0.0, -s)),
        gen.q.scale_re(-1.0),
    ]
}

pub fn verify_quasispin(gen: &GeneratorSet) -> QuasiSpinReport {
    let [lp, lm, lz] = quasispin(gen);
    let comm = |a: &DenseComplexMatrix, b: &DenseComplexMatrix| commutator(a, b).unwrap();
    let closure = vec![
        NamedResidual {
            name: "[Lz,L+]-L+".into(),
            value: comm(&lz, &lp).max_abs_diff(&lp),
        },
        NamedResidual {
            name: "[Lz,L-]+L-".into(),
            value: comm(&lz, &lm).max_abs_diff(&lm.scale_re(-1.0)),
        },
        NamedResidual {
            name: "[L+,L-]-Lz".into(),
            value: comm(&lp, &lm).max_abs_diff(&lz),
        },
    ];
    let mut spin_commutators = Vec::new();
    for (lname, l) in [("L+", &lp), ("L-", &lm), ("Lz", &lz)] {
        for (axis, s) in ["x", "y", "z"].iter().zip(gen.s_k.iter()) {
            spin_commutators.push(NamedResidual {
                name: format!("[{lname},S{axis}(k)]"),
                value: comm(l, s).max_norm(),
            });
        }
    }
    let max_closure_residual = closure.iter().map(|r| r.value).fold(0.0, f64::max);
    let max_spin_commutator = spin_commutators.iter().map(|r| r.value).fold(0.0, f64::max);
    QuasiSpinReport {
        closure,
        max_closure_residual,
        spin_commutators,
        max_spin_commutator,
    }
}

/// Residual of `[S̄_x, S̄_y] = iS̄_z` and cyclic permutations.
pub fn sbar_su2_residual(gen: &GeneratorSet) -> f64 {
    (0..3)
        .map(|i| {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            commutator(&gen.sbar[i], &gen.sbar[j])
                .unwrap()
                .max_abs_diff(&gen.sbar[k].scale(I))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{StateVector, VACUUM};

    fn setup() -> GeneratorSet {
        GeneratorSet::build(&FockSpace::new())
    }

    #[test]
    fn charge_on_vacuum_is_minus_one() {
        let g = setup();
        let v = g.q.apply(StateVector::basis(VACUUM).amplitudes());
        assert_eq!(v[VACUUM], Complex64::new(-1.0, 0.0));
        assert!(v[1..].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn charge_spectrum_is_half_integers() {
        let g = setup();
        assert!(g.q.is_diagonal(0.0));
        let mut vals: Vec<f64> = (0..FOCK_DIM).map(|i| g.q.get(i, i).re).collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        assert_eq!(vals, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn sbar_z_on_single_k_up_is_one_half() {
        let g = setup();
        let state = 1usize << ModeIndex::K_UP.bit();
        let v = g.sbar[2].apply(StateVector::basis(state).amplitudes());
        assert_eq!(v[state], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn singlet_pair_normalization() {
        let g = setup();
        let vac = StateVector::basis(VACUUM);
        let t0t0dag = &g.t0 * &g.t0dag;
        let e = t0t0dag.expectation(vac.amplitudes(), vac.amplitudes());
        assert!((e - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        // T0 on the fully occupied state leaves a two-particle state
        let full = StateVector::basis(0b1111);
        let out = g.t0.apply(full.amplitudes());
        let norm: f64 = out.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 2.0).abs() < 1e-14);
        for (n, z) in out.iter().enumerate() {
            if z.norm() > 0.0 {
                assert_eq!((n as u32).count_ones(), 2);
            }
        }
    }

    #[test]
    fn generator_invariants() {
        let g = setup();
        for i in 0..3 {
            assert_eq!(g.tdag[i].max_abs_diff(&g.t[i].adjoint()), 0.0);
            assert!(g.sbar[i].is_hermitian(0.0));
            assert!(commutator(&g.sbar[i], &g.q).unwrap().max_norm() < 1e-14);
        }
        assert!(sbar_su2_residual(&g) < 1e-12);
    }

    #[test]
    fn layout_positions() {
        let g = setup();
        let m = assemble_so5(&g, Orientation::Literal);
        assert_eq!(m.get(5, 1).max_abs_diff(&g.q), 0.0);
        assert_eq!(m.get(3, 2).max_abs_diff(&g.sbar[2].scale_re(-1.0)), 0.0);
        for a in 1..=5 {
            assert_eq!(m.get(a, a).max_norm(), 0.0);
        }
        assert_eq!(m.max_antisymmetry_residual(), 0.0);
        assert!(m.max_hermiticity_residual() < 1e-14);

        let t = assemble_so5(&g, Orientation::Transposed);
        assert_eq!(t.get(1, 5).max_abs_diff(&g.q), 0.0);
        assert_eq!(t.get(2, 3).max_abs_diff(&g.sbar[2].scale_re(-1.0)), 0.0);
    }

    #[test]
    fn spin_sector_pair_closes() {
        let g = setup();
        let m = assemble_so5(&g, Orientation::Literal);
        assert!(closure_residual(&m, StructureSign::PlusI, 2, 3, 3, 4) < 1e-12);
    }

    #[test]
    fn disjoint_pairs_commute_exactly() {
        let g = setup();
        let m = assemble_so5(&g, Orientation::Literal);
        let idx = So5Matrix::index_pairs();
        for &(a, b) in &idx {
            for &(cc, d) in &idx {
                if a != cc && a != d && b != cc && b != d {
                    let r = commutator(m.get(a, b), m.get(cc, d)).unwrap();
                    assert!(r.max_norm() < 1e-14, "({a}{b}),({cc}{d})");
                }
            }
        }
    }

    #[test]
    fn literal_array_closes_with_plus_i_and_transpose_with_minus_i() {
        let g = setup();
        let literal = assemble_so5(&g, Orientation::Literal);
        let transposed = assemble_so5(&g, Orientation::Transposed);
        assert!(verify_so5_closure(&literal, StructureSign::PlusI).passed(CLOSURE_TOL));
        assert!(verify_so5_closure(&transposed, StructureSign::MinusI).passed(CLOSURE_TOL));
        // the literal array with −i fails by O(1)
        let mixed = verify_so5_closure(&literal, StructureSign::MinusI);
        assert!((mixed.max_residual - 2.0).abs() < 1e-12);
        assert_eq!(mixed.pairs.len(), 100);
    }

    #[test]
    fn casimir_is_central() {
        let g = setup();
        for o in [Orientation::Literal, Orientation::Transposed] {
            assert!(assemble_so5(&g, o).casimir_commutator_residual() < 1e-11);
        }
    }

    #[test]
    fn quasispin_is_su2_and_not_spin_invariant() {
        let g = setup();
        let r = verify_quasispin(&g);
        assert!(r.max_closure_residual < 1e-12, "{r:?}");
        assert!(r.max_spin_commutator > 0.1);
        // the charge commutes with spin
        let lz_sz = r.spin_commutators.iter().find(|x| x.name == "[Lz,Sz(k)]").unwrap();
        assert_eq!(lz_sz.value, 0.0);
    }

    #[test]
    fn closure_report_serializes() {
        let g = setup();
        let r = verify_so5_closure(&assemble_so5(&g, Orientation::Transposed), StructureSign::MinusI);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["structure_sign"], "minus_i");
        assert_eq!(json["pairs"][0]["pair"], serde_json::json!([1, 2, 1, 2]));
    }
}
