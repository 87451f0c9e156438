use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use pwave_core::dipole::{gap_spherical_map, gap_spherical_map_from_operators, kernel_equivalence, EQUIV_TOL};
use pwave_core::fock::FockSpace;
use pwave_core::gap::{
    critical_temperature, self_consistency_residual, solve_gap, sweep_temperature, GapSolution, BRACKET_TOL,
};
use pwave_core::meanfield::{
    closed_form_state, coherent_state, pair_expectation, verify_diagonalization, verify_field_diagonalization,
    CoherentParams, DVector, MeanFieldPoint, DIAG_TOL,
};
use pwave_core::quadrature::AngularGrid;
use pwave_core::sampling::{random_unit_vector, random_unit_vector_off_poles, seeded_rng};
use pwave_core::so5::{
    assemble_so5, sbar_su2_residual, verify_quasispin, verify_so5_closure, GeneratorSet, Orientation, StructureSign,
    CLOSURE_TOL,
};
use pwave_core::yangian::{
    build_yangian, coefficient_check, find_translation, verify_component_transitions, verify_transition_identities,
};
use rand::Rng;

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::report::{fmt_f64, Check, Outcome, Table};

pub const SELF_CONSISTENCY_TOL: f64 = 1e-8;
pub const PROFILE_TOL: f64 = 1e-10;
pub const COMPONENT_TOL: f64 = 1e-12;
pub const TRANSITION_TOL: f64 = 1e-10;
pub const COEFFICIENT_TOL: f64 = 1e-10;
/// Smallest `[Λ, S(k)]` commutator that counts as nonzero.
pub const BEYOND_SU2: f64 = 0.1;

pub fn run_suite(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::VerifyAlgebra => verify_algebra(),
        Command::VerifyMeanfield => verify_meanfield(cfg),
        Command::SolveGap => solve(cfg),
        Command::SweepTemperature => sweep(cfg),
        Command::FieldSweep => field_sweep(cfg),
        Command::DipoleCheck => dipole_check(cfg),
        Command::YangianCheck => yangian_check(cfg),
    }
}

fn verify_algebra() -> Result<Outcome, CliError> {
    let fock = FockSpace::new();
    let gen = GeneratorSet::build(&fock);
    let transposed = verify_so5_closure(&assemble_so5(&gen, Orientation::Transposed), StructureSign::MinusI);
    let literal = verify_so5_closure(&assemble_so5(&gen, Orientation::Literal), StructureSign::PlusI);
    let literal_minus = verify_so5_closure(&assemble_so5(&gen, Orientation::Literal), StructureSign::MinusI);
    let qs = verify_quasispin(&gen);
    let sbar = sbar_su2_residual(&gen);
    let mut out = Outcome::new(vec![
        Check::below(
            "so5 closure, transposed array, -i",
            transposed.max_residual,
            CLOSURE_TOL,
        ),
        Check::below("so5 closure, literal array, +i", literal.max_residual, CLOSURE_TOL),
        Check::info("so5 closure, literal array, -i", literal_minus.max_residual),
        Check::below("quasi-spin su2 closure", qs.max_closure_residual, CLOSURE_TOL),
        Check::above("largest [Lambda, S(k)]", qs.max_spin_commutator, BEYOND_SU2),
        Check::below("spin su2 closure", sbar, CLOSURE_TOL),
    ]);
    out.insert("max_residual", transposed.max_residual.max(literal.max_residual));
    out.insert("closure", &transposed);
    out.insert("closure_literal", &literal);
    out.insert("quasispin", &qs);
    Ok(out)
}

fn random_point(rng: &mut impl Rng) -> MeanFieldPoint {
    let delta = DVector::from_polar(
        rng.random_range(0.0..2.0),
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..PI),
        rng.random_range(0.0..TAU),
    );
    MeanFieldPoint::new(rng.random_range(-3.0..3.0), delta)
}

fn verify_meanfield(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fock = FockSpace::new();
    let gen = GeneratorSet::build(&fock);
    let mut rng = seeded_rng(cfg.seed);
    let reports = (0..cfg.n)
        .map(|_| verify_diagonalization(&random_point(&mut rng), &gen))
        .collect::<Result<Vec<_>, _>>()?;
    let mut state_residual: f64 = 0.0;
    let mut pair_residual: f64 = 0.0;
    for _ in 0..cfg.n {
        let p = CoherentParams {
            r: rng.random_range(0.0..PI / 2.0),
            lambda: rng.random_range(0.0..TAU),
            theta: rng.random_range(0.0..PI),
            phi: rng.random_range(0.0..TAU),
        };
        let exact = coherent_state(&p, &gen)?;
        state_residual = state_residual.max(exact.max_abs_diff(&closed_form_state(&p, &fock)));
        let want = Complex64::from_polar((2.0 * p.r).sin(), p.lambda);
        for (t, d) in pair_expectation(&exact, &gen).iter().zip(p.d()) {
            pair_residual = pair_residual.max((t - want * d).norm());
        }
    }
    let max = |f: fn(&pwave_core::meanfield::DiagReport) -> f64| reports.iter().map(f).fold(0.0, f64::max);
    let mut out = Outcome::new(vec![
        Check::below("W^dag H W = +E Q", max(|r| r.residual), DIAG_TOL),
        Check::below(
            "spectrum of H equals spectrum of E Q",
            max(|r| r.spectrum_residual),
            DIAG_TOL,
        ),
        Check::info("W^dag H W = -E Q", max(|r| r.opposite_sign_residual)),
        Check::below("closed-form coherent state", state_residual, DIAG_TOL),
        Check::below("<T> = sin2r e^{i lambda} d", pair_residual, DIAG_TOL),
    ]);
    out.insert("diagonalization", &reports);
    Ok(out)
}

const GAP_HEADER: [&str; 7] = ["T", "delta0", "residual", "iterations", "branch", "g", "omega_c"];

fn gap_row(s: &GapSolution) -> Vec<String> {
    vec![
        fmt_f64(s.temperature),
        fmt_f64(s.delta0),
        fmt_f64(s.residual),
        s.iterations.to_string(),
        s.branch.name().to_string(),
        fmt_f64(s.g),
        fmt_f64(s.omega_c),
    ]
}

fn solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = solve_gap(&cfg.model)?;
    let sc = self_consistency_residual(&cfg.model, s.delta0)?;
    let mut out = Outcome::new(vec![
        Check::below("gap equation residual", s.residual.abs(), pwave_core::gap::RESIDUAL_TOL),
        Check::below(
            "full kernel self-consistency / omega_c",
            sc / cfg.model.omega_c,
            SELF_CONSISTENCY_TOL,
        ),
        Check::below("gap profile", s.profile_residual(), PROFILE_TOL),
    ]);
    out.insert("solution", &s);
    out.insert("self_consistency_residual", sc);
    out.table = Some(Table {
        header: GAP_HEADER.to_vec(),
        rows: vec![gap_row(&s)],
    });
    Ok(out)
}

fn sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let t_min = cfg.model.temperature;
    let (t_max, tc) = match cfg.t_max {
        Some(t) => (t, None),
        None => {
            let tc = critical_temperature(&cfg.model)?;
            (1.2 * tc, Some(tc))
        }
    };
    if t_max < t_min {
        return Err(CliError::Config(format!("sweep range [{t_min}, {t_max}] is empty")));
    }
    let sols = sweep_temperature(&cfg.model, t_min, t_max, cfg.n)?;
    let rise = sols.windows(2).map(|w| w[1].delta0 - w[0].delta0).fold(0.0, f64::max);
    let worst = sols.iter().map(|s| s.residual.abs()).fold(0.0, f64::max);
    let mut out = Outcome::new(vec![
        Check::below("largest gap equation residual", worst, pwave_core::gap::RESIDUAL_TOL),
        Check::below(
            "largest increase of delta0 with T / omega_c",
            rise / cfg.model.omega_c,
            BRACKET_TOL,
        ),
    ]);
    if let Some(tc) = tc {
        out.checks.push(Check::info("critical temperature", tc));
    }
    out.insert(
        "solutions",
        sols.iter()
            .map(|s| {
                serde_json::json!({
                    "T": s.temperature, "delta0": s.delta0, "residual": s.residual,
                    "iterations": s.iterations, "branch": s.branch, "g": s.g, "omega_c": s.omega_c,
                })
            })
            .collect::<Vec<_>>(),
    );
    out.table = Some(Table {
        header: GAP_HEADER.to_vec(),
        rows: sols.iter().map(gap_row).collect(),
    });
    Ok(out)
}

/// Mean-field points for the Zeeman check, with `|ε| ≥ 0.1` so that the
/// claimed form stays finite.
fn field_points(cfg: &RunConfig) -> Vec<(MeanFieldPoint, f64)> {
    let mut rng = seeded_rng(cfg.seed);
    (0..cfg.n)
        .map(|_| {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let eps = sign * rng.random_range(0.1..2.0);
            let delta = DVector::from_polar(
                rng.random_range(0.1..1.5),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..PI),
                rng.random_range(0.0..TAU),
            );
            (MeanFieldPoint::new(eps, delta), rng.random_range(-0.5..0.5))
        })
        .collect()
}

fn field_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fock = FockSpace::new();
    let gen = GeneratorSet::build(&fock);
    let points = field_points(cfg);
    let reports = points
        .iter()
        .map(|(p, b)| verify_field_diagonalization(p, *b, &gen, &fock))
        .collect::<Result<Vec<_>, _>>()?;
    let control = points
        .iter()
        .map(|(p, _)| verify_field_diagonalization(p, 0.0, &gen, &fock).map(|r| r.residual))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let held = reports.iter().filter(|r| r.claim_holds).count();
    let mut out = Outcome::new(vec![
        Check::below("zero-field control", control, DIAG_TOL),
        Check::info(
            "largest residual of claimed field form",
            reports.iter().map(|r| r.residual).fold(0.0, f64::max),
        ),
        Check::info("points where claimed field form holds", held as f64),
    ]);
    out.insert("field", &reports);
    out.table = Some(Table {
        header: vec![
            "epsilon",
            "delta_magnitude",
            "mu_b",
            "residual",
            "spectrum_residual",
            "claim_holds",
        ],
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    fmt_f64(r.epsilon),
                    fmt_f64(r.delta_magnitude),
                    fmt_f64(r.mu_b),
                    fmt_f64(r.residual),
                    fmt_f64(r.spectrum_residual),
                    r.claim_holds.to_string(),
                ]
            })
            .collect(),
    });
    Ok(out)
}

fn dipole_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut rng = seeded_rng(cfg.seed);
    let reports = (0..cfg.n)
        .map(|_| kernel_equivalence(&random_unit_vector(&mut rng)))
        .collect::<Result<Vec<_>, _>>()?;
    let hi = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
    let lo = reports.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min);
    let fock = FockSpace::new();
    let gen = GeneratorSet::build(&fock);
    let map = gap_spherical_map_from_operators(&fock, &gen).max_abs_diff(&gap_spherical_map());
    let mut out = Outcome::new(vec![
        Check::below("kernel equivalence", hi, EQUIV_TOL),
        Check::below("kernel residual spread", hi - lo, EQUIV_TOL),
        Check::below("gap map from pair operators", map, EQUIV_TOL),
    ]);
    out.insert("equivalence", &reports);
    Ok(out)
}

fn yangian_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let y = build_yangian(cfg.mu1, cfg.mu2, cfg.h);
    let mut rng = seeded_rng(cfg.seed);
    let samples: Vec<[f64; 3]> = (0..cfg.n)
        .map(|_| random_unit_vector_off_poles(&mut rng, 1e-3))
        .collect();
    let components = verify_component_transitions(&y, &samples)?;
    let translation = find_translation(&y, &samples)?;
    let shifted = y.translated(translation.eta);
    let transitions = verify_transition_identities(&shifted, &samples)?;
    let coef = coefficient_check(&shifted, &AngularGrid::product(16, 16)?);
    let mut out = Outcome::new(Vec::new());
    out.checks.push(Check::below(
        "[S, J] = i eps J",
        shifted.commutator_residual(),
        CLOSURE_TOL,
    ));
    for r in &components {
        out.checks
            .push(Check::below(r.identity.clone(), r.max_residual, COMPONENT_TOL));
    }
    for r in &transitions {
        out.checks
            .push(Check::below(r.identity.clone(), r.max_residual, TRANSITION_TOL));
    }
    out.checks
        .push(Check::below("transition coefficient", coef.residual, COEFFICIENT_TOL));
    out.checks.push(Check::info("translation eta", translation.eta));
    out.checks.push(Check::info(
        "translation degenerate",
        f64::from(u8::from(translation.degenerate)),
    ));
    out.insert("components", &components);
    out.insert("transitions", &transitions);
    out.insert("translation", translation);
    out.insert("coefficient", coef);
    Ok(out)
}
