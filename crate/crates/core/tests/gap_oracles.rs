use pwave_core::gap::{critical_temperature, field_gap_components, solve_gap, sweep_temperature, Branch, GapModel};

/// Tc from `1 = g∫₀^ωc tanh(ε/2T)/ε dε`, integrated on a dense grid outside
/// this crate.
const TC_ORACLE: [(f64, f64); 3] = [
    (0.2, 0.007639928454911599),
    (0.25, 0.020767478689713386),
    (0.3, 0.040449525190890075),
];

#[test]
fn zero_temperature_gap_closed_form() {
    for g in [0.2, 0.25, 0.3, 0.4] {
        for branch in [Branch::Bw, Branch::NonEsp] {
            let s = solve_gap(&GapModel {
                branch,
                ..GapModel::with_coupling(g)
            })
            .unwrap();
            // BW: Δ₀ = ωc / sinh(1/g)
            let bw = 1.0 / (1.0 / g).sinh();
            if branch == Branch::Bw {
                assert!((s.delta0 - bw).abs() / bw < 1e-9, "g={g}: {}", s.delta0);
            } else {
                assert!(s.delta0 > bw, "g={g}");
            }
        }
    }
}

#[test]
fn critical_temperatures_match_dense_oracle() {
    for (g, tc) in TC_ORACLE {
        let got = critical_temperature(&GapModel::with_coupling(g)).unwrap();
        assert!((got - tc).abs() / tc < 1e-7, "g={g}: {got} vs {tc}");
    }
}

#[test]
fn gap_vanishes_continuously_at_tc() {
    let model = GapModel::default();
    let tc = critical_temperature(&model).unwrap();
    let below = solve_gap(&model.at_temperature(0.999 * tc)).unwrap();
    let above = solve_gap(&model.at_temperature(1.001 * tc)).unwrap();
    assert!(below.delta0 > 0.0 && below.delta0 < 0.1 * solve_gap(&model).unwrap().delta0);
    assert_eq!(above.delta0, 0.0);
    // Δ(T) ≈ 3.06 Tc √(1 − T/Tc) near Tc
    let gl = below.delta0 / (tc * (1.0 - 0.999f64).sqrt());
    assert!((gl - 3.06).abs() < 0.05, "{gl}");
}

#[test]
fn sweep_is_monotone() {
    let model = GapModel::default();
    let sols = sweep_temperature(&model, 0.0, 0.025, 12).unwrap();
    assert_eq!(sols.len(), 12);
    for w in sols.windows(2) {
        assert!(w[1].delta0 <= w[0].delta0);
    }
}

#[test]
fn field_components_balance_on_symmetric_shell() {
    let model = GapModel {
        branch: Branch::NonEsp,
        ..GapModel::default()
    };
    let delta0 = solve_gap(&model.at_temperature(0.01)).unwrap().delta0;
    for mu_b in [0.0, 0.005, 0.02] {
        let f = field_gap_components(
            &GapModel {
                mu_b,
                temperature: 0.01,
                ..model.clone()
            },
            delta0,
        )
        .unwrap();
        assert!(f.magnitude_split() < 1e-14, "muB={mu_b}: {}", f.magnitude_split());
        assert!(f.harmonic_residual() < 1e-10);
    }
}
