use super::*;
use crate::device::{dmtj13, dmtj40};
use crate::error::Error;
use crate::par::ExecPolicy;
use crate::switching::PulseOptions;

fn opts(trials: usize, seed: u64) -> BitcellOptions {
    BitcellOptions {
        trials,
        variability: VariabilityDeck { rng_seed: seed, ..Default::default() },
        ..Default::default()
    }
}

fn tech() -> TransistorDeck {
    TransistorDeck::tech65()
}

#[test]
fn write_currents_match_published() {
    let tr = tech().at(77.0).unwrap();
    let (lh, hl) = write_points(&dmtj40(), &tr, 77.0).unwrap();
    assert!((lh.i_cell_a / 54.9e-6 - 1.0).abs() < 0.15, "{}", lh.i_cell_a);
    assert!((hl.i_cell_a / 92.6e-6 - 1.0).abs() < 0.15, "{}", hl.i_cell_a);
}

#[test]
fn seeded_runs_are_identical() {
    let o = opts(64, 9);
    let a = write_analysis(&dmtj13(), &tech(), &o).unwrap();
    let b = write_analysis(&dmtj13(), &tech(), &o).unwrap();
    assert_eq!(a, b);
    let seq = write_analysis(&dmtj13(), &tech(), &BitcellOptions { policy: ExecPolicy::Sequential, ..o }).unwrap();
    assert_eq!(a, seq);
    let other = write_analysis(&dmtj13(), &tech(), &opts(64, 10)).unwrap();
    assert_ne!(a.t_p_6sigma_s, other.t_p_6sigma_s);
}

#[test]
fn zero_variability_collapses() {
    let o = BitcellOptions { variability: VariabilityDeck::none(1), trials: 16, ..Default::default() };
    let w = write_analysis(&dmtj40(), &tech(), &o).unwrap();
    assert!(w.fit.std <= 1e-12 * w.nominal_t_p_s);
    assert!((w.t_p_6sigma_s / w.nominal_t_p_s - 1.0).abs() < 1e-12);
    assert_eq!(w.t_p_max_s, w.nominal_t_p_s);
    let r = read_analysis(&dmtj40(), &tech(), &o).unwrap();
    assert!((r.v_sm_3sigma_v - r.v_sm_nominal_v).abs() < 1e-12);
}

#[test]
fn wider_area_spread_widens_tail() {
    for seed in 0..5 {
        let base = opts(300, seed);
        let mut wide = base;
        wide.variability.sigma_over_mu_area *= 2.0;
        let gap = |o: &BitcellOptions| {
            let w = write_analysis(&dmtj13(), &tech(), o).unwrap();
            w.t_p_6sigma_s - w.t_p_median_s
        };
        let (g1, g2) = (gap(&base), gap(&wide));
        assert!(g2 >= g1, "seed {seed}: {g2} < {g1}");
    }
}

#[test]
fn energy_matches_trapezoid_reintegration() {
    let o = opts(50, 4);
    let w = write_analysis(&dmtj40(), &tech(), &o).unwrap();
    let tr = tech().at(77.0).unwrap();
    let n = 64;
    let mut total = 0.0;
    for s in &w.samples {
        let (deck, t) = s.process.apply(&dmtj40(), &tr);
        let (lh, hl) = write_points(&deck, &t, 77.0).unwrap();
        // supply power of both transitions sampled over the applied pulse
        let mut e = 0.0;
        for p in [lh, hl] {
            let power = |_t: f64| tr.supply_v * p.i_cell_a;
            let h = w.t_p_6sigma_s / n as f64;
            e += (0..n).map(|k| 0.5 * h * (power(k as f64 * h) + power((k + 1) as f64 * h))).sum::<f64>();
        }
        total += 0.5 * e;
    }
    let oracle = total / w.samples.len() as f64;
    assert!((w.write_energy_avg_j / oracle - 1.0).abs() < 0.01, "{} vs {oracle}", w.write_energy_avg_j);
}

#[test]
fn unreachable_pulses_are_counted() {
    let nominal = write_analysis(&dmtj40(), &tech(), &opts(1, 1)).unwrap().nominal_t_p_s;
    let mut o = opts(200, 2);
    o.pulse = PulseOptions { t_max_s: nominal * 1.02, ..Default::default() };
    let w = write_analysis(&dmtj40(), &tech(), &o).unwrap();
    assert!(w.failures > 0 && w.failures < 200, "{}", w.failures);
    assert_eq!(w.samples.iter().filter(|s| s.t_p_s.is_none()).count(), w.failures);
    assert!(w.t_p_max_s <= o.pulse.t_max_s);
}

#[test]
fn report_invariants_and_published_margins() {
    let (r40, _, _) = analyze_bitcell(&dmtj40(), &tech(), &opts(400, 3)).unwrap();
    let (r13, _, _) = analyze_bitcell(&dmtj13(), &tech(), &opts(400, 3)).unwrap();
    for r in [&r40, &r13] {
        assert!(r.v_sm_3sigma_v < r.v_sm_nominal_v);
        assert!(r.i_write_hl_a > r.i_write_lh_a);
        assert!(!r.sense_failure);
        assert_eq!(r.write_failures, 0);
    }
    assert!((r40.v_sm_nominal_v / 146.3e-3 - 1.0).abs() < 0.25, "{}", r40.v_sm_nominal_v);
    assert!((r40.v_sm_3sigma_v / 67.7e-3 - 1.0).abs() < 0.25, "{}", r40.v_sm_3sigma_v);
    let ratio = r13.v_sm_nominal_v / r40.v_sm_nominal_v;
    assert!((ratio / 0.47 - 1.0).abs() < 0.30, "{ratio}");
    assert!((r40.i_read_a / 14.6e-6 - 1.0).abs() < 0.25);
    assert!((r13.i_read_a / 1.91e-6 - 1.0).abs() < 0.25);
    for (got, want) in [
        (r40.lrs_eff_ohm, 8.3e3),
        (r40.hrs_eff_ohm, 18.3e3),
        (r13.lrs_eff_ohm, 20.8e3),
        (r13.hrs_eff_ohm, 56.1e3),
    ] {
        assert!((got / want - 1.0).abs() < 0.25, "{got} vs {want}");
    }
}

#[test]
fn margin_vanishes_with_read_current() {
    let o = opts(8, 1);
    let zero = read_analysis_at(&dmtj40(), &tech(), &o, 0.0).unwrap();
    assert_eq!(zero.v_sm_nominal_v, 0.0);
    let tiny = read_analysis_at(&dmtj40(), &tech(), &o, 1e-9).unwrap();
    let full = read_analysis_at(&dmtj40(), &tech(), &o, 1e-5).unwrap();
    assert!(tiny.v_sm_nominal_v < 1e-3 * full.v_sm_nominal_v);
}

#[test]
fn zero_trials_rejected() {
    assert!(matches!(write_analysis(&dmtj40(), &tech(), &opts(0, 1)), Err(Error::Validation(_))));
}

#[test]
fn exported_deck_round_trips() {
    let (r, w, rd) = analyze_bitcell(&dmtj13(), &tech(), &opts(100, 5)).unwrap();
    let d = export_bitcell_deck(&r).unwrap();
    assert_eq!(d.t_write_pulse_s, r.t_p_6sigma_s);
    assert_eq!(MramCellDeck::from_json(&d.to_json().unwrap()).unwrap(), d);
    let csv = samples_csv(&w, &rd).unwrap();
    assert_eq!(csv.lines().count(), 101);
    assert!(csv.starts_with("trial,area_factor,"));
}

#[test]
fn published_deck_and_validation() {
    let d = MramCellDeck::published_13nm();
    assert_eq!(d.i_read_a, 1.91e-6);
    assert_eq!(d.t_write_pulse_s, 0.75e-9);
    d.validate().unwrap();
    let bad = MramCellDeck { write_energy_j: -1e-15, ..d.clone() };
    assert!(matches!(bad.validate(), Err(Error::Validation(_))));
    let json = d.to_json().unwrap().replace("\"i_read_a\"", "\"unused\"");
    assert!(MramCellDeck::from_json(&json).is_err());
}
