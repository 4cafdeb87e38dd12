use proptest::prelude::*;

use super::*;
use crate::bitcell::MramCellDeck;
use crate::error::Error;
use crate::par::ExecPolicy;

fn mram13() -> CellDeck {
    CellDeck::Mram(MramCellDeck::published_13nm())
}

fn mram40() -> CellDeck {
    CellDeck::Mram(MramCellDeck::published_40nm())
}

fn sram() -> CellDeck {
    CellDeck::Sram(SramCellDeck::default())
}

fn cold() -> TechnologyDeck {
    TechnologyDeck::tech65_77k()
}

#[test]
fn organize_is_deterministic_and_policy_independent() {
    for cell in [mram13(), sram()] {
        let a = organize(64 << 10, &cell, &cold(), Objective::default(), ExecPolicy::Parallel).unwrap();
        let b = organize(64 << 10, &cell, &cold(), Objective::default(), ExecPolicy::Sequential).unwrap();
        let c = organize(64 << 10, &cell, &cold(), Objective::default(), ExecPolicy::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        a.0.validate().unwrap();
        assert_eq!(a.0.capacity_bits, 64 * 1024 * 8);
    }
}

#[test]
fn doubling_capacity_doubles_mats_and_raises_leakage() {
    for cell in [mram40(), mram13(), sram()] {
        let (o, e) = organize(256 << 10, &cell, &cold(), Objective::default(), ExecPolicy::default()).unwrap();
        let o2 = o.with_capacity_bits(2 * o.capacity_bits).unwrap();
        assert_eq!(o2.mats_per_bank, 2 * o.mats_per_bank);
        assert_eq!((o2.rows, o2.cols, o2.subarrays_per_mat), (o.rows, o.cols, o.subarrays_per_mat));
        let e2 = estimate(&o2, &cell, &cold()).unwrap();
        assert!(e2.leakage_w > e.leakage_w, "{}: {} !> {}", cell.name(), e2.leakage_w, e.leakage_w);
    }
}

#[test]
fn metrics_grow_with_capacity_for_fixed_geometry() {
    let caps = bench::capacity_range(64 << 10, 2 << 20).unwrap();
    for cell in [mram40(), mram13(), sram()] {
        let (base, _) = organize(caps[0], &cell, &cold(), Objective::default(), ExecPolicy::default()).unwrap();
        let mut prev: Option<ArrayEstimate> = None;
        for &cap in &caps {
            let e = estimate(&base.with_capacity_bits(cap * 8).unwrap(), &cell, &cold()).unwrap();
            if let Some(p) = prev {
                for (a, b) in [
                    (p.read_latency_s, e.read_latency_s),
                    (p.write_latency_s, e.write_latency_s),
                    (p.read_energy_j, e.read_energy_j),
                    (p.write_energy_j, e.write_energy_j),
                    (p.leakage_w, e.leakage_w),
                    (p.area_m2, e.area_m2),
                ] {
                    assert!(b >= a, "{} at {cap}: {b} < {a}", cell.name());
                }
            }
            prev = Some(e);
        }
    }
}

#[test]
fn latency_objective_dominates_on_latency() {
    for cell in [mram40(), mram13(), sram()] {
        let (_, lat) = organize(2 << 20, &cell, &cold(), Objective::Latency, ExecPolicy::default()).unwrap();
        let (_, en) = organize(2 << 20, &cell, &cold(), Objective::Energy, ExecPolicy::default()).unwrap();
        let (_, edp) = organize(2 << 20, &cell, &cold(), Objective::Edp, ExecPolicy::default()).unwrap();
        assert!(lat.read_latency_s <= en.read_latency_s);
        assert!(lat.read_latency_s <= edp.read_latency_s);
        assert!(en.read_energy_j <= lat.read_energy_j);
        assert!(en.read_energy_j <= edp.read_energy_j);
    }
}

fn single_cell() -> ArrayOrganization {
    ArrayOrganization {
        capacity_bits: 1,
        word_bits: 1,
        banks: 1,
        mats_per_bank: 1,
        subarrays_per_mat: 1,
        rows: 1,
        cols: 1,
        mux_bitline: 1,
        mux_sense: 1,
        mux_output: 1,
    }
}

#[test]
fn single_cell_array_is_one_access_path() {
    let tech = cold();
    let deck = MramCellDeck::published_13nm();
    let e = estimate(&single_cell(), &CellDeck::Mram(deck.clone()), &tech).unwrap();
    let b = e.breakdown;
    assert_eq!(b.htree_s, 0.0);
    assert_eq!(b.htree_read_j, 0.0);
    // no row decoding, only the wordline driver chain
    assert!(b.decoder_s < tech.fo4() * 4.0);
    assert_eq!(b.cell_write_j, deck.write_energy_j);
    assert_eq!(b.cell_write_s, deck.t_write_pulse_s);
    let cell_read = tech.vdd_v * deck.i_read_a * b.bitline_read_s;
    assert!((b.bitline_read_j - cell_read).abs() <= 1e-12 * cell_read);
    let sum = b.decoder_s + b.wordline_s + b.bitline_read_s + b.sense_s;
    assert!((e.read_latency_s - sum).abs() <= 1e-12 * sum);
    assert!(e.write_latency_s >= deck.t_write_pulse_s);
}

#[test]
fn sram_cell_leakage_accounts_for_the_gap() {
    let tech = cold();
    let leaky = organize(1 << 20, &sram(), &tech, Objective::default(), ExecPolicy::default()).unwrap();
    let mram = organize(1 << 20, &mram13(), &tech, Objective::default(), ExecPolicy::default()).unwrap();
    assert!(mram.1.leakage_w / leaky.1.leakage_w <= 0.05);
    assert_eq!(mram.1.breakdown.leakage_cells_w, 0.0);

    let quiet = CellDeck::Sram(SramCellDeck { leakage_width: 0.0, ..SramCellDeck::default() });
    let e = estimate(&leaky.0, &quiet, &tech).unwrap();
    assert_eq!(e.breakdown.leakage_cells_w, 0.0);
    assert_eq!(e.leakage_w, e.breakdown.leakage_periphery_w);
    assert_eq!(e.leakage_w, leaky.1.breakdown.leakage_periphery_w);
    let ratio = mram.1.leakage_w / e.leakage_w;
    assert!((0.2..5.0).contains(&ratio), "periphery-only ratio {ratio}");
}

#[test]
fn normalized_values_reproduce_absolutes() {
    let caps = [64 << 10, 512 << 10];
    let t = benchmark(&caps, &BenchDecks::published(), &cold(), Objective::default(), ExecPolicy::default()).unwrap();
    assert_eq!(t.rows.len(), caps.len() * bench::METRICS.len());
    assert_eq!(t.points.len(), caps.len() * 3);
    for r in &t.rows {
        for (n, abs) in [(r.mram40_norm, r.mram40), (r.mram13_norm, r.mram13)] {
            assert!((n * r.sram - abs).abs() <= 1e-12 * abs.abs(), "{r:?}");
        }
    }
    let csv = t.to_csv().unwrap();
    assert!(csv.starts_with("capacity,metric,mram40,mram13,sram,mram40_norm,mram13_norm"));
    assert_eq!(csv.lines().count(), t.rows.len() + 1);
}

#[test]
fn missing_baseline_is_a_config_error() {
    let decks = BenchDecks { sram: None, ..BenchDecks::published() };
    let e = benchmark(&[64 << 10], &decks, &cold(), Objective::default(), ExecPolicy::default()).unwrap_err();
    assert!(matches!(e, Error::Config(_)), "{e}");
    let decks = BenchDecks { mram13: None, ..BenchDecks::published() };
    assert!(matches!(
        benchmark(&[64 << 10], &decks, &cold(), Objective::default(), ExecPolicy::default()),
        Err(Error::Config(_))
    ));
}

#[test]
fn capacity_bounds() {
    for cap in [32 << 10, 16 << 20] {
        assert!(matches!(
            organize(cap, &sram(), &cold(), Objective::default(), ExecPolicy::default()),
            Err(Error::Domain(_))
        ));
    }
    assert!(organize(8 << 20, &mram13(), &cold(), Objective::default(), ExecPolicy::default()).is_ok());
    assert!(bench::capacity_range(2 << 20, 64 << 10).is_err());
    assert!(bench::capacity_range(3 << 10, 64 << 10).is_err());
    assert_eq!(bench::capacity_range(64 << 10, 256 << 10).unwrap(), vec![64 << 10, 128 << 10, 256 << 10]);
}

#[test]
fn unusable_read_margin_is_infeasible() {
    let mut deck = MramCellDeck::published_13nm();
    deck.i_read_a = 1e-7;
    let e = organize(64 << 10, &CellDeck::Mram(deck), &cold(), Objective::default(), ExecPolicy::default()).unwrap_err();
    assert!(matches!(e, Error::Config(_)), "{e}");
}

#[test]
fn partitions_must_hold_the_capacity() {
    let good = candidates(64 << 10)[0];
    assert!(ArrayOrganization { rows: good.rows * 2, ..good }.validate().is_err());
    assert!(ArrayOrganization { cols: 48, ..good }.validate().is_err());
    assert!(ArrayOrganization { mux_bitline: good.cols * 2, ..good }.validate().is_err());
    assert!(good.with_capacity_bits(good.capacity_bits + 1).is_err());
    for o in candidates(64 << 10) {
        assert!(o.rows >= 16 && o.cols >= 16);
        assert_eq!(o.subarrays() * o.rows * o.cols, o.capacity_bits);
    }
}

#[test]
fn thirteen_nm_halves_write_energy() {
    let caps = bench::capacity_range(64 << 10, 2 << 20).unwrap();
    let t = benchmark(&caps, &BenchDecks::published(), &cold(), Objective::default(), ExecPolicy::default()).unwrap();
    let r: Vec<f64> = t.rows_for("write_energy_j").map(|r| r.mram13 / r.mram40).collect();
    let mean = r.iter().sum::<f64>() / r.len() as f64;
    assert!((0.25..=0.75).contains(&mean), "13/40 nm write energy {mean}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn estimates_are_positive(k in 0usize..10_000, which in 0usize..3) {
        let cands = candidates(256 << 10);
        let o = cands[k % cands.len()];
        let cell = [mram40(), mram13(), sram()][which].clone();
        if let Ok(e) = estimate(&o, &cell, &cold()) {
            for v in [e.read_latency_s, e.write_latency_s, e.read_energy_j, e.write_energy_j, e.leakage_w, e.area_m2] {
                prop_assert!(v > 0.0 && v.is_finite());
            }
            if let CellDeck::Mram(m) = &cell {
                prop_assert!(e.write_latency_s >= m.t_write_pulse_s);
            }
        }
    }
}

#[test]
#[ignore]
fn print_bench() {
    let caps = bench::capacity_range(64 << 10, 2 << 20).unwrap();
    let mut tech = TechnologyDeck::tech65_77k();
    if let Ok(v) = std::env::var("RES") {
        tech.periphery.sense_resolution_v = v.parse().unwrap();
    }
    let obj: Objective = std::env::var("OBJ").unwrap_or("latency".into()).parse().unwrap();
    let t = benchmark(&caps, &BenchDecks::published(), &tech, obj, ExecPolicy::default()).unwrap();
    for r in &t.rows {
        println!("{:>8} {:<16} {:>10.3e} {:>10.3e} {:>10.3e}  n40 {:>7.3} n13 {:>7.3}", r.capacity, r.metric, r.mram40, r.mram13, r.sram, r.mram40_norm, r.mram13_norm);
    }
    for p in &t.points {
        let o = p.organization;
        println!("{} {} mats {} subs {} {}x{} mux {} | {:?}", p.capacity, p.cell, o.mats_per_bank, o.subarrays_per_mat, o.rows, o.cols, o.mux_bitline, p.estimate.breakdown);
    }
    let _ = MramCellDeck::published_13nm();
}

#[test]
#[ignore]
fn print_candidates() {
    let tech = TechnologyDeck::tech65_77k();
    for cell in [CellDeck::Mram(MramCellDeck::published_13nm()), CellDeck::Sram(SramCellDeck::default())] {
        for cap in [64u64 << 10, 2 << 20] {
            let mut v: Vec<_> = candidates(cap).into_iter().filter_map(|o| estimate(&o, &cell, &tech).ok().map(|e| (o, e))).collect();
            v.sort_by(|a, b| (a.1.read_latency_s * a.1.read_energy_j).partial_cmp(&(b.1.read_latency_s * b.1.read_energy_j)).unwrap());
            println!("== {} {cap}", cell.name());
            for (o, e) in v.iter().take(8) {
                let b = e.breakdown;
                println!("{:>5} mats {:>4}x{:<4} m{} sub{} | lat {:.3e} E {:.3e} | ht {:.2e} dec {:.2e} wl {:.2e} bl {:.2e} | Eht {:.2e} Ebl {:.2e} Esa {:.2e} Ewl {:.2e}",
                    o.mats_per_bank, o.rows, o.cols, o.mux_bitline, o.subarrays_per_mat, e.read_latency_s, e.read_energy_j, b.htree_s, b.decoder_s, b.wordline_s, b.bitline_read_s, b.htree_read_j, b.bitline_read_j, b.sense_j, b.wordline_j);
            }
        }
    }
}
