//! Latency, energy, leakage and area of an organized array.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::cell::CellDeck;
use super::elmore::RcLadder;
use super::org::ArrayOrganization;
use super::tech::TechnologyDeck;
use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Layout footprint of peripheral transistors, in units of `F` per unit
/// width along the channel direction.
const PERIPHERY_PITCH_F: f64 = 8.0;
const MAX_SEGMENTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakdown {
    pub htree_s: f64,
    pub decoder_s: f64,
    pub wordline_s: f64,
    pub bitline_read_s: f64,
    pub sense_s: f64,
    pub bitline_write_s: f64,
    pub cell_write_s: f64,
    pub htree_read_j: f64,
    pub decoder_j: f64,
    pub wordline_j: f64,
    pub bitline_read_j: f64,
    pub sense_j: f64,
    pub bitline_write_j: f64,
    pub cell_write_j: f64,
    pub leakage_cells_w: f64,
    pub leakage_periphery_w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayEstimate {
    pub read_latency_s: f64,
    pub write_latency_s: f64,
    pub read_energy_j: f64,
    pub write_energy_j: f64,
    pub leakage_w: f64,
    pub area_m2: f64,
    pub breakdown: Breakdown,
}

/// Optimally repeated global wire.
struct RepeatedWire {
    delay_per_m: f64,
    energy_per_m: f64,
    width_per_m: f64,
}

/// Buffer and decode gate at each tree branch, per routed bit.
const NODE_WIDTH: f64 = 12.0;

fn repeated_wire(tech: &TechnologyDeck) -> RepeatedWire {
    let (r, c) = (tech.global_wire_r_ohm_per_m, tech.global_wire_c_f_per_m);
    let (r0, c0, cp) = (tech.r_min(), tech.c_in_min(), tech.c_par_min());
    let s = (r0 * c / (r * c0)).sqrt().max(1.0);
    let l = (2.0 * r0 * (c0 + cp) / (r * c)).sqrt();
    let seg = RcLadder { stages: vec![(r0 / s, s * cp), (r * l, c * l + s * c0)] };
    RepeatedWire {
        delay_per_m: seg.delay() / l,
        energy_per_m: 0.5 * (c + s * (c0 + cp) / l) * tech.vdd_v * tech.vdd_v,
        width_per_m: 3.0 * s / l,
    }
}

fn segments(cells: f64) -> usize {
    (cells as usize).clamp(1, MAX_SEGMENTS)
}

/// Time for the HRS-LRS bitline difference to reach `v_res` when `i` is
/// forced into a bitline of capacitance `c`.
fn mram_sense_time(i: f64, r_low: f64, r_high: f64, c: f64, v_res: f64) -> Result<f64> {
    let margin = i * (r_high - r_low);
    if !(margin > v_res) {
        return Err(Error::Config(format!(
            "read margin {margin:e} V below the {v_res:e} V sense resolution"
        )));
    }
    let diff = |t: f64| i * (r_high * -(-t / (r_high * c)).exp_m1() - r_low * -(-t / (r_low * c)).exp_m1()) - v_res;
    bisect(diff, 0.0, 60.0 * r_high * c, 1e-16, 300)
}

/// Estimate of one organization built from `cell` in `tech`.
pub fn estimate(org: &ArrayOrganization, cell: &CellDeck, tech: &TechnologyDeck) -> Result<ArrayEstimate> {
    org.validate()?;
    cell.validate()?;
    tech.validate()?;
    let p = &tech.periphery;
    let vdd = tech.vdd_v;
    let wmin = tech.min_width_m;
    let fo4 = tech.fo4();
    let pitch = cell.area_f2().sqrt() * tech.feature_size_m;
    let (rows, cols) = (org.rows as f64, org.cols as f64);
    let n_sub = org.subarrays() as f64;
    let n_act = org.active_subarrays() as f64;
    let out_bits = org.bits_per_subarray() as f64;
    let sense_amps = cols / org.mux_bitline as f64;

    // word line
    let c_wl_cells = cols * cell.wordline_width() * wmin * tech.gate_cap_f_per_m;
    let c_wl_wire = cols * pitch * tech.local_wire_c_f_per_m;
    let r_wl = cols * pitch * tech.local_wire_r_ohm_per_m;
    let c_wl = c_wl_cells + c_wl_wire;
    let s_wl = (c_wl / (p.driver_fanout * tech.c_in_min())).max(1.0);
    let chain = (s_wl.ln() / p.driver_fanout.ln()).ceil().max(0.0);
    let wordline_s =
        RcLadder::driven_line(tech.r_min() / s_wl, r_wl, c_wl_wire, c_wl_cells, 0.0, segments(cols)).delay();
    let decoder_stages = if org.rows > 1 { (rows.log2() / 2.0).ceil() } else { 0.0 };
    let decoder_s = (decoder_stages + chain) * fo4;
    let chain_c = s_wl * (tech.c_in_min() + tech.c_par_min()) * p.driver_fanout / (p.driver_fanout - 1.0).max(1.0);
    let decoder_j = ((rows.log2() + 1.0) * p.decoder_width_per_row * tech.c_in_min() / 3.0 + chain_c) * vdd * vdd;
    let wordline_j = c_wl * vdd * vdd;

    // bit line
    let c_bl_cells = rows * cell.bitline_width() * wmin * tech.drain_cap_f_per_m;
    let c_bl_wire = rows * pitch * tech.local_wire_c_f_per_m;
    let r_bl = rows * pitch * tech.local_wire_r_ohm_per_m;
    // the selected column sees the sense amplifier and every mux branch
    let c_sa = p.sense_amp_width * wmin * tech.gate_cap_f_per_m
        + org.mux_bitline as f64 * p.column_mux_width * wmin * tech.drain_cap_f_per_m;
    let c_bl = c_bl_cells + c_bl_wire + c_sa;
    let wire_term = LN_2 * 0.5 * r_bl * c_bl_wire;
    let sense_s = p.sense_amp_fo4 * fo4;
    let sense_j = n_act * sense_amps * p.sense_amp_width * wmin * (tech.gate_cap_f_per_m + tech.drain_cap_f_per_m) * vdd * vdd;
    let write_drive = RcLadder::driven_line(
        tech.r_min() / p.write_driver_width,
        r_bl,
        c_bl_wire,
        c_bl_cells,
        c_sa,
        segments(rows),
    )
    .delay();

    let (bitline_read_s, bitline_read_j, bitline_write_j, cell_write_s, cell_write_j, cell_leak_width, per_col_width) =
        match cell {
            CellDeck::Sram(s) => {
                let i_cell = tech.on_current_a_per_m * s.read_width * wmin;
                let t = c_bl * s.read_swing_v / i_cell + wire_term;
                let read_j = n_act * cols * c_bl * vdd * s.read_swing_v;
                let half = cols - out_bits;
                let write_j = n_act * (out_bits * c_bl * vdd * vdd + half * c_bl * vdd * s.read_swing_v);
                let leak = org.capacity_bits as f64 * s.leakage_width;
                (t, read_j, write_j, s.flip_fo4 * fo4, 0.0, leak, p.precharge_width)
            }
            CellDeck::Mram(m) => {
                let t = mram_sense_time(m.i_read_a, m.r_low_ohm, m.r_high_ohm, c_bl, p.sense_resolution_v)? + wire_term;
                let read_j = n_act * out_bits * vdd * m.i_read_a * t;
                let write_j = n_act * out_bits * c_bl * vdd * vdd;
                let cell_j = org.word_bits as f64 * m.write_energy_j;
                (t, read_j, write_j, m.t_write_pulse_s, cell_j, 0.0, 0.0)
            }
        };
    let write_driver_width = match cell {
        CellDeck::Mram(m) => p.write_driver_width.max(m.i_write_a / (tech.on_current_a_per_m * wmin)),
        CellDeck::Sram(_) => p.write_driver_width,
    };

    // area and global routing
    let per_sub_width = rows * (p.decoder_width_per_row + 3.0 * s_wl)
        + cols * (per_col_width + p.column_mux_width)
        + sense_amps * (p.sense_amp_width + write_driver_width);
    let cell_area = org.capacity_bits as f64 * cell.area_f2() * tech.feature_size_m.powi(2);
    let periph_area = n_sub * per_sub_width * wmin * PERIPHERY_PITCH_F * tech.feature_size_m;
    let core_area = cell_area + periph_area;
    let htree_len = core_area.sqrt() * (1.0 - 1.0 / n_sub.sqrt());
    let w = repeated_wire(tech);
    // each branching level of the tree re-buffers and decodes
    let levels = n_sub.log2();
    let node_j = 0.5 * NODE_WIDTH * (tech.c_in_min() + tech.c_par_min()) / 3.0 * vdd * vdd;
    let htree_one_way = w.delay_per_m * htree_len + levels * fo4;
    let addr_bits = ((org.capacity_bits / org.word_bits) as f64).log2().max(0.0);
    let word = org.word_bits as f64;
    let htree_read_j = (addr_bits + word) * (w.energy_per_m * htree_len + levels * node_j);
    let repeaters = (addr_bits + 2.0 * word) * (w.width_per_m * htree_len + levels * NODE_WIDTH);
    let area_m2 = core_area + repeaters * wmin * PERIPHERY_PITCH_F * tech.feature_size_m;

    let leakage_cells_w = tech.leakage_w(cell_leak_width);
    let leakage_periphery_w = tech.leakage_w(n_sub * per_sub_width + repeaters) * p.standby_leakage_factor;

    let read_latency_s = 2.0 * htree_one_way + decoder_s + wordline_s + bitline_read_s + sense_s;
    let write_latency_s = htree_one_way + decoder_s + wordline_s + write_drive + cell_write_s;
    let read_energy_j = htree_read_j + n_act * (decoder_j + wordline_j) + bitline_read_j + sense_j;
    let write_energy_j = htree_read_j + n_act * (decoder_j + wordline_j) + bitline_write_j + cell_write_j;
    Ok(ArrayEstimate {
        read_latency_s,
        write_latency_s,
        read_energy_j,
        write_energy_j,
        leakage_w: leakage_cells_w + leakage_periphery_w,
        area_m2,
        breakdown: Breakdown {
            htree_s: htree_one_way,
            decoder_s,
            wordline_s,
            bitline_read_s,
            sense_s,
            bitline_write_s: write_drive,
            cell_write_s,
            htree_read_j,
            decoder_j: n_act * decoder_j,
            wordline_j: n_act * wordline_j,
            bitline_read_j,
            sense_j,
            bitline_write_j,
            cell_write_j,
            leakage_cells_w,
            leakage_periphery_w,
        },
    })
}
