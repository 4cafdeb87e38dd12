//! Operating point of the 1T1MTJ series stack.
//!
//! Topology: `BL - transistor - X - DMTJ - SL`, gate on `WL`. With `BL` above
//! `SL` the transistor source floats at node `X` (source-degenerated); with
//! `SL` above `BL` the source sits on `BL`.

use serde::{Deserialize, Serialize};

use super::transistor::Transistor;
use crate::device::{device_resistance, voltage_at_current, DeviceDeck, ResistanceState};
use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Two-terminal element in series with the access transistor.
pub trait SeriesLoad {
    /// Current (A) at a non-negative voltage drop.
    fn current_at(&self, v: f64) -> Result<f64>;
    /// Voltage drop at a non-negative current.
    fn voltage_at(&self, i: f64) -> Result<f64>;
}

/// DMTJ in a fixed state at a fixed temperature.
#[derive(Debug, Clone, Copy)]
pub struct DmtjLoad<'a> {
    pub deck: &'a DeviceDeck,
    pub state: ResistanceState,
    pub temperature_k: f64,
}

impl SeriesLoad for DmtjLoad<'_> {
    fn current_at(&self, v: f64) -> Result<f64> {
        Ok(device_resistance(self.deck, self.state, self.temperature_k, v)?.current_a)
    }

    fn voltage_at(&self, i: f64) -> Result<f64> {
        let pt = voltage_at_current(self.deck, self.state, self.temperature_k, i)?;
        Ok(pt.v_ox_top + pt.v_ox_bottom)
    }
}

/// Ohmic load.
#[derive(Debug, Clone, Copy)]
pub struct Resistor(pub f64);

impl SeriesLoad for Resistor {
    fn current_at(&self, v: f64) -> Result<f64> {
        Ok(v / self.0)
    }

    fn voltage_at(&self, i: f64) -> Result<f64> {
        Ok(i * self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BitcellPoint {
    /// Magnitude of the series current.
    pub i_cell_a: f64,
    pub v_dmtj_v: f64,
    pub v_ds_v: f64,
    pub v_gs_v: f64,
}

const REL_TOL: f64 = 1e-9;

fn check_rails(tr: &Transistor, v: &[(&str, f64)]) -> Result<()> {
    for &(name, x) in v {
        if !(0.0..=tr.supply_v).contains(&x) {
            return Err(Error::Domain(format!(
                "{name} = {x} V outside rails [0, {}] V",
                tr.supply_v
            )));
        }
    }
    Ok(())
}

/// Kirchhoff-consistent operating point for terminal voltages on the rails.
pub fn solve_bitcell(
    load: &dyn SeriesLoad,
    tr: &Transistor,
    wl_v: f64,
    bl_v: f64,
    sl_v: f64,
) -> Result<BitcellPoint> {
    check_rails(tr, &[("WL", wl_v), ("BL", bl_v), ("SL", sl_v)])?;
    let drive = (bl_v - sl_v).abs();
    let degenerated = bl_v > sl_v;
    let vgs = |vm: f64| if degenerated { wl_v - sl_v - vm } else { wl_v - bl_v };
    if drive == 0.0 {
        return Ok(BitcellPoint { i_cell_a: 0.0, v_dmtj_v: 0.0, v_ds_v: 0.0, v_gs_v: vgs(0.0) });
    }
    let mismatch = |vm: f64| -> Result<(f64, f64)> {
        Ok((tr.drain_current(vgs(vm), drive - vm), load.current_at(vm)?))
    };
    let mut failure = None;
    let vm = bisect(
        |vm| match mismatch(vm) {
            Ok((it, il)) => it - il,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        drive,
        1e-15,
        200,
    )
    .map_err(|e| match e {
        Error::Solver { message, trace } => Error::Solver {
            message: format!("bitcell stack ({bl_v} V -> {sl_v} V, WL {wl_v} V): {message}"),
            trace,
        },
        other => other,
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let (it, il) = mismatch(vm)?;
    if il > 0.0 && ((it - il) / il).abs() > REL_TOL && drive - vm > 1e-12 {
        return Err(Error::Solver {
            message: format!("bitcell current mismatch {:e} after bisection", (it - il) / il),
            trace: vec![vm, it, il],
        });
    }
    Ok(BitcellPoint { i_cell_a: il, v_dmtj_v: vm, v_ds_v: drive - vm, v_gs_v: vgs(vm) })
}

/// Terminal the read current is forced into; the other one is grounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReadPath {
    /// Into BL: the transistor source floats on the DMTJ.
    BitLine,
    /// Into SL: the transistor source sits on grounded BL.
    #[default]
    SourceLine,
}

/// Cell voltage across the driven terminals when `i_read` is forced through
/// the cell with the word line at `wl_v`.
pub fn forced_current_voltage(
    load: &dyn SeriesLoad,
    tr: &Transistor,
    wl_v: f64,
    i_read: f64,
    path: ReadPath,
) -> Result<BitcellPoint> {
    if !(i_read >= 0.0) {
        return Err(Error::Domain(format!("read current {i_read} A must be >= 0")));
    }
    let vm = load.voltage_at(i_read)?;
    let vgs = match path {
        ReadPath::BitLine => wl_v - vm,
        ReadPath::SourceLine => wl_v,
    };
    if i_read == 0.0 {
        return Ok(BitcellPoint { i_cell_a: 0.0, v_dmtj_v: vm, v_ds_v: 0.0, v_gs_v: vgs });
    }
    let vds_max = tr.supply_v;
    if tr.drain_current(vgs, vds_max) < i_read {
        return Err(Error::Saturation(format!(
            "access transistor cannot carry {i_read:e} A at V_gs = {vgs:.3} V"
        )));
    }
    let vds = bisect(|v| tr.drain_current(vgs, v) - i_read, 0.0, vds_max, 1e-15, 200)?;
    Ok(BitcellPoint { i_cell_a: i_read, v_dmtj_v: vm, v_ds_v: vds, v_gs_v: vgs })
}

impl BitcellPoint {
    pub fn v_cell(&self) -> f64 {
        self.v_dmtj_v + self.v_ds_v
    }
}

/// Both write transitions at full supply: `R_L -> R_H` drives BL high
/// (degenerated path), `R_H -> R_L` drives SL high.
pub fn write_points(deck: &DeviceDeck, tr: &Transistor, t: f64) -> Result<(BitcellPoint, BitcellPoint)> {
    let v = tr.supply_v;
    let lrs = DmtjLoad { deck, state: ResistanceState::Lrs, temperature_k: t };
    let hrs = DmtjLoad { deck, state: ResistanceState::Hrs, temperature_k: t };
    Ok((solve_bitcell(&lrs, tr, v, v, 0.0)?, solve_bitcell(&hrs, tr, v, 0.0, v)?))
}
