use serde::Serialize;

use super::{DeviceCharacteristics, DeviceDeck, SweepPoint};
use crate::error::{Error, Result};

/// Flat CSV record. Leading columns follow the usual device-table order
/// (geometry, material, then electrical and magnetic characteristics).
#[derive(Debug, Clone, Serialize)]
pub struct CharacteristicsRow {
    pub device: String,
    pub diameter_nm: f64,
    pub temperature_k: f64,
    pub t_fl_nm: f64,
    pub t_ox_top_nm: f64,
    pub t_ox_bottom_nm: f64,
    pub ra_ohm_um2: f64,
    pub polarization: f64,
    pub ms_t: f64,
    pub alpha: f64,
    pub ki_j_per_m2: f64,
    pub tmr0_pct: f64,
    pub r_low_kohm: f64,
    pub r_high_kohm: f64,
    pub i_c_ua: f64,
    pub delta: f64,
    pub h_k_eff_a_per_m: f64,
    pub k_eff_j_per_m3: f64,
    pub d_w_nm: f64,
    pub regime: &'static str,
    pub nz_minus_nxy: f64,
    pub thermally_stable: bool,
}

impl CharacteristicsRow {
    pub fn new(deck: &DeviceDeck, c: &DeviceCharacteristics) -> Self {
        let g = &deck.geometry;
        Self {
            device: c.name.clone(),
            diameter_nm: g.diameter_m * 1e9,
            temperature_k: c.temperature_k,
            t_fl_nm: g.t_fl_m * 1e9,
            t_ox_top_nm: g.t_ox_top_m * 1e9,
            t_ox_bottom_nm: g.t_ox_bottom_m * 1e9,
            ra_ohm_um2: deck.ra_ohm_um2,
            polarization: c.polarization,
            ms_t: c.ms_t,
            alpha: deck.material.alpha,
            ki_j_per_m2: c.ki_j_per_m2,
            tmr0_pct: c.tmr0 * 100.0,
            r_low_kohm: c.r_low_ohm * 1e-3,
            r_high_kohm: c.r_high_ohm * 1e-3,
            i_c_ua: c.i_c_a * 1e6,
            delta: c.delta,
            h_k_eff_a_per_m: c.h_k_eff_a_per_m,
            k_eff_j_per_m3: c.k_eff_j_per_m3,
            d_w_nm: c.d_w_m * 1e9,
            regime: c.regime.label(),
            nz_minus_nxy: c.nz_minus_nxy,
            thermally_stable: c.thermally_stable,
        }
    }
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Validation(format!("csv: {e}"))
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

pub fn characteristics_csv(rows: &[CharacteristicsRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    finish(w)
}

pub fn sweep_csv(points: &[SweepPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["diameter_nm", "temperature_k", "delta", "i_c_ua", "d_w_nm", "regime"])
        .map_err(csv_err)?;
    for p in points {
        w.write_record([
            format!("{}", p.diameter_m * 1e9),
            format!("{}", p.temperature_k),
            format!("{}", p.delta),
            format!("{}", p.i_c_a * 1e6),
            format!("{}", p.d_w_m * 1e9),
            p.regime.label().to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}
