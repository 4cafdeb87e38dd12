//! Technology parameters of the CMOS periphery and interconnect.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sizing and circuit-style knobs of the peripheral circuits. Widths are in
/// multiples of the minimum transistor width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeripheryDeck {
    /// Stage effort of driver chains.
    pub driver_fanout: f64,
    /// Leaking width of the row decoder per row.
    pub decoder_width_per_row: f64,
    pub sense_amp_width: f64,
    /// Sense amplifier regeneration delay, in FO4 delays.
    pub sense_amp_fo4: f64,
    /// Differential input a sense amplifier resolves reliably.
    pub sense_resolution_v: f64,
    pub precharge_width: f64,
    pub write_driver_width: f64,
    pub column_mux_width: f64,
    /// Fraction of peripheral width leaking in standby (stacking and
    /// sleep devices in idle sub-arrays).
    pub standby_leakage_factor: f64,
}

impl Default for PeripheryDeck {
    fn default() -> Self {
        Self {
            driver_fanout: 4.0,
            decoder_width_per_row: 4.0,
            sense_amp_width: 10.0,
            sense_amp_fo4: 4.0,
            sense_resolution_v: 0.04,
            precharge_width: 2.0,
            write_driver_width: 4.0,
            column_mux_width: 1.0,
            standby_leakage_factor: 0.1,
        }
    }
}

/// One process at one temperature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechnologyDeck {
    pub name: String,
    pub temperature_k: f64,
    pub feature_size_m: f64,
    pub vdd_v: f64,
    pub min_width_m: f64,
    /// Saturation current per gate width at `V_gs = V_ds = V_dd`.
    pub on_current_a_per_m: f64,
    /// Off current per gate width at `V_ds = V_dd`.
    pub off_current_a_per_m: f64,
    pub gate_cap_f_per_m: f64,
    pub drain_cap_f_per_m: f64,
    pub local_wire_r_ohm_per_m: f64,
    pub local_wire_c_f_per_m: f64,
    pub global_wire_r_ohm_per_m: f64,
    pub global_wire_c_f_per_m: f64,
    #[serde(default)]
    pub periphery: PeripheryDeck,
}

/// Relative change of technology parameters on cooling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CryoScaling {
    pub temperature_k: f64,
    pub wire_resistance: f64,
    pub on_current: f64,
    pub off_current: f64,
}

impl Default for CryoScaling {
    fn default() -> Self {
        Self { temperature_k: 77.0, wire_resistance: 0.4, on_current: 1.30, off_current: 0.05 }
    }
}

impl TechnologyDeck {
    /// 65 nm bulk CMOS at room temperature.
    pub fn tech65_300k() -> Self {
        Self {
            name: "tech65_300K".into(),
            temperature_k: 300.0,
            feature_size_m: 65e-9,
            vdd_v: 1.2,
            min_width_m: 130e-9,
            on_current_a_per_m: 740.0,
            off_current_a_per_m: 0.039,
            gate_cap_f_per_m: 1.0e-9,
            drain_cap_f_per_m: 0.8e-9,
            local_wire_r_ohm_per_m: 1.5e6,
            local_wire_c_f_per_m: 0.2e-9,
            global_wire_r_ohm_per_m: 0.15e6,
            global_wire_c_f_per_m: 0.2e-9,
            periphery: PeripheryDeck::default(),
        }
    }

    /// 65 nm bulk CMOS at 77 K.
    pub fn tech65_77k() -> Self {
        let mut d = Self::tech65_300k().cooled(&CryoScaling::default());
        d.name = "tech65_77K".into();
        d
    }

    pub fn cooled(&self, s: &CryoScaling) -> Self {
        Self {
            name: format!("{}@{}K", self.name, s.temperature_k),
            temperature_k: s.temperature_k,
            on_current_a_per_m: self.on_current_a_per_m * s.on_current,
            off_current_a_per_m: self.off_current_a_per_m * s.off_current,
            local_wire_r_ohm_per_m: self.local_wire_r_ohm_per_m * s.wire_resistance,
            global_wire_r_ohm_per_m: self.global_wire_r_ohm_per_m * s.wire_resistance,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.periphery;
        for (name, v) in [
            ("temperature_k", self.temperature_k),
            ("feature_size_m", self.feature_size_m),
            ("vdd_v", self.vdd_v),
            ("min_width_m", self.min_width_m),
            ("on_current_a_per_m", self.on_current_a_per_m),
            ("gate_cap_f_per_m", self.gate_cap_f_per_m),
            ("local_wire_r_ohm_per_m", self.local_wire_r_ohm_per_m),
            ("local_wire_c_f_per_m", self.local_wire_c_f_per_m),
            ("global_wire_r_ohm_per_m", self.global_wire_r_ohm_per_m),
            ("global_wire_c_f_per_m", self.global_wire_c_f_per_m),
            ("periphery.driver_fanout", p.driver_fanout),
            ("periphery.sense_amp_width", p.sense_amp_width),
            ("periphery.sense_resolution_v", p.sense_resolution_v),
            ("periphery.write_driver_width", p.write_driver_width),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{}: {name} = {v} must be positive", self.name)));
            }
        }
        for (name, v) in [
            ("off_current_a_per_m", self.off_current_a_per_m),
            ("drain_cap_f_per_m", self.drain_cap_f_per_m),
            ("periphery.decoder_width_per_row", p.decoder_width_per_row),
            ("periphery.sense_amp_fo4", p.sense_amp_fo4),
            ("periphery.precharge_width", p.precharge_width),
            ("periphery.column_mux_width", p.column_mux_width),
            ("periphery.standby_leakage_factor", p.standby_leakage_factor),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{}: {name} = {v} must be >= 0", self.name)));
            }
        }
        Ok(())
    }

    /// Checks a cryogenic deck against its room-temperature counterpart.
    pub fn check_cooling(room: &Self, cold: &Self) -> Result<()> {
        if !(cold.temperature_k < room.temperature_k) {
            return Err(Error::Config("cold deck must be colder".into()));
        }
        if !(cold.local_wire_r_ohm_per_m < room.local_wire_r_ohm_per_m
            && cold.global_wire_r_ohm_per_m < room.global_wire_r_ohm_per_m)
        {
            return Err(Error::Config("wire resistivity must fall on cooling".into()));
        }
        if !(cold.on_current_a_per_m > room.on_current_a_per_m) {
            return Err(Error::Config("on-current must rise on cooling".into()));
        }
        Ok(())
    }

    /// Effective switching resistance of a minimum inverter.
    pub fn r_min(&self) -> f64 {
        self.vdd_v / (self.on_current_a_per_m * self.min_width_m)
    }

    /// Input capacitance of a minimum inverter (NMOS plus 2x PMOS).
    pub fn c_in_min(&self) -> f64 {
        3.0 * self.min_width_m * self.gate_cap_f_per_m
    }

    pub fn c_par_min(&self) -> f64 {
        3.0 * self.min_width_m * self.drain_cap_f_per_m
    }

    pub fn fo4(&self) -> f64 {
        std::f64::consts::LN_2 * self.r_min() * (4.0 * self.c_in_min() + self.c_par_min())
    }

    /// Standby leakage power of `width` minimum-width devices.
    pub fn leakage_w(&self, width: f64) -> f64 {
        width * self.min_width_m * self.off_current_a_per_m * self.vdd_v
    }
}
