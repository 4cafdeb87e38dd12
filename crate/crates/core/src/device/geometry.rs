use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Circular DMTJ pillar. All lengths in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceGeometry {
    pub diameter_m: f64,
    pub t_fl_m: f64,
    pub t_ox_top_m: f64,
    pub t_ox_bottom_m: f64,
}

impl DeviceGeometry {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("diameter_m", self.diameter_m),
            ("t_fl_m", self.t_fl_m),
            ("t_ox_bottom_m", self.t_ox_bottom_m),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.t_ox_top_m > self.t_ox_bottom_m) {
            return Err(Error::Config(format!(
                "top barrier ({:e} m) must be thicker than bottom barrier ({:e} m)",
                self.t_ox_top_m, self.t_ox_bottom_m
            )));
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        PI * 0.25 * self.diameter_m * self.diameter_m
    }

    /// Free-layer volume.
    pub fn volume(&self) -> f64 {
        self.area() * self.t_fl_m
    }

    pub fn with_diameter(&self, diameter_m: f64) -> Self {
        Self { diameter_m, ..*self }
    }
}
