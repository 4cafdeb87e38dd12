//! Shipped 40 nm and 13 nm devices. Barrier conductances and demag offsets
//! come from [`extract_barriers`](super::extract_barriers) and the demag
//! calibration helpers; `tests.rs` re-derives them.

use super::barrier::{BarrierElectrical, InelasticLaw, StackElectrical, DEFAULT_MAX_BIAS_V};
use super::geometry::DeviceGeometry;
use super::magnetic::DemagModel;
use super::DeviceDeck;
use crate::material::MaterialDeck;

const V_H: f64 = 0.5;

fn barrier(g_t_s: f64, g_si_s: f64) -> BarrierElectrical {
    BarrierElectrical { g_t_s, g_si_s, v_h_v: V_H }
}

/// 40 nm device: t_FL 1.2 nm, barriers 1.0 / 0.5 nm, RA 7 Ω·µm².
pub fn dmtj40() -> DeviceDeck {
    DeviceDeck {
        name: "dmtj40".into(),
        material: MaterialDeck::cofeb(),
        geometry: DeviceGeometry {
            diameter_m: 40e-9,
            t_fl_m: 1.2e-9,
            t_ox_top_m: 1.0e-9,
            t_ox_bottom_m: 0.5e-9,
        },
        ra_ohm_um2: 7.0,
        electrical: StackElectrical {
            top: barrier(G40[0], G40[1]),
            bottom: barrier(G40[2], G40[3]),
            inelastic: InelasticLaw::default(),
            max_bias_v: DEFAULT_MAX_BIAS_V,
        },
        demag: DemagModel::ThinDisk { offset: OFFSET40 },
        barrier_decay_per_nm: 6.0,
    }
}

/// 13 nm device: t_FL 1.2 nm, barriers 0.85 / 0.4 nm, RA 2 Ω·µm².
pub fn dmtj13() -> DeviceDeck {
    DeviceDeck {
        name: "dmtj13".into(),
        material: MaterialDeck::cofeb(),
        geometry: DeviceGeometry {
            diameter_m: 13e-9,
            t_fl_m: 1.2e-9,
            t_ox_top_m: 0.85e-9,
            t_ox_bottom_m: 0.4e-9,
        },
        ra_ohm_um2: 2.0,
        electrical: StackElectrical {
            top: barrier(G13[0], G13[1]),
            bottom: barrier(G13[2], G13[3]),
            inelastic: InelasticLaw::default(),
            max_bias_v: DEFAULT_MAX_BIAS_V,
        },
        demag: DemagModel::ThinDisk { offset: OFFSET13 },
        barrier_decay_per_nm: 6.0,
    }
}

// G_T top, G_SI top, G_T bottom, G_SI bottom (S)
const G40: [f64; 4] = [
    1.146_818_071_752_489_9e-4,
    7.540_387_292_294_016e-6,
    5.539_866_643_264_588e-3,
    5.539_866_643_264_588e-3,
];
const G13: [f64; 4] = [
    3.768_176_178_131_960_5e-5,
    3.259_737_583_884_241_4e-6,
    1.267_807_841_335_235_6e-3,
    1.267_807_841_335_235_6e-3,
];
const OFFSET40: f64 = 0.054_277_968_150_967_75;
const OFFSET13: f64 = 0.094_611_212_660_985_27;
