//! Per-barrier conductance and the two-barrier series stack.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Magnetic alignment of the free layer against one reference layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alignment {
    Parallel,
    Antiparallel,
}

/// Composite state of the stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ResistanceState {
    Lrs,
    Hrs,
}

impl ResistanceState {
    /// Alignments of (top, bottom) barriers. The two reference layers are
    /// antiparallel, so the barriers are always in opposite states.
    pub fn alignments(self) -> (Alignment, Alignment) {
        match self {
            ResistanceState::Lrs => (Alignment::Parallel, Alignment::Antiparallel),
            ResistanceState::Hrs => (Alignment::Antiparallel, Alignment::Parallel),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ResistanceState::Lrs => "LRS",
            ResistanceState::Hrs => "HRS",
        }
    }
}

/// Electrical parameters of one tunnel barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierElectrical {
    /// Elastic tunneling prefactor.
    pub g_t_s: f64,
    /// Spin-independent inelastic conductance at the reference temperature.
    pub g_si_s: f64,
    /// Bias at which the barrier TMR halves.
    pub v_h_v: f64,
}

impl BarrierElectrical {
    pub fn validate(&self) -> Result<()> {
        if !(self.g_t_s > 0.0) || !self.g_t_s.is_finite() {
            return Err(Error::Config(format!("g_t_s = {} must be positive", self.g_t_s)));
        }
        if !(self.g_si_s >= 0.0) || !self.g_si_s.is_finite() {
            return Err(Error::Config(format!("g_si_s = {} must be >= 0", self.g_si_s)));
        }
        if !(self.v_h_v > 0.0) {
            return Err(Error::Config(format!("v_h_v = {} must be positive", self.v_h_v)));
        }
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            g_t_s: self.g_t_s * factor,
            g_si_s: self.g_si_s * factor,
            ..*self
        }
    }
}

/// Temperature law for the inelastic term, `g_si(T) = g_si * (T/T_ref)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InelasticLaw {
    pub exponent: f64,
    pub reference_k: f64,
}

impl Default for InelasticLaw {
    fn default() -> Self {
        Self {
            exponent: 4.0 / 3.0,
            reference_k: 300.0,
        }
    }
}

impl InelasticLaw {
    pub fn factor(&self, t: f64) -> f64 {
        (t / self.reference_k).powf(self.exponent)
    }
}

pub const DEFAULT_MAX_BIAS_V: f64 = 1.5;

fn default_max_bias() -> f64 {
    DEFAULT_MAX_BIAS_V
}

/// Both barriers of the DMTJ plus shared settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackElectrical {
    pub top: BarrierElectrical,
    pub bottom: BarrierElectrical,
    #[serde(default)]
    pub inelastic: InelasticLaw,
    #[serde(default = "default_max_bias")]
    pub max_bias_v: f64,
}

impl StackElectrical {
    pub fn validate(&self) -> Result<()> {
        self.top.validate()?;
        self.bottom.validate()?;
        if !(self.max_bias_v > 0.0) {
            return Err(Error::Config("max_bias_v must be positive".into()));
        }
        if !(self.inelastic.reference_k > 0.0) || !self.inelastic.exponent.is_finite() {
            return Err(Error::Config("inelastic law needs reference_k > 0".into()));
        }
        Ok(())
    }
}

/// Conductance of one barrier at polarization `p`, temperature `t` and
/// barrier bias `v_ox`.
///
/// The parallel conductance is bias independent. The antiparallel one is set
/// so that the barrier TMR rolls off as `TMR0 / (1 + (v/v_h)^2)`.
pub fn barrier_conductance(
    b: &BarrierElectrical,
    law: &InelasticLaw,
    state: Alignment,
    p: f64,
    t: f64,
    v_ox: f64,
    max_bias_v: f64,
) -> Result<f64> {
    if !(v_ox.abs() <= max_bias_v) {
        return Err(Error::Domain(format!(
            "barrier bias {v_ox} V exceeds max bias {max_bias_v} V"
        )));
    }
    let p2 = p * p;
    let g_si = b.g_si_s * law.factor(t);
    let g_p = b.g_t_s * (1.0 + p2) + g_si;
    match state {
        Alignment::Parallel => Ok(g_p),
        Alignment::Antiparallel => {
            let g_ap0 = b.g_t_s * (1.0 - p2) + g_si;
            let tmr0 = g_p / g_ap0 - 1.0;
            let r = v_ox / b.v_h_v;
            Ok(g_p / (1.0 + tmr0 / (1.0 + r * r)))
        }
    }
}

/// Zero-bias barrier TMR, `2P^2 / ((1 - P^2) + G_SI/G_T)`.
pub fn barrier_tmr0(b: &BarrierElectrical, law: &InelasticLaw, p: f64, t: f64) -> f64 {
    let p2 = p * p;
    2.0 * p2 / ((1.0 - p2) + b.g_si_s * law.factor(t) / b.g_t_s)
}

/// Operating point of the series stack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub resistance_ohm: f64,
    pub current_a: f64,
    pub v_ox_top: f64,
    pub v_ox_bottom: f64,
    pub iterations: usize,
}

pub const SERIES_TOL_V: f64 = 1e-9;
pub const SERIES_MAX_ITER: usize = 200;

/// Split `v_applied` across two barriers in series.
///
/// Damped fixed point on the top-barrier voltage. The bottom voltage is
/// always `v_applied - v_top`, so Kirchhoff's law holds exactly at every
/// iterate.
pub fn series_partition(
    stack: &StackElectrical,
    states: (Alignment, Alignment),
    p: f64,
    t: f64,
    v_applied: f64,
) -> Result<SeriesPoint> {
    let law = &stack.inelastic;
    let gt = |v: f64| barrier_conductance(&stack.top, law, states.0, p, t, v, stack.max_bias_v);
    let gb = |v: f64| barrier_conductance(&stack.bottom, law, states.1, p, t, v, stack.max_bias_v);
    if v_applied == 0.0 {
        let (g1, g2) = (gt(0.0)?, gb(0.0)?);
        return Ok(SeriesPoint {
            resistance_ohm: 1.0 / g1 + 1.0 / g2,
            current_a: 0.0,
            v_ox_top: 0.0,
            v_ox_bottom: 0.0,
            iterations: 0,
        });
    }
    if v_applied.abs() > stack.max_bias_v {
        return Err(Error::Domain(format!(
            "applied bias {v_applied} V exceeds max bias {} V",
            stack.max_bias_v
        )));
    }
    let (g1, g2) = (gt(0.0)?, gb(0.0)?);
    let mut v_top = v_applied * g2 / (g1 + g2);
    let mut trace = Vec::new();
    for it in 1..=SERIES_MAX_ITER {
        let r_top = 1.0 / gt(v_top)?;
        let r_bot = 1.0 / gb(v_applied - v_top)?;
        let target = v_applied * r_top / (r_top + r_bot);
        let step = target - v_top;
        trace.push(step.abs());
        if step.abs() < SERIES_TOL_V {
            let v_top = target;
            let r_top = 1.0 / gt(v_top)?;
            let r_bot = 1.0 / gb(v_applied - v_top)?;
            let r = r_top + r_bot;
            return Ok(SeriesPoint {
                resistance_ohm: r,
                current_a: v_applied / r,
                v_ox_top: v_top,
                v_ox_bottom: v_applied - v_top,
                iterations: it,
            });
        }
        v_top += 0.7 * step;
    }
    Err(Error::Solver {
        message: format!("series divider at {v_applied} V did not settle in {SERIES_MAX_ITER} iterations"),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(g_t: f64, g_si: f64) -> BarrierElectrical {
        BarrierElectrical { g_t_s: g_t, g_si_s: g_si, v_h_v: 0.5 }
    }

    const LAW: InelasticLaw = InelasticLaw { exponent: 4.0 / 3.0, reference_k: 300.0 };

    #[test]
    fn zero_bias_ratio_matches_tmr_formula() {
        let bar = b(1e-4, 2e-5);
        let p = 0.7;
        let gp = barrier_conductance(&bar, &LAW, Alignment::Parallel, p, 150.0, 0.0, 1.5).unwrap();
        let gap = barrier_conductance(&bar, &LAW, Alignment::Antiparallel, p, 150.0, 0.0, 1.5).unwrap();
        assert!((gp / gap - 1.0 - barrier_tmr0(&bar, &LAW, p, 150.0)).abs() < 1e-12);
    }

    #[test]
    fn tmr_halves_at_vh() {
        let bar = b(1e-4, 1e-5);
        let p = 0.66;
        let gp = barrier_conductance(&bar, &LAW, Alignment::Parallel, p, 300.0, 0.5, 1.5).unwrap();
        let gap = barrier_conductance(&bar, &LAW, Alignment::Antiparallel, p, 300.0, 0.5, 1.5).unwrap();
        let tmr = gp / gap - 1.0;
        assert!((tmr / barrier_tmr0(&bar, &LAW, p, 300.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pure_elastic_tmr() {
        // 2 * 0.4356 / 0.5644
        let t = barrier_tmr0(&b(1e-4, 0.0), &LAW, 0.66, 300.0);
        assert!((t - 1.543_586).abs() < 1e-5, "{t}");
    }

    #[test]
    fn bias_limit_is_domain_error() {
        let r = barrier_conductance(&b(1e-4, 0.0), &LAW, Alignment::Parallel, 0.6, 77.0, 1.6, 1.5);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn identical_barriers_split_evenly() {
        let stack = StackElectrical {
            top: b(5e-5, 1e-6),
            bottom: b(5e-5, 1e-6),
            inelastic: LAW,
            max_bias_v: 1.5,
        };
        for states in [
            (Alignment::Parallel, Alignment::Parallel),
            (Alignment::Antiparallel, Alignment::Antiparallel),
        ] {
            let pt = series_partition(&stack, states, 0.7, 77.0, 0.6).unwrap();
            assert!((pt.v_ox_top - 0.3).abs() < 1e-9 && (pt.v_ox_bottom - 0.3).abs() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn kirchhoff_residual(v in -1.4f64..1.4, gt_top in 1e-5f64..1e-3, gt_bot in 1e-5f64..1e-2, hrs in any::<bool>()) {
            let stack = StackElectrical {
                top: b(gt_top, 0.05 * gt_top),
                bottom: b(gt_bot, 0.1 * gt_bot),
                inelastic: LAW,
                max_bias_v: 1.5,
            };
            let st = if hrs { ResistanceState::Hrs } else { ResistanceState::Lrs };
            let pt = series_partition(&stack, st.alignments(), 0.73, 77.0, v).unwrap();
            prop_assert!((pt.v_ox_top + pt.v_ox_bottom - v).abs() < 1e-9);
            // self-consistency: both barriers carry the same current
            let law = &stack.inelastic;
            let (a, c) = st.alignments();
            let i_top = pt.v_ox_top * barrier_conductance(&stack.top, law, a, 0.73, 77.0, pt.v_ox_top, 1.5).unwrap();
            let i_bot = pt.v_ox_bottom * barrier_conductance(&stack.bottom, law, c, 0.73, 77.0, pt.v_ox_bottom, 1.5).unwrap();
            let g_max = stack.top.g_t_s.max(stack.bottom.g_t_s) * 2.0;
            prop_assert!((i_top - i_bot).abs() <= 1e-8 * g_max);
        }
    }
}
