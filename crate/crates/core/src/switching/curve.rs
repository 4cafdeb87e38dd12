//! WER(t_p) curves combining Monte Carlo estimates with the analytic tail.

use serde::{Deserialize, Serialize};

use super::analytic::{analytic_pulse, analytic_wer, ActivationModel, TailModel};
use super::{run_trials, SwitchingDevice, SwitchingProblem, TrialSet, DEFAULT_DT_S};
use crate::error::{Error, Result};
use crate::par::ExecPolicy;
use crate::stats::{wilson_interval, Z95};

/// How a curve point was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    MonteCarlo,
    Analytic,
    /// Below `Ic`: Néel-Brown escape instead of precessional switching.
    Activation,
    Hybrid,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::MonteCarlo => "monte-carlo",
            Method::Analytic => "analytic",
            Method::Activation => "activation",
            Method::Hybrid => "hybrid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WerPoint {
    pub t_p_s: f64,
    pub wer: f64,
    pub method: Method,
    /// Trials behind the estimate; zero for model points.
    pub trials: u64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WerCurve {
    pub i_write_a: f64,
    pub points: Vec<WerPoint>,
    pub method: Method,
    pub trials: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WerOptions {
    pub seed: u64,
    pub dt_s: f64,
    pub model: TailModel,
    pub activation: ActivationModel,
    pub policy: ExecPolicy,
    /// Fewest observed errors for a Monte Carlo point to be reported.
    pub min_errors: u64,
    pub temperature_k: f64,
}

impl Default for WerOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            dt_s: DEFAULT_DT_S,
            model: TailModel::default(),
            activation: ActivationModel::default(),
            policy: ExecPolicy::default(),
            min_errors: 10,
            temperature_k: 77.0,
        }
    }
}

/// WER versus pulse width at `i_write`.
///
/// Grid points with at least `min_errors` failures among `trials` come
/// from Monte Carlo with a Wilson 95% interval. Beyond that the analytic
/// tail takes over, scaled to meet the last Monte Carlo point so the curve
/// stays continuous and non-increasing. If the curve ends above
/// `target_floor`, one more model point is appended where it reaches the floor.
pub fn wer_curve(
    dev: &SwitchingDevice,
    i_write: f64,
    t_grid: &[f64],
    trials: usize,
    target_floor: f64,
    opts: &WerOptions,
) -> Result<(WerCurve, TrialSet)> {
    if trials == 0 {
        return Err(Error::Validation("trials must be at least 1".into()));
    }
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::Validation("pulse grid must be non-empty and positive".into()));
    }
    if !(target_floor > 0.0 && target_floor < 1.0) {
        return Err(Error::Validation(format!("target floor {target_floor} not in (0, 1)")));
    }
    let mut grid = t_grid.to_vec();
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();
    let t_max = *grid.last().unwrap();
    let mut problem = SwitchingProblem::new(*dev, i_write, opts.temperature_k, t_max, opts.seed);
    problem.dt_s = opts.dt_s;
    let set = run_trials(&problem, trials, opts.policy)?;
    let n = set.trials();

    let model_tag = if i_write.abs() > dev.i_c_a { Method::Analytic } else { Method::Activation };
    let model = |t: f64| analytic_wer(dev, i_write, t, opts.model, &opts.activation);

    let mut points = Vec::with_capacity(grid.len() + 1);
    let mut scale = 1.0;
    let mut ci_scale = (1.0, 1.0);
    for &t in &grid {
        let k = set.errors_at(t);
        if k >= opts.min_errors {
            let wer = k as f64 / n as f64;
            let (lo, hi) = wilson_interval(k, n, Z95);
            let m = model(t);
            if m > 0.0 {
                scale = wer / m;
                ci_scale = (lo / wer, hi / wer);
            }
            points.push(WerPoint { t_p_s: t, wer, method: Method::MonteCarlo, trials: n, ci_low: lo, ci_high: hi });
        } else {
            let wer = (scale * model(t)).min(1.0);
            points.push(model_point(t, wer, model_tag, ci_scale));
        }
    }
    let last = points.last().unwrap().wer;
    if last > target_floor {
        let t_floor = analytic_pulse(dev, i_write, (target_floor / scale).min(0.5), opts.model, &opts.activation);
        if t_floor > t_max && t_floor.is_finite() {
            let wer = (scale * model(t_floor)).min(last);
            points.push(model_point(t_floor, wer, model_tag, ci_scale));
        }
    }
    let mc = points.iter().filter(|p| p.method == Method::MonteCarlo).count();
    let method = if mc == points.len() {
        Method::MonteCarlo
    } else if mc == 0 {
        model_tag
    } else {
        Method::Hybrid
    };
    Ok((WerCurve { i_write_a: i_write, points, method, trials: n }, set))
}

fn model_point(t: f64, wer: f64, method: Method, ci_scale: (f64, f64)) -> WerPoint {
    WerPoint {
        t_p_s: t,
        wer,
        method,
        trials: 0,
        ci_low: wer * ci_scale.0,
        ci_high: (wer * ci_scale.1).min(1.0),
    }
}

impl WerCurve {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Validation(format!("csv: {e}"));
        w.write_record(["t_p", "wer", "method", "trials", "ci_low", "ci_high"]).map_err(err)?;
        for p in &self.points {
            w.write_record([
                format!("{:e}", p.t_p_s),
                format!("{:e}", p.wer),
                p.method.label().to_string(),
                p.trials.to_string(),
                format!("{:e}", p.ci_low),
                format!("{:e}", p.ci_high),
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Validation(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Validation(e.to_string()))
    }

    /// Pulse width where the curve crosses `wer`, interpolating in log WER.
    pub fn pulse_at(&self, wer: f64) -> Option<f64> {
        let pts = &self.points;
        if pts.first()?.wer <= wer {
            return Some(pts[0].t_p_s);
        }
        for w in pts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.wer > wer && b.wer <= wer {
                if b.wer <= 0.0 {
                    return Some(b.t_p_s);
                }
                let f = (a.wer.ln() - wer.ln()) / (a.wer.ln() - b.wer.ln());
                return Some(a.t_p_s + f * (b.t_p_s - a.t_p_s));
            }
        }
        None
    }
}

/// One row per trial: index, switched flag, switching time.
pub fn samples_csv(set: &TrialSet) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Validation(format!("csv: {e}"));
    w.write_record(["trial", "switched", "t_switch"]).map_err(err)?;
    for (k, s) in set.samples.iter().enumerate() {
        w.write_record([
            k.to_string(),
            s.switched.to_string(),
            s.t_switch_s.map(|t| format!("{t:e}")).unwrap_or_default(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Validation(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Validation(e.to_string()))
}
