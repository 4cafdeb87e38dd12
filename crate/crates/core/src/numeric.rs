//! Small numerical kernels: bracketing root finder, dense linear solve and a
//! bounded Levenberg-Marquardt least-squares fit.

use crate::error::{Error, Result};

/// Root of `f` on `[lo, hi]` by bisection. Needs a sign change.
pub fn bisect<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::Solver {
            message: format!("root not bracketed on [{lo:e}, {hi:e}]: f = ({flo:e}, {fhi:e})"),
            trace: vec![lo, flo, hi, fhi],
        });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= x_tol {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection in `ln x` for positive roots spanning decades.
pub fn bisect_log<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64> {
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Domain(format!("log bracket [{lo:e}, {hi:e}] invalid")));
    }
    bisect(|u| f(u.exp()), lo.ln(), hi.ln(), rel_tol, max_iter).map(f64::exp)
}

/// Solve the dense system `a x = b` with partial pivoting. `a` is row-major n×n.
pub fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    if a.len() != n * n {
        return Err(Error::Numerical(format!("matrix size {} for {n} unknowns", a.len())));
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if a[piv * n + col].abs() < 1e-300 {
            return Err(Error::Numerical("singular matrix".into()));
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        for row in col + 1..n {
            let m = a[row * n + col] / a[col * n + col];
            if m == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= m * a[col * n + k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row * n + k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row * n + row];
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy)]
pub struct LmOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub fd_step: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        Self {
            max_iter: 500,
            tol: 1e-15,
            fd_step: 1e-7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LmFit {
    pub x: Vec<f64>,
    /// Half the squared residual norm.
    pub cost: f64,
    pub iterations: usize,
}

fn cost_of(r: &[f64]) -> f64 {
    0.5 * r.iter().map(|v| v * v).sum::<f64>()
}

/// Box-constrained Levenberg-Marquardt with a forward-difference Jacobian.
/// Steps are projected onto `[lower, upper]`.
pub fn levenberg_marquardt<F>(
    residual: F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: LmOptions,
) -> Result<LmFit>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = x0.len();
    let clamp = |x: &mut [f64]| {
        for i in 0..n {
            x[i] = x[i].clamp(lower[i], upper[i]);
        }
    };
    let mut x = x0.to_vec();
    clamp(&mut x);
    let mut r = residual(&x);
    if r.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite residual at start point".into()));
    }
    let m = r.len();
    let mut cost = cost_of(&r);
    let mut lambda = 1e-3;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let mut jac = vec![0.0; m * n];
        for j in 0..n {
            let h = opts.fd_step * x[j].abs().max(1.0);
            let mut xp = x.clone();
            // step inward if the forward point would leave the box
            let h = if xp[j] + h > upper[j] { -h } else { h };
            xp[j] += h;
            let rp = residual(&xp);
            for i in 0..m {
                jac[i * n + j] = (rp[i] - r[i]) / h;
            }
        }
        let mut jtj = vec![0.0; n * n];
        let mut jtr = vec![0.0; n];
        for i in 0..m {
            for a in 0..n {
                jtr[a] += jac[i * n + a] * r[i];
                for b in 0..n {
                    jtj[a * n + b] += jac[i * n + a] * jac[i * n + b];
                }
            }
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut aug = jtj.clone();
            for d in 0..n {
                aug[d * n + d] += lambda * jtj[d * n + d].max(1e-12);
            }
            let rhs: Vec<f64> = jtr.iter().map(|v| -v).collect();
            let Ok(step) = solve_dense(aug, rhs) else {
                lambda *= 10.0;
                continue;
            };
            let mut xn: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
            clamp(&mut xn);
            let rn = residual(&xn);
            let cn = cost_of(&rn);
            if cn.is_finite() && cn < cost {
                let gain = cost - cn;
                x = xn;
                r = rn;
                cost = cn;
                lambda = (lambda * 0.3).max(1e-12);
                improved = true;
                if gain <= opts.tol * cost.max(opts.tol) {
                    return Ok(LmFit { x, cost, iterations });
                }
                break;
            }
            lambda *= 10.0;
        }
        if !improved || cost < 1e-30 {
            break;
        }
    }
    Ok(LmFit { x, cost, iterations })
}
