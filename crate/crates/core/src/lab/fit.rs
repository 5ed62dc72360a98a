//! Levenberg–Marquardt least squares for a single Lorentzian on a flat baseline.
//!
//! Model: `v(t) = b + A / (1 + ((t - c)/γ)²)`, parameters `[b, A, c, γ]`,
//! FWHM = 2γ.

const N: usize = 4;
const MAX_ITERATIONS: usize = 500;
const MAX_DAMPING: f64 = 1e14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianFit {
    pub baseline: f64,
    pub amplitude: f64,
    pub center: f64,
    /// Half width at half maximum, γ.
    pub half_width: f64,
    /// 1σ parameter errors from the covariance s²(JᵀJ)⁻¹, same order as the parameters.
    pub std_errors: [f64; N],
    pub chi2: f64,
    pub iterations: usize,
}

impl LorentzianFit {
    pub fn fwhm(&self) -> f64 {
        2.0 * self.half_width
    }

    pub fn fwhm_std_error(&self) -> f64 {
        2.0 * self.std_errors[3]
    }
}

#[inline]
fn model_and_jacobian(p: &[f64; N], t: f64) -> (f64, [f64; N]) {
    let [b, a, c, g] = *p;
    let u = (t - c) / g;
    let q = 1.0 / (1.0 + u * u);
    let f = b + a * q;
    let dq = 2.0 * a * u * q * q / g;
    (f, [1.0, q, dq, dq * u])
}

fn chi2(p: &[f64; N], data: &[(f64, f64)]) -> f64 {
    data.iter()
        .map(|&(t, v)| {
            let r = v - model_and_jacobian(p, t).0;
            r * r
        })
        .sum()
}

fn normal_equations(p: &[f64; N], data: &[(f64, f64)]) -> ([[f64; N]; N], [f64; N]) {
    let mut jtj = [[0.0; N]; N];
    let mut jtr = [0.0; N];
    for &(t, v) in data {
        let (f, j) = model_and_jacobian(p, t);
        let r = v - f;
        for a in 0..N {
            jtr[a] += j[a] * r;
            for b in 0..=a {
                jtj[a][b] += j[a] * j[b];
            }
        }
    }
    for a in 0..N {
        for b in 0..a {
            jtj[b][a] = jtj[a][b];
        }
    }
    (jtj, jtr)
}

/// Gaussian elimination with partial pivoting. `None` if singular.
fn solve(mut m: [[f64; N]; N], mut rhs: [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col] == 0.0 || !m[pivot][col].is_finite() {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..N {
            let f = m[row][col] / m[col][col];
            for k in col..N {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let s: f64 = (row + 1..N).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - s) / m[row][row];
    }
    Some(x)
}

fn inverse_diagonal(m: [[f64; N]; N]) -> Option<[f64; N]> {
    let mut diag = [0.0; N];
    for (i, d) in diag.iter_mut().enumerate() {
        let mut e = [0.0; N];
        e[i] = 1.0;
        *d = solve(m, e)?[i];
    }
    Some(diag)
}

/// Fits `data` starting from `[b, A, c, γ]`. Errors carry a reason string.
pub fn fit_lorentzian(data: &[(f64, f64)], initial: [f64; N]) -> Result<LorentzianFit, String> {
    if data.len() <= N + 1 {
        return Err(format!("only {} samples in the fit window", data.len()));
    }
    let (t_lo, t_hi) = (data[0].0, data[data.len() - 1].0);
    let window = t_hi - t_lo;
    let mut p = initial;
    let mut cost = chi2(&p, data);
    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let (jtj, jtr) = normal_equations(&p, data);
        let mut damped = jtj;
        for (i, row) in damped.iter_mut().enumerate() {
            row[i] += lambda * jtj[i][i].max(f64::MIN_POSITIVE);
        }
        let Some(step) = solve(damped, jtr) else {
            lambda *= 10.0;
            if lambda > MAX_DAMPING {
                break;
            }
            continue;
        };
        let mut trial = p;
        for i in 0..N {
            trial[i] += step[i];
        }
        let trial_cost = if trial[3] > 0.0 {
            chi2(&trial, data)
        } else {
            f64::INFINITY
        };
        if trial_cost <= cost {
            let small = (0..N).all(|i| step[i].abs() <= 1e-10 * (p[i].abs() + 1e-10 * window));
            let flat = cost - trial_cost <= 1e-12 * cost;
            p = trial;
            cost = trial_cost;
            let gauss_newton = lambda <= 1e-3;
            lambda = (lambda / 10.0).max(1e-12);
            if small || (flat && gauss_newton) {
                converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if lambda > MAX_DAMPING {
                // No downhill step exists at working precision.
                converged = true;
                break;
            }
        }
    }

    if !converged {
        return Err(format!("no convergence after {MAX_ITERATIONS} iterations"));
    }
    if !p.iter().all(|v| v.is_finite()) {
        return Err("non-finite parameters".into());
    }
    if !(p[3] > 0.0) || p[3] > window {
        return Err(format!("half width {} outside (0, {window}]", p[3]));
    }
    if p[2] < t_lo || p[2] > t_hi {
        return Err(format!("centre {} left the fit window", p[2]));
    }
    if !(p[1] > 0.0) {
        return Err(format!("amplitude {} is not positive", p[1]));
    }

    let dof = (data.len() - N) as f64;
    let s2 = cost / dof;
    let (jtj, _) = normal_equations(&p, data);
    let std_errors = inverse_diagonal(jtj)
        .map(|d| d.map(|v| (s2 * v.max(0.0)).sqrt()))
        .ok_or_else(|| "singular normal matrix at the optimum".to_string())?;

    Ok(LorentzianFit {
        baseline: p[0],
        amplitude: p[1],
        center: p[2],
        half_width: p[3],
        std_errors,
        chi2: cost,
        iterations,
    })
}
