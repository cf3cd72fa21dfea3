//! Weighted nonlinear least squares for `C(x) = c0 (1 + V cos(omega (x - x0)))`.

use num_complex::Complex;

use super::visibility::visibility;
use crate::error::{Error, Result};
use crate::events::CountRecord;
use crate::linalg::{cholesky_solve, spd_inverse};
use crate::num::Scalar;

const PARAMS: usize = 4;
const MAX_ITERATIONS: usize = 200;
const STEP_TOLERANCE: f64 = 1e-10;

/// Fitted fringe parameters with 1-sigma uncertainties from the weighted
/// covariance at the optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult<F> {
    pub c0: F,
    pub visibility: F,
    pub omega: F,
    pub x0: F,
    pub sigma_c0: F,
    pub sigma_visibility: F,
    pub sigma_omega: F,
    pub sigma_x0: F,
    pub chi2_reduced: F,
    pub points: usize,
    pub iterations: usize,
}

impl<F: Scalar> FitResult<F> {
    pub fn model(&self, x: F) -> F {
        fringe(self.c0, self.visibility, self.omega, self.x0, x)
    }

    /// Field names and values in a fixed order, for text and JSON output.
    pub fn fields(&self) -> [(&'static str, f64); 11] {
        [
            ("c0", self.c0.as_f64()),
            ("V", self.visibility.as_f64()),
            ("omega", self.omega.as_f64()),
            ("x0", self.x0.as_f64()),
            ("sigma_c0", self.sigma_c0.as_f64()),
            ("sigma_V", self.sigma_visibility.as_f64()),
            ("sigma_omega", self.sigma_omega.as_f64()),
            ("sigma_x0", self.sigma_x0.as_f64()),
            ("chi2_reduced", self.chi2_reduced.as_f64()),
            ("points", self.points as f64),
            ("iterations", self.iterations as f64),
        ]
    }
}

fn fringe<F: Scalar>(c0: F, v: F, omega: F, x0: F, x: F) -> F {
    c0 * (F::one() + v * (omega * (x - x0)).cos())
}

/// Natural-parameter Jacobian row `d C / d (c0, V, omega, x0)`.
fn jacobian<F: Scalar>(c0: F, v: F, omega: F, x0: F, x: F) -> [F; PARAMS] {
    let theta = omega * (x - x0);
    let (s, c) = theta.sin_cos();
    [
        F::one() + v * c,
        c0 * c,
        -c0 * v * s * (x - x0),
        c0 * v * omega * s,
    ]
}

/// Internal parameters: `[c0, u, omega, x0]` with `V = sin(u)^2`, which
/// keeps every iterate inside `[0, 1]`.
#[derive(Clone, Copy)]
struct Internal<F>([F; PARAMS]);

impl<F: Scalar> Internal<F> {
    fn from_natural(c0: F, v: F, omega: F, x0: F) -> Self {
        Internal([c0, v.max(F::zero()).min(F::one()).sqrt().asin(), omega, x0])
    }

    fn visibility(&self) -> F {
        let s = self.0[1].sin();
        s * s
    }

    fn natural(&self) -> [F; PARAMS] {
        [self.0[0], self.visibility(), self.0[2], self.0[3]]
    }
}

struct Data<F> {
    x: Vec<F>,
    y: Vec<F>,
    /// Accidental estimate already subtracted from `y` (zero for raw data).
    accidentals: Vec<F>,
    /// Relative variance of the accidental estimate.
    accidental_rel_var: Vec<F>,
    x_sigma: F,
}

impl<F: Scalar> Data<F> {
    /// Effective variance of each point given the expected counts `mu`:
    /// Poisson variance of the raw counts, the accidental-estimate variance,
    /// and the piezo voltage error propagated through the local slope.
    fn variances(&self, mu: &[F], p: &[F; PARAMS]) -> Vec<F> {
        let [c0, v, omega, x0] = *p;
        (0..self.x.len())
            .map(|i| {
                let poisson = (mu[i] + self.accidentals[i]).max(F::one());
                let acc = self.accidentals[i];
                let slope = c0 * v * omega * (omega * (self.x[i] - x0)).sin();
                let piezo = slope * self.x_sigma;
                poisson + acc * acc * self.accidental_rel_var[i] + piezo * piezo
            })
            .collect()
    }

    fn chi2(&self, p: &[F; PARAMS], var: &[F]) -> F {
        let [c0, v, omega, x0] = *p;
        (0..self.x.len()).fold(F::zero(), |acc, i| {
            let r = self.y[i] - fringe(c0, v, omega, x0, self.x[i]);
            acc + r * r / var[i]
        })
    }
}

fn initial_guess<F: Scalar>(x: &[F], y: &[F]) -> [F; PARAMS] {
    let n = F::from_usize(x.len()).unwrap();
    let mean = y.iter().fold(F::zero(), |a, &b| a + b) / n;

    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap());
    let (x_min, x_max) = (x[order[0]], x[order[x.len() - 1]]);
    let span = x_max - x_min;
    let min_step = order
        .windows(2)
        .map(|w| x[w[1]] - x[w[0]])
        .filter(|d| *d > F::zero())
        .fold(span, F::min);

    // Periodogram of the mean-subtracted data on an oversampled grid from
    // half a fringe across the scan up to the sampling limit.
    let two_pi = F::TAU();
    let fundamental = two_pi / span;
    let omega_max = F::PI() / min_step;
    let d_omega = fundamental / F::lit(16.0);
    let mut best = (F::zero(), fundamental, Complex::new(F::zero(), F::zero()));
    let mut omega = fundamental / F::lit(2.0);
    while omega <= omega_max {
        let s = x.iter().zip(y).fold(Complex::new(F::zero(), F::zero()), |acc, (&xi, &yi)| {
            acc + Complex::from_polar(yi - mean, -omega * xi)
        });
        let power = s.norm_sqr();
        if power > best.0 {
            best = (power, omega, s);
        }
        omega = omega + d_omega;
    }
    let (_, omega, s) = best;
    let x0 = -s.arg() / omega;

    // Visibility from the extremes of the 3-point running mean.
    let sorted: Vec<F> = order.iter().map(|&i| y[i]).collect();
    let smoothed: Vec<F> = if sorted.len() >= 3 {
        sorted
            .windows(3)
            .map(|w| (w[0] + w[1] + w[2]) / F::lit(3.0))
            .collect()
    } else {
        sorted
    };
    let hi = smoothed.iter().copied().fold(F::neg_infinity(), F::max);
    let lo = smoothed.iter().copied().fold(F::infinity(), F::min).max(F::zero());
    let v = visibility(hi, lo)
        .unwrap_or(F::lit(0.5))
        .max(F::lit(0.02))
        .min(F::lit(0.98));
    [mean.max(F::epsilon()), v, omega, x0]
}

struct Solution<F> {
    params: Internal<F>,
    chi2: F,
    iterations: usize,
}

/// Levenberg-Marquardt with fixed per-point variances.
fn levenberg_marquardt<F: Scalar>(
    data: &Data<F>,
    start: Internal<F>,
    var: &[F],
) -> Result<Solution<F>> {
    let mut q = start;
    let mut chi2 = data.chi2(&q.natural(), var);
    let mut lambda = F::lit(1e-3);
    let tol = F::lit(STEP_TOLERANCE);
    let tiny = F::lit(1e-300).max(F::min_positive_value());

    for iteration in 1..=MAX_ITERATIONS {
        let [c0, v, omega, x0] = q.natural();
        let dv_du = (F::lit(2.0) * q.0[1]).sin();
        let mut a = [[F::zero(); PARAMS]; PARAMS];
        let mut g = [F::zero(); PARAMS];
        for i in 0..data.x.len() {
            let mut row = jacobian(c0, v, omega, x0, data.x[i]);
            row[1] = row[1] * dv_du;
            let w = F::one() / var[i];
            let r = data.y[i] - fringe(c0, v, omega, x0, data.x[i]);
            for j in 0..PARAMS {
                g[j] = g[j] + row[j] * w * r;
                for k in 0..PARAMS {
                    a[j][k] = a[j][k] + row[j] * w * row[k];
                }
            }
        }
        let diag_max = (0..PARAMS).map(|j| a[j][j]).fold(F::zero(), F::max);
        let floor = (diag_max * F::lit(1e-12)).max(tiny);

        loop {
            let mut damped = a;
            for j in 0..PARAMS {
                damped[j][j] = a[j][j] + lambda * a[j][j].max(floor);
            }
            let step = cholesky_solve(&damped, &g);
            let trial = step.map(|d| {
                let mut t = q;
                for j in 0..PARAMS {
                    t.0[j] = t.0[j] + d[j];
                }
                (t, d)
            });
            match trial {
                Some((t, d)) => {
                    let trial_chi2 = data.chi2(&t.natural(), var);
                    if trial_chi2.is_finite() && trial_chi2 <= chi2 {
                        let small = (0..PARAMS)
                            .all(|j| d[j].abs() <= tol * (t.0[j].abs() + tol));
                        let stalled = chi2 - trial_chi2 <= chi2 * F::epsilon();
                        q = t;
                        chi2 = trial_chi2;
                        lambda = (lambda / F::lit(10.0)).max(F::lit(1e-12));
                        if small || stalled {
                            return Ok(Solution { params: q, chi2, iterations: iteration });
                        }
                        break;
                    }
                }
                None => {}
            }
            lambda = lambda * F::lit(10.0);
            if lambda > F::lit(1e16) {
                // No descent direction left: at a minimum to working precision.
                return Ok(Solution { params: q, chi2, iterations: iteration });
            }
        }
    }
    let [c0, v, omega, x0] = q.natural();
    Err(Error::Convergence {
        iterations: MAX_ITERATIONS,
        last: [c0.as_f64(), v.as_f64(), omega.as_f64(), x0.as_f64()],
        chi2: chi2.as_f64(),
    })
}

/// Fits the fringe model to coincidences versus scan value.
///
/// Corrected coincidences are used when present. Point variances combine
/// Poisson statistics with `piezo_voltage_sigma` propagated through the
/// local slope of the model. The fit is run twice: first with variances
/// from the observed counts, then with variances from the first fit's
/// prediction.
pub fn fit_fringe<F: Scalar>(records: &[CountRecord<F>], piezo_voltage_sigma: F) -> Result<FitResult<F>> {
    let x: Vec<F> = records.iter().map(|r| r.scan_value).collect();
    let y: Vec<F> = records.iter().map(|r| r.coincidences()).collect();
    let accidentals = records.iter().map(|r| r.accidental_estimate()).collect();
    let accidental_rel_var = records.iter().map(|r| r.singles_relative_variance()).collect();
    fit_data(
        Data {
            x,
            y,
            accidentals,
            accidental_rel_var,
            x_sigma: piezo_voltage_sigma,
        },
    )
}

/// Fits bare `(x, counts)` samples with Poisson weights.
pub fn fit_counts<F: Scalar>(x: &[F], counts: &[F], x_sigma: F) -> Result<FitResult<F>> {
    if x.len() != counts.len() {
        return Err(Error::Argument(format!(
            "length mismatch: {} scan values, {} counts",
            x.len(),
            counts.len()
        )));
    }
    let n = x.len();
    fit_data(Data {
        x: x.to_vec(),
        y: counts.to_vec(),
        accidentals: vec![F::zero(); n],
        accidental_rel_var: vec![F::zero(); n],
        x_sigma,
    })
}

fn fit_data<F: Scalar>(data: Data<F>) -> Result<FitResult<F>> {
    let n = data.x.len();
    let need = PARAMS + 4;
    if n < need {
        return Err(Error::InsufficientData { got: n, need });
    }
    if data.x.iter().chain(&data.y).any(|v| !v.is_finite()) {
        return Err(Error::Argument("scan values and counts must be finite".into()));
    }
    if !(data.x_sigma >= F::zero()) {
        return Err(Error::Argument(format!(
            "piezo voltage sigma must be >= 0, got {}",
            data.x_sigma
        )));
    }
    let first = data.x[0];
    if data.x.iter().all(|&v| v == first) {
        return Err(Error::Argument("scan values must not all coincide".into()));
    }

    let [c0, v, omega, x0] = initial_guess(&data.x, &data.y);
    let start = Internal::from_natural(c0, v, omega, x0);

    let var = data.variances(&data.y, &start.natural());
    let first_pass = levenberg_marquardt(&data, start, &var)?;
    let p = first_pass.params.natural();
    let mu: Vec<F> = data
        .x
        .iter()
        .map(|&xi| fringe(p[0], p[1], p[2], p[3], xi))
        .collect();
    let var = data.variances(&mu, &p);
    let solution = levenberg_marquardt(&data, first_pass.params, &var)?;

    let [mut c0, v, mut omega, mut x0] = solution.params.natural();
    let mut info = [[F::zero(); PARAMS]; PARAMS];
    for i in 0..n {
        let row = jacobian(c0, v, omega, x0, data.x[i]);
        let w = F::one() / var[i];
        for j in 0..PARAMS {
            for k in 0..PARAMS {
                info[j][k] = info[j][k] + row[j] * w * row[k];
            }
        }
    }
    let sigma = match spd_inverse(&info) {
        Some(cov) => [0, 1, 2, 3].map(|j| cov[j][j].max(F::zero()).sqrt()),
        None => [F::infinity(); PARAMS],
    };

    // Canonical form: omega > 0, x0 within half a period of zero.
    if omega < F::zero() {
        omega = -omega;
        x0 = -x0;
    }
    if c0 < F::zero() {
        c0 = -c0;
    }
    let period = F::TAU() / omega;
    x0 = x0 - (x0 / period).round() * period;

    let dof = F::from_usize(n - PARAMS).unwrap();
    Ok(FitResult {
        c0,
        visibility: v,
        omega,
        x0,
        sigma_c0: sigma[0],
        sigma_visibility: sigma[1],
        sigma_omega: sigma[2],
        sigma_x0: sigma[3],
        chi2_reduced: solution.chi2 / dof,
        points: n,
        iterations: first_pass.iterations + solution.iterations,
    })
}
