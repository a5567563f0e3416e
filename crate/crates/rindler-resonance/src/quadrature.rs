//! Adaptive, principal-value and oscillatory quadrature, plus Richardson
//! extrapolation of regulator schedules.
//!
//! All integrators are driven by a [`QuadratureSpec`] carrying tolerances,
//! the subdivision budget, the regulator schedule used by the time-domain
//! oracles, and the half-width of the symmetric window used around
//! principal-value poles.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and regulator settings shared by every integrator and oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Strictly decreasing positive regulator values for the eps -> 0
    /// extrapolation performed by the time-domain oracles.
    pub regulator_schedule: Vec<f64>,
    /// Half-width of the symmetric window placed around a simple pole.
    pub pole_window: f64,
}

impl QuadratureSpec {
    pub fn new(
        abs_tol: f64,
        rel_tol: f64,
        max_subdivisions: usize,
        regulator_schedule: Vec<f64>,
        pole_window: f64,
    ) -> Result<Self> {
        let spec = QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
            regulator_schedule,
            pole_window,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::domain(
                "QuadratureSpec",
                "tolerances must be positive",
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain(
                "QuadratureSpec",
                "max_subdivisions must be positive",
            ));
        }
        if self.pole_window <= 0.0 {
            return Err(Error::domain(
                "QuadratureSpec",
                "pole_window must be positive",
            ));
        }
        let mut prev = f64::INFINITY;
        for &eps in &self.regulator_schedule {
            if !(eps > 0.0) || eps >= prev {
                return Err(Error::domain(
                    "QuadratureSpec",
                    "regulator_schedule must be strictly decreasing and positive",
                ));
            }
            prev = eps;
        }
        Ok(())
    }

    /// Tight tolerances for special-function evaluation.
    pub fn default_specfun() -> Self {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
            regulator_schedule: vec![0.1, 0.05, 0.025, 0.0125],
            pole_window: 0.25,
        }
    }

    /// Looser tolerances for the stacked oracle integrals.
    pub fn default_oracle() -> Self {
        QuadratureSpec {
            abs_tol: 1e-8,
            rel_tol: 1e-6,
            max_subdivisions: 6000,
            regulator_schedule: vec![0.1, 0.05, 0.025, 0.0125],
            pole_window: 0.25,
        }
    }

    pub(crate) fn with_tols(&self, abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureSpec {
            abs_tol,
            rel_tol,
            ..self.clone()
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::default_oracle()
    }
}

// 15-point Kronrod nodes and weights, 7-point Gauss weights embedded.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod 15 panel. Returns (value, error estimate, resabs).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    let mut err = ((resk - resg) * half).abs();
    let resasc = resasc * half.abs();
    let resabs = resabs * half.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (resk * half, err, resabs)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

fn adaptive_core<F: Fn(f64) -> f64>(
    f: &F,
    seeds: &[(f64, f64)],
    spec: &QuadratureSpec,
    context: &'static str,
) -> Result<(f64, f64)> {
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut err = 0.0;
    for &(a, b) in seeds {
        if a == b {
            continue;
        }
        let (v, e, _) = gk15(f, a, b);
        value += v;
        err += e;
        heap.push(Panel {
            a,
            b,
            value: v,
            err: e,
        });
    }
    let mut splits = seeds.len();
    while err > spec.abs_tol.max(spec.rel_tol * value.abs()) {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if splits >= spec.max_subdivisions {
            if !value.is_finite() {
                return Err(Error::NonFinite { context });
            }
            return Err(Error::QuadratureFailure {
                context,
                partial: value,
                achieved: err,
            });
        }
        splits += 1;
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splittable at machine precision
            continue;
        }
        let (v1, e1, _) = gk15(f, worst.a, mid);
        let (v2, e2, _) = gk15(f, mid, worst.b);
        value += v1 + v2 - worst.value;
        err += e1 + e2 - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }
    if !value.is_finite() {
        return Err(Error::NonFinite { context });
    }
    Ok((value, err.max(0.0)))
}

/// Adaptive Gauss-Kronrod integration of `f` over `(a, b)`; `b` may be
/// `f64::INFINITY`, in which case the tail is mapped onto a finite interval.
///
/// Returns the value together with the internal error estimate.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    if b.is_infinite() {
        // x = a + t/(1-t) maps (0,1) -> (a, inf)
        let g = |t: f64| {
            let om = 1.0 - t;
            f(a + t / om) / (om * om)
        };
        let seeds = [(0.0, 0.5), (0.5, 0.875), (0.875, 1.0)];
        return adaptive_core(&g, &seeds, spec, "integrate_adaptive");
    }
    if a == b {
        return Ok((0.0, 0.0));
    }
    adaptive_core(&f, &[(a, b)], spec, "integrate_adaptive")
}

/// Adaptive integration over a finite interval pre-split at `points`
/// (unsorted, duplicates and out-of-range entries are ignored).
pub(crate) fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: &[f64],
    spec: &QuadratureSpec,
    context: &'static str,
) -> Result<(f64, f64)> {
    let mut cuts: Vec<f64> = points.iter().copied().filter(|&p| p > a && p < b).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let seeds: Vec<(f64, f64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    adaptive_core(&f, &seeds, spec, context)
}

/// Cauchy principal value of `f` over `(a, b)` with a simple pole at `pole`.
///
/// The window `[pole - w, pole + w]` is handled by symmetric pairing,
/// `f(pole+u) + f(pole-u)`, which cancels the 1/u part analytically; the
/// rest is ordinary adaptive quadrature.
pub fn principal_value_integrate<F: Fn(f64) -> f64>(
    f: F,
    pole: f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(pole > a && pole < b) {
        return Err(Error::domain(
            "principal_value_integrate",
            format!("pole {pole} outside ({a}, {b})"),
        ));
    }
    let w = spec.pole_window.min(0.5 * (pole - a).min(b - pole));
    let (left, _) = integrate_adaptive(&f, a, pole - w, spec)?;
    let (right, _) = integrate_adaptive(&f, pole + w, b, spec)?;
    let paired = |u: f64| f(pole + u) + f(pole - u);
    let (window, _) = integrate_adaptive(paired, 0.0, w, spec)?;
    Ok(left + right + window)
}

/// Sums an oscillatory tail `int_start^inf f` by integrating half-period
/// segments and accelerating the alternating partial sums by repeated
/// averaging (Euler transformation).
pub fn integrate_oscillatory_tail<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    half_period: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    assert!(half_period > 0.0);
    let seg_spec = spec.with_tols(spec.abs_tol * 0.1, spec.rel_tol);
    let max_segments = 64usize;
    let mut terms: Vec<f64> = Vec::new();
    let mut prev_est = f64::NAN;
    let mut stable = 0usize;
    for k in 0..max_segments {
        let lo = start + k as f64 * half_period;
        let hi = lo + half_period;
        let (v, _) = integrate_adaptive(&f, lo, hi, &seg_spec)?;
        terms.push(v);
        if terms.len() < 4 {
            continue;
        }
        let est = accelerate_alternating(&terms);
        if prev_est.is_finite() {
            let d = (est - prev_est).abs();
            if d <= spec.abs_tol.max(spec.rel_tol * est.abs()) {
                stable += 1;
                if stable >= 2 {
                    return Ok((est, d));
                }
            } else {
                stable = 0;
            }
        }
        prev_est = est;
    }
    let est = accelerate_alternating(&terms);
    let d = (est - prev_est).abs();
    if d <= 10.0 * spec.abs_tol.max(spec.rel_tol * est.abs()) {
        Ok((est, d))
    } else {
        Err(Error::QuadratureFailure {
            context: "integrate_oscillatory_tail",
            partial: est,
            achieved: d,
        })
    }
}

/// Wynn epsilon acceleration of the partial sums of an (eventually)
/// alternating series; returns the deepest even-column estimate.
pub(crate) fn accelerate_alternating(terms: &[f64]) -> f64 {
    let n = terms.len();
    let mut cur: Vec<f64> = Vec::with_capacity(n);
    let mut acc = 0.0;
    for &t in terms {
        acc += t;
        cur.push(acc);
    }
    let mut prev = vec![0.0f64; n + 1]; // epsilon_{-1} column
    let mut best = *cur.last().unwrap();
    let mut col = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 {
                // converged exactly; the shared value is the limit
                return cur[i];
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        prev = std::mem::take(&mut cur);
        cur = next;
        col += 1;
        if col % 2 == 0 {
            best = *cur.last().unwrap();
        }
    }
    best
}

/// Result of a regulator-limit extrapolation.
#[derive(Debug, Clone)]
pub struct Extrapolated {
    pub value: f64,
    pub error_estimate: f64,
    /// Successive corrections of the Neville diagonal; must decrease.
    pub residuals: Vec<f64>,
}

/// Richardson (polynomial Neville) extrapolation of `(eps, value)` samples
/// to eps -> 0. Fails if the diagonal corrections grow, which signals that
/// the values do not follow a polynomial in eps.
pub fn richardson_extrapolate(
    points: &[(f64, f64)],
    context: &'static str,
) -> Result<Extrapolated> {
    assert!(points.len() >= 2, "need at least two regulator samples");
    let n = points.len();
    let eps: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut col: Vec<f64> = points.iter().map(|p| p.1).collect();
    let mut diag = vec![col[0]];
    for k in 1..n {
        let mut next = Vec::with_capacity(n - k);
        for i in 0..n - k {
            let x0 = eps[i];
            let xk = eps[i + k];
            next.push((xk * col[i] - x0 * col[i + 1]) / (xk - x0));
        }
        col = next;
        diag.push(col[0]);
    }
    let residuals: Vec<f64> = diag.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let value = *diag.last().unwrap();
    let scale = value.abs().max(f64::MIN_POSITIVE);
    // Converged-to-noise residuals are allowed to fluctuate.
    let noise = 1e-11 * scale;
    if residuals.len() >= 2 {
        let first = residuals[0];
        let last = *residuals.last().unwrap();
        if last > first.max(noise) {
            return Err(Error::ExtrapolationDiverged { context, residuals });
        }
    }
    let error_estimate = residuals.last().copied().unwrap_or(0.0);
    Ok(Extrapolated {
        value,
        error_estimate,
        residuals,
    })
}
