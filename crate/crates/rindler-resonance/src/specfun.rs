//! Modified Bessel functions of imaginary order K_{i nu}(x) and the
//! cylinder function J0, to the accuracy needed by the mode-sum oracle.
//!
//! K_{i nu} is defined by the real integral
//!     K_{i nu}(x) = int_0^inf e^{-x cosh t} cos(nu t) dt,
//! which is also how the low-order branch evaluates it. For large nu the
//! integral suffers catastrophic cancellation (the value scales like
//! e^{-pi nu / 2}), so two alternative evaluations take over: the ascending
//! series through I_{i nu}, and a contour-rotated phase integral that is
//! manifestly O(1) in the scaled function
//!     khat(nu, x) = e^{pi nu / 2} K_{i nu}(x).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breakpoints, QuadratureSpec};

/// Order parameter nu of K_{i nu}; non-negative (the kernel is even in nu).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    nu: f64,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::domain(
                "BesselOrder",
                format!("order must be finite and non-negative, got {nu}"),
            ));
        }
        Ok(BesselOrder { nu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

/// K_{i nu}(x) for x > 0.
pub fn bessel_k_imag(order: BesselOrder, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    let khat = bessel_k_imag_scaled(order, x, spec)?;
    Ok(khat * (-std::f64::consts::FRAC_PI_2 * order.nu).exp())
}

/// Scaled function e^{pi nu / 2} K_{i nu}(x); O(1) across the oscillatory
/// region and the quantity the mode sums actually consume.
pub fn bessel_k_imag_scaled(order: BesselOrder, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_k_imag",
            format!("argument must be positive and finite, got {x}"),
        ));
    }
    let nu = order.nu;
    if nu < 0.5 {
        return khat_direct(nu, x, spec);
    }
    if x <= (nu / 2.0).max(2.0) {
        return khat_series(nu, x);
    }
    if nu <= 8.0 {
        return khat_direct(nu, x, spec);
    }
    if x > nu {
        // monotone-decay region; safe for the direct integral once the
        // uniform exponent is large enough that cancellation is irrelevant
        let zeta = (x * x - nu * nu).sqrt() - nu * (nu / x).acos();
        if zeta > 20.0 {
            return khat_direct(nu, x, spec);
        }
    }
    khat_rotated(nu, x, spec)
}

/// Direct evaluation of the defining integral, scaled by e^{pi nu/2 - x}
/// inside the exponent so the result never overflows.
fn khat_direct(nu: f64, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    // e^{-x(cosh t - 1)} < 1e-20 cutoff, shifted by the prefactor exponent
    let budget = 46.0 + std::f64::consts::FRAC_PI_2 * nu;
    let t_star = (1.0 + budget / x).acosh();
    let prefactor_log = std::f64::consts::FRAC_PI_2 * nu - x;
    let f = |t: f64| ((-x * (t.cosh() - 1.0)) + prefactor_log).exp() * (nu * t).cos();
    // keep the phase change per seed panel below pi/4
    let max_panel = if nu > 0.0 {
        std::f64::consts::FRAC_PI_4 / nu
    } else {
        f64::INFINITY
    };
    let n_panels = ((t_star / max_panel).ceil() as usize).clamp(1, 4096);
    let cuts: Vec<f64> = (1..n_panels)
        .map(|i| t_star * i as f64 / n_panels as f64)
        .collect();
    let (v, _) = integrate_with_breakpoints(f, 0.0, t_star, &cuts, spec, "bessel_k_imag")?;
    Ok(v)
}

/// Ascending-series evaluation through I_{i nu}:
///     K_{i nu}(x) = -pi Im I_{i nu}(x) / sinh(pi nu).
fn khat_series(nu: f64, x: f64) -> Result<f64> {
    let q = 0.25 * x * x;
    // sum_k c_k with c_0 = 1, c_k = c_{k-1} q / (k (k + i nu))
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..500 {
        term *= q / (k as f64 * (Complex64::new(k as f64, nu)));
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    let phase = Complex64::new(0.0, nu * (0.5 * x).ln()).exp();
    let i_inu = phase / complex_gamma(Complex64::new(1.0, nu)) * sum;
    // e^{pi nu/2} * (-pi / sinh(pi nu)) = -2 pi e^{-pi nu/2} / (1 - e^{-2 pi nu})
    let damp = (-std::f64::consts::PI * nu).exp();
    let khat = -2.0 * std::f64::consts::PI * damp.sqrt() * i_inu.im / (1.0 - damp * damp);
    if !khat.is_finite() {
        return Err(Error::NonFinite {
            context: "bessel_k_imag",
        });
    }
    Ok(khat)
}

/// Contour-rotated representation
///     khat(nu, x) = int_0^inf cos(x sinh u - nu u) du,
/// split into a head through the stationary-phase region plus an
/// alternating sum over half-period segments of the phase.
fn khat_rotated(nu: f64, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    let psi = |u: f64| x * u.sinh() - nu * u;
    let dpsi = |u: f64| x * u.cosh() - nu;
    let delta0 = 10.0;
    // beyond u0 the phase derivative is at least delta0
    let u0 = if x >= nu + delta0 {
        0.0
    } else {
        ((nu + delta0) / x).acosh()
    };
    let mut value = 0.0;
    if u0 > 0.0 {
        // head contains the turning point; seed finely enough to resolve
        // the slow oscillations there
        let depth = if x < nu {
            let us = (nu / x).acosh();
            psi(us).abs()
        } else {
            0.0
        };
        let n = ((depth / std::f64::consts::PI).ceil() as usize + 6).min(512);
        let cuts: Vec<f64> = (1..n).map(|i| u0 * i as f64 / n as f64).collect();
        let (head, _) =
            integrate_with_breakpoints(|u| psi(u).cos(), 0.0, u0, &cuts, spec, "bessel_k_imag")?;
        value += head;
    }
    // alternating half-period segments: boundaries solve psi(u) = psi0 + k pi
    let seg_spec = spec.with_tols(spec.abs_tol * 0.1, spec.rel_tol);
    let psi0 = psi(u0);
    let mut lo = u0;
    let mut terms: Vec<f64> = Vec::new();
    let mut prev_est = f64::NAN;
    let mut stable = 0usize;
    for k in 1..=64usize {
        let target = psi0 + k as f64 * std::f64::consts::PI;
        // Newton from the linearized guess; psi is convex and monotone here
        let mut hi = lo + (target - psi(lo)) / dpsi(lo);
        for _ in 0..40 {
            let step = (psi(hi) - target) / dpsi(hi);
            hi -= step;
            if step.abs() < 1e-14 * hi.max(1.0) {
                break;
            }
        }
        let (seg, _) = crate::quadrature::integrate_adaptive(|u| psi(u).cos(), lo, hi, &seg_spec)?;
        terms.push(seg);
        lo = hi;
        if terms.len() >= 4 {
            let est = crate::quadrature::accelerate_alternating(&terms);
            if prev_est.is_finite() {
                let d = (est - prev_est).abs();
                if d <= spec.abs_tol.max(spec.rel_tol * (value + est).abs()) {
                    stable += 1;
                    if stable >= 2 {
                        return Ok(value + est);
                    }
                } else {
                    stable = 0;
                }
            }
            prev_est = est;
        }
    }
    Err(Error::QuadratureFailure {
        context: "bessel_k_imag",
        partial: value + prev_est,
        achieved: f64::NAN,
    })
}

// Lanczos g = 7, 9-term coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma(z) for Re z > 0.5 (all that the series branch needs).
fn complex_gamma(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powc(zm1 + 0.5) * (-t).exp() * acc
}

/// J0(x) for x >= 0: ascending series for small argument, Hankel asymptotic
/// expansion beyond the switchover.
pub fn bessel_j0(x: f64, _spec: &QuadratureSpec) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_j0",
            format!("argument must be non-negative and finite, got {x}"),
        ));
    }
    if x <= 14.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..80 {
            term *= -q / ((k * k) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
        }
        return Ok(sum);
    }
    // Hankel expansion: J0 = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
    let mut t = 1.0f64;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut prev = f64::INFINITY;
    for m in 0..20 {
        if m > 0 {
            let mm = m as f64;
            t *= -((2.0 * mm - 1.0) * (2.0 * mm - 1.0)) / (8.0 * mm * x);
        }
        let mag = t.abs();
        if mag > prev {
            break; // asymptotic series started diverging
        }
        prev = mag;
        match m % 4 {
            0 => p += t,
            1 => q += t,
            2 => p -= t,
            _ => q -= t,
        }
    }
    let chi = x - std::f64::consts::FRAC_PI_4;
    Ok((2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin()))
}
