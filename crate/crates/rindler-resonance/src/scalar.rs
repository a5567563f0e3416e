//! Scalar-field linear susceptibility between the two worldlines, computed
//! three independent ways: the closed spectral form, a Rindler mode sum,
//! and a frequency extraction from the inertial-frame Wightman function.
//! Their agreement is the frame-equivalence statement at the two-point
//! level.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{GeometryScalars, TrajectoryEvent};
use crate::quadrature::{integrate_with_breakpoints, richardson_extrapolate, QuadratureSpec};
use crate::specfun::{bessel_j0, bessel_k_imag_scaled, BesselOrder};

const PI: f64 = std::f64::consts::PI;

/// Rindler mode labels (omega, k_y, k_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarModeIndex {
    pub omega: f64,
    pub k_y: f64,
    pub k_z: f64,
    pub k_perp: f64,
}

impl ScalarModeIndex {
    pub fn new(omega: f64, k_y: f64, k_z: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::domain(
                "ScalarModeIndex",
                format!("omega must be positive, got {omega}"),
            ));
        }
        if !k_y.is_finite() || !k_z.is_finite() {
            return Err(Error::domain(
                "ScalarModeIndex",
                "transverse momenta must be finite",
            ));
        }
        Ok(ScalarModeIndex {
            omega,
            k_y,
            k_z,
            k_perp: k_y.hypot(k_z),
        })
    }
}

/// Positive-frequency Rindler mode evaluated at an event:
///     (1/(2 pi^2 sqrt(a))) sqrt(sinh(pi w/a)) K_{i w/a}(k_perp e^{a xi}/a)
///     e^{i(k_y y + k_z z)} e^{-i w tau}.
///
/// The sqrt(sinh) K product is formed from the scaled Bessel function so it
/// stays finite at large w/a.
pub fn scalar_mode_function(
    mode: ScalarModeIndex,
    event: &TrajectoryEvent,
    a: f64,
) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::domain(
            "scalar_mode_function",
            format!("acceleration must be positive, got {a}"),
        ));
    }
    if mode.k_perp == 0.0 {
        return Err(Error::domain(
            "scalar_mode_function",
            "k_perp = 0 is an excluded-measure point (K diverges)",
        ));
    }
    let spec = QuadratureSpec::default_specfun();
    let nu = mode.omega / a;
    let arg = mode.k_perp * (a * event.xi).exp() / a;
    let khat = bessel_k_imag_scaled(BesselOrder::new(nu)?, arg, &spec)?;
    // sqrt(sinh(pi nu)) K_{i nu} = khat * sqrt((1 - e^{-2 pi nu})/2)
    let damp = (0.5 * (1.0 - (-2.0 * PI * nu).exp())).sqrt();
    let radial = khat * damp / (2.0 * PI * PI * a.sqrt());
    let phase = Complex64::new(
        0.0,
        mode.k_y * event.y + mode.k_z * event.z - mode.omega * event.tau,
    )
    .exp();
    Ok(radial * phase)
}

/// Closed spectral coefficient of the susceptibility: the factor
/// multiplying (e^{i w dtau} - e^{-i w dtau}), namely
///     -sin(w s) / (8 pi^2 z sqrt(N)).
pub fn chi_scalar_spectral_closed(omega: f64, geo: &GeometryScalars) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(
            "chi_scalar_spectral_closed",
            format!("omega must be positive, got {omega}"),
        ));
    }
    Ok(chi_scalar_closed_signed(omega, geo))
}

/// Same coefficient, tolerating a signed separation; even in the sign
/// because both sin(w s) and z flip together. Used by the label-exchange
/// term of the shift oracle.
pub(crate) fn chi_scalar_closed_signed(omega: f64, geo: &GeometryScalars) -> f64 {
    -(omega * geo.s).sin() / (8.0 * PI * PI * geo.z * geo.n.sqrt())
}

/// Rindler mode-sum evaluation of the same coefficient: the transverse
/// momentum integral reduced to polar form,
///     -(a/(8 pi^3)) (1 - e^{-2 pi nu}) int_0^{x*} x khat(nu,x)^2 J0(a x z) dx
/// with x = k_perp/a.
pub fn chi_scalar_mode_sum(
    omega: f64,
    geo: &GeometryScalars,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(
            "chi_scalar_mode_sum",
            format!("omega must be positive, got {omega}"),
        ));
    }
    let a = geo.a;
    if !(a > 0.0) {
        return Err(Error::domain(
            "chi_scalar_mode_sum",
            "mode sum requires a > 0 (no Rindler modes in the inertial limit)",
        ));
    }
    let nu = omega / a;
    let order = BesselOrder::new(nu)?;
    let bessel_spec = QuadratureSpec::default_specfun();
    let x_star = nu + 50.0; // khat^2 is ~e^{-2(x-nu)} beyond the turning point
    let f = |x: f64| -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let khat = bessel_k_imag_scaled(order, x, &bessel_spec)
            .expect("khat evaluation inside validated domain");
        let j0 =
            bessel_j0(a * x * geo.z, &bessel_spec).expect("j0 evaluation inside validated domain");
        x * khat * khat * j0
    };
    // breakpoints: half-periods of J0 in x, plus a geometric cascade toward
    // x = 0 where khat oscillates on a logarithmic scale
    let mut cuts: Vec<f64> = Vec::new();
    let d = (PI / (a * geo.z)).min(1.0);
    let mut p = d;
    while p < x_star {
        cuts.push(p);
        p += d;
    }
    let mut q = d.min(x_star) * 0.5;
    for _ in 0..40 {
        cuts.push(q);
        q *= 0.5;
    }
    let (integral, _) =
        integrate_with_breakpoints(f, 0.0, x_star, &cuts, spec, "chi_scalar_mode_sum")?;
    Ok(-(a / (8.0 * PI * PI * PI)) * (1.0 - (-2.0 * PI * nu).exp()) * integral)
}

/// Minkowski-vacuum Wightman function along the two worldlines, with the
/// regulator placed on the proper-time difference so the value depends on
/// tau, tau' only through tau - tau' (the closed chord of the hyperbolas,
/// (2/a) sinh(a(dtau - i eps)/2), stays stationary at finite eps).
pub fn wightman_minkowski_on_trajectories(
    tau: f64,
    tau_p: f64,
    geo: &GeometryScalars,
    epsilon: f64,
) -> Result<Complex64> {
    if !(epsilon > 0.0) {
        return Err(Error::domain(
            "wightman_minkowski_on_trajectories",
            format!("epsilon must be positive, got {epsilon}"),
        ));
    }
    let dt = Complex64::new(tau - tau_p, -epsilon);
    let d = if geo.a > 0.0 {
        let s_c = (0.5 * geo.a * dt).sinh() * (2.0 / geo.a);
        s_c * s_c - geo.z * geo.z
    } else {
        dt * dt - geo.z * geo.z
    };
    Ok(-1.0 / (4.0 * PI * PI * d))
}

/// Frequency extraction of the spectral coefficient from the inertial-frame
/// Wightman function:
///     chi_eps(w) = (1/pi) int_0^inf Im W_eps(dtau) sin(w dtau) d dtau,
/// extrapolated over the regulator schedule.
pub fn chi_scalar_from_wightman(
    omega: f64,
    geo: &GeometryScalars,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(
            "chi_scalar_from_wightman",
            format!("omega must be positive, got {omega}"),
        ));
    }
    let s = geo.s;
    let t_end = if geo.a > 0.0 {
        s + 40.0 / geo.a
    } else {
        s + 200.0 / omega.min(1.0)
    };
    let eps_scale = s.min(1.0);
    let mut samples = Vec::with_capacity(spec.regulator_schedule.len());
    for &eps_raw in &spec.regulator_schedule {
        let eps = eps_raw * eps_scale;
        let f = |dtau: f64| {
            let w = wightman_minkowski_on_trajectories(dtau, 0.0, geo, eps)
                .expect("validated regulator");
            w.im * (omega * dtau).sin() / PI
        };
        // cluster breakpoints on the light-cone crossing at dtau = s, then
        // half-periods of the sine out to the cutoff
        let mut cuts = vec![s];
        for m in [1.0, 3.0, 10.0, 30.0] {
            cuts.push(s - m * eps);
            cuts.push(s + m * eps);
        }
        let step = PI / omega;
        let mut p = step;
        while p < t_end {
            cuts.push(p);
            p += step;
        }
        let (v, _) =
            integrate_with_breakpoints(f, 0.0, t_end, &cuts, spec, "chi_scalar_from_wightman")?;
        samples.push((eps, v));
    }
    let ex = richardson_extrapolate(&samples, "chi_scalar_from_wightman")?;
    Ok(ex.value)
}
