//! Hyperbolic worldlines, the Rindler-to-Minkowski map, and the two
//! geometric scalars every closed form is built from: N(z,a) = 1 + a^2 z^2/4
//! and the effective separation s = (2/a) asinh(a z / 2).

use crate::error::{Error, Result};

/// A point on a uniformly accelerated worldline, in both charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryEvent {
    pub tau: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub xi: f64,
}

/// N and the effective separation s for a transverse pair at separation z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryScalars {
    pub z: f64,
    pub a: f64,
    pub n: f64,
    pub s: f64,
}

/// Worldline of an atom at Rindler position xi = 0, transverse offset
/// `z_atom`: t = sinh(a tau)/a, x = cosh(a tau)/a.
pub fn trajectory(tau: f64, a: f64, z_atom: f64) -> Result<TrajectoryEvent> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "trajectory",
            format!("acceleration must be positive, got {a}"),
        ));
    }
    Ok(TrajectoryEvent {
        tau,
        t: (a * tau).sinh() / a,
        x: (a * tau).cosh() / a,
        y: 0.0,
        z: z_atom,
        xi: 0.0,
    })
}

/// Coordinate map of the right wedge: (tau, xi) -> (t, x).
pub fn rindler_to_minkowski(tau: f64, xi: f64, a: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "rindler_to_minkowski",
            format!("acceleration must be positive, got {a}"),
        ));
    }
    let r = (a * xi).exp() / a;
    Ok((r * (a * tau).sinh(), r * (a * tau).cosh()))
}

/// N(z,a) and s(z,a), with an exact inertial branch at a = 0 and a series
/// branch for tiny a*z where (2/a) asinh(a z/2) loses digits.
pub fn geometry_scalars(z: f64, a: f64) -> Result<GeometryScalars> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(
            "geometry_scalars",
            format!("separation must be positive, got {z}"),
        ));
    }
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "geometry_scalars",
            format!("acceleration must be non-negative, got {a}"),
        ));
    }
    let az = a * z;
    let n = 1.0 + 0.25 * az * az;
    let s = if a == 0.0 {
        z
    } else if az < 1e-6 {
        // asinh(u)/u = 1 - u^2/6 + 3u^4/40 with u = az/2
        let u2 = 0.25 * az * az;
        z * (1.0 - u2 / 6.0 + 0.075 * u2 * u2)
    } else {
        2.0 * (0.5 * az).asinh() / a
    };
    Ok(GeometryScalars { z, a, n, s })
}
