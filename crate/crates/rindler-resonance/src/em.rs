//! Electromagnetic susceptibility tensor between the worldlines: the
//! closed component functions f_ij and g_ij, the spectral bracket
//!     B_ij(w) = [f_ij cos(w s) + g_ij sin(w s)] / (8 pi^2)
//! (the density multiplying e^{-i w dtau} - e^{+i w dtau}), and an
//! inertial-frame oracle that builds the electric-field commutator from
//! analytic derivatives of the scalar Wightman function along the
//! hyperbolas and Fourier-extracts the same bracket.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::GeometryScalars;
use crate::quadrature::{integrate_with_breakpoints, richardson_extrapolate, QuadratureSpec};

const PI: f64 = std::f64::consts::PI;

/// Spatial axis label; acceleration points along x, the separation along z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// The closed susceptibility tensor at one (omega, z, a) point: f, g, and
/// the composed bracket per component.
#[derive(Debug, Clone, PartialEq)]
pub struct SusceptibilityTensorPoint {
    pub omega: f64,
    pub z: f64,
    pub a: f64,
    pub f: [[f64; 3]; 3],
    pub g: [[f64; 3]; 3],
    pub bracket: [[f64; 3]; 3],
}

/// f components on a signed separation; every entry is exactly linear in
/// omega. Nonzero pattern: diagonal plus xz = -zx.
pub(crate) fn f_tensor_signed(omega: f64, z: f64, a: f64) -> [[f64; 3]; 3] {
    let az2 = a * a * z * z;
    let n = 1.0 + 0.25 * az2;
    let n2 = n * n;
    let mut f = [[0.0; 3]; 3];
    f[0][0] = omega * (1.0 + az2) / (z * z * n2);
    f[1][1] = omega * (1.0 + 0.5 * az2) / (z * z * n);
    f[2][2] = -2.0 * omega * (1.0 + 0.125 * az2 + az2 * az2 / 16.0) / (z * z * n2);
    f[0][2] = a * omega * (1.0 - 0.5 * az2) / (2.0 * z * n2);
    f[2][0] = -f[0][2];
    f
}

/// g components on a signed separation; quadratic-plus-constant in omega.
pub(crate) fn g_tensor_signed(omega: f64, z: f64, a: f64) -> [[f64; 3]; 3] {
    let az2 = a * a * z * z;
    let w2z2 = omega * omega * z * z;
    let n = 1.0 + 0.25 * az2;
    let z3 = z * z * z;
    let n52 = n * n * n.sqrt();
    let n32 = n * n.sqrt();
    let mut g = [[0.0; 3]; 3];
    g[0][0] = -(1.0 + 0.25 * az2 * (2.0 + az2) - w2z2 * n) / (z3 * n52);
    g[1][1] = -(1.0 - w2z2 * n) / (z3 * n32);
    g[2][2] = 2.0 * ((1.0 + 0.625 * az2) - a * a * omega * omega * z3 * z * 0.125 * n) / (z3 * n52);
    g[0][2] = -a * ((1.0 + az2) + w2z2 * n) / (2.0 * z * z * n52);
    g[2][0] = -g[0][2];
    g
}

pub fn f_tensor(omega: f64, geo: &GeometryScalars) -> Result<[[f64; 3]; 3]> {
    if !(omega > 0.0) {
        return Err(Error::domain(
            "f_tensor",
            format!("omega must be positive, got {omega}"),
        ));
    }
    Ok(f_tensor_signed(omega, geo.z, geo.a))
}

pub fn g_tensor(omega: f64, geo: &GeometryScalars) -> Result<[[f64; 3]; 3]> {
    if !(omega > 0.0) {
        return Err(Error::domain(
            "g_tensor",
            format!("omega must be positive, got {omega}"),
        ));
    }
    Ok(g_tensor_signed(omega, geo.z, geo.a))
}

/// Closed spectral tensor with the composed bracket.
pub fn chi_em_spectral(omega: f64, geo: &GeometryScalars) -> Result<SusceptibilityTensorPoint> {
    let f = f_tensor(omega, geo)?;
    let g = g_tensor(omega, geo)?;
    let (c, s) = ((omega * geo.s).cos(), (omega * geo.s).sin());
    let mut bracket = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            bracket[i][j] = (f[i][j] * c + g[i][j] * s) / (8.0 * PI * PI);
        }
    }
    Ok(SusceptibilityTensorPoint {
        omega,
        z: geo.z,
        a: geo.a,
        f,
        g,
        bracket,
    })
}

/// One component of the electric-field correlation along the two
/// worldlines, in the instantaneous rest-frame tetrad of each atom, as an
/// analytic function of the regulated proper-time difference.
pub(crate) fn g_component(i: Axis, j: Axis, dtau: f64, z: f64, a: f64, eps: f64) -> Complex64 {
    let dtt = Complex64::new(dtau, -eps);
    let (s, c) = if a > 0.0 {
        ((0.5 * a * dtt).sinh() * (2.0 / a), (0.5 * a * dtt).cosh())
    } else {
        (dtt, Complex64::new(1.0, 0.0))
    };
    let q = s * s - z * z;
    let p = |vw: Complex64, vdx: Complex64, wdx: Complex64| -> Complex64 {
        -(1.0 / (4.0 * PI * PI)) * (2.0 * vw / (q * q) - 8.0 * vdx * wdx / (q * q * q))
    };
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let uu = one + 0.5 * a * a * s * s;
    // u.e_j' and e_i.u' are nonzero only along the boost axis
    let u_ep = |ax: Axis| if ax == Axis::X { -a * s * c } else { zero };
    let e_up = |ax: Axis| if ax == Axis::X { a * s * c } else { zero };
    let ee = |ai: Axis, aj: Axis| -> Complex64 {
        if ai != aj {
            zero
        } else if ai == Axis::X {
            -(one + 0.5 * a * a * s * s)
        } else {
            -one
        }
    };
    let e_dx = |ax: Axis| match ax {
        Axis::X => 0.5 * a * s * s,
        Axis::Y => zero,
        Axis::Z => Complex64::new(-z, 0.0),
    };
    let ep_dx = |ax: Axis| match ax {
        Axis::X => -0.5 * a * s * s,
        Axis::Y => zero,
        Axis::Z => Complex64::new(-z, 0.0),
    };
    let u_dx = s * c;
    -(uu * p(ee(i, j), e_dx(i), ep_dx(j))
        - u_ep(j) * p(e_up(i), e_dx(i), u_dx)
        - e_up(i) * p(u_ep(j), u_dx, ep_dx(j))
        + ee(i, j) * p(uu, u_dx, u_dx))
}

/// Inertial-frame Wightman oracle for one tensor component: extracts
///     B_ij(w) = -(1/pi) int_0^inf Im G_ij(dtau) sin(w dtau) d dtau
/// at each regulator in the schedule and extrapolates to eps -> 0.
pub fn chi_em_from_wightman(
    i: Axis,
    j: Axis,
    omega: f64,
    geo: &GeometryScalars,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(
            "chi_em_from_wightman",
            format!("omega must be positive, got {omega}"),
        ));
    }
    let allowed = matches!(
        (i, j),
        (Axis::X, Axis::X)
            | (Axis::Y, Axis::Y)
            | (Axis::Z, Axis::Z)
            | (Axis::X, Axis::Z)
            | (Axis::Z, Axis::X)
    );
    if !allowed {
        return Err(Error::domain(
            "chi_em_from_wightman",
            "component outside the nonzero pattern (diagonal plus xz/zx)",
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
        let f = |dtau: f64| g_component(i, j, dtau, geo.z, geo.a, eps).im * (omega * dtau).sin();
        let mut cuts = vec![s];
        for m in [1.0, 3.0, 10.0, 30.0] {
            cuts.push(s - m * eps);
            cuts.push(s + m * eps);
        }
        let step = PI / omega;
        let mut pnt = step;
        while pnt < t_end {
            cuts.push(pnt);
            pnt += step;
        }
        let (v, _) =
            integrate_with_breakpoints(f, 0.0, t_end, &cuts, spec, "chi_em_from_wightman")?;
        samples.push((eps, -v / PI));
    }
    let ex = richardson_extrapolate(&samples, "chi_em_from_wightman")?;
    Ok(ex.value)
}
