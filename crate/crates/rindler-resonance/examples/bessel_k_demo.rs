//! Evaluates K_{i nu}(x) across the argument range, exercising all three
//! internal evaluation routes (direct integral, power series, rotated
//! contour), and prints the e^{pi nu/2}-scaled kernel alongside.

use rindler_resonance::quadrature::QuadratureSpec;
use rindler_resonance::specfun::{bessel_k_imag, bessel_k_imag_scaled, BesselOrder};

fn main() -> rindler_resonance::Result<()> {
    let spec = QuadratureSpec::default_specfun();
    println!("{:>6} {:>8} {:>24} {:>24}", "nu", "x", "K_inu(x)", "scaled");
    for &nu in &[0.0, 0.5, 2.0, 8.0, 20.0] {
        let order = BesselOrder::new(nu)?;
        for &x in &[0.1, 1.0, 5.0, nu.max(1.0), 2.0 * nu.max(1.0)] {
            let k = bessel_k_imag(order, x, &spec)?;
            let s = bessel_k_imag_scaled(order, x, &spec)?;
            println!("{nu:>6} {x:>8.3} {k:>24.16e} {s:>24.16e}");
        }
    }
    Ok(())
}
