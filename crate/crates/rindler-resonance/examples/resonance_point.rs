//! Computes the resonance interaction energy at one parameter point with
//! every available method and shows the regulator schedule behind the
//! oracle values.

use rindler_resonance::quadrature::QuadratureSpec;
use rindler_resonance::shift::{
    delta_e_em_closed, delta_e_em_oracle, delta_e_scalar_closed, delta_e_scalar_inertial_oracle,
    delta_e_scalar_oracle, AtomPairConfig, StateSymmetry,
};

fn main() -> rindler_resonance::Result<()> {
    let cfg = AtomPairConfig {
        omega0: 1.0,
        a: 1.0,
        z: 1.0,
        symmetry: StateSymmetry::Symmetric,
        coupling_lambda: 1.0,
        dipole_a: [0.0, 0.0, 1.0],
        dipole_b: [0.0, 0.0, 1.0],
    };
    let spec = QuadratureSpec::default_oracle();

    println!("scalar channel:");
    let closed = delta_e_scalar_closed(&cfg)?;
    println!("  closed form          {:+.14e}", closed.value);
    let freq = delta_e_scalar_oracle(&cfg, &spec)?;
    println!(
        "  frequency oracle     {:+.14e}  (err est {:.1e})",
        freq.value, freq.error_estimate
    );
    for (eps, v) in &freq.regulator_report {
        println!("    eps = {eps:<8.5} -> {v:+.14e}");
    }
    let td = delta_e_scalar_inertial_oracle(&cfg, &spec)?;
    println!(
        "  inertial-frame oracle {:+.14e} (err est {:.1e})",
        td.value, td.error_estimate
    );

    println!("dipole channel (z-oriented dipoles):");
    let closed = delta_e_em_closed(&cfg)?;
    println!("  closed form          {:+.14e}", closed.value);
    let orc = delta_e_em_oracle(&cfg, &spec)?;
    println!(
        "  inertial-frame oracle {:+.14e} (err est {:.1e})",
        orc.value, orc.error_estimate
    );
    Ok(())
}
