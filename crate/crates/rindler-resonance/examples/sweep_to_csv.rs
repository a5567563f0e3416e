//! Builds a sweep programmatically (no JSON file needed) and writes the
//! CSV table, then echoes it to stdout.

use rindler_resonance::cli::{run_sweep, Spacing, SweepConfig, SweepRange, VaryParam};
use rindler_resonance::quadrature::QuadratureSpec;
use rindler_resonance::shift::{AtomPairConfig, Channel, Method, StateSymmetry};

fn main() -> rindler_resonance::Result<()> {
    let out = std::env::temp_dir().join("resonance_sweep_example.csv");
    let sweep = SweepConfig {
        channel: Channel::Scalar,
        vary: VaryParam::A,
        range: SweepRange {
            start: 1e-3,
            stop: 10.0,
            num_points: 8,
            spacing: Spacing::Log,
        },
        fixed: AtomPairConfig {
            omega0: 1.0,
            a: 0.0,
            z: 1.0,
            symmetry: StateSymmetry::Symmetric,
            coupling_lambda: 1.0,
            dipole_a: [0.0, 0.0, 1.0],
            dipole_b: [0.0, 0.0, 1.0],
        },
        methods: vec![Method::ClosedForm, Method::Oracle],
        output_path: out.clone(),
    };
    run_sweep(&sweep, &QuadratureSpec::default_oracle())?;
    print!("{}", std::fs::read_to_string(&out)?);
    println!("(written to {})", out.display());
    Ok(())
}
