//! Prints the dipole-channel susceptibility tensor (f, g, and the combined
//! bracket) at a point, and checks a structural fact live: the xz block is
//! antisymmetric.

use rindler_resonance::em::chi_em_spectral;
use rindler_resonance::kinematics::geometry_scalars;

fn main() -> rindler_resonance::Result<()> {
    let (omega, z, a) = (1.0, 1.0, 1.0);
    let geo = geometry_scalars(z, a)?;
    let point = chi_em_spectral(omega, &geo)?;
    println!("omega = {omega}, z = {z}, a = {a}");
    for (label, m) in [
        ("f", &point.f),
        ("g", &point.g),
        ("bracket", &point.bracket),
    ] {
        println!("{label}:");
        for row in m.iter() {
            println!("  {:>22.14e} {:>22.14e} {:>22.14e}", row[0], row[1], row[2]);
        }
    }
    println!("f.xz + f.zx = {:.3e}", point.f[0][2] + point.f[2][0]);
    println!("g.xz + g.zx = {:.3e}", point.g[0][2] + point.g[2][0]);
    Ok(())
}
