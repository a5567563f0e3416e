//! Shared oracles for the integration suites.

/// Independent K_0 reference: ascending series for x <= 2, continued-
/// fraction (CF2) evaluation of the confluent-hypergeometric factor for
/// the tail. Full double precision on the tested range; shares no code
/// with the library routes under test.
pub fn k0_reference(x: f64) -> f64 {
    assert!(x > 0.0);
    if x <= 2.0 {
        // K0 = -(ln(x/2) + gamma) I0 + sum_k t_k H_k
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut i0 = 1.0;
        let mut h = 0.0;
        let mut s = 0.0;
        for k in 1..60 {
            term *= q / ((k * k) as f64);
            h += 1.0 / k as f64;
            i0 += term;
            s += term * h;
        }
        -((0.5 * x).ln() + EULER_GAMMA) * i0 + s
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let (mut q1, mut q2) = (0.0f64, 1.0f64);
        let a1 = 0.25f64;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..10_000u64 {
            a -= 2.0 * (i - 1) as f64;
            c = -a * c / i as f64;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < 1e-17 {
                break;
            }
        }
        (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s
    }
}
