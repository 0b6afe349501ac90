//! K_0 and the complex Gamma function.

use num_complex::Complex64;
use std::f64::consts::PI;

/// K_0(z) for z > 0 from K_0(z) = int_0^inf exp(-z cosh t) dt. The
/// integrand is entire and decays doubly exponentially, so the trapezoid
/// rule with step 0.2 is accurate to rounding.
pub fn bessel_k0(z: f64) -> f64 {
    assert!(z > 0.0, "K_0 needs a positive argument");
    const H: f64 = 0.2;
    let lead = (-z).exp();
    if lead == 0.0 {
        return 0.0;
    }
    let mut sum = 0.5 * lead;
    let mut t = H;
    loop {
        let term = (-z * t.cosh()).exp();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        t += H;
    }
    sum * H
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma(s) by the Lanczos approximation (about 15 digits), with the
/// reflection formula left of 1/2.
pub fn gamma(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * s).sin() * gamma(Complex64::new(1.0, 0.0) - s));
    }
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}
