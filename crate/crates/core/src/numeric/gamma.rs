//! Gamma and Beta functions for real arguments.
//!
//! Lanczos approximation with `g = 7` and nine coefficients, combined with the
//! reflection formula below one half.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function. Returns `NaN` at the poles `0, -1, -2, ...`.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Euler Beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)` for positive arguments.
///
/// When one argument is a small positive integer `m` the finite product
/// `(m-1)! / (x (x+1) ... (x+m-1))` is used instead.
pub fn beta(a: f64, b: f64) -> f64 {
    for (m, x) in [(b, a), (a, b)] {
        if m == m.floor() && (1.0..=30.0).contains(&m) {
            let mut v = 1.0;
            for k in 0..m as u32 {
                v *= if k == 0 { 1.0 } else { k as f64 } / (x + k as f64);
            }
            return v;
        }
    }
    gamma(a) * gamma(b) / gamma(a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-13);
        assert!((gamma(1.5) - 0.5 * PI.sqrt()).abs() < 1e-13);
        assert!((gamma(2.5) - 0.75 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn factorials() {
        let mut fact = 1.0;
        for n in 1..10 {
            assert!((gamma(n as f64) - fact).abs() / fact < 1e-13, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn reflection_identity() {
        // Γ(1/3)Γ(2/3) = 2π/√3
        let lhs = gamma(1.0 / 3.0) * gamma(2.0 / 3.0);
        assert!((lhs - 2.0 * PI / 3f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn poles_are_nan() {
        assert!(gamma(0.0).is_nan());
        assert!(gamma(-3.0).is_nan());
    }

    #[test]
    fn beta_symmetric_and_known() {
        assert!((beta(2.0, 3.0) - 1.0 / 12.0).abs() < 1e-14);
        assert!((beta(0.5, 0.5) - PI).abs() < 1e-13);
        assert!((beta(0.3, 1.7) - beta(1.7, 0.3)).abs() < 1e-14);
    }
}
