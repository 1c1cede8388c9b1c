//! Numerical building blocks: special functions, quadrature, univariate
//! root isolation and the embedded Runge–Kutta integrator.

pub mod gamma;
pub mod ode;
pub mod quad;
pub mod upoly;

/// Real cube root, negative for negative input.
pub fn real_cbrt(x: f64) -> f64 {
    x.cbrt()
}

/// `x^(num/3)` with the real cube root, defined for negative `x`.
pub fn real_pow_thirds(x: f64, num: i32) -> f64 {
    real_cbrt(x).powi(num)
}
