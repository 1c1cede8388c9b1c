//! Center condition, return maps and period function of Form I.
//!
//! Form I has a center at the origin exactly when `a1 < 0`, `b1 > 0` and
//! `ã1 > 0`. The level sets of `H⁺ = a1y³/3 - b1x²/2` and
//! `H⁻ = ã1y³/3 - x²/2` then close up into orbits crossing the axis at `±r`,
//! and the period is `T(r) = β0 r^(-1/3)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{CanonicalForm, FormI, Zone};
use crate::error::{Error, Result};
use crate::numeric::gamma::gamma;
use crate::numeric::quad::TanhSinh;
use crate::numeric::real_cbrt;
use crate::simulate::{integrate_with, IntegrateOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterReason {
    FormIConditionMet,
    FormICondFail,
    FormIINoCenter,
    FormIIINoCenter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub is_center: bool,
    pub reason: CenterReason,
    pub global: bool,
    pub isochronous: bool,
}

pub fn center_report(form: &CanonicalForm) -> CenterReport {
    let (is_center, reason) = match form {
        CanonicalForm::I(f) if f.is_center() => (true, CenterReason::FormIConditionMet),
        CanonicalForm::I(_) => (false, CenterReason::FormICondFail),
        CanonicalForm::II(_) => (false, CenterReason::FormIINoCenter),
        CanonicalForm::III(_) => (false, CenterReason::FormIIINoCenter),
    };
    // the period r^(-1/3) is strictly monotone, so never isochronous
    CenterReport { is_center, reason, global: is_center, isochronous: false }
}

fn require_center(form: &FormI) -> Result<()> {
    if form.is_center() {
        Ok(())
    } else {
        Err(Error::NotACenter)
    }
}

/// Upper half map and full return map of the axis point `(r, 0)`, from
/// conservation of `H⁺` and `H⁻`. Both are returned as distances from the
/// origin along the axis.
pub fn exact_return_maps(form: &FormI, r: f64) -> Result<(f64, f64)> {
    require_center(form)?;
    if !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!("radius {r} must be nonnegative")));
    }
    // H⁺(x, 0) = H⁺(r, 0) has the second solution x = -r
    let h_plus = -form.b1 * r * r / 2.0;
    let x_half = -(-2.0 * h_plus / form.b1).sqrt();
    // H⁻(x, 0) = H⁻(x_half, 0) has the second solution x = |x_half|
    let h_minus = -x_half * x_half / 2.0;
    let x_full = (-2.0 * h_minus).sqrt();
    Ok((-x_half, x_full))
}

/// Second positive-x axis crossing of the orbit through `(r, 0)`.
pub fn numeric_return_map(form: &FormI, r: f64, tol: f64) -> Result<f64> {
    require_center(form)?;
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius {r} must be positive")));
    }
    let period = period_closed_form(form, r)?.period;
    let opts = IntegrateOptions {
        tmax: 4.0 * period,
        tol,
        start_zone: Some(Zone::Upper),
        max_crossings: Some(2),
        ..IntegrateOptions::default()
    };
    let traj = integrate_with(&form.field(), [r, 0.0], &opts)?;
    let back = traj.crossings().nth(1).map(|e| e.x);
    back.ok_or_else(|| Error::IntegrationFailure(format!("orbit through ({r}, 0) did not return")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodValue {
    pub r0: f64,
    #[serde(rename = "T")]
    pub period: f64,
    pub beta0: f64,
}

/// `β0 = (2/3)^(5/3) π^(3/2) √3 / (Γ(2/3) Γ(5/6)) · (-a1^(-1/3) b1^(-2/3) + ã1^(-1/3))`.
pub fn beta0(form: &FormI) -> Result<f64> {
    require_center(form)?;
    let k = (2.0f64 / 3.0).powf(5.0 / 3.0) * PI.powf(1.5) * 3f64.sqrt() / (gamma(2.0 / 3.0) * gamma(5.0 / 6.0));
    let weights = -1.0 / real_cbrt(form.a1) * form.b1.powf(-2.0 / 3.0) + 1.0 / real_cbrt(form.a1_tilde);
    Ok(k * weights)
}

pub fn period_closed_form(form: &FormI, r0: f64) -> Result<PeriodValue> {
    let beta0 = beta0(form)?;
    if !(r0 > 0.0) {
        return Err(Error::InvalidArgument(format!("radius {r0} must be positive")));
    }
    Ok(PeriodValue { r0, period: beta0 * r0.powf(-1.0 / 3.0), beta0 })
}

/// Period as the sum of the two time integrals `∫dx/(a y²)` along the half
/// orbits, by tanh-sinh quadrature with relative tolerance `tol`.
pub fn period_numeric_with_tol(form: &FormI, r0: f64, tol: f64) -> Result<f64> {
    require_center(form)?;
    if !(r0 > 0.0) {
        return Err(Error::InvalidArgument(format!("radius {r0} must be positive")));
    }
    let FormI { a1, b1, a1_tilde: at } = *form;
    let q = TanhSinh::with_tol(tol);
    // r0² - x² = (x + r0)(r0 - x), both factors taken from endpoint distances
    let upper = q.integrate(-r0, r0, |_, da, db| {
        let y2 = (3.0 * b1 * da * db / (2.0 * -a1)).powf(2.0 / 3.0);
        1.0 / (-a1 * y2)
    })?;
    let lower = q.integrate(-r0, r0, |_, da, db| {
        let y2 = (3.0 * da * db / (2.0 * at)).powf(2.0 / 3.0);
        1.0 / (at * y2)
    })?;
    Ok(upper.value + lower.value)
}

pub fn period_numeric(form: &FormI, r0: f64) -> Result<f64> {
    period_numeric_with_tol(form, r0, 1e-12)
}
