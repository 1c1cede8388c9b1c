//! Closed-form first integrals of each zone of the reduced forms.

use serde::{Deserialize, Serialize};

use super::canonical::CanonicalForm;
use super::poly::Zone;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Power,
    Logarithmic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Expr {
    /// `a y³/3 - b x²/2`
    Cubic { a: f64, b: f64 },
    /// `(-2 b1 x + (a - 2 b2) y²) / (x^(2 b2/a) (a - 2 b2))`, x > 0
    RationalX { a: f64, b1: f64, b2: f64 },
    /// `(-b1 x ln x + b2 y²) / (b2 x)`, x > 0
    LogX { b1: f64, b2: f64, flip: bool },
    /// `((a1 - 2 b) x + a2 y²) / (|y|^(a1/b) (a1 - 2 b))`
    RationalY { a1: f64, a2: f64, b: f64 },
    /// `-(a2 y² ln|y| - b x) / (b y²)`
    LogY { a2: f64, b: f64 },
}

/// A first integral `H` of one zone of a reduced form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstIntegral {
    pub zone: Zone,
    pub branch: Branch,
    expr: Expr,
}

/// Parameters equal within this relative distance select the logarithmic
/// branch.
const BRANCH_TOL: f64 = 1e-12;

fn coincide(a: f64, b: f64) -> bool {
    (a - b).abs() <= BRANCH_TOL * a.abs().max(b.abs())
}

impl FirstIntegral {
    /// Whether `(x, y)` lies in the domain of the expression.
    pub fn in_domain(&self, x: f64, y: f64) -> bool {
        let zone_ok = match self.expr {
            // polynomial, valid on the closed half plane
            Expr::Cubic { .. } => true,
            _ => match self.zone {
                Zone::Upper => y >= 0.0,
                Zone::Lower => y < 0.0,
            },
        };
        zone_ok
            && match self.expr {
                Expr::Cubic { .. } => true,
                Expr::RationalX { .. } | Expr::LogX { .. } => x > 0.0,
                Expr::RationalY { .. } | Expr::LogY { .. } => y != 0.0,
            }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if !self.in_domain(x, y) {
            return Err(Error::DomainError { x, y });
        }
        Ok(match self.expr {
            Expr::Cubic { a, b } => a * y.powi(3) / 3.0 - b * x * x / 2.0,
            Expr::RationalX { a, b1, b2 } => {
                let c = a - 2.0 * b2;
                (-2.0 * b1 * x + c * y * y) / (x.powf(2.0 * b2 / a) * c)
            }
            Expr::LogX { b1, b2, flip } => {
                let h = (-b1 * x * x.ln() + b2 * y * y) / (b2 * x);
                if flip {
                    -h
                } else {
                    h
                }
            }
            Expr::RationalY { a1, a2, b } => {
                let c = a1 - 2.0 * b;
                (c * x + a2 * y * y) / (y.abs().powf(a1 / b) * c)
            }
            Expr::LogY { a2, b } => -(a2 * y * y * y.abs().ln() - b * x) / (b * y * y),
        })
    }
}

/// First integral of `zone` of `form`, with the logarithmic expression
/// selected when `a2 = 2 b22`, `ã2 = 2`, `a31 = 2 b3` or `ã31 = 2`.
pub fn first_integral(form: &CanonicalForm, zone: Zone) -> FirstIntegral {
    let (branch, expr) = match (*form, zone) {
        (CanonicalForm::I(f), Zone::Upper) => (Branch::Power, Expr::Cubic { a: f.a1, b: f.b1 }),
        (CanonicalForm::I(f), Zone::Lower) => (Branch::Power, Expr::Cubic { a: f.a1_tilde, b: 1.0 }),
        (CanonicalForm::II(f), z) => {
            let (a, b1, b2) = match z {
                Zone::Upper => (f.a2, f.b21, f.b22),
                Zone::Lower => (f.a2_tilde, 1.0, 1.0),
            };
            if coincide(a, 2.0 * b2) {
                // the lower expression is written (x ln x - y²)/x, the
                // negative of the generic one
                (Branch::Logarithmic, Expr::LogX { b1, b2, flip: z == Zone::Lower })
            } else {
                (Branch::Power, Expr::RationalX { a, b1, b2 })
            }
        }
        (CanonicalForm::III(f), z) => {
            let (a1, a2, b) = match z {
                Zone::Upper => (f.a31, f.a32, f.b3),
                Zone::Lower => (f.a31_tilde, 1.0, 1.0),
            };
            if coincide(a1, 2.0 * b) {
                (Branch::Logarithmic, Expr::LogY { a2, b })
            } else {
                (Branch::Power, Expr::RationalY { a1, a2, b })
            }
        }
    };
    FirstIntegral { zone, branch, expr }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::canonical::{FormI, FormII, FormIII};

    /// dH/dt = ∇H · F by central differences; must vanish for a first integral.
    fn lie_derivative(form: &CanonicalForm, zone: Zone, x: f64, y: f64) -> (f64, f64) {
        let h = first_integral(form, zone);
        let [u, v] = form.field().zone(zone).eval(x, y);
        let e = 1e-6;
        let hx = (h.eval(x + e, y).unwrap() - h.eval(x - e, y).unwrap()) / (2.0 * e);
        let hy = (h.eval(x, y + e).unwrap() - h.eval(x, y - e).unwrap()) / (2.0 * e);
        (hx * u + hy * v, (hx * u).abs() + (hy * v).abs())
    }

    fn check_conserved(form: CanonicalForm, zone: Zone, pts: &[(f64, f64)]) {
        for &(x, y) in pts {
            let (d, scale) = lie_derivative(&form, zone, x, y);
            assert!(d.abs() <= 1e-6 * scale.max(1.0), "{form:?} {zone:?} at ({x},{y}): {d}");
        }
    }

    #[test]
    fn form_i_value_at_axis() {
        let form = CanonicalForm::I(FormI::new(-1.0, 1.0, 1.0).unwrap());
        let h = first_integral(&form, Zone::Upper);
        assert_eq!(h.eval(1.0, 0.0).unwrap(), -0.5);
        assert_eq!(h.branch, Branch::Power);
    }

    #[test]
    fn conserved_by_every_zone_field() {
        let up = [(0.7, 0.4), (1.5, 2.0), (3.0, 0.9)];
        let down = [(0.7, -0.4), (1.5, -2.0), (3.0, -0.9)];
        let forms = [
            CanonicalForm::I(FormI::new(-1.3, 0.8, 2.0).unwrap()),
            CanonicalForm::II(FormII::new(1.5, -0.7, 0.4, 3.0).unwrap()),
            CanonicalForm::II(FormII::new(2.0, -0.7, 1.0, 2.0).unwrap()),
            CanonicalForm::III(FormIII::new(0.6, -1.1, 0.9, 0.7).unwrap()),
            CanonicalForm::III(FormIII::new(2.0, -1.1, 1.0, 2.0).unwrap()),
        ];
        for form in forms {
            check_conserved(form, Zone::Upper, &up);
            check_conserved(form, Zone::Lower, &down);
        }
    }

    #[test]
    fn logarithmic_branch_selection() {
        let form = CanonicalForm::II(FormII::new(2.0, 1.0, 1.0, 3.0).unwrap());
        assert_eq!(first_integral(&form, Zone::Upper).branch, Branch::Logarithmic);
        assert_eq!(first_integral(&form, Zone::Lower).branch, Branch::Power);
        let form = CanonicalForm::III(FormIII::new(1.0, 1.0, 1.0, 2.0).unwrap());
        assert_eq!(first_integral(&form, Zone::Upper).branch, Branch::Power);
        assert_eq!(first_integral(&form, Zone::Lower).branch, Branch::Logarithmic);
    }

    #[test]
    fn lower_logarithmic_expression_matches_written_form() {
        let form = CanonicalForm::II(FormII::new(1.0, 1.0, 1.0, 2.0).unwrap());
        let h = first_integral(&form, Zone::Lower);
        let (x, y) = (2.0f64, -0.5f64);
        assert!((h.eval(x, y).unwrap() - (x * x.ln() - y * y) / x).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let form = CanonicalForm::II(FormII::new(2.0, 1.0, 1.0, 3.0).unwrap());
        let h = first_integral(&form, Zone::Upper);
        assert_eq!(h.eval(-1.0, 1.0), Err(Error::DomainError { x: -1.0, y: 1.0 }));
        assert!(h.eval(0.0, 1.0).is_err());
        let form = CanonicalForm::III(FormIII::new(1.0, 1.0, 1.0, 3.0).unwrap());
        let lower = first_integral(&form, Zone::Lower);
        assert!(lower.eval(1.0, 0.5).is_err());
        assert!(lower.eval(1.0, -0.5).is_ok());
    }
}
