//! The three reduced families of piecewise quadratic quasi-homogeneous
//! non-homogeneous systems and the reduction that produces them.
//!
//! ```text
//! (I)   y >= 0: ẋ = a1 y²,          ẏ = b1 x
//!       y <  0: ẋ = ã1 y²,          ẏ = x
//! (II)  y >= 0: ẋ = a2 x y,         ẏ = b21 x + b22 y²
//!       y <  0: ẋ = ã2 x y,         ẏ = x + y²
//! (III) y >= 0: ẋ = a31 x + a32 y², ẏ = b3 y
//!       y <  0: ẋ = ã31 x + y²,     ẏ = y
//! ```

use serde::{Deserialize, Serialize};

use super::poly::{BiPoly, PiecewiseField, ZoneField, STRUCTURAL_ZERO};
use super::weight::minimal_weight_vector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormI {
    pub a1: f64,
    pub b1: f64,
    pub a1_tilde: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormII {
    pub a2: f64,
    pub b21: f64,
    pub b22: f64,
    pub a2_tilde: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormIII {
    pub a31: f64,
    pub a32: f64,
    pub b3: f64,
    pub a31_tilde: f64,
}

fn check_nonzero(params: &[(&'static str, f64)]) -> Result<()> {
    for &(name, v) in params {
        if v == 0.0 || !v.is_finite() {
            return Err(Error::ZeroParameter(name));
        }
    }
    Ok(())
}

impl FormI {
    pub fn new(a1: f64, b1: f64, a1_tilde: f64) -> Result<Self> {
        check_nonzero(&[("a1", a1), ("b1", b1), ("a1_tilde", a1_tilde)])?;
        Ok(Self { a1, b1, a1_tilde })
    }

    /// `a1 < 0`, `b1 > 0`, `ã1 > 0`.
    pub fn is_center(&self) -> bool {
        self.a1 < 0.0 && self.b1 > 0.0 && self.a1_tilde > 0.0
    }

    pub fn field(&self) -> PiecewiseField {
        PiecewiseField::new(
            ZoneField::new(BiPoly::monomial(0, 2, self.a1), BiPoly::monomial(1, 0, self.b1)),
            ZoneField::new(BiPoly::monomial(0, 2, self.a1_tilde), BiPoly::monomial(1, 0, 1.0)),
        )
    }
}

impl FormII {
    pub fn new(a2: f64, b21: f64, b22: f64, a2_tilde: f64) -> Result<Self> {
        check_nonzero(&[("a2", a2), ("b21", b21), ("b22", b22), ("a2_tilde", a2_tilde)])?;
        Ok(Self { a2, b21, b22, a2_tilde })
    }

    pub fn field(&self) -> PiecewiseField {
        PiecewiseField::new(
            ZoneField::new(
                BiPoly::monomial(1, 1, self.a2),
                BiPoly::from_terms([(1, 0, self.b21), (0, 2, self.b22)]),
            ),
            ZoneField::new(BiPoly::monomial(1, 1, self.a2_tilde), BiPoly::from_terms([(1, 0, 1.0), (0, 2, 1.0)])),
        )
    }
}

impl FormIII {
    pub fn new(a31: f64, a32: f64, b3: f64, a31_tilde: f64) -> Result<Self> {
        check_nonzero(&[("a31", a31), ("a32", a32), ("b3", b3), ("a31_tilde", a31_tilde)])?;
        Ok(Self { a31, a32, b3, a31_tilde })
    }

    pub fn field(&self) -> PiecewiseField {
        PiecewiseField::new(
            ZoneField::new(
                BiPoly::from_terms([(1, 0, self.a31), (0, 2, self.a32)]),
                BiPoly::monomial(0, 1, self.b3),
            ),
            ZoneField::new(BiPoly::from_terms([(1, 0, self.a31_tilde), (0, 2, 1.0)]), BiPoly::monomial(0, 1, 1.0)),
        )
    }
}

/// One of the reduced forms (I)/(II)/(III). Serialized as
/// `{"variant": "I", "params": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum CanonicalForm {
    I(FormI),
    II(FormII),
    III(FormIII),
}

impl CanonicalForm {
    pub fn variant(&self) -> Variant {
        match self {
            CanonicalForm::I(_) => Variant::I,
            CanonicalForm::II(_) => Variant::II,
            CanonicalForm::III(_) => Variant::III,
        }
    }

    /// Builds a form from its parameter tuple in declaration order.
    pub fn from_params(variant: Variant, params: &[f64]) -> Result<Self> {
        let want = match variant {
            Variant::I => 3,
            Variant::II | Variant::III => 4,
        };
        if params.len() != want {
            return Err(Error::InvalidArgument(format!(
                "form {variant:?} takes {want} parameters, got {}",
                params.len()
            )));
        }
        let p = params;
        Ok(match variant {
            Variant::I => CanonicalForm::I(FormI::new(p[0], p[1], p[2])?),
            Variant::II => CanonicalForm::II(FormII::new(p[0], p[1], p[2], p[3])?),
            Variant::III => CanonicalForm::III(FormIII::new(p[0], p[1], p[2], p[3])?),
        })
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            CanonicalForm::I(f) => vec![f.a1, f.b1, f.a1_tilde],
            CanonicalForm::II(f) => vec![f.a2, f.b21, f.b22, f.a2_tilde],
            CanonicalForm::III(f) => vec![f.a31, f.a32, f.b3, f.a31_tilde],
        }
    }

    pub fn field(&self) -> PiecewiseField {
        match self {
            CanonicalForm::I(f) => f.field(),
            CanonicalForm::II(f) => f.field(),
            CanonicalForm::III(f) => f.field(),
        }
    }
}

/// The change of variables `X = x_scale·x`, `τ = time_scale·t` (with `y`
/// unchanged) that maps the input field onto its canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub x_scale: f64,
    pub time_scale: f64,
    /// Coefficients of the input field before reduction, in canonical order.
    pub original: [f64; 6],
}

impl TransformRecord {
    /// Undo the reduction: express the canonical field in the original
    /// coordinates and time.
    pub fn pull_back(&self, canonical: &PiecewiseField) -> PiecewiseField {
        let zone = |z: &ZoneField| {
            ZoneField::new(
                z.p.rescale_vars(self.x_scale, 1.0).scale(self.time_scale / self.x_scale),
                z.q.rescale_vars(self.x_scale, 1.0).scale(self.time_scale),
            )
        };
        PiecewiseField::new(zone(&canonical.upper), zone(&canonical.lower))
    }
}

/// Matches a zone against the raw shapes (a), (b), (c).
#[derive(Debug, Clone, Copy, PartialEq)]
enum RawShape {
    /// `ẋ = a y², ẏ = b x`
    A { a: f64, b: f64 },
    /// `ẋ = a x y, ẏ = b1 x + b2 y²`
    B { a: f64, b1: f64, b2: f64 },
    /// `ẋ = a1 x + a2 y², ẏ = b y`
    C { a1: f64, a2: f64, b: f64 },
}

fn only(p: &BiPoly, allowed: &[(u32, u32)]) -> bool {
    p.terms().all(|(i, j, _)| allowed.contains(&(i, j)))
}

fn classify_zone(z: &ZoneField) -> Result<RawShape> {
    let (p, q) = (z.p.prune(), z.q.prune());
    let w = minimal_weight_vector(&p, &q)?
        .ok_or_else(|| Error::NotQuasiHomogeneous(format!("P = {p}, Q = {q}")))?;
    if z.degree() != 2 || w.is_homogeneous() {
        return Err(Error::NotQuadraticNonHomogeneous(format!(
            "degree {} with weight vector ({}, {}, {})",
            z.degree(),
            w.s1,
            w.s2,
            w.d
        )));
    }
    let shape = if only(&p, &[(0, 2)]) && only(&q, &[(1, 0)]) {
        RawShape::A { a: p.coeff(0, 2), b: q.coeff(1, 0) }
    } else if only(&p, &[(1, 1)]) && only(&q, &[(1, 0), (0, 2)]) {
        RawShape::B { a: p.coeff(1, 1), b1: q.coeff(1, 0), b2: q.coeff(0, 2) }
    } else if only(&p, &[(1, 0), (0, 2)]) && only(&q, &[(0, 1)]) {
        RawShape::C { a1: p.coeff(1, 0), a2: p.coeff(0, 2), b: q.coeff(0, 1) }
    } else {
        return Err(Error::NotQuadraticNonHomogeneous(format!(
            "P = {p}, Q = {q} matches none of the reduced shapes"
        )));
    };
    Ok(shape)
}

fn divisor(v: f64, name: &'static str) -> Result<f64> {
    if v.abs() < STRUCTURAL_ZERO {
        Err(Error::ZeroParameter(name))
    } else {
        Ok(v)
    }
}

/// Reduce a piecewise quadratic quasi-homogeneous non-homogeneous field to
/// one of the forms (I)–(III).
///
/// The lower zone is normalized to unit coefficients: form (I) rescales time
/// by `b̃1`; form (II) sets `X = b̃21 x / b̃22` and rescales time by `b̃22`;
/// form (III) sets `X = b̃3 x / ã32` and rescales time by `b̃3`.
pub fn canonicalize(f: &PiecewiseField) -> Result<(CanonicalForm, TransformRecord)> {
    let upper = classify_zone(&f.upper)?;
    let lower = classify_zone(&f.lower)?;
    match (upper, lower) {
        (RawShape::A { a, b }, RawShape::A { a: at, b: bt }) => {
            let s = divisor(bt, "b1_tilde")?;
            let form = FormI::new(a / s, b / s, at / s)?;
            let rec = TransformRecord { x_scale: 1.0, time_scale: s, original: [a, b, at, bt, 0.0, 0.0] };
            Ok((CanonicalForm::I(form), rec))
        }
        (RawShape::B { a, b1, b2 }, RawShape::B { a: at, b1: b1t, b2: b2t }) => {
            let s = divisor(b2t, "b22_tilde")?;
            let r = divisor(b1t, "b21_tilde")?;
            let form = FormII::new(a / s, b1 / r, b2 / s, at / s)?;
            let rec = TransformRecord { x_scale: r / s, time_scale: s, original: [a, b1, b2, at, b1t, b2t] };
            Ok((CanonicalForm::II(form), rec))
        }
        (RawShape::C { a1, a2, b }, RawShape::C { a1: a1t, a2: a2t, b: bt }) => {
            let s = divisor(bt, "b3_tilde")?;
            let r = divisor(a2t, "a32_tilde")?;
            let form = FormIII::new(a1 / s, a2 / r, b / s, a1t / s)?;
            let rec = TransformRecord { x_scale: s / r, time_scale: s, original: [a1, a2, b, a1t, a2t, bt] };
            Ok((CanonicalForm::III(form), rec))
        }
        _ => Err(Error::NotQuadraticNonHomogeneous("upper and lower zones have different shapes".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zone(p: &[(u32, u32, f64)], q: &[(u32, u32, f64)]) -> ZoneField {
        ZoneField::new(BiPoly::from_terms(p.iter().copied()), BiPoly::from_terms(q.iter().copied()))
    }

    fn assert_same_field(a: &PiecewiseField, b: &PiecewiseField) {
        for &(x, y) in &[(0.3, 0.7), (-1.2, 2.0), (2.5, -0.4), (-0.9, -1.9), (1.0, 0.0)] {
            let (u, v) = (a.eval(x, y), b.eval(x, y));
            for k in 0..2 {
                assert!((u[k] - v[k]).abs() <= 1e-12 * u[k].abs().max(1.0), "at ({x},{y}): {u:?} vs {v:?}");
            }
        }
    }

    #[test]
    fn shape_a_divides_by_lower_b() {
        let f = PiecewiseField::new(zone(&[(0, 2, 2.0)], &[(1, 0, 4.0)]), zone(&[(0, 2, 6.0)], &[(1, 0, 2.0)]));
        let (form, rec) = canonicalize(&f).unwrap();
        assert_eq!(form, CanonicalForm::I(FormI { a1: 1.0, b1: 2.0, a1_tilde: 3.0 }));
        assert_same_field(&rec.pull_back(&form.field()), &f);
    }

    #[test]
    fn shape_a_with_unit_divisor_is_identity() {
        let f = FormI::new(-1.0, 1.0, 1.0).unwrap().field();
        let (form, rec) = canonicalize(&f).unwrap();
        assert_eq!(form.params(), vec![-1.0, 1.0, 1.0]);
        assert_eq!((rec.x_scale, rec.time_scale), (1.0, 1.0));
    }

    #[test]
    fn shape_b_rescales_x_and_time() {
        let f = PiecewiseField::new(
            zone(&[(1, 1, 3.0)], &[(1, 0, -2.0), (0, 2, 5.0)]),
            zone(&[(1, 1, 1.5)], &[(1, 0, 4.0), (0, 2, -0.5)]),
        );
        let (form, rec) = canonicalize(&f).unwrap();
        let CanonicalForm::II(p) = form else { panic!("{form:?}") };
        assert_eq!((p.a2, p.b21, p.b22, p.a2_tilde), (3.0 / -0.5, -2.0 / 4.0, 5.0 / -0.5, 1.5 / -0.5));
        assert_same_field(&rec.pull_back(&form.field()), &f);
    }

    #[test]
    fn shape_c_unit_divisors_unchanged() {
        let f = PiecewiseField::new(
            zone(&[(1, 0, -1.0), (0, 2, 2.0)], &[(0, 1, 3.0)]),
            zone(&[(1, 0, 0.5), (0, 2, 1.0)], &[(0, 1, 1.0)]),
        );
        let (form, _) = canonicalize(&f).unwrap();
        assert_eq!(form, CanonicalForm::III(FormIII { a31: -1.0, a32: 2.0, b3: 3.0, a31_tilde: 0.5 }));
    }

    #[test]
    fn shape_c_general() {
        let f = PiecewiseField::new(
            zone(&[(1, 0, -1.0), (0, 2, 2.0)], &[(0, 1, 3.0)]),
            zone(&[(1, 0, 0.5), (0, 2, -4.0)], &[(0, 1, 0.25)]),
        );
        let (form, rec) = canonicalize(&f).unwrap();
        assert_same_field(&rec.pull_back(&form.field()), &f);
    }

    #[test]
    fn rejects_bad_inputs() {
        let homog = PiecewiseField::new(zone(&[(2, 0, 1.0)], &[(1, 1, 1.0)]), zone(&[(2, 0, 1.0)], &[(1, 1, 1.0)]));
        assert!(matches!(canonicalize(&homog), Err(Error::NotQuadraticNonHomogeneous(_))));
        let not_qh = PiecewiseField::new(
            zone(&[(0, 2, 1.0), (1, 0, 1.0)], &[(1, 0, 1.0)]),
            zone(&[(0, 2, 1.0)], &[(1, 0, 1.0)]),
        );
        assert!(matches!(canonicalize(&not_qh), Err(Error::NotQuasiHomogeneous(_))));
        let mixed = PiecewiseField::new(zone(&[(0, 2, 1.0)], &[(1, 0, 1.0)]), FormIII::new(1.0, 1.0, 1.0, 1.0).unwrap().field().lower);
        assert!(matches!(canonicalize(&mixed), Err(Error::NotQuadraticNonHomogeneous(_))));
        let zero = PiecewiseField::new(zone(&[(0, 2, 1.0)], &[(1, 0, 1.0)]), zone(&[], &[(1, 0, 1.0)]));
        assert_eq!(canonicalize(&zero), Err(Error::ZeroField));
    }

    #[test]
    fn missing_shape_b_term_is_zero_parameter() {
        // ẏ = b̃21 x only in the lower zone: b̃22 = 0 leaves the field linear
        // in y, which is no longer of shape (b) with nonzero parameters.
        let f = PiecewiseField::new(
            zone(&[(1, 1, 1.0)], &[(1, 0, 1.0), (0, 2, 1.0)]),
            zone(&[(1, 1, 1.0)], &[(1, 0, 1.0), (0, 2, 1e-16)]),
        );
        assert_eq!(canonicalize(&f), Err(Error::ZeroParameter("b22_tilde")));
    }

    #[test]
    fn form_json() {
        let form = CanonicalForm::I(FormI::new(-1.0, 1.0, 1.0).unwrap());
        let s = serde_json::to_string(&form).unwrap();
        assert_eq!(s, r#"{"variant":"I","params":{"a1":-1.0,"b1":1.0,"a1_tilde":1.0}}"#);
        assert_eq!(serde_json::from_str::<CanonicalForm>(&s).unwrap(), form);
    }

    #[test]
    fn zero_parameter_rejected() {
        assert_eq!(FormII::new(1.0, 0.0, 1.0, 1.0), Err(Error::ZeroParameter("b21")));
        assert!(CanonicalForm::from_params(Variant::I, &[1.0, 2.0]).is_err());
    }
}
