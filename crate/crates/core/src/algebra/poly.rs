use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::upoly::UPoly;

/// Coefficients with magnitude below this are structural zeros when shapes
/// are matched.
pub const STRUCTURAL_ZERO: f64 = 1e-14;

/// Sparse bivariate polynomial `Σ c_ij x^i y^j` with real coefficients.
///
/// Stored coefficients are never zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), f64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: u32, j: u32, c: f64) -> Self {
        Self::from_terms([(i, j, c)])
    }

    /// Builds a polynomial from `(i, j, c)` triples; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, f64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        let entry = self.terms.entry((i, j)).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|(&(i, j), &c)| c * x.powi(i as i32) * y.powi(j as i32)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        if s == 0.0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&k, &c)| (k, c * s)).collect() }
    }

    /// `P(sx·x, sy·y)`.
    pub fn rescale_vars(&self, sx: f64, sy: f64) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (i, j, c * sx.powi(i as i32) * sy.powi(j as i32))))
    }

    /// Drops coefficients below `STRUCTURAL_ZERO` in magnitude.
    pub fn prune(&self) -> Self {
        Self::from_terms(self.terms().filter(|t| t.2.abs() >= STRUCTURAL_ZERO))
    }

    /// Restriction to the x-axis, `P(x, 0)`.
    pub fn on_x_axis(&self) -> UPoly {
        let n = self.terms.keys().filter(|k| k.1 == 0).map(|k| k.0).max();
        match n {
            None => UPoly::default(),
            Some(n) => {
                let mut c = vec![0.0; n as usize + 1];
                for (i, j, v) in self.terms() {
                    if j == 0 {
                        c[i as usize] = v;
                    }
                }
                UPoly::new(c)
            }
        }
    }

    /// True when all exponents lie on one weighted-degree line
    /// `s1·i + s2·j = target`.
    pub fn is_weighted_homogeneous(&self, s1: u32, s2: u32, target: i64) -> bool {
        self.terms.keys().all(|&(i, j)| (s1 * i + s2 * j) as i64 == target)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(-1.0)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, j, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            match i {
                0 => {}
                1 => write!(f, "·x")?,
                _ => write!(f, "·x^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "·y")?,
                _ => write!(f, "·y^{j}")?,
            }
        }
        Ok(())
    }
}

// JSON form: [[i, j, c], ...]
impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms())
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(u32, u32, f64)> = Vec::deserialize(d)?;
        if let Some(bad) = raw.iter().find(|t| !t.2.is_finite()) {
            return Err(serde::de::Error::custom(format!("non-finite coefficient for ({}, {})", bad.0, bad.1)));
        }
        Ok(Self::from_terms(raw))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Zone {
    /// `y >= 0`
    Upper,
    /// `y < 0`
    Lower,
}

impl Zone {
    pub fn of(y: f64) -> Self {
        if y >= 0.0 {
            Zone::Upper
        } else {
            Zone::Lower
        }
    }

    pub fn other(self) -> Self {
        match self {
            Zone::Upper => Zone::Lower,
            Zone::Lower => Zone::Upper,
        }
    }
}

/// A polynomial vector field `(ẋ, ẏ) = (P, Q)` on one zone.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ZoneField {
    #[serde(rename = "P")]
    pub p: BiPoly,
    #[serde(rename = "Q")]
    pub q: BiPoly,
}

impl ZoneField {
    pub fn new(p: BiPoly, q: BiPoly) -> Self {
        Self { p, q }
    }

    pub fn eval(&self, x: f64, y: f64) -> [f64; 2] {
        [self.p.eval(x, y), self.q.eval(x, y)]
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().unwrap_or(0).max(self.q.degree().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { p: self.p.scale(s), q: self.q.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { p: &self.p + &other.p, q: &self.q + &other.q }
    }
}

/// Two polynomial fields glued along the x-axis; `upper` governs `y >= 0`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseField {
    pub upper: ZoneField,
    pub lower: ZoneField,
}

impl PiecewiseField {
    pub fn new(upper: ZoneField, lower: ZoneField) -> Self {
        Self { upper, lower }
    }

    pub fn zone(&self, zone: Zone) -> &ZoneField {
        match zone {
            Zone::Upper => &self.upper,
            Zone::Lower => &self.lower,
        }
    }

    /// Vector field value, zone chosen by the sign of `y`.
    pub fn eval(&self, x: f64, y: f64) -> [f64; 2] {
        self.zone(Zone::of(y)).eval(x, y)
    }

    pub fn degree(&self) -> u32 {
        self.upper.degree().max(self.lower.degree())
    }

    /// Same field with both zones multiplied by positive or negative constants.
    pub fn time_rescaled(&self, upper: f64, lower: f64) -> Self {
        Self { upper: self.upper.scale(upper), lower: self.lower.scale(lower) }
    }
}
