//! Crossing and sliding decomposition of the switching line `y = 0`.
//!
//! With `F(x, y) = y` the product of normal components is
//! `σ(x) = Q⁺(x, 0)·Q⁻(x, 0)`. The crossing set is `{σ > 0}`, the sliding
//! set its complement, and singular sliding points are the sliding points
//! where `Q⁻(x, 0) - Q⁺(x, 0) = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::PiecewiseField;
use crate::numeric::upoly::UPoly;

const ROOT_TOL: f64 = 1e-13;
/// Relative distance at which a computed root is identified with a sliding
/// boundary point.
const SNAP_TOL: f64 = 1e-9;

/// A connected piece of the x-axis. `None` endpoints are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Self { lo: Some(x), hi: Some(x), lo_closed: true, hi_closed: true }
    }

    pub fn whole() -> Self {
        Self { lo: None, hi: None, lo_closed: false, hi_closed: false }
    }

    pub fn as_point(&self) -> Option<f64> {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = match self.lo {
            None => true,
            Some(a) => x > a || (self.lo_closed && x == a),
        };
        let below = match self.hi {
            None => true,
            Some(b) => x < b || (self.hi_closed && x == b),
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_point() {
            return write!(f, "{{{p}}}");
        }
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        match self.lo {
            None => write!(f, "(-inf, ")?,
            Some(a) => write!(f, "{l}{a}, ")?,
        }
        match self.hi {
            None => write!(f, "+inf)"),
            Some(b) => write!(f, "{b}{r}"),
        }
    }
}

/// Union of disjoint, sorted, non-adjacent pieces of the x-axis.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AxisSet {
    pub pieces: Vec<Interval>,
}

/// Named shapes an axis set can take.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum SetShape {
    Empty,
    Whole,
    AxisMinusPoints(Vec<f64>),
    Points(Vec<f64>),
    Intervals,
}

impl AxisSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn whole() -> Self {
        Self { pieces: vec![Interval::whole()] }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.pieces == [Interval::whole()]
    }

    /// Isolated points of the set.
    pub fn points(&self) -> Vec<f64> {
        self.pieces.iter().filter_map(Interval::as_point).collect()
    }

    pub fn shape(&self) -> SetShape {
        if self.is_empty() {
            return SetShape::Empty;
        }
        if self.is_whole() {
            return SetShape::Whole;
        }
        if self.pieces.iter().all(|p| p.as_point().is_some()) {
            return SetShape::Points(self.points());
        }
        // ℝ minus finitely many points: open pieces that chain end to end
        let first = self.pieces.first().unwrap();
        let last = self.pieces.last().unwrap();
        let chained = first.lo.is_none()
            && last.hi.is_none()
            && self.pieces.iter().all(|p| !p.lo_closed && !p.hi_closed)
            && self.pieces.windows(2).all(|w| w[0].hi == w[1].lo);
        if chained {
            return SetShape::AxisMinusPoints(self.pieces.iter().skip(1).filter_map(|p| p.lo).collect());
        }
        SetShape::Intervals
    }

    /// Merges consecutive included cells of an ordered cell decomposition.
    fn from_cells(cells: &[(Interval, bool)]) -> Self {
        let mut pieces: Vec<Interval> = Vec::new();
        let mut run: Option<Interval> = None;
        for &(cell, included) in cells {
            match (included, run.as_mut()) {
                (true, None) => run = Some(cell),
                (true, Some(r)) => {
                    r.hi = cell.hi;
                    r.hi_closed = cell.hi_closed;
                }
                (false, _) => {
                    if let Some(r) = run.take() {
                        pieces.push(r);
                    }
                }
            }
        }
        pieces.extend(run);
        Self { pieces }
    }
}

impl fmt::Display for AxisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape() {
            SetShape::Empty => write!(f, "empty"),
            SetShape::Whole => write!(f, "whole axis"),
            SetShape::AxisMinusPoints(pts) => {
                let list: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
                write!(f, "axis minus {{{}}}", list.join(", "))
            }
            _ => {
                let list: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", list.join(" ∪ "))
            }
        }
    }
}

/// Solutions of `Q⁻(x,0) = Q⁺(x,0)` on the sliding set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SingularSet {
    Points(Vec<f64>),
    /// The equation holds identically and the sliding set is the whole axis.
    WholeAxis,
    /// The equation holds identically on a sliding set made of intervals.
    Segments(AxisSet),
}

impl SingularSet {
    pub fn contains(&self, x: f64) -> bool {
        match self {
            SingularSet::Points(p) => p.contains(&x),
            SingularSet::WholeAxis => true,
            SingularSet::Segments(s) => s.contains(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwitchingAnalysis {
    pub crossing: AxisSet,
    pub sliding: AxisSet,
    pub singular_points: SingularSet,
    /// Singular sliding points at which both zone fields vanish.
    pub boundary_equilibria: SingularSet,
}

/// `σ(x) = Q⁺(x,0)·Q⁻(x,0)`.
pub fn sigma_at(f: &PiecewiseField, x: f64) -> f64 {
    f.upper.q.eval(x, 0.0) * f.lower.q.eval(x, 0.0)
}

/// `σ` as a univariate polynomial.
pub fn sigma_poly(f: &PiecewiseField) -> UPoly {
    f.upper.q.on_x_axis().mul(&f.lower.q.on_x_axis())
}

fn snap(x: f64, to: &[f64]) -> f64 {
    to.iter().copied().find(|&r| (x - r).abs() <= SNAP_TOL * r.abs().max(1.0)).unwrap_or(x)
}

fn common_zeros(polys: &[UPoly], sliding: &AxisSet, sliding_points: &[f64]) -> SingularSet {
    let nonzero: Vec<&UPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return if sliding.is_whole() {
            SingularSet::WholeAxis
        } else if sliding.pieces.iter().all(|p| p.as_point().is_some()) {
            SingularSet::Points(sliding.points())
        } else {
            SingularSet::Segments(sliding.clone())
        };
    };
    let pts = first
        .real_roots(ROOT_TOL)
        .into_iter()
        .map(|r| snap(r.value, sliding_points))
        .filter(|&x| sliding.contains(x))
        .filter(|&x| {
            nonzero.iter().all(|p| {
                let scale: f64 = p.coeffs().iter().rev().fold(0.0, |a, c| a * x.abs() + c.abs());
                p.eval(x).abs() <= 1e-10 * scale.max(1e-300)
            })
        })
        .collect();
    SingularSet::Points(pts)
}

pub fn switching_analysis(f: &PiecewiseField) -> SwitchingAnalysis {
    let sigma = sigma_poly(f);
    let (crossing, sliding, roots) = if sigma.is_zero() {
        (AxisSet::empty(), AxisSet::whole(), Vec::new())
    } else {
        let roots: Vec<f64> = sigma.real_roots(ROOT_TOL).into_iter().map(|r| r.value).collect();
        let mut cells: Vec<(Interval, f64)> = Vec::new();
        let mut lo: Option<f64> = None;
        for &r in &roots {
            let sample = match lo {
                None => r - 1.0,
                Some(a) => 0.5 * (a + r),
            };
            cells.push((Interval { lo, hi: Some(r), lo_closed: false, hi_closed: false }, sigma.eval(sample)));
            cells.push((Interval::point(r), 0.0));
            lo = Some(r);
        }
        let sample = lo.map_or(0.0, |a| a + 1.0);
        cells.push((Interval { lo, hi: None, lo_closed: false, hi_closed: false }, sigma.eval(sample)));
        let crossing: Vec<(Interval, bool)> = cells.iter().map(|&(c, s)| (c, s > 0.0)).collect();
        let sliding: Vec<(Interval, bool)> = cells.iter().map(|&(c, s)| (c, s <= 0.0)).collect();
        (AxisSet::from_cells(&crossing), AxisSet::from_cells(&sliding), roots)
    };

    let diff = f.lower.q.on_x_axis();
    let up = f.upper.q.on_x_axis();
    let diff = UPoly::new({
        let n = diff.coeffs().len().max(up.coeffs().len());
        (0..n)
            .map(|k| diff.coeffs().get(k).copied().unwrap_or(0.0) - up.coeffs().get(k).copied().unwrap_or(0.0))
            .collect()
    });
    let singular_points = common_zeros(&[diff], &sliding, &roots);

    let axis: Vec<UPoly> = [&f.upper.p, &f.upper.q, &f.lower.p, &f.lower.q].iter().map(|p| p.on_x_axis()).collect();
    let boundary_equilibria = match &singular_points {
        SingularSet::Points(pts) => {
            let eq = pts.iter().copied().filter(|&x| axis.iter().all(|p| p.eval(x).abs() <= 1e-12)).collect();
            SingularSet::Points(eq)
        }
        SingularSet::WholeAxis => common_zeros(&axis, &AxisSet::whole(), &roots),
        SingularSet::Segments(s) => common_zeros(&axis, s, &roots),
    };

    SwitchingAnalysis { crossing, sliding, singular_points, boundary_equilibria }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BiPoly, FormI, FormII, FormIII, ZoneField};

    #[test]
    fn sigma_values() {
        let f = FormI::new(-1.0, 1.0, 1.0).unwrap().field();
        assert_eq!(sigma_at(&f, 2.0), 4.0);
        assert_eq!(sigma_at(&f, 0.0), 0.0);
        let g = FormII::new(1.0, -1.0, 1.0, 1.0).unwrap().field();
        assert_eq!(sigma_at(&g, 3.0), -9.0);
    }

    #[test]
    fn form_i_positive_b1() {
        let a = switching_analysis(&FormI::new(-1.0, 1.0, 1.0).unwrap().field());
        assert_eq!(a.crossing.shape(), SetShape::AxisMinusPoints(vec![0.0]));
        assert_eq!(a.sliding.shape(), SetShape::Points(vec![0.0]));
        assert_eq!(a.singular_points, SingularSet::Points(vec![0.0]));
        assert_eq!(a.boundary_equilibria, SingularSet::Points(vec![0.0]));
    }

    #[test]
    fn form_i_negative_b1() {
        let a = switching_analysis(&FormI::new(-1.0, -1.0, 1.0).unwrap().field());
        assert_eq!(a.crossing.shape(), SetShape::Empty);
        assert_eq!(a.sliding.shape(), SetShape::Whole);
        assert_eq!(a.singular_points, SingularSet::Points(vec![0.0]));
    }

    #[test]
    fn form_iii_whole_axis() {
        let a = switching_analysis(&FormIII::new(1.0, -2.0, 0.5, 3.0).unwrap().field());
        assert_eq!(a.crossing.shape(), SetShape::Empty);
        assert_eq!(a.sliding.shape(), SetShape::Whole);
        assert_eq!(a.singular_points, SingularSet::WholeAxis);
        assert_eq!(a.boundary_equilibria, SingularSet::Points(vec![0.0]));
    }

    #[test]
    fn form_i_with_unit_b1_still_singular_only_at_origin() {
        // Q⁻ - Q⁺ vanishes identically, but the sliding set is just {0}
        let a = switching_analysis(&FormI::new(-1.0, 1.0, 2.0).unwrap().field());
        assert_eq!(a.singular_points, SingularSet::Points(vec![0.0]));
    }

    #[test]
    fn general_interval_sets() {
        // Q⁺(x,0) = x - 1, Q⁻(x,0) = x + 1: σ = x² - 1, sliding [-1, 1]
        let f = PiecewiseField::new(
            ZoneField::new(BiPoly::monomial(0, 0, 1.0), BiPoly::from_terms([(1, 0, 1.0), (0, 0, -1.0)])),
            ZoneField::new(BiPoly::monomial(0, 0, 1.0), BiPoly::from_terms([(1, 0, 1.0), (0, 0, 1.0)])),
        );
        let a = switching_analysis(&f);
        assert_eq!(a.sliding.shape(), SetShape::Intervals);
        assert_eq!(a.sliding.pieces.len(), 1);
        let p = a.sliding.pieces[0];
        assert!(p.lo_closed && p.hi_closed);
        assert!((p.lo.unwrap() + 1.0).abs() < 1e-12 && (p.hi.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(a.crossing.pieces.len(), 2);
        assert!(a.crossing.contains(5.0) && a.crossing.contains(-5.0) && !a.crossing.contains(0.0));
        // Q⁻ - Q⁺ = 2 never vanishes
        assert_eq!(a.singular_points, SingularSet::Points(vec![]));
        assert_eq!(a.sliding.to_string(), "[-1, 1]");
    }

    #[test]
    fn json_shape() {
        let a = switching_analysis(&FormI::new(-1.0, 1.0, 1.0).unwrap().field());
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v["singular_points"], serde_json::json!({"kind": "points", "value": [0.0]}));
        assert_eq!(v["crossing"]["pieces"][0]["lo"], serde_json::Value::Null);
    }
}
