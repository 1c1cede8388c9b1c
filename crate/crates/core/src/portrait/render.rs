//! SVG phase portraits on the compactified disk.
//!
//! A plane point `p` is drawn at `p / sqrt(s² + |p|²)` with `s = radius / 2`,
//! so the whole plane lands inside the unit disk and the boundary circle
//! stands for the equator of the Poincaré sphere.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chart::{to_plane, Chart};
use super::classify::{classify_case, infinity_equilibria, InfinityEquilibrium, Location};
use crate::algebra::{CanonicalForm, PiecewiseField, Variant, Zone};
use crate::error::{Error, Result};
use crate::filippov::{switching_analysis, Interval};
use crate::simulate::{integrate_with, IntegrateOptions, Trajectory};

const ESCAPE_RADIUS: f64 = 1e4;
const MAX_CROSSINGS: usize = 64;
/// Relative agreement of two returns to the same axis point that marks an
/// orbit as closed.
const CLOSE_TOL: f64 = 1e-6;
const CHART_Z: f64 = 0.05;
const CHART_SEEDS: usize = 8;
/// Drawn points closer than this many pixels are merged.
const MIN_PIXEL_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenderOptions {
    /// Seeds per side of the square seed grid.
    pub grid: usize,
    /// Half width of the seed grid `[-radius, radius]²`.
    pub radius: f64,
    /// Image width and height in pixels.
    pub size: u32,
    pub tmax: f64,
    pub tol: f64,
    /// Step budget per trajectory.
    pub max_steps: usize,
    /// Sample budget for the whole picture.
    pub budget: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { grid: 12, radius: 4.0, size: 600, tmax: 40.0, tol: 1e-9, max_steps: 20_000, budget: 4_000_000 }
    }
}

/// Grid seeds followed by seeds near each end of both axes.
pub fn seeds(opts: &RenderOptions) -> Vec<[f64; 2]> {
    let g = opts.grid;
    let r = opts.radius;
    let cell = 2.0 * r / g as f64;
    let coord = |i: usize| -r + cell * (i as f64 + 0.5);
    let mut out = Vec::with_capacity(g * g + 4 * CHART_SEEDS);
    for j in 0..g {
        // keep the middle row off the switching line
        let y = if 2 * j + 1 == g { 0.25 * cell } else { coord(j) };
        for i in 0..g {
            out.push([coord(i), y]);
        }
    }
    let us: Vec<f64> =
        (0..CHART_SEEDS).map(|k| -1.5 + 3.0 * k as f64 / (CHART_SEEDS - 1) as f64).collect();
    for (chart, sign) in [(Chart::U1, 1.0), (Chart::U1, -1.0), (Chart::U2, 1.0), (Chart::U2, -1.0)] {
        for &u in &us {
            // the V charts are the antipodes of the U charts
            let [x, y] = to_plane(chart, u, CHART_Z);
            out.push(match chart {
                Chart::U1 => [sign * x, y],
                _ => [x, sign * y],
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
struct Traced {
    points: Vec<[f64; 2]>,
    closed: bool,
}

fn closed_loop(traj: &Trajectory) -> Option<Vec<[f64; 2]>> {
    let cross: Vec<_> = traj.crossings().collect();
    for w in cross.windows(3) {
        let (a, b) = (w[0], w[2]);
        if (a.x - b.x).abs() <= CLOSE_TOL * a.x.abs().max(1.0) {
            let pts = traj.samples.iter().filter(|s| s.t >= a.t && s.t <= b.t).map(|s| [s.x, s.y]).collect();
            return Some(pts);
        }
    }
    None
}

fn trace(field: &PiecewiseField, seed: [f64; 2], opts: &RenderOptions) -> Traced {
    let base = IntegrateOptions {
        tmax: opts.tmax,
        tol: opts.tol,
        max_crossings: Some(MAX_CROSSINGS),
        escape_radius: Some(ESCAPE_RADIUS),
        max_steps: opts.max_steps,
        stop_on_budget: true,
        interior_samples: 3,
        ..IntegrateOptions::default()
    };
    // a seed whose integration fails outright contributes nothing
    let Ok(fwd) = integrate_with(field, seed, &base) else {
        return Traced { points: Vec::new(), closed: false };
    };
    if let Some(points) = closed_loop(&fwd) {
        return Traced { points, closed: true };
    }
    let mut points: Vec<[f64; 2]> = match integrate_with(field, seed, &IntegrateOptions { backward: true, ..base }) {
        Ok(b) => b.samples.iter().rev().skip(1).map(|s| [s.x, s.y]).collect(),
        Err(_) => Vec::new(),
    };
    points.extend(fwd.samples.iter().map(|s| [s.x, s.y]));
    Traced { points, closed: false }
}

struct Canvas {
    center: f64,
    scale: f64,
    s: f64,
}

impl Canvas {
    fn new(opts: &RenderOptions) -> Self {
        let size = opts.size as f64;
        Self { center: size / 2.0, scale: 0.45 * size, s: opts.radius / 2.0 }
    }

    fn disk(&self, p: [f64; 2]) -> [f64; 2] {
        let n = (self.s * self.s + p[0] * p[0] + p[1] * p[1]).sqrt();
        [p[0] / n, p[1] / n]
    }

    fn screen(&self, q: [f64; 2]) -> [f64; 2] {
        [self.center + self.scale * q[0], self.center - self.scale * q[1]]
    }

    fn project(&self, p: [f64; 2]) -> [f64; 2] {
        self.screen(self.disk(p))
    }

    /// Screen position of an axis point, `None` meaning an infinite end.
    fn axis(&self, x: Option<f64>, neg: bool) -> [f64; 2] {
        match x {
            Some(x) => self.project([x, 0.0]),
            None => self.screen([if neg { -1.0 } else { 1.0 }, 0.0]),
        }
    }

    fn path_data(&self, points: &[[f64; 2]], closed: bool) -> Option<String> {
        let mut kept: Vec<[f64; 2]> = Vec::with_capacity(points.len());
        for (k, p) in points.iter().enumerate() {
            let q = self.project(*p);
            let last = k + 1 == points.len();
            match kept.last() {
                Some(l) if !last && (q[0] - l[0]).hypot(q[1] - l[1]) < MIN_PIXEL_STEP => {}
                _ => kept.push(q),
            }
        }
        if kept.len() < 2 {
            return None;
        }
        let mut d = String::new();
        for (k, q) in kept.iter().enumerate() {
            let op = if k == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{}{op}{:.2} {:.2}", if k == 0 { "" } else { " " }, q[0], q[1]);
        }
        if closed {
            d.push_str(" Z");
        }
        Some(d)
    }
}

#[derive(Serialize)]
struct Metadata<'a> {
    variant: Variant,
    params: Vec<f64>,
    case_id: Option<u32>,
    signature: Option<&'a str>,
    has_center: bool,
    infinity: &'a [InfinityEquilibrium],
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const STYLE: &str = "\
.boundary{fill:none;stroke:#444;stroke-width:1.5}
.orbit{fill:none;stroke:#1f5fa8;stroke-width:0.8}
.closed{fill:none;stroke:#b03a2e;stroke-width:0.9}
.crossing{stroke:#222;stroke-width:1;stroke-dasharray:6 4}
.sliding{stroke:#d4880f;stroke-width:3}
.sliding-point{fill:#d4880f}
.infinity{fill:#fff;stroke:#000;stroke-width:1}";

fn infinity_marks(eq: &InfinityEquilibrium) -> Vec<[f64; 2]> {
    match (eq.location, eq.zone) {
        (Location::XAxisEnd, _) => vec![[1.0, 0.0], [-1.0, 0.0]],
        (Location::YAxisEnd, Zone::Upper) => vec![[0.0, 1.0]],
        (Location::YAxisEnd, Zone::Lower) => vec![[0.0, -1.0]],
        (Location::WholeEquator, _) => Vec::new(),
    }
}

fn kind_name<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

/// Renders the phase portrait of `form` as an SVG document.
pub fn render(form: &CanonicalForm, opts: &RenderOptions) -> Result<String> {
    if opts.grid == 0 || opts.size == 0 || !(opts.radius > 0.0) {
        return Err(Error::InvalidArgument("grid, size and radius must be positive".into()));
    }
    let field = form.field();
    let traced: Vec<Traced> = seeds(opts).par_iter().map(|&s| trace(&field, s, opts)).collect();
    let total: usize = traced.iter().map(|t| t.points.len()).sum();
    if total > opts.budget {
        return Err(Error::RenderBudgetExceeded(opts.budget));
    }

    let case = classify_case(form).ok();
    let infinity = infinity_equilibria(form);
    let meta = Metadata {
        variant: form.variant(),
        params: form.params(),
        case_id: case.as_ref().map(|c| c.case_id),
        signature: case.as_ref().map(|c| c.signature.as_str()),
        has_center: case.as_ref().is_some_and(|c| c.has_center),
        infinity: &infinity,
    };
    let meta = serde_json::to_string(&meta).map_err(|e| Error::InvalidArgument(e.to_string()))?;

    let cv = Canvas::new(opts);
    let c = cv.center;
    let rd = cv.scale;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    let _ = writeln!(svg, "<desc>{}</desc>", xml_escape(&meta));
    let _ = writeln!(svg, "<style type=\"text/css\">\n{STYLE}\n</style>");
    let _ = writeln!(svg, r#"<defs><clipPath id="disk"><circle cx="{c:.2}" cy="{c:.2}" r="{rd:.2}"/></clipPath></defs>"#);
    let _ = writeln!(svg, r#"<circle class="boundary" cx="{c:.2}" cy="{c:.2}" r="{rd:.2}"/>"#);
    let _ = writeln!(svg, r#"<g clip-path="url(#disk)">"#);

    let sw = switching_analysis(&field);
    let mut segment = |class: &str, iv: &Interval| {
        if let Some(x) = iv.as_point() {
            if class == "sliding" {
                let p = cv.project([x, 0.0]);
                let _ = writeln!(svg, r#"<circle class="sliding-point" cx="{:.2}" cy="{:.2}" r="3"/>"#, p[0], p[1]);
            }
            return;
        }
        let a = cv.axis(iv.lo, true);
        let b = cv.axis(iv.hi, false);
        let _ = writeln!(
            svg,
            r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            a[0], a[1], b[0], b[1]
        );
    };
    for iv in &sw.crossing.pieces {
        segment("crossing", iv);
    }
    for iv in &sw.sliding.pieces {
        segment("sliding", iv);
    }

    for t in &traced {
        if let Some(d) = cv.path_data(&t.points, t.closed) {
            let class = if t.closed { "closed" } else { "orbit" };
            let _ = writeln!(svg, r#"<path class="{class}" d="{d}"/>"#);
        }
    }
    let _ = writeln!(svg, "</g>");

    for eq in &infinity {
        for q in infinity_marks(eq) {
            let p = cv.screen(q);
            let _ = writeln!(
                svg,
                r#"<circle class="infinity" cx="{:.2}" cy="{:.2}" r="4"><title>{} {} {}</title></circle>"#,
                p[0],
                p[1],
                kind_name(&eq.zone),
                kind_name(&eq.location),
                kind_name(&eq.kind)
            );
        }
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FormI;

    fn form_i(a1: f64, b1: f64, at: f64) -> CanonicalForm {
        CanonicalForm::I(FormI::new(a1, b1, at).unwrap())
    }

    #[test]
    fn seed_layout() {
        let opts = RenderOptions::default();
        let s = seeds(&opts);
        assert_eq!(s.len(), 144 + 32);
        assert!(s.iter().all(|p| p[1] != 0.0));
        let odd = RenderOptions { grid: 5, ..opts };
        assert!(seeds(&odd).iter().all(|p| p[1] != 0.0));
    }

    #[test]
    fn center_has_closed_paths() {
        let svg = render(&form_i(-1.0, 1.0, 1.0), &RenderOptions::default()).unwrap();
        assert!(svg.matches(r#"class="closed""#).count() >= 5);
        assert!(svg.contains(r#""has_center":true"#));
        assert!(svg.contains(r#""case_id":4"#));
    }

    #[test]
    fn negative_b1_slides_everywhere() {
        let svg = render(&form_i(-1.0, -1.0, 1.0), &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches(r#"class="closed""#).count(), 0);
        assert!(!svg.contains(r#"class="crossing""#));
        assert!(svg.contains(r#"<line class="sliding" x1="30.00" y1="300.00""#));
    }

    #[test]
    fn budget() {
        let opts = RenderOptions { budget: 10, ..RenderOptions::default() };
        assert_eq!(render(&form_i(-1.0, 1.0, 1.0), &opts), Err(Error::RenderBudgetExceeded(10)));
    }
}
