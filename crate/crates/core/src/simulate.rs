//! Event-located integration of piecewise fields.
//!
//! Each zone field is integrated as a smooth polynomial system. When the
//! orbit reaches `y = 0` the hit is located on the dense output and, if the
//! point belongs to the crossing set, the integration continues in the other
//! zone from the located point. Any contact with the sliding set ends the
//! orbit.

use std::cell::Cell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FormI, PiecewiseField, Zone};
use crate::center::period_closed_form;
use crate::error::{Error, Result};
use crate::filippov::sigma_at;
use crate::melnikov::PerturbationSpec;
use crate::numeric::ode::{DenseStep, State, Stepper, StepperConfig};

/// Target accuracy of a located axis hit, `|y| <` this.
pub const EVENT_Y_TOL: f64 = 1e-12;
/// Field magnitude treated as an equilibrium.
pub const EQUILIBRIUM_TOL: f64 = 1e-12;
const DISPLACEMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    Crossing,
    SlidingContact,
    EquilibriumStop,
    BudgetStop,
    /// The orbit left the disk of the configured escape radius.
    Escape,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Crossing => "crossing",
            EventKind::SlidingContact => "sliding-contact",
            EventKind::EquilibriumStop => "equilibrium-stop",
            EventKind::BudgetStop => "budget-stop",
            EventKind::Escape => "escape",
        }
    }

    /// True for events that end the orbit.
    pub fn is_terminal(self) -> bool {
        self != EventKind::Crossing
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub kind: EventKind,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub events: Vec<Event>,
}

impl Trajectory {
    pub fn last(&self) -> Sample {
        *self.samples.last().expect("trajectory has at least its start point")
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(|e| e.kind == EventKind::Crossing)
    }

    /// The event that ended the orbit, if any.
    pub fn stop(&self) -> Option<&Event> {
        self.events.last().filter(|e| e.kind.is_terminal())
    }

    /// CSV with header `t,x,y,event`; event rows follow the sample they share
    /// a time with.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,event\n");
        let mut ev = self.events.iter().peekable();
        for s in &self.samples {
            let mut tag = "";
            if let Some(e) = ev.peek() {
                if e.t == s.t {
                    tag = e.kind.as_str();
                    ev.next();
                }
            }
            out.push_str(&format!("{:.12e},{:.12e},{:.12e},{tag}\n", s.t, s.x, s.y));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub tmax: f64,
    pub tol: f64,
    /// Integrate the time-reversed field.
    pub backward: bool,
    /// Zone to use when starting exactly on the axis; inferred from the
    /// field direction when `None`.
    pub start_zone: Option<Zone>,
    pub max_crossings: Option<usize>,
    pub escape_radius: Option<f64>,
    pub max_steps: usize,
    /// End with a budget-stop event instead of an error when the step budget
    /// runs out.
    pub stop_on_budget: bool,
    /// Extra dense-output samples inserted inside every accepted step.
    pub interior_samples: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            tmax: 100.0,
            tol: 1e-10,
            backward: false,
            start_zone: None,
            max_crossings: None,
            escape_radius: None,
            max_steps: 1_000_000,
            stop_on_budget: false,
            interior_samples: 0,
        }
    }
}

impl IntegrateOptions {
    pub fn new(tmax: f64, tol: f64) -> Self {
        Self { tmax, tol, ..Self::default() }
    }
}

/// Integrates `f` from `x0` for time `tmax` at tolerance `tol`.
pub fn integrate(f: &PiecewiseField, x0: [f64; 2], tmax: f64, tol: f64) -> Result<Trajectory> {
    integrate_with(f, x0, &IntegrateOptions::new(tmax, tol))
}

fn start_zone(f: &PiecewiseField, x0: [f64; 2], opts: &IntegrateOptions, dir: f64) -> Result<Zone> {
    if x0[1] != 0.0 {
        return Ok(Zone::of(x0[1]));
    }
    if let Some(z) = opts.start_zone {
        return Ok(z);
    }
    if sigma_at(f, x0[0]) <= 0.0 {
        return Err(Error::StartOnSliding { x: x0[0], y: x0[1] });
    }
    Ok(if dir * f.upper.q.eval(x0[0], 0.0) > 0.0 { Zone::Upper } else { Zone::Lower })
}

/// True when `y` has left the closed side of `zone` (the axis belongs to
/// both sides here so that a located hit counts as reached).
fn outside(zone: Zone, y: f64) -> bool {
    match zone {
        Zone::Upper => y < 0.0,
        Zone::Lower => y > 0.0,
    }
}

/// Time in `(ta, tb]` at which the dense output meets the axis, given that
/// `ta` is inside and `tb` outside.
fn locate(step: &DenseStep, zone: Zone, mut ta: f64, mut tb: f64) -> f64 {
    for _ in 0..200 {
        let tm = 0.5 * (ta + tb);
        if tm <= ta || tm >= tb {
            break;
        }
        let y = step.eval(tm)[1];
        if y.abs() < EVENT_Y_TOL {
            return tm;
        }
        if outside(zone, y) {
            tb = tm;
        } else {
            ta = tm;
        }
    }
    tb
}

pub fn integrate_with(f: &PiecewiseField, x0: [f64; 2], opts: &IntegrateOptions) -> Result<Trajectory> {
    if !(opts.tol > 0.0) || !(opts.tmax >= 0.0) {
        return Err(Error::InvalidArgument("tol must be positive and tmax nonnegative".into()));
    }
    let dir = if opts.backward { -1.0 } else { 1.0 };
    let zone = Cell::new(start_zone(f, x0, opts, dir)?);
    let rhs = |s: State| -> State {
        let [u, v] = f.zone(zone.get()).eval(s[0], s[1]);
        [dir * u, dir * v]
    };
    let mut cfg = StepperConfig::with_tol(opts.tol);
    cfg.max_steps = opts.max_steps;

    let mut traj = Trajectory::default();
    traj.samples.push(Sample { t: 0.0, x: x0[0], y: x0[1] });
    let stop = |traj: &mut Trajectory, t: f64, p: State, kind: EventKind| {
        traj.events.push(Event { t, x: p[0], y: p[1], kind });
    };

    let mut stepper = Stepper::new(rhs, 0.0, x0, cfg);
    let d = stepper.derivative();
    if d[0].hypot(d[1]) < EQUILIBRIUM_TOL {
        stop(&mut traj, 0.0, x0, EventKind::EquilibriumStop);
        return Ok(traj);
    }
    // Leaving the axis into the wrong side means immediate contact.
    if x0[1] == 0.0 && outside(zone.get(), d[1]) {
        stop(&mut traj, 0.0, x0, EventKind::SlidingContact);
        return Ok(traj);
    }

    let mut crossings = 0usize;
    while stepper.time() < opts.tmax {
        let step = match stepper.step(opts.tmax) {
            Ok(s) => s,
            Err(Error::StepBudgetExceeded(n)) => {
                if opts.stop_on_budget {
                    let s = traj.last();
                    stop(&mut traj, s.t, [s.x, s.y], EventKind::BudgetStop);
                    return Ok(traj);
                }
                return Err(Error::StepBudgetExceeded(n));
            }
            Err(e) => return Err(e),
        };
        let z = zone.get();

        // First probe point that has left the zone, checked on the interior
        // as well so a short excursion across the axis is not stepped over.
        const PROBES: usize = 4;
        let mut hit = None;
        let mut prev = step.t0;
        for k in 1..=PROBES {
            let t = step.t0 + (step.t1 - step.t0) * k as f64 / PROBES as f64;
            let y = if k == PROBES { step.y1[1] } else { step.eval(t)[1] };
            if outside(z, y) {
                hit = Some(locate(&step, z, prev, t));
                break;
            }
            prev = t;
        }

        let emit_interior = |traj: &mut Trajectory, t_end: f64| {
            for k in 1..=opts.interior_samples {
                let t = step.t0 + (t_end - step.t0) * k as f64 / (opts.interior_samples + 1) as f64;
                if t > traj.last().t && t < t_end {
                    let p = step.eval(t);
                    traj.samples.push(Sample { t, x: p[0], y: p[1] });
                }
            }
        };

        if let Some(tc) = hit {
            let xc = step.eval(tc)[0];
            emit_interior(&mut traj, tc);
            if tc > traj.last().t {
                traj.samples.push(Sample { t: tc, x: xc, y: 0.0 });
            }
            if sigma_at(f, xc) > 0.0 {
                stop(&mut traj, tc, [xc, 0.0], EventKind::Crossing);
                crossings += 1;
                zone.set(z.other());
                stepper.reset(tc, [xc, 0.0]);
                if opts.max_crossings.is_some_and(|m| crossings >= m) {
                    return Ok(traj);
                }
                continue;
            }
            stop(&mut traj, tc, [xc, 0.0], EventKind::SlidingContact);
            return Ok(traj);
        }

        emit_interior(&mut traj, step.t1);
        let (t, p) = (step.t1, step.y1);
        traj.samples.push(Sample { t, x: p[0], y: p[1] });

        let v = stepper.derivative();
        if v[0].hypot(v[1]) < EQUILIBRIUM_TOL {
            stop(&mut traj, t, p, EventKind::EquilibriumStop);
            return Ok(traj);
        }
        // Approach to the axis that is only asymptotic in time.
        if p[1].abs() < EVENT_Y_TOL && p[1] * v[1] <= 0.0 && sigma_at(f, p[0]) <= 0.0 {
            stop(&mut traj, t, p, EventKind::SlidingContact);
            return Ok(traj);
        }
        if opts.escape_radius.is_some_and(|r| p[0].hypot(p[1]) > r) {
            stop(&mut traj, t, p, EventKind::Escape);
            return Ok(traj);
        }
    }
    Ok(traj)
}

/// Signed change of the level `h = b1 x²` after one revolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplacementSample {
    pub h: f64,
    pub epsilon: f64,
    pub d: f64,
}

/// One revolution of `form + ε·pert` from `A = (√(h/b1), 0)`.
///
/// At first order `d = -2ε·M(h)`.
pub fn displacement(form: &FormI, pert: &PerturbationSpec, h: f64, eps: f64) -> Result<DisplacementSample> {
    displacement_with_tol(form, pert, h, eps, DISPLACEMENT_TOL)
}

pub fn displacement_with_tol(
    form: &FormI,
    pert: &PerturbationSpec,
    h: f64,
    eps: f64,
    tol: f64,
) -> Result<DisplacementSample> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("level h = {h} must be positive")));
    }
    let r = (h / form.b1).sqrt();
    let period = period_closed_form(form, r)?.period;
    let f = pert.perturbed_field(form, eps);
    let opts = IntegrateOptions {
        tmax: 10.0 * period,
        tol,
        start_zone: Some(Zone::Upper),
        max_crossings: Some(2),
        escape_radius: Some(1e3 * r.max(1.0)),
        ..IntegrateOptions::default()
    };
    let traj = match integrate_with(&f, [r, 0.0], &opts) {
        Ok(t) => t,
        Err(Error::StepBudgetExceeded(_)) | Err(Error::IntegrationFailure(_)) => return Err(Error::NoReturn { h }),
        Err(e) => return Err(e),
    };
    let back = traj.crossings().nth(1).ok_or(Error::NoReturn { h })?;
    if back.x <= 0.0 {
        return Err(Error::NoReturn { h });
    }
    Ok(DisplacementSample { h, epsilon: eps, d: form.b1 * back.x * back.x - h })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleScan {
    pub zeros: Vec<f64>,
    /// Grid points where the orbit did not return.
    pub skipped: usize,
}

/// Relative size below which a displacement is indistinguishable from
/// integration error.
const DISPLACEMENT_FLOOR: f64 = 1e-9;

/// Zeros of the displacement map on a log grid over `h_range`, refined by
/// bisection to `1e-6` in `h`.
pub fn find_limit_cycles(
    form: &FormI,
    pert: &PerturbationSpec,
    eps: f64,
    h_range: (f64, f64),
    grid: usize,
) -> Result<CycleScan> {
    let (lo, hi) = h_range;
    if !(lo > 0.0 && hi > lo && grid >= 2) {
        return Err(Error::InvalidArgument("need 0 < h_lo < h_hi and grid >= 2".into()));
    }
    if !form.is_center() {
        return Err(Error::NotACenter);
    }
    if eps == 0.0 || pert.is_zero() {
        return Ok(CycleScan { zeros: Vec::new(), skipped: 0 });
    }
    let ratio = (hi / lo).ln();
    let hs: Vec<f64> = (0..grid).map(|k| lo * (ratio * k as f64 / (grid - 1) as f64).exp()).collect();
    let sign = |h: f64, d: f64| -> i8 {
        if d.abs() <= DISPLACEMENT_FLOOR * h.max(1.0) {
            0
        } else if d > 0.0 {
            1
        } else {
            -1
        }
    };
    let samples: Vec<Option<i8>> =
        hs.par_iter().map(|&h| displacement(form, pert, h, eps).ok().map(|s| sign(h, s.d))).collect();
    let skipped = samples.iter().filter(|s| s.is_none()).count();

    let valid: Vec<(f64, i8)> = hs.iter().zip(&samples).filter_map(|(&h, s)| s.map(|s| (h, s))).collect();
    let brackets: Vec<(f64, f64, i8)> =
        valid.windows(2).filter(|w| w[0].1 * w[1].1 < 0).map(|w| (w[0].0, w[1].0, w[0].1)).collect();
    let zeros: Vec<f64> = brackets
        .par_iter()
        .map(|&(mut a, mut b, sa)| {
            while b - a > 1e-6 {
                let m = 0.5 * (a + b);
                match displacement(form, pert, m, eps).map(|s| sign(m, s.d)) {
                    Ok(s) if s == sa => a = m,
                    Ok(s) if s != 0 => b = m,
                    Ok(_) => return m,
                    Err(_) => break,
                }
            }
            0.5 * (a + b)
        })
        .collect();
    Ok(CycleScan { zeros, skipped })
}
