//! Dormand–Prince 5(4) integrator for planar autonomous systems.
//!
//! The stepper advances one accepted step at a time and hands back the
//! continuous extension of that step, so callers can locate events on the
//! interpolant instead of re-integrating.

use crate::error::{Error, Result};

pub type State = [f64; 2];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// dense output (Hairer, Nørsett & Wanner)
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const PI_BETA: f64 = 0.04;

#[derive(Debug, Clone, Copy)]
pub struct StepperConfig {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub h_max: f64,
}

impl StepperConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self { rtol: tol, atol: tol, max_steps: 1_000_000, h_max: f64::INFINITY }
    }
}

/// One accepted step with its quartic continuous extension.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep {
    pub t0: f64,
    pub t1: f64,
    pub y0: State,
    pub y1: State,
    rcont: [State; 4],
}

impl DenseStep {
    pub fn eval(&self, t: f64) -> State {
        let h = self.t1 - self.t0;
        let s = if h == 0.0 { 0.0 } else { (t - self.t0) / h };
        let s1 = 1.0 - s;
        let mut out = [0.0; 2];
        for (i, o) in out.iter_mut().enumerate() {
            let [r2, r3, r4, r5] = [self.rcont[0][i], self.rcont[1][i], self.rcont[2][i], self.rcont[3][i]];
            *o = self.y0[i] + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
        }
        out
    }
}

pub struct Stepper<F> {
    f: F,
    cfg: StepperConfig,
    t: f64,
    y: State,
    k1: State,
    h: f64,
    fac_old: f64,
    last_rejected: bool,
    pub accepted: usize,
    pub rejected: usize,
}

#[inline]
fn axpy(y: State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

impl<F: Fn(State) -> State> Stepper<F> {
    pub fn new(f: F, t0: f64, y0: State, cfg: StepperConfig) -> Self {
        let k1 = f(y0);
        let h = initial_step(&f, y0, k1, &cfg);
        Self { f, cfg, t: t0, y: y0, k1, h, fac_old: 1e-4, last_rejected: false, accepted: 0, rejected: 0 }
    }

    /// Restart from a new point, keeping the current step size estimate.
    pub fn reset(&mut self, t: f64, y: State) {
        self.t = t;
        self.y = y;
        self.k1 = (self.f)(y);
        self.last_rejected = false;
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn state(&self) -> State {
        self.y
    }

    pub fn derivative(&self) -> State {
        self.k1
    }

    /// Take one accepted step, never passing `t_end` (which must exceed the
    /// current time).
    pub fn step(&mut self, t_end: f64) -> Result<DenseStep> {
        loop {
            if self.accepted + self.rejected >= self.cfg.max_steps {
                return Err(Error::StepBudgetExceeded(self.cfg.max_steps));
            }
            let mut h = self.h.min(self.cfg.h_max);
            let mut last = false;
            if self.t + h >= t_end {
                h = t_end - self.t;
                last = true;
            }
            if !(h > 1e-15 * self.t.abs().max(1.0)) {
                return Err(Error::IntegrationFailure(format!(
                    "step size underflow at t = {} (h = {h:e})",
                    self.t
                )));
            }
            let (y, t, k1) = (self.y, self.t, self.k1);
            let f = &self.f;
            let k2 = f(axpy(y, &[(A21, &k1)], h));
            let k3 = f(axpy(y, &[(A31, &k1), (A32, &k2)], h));
            let k4 = f(axpy(y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
            let k5 = f(axpy(y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h));
            let k6 = f(axpy(y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h));
            let y1 = axpy(y, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h);
            let k7 = f(y1);

            let mut err = 0.0;
            for i in 0..2 {
                let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = self.cfg.atol + self.cfg.rtol * y[i].abs().max(y1[i].abs());
                err += (e / sc) * (e / sc);
            }
            let err = (err / 2.0).sqrt();
            if !err.is_finite() || !y1[0].is_finite() || !y1[1].is_finite() {
                self.rejected += 1;
                self.h = h * FAC_MIN;
                self.last_rejected = true;
                continue;
            }

            let fac11 = err.powf(0.2 - PI_BETA * 0.75);
            if err <= 1.0 {
                let fac = (fac11 / self.fac_old.powf(PI_BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
                let mut h_new = h / fac;
                if self.last_rejected {
                    h_new = h_new.min(h);
                }
                self.fac_old = err.max(1e-4);
                self.last_rejected = false;
                self.accepted += 1;

                let mut rcont = [[0.0; 2]; 4];
                for i in 0..2 {
                    let ydiff = y1[i] - y[i];
                    let bspl = h * k1[i] - ydiff;
                    rcont[0][i] = ydiff;
                    rcont[1][i] = bspl;
                    rcont[2][i] = ydiff - h * k7[i] - bspl;
                    rcont[3][i] = h
                        * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
                }
                let t1 = if last { t_end } else { t + h };
                let dense = DenseStep { t0: t, t1, y0: y, y1, rcont };
                self.t = t1;
                self.y = y1;
                self.k1 = k7;
                if !last {
                    self.h = h_new;
                }
                return Ok(dense);
            }
            self.rejected += 1;
            self.last_rejected = true;
            self.h = h / (fac11 / SAFETY).min(1.0 / FAC_MIN);
        }
    }
}

fn initial_step<F: Fn(State) -> State>(f: &F, y0: State, k1: State, cfg: &StepperConfig) -> f64 {
    let sc = |i: usize| cfg.atol + cfg.rtol * y0[i].abs();
    let dnf = ((k1[0] / sc(0)).powi(2) + (k1[1] / sc(1)).powi(2)) / 2.0;
    let dny = ((y0[0] / sc(0)).powi(2) + (y0[1] / sc(1)).powi(2)) / 2.0;
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 { 1e-6 } else { (dny / dnf).sqrt() * 0.01 };
    h = h.min(cfg.h_max);
    let y1 = [y0[0] + h * k1[0], y0[1] + h * k1[1]];
    let k2 = f(y1);
    let der2 = (((k2[0] - k1[0]) / sc(0)).powi(2) + ((k2[1] - k1[1]) / sc(1)).powi(2)) / 2.0;
    let der2 = der2.sqrt() / h;
    let der12 = der2.max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 { (h * 1e-3).max(1e-6) } else { (0.01 / der12).powf(0.2) };
    (100.0 * h).min(h1).min(cfg.h_max)
}
