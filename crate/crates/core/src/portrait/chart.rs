//! Local charts of the Poincaré compactification.
//!
//! In `U1` the plane is seen through `x = 1/z, y = u/z`, in `U2` through
//! `x = u/z, y = 1/z`. Multiplying by `zⁿ` clears denominators:
//!
//! ```text
//! U1: u̇ = zⁿ(-u P̃ + Q̃),  ż = -zⁿ⁺¹ P̃
//! U2: u̇ = zⁿ(P̃ - u Q̃),   ż = -zⁿ⁺¹ Q̃
//! ```

use serde::{Deserialize, Serialize};

use crate::algebra::{BiPoly, ZoneField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    U1,
    U2,
    /// The affine plane itself.
    U3,
}

/// A field in chart coordinates `(u, z)`; polynomials use `x ↦ u`, `y ↦ z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartField {
    pub chart: Chart,
    pub u_dot: BiPoly,
    pub z_dot: BiPoly,
}

impl ChartField {
    pub fn eval(&self, u: f64, z: f64) -> [f64; 2] {
        [self.u_dot.eval(u, z), self.z_dot.eval(u, z)]
    }
}

/// `zⁿ·p(1/z, u/z)` (U1) or `zⁿ·p(u/z, 1/z)` (U2); requires `deg p <= n`.
fn lift(p: &BiPoly, chart: Chart, n: u32) -> BiPoly {
    BiPoly::from_terms(p.terms().map(|(i, j, c)| {
        let z = n.checked_sub(i + j).expect("polynomial degree exceeds n");
        match chart {
            Chart::U1 => (j, z, c),
            _ => (i, z, c),
        }
    }))
}

/// Chart expression of `f`, which must have degree at most `n`.
pub fn chart_transform(f: &ZoneField, chart: Chart, n: u32) -> ChartField {
    let u = BiPoly::monomial(1, 0, 1.0);
    let z = BiPoly::monomial(0, 1, 1.0);
    let (u_dot, z_dot) = match chart {
        Chart::U3 => (f.p.clone(), f.q.clone()),
        Chart::U1 => {
            let (p, q) = (lift(&f.p, chart, n), lift(&f.q, chart, n));
            (&q - &(&u * &p), -&(&z * &p))
        }
        Chart::U2 => {
            let (p, q) = (lift(&f.p, chart, n), lift(&f.q, chart, n));
            (&p - &(&u * &q), -&(&z * &q))
        }
    };
    ChartField { chart, u_dot, z_dot }
}

/// Plane point seen from `chart` at `(u, z)`, `z != 0`.
pub fn to_plane(chart: Chart, u: f64, z: f64) -> [f64; 2] {
    match chart {
        Chart::U1 => [1.0 / z, u / z],
        Chart::U2 => [u / z, 1.0 / z],
        Chart::U3 => [u, z],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FormI, FormII, FormIII};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bp(t: &[(u32, u32, f64)]) -> BiPoly {
        BiPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn form_i_in_u1() {
        let (a1, b1) = (-1.5, 0.7);
        let f = FormI::new(a1, b1, 1.0).unwrap().field();
        let c = chart_transform(&f.upper, Chart::U1, 2);
        assert_eq!(c.u_dot, bp(&[(0, 1, b1), (3, 0, -a1)]));
        assert_eq!(c.z_dot, bp(&[(2, 1, -a1)]));
        let c = chart_transform(&f.upper, Chart::U2, 2);
        assert_eq!(c.u_dot, bp(&[(0, 0, a1), (2, 1, -b1)]));
        assert_eq!(c.z_dot, bp(&[(1, 2, -b1)]));
    }

    #[test]
    fn form_ii_in_u1_and_u2() {
        let (a2, b21, b22) = (1.3, -0.4, 2.1);
        let f = FormII::new(a2, b21, b22, 3.0).unwrap().field();
        let c = chart_transform(&f.upper, Chart::U1, 2);
        assert_eq!(c.u_dot, bp(&[(0, 1, b21), (2, 0, b22 - a2)]));
        assert_eq!(c.z_dot, bp(&[(1, 1, -a2)]));
        let c = chart_transform(&f.upper, Chart::U2, 2);
        assert_eq!(c.u_dot, bp(&[(1, 0, a2 - b22), (2, 1, -b21)]));
        assert_eq!(c.z_dot, bp(&[(0, 1, -b22), (1, 2, -b21)]));
    }

    #[test]
    fn form_iii_in_u1() {
        let (a31, a32, b3) = (0.8, -1.2, 2.5);
        let f = FormIII::new(a31, a32, b3, 3.0).unwrap().field();
        let c = chart_transform(&f.upper, Chart::U1, 2);
        assert_eq!(c.u_dot, bp(&[(1, 1, b3 - a31), (3, 0, -a32)]));
        assert_eq!(c.z_dot, bp(&[(0, 2, -a31), (2, 1, -a32)]));
        let c = chart_transform(&f.upper, Chart::U2, 2);
        assert_eq!(c.u_dot, bp(&[(0, 0, a32), (1, 1, a31 - b3)]));
        assert_eq!(c.z_dot, bp(&[(0, 2, -b3)]));
    }

    #[test]
    fn u3_is_identity() {
        let f = FormII::new(1.3, -0.4, 2.1, 3.0).unwrap().field();
        let c = chart_transform(&f.lower, Chart::U3, 2);
        assert_eq!((c.u_dot, c.z_dot), (f.lower.p.clone(), f.lower.q.clone()));
    }

    #[test]
    fn chart_direction_matches_pushed_forward_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fields = [
            FormI::new(-1.0, 2.0, 0.5).unwrap().field(),
            FormII::new(1.3, -0.4, 2.1, 3.0).unwrap().field(),
            FormIII::new(0.8, -1.2, 2.5, -1.0).unwrap().field(),
        ];
        for f in &fields {
            for zone in [&f.upper, &f.lower] {
                for _ in 0..100 {
                    let (x, y): (f64, f64) = (rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
                    let [p, q] = zone.eval(x, y);
                    // U1: u = y/x, z = 1/x
                    let push = [(q * x - y * p) / (x * x), -p / (x * x)];
                    let c = chart_transform(zone, Chart::U1, 2).eval(y / x, 1.0 / x);
                    check_parallel(push, c);
                    // U2: u = x/y, z = 1/y
                    let push = [(p * y - x * q) / (y * y), -q / (y * y)];
                    let c = chart_transform(zone, Chart::U2, 2).eval(x / y, 1.0 / y);
                    check_parallel(push, c);
                }
            }
        }
    }

    fn check_parallel(a: [f64; 2], b: [f64; 2]) {
        let dot = a[0] * b[0] + a[1] * b[1];
        let cross = a[0] * b[1] - a[1] * b[0];
        let na = a[0].hypot(a[1]);
        let nb = b[0].hypot(b[1]);
        if na < 1e-12 || nb < 1e-12 {
            return;
        }
        assert!(dot > 0.0, "{a:?} vs {b:?}");
        assert!(cross.abs() < 1e-9 * na * nb, "{a:?} vs {b:?}");
    }
}
