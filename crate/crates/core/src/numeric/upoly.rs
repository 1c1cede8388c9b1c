//! Dense univariate polynomials with Descartes-guided real root isolation.

use serde::{Deserialize, Serialize};

/// Number of sign changes in a coefficient sequence, zeros skipped.
pub fn sign_variations(coeffs: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &c in coeffs {
        if c == 0.0 || c.is_nan() {
            continue;
        }
        if last != 0.0 && (c > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = c;
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    /// Isolated in an interval with exactly one sign variation.
    Simple,
    /// Cluster that could not be separated at the working resolution.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: Multiplicity,
}

/// Polynomial `Σ coeffs[k] x^k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UPoly {
    coeffs: Vec<f64>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut coeffs = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    pub fn sign_variations(&self) -> usize {
        sign_variations(&self.coeffs)
    }

    /// Multiplicity of the root at zero and the quotient `p / x^m`.
    fn split_zero(&self) -> (usize, Self) {
        let m = self.coeffs.iter().take_while(|&&c| c == 0.0).count();
        (m, Self::new(self.coeffs[m..].to_vec()))
    }

    /// Coefficients of `(1+y)^n p((l + r y)/(1 + y))`, whose sign variations
    /// bound the number of roots in the open interval `(l, r)`.
    fn interval_transform(&self, l: f64, r: f64) -> Vec<f64> {
        let n = self.coeffs.len() - 1;
        let lin = UPoly { coeffs: vec![l, r] };
        let one_plus = UPoly { coeffs: vec![1.0, 1.0] };
        let mut out = vec![0.0; n + 1];
        let mut lin_pow = UPoly { coeffs: vec![1.0] };
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0.0 {
                let mut term = lin_pow.clone();
                for _ in 0..(n - i) {
                    term = UPoly { coeffs: term.mul(&one_plus).coeffs };
                }
                for (k, &c) in term.coeffs.iter().enumerate() {
                    out[k] += a * c;
                }
            }
            lin_pow = UPoly { coeffs: lin_pow.mul(&lin).coeffs };
        }
        out
    }

    /// Upper bound on the modulus of every root (Cauchy).
    fn root_bound(&self) -> f64 {
        let lead = *self.coeffs.last().unwrap();
        1.0 + self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max)
    }

    /// Strictly positive real roots, isolated by Descartes-guided subdivision
    /// and refined by bisection to width `tol`.
    pub fn positive_roots(&self, tol: f64) -> Vec<RealRoot> {
        if self.is_zero() {
            return Vec::new();
        }
        let (_, p) = self.split_zero();
        if p.degree().unwrap_or(0) == 0 || p.sign_variations() == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut stack = vec![(0.0, p.root_bound())];
        while let Some((l, r)) = stack.pop() {
            let v = sign_variations(&p.interval_transform(l, r));
            if v == 0 {
                continue;
            }
            if v == 1 {
                if let Some(x) = p.bisect(l, r, tol) {
                    roots.push(RealRoot { value: x, multiplicity: Multiplicity::Simple });
                    continue;
                }
            }
            if r - l <= tol * r.max(1.0) {
                roots.push(RealRoot { value: 0.5 * (l + r), multiplicity: Multiplicity::Unknown });
                continue;
            }
            let m = 0.5 * (l + r);
            if p.eval(m) == 0.0 {
                let d = p.derivative();
                let scale: f64 = d.coeffs.iter().rev().fold(0.0, |acc, c| acc * m.abs() + c.abs());
                let mult = if d.eval(m).abs() > 1e-6 * scale {
                    Multiplicity::Simple
                } else {
                    Multiplicity::Unknown
                };
                roots.push(RealRoot { value: m, multiplicity: mult });
            }
            stack.push((m, r));
            stack.push((l, m));
        }
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        roots.dedup_by(|b, a| (b.value - a.value).abs() <= 4.0 * tol * a.value.abs().max(1.0));
        // neighbours with only rounding noise between them are one cluster
        let mut merged: Vec<RealRoot> = Vec::with_capacity(roots.len());
        for r in roots {
            if let Some(last) = merged.last_mut() {
                let m = 0.5 * (last.value + r.value);
                if p.eval(m).abs() <= p.noise_level(m) {
                    *last = RealRoot { value: m, multiplicity: Multiplicity::Unknown };
                    continue;
                }
            }
            merged.push(r);
        }
        merged
    }

    /// All real roots (including zero) in ascending order.
    pub fn real_roots(&self, tol: f64) -> Vec<RealRoot> {
        if self.is_zero() {
            return Vec::new();
        }
        let (m, p) = self.split_zero();
        let mut out: Vec<RealRoot> = p
            .reflect()
            .positive_roots(tol)
            .into_iter()
            .map(|r| RealRoot { value: -r.value, ..r })
            .collect();
        if m > 0 {
            let multiplicity = if m == 1 { Multiplicity::Simple } else { Multiplicity::Unknown };
            out.push(RealRoot { value: 0.0, multiplicity });
        }
        out.extend(p.positive_roots(tol));
        out.sort_by(|a, b| a.value.total_cmp(&b.value));
        out
    }

    /// Rounding error bound for Horner evaluation at `x`.
    fn noise_level(&self, x: f64) -> f64 {
        let mag: f64 = self.coeffs.iter().rev().fold(0.0, |a, c| a * x.abs() + c.abs());
        4.0 * (self.coeffs.len() as f64) * f64::EPSILON * mag
    }

    /// Sign of `p` just to the right (`dir = 1`) or left (`dir = -1`) of
    /// `x`, read off the first nonvanishing derivative when `p(x) = 0`.
    fn side_sign(&self, x: f64, dir: f64) -> f64 {
        let mut d = self.clone();
        let mut k = 0;
        while !d.is_zero() {
            let v = d.eval(x);
            if v != 0.0 {
                return v.signum() * dir.powi(k);
            }
            d = d.derivative();
            k += 1;
        }
        0.0
    }

    /// Bisection for a root strictly inside `(l, r)`; `None` when the
    /// endpoints do not bracket.
    fn bisect(&self, mut l: f64, mut r: f64, tol: f64) -> Option<f64> {
        let mut fl = self.side_sign(l, 1.0);
        let fr = self.side_sign(r, -1.0);
        if fl == 0.0 || fr == 0.0 || (fl > 0.0) == (fr > 0.0) {
            return None;
        }
        while r - l > tol * r.abs().max(1.0) {
            let m = 0.5 * (l + r);
            if m <= l || m >= r {
                break;
            }
            let fm = self.eval(m);
            if fm == 0.0 {
                return Some(m);
            }
            if (fm > 0.0) == (fl > 0.0) {
                l = m;
                fl = fm;
            } else {
                r = m;
            }
        }
        Some(0.5 * (l + r))
    }
}
