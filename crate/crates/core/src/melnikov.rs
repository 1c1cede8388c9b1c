//! First-order Melnikov function of perturbed Form I centers.
//!
//! The perturbation adds `ε(f⁺, g⁺)` above the axis and `ε(f⁻, g⁻)` below,
//! with `f± = Σ c±_ij xⁱyʲ` acting on `ẋ` and `g± = Σ d±_ij xⁱyʲ` on `ẏ`.
//! Along the period annulus `L_h` (crossing the axis at `x = ±√(h/b1)`)
//!
//! `M(h) = ∫_{L⁺} g⁺dx - f⁺dy + b1 ∫_{L⁻} g⁻dx - f⁻dy = h^½ Σ ξ_{2k,j} h^(k + j/3)`.
//!
//! With `s = h^(1/3)` the bracket is an ordinary polynomial in `s`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{BiPoly, FormI, PiecewiseField, ZoneField};
use crate::error::{Error, Result};
use crate::numeric::gamma::beta;
use crate::numeric::real_pow_thirds;
use crate::numeric::upoly::{self, Multiplicity, RealRoot, UPoly};

/// `|ξ|` below this is treated as a structural zero.
pub const XI_PRUNE: f64 = 1e-14;
/// Bisection width for roots in `s`, relative.
const S_ROOT_TOL: f64 = 1e-14;

/// Polynomial perturbation of degree `n`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub n: u32,
    #[serde(default)]
    pub c_plus: BiPoly,
    #[serde(default)]
    pub c_minus: BiPoly,
    #[serde(default)]
    pub d_plus: BiPoly,
    #[serde(default)]
    pub d_minus: BiPoly,
}

impl PerturbationSpec {
    pub fn zero(n: u32) -> Self {
        Self { n, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for p in [&self.c_plus, &self.c_minus, &self.d_plus, &self.d_minus] {
            if let Some((i, j, _)) = p.terms().find(|&(i, j, _)| i + j > self.n) {
                return Err(Error::DegreeMismatch { i, j, n: self.n });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        [&self.c_plus, &self.c_minus, &self.d_plus, &self.d_minus].iter().all(|p| p.is_zero())
    }

    /// The perturbation itself as a piecewise field.
    pub fn field(&self) -> PiecewiseField {
        PiecewiseField::new(
            ZoneField::new(self.c_plus.clone(), self.d_plus.clone()),
            ZoneField::new(self.c_minus.clone(), self.d_minus.clone()),
        )
    }

    /// `form + ε·self`.
    pub fn perturbed_field(&self, form: &FormI, eps: f64) -> PiecewiseField {
        let base = form.field();
        let p = self.field();
        PiecewiseField::new(base.upper.add(&p.upper.scale(eps)), base.lower.add(&p.lower.scale(eps)))
    }
}

/// `∫₀¹ u^(2k) (u² - 1)^(j/3) du` with the real cube root,
/// `= (-1)^j · ½ · B(k + ½, j/3 + 1)`. Convergent for `j > -3`.
pub fn base_integral(k: u32, j: i32) -> f64 {
    let sign = if j.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * 0.5 * beta(k as f64 + 0.5, j as f64 / 3.0 + 1.0)
}

/// `d̂⁺_{2k,j}`, `ĉ⁺_{2k+1,j}`, `d̂⁻_{2k,j}`, `ĉ⁻_{2k+1,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatCoefficients {
    pub d_plus: f64,
    pub c_plus: f64,
    pub d_minus: f64,
    pub c_minus: f64,
}

fn hats(form: &FormI, k: u32, j: i32) -> HatCoefficients {
    let FormI { a1, b1, a1_tilde: at } = *form;
    let kf = k as f64;
    let id = base_integral(k, j);
    let ic = base_integral(k + 1, j - 2);
    let up = 3.0 / (2.0 * a1);
    let lo = 3.0 / (2.0 * at);
    let jf = j as f64;
    HatCoefficients {
        d_plus: -2.0 * real_pow_thirds(up, j) * b1.powf(-(kf + 0.5)) * id,
        c_plus: -2.0 * (b1 / a1) * real_pow_thirds(up, j - 2) * b1.powf(-(kf + 1.5)) * ic,
        d_minus: 2.0 * real_pow_thirds(lo, j) * b1.powf(-(kf + jf / 3.0 + 0.5)) * id,
        c_minus: 2.0 / at * real_pow_thirds(lo, j - 2) * b1.powf(-(kf + (jf + 1.0) / 3.0 + 0.5)) * ic,
    }
}

pub fn hat_coefficients(form: &FormI, k: u32, j: u32) -> Result<HatCoefficients> {
    if !form.is_center() {
        return Err(Error::NotACenter);
    }
    Ok(hats(form, k, j as i32))
}

/// `M(h) = h^½ Σ ξ_{2k,j} h^(k + j/3)`, keyed by `(2k, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MelnikovPoly {
    pub form_params: [f64; 3],
    pub n: u32,
    terms: BTreeMap<(u32, u32), f64>,
}

impl MelnikovPoly {
    /// Builds a polynomial directly from `((2k, j), ξ)` pairs.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), f64)>>(form_params: [f64; 3], n: u32, terms: I) -> Self {
        let terms = terms.into_iter().filter(|t| t.1.abs() >= XI_PRUNE).collect();
        Self { form_params, n, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), f64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn xi(&self, two_k: u32, j: u32) -> f64 {
        self.terms.get(&(two_k, j)).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, h: f64) -> f64 {
        h.sqrt() * self.s_poly().eval(h.cbrt())
    }

    /// The bracket as a polynomial in `s = h^(1/3)`; `ξ_{2k,j}` sits at `s^(3k+j)`.
    pub fn s_poly(&self) -> UPoly {
        let deg = self.terms.keys().map(|&(tk, j)| 3 * tk / 2 + j).max().unwrap_or(0);
        let mut c = vec![0.0; deg as usize + 1];
        for (&(tk, j), &v) in &self.terms {
            c[(3 * tk / 2 + j) as usize] += v;
        }
        UPoly::new(c)
    }

    /// Nonzero coefficients against exponents of `ĥ = h^(1/6)` after the
    /// factor `ĥ³`, ascending.
    pub fn hhat_coefficients(&self) -> Vec<(u32, f64)> {
        self.s_poly()
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(m, &c)| (2 * m as u32, c))
            .collect()
    }

    pub fn variations(&self) -> usize {
        self.s_poly().sign_variations()
    }
}

/// Serialized as `{"form_params": [...], "n": n, "xi": {"(2k,j)": value}}`.
impl Serialize for MelnikovPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let xi: BTreeMap<String, f64> = self.terms.iter().map(|(&(a, b), &v)| (format!("({a},{b})"), v)).collect();
        let mut st = s.serialize_struct("MelnikovPoly", 3)?;
        st.serialize_field("form_params", &self.form_params)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("xi", &xi)?;
        st.end()
    }
}

pub fn melnikov_poly(form: &FormI, pert: &PerturbationSpec) -> Result<MelnikovPoly> {
    if !form.is_center() {
        return Err(Error::NotACenter);
    }
    pert.validate()?;
    let n = pert.n;
    let b1 = form.b1;
    let mut terms = Vec::new();
    for k in 0..=n / 2 {
        for j in 0..=(n - 2 * k) {
            let h = hats(form, k, j as i32);
            let mut xi = pert.d_plus.coeff(2 * k, j) * h.d_plus + b1 * pert.d_minus.coeff(2 * k, j) * h.d_minus;
            if j >= 1 {
                let hc = hats(form, k, j as i32 - 1);
                xi -= pert.c_plus.coeff(2 * k + 1, j - 1) * hc.c_plus;
                xi -= b1 * pert.c_minus.coeff(2 * k + 1, j - 1) * hc.c_minus;
            }
            terms.push(((2 * k, j), xi));
        }
    }
    Ok(MelnikovPoly::from_terms([form.a1, form.b1, form.a1_tilde], n, terms))
}

/// `{3i + 2j : i even, i + j <= n, j < 3}`, ascending.
pub fn exponent_set(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (0..=n)
        .step_by(2)
        .flat_map(|i| (0..3u32.min(n - i + 1)).map(move |j| 3 * i + 2 * j))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Maximal number of limit cycles reachable through `M` for degree `n`.
pub fn xi_max(n: u32) -> u32 {
    let n = n as i64;
    let v = if n % 2 == 1 {
        2 * ((n + 1) / 2) + (n - 1) / 2 - 1
    } else {
        2 * (n / 2) + (n + 2) / 2 - 1
    };
    v as u32
}

/// Sign changes in a coefficient sequence, zeros skipped.
pub fn descartes_variations(coeffs: &[f64]) -> usize {
    upoly::sign_variations(coeffs)
}

/// Positive zeros of `M` in `h`, found through the polynomial in `s = h^(1/3)`.
pub fn positive_roots(m: &MelnikovPoly) -> Result<Vec<RealRoot>> {
    if m.is_zero() {
        return Err(Error::EmptyPoly);
    }
    Ok(m.s_poly()
        .positive_roots(S_ROOT_TOL)
        .into_iter()
        .map(|r| RealRoot { value: r.value.powi(3), multiplicity: r.multiplicity })
        .collect())
}

/// Perturbation using only `d⁺` whose Melnikov function vanishes exactly at
/// `roots_h`.
pub fn realize_roots(form: &FormI, n: u32, roots_h: &[f64]) -> Result<PerturbationSpec> {
    if !form.is_center() {
        return Err(Error::NotACenter);
    }
    let max = xi_max(n) as usize;
    if roots_h.len() > max {
        return Err(Error::TooManyRoots { requested: roots_h.len(), max, n });
    }
    if let Some(bad) = roots_h.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Error::InvalidArgument(format!("target root {bad} is not a positive real")));
    }
    let mut sorted = roots_h.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateRoots);
    }
    let s_roots: Vec<f64> = sorted.iter().map(|h| h.cbrt()).collect();
    let target = UPoly::from_roots(&s_roots);
    let mut d_plus = BiPoly::zero();
    for (m, &c) in target.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let (k, j) = (m as u32 / 3, m as u32 % 3);
        debug_assert!(2 * k + j <= n);
        d_plus.add_term(2 * k, j, c / hats(form, k, j as i32).d_plus);
    }
    Ok(PerturbationSpec { n, d_plus, ..PerturbationSpec::default() })
}

/// True when every reported root is simple.
pub fn all_simple(roots: &[RealRoot]) -> bool {
    roots.iter().all(|r| r.multiplicity == Multiplicity::Simple)
}
