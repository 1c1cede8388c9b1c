//! Bivariate polynomials, weight vectors, reduction to the canonical forms
//! and their first integrals.

pub mod canonical;
pub mod integral;
pub mod poly;
pub mod weight;

pub use canonical::{canonicalize, CanonicalForm, FormI, FormII, FormIII, TransformRecord, Variant};
pub use integral::{first_integral, Branch, FirstIntegral};
pub use poly::{BiPoly, PiecewiseField, Zone, ZoneField};
pub use weight::{minimal_weight_vector, WeightVector};
