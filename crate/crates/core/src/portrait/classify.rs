//! Sign-case classification of the reduced forms and the equilibria at
//! infinity of each zone.

use serde::{Deserialize, Serialize};

use crate::algebra::{CanonicalForm, FormII, FormIII, Variant, Zone};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    XAxisEnd,
    YAxisEnd,
    WholeEquator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfinityKind {
    Node,
    Saddle,
    HyperbolicElliptic,
    TwoEllipticOneParabolic,
    TwoHyperbolicTwoParabolic,
    TwoHyperbolicFourParabolic,
    EquatorOfSingularities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityEquilibrium {
    pub zone: Zone,
    pub location: Location,
    pub kind: InfinityKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortraitCase {
    pub variant: Variant,
    /// Signs of the classifying quantities, `+` or `-`, in the order listed
    /// by [`signature_labels`].
    pub signature: String,
    pub case_id: u32,
    pub infinity: Vec<InfinityEquilibrium>,
    pub has_center: bool,
}

/// Names of the classifying quantities of each variant.
pub fn signature_labels(variant: Variant) -> &'static [&'static str] {
    match variant {
        Variant::I => &["b1", "a1", "a1_tilde"],
        Variant::II => &["b21", "b22-a2", "b22", "a2", "a2_tilde", "a2_tilde-1"],
        Variant::III => &["a31", "b3", "a31-2b3", "a32", "a31_tilde", "a31_tilde-2"],
    }
}

fn sign_char(v: bool) -> char {
    if v {
        '+'
    } else {
        '-'
    }
}

fn x_end_ii(a: f64, b22: f64) -> InfinityKind {
    if (b22 - a) * a > 0.0 {
        InfinityKind::Saddle
    } else {
        InfinityKind::HyperbolicElliptic
    }
}

fn y_end_ii(a: f64, b22: f64) -> InfinityKind {
    if (b22 - a) * b22 < 0.0 {
        InfinityKind::Saddle
    } else {
        InfinityKind::Node
    }
}

fn x_end_iii(a31: f64, b3: f64) -> InfinityKind {
    let p = a31 * b3;
    if p < 0.0 {
        InfinityKind::TwoEllipticOneParabolic
    } else if p <= 2.0 * b3 * b3 {
        InfinityKind::TwoHyperbolicTwoParabolic
    } else {
        InfinityKind::TwoHyperbolicFourParabolic
    }
}

/// Equilibria at infinity of the upper and lower zone fields.
pub fn infinity_equilibria(form: &CanonicalForm) -> Vec<InfinityEquilibrium> {
    let mut out = Vec::new();
    let mut push = |zone, location, kind| out.push(InfinityEquilibrium { zone, location, kind });
    match *form {
        CanonicalForm::I(_) => {
            // only the x-axis ends carry equilibria, and they are nodes
            push(Zone::Upper, Location::XAxisEnd, InfinityKind::Node);
            push(Zone::Lower, Location::XAxisEnd, InfinityKind::Node);
        }
        CanonicalForm::II(FormII { a2, b22, a2_tilde, .. }) => {
            for (zone, a, b) in [(Zone::Upper, a2, b22), (Zone::Lower, a2_tilde, 1.0)] {
                if a == b {
                    push(zone, Location::WholeEquator, InfinityKind::EquatorOfSingularities);
                } else {
                    push(zone, Location::XAxisEnd, x_end_ii(a, b));
                    push(zone, Location::YAxisEnd, y_end_ii(a, b));
                }
            }
        }
        CanonicalForm::III(FormIII { a31, b3, a31_tilde, .. }) => {
            push(Zone::Upper, Location::XAxisEnd, x_end_iii(a31, b3));
            push(Zone::Lower, Location::XAxisEnd, x_end_iii(a31_tilde, 1.0));
        }
    }
    out
}

/// Case number of a sign signature, or `None` when no parameter vector has
/// that signature and the variant numbers only realizable cases.
///
/// Form I: `b1 > 0` gives cases 1–4 for `(a1, ã1)` = `(+,+), (+,-), (-,-),
/// (-,+)`, `b1 < 0` gives 5–8 in the same order. Form II numbers all 64
/// sign patterns, `1 + Σ 2^(5-k)` over the negative entries `k`. Form III
/// follows the rows of the parameter table.
pub fn case_for_signature(variant: Variant, sig: &str) -> Option<u32> {
    let s: Vec<bool> = sig.chars().map(|c| c == '+').collect();
    if s.len() != signature_labels(variant).len() || sig.chars().any(|c| c != '+' && c != '-') {
        return None;
    }
    match variant {
        Variant::I => {
            let base = if s[0] { 0 } else { 4 };
            let within = match (s[1], s[2]) {
                (true, true) => 1,
                (true, false) => 2,
                (false, false) => 3,
                (false, true) => 4,
            };
            Some(base + within)
        }
        Variant::II => Some(1 + s.iter().enumerate().map(|(k, &p)| if p { 0 } else { 1 << (5 - k) }).sum::<u32>()),
        Variant::III => {
            let (a31, b3, d, a32, at, at2) = (s[0], s[1], s[2], s[3], s[4], s[5]);
            let block = match (a31, b3) {
                (false, false) => match (d, a32) {
                    (true, false) => 0,
                    (true, true) => 3,
                    (false, true) => 6,
                    (false, false) => 9,
                },
                (true, true) => match (d, a32) {
                    (false, false) => 12,
                    (false, true) => 15,
                    (true, false) => 18,
                    (true, true) => 21,
                },
                // a31 - 2b3 has a forced sign when a31 and b3 differ in sign
                (true, false) if d => {
                    if a32 {
                        27
                    } else {
                        24
                    }
                }
                (false, true) if !d => {
                    if a32 {
                        33
                    } else {
                        30
                    }
                }
                _ => return None,
            };
            let tail = match (at, at2) {
                (true, true) => 1,
                (true, false) => 2,
                (false, false) => 3,
                (false, true) => return None,
            };
            Some(block + tail)
        }
    }
}

/// Whether some parameter vector has this signature.
pub fn is_realizable(variant: Variant, sig: &str) -> bool {
    let s: Vec<bool> = sig.chars().map(|c| c == '+').collect();
    match variant {
        Variant::I => s.len() == 3,
        // b22 - a2 is forced when b22 and a2 differ in sign; ã2 < 0 forces ã2 - 1 < 0
        Variant::II => s.len() == 6 && (s[2] == s[3] || s[1] == s[2]) && (s[4] || !s[5]),
        Variant::III => case_for_signature(variant, sig).is_some(),
    }
}

/// All `2^k` sign patterns of a variant, in lexicographic `+` before `-` order.
pub fn all_signatures(variant: Variant) -> Vec<String> {
    let k = signature_labels(variant).len();
    (0..1u32 << k)
        .map(|bits| (0..k).map(|i| sign_char(bits & (1 << (k - 1 - i)) == 0)).collect())
        .collect()
}

/// Signature of a form, with the boundary conventions of the table:
/// `a31 = 2b3` joins the `a31 >= 2b3` rows when `b3 < 0` and the
/// `a31 <= 2b3` rows when `b3 > 0`; `ã31 = 2` joins `0 < ã31 <= 2`.
pub fn signature(form: &CanonicalForm) -> Result<String> {
    let signs: Vec<bool> = match *form {
        CanonicalForm::I(f) => vec![f.b1 > 0.0, f.a1 > 0.0, f.a1_tilde > 0.0],
        CanonicalForm::II(f) => {
            if f.b22 == f.a2 {
                return Err(Error::DegenerateParameter("b22 - a2"));
            }
            if f.a2_tilde == 1.0 {
                return Err(Error::DegenerateParameter("a2_tilde - 1"));
            }
            vec![f.b21 > 0.0, f.b22 - f.a2 > 0.0, f.b22 > 0.0, f.a2 > 0.0, f.a2_tilde > 0.0, f.a2_tilde - 1.0 > 0.0]
        }
        CanonicalForm::III(f) => {
            let d = if f.b3 < 0.0 { f.a31 >= 2.0 * f.b3 } else { f.a31 > 2.0 * f.b3 };
            vec![f.a31 > 0.0, f.b3 > 0.0, d, f.a32 > 0.0, f.a31_tilde > 0.0, f.a31_tilde > 2.0]
        }
    };
    Ok(signs.into_iter().map(sign_char).collect())
}

pub fn classify_case(form: &CanonicalForm) -> Result<PortraitCase> {
    let variant = form.variant();
    let sig = signature(form)?;
    let case_id = case_for_signature(variant, &sig).expect("signature of an actual form is realizable");
    let has_center = matches!(form, CanonicalForm::I(f) if f.is_center());
    Ok(PortraitCase { variant, signature: sig, case_id, infinity: infinity_equilibria(form), has_center })
}
