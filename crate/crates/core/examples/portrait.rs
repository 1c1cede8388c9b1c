//! Classify a form and write its phase portrait on the Poincaré disk.
//!
//! Usage: `portrait <I|II|III> <comma separated params> [out.svg]`

use pwqh::algebra::{CanonicalForm, Variant};
use pwqh::portrait::{classify_case, render, RenderOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let variant = match args.first().map(String::as_str) {
        Some("II") => Variant::II,
        Some("III") => Variant::III,
        _ => Variant::I,
    };
    let params: Vec<f64> = match args.get(1) {
        Some(s) => s.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![-1.0, 1.0, 1.0],
    };
    let out = args.get(2).cloned().unwrap_or_else(|| "portrait.svg".into());

    let form = CanonicalForm::from_params(variant, &params)?;
    let case = classify_case(&form)?;
    println!("case {} signature {} center {}", case.case_id, case.signature, case.has_center);
    for e in &case.infinity {
        println!("  {:?} {:?}: {:?}", e.zone, e.location, e.kind);
    }
    let svg = render(&form, &RenderOptions::default())?;
    std::fs::write(&out, svg)?;
    println!("wrote {out}");
    Ok(())
}
