//! Reduce a raw piecewise system to its canonical form.
//!
//! Reads a system in the `{"upper": {"P": [[i, j, c], ...], "Q": [...]}, "lower": {...}}`
//! format from the path given as first argument, or uses a built-in one.

use pwqh::algebra::{canonicalize, minimal_weight_vector, PiecewiseField};

const DEMO: &str = r#"{
  "upper": {"P": [[0, 2, -2.0]], "Q": [[1, 0, 3.0]]},
  "lower": {"P": [[0, 2, 5.0]], "Q": [[1, 0, 2.0]]}
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEMO.to_string(),
    };
    let field: PiecewiseField = serde_json::from_str(&text)?;
    for (name, zone) in [("upper", &field.upper), ("lower", &field.lower)] {
        let w = minimal_weight_vector(&zone.p, &zone.q)?;
        println!("{name}: P = {}, Q = {}, weights {w:?}", zone.p, zone.q);
    }
    let (form, record) = canonicalize(&field)?;
    println!("canonical form: {}", serde_json::to_string(&form)?);
    println!("transform:      {}", serde_json::to_string(&record)?);

    // the recorded change of variables takes the canonical field back
    let back = record.pull_back(&form.field());
    let [u, v] = back.eval(0.7, 1.3);
    let [p, q] = field.eval(0.7, 1.3);
    println!("pulled back at (0.7, 1.3): ({u:.6}, {v:.6}) vs original ({p:.6}, {q:.6})");
    Ok(())
}
