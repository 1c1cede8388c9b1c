//! Build a perturbation whose Melnikov function vanishes at prescribed
//! levels, then recover those levels from the Melnikov polynomial.

use pwqh::algebra::FormI;
use pwqh::melnikov::{exponent_set, melnikov_poly, positive_roots, realize_roots, xi_max};

fn main() -> pwqh::error::Result<()> {
    let form = FormI::new(-1.0, 1.0, 1.0)?;
    for n in 1..=6 {
        println!("n = {n}: exponents {:?}, at most {} limit cycles", exponent_set(n), xi_max(n));
    }

    let targets = [1.0, 8.0, 27.0];
    let spec = realize_roots(&form, 2, &targets)?;
    println!("\nperturbation: {}", serde_json::to_string(&spec).unwrap());

    let m = melnikov_poly(&form, &spec)?;
    for ((two_k, j), xi) in m.terms() {
        println!("  xi({two_k},{j}) = {xi:+.6}");
    }
    println!("sign variations: {}", m.variations());
    for r in positive_roots(&m)? {
        println!("  zero at h = {:.12} ({:?})", r.value, r.multiplicity);
    }
    for h in [0.5, 2.0, 10.0, 40.0] {
        println!("  M({h}) = {:+.6}", m.eval(h));
    }
    Ok(())
}
