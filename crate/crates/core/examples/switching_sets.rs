//! Crossing, sliding and singular sliding sets of the three forms.

use pwqh::algebra::CanonicalForm;
use pwqh::algebra::Variant;
use pwqh::filippov::{sigma_at, switching_analysis};

fn main() -> pwqh::error::Result<()> {
    let cases: [(Variant, &[f64]); 6] = [
        (Variant::I, &[-1.0, 1.0, 1.0]),
        (Variant::I, &[-1.0, -1.0, 1.0]),
        (Variant::II, &[1.0, 2.0, 1.0, 3.0]),
        (Variant::II, &[1.0, -1.0, 1.0, 3.0]),
        (Variant::III, &[1.0, -1.0, -1.0, 3.0]),
        (Variant::III, &[-2.0, 1.0, 0.5, 1.0]),
    ];
    for (v, params) in cases {
        let form = CanonicalForm::from_params(v, params)?;
        let f = form.field();
        let sw = switching_analysis(&f);
        println!("{v:?} {params:?}");
        println!("  sigma(2)   = {}", sigma_at(&f, 2.0));
        println!("  crossing   = {}", sw.crossing);
        println!("  sliding    = {}", sw.sliding);
        println!("  singular   = {:?}", sw.singular_points);
        println!("  boundary equilibria = {:?}", sw.boundary_equilibria);
    }
    Ok(())
}
