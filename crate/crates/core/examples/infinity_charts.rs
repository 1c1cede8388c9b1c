//! Poincaré charts of each zone and the typed equilibria at infinity.

use pwqh::algebra::{CanonicalForm, Variant};
use pwqh::portrait::{chart_transform, infinity_equilibria, Chart};

fn main() -> pwqh::error::Result<()> {
    let forms = [
        CanonicalForm::from_params(Variant::I, &[-1.0, 2.0, 1.0])?,
        CanonicalForm::from_params(Variant::II, &[2.0, 1.0, 1.0, 3.0])?,
        CanonicalForm::from_params(Variant::III, &[1.0, 1.0, -1.0, 3.0])?,
    ];
    for form in &forms {
        println!("{:?} {:?}", form.variant(), form.params());
        let f = form.field();
        for chart in [Chart::U1, Chart::U2] {
            let c = chart_transform(&f.upper, chart, 2);
            println!("  upper in {chart:?}: u' = {}, z' = {}", c.u_dot, c.z_dot);
        }
        for e in infinity_equilibria(form) {
            println!("  {:?} zone, {:?}: {:?}", e.zone, e.location, e.kind);
        }
    }
    Ok(())
}
