//! Limit cycles of a perturbed center located from the displacement map and
//! compared with the zeros of the Melnikov function.

use pwqh::algebra::FormI;
use pwqh::melnikov::{melnikov_poly, positive_roots, realize_roots};
use pwqh::simulate::{displacement, find_limit_cycles};

fn main() -> pwqh::error::Result<()> {
    let form = FormI::new(-1.0, 1.0, 1.0)?;
    let spec = realize_roots(&form, 2, &[1.0, 8.0, 27.0])?;
    let m = melnikov_poly(&form, &spec)?;

    for eps in [1e-2, 1e-3] {
        let scan = find_limit_cycles(&form, &spec, eps, (0.3, 40.0), 60)?;
        println!("eps = {eps:e}: cycles at h = {:?}", scan.zeros);
    }
    let roots: Vec<f64> = positive_roots(&m)?.iter().map(|r| r.value).collect();
    println!("Melnikov zeros:   {roots:?}");

    println!("\n{:>6} {:>14} {:>14}", "h", "d/eps", "-2 M(h)");
    for h in [0.5, 4.0, 12.0, 30.0] {
        let d = displacement(&form, &spec, h, 1e-4)?;
        println!("{h:>6} {:>14.6} {:>14.6}", d.d / d.epsilon, -2.0 * m.eval(h));
    }
    Ok(())
}
