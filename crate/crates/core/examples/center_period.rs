//! Center condition of Form I, its return map and the period function
//! `T(r) = β0 r^(-1/3)` checked against quadrature.
//!
//! Usage: `center_period [a1 b1 a1_tilde]`

use pwqh::algebra::{CanonicalForm, FormI};
use pwqh::center::{center_report, exact_return_maps, numeric_return_map, period_closed_form, period_numeric};

fn main() -> pwqh::error::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let p = if args.len() == 3 { args } else { vec![-1.0, 1.0, 1.0] };
    let form = FormI::new(p[0], p[1], p[2])?;
    let report = center_report(&CanonicalForm::I(form));
    println!("{report:?}");
    if !report.is_center {
        return Ok(());
    }

    println!("{:>6} {:>14} {:>14} {:>14} {:>10}", "r0", "P(r0)", "T closed", "T quadrature", "rel err");
    for r in [0.5, 1.0, 2.0, 5.0, 10.0] {
        let (_, exact) = exact_return_maps(&form, r)?;
        let numeric = numeric_return_map(&form, r, 1e-10)?;
        assert!((exact - numeric).abs() < 1e-7);
        let t = period_closed_form(&form, r)?;
        let q = period_numeric(&form, r)?;
        println!("{r:>6} {numeric:>14.10} {:>14.10} {q:>14.10} {:>10.2e}", t.period, (t.period - q).abs() / t.period);
    }
    let t1 = period_closed_form(&form, 1.0)?.period;
    let t8 = period_closed_form(&form, 8.0)?.period;
    println!("T(8) / T(1) = {:.12}", t8 / t1);
    Ok(())
}
