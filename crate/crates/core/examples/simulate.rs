//! Integrate one orbit of a piecewise system with event detection on the
//! switching line and print it as CSV.
//!
//! Usage: `simulate [x0 y0]`

use pwqh::algebra::{FormI, FormIII, Zone};
use pwqh::simulate::{integrate, integrate_with, IntegrateOptions};

fn main() -> pwqh::error::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let x0 = if args.len() == 2 { [args[0], args[1]] } else { [1.0, 0.5] };

    // one lap around the center, stopping on the second crossing
    let center = FormI::new(-1.0, 1.0, 1.0)?.field();
    let opts = IntegrateOptions { start_zone: Some(Zone::Upper), max_crossings: Some(2), ..IntegrateOptions::new(50.0, 1e-10) };
    let lap = integrate_with(&center, [1.0, 0.0], &opts)?;
    for e in &lap.events {
        eprintln!("{} at t = {:.10}, x = {:.10}", e.kind.as_str(), e.t, e.x);
    }

    // sliding: Form III with b3 < 0 is drawn into the axis
    let slide = FormIII::new(1.0, -1.0, -1.0, 3.0)?.field();
    let traj = integrate(&slide, x0, 60.0, 1e-10)?;
    if let Some(stop) = traj.stop() {
        eprintln!("form III orbit from {x0:?}: {} at t = {:.4}", stop.kind.as_str(), stop.t);
    }
    print!("{}", lap.to_csv());
    Ok(())
}
