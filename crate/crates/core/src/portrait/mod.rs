//! Compactification charts, sign-case classification and SVG rendering.

mod chart;
mod classify;
mod render;

pub use chart::{chart_transform, to_plane, Chart, ChartField};
pub use classify::{
    all_signatures, case_for_signature, classify_case, infinity_equilibria, is_realizable, signature,
    signature_labels, InfinityEquilibrium, InfinityKind, Location, PortraitCase,
};
pub use render::{render, seeds, RenderOptions};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CanonicalForm, FormI, FormII, FormIII};
    use crate::center::center_report;
    use crate::simulate::{integrate_with, IntegrateOptions};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nonzero(rng: &mut ChaCha8Rng) -> f64 {
        let v: f64 = rng.gen_range(0.1..3.0);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    #[test]
    fn has_center_agrees_with_center_report() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut centers = 0;
        for k in 0..1000 {
            let form = match k % 3 {
                0 => CanonicalForm::I(FormI::new(nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng)).unwrap()),
                1 => CanonicalForm::II(
                    FormII::new(nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng)).unwrap(),
                ),
                _ => CanonicalForm::III(
                    FormIII::new(nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng)).unwrap(),
                ),
            };
            let case = classify_case(&form).unwrap();
            assert_eq!(case.has_center, center_report(&form).is_center, "{form:?}");
            assert!(is_realizable(form.variant(), &case.signature));
            centers += case.has_center as usize;
        }
        assert!(centers > 0);
    }

    #[test]
    fn render_is_deterministic() {
        let f = CanonicalForm::III(FormIII::new(1.0, -1.0, -1.0, 3.0).unwrap());
        let opts = RenderOptions { grid: 6, ..RenderOptions::default() };
        assert_eq!(render(&f, &opts).unwrap(), render(&f, &opts).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn form_i_mirror_symmetry(
            a1 in prop::sample::select(vec![-2.0, -0.7, 0.5, 1.5]),
            b1 in prop::sample::select(vec![-1.5, 0.8, 2.0]),
            at in prop::sample::select(vec![-1.2, 0.6, 3.0]),
            x0 in 0.1f64..2.0,
            y0 in prop::sample::select(vec![-1.3, -0.4, 0.3, 1.1]),
        ) {
            let f = FormI::new(a1, b1, at).unwrap().field();
            let opts = IntegrateOptions { tmax: 1.0, tol: 1e-11, escape_radius: Some(50.0), ..IntegrateOptions::default() };
            let a = integrate_with(&f, [-x0, y0], &opts).unwrap();
            let b = integrate_with(&f, [x0, y0], &IntegrateOptions { backward: true, ..opts }).unwrap();
            let (pa, pb) = (a.last(), b.last());
            prop_assert!((pa.t - pb.t).abs() < 1e-12);
            prop_assert!((pa.x + pb.x).abs() < 1e-7 * pa.x.abs().max(1.0), "{:?} {:?}", pa, pb);
            prop_assert!((pa.y - pb.y).abs() < 1e-7 * pa.y.abs().max(1.0), "{:?} {:?}", pa, pb);
        }
    }
}
