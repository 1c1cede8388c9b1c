//! Enumerate every sign pattern of the classifying quantities and count the
//! resulting portrait cases.

use std::collections::BTreeSet;

use pwqh::algebra::{CanonicalForm, Variant};
use pwqh::portrait::{all_signatures, case_for_signature, classify_case, is_realizable, signature_labels};

fn main() -> pwqh::error::Result<()> {
    for v in [Variant::I, Variant::II, Variant::III] {
        let sigs = all_signatures(v);
        let ids: BTreeSet<u32> = sigs.iter().filter_map(|s| case_for_signature(v, s)).collect();
        let realizable = sigs.iter().filter(|s| is_realizable(v, s)).count();
        println!(
            "{v:?}: signs of {:?}, {} patterns, {} case ids, {} realizable",
            signature_labels(v),
            sigs.len(),
            ids.len(),
            realizable
        );
    }

    println!();
    for params in [[-1.0, -1.0, -1.0, 3.0], [1.0, -1.0, -1.0, 3.0], [2.0, 1.0, 1.0, 1.5], [-1.0, 1.0, 1.0, -0.5]] {
        let form = CanonicalForm::from_params(Variant::III, &params)?;
        let c = classify_case(&form)?;
        println!("III {params:?} -> case {} ({})", c.case_id, c.signature);
    }
    Ok(())
}
