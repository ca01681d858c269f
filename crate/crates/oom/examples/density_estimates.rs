//! Density estimates of conditional futures with respect to the
//! unconditioned measure, read along single strings.
//!
//! ```bash
//! cargo run -p oom --example density_estimates
//! ```

use oom::embedding::density_estimate;
use oom::{BuiltinModel, FutureFunction, OomError, Word};
use std::sync::Arc;

fn main() -> oom::Result<()> {
    let model = Arc::new(BuiltinModel::TwoStateSticky.build());
    let alphabet = model.alphabet().clone();
    let a = alphabet.parse_word("a")?;
    let g_a = FutureFunction::basis(model.clone(), a.clone())?;

    // Along the all-a ray the estimate settles immediately: the chain's
    // memory beyond the last symbol is exhausted after one step. The value
    // stays inside [0, 1/P(a)] = [0, 2].
    println!("density of the future after a, read along a^k:");
    for k in 0..=8 {
        let ray = Word::from_indices(vec![0; k]);
        println!("  k = {k}: {:.12}", density_estimate(&g_a, &ray)?);
    }

    // Along alternating strings the conditioned process is less likely
    // than the unconditioned one, and the ratio decays geometrically.
    println!("\nread along (ab)^k:");
    for k in 1..=4 {
        let mut indices = Vec::new();
        for _ in 0..k {
            indices.extend([0, 1]);
        }
        let word = Word::from_indices(indices);
        println!("  k = {k}: {:.12}", density_estimate(&g_a, &word)?);
    }

    // On the iid process all futures coincide, so every density is 1.
    let iid = Arc::new(BuiltinModel::IidUniform.build());
    let g = FutureFunction::basis(iid.clone(), iid.alphabet().parse_word("a")?)?;
    let w = iid.alphabet().parse_word("babb")?;
    println!("\niid density along babb: {}", density_estimate(&g, &w)?);

    // Zero-probability strings carry no mass and are rejected.
    let alternating = Arc::new(BuiltinModel::Alternating.build());
    let g = FutureFunction::basis(alternating.clone(), alternating.alphabet().parse_word("a")?)?;
    let impossible = alternating.alphabet().parse_word("aa")?;
    match density_estimate(&g, &impossible) {
        Err(OomError::ZeroProbability { prefix }) => {
            println!("density along {prefix}: rejected (zero-probability string)")
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
