//! Build models and run the exhaustive depth-bounded validity checks.
//!
//! ```bash
//! cargo run -p oom --example validate_model
//! ```

use nalgebra::DMatrix;
use oom::{BuiltinModel, MatrixOom, ValidationOptions};

fn main() -> oom::Result<()> {
    // Every bundled model passes validation: nonnegative string
    // probabilities, per-length totals equal to one, stationary start.
    for builtin in BuiltinModel::all() {
        let model = builtin.build();
        let report = model.validate(&ValidationOptions::with_depth(8))?;
        println!("== {} ==\n{report}\n", builtin.name());
    }

    // Scaling the operators of a valid model breaks the level sums; the
    // report localizes the damage instead of erroring out.
    let sticky = BuiltinModel::TwoStateSticky.build();
    let inflated: Vec<DMatrix<f64>> = (0..2)
        .map(|s| sticky.operator(s).unwrap() * 1.01)
        .collect();
    let broken = MatrixOom::new(
        sticky.alphabet().clone(),
        inflated,
        sticky.sigma().clone(),
        sticky.initial_state().clone(),
    )?;
    let report = broken.validate(&ValidationOptions::with_depth(3))?;
    println!("== two_state_sticky with operators scaled by 1.01 ==\n{report}");
    assert!(!report.passed());
    Ok(())
}
