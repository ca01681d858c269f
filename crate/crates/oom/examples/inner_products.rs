//! Truncated inner products: the direct series, the operator-form route,
//! stabilization studies, and the norm contraction of the operators.
//!
//! ```bash
//! cargo run -p oom --example inner_products
//! ```

use oom::embedding::{
    contraction_slack, inner_product_converged, inner_product_operator_form,
    inner_product_truncated, norm2_truncated,
};
use oom::{BuiltinModel, EnumOptions, FutureFunction};
use std::sync::Arc;

fn main() -> oom::Result<()> {
    let opts = EnumOptions::default();
    let model = Arc::new(BuiltinModel::TwoStateSticky.build());
    let alphabet = model.alphabet().clone();

    let a = alphabet.parse_word("a")?;
    let b = alphabet.parse_word("b")?;
    let g_a = FutureFunction::basis(model.clone(), a.clone())?;
    let g_b = FutureFunction::basis(model.clone(), b.clone())?;

    // The partial sums of <g_a, g_a> grow toward their limit; the two
    // algebraically equal routes track each other at every depth.
    println!("depth   direct              operator form");
    for n in 1..=10 {
        let direct = inner_product_truncated(&g_a, &g_a, n, &opts)?;
        let operator = inner_product_operator_form(&model, &a, &a, n, &opts)?;
        println!("{n:>5}   {direct:.15}   {operator:.15}");
    }

    // Stabilization study for the mixed pairing.
    let report = inner_product_converged(&g_a, &g_b, 1e-8, 20, 3, &opts)?;
    println!("\n{report}");

    // Norms and the contraction of the observable operators: applying an
    // operator never increases the 2-norm read one level deeper.
    println!("\n||g_a||_6 = {:.12}", norm2_truncated(&g_a, 6, &opts)?);
    let mixed = g_a.scale(0.8).add(&g_b.scale(-0.5))?;
    for sym in 0..alphabet.len() {
        let slack = contraction_slack(&mixed, sym, 6, &opts)?;
        println!(
            "contraction slack for the operator of {}: {slack:.6} (never below zero)",
            alphabet.symbol(sym).unwrap()
        );
    }

    // On the iid process every conditional future equals the unconditioned
    // one, so all pairings collapse to 1.
    let iid = Arc::new(BuiltinModel::IidUniform.build());
    let ia = iid.alphabet().parse_word("a")?;
    let ib = iid.alphabet().parse_word("b")?;
    println!(
        "\niid pairing of the futures after a and after b: {}",
        inner_product_operator_form(&iid, &ia, &ib, 8, &opts)?
    );
    Ok(())
}
