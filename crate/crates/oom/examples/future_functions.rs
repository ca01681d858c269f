//! Conditional-future functions: evaluation, operator application, the
//! shift identity, truncated sup norms, and greedy basis selection.
//!
//! ```bash
//! cargo run -p oom --example future_functions
//! ```

use oom::future::select_basis;
use oom::{BuiltinModel, EnumOptions, FutureFunction, Word};
use std::sync::Arc;

fn main() -> oom::Result<()> {
    let model = Arc::new(BuiltinModel::TwoStateSticky.build());
    let alphabet = model.alphabet().clone();

    // The future after seeing "a": a function on strings.
    let a = alphabet.parse_word("a")?;
    let g_a = FutureFunction::basis(model.clone(), a.clone())?;
    println!("values of the future conditioned on a:");
    for text in ["", "a", "b", "aa", "ba"] {
        let w = alphabet.parse_word(text)?;
        println!(
            "  g_a({:<3}) = {:.6}",
            if text.is_empty() { "eps" } else { text },
            g_a.evaluate(&w)?
        );
    }

    // Applying the observable operator of a symbol shifts the function:
    // evaluating the image at w equals evaluating the original at a·w.
    let shifted = g_a.apply_operator(0)?;
    println!("\nafter applying the operator of a:");
    for (prefix, coef) in shifted.terms() {
        println!("  term {} with coefficient {coef:.4}", alphabet.format_word(prefix));
    }
    println!(
        "largest shift-identity deviation up to depth 6: {:.3e}",
        g_a.shift_deviation(0, 6)?
    );

    // Linear combinations evaluate term by term.
    let g_eps = FutureFunction::basis(model.clone(), Word::empty())?;
    let difference = g_a.add(&g_eps.scale(-1.0))?;
    println!(
        "\nsup norm of g_a - g_eps up to depth 8: {:.6}",
        difference.sup_norm_truncated(8)?
    );
    println!("sup norm of g_a alone: {:.6}", g_a.sup_norm_truncated(8)?);

    // Greedy basis selection recovers the process dimension: the sticky
    // chain has two independent futures, the iid process only one.
    let candidates: Vec<Word> = [
        Word::empty(),
        alphabet.parse_word("a")?,
        alphabet.parse_word("b")?,
        alphabet.parse_word("aa")?,
        alphabet.parse_word("ab")?,
    ]
    .to_vec();
    let picked = select_basis(&model, &candidates, 10, 1e-8, &EnumOptions::default())?;
    let shown: Vec<String> = picked
        .iter()
        .map(|w| {
            let t = alphabet.format_word(w);
            if t.is_empty() { "eps".into() } else { t }
        })
        .collect();
    println!("\nselected basis prefixes for two_state_sticky: {shown:?}");

    let iid = Arc::new(BuiltinModel::IidUniform.build());
    let candidates: Vec<Word> = [
        Word::empty(),
        iid.alphabet().parse_word("a")?,
        iid.alphabet().parse_word("b")?,
    ]
    .to_vec();
    let picked = select_basis(&iid, &candidates, 10, 1e-8, &EnumOptions::default())?;
    println!("selected basis size for iid_uniform: {}", picked.len());
    Ok(())
}
