//! String and conditional probabilities as functional-of-operator products.
//!
//! ```bash
//! cargo run -p oom --example string_probabilities
//! ```

use oom::BuiltinModel;

fn main() -> oom::Result<()> {
    let model = BuiltinModel::TwoStateSticky.build();
    let alphabet = model.alphabet();

    println!("two_state_sticky string probabilities:");
    for text in ["", "a", "aa", "ab", "aab", "abab"] {
        let word = alphabet.parse_word(text)?;
        let p = model.probability(&word)?;
        println!("  P({:<5}) = {p:.6}", if text.is_empty() { "eps" } else { text });
    }

    // The sticky chain keeps its symbol with probability 0.9.
    let a = alphabet.parse_word("a")?;
    println!(
        "\n  P(a | a)  = {:.6}",
        model.conditional_probability(&a, &a)?
    );
    let b = alphabet.parse_word("b")?;
    println!(
        "  P(b | a)  = {:.6}",
        model.conditional_probability(&b, &a)?
    );

    // A whole-string operator is the product of per-symbol operators, first
    // symbol innermost; the functional of its action on the initial state
    // recovers the string probability.
    let aa = alphabet.parse_word("aa")?;
    let composite = model.composite_operator(&aa)?;
    let via_matrix = model.apply_sigma(&(&composite * model.initial_state()));
    println!("\n  P(aa) via the composite operator = {via_matrix:.6}");

    // Per-length totals are one: some string of each length must occur.
    for k in 1..=6 {
        let total: f64 = alphabet
            .words_of_length(k)
            .map(|w| model.probability(&w).unwrap())
            .sum();
        println!("  sum over length {k}: {total:.15}");
    }

    // The alternating mixture makes half of all strings impossible.
    let alternating = BuiltinModel::Alternating.build();
    let aa = alternating.alphabet().parse_word("aa")?;
    let ab = alternating.alphabet().parse_word("ab")?;
    println!("\nalternating: P(aa) = {}, P(ab) = {}",
        alternating.probability(&aa)?,
        alternating.probability(&ab)?);
    println!(
        "conditioning on the impossible past aa gives the zero future: {}",
        alternating.conditional_probability(&ab, &aa)?
    );
    Ok(())
}
