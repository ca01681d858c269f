//! Estimating process dimension from the numerical rank of truncated Gram
//! matrices.
//!
//! ```bash
//! cargo run -p oom --example gram_dimension
//! ```

use oom::embedding::gram_matrix;
use oom::{BuiltinModel, EnumOptions, Word};
use std::sync::Arc;

fn main() -> oom::Result<()> {
    let opts = EnumOptions::default();
    for builtin in BuiltinModel::all() {
        let model = Arc::new(builtin.build());
        let alphabet = model.alphabet().clone();

        // All positive-probability prefixes up to length 2.
        let mut prefixes = vec![Word::empty()];
        for k in 1..=2 {
            for w in alphabet.words_of_length(k) {
                if model.probability(&w)? > 0.0 {
                    prefixes.push(w);
                }
            }
        }

        let gram = gram_matrix(&model, &prefixes, 12, 1e-8, &opts)?;
        println!("== {} ==", builtin.name());
        let shown: Vec<String> = prefixes
            .iter()
            .map(|w| {
                let t = alphabet.format_word(w);
                if t.is_empty() { "eps".into() } else { t }
            })
            .collect();
        println!("prefixes: {}", shown.join(" "));
        for r in 0..gram.entries.nrows() {
            let row: Vec<String> = (0..gram.entries.ncols())
                .map(|c| format!("{:8.4}", gram.entries[(r, c)]))
                .collect();
            println!("  {}", row.join(" "));
        }
        let eigen: Vec<String> = gram
            .eigenvalues
            .iter()
            .map(|l| format!("{l:.2e}"))
            .collect();
        println!("eigenvalues: {}", eigen.join("  "));
        println!(
            "numerical rank = {} -> estimated process dimension\n",
            gram.numerical_rank
        );
    }
    Ok(())
}
