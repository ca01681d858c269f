//! Draw sequences from a model and compare empirical frequencies with the
//! exact string probabilities.
//!
//! ```bash
//! cargo run -p oom --example sampling --release
//! ```

use oom::BuiltinModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> oom::Result<()> {
    let model = BuiltinModel::TwoStateSticky.build();
    let alphabet = model.alphabet();

    println!("five length-20 draws (seed 2):");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let word = model.sample_sequence_with(20, &mut rng)?;
        println!("  {}", alphabet.format_word(&word));
    }

    // Pair frequencies against the exact values.
    let draws = 200_000;
    let mut counts = [0usize; 4];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..draws {
        let word = model.sample_sequence_with(2, &mut rng)?;
        counts[word.indices()[0] * 2 + word.indices()[1]] += 1;
    }
    println!("\npair frequencies over {draws} draws:");
    for (i, text) in ["aa", "ab", "ba", "bb"].iter().enumerate() {
        let word = alphabet.parse_word(text)?;
        let exact = model.probability(&word)?;
        let empirical = counts[i] as f64 / draws as f64;
        println!("  {text}: empirical {empirical:.4}, exact {exact:.4}");
    }

    // The alternating mixture only ever produces alternating strings.
    let alternating = BuiltinModel::Alternating.build();
    let word = alternating.sample_sequence(12, 3)?;
    println!(
        "\nalternating sample: {}",
        alternating.alphabet().format_word(&word)
    );
    Ok(())
}
