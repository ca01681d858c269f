//! Shared oracles and randomized generators for the integration suites.
//!
//! The probability oracles work directly on HMM parameters and never touch
//! the operator-matrix code path they are used to check: one sums over all
//! hidden-state paths, the other runs the textbook forward recursion.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use oom::{Alphabet, BuiltinModel, CylinderSet, FutureFunction, Hmm, MatrixOom, Word};
use rand::Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// HMM parameter sets matching the three built-in models, for oracle use.
pub fn builtin_hmm(builtin: BuiltinModel) -> Hmm {
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    match builtin {
        BuiltinModel::IidUniform => Hmm {
            alphabet,
            transition: DMatrix::from_row_slice(1, 1, &[1.0]),
            emission: DMatrix::from_row_slice(1, 2, &[0.5, 0.5]),
            initial: DVector::from_vec(vec![1.0]),
        },
        BuiltinModel::TwoStateSticky => Hmm {
            alphabet,
            transition: DMatrix::from_row_slice(2, 2, &[0.9, 0.1, 0.1, 0.9]),
            emission: DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]),
            initial: DVector::from_vec(vec![0.5, 0.5]),
        },
        BuiltinModel::Alternating => Hmm {
            alphabet,
            transition: DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            emission: DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]),
            initial: DVector::from_vec(vec![0.5, 0.5]),
        },
    }
}

/// Brute-force string probability: the sum over every hidden-state path of
/// initial mass times emissions times transitions.
pub fn path_sum_probability(hmm: &Hmm, word: &Word) -> f64 {
    let n = word.len();
    if n == 0 {
        return 1.0;
    }
    let states = hmm.states();
    let mut total = 0.0;
    let mut path = vec![0usize; n];
    loop {
        let mut weight = hmm.initial[path[0]] * hmm.emission[(path[0], word.indices()[0])];
        for t in 1..n {
            weight *= hmm.transition[(path[t - 1], path[t])]
                * hmm.emission[(path[t], word.indices()[t])];
        }
        total += weight;

        // Odometer over hidden paths.
        let mut pos = n;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            path[pos] += 1;
            if path[pos] < states {
                break;
            }
            path[pos] = 0;
        }
    }
}

/// Forward-recursion string probability.
pub fn forward_probability(hmm: &Hmm, word: &Word) -> f64 {
    if word.is_empty() {
        return 1.0;
    }
    let states = hmm.states();
    let mut alpha: Vec<f64> = (0..states)
        .map(|s| hmm.initial[s] * hmm.emission[(s, word.indices()[0])])
        .collect();
    for &symbol in &word.indices()[1..] {
        let mut next = vec![0.0; states];
        for (s, a) in alpha.iter().enumerate() {
            for (s2, slot) in next.iter_mut().enumerate() {
                *slot += a * hmm.transition[(s, s2)] * hmm.emission[(s2, symbol)];
            }
        }
        alpha = next;
    }
    alpha.iter().sum()
}

pub fn arc_model(builtin: BuiltinModel) -> Arc<MatrixOom> {
    Arc::new(builtin.build())
}

/// All words up to `max_len` (inclusive), lexicographic within each length.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|k| alphabet.words_of_length(k))
        .collect()
}

/// All positive-probability words up to `max_len`.
pub fn positive_words_up_to(model: &MatrixOom, max_len: usize) -> Vec<Word> {
    words_up_to(model.alphabet(), max_len)
        .into_iter()
        .filter(|w| model.probability(w).unwrap() > 0.0)
        .collect()
}

/// A random word of positive probability and length at most `max_len`.
pub fn random_positive_word<R: Rng>(model: &MatrixOom, rng: &mut R, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(0..=max_len);
        let indices = (0..len)
            .map(|_| rng.gen_range(0..model.alphabet().len()))
            .collect();
        let word = Word::from_indices(indices);
        if model.probability(&word).unwrap() > 0.0 {
            return word;
        }
    }
}

/// A random combination of up to `max_terms` positive-probability basis
/// functions with coefficients in [-2, 2].
pub fn random_future_function<R: Rng>(
    model: &Arc<MatrixOom>,
    rng: &mut R,
    max_prefix_len: usize,
    max_terms: usize,
) -> FutureFunction {
    let terms: Vec<(Word, f64)> = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let word = random_positive_word(model, rng, max_prefix_len);
            (word, rng.gen_range(-2.0..2.0))
        })
        .collect();
    FutureFunction::from_terms(model.clone(), terms).unwrap()
}

/// A random cylinder set at a random level up to `max_level`.
pub fn random_cylinder<R: Rng>(
    alphabet: &Alphabet,
    rng: &mut R,
    max_level: usize,
) -> CylinderSet {
    let level = rng.gen_range(0..=max_level);
    let words = alphabet
        .words_of_length(level)
        .filter(|_| rng.gen_bool(0.5))
        .collect::<Vec<_>>();
    CylinderSet::new(alphabet.clone(), level, words).unwrap()
}

/// A random set of pairwise prefix-incomparable words, so their cylinders
/// are pairwise disjoint. May be empty; callers retry as needed.
pub fn random_prefix_free_words<R: Rng>(
    alphabet: &Alphabet,
    rng: &mut R,
    max_depth: usize,
) -> Vec<Word> {
    let mut out = Vec::new();
    descend(alphabet, rng, &Word::empty(), max_depth, &mut out);
    out
}

fn descend<R: Rng>(
    alphabet: &Alphabet,
    rng: &mut R,
    word: &Word,
    max_depth: usize,
    out: &mut Vec<Word>,
) {
    for sym in 0..alphabet.len() {
        let child = word.extended(sym);
        let roll: f64 = rng.gen();
        if roll < 0.35 {
            out.push(child);
        } else if roll < 0.80 && child.len() < max_depth {
            descend(alphabet, rng, &child, max_depth, out);
        }
    }
}

/// A random family of pairwise disjoint cylinder sets at mixed levels.
pub fn random_disjoint_family<R: Rng>(
    alphabet: &Alphabet,
    rng: &mut R,
    max_depth: usize,
    max_parts: usize,
) -> Vec<CylinderSet> {
    let words = loop {
        let w = random_prefix_free_words(alphabet, rng, max_depth);
        if !w.is_empty() {
            break w;
        }
    };
    let parts = rng.gen_range(1..=max_parts.min(words.len()));
    let mut groups: Vec<Vec<Word>> = vec![Vec::new(); parts];
    for word in words {
        let slot = rng.gen_range(0..parts);
        groups[slot].push(word);
    }
    groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|group| {
            let level = group.iter().map(Word::len).max().unwrap();
            let mut set = CylinderSet::empty(alphabet.clone(), level);
            for word in group {
                let lifted = CylinderSet::from_word(alphabet.clone(), word)
                    .unwrap()
                    .lift(level)
                    .unwrap();
                set = set.union(&lifted).unwrap();
            }
            set
        })
        .collect()
}

/// A random partition of `0..size` into nonempty blocks.
pub fn random_partition<R: Rng>(rng: &mut R, size: u64, max_blocks: usize) -> Vec<BTreeSet<u64>> {
    let blocks = rng.gen_range(1..=max_blocks);
    let mut out: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); blocks];
    for x in 0..size {
        let slot = rng.gen_range(0..blocks);
        out[slot].insert(x);
    }
    out.retain(|b| !b.is_empty());
    out
}

/// Splits one block into a random partition of itself.
fn split_block<R: Rng>(rng: &mut R, block: &BTreeSet<u64>) -> Vec<BTreeSet<u64>> {
    let parts = rng.gen_range(1..=block.len());
    let mut out: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); parts];
    for &x in block {
        let slot = rng.gen_range(0..parts);
        out[slot].insert(x);
    }
    out.retain(|b| !b.is_empty());
    out
}

/// Two partitions of `0..size` whose blocks pairwise nest or miss: each
/// block of a random base partition is kept whole on one side and split on
/// the other (or kept whole on both).
pub fn random_compatible_partitions<R: Rng>(
    rng: &mut R,
    size: u64,
) -> (Vec<BTreeSet<u64>>, Vec<BTreeSet<u64>>) {
    let base = random_partition(rng, size, 6);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for block in base {
        match rng.gen_range(0..3) {
            0 => {
                a.push(block.clone());
                b.extend(split_block(rng, &block));
            }
            1 => {
                b.push(block.clone());
                a.extend(split_block(rng, &block));
            }
            _ => {
                a.push(block.clone());
                b.push(block);
            }
        }
    }
    (a, b)
}
