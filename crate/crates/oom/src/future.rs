//! Finite linear combinations of conditional-future functions.
//!
//! For a prefix `c̄` with positive probability, the basis function `g_c̄`
//! maps a string `b̄` to the probability of observing `b̄` right after `c̄`;
//! when `c̄` has probability zero the function is identically zero. A
//! [`FutureFunction`] is a finite combination `Σ α_c̄ · g_c̄` over one model,
//! evaluated term by term in list order so results are reproducible.

use crate::alphabet::Word;
use crate::embedding;
use crate::enumerate::EnumOptions;
use crate::error::{OomError, Result};
use crate::model::MatrixOom;
use std::sync::Arc;

/// A finite linear combination of conditional-future basis functions.
#[derive(Clone, Debug)]
pub struct FutureFunction {
    model: Arc<MatrixOom>,
    terms: Vec<(Word, f64)>,
}

impl FutureFunction {
    /// The single basis function for one conditioning prefix.
    pub fn basis(model: Arc<MatrixOom>, prefix: Word) -> Result<Self> {
        model.alphabet().check_word(&prefix)?;
        Ok(Self {
            model,
            terms: vec![(prefix, 1.0)],
        })
    }

    /// The zero function.
    pub fn zero(model: Arc<MatrixOom>) -> Self {
        Self {
            model,
            terms: Vec::new(),
        }
    }

    /// Builds a combination from explicit `(prefix, coefficient)` terms.
    ///
    /// Duplicate prefixes are merged by adding their coefficients into the
    /// first occurrence, preserving first-occurrence order.
    pub fn from_terms(model: Arc<MatrixOom>, terms: Vec<(Word, f64)>) -> Result<Self> {
        let mut merged: Vec<(Word, f64)> = Vec::with_capacity(terms.len());
        for (word, coef) in terms {
            model.alphabet().check_word(&word)?;
            match merged.iter_mut().find(|(w, _)| *w == word) {
                Some((_, c)) => *c += coef,
                None => merged.push((word, coef)),
            }
        }
        Ok(Self {
            model,
            terms: merged,
        })
    }

    pub fn model(&self) -> &Arc<MatrixOom> {
        &self.model
    }

    pub fn terms(&self) -> &[(Word, f64)] {
        &self.terms
    }

    /// True when both functions are combinations over the same model.
    pub fn same_model(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.model, &other.model) || *self.model == *other.model
    }

    /// Evaluates the combination at a string, summing terms left to right.
    pub fn evaluate(&self, at: &Word) -> Result<f64> {
        self.model.alphabet().check_word(at)?;
        let mut acc = 0.0;
        for (prefix, coef) in &self.terms {
            acc += coef * self.model.conditional_probability(at, prefix)?;
        }
        Ok(acc)
    }

    /// Evaluation at the empty string: each positive-probability term
    /// contributes its coefficient, zero-probability terms contribute 0.
    pub fn sigma_value(&self) -> Result<f64> {
        self.evaluate(&Word::empty())
    }

    /// Applies the observable operator of one symbol at the function level:
    /// each term `α·g_c̄` becomes `α·P(a|c̄)·g_{c̄a}`, and terms whose
    /// extended prefix has probability zero are dropped.
    pub fn apply_operator(&self, symbol: usize) -> Result<Self> {
        if symbol >= self.model.alphabet().len() {
            return Err(OomError::UnknownSymbol {
                symbol: format!("#{symbol}"),
            });
        }
        let step = Word::from_indices(vec![symbol]);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (prefix, coef) in &self.terms {
            let extended = prefix.extended(symbol);
            if self.model.probability(&extended)? <= 0.0 {
                continue;
            }
            let weight = self.model.conditional_probability(&step, prefix)?;
            terms.push((extended, coef * weight));
        }
        Ok(Self {
            model: self.model.clone(),
            terms,
        })
    }

    /// Largest deviation of the operator-applied function from the shifted
    /// original over all strings up to `depth`: applying the operator of a
    /// symbol and then evaluating at `w̄` must match evaluating the original
    /// at the symbol-prefixed string.
    pub fn shift_deviation(&self, symbol: usize, depth: usize) -> Result<f64> {
        let applied = self.apply_operator(symbol)?;
        let step = Word::from_indices(vec![symbol]);
        let mut worst = 0.0f64;
        for k in 0..=depth {
            for w in self.model.alphabet().words_of_length(k) {
                let lhs = applied.evaluate(&w)?;
                let rhs = self.evaluate(&step.concat(&w))?;
                worst = worst.max((lhs - rhs).abs());
            }
        }
        Ok(worst)
    }

    /// Largest absolute value over all strings up to `depth`, including the
    /// empty string. A lower bound for the supremum over all strings; exact
    /// for basis functions, whose supremum is attained at the empty string.
    pub fn sup_norm_truncated(&self, depth: usize) -> Result<f64> {
        let mut worst = 0.0f64;
        for k in 0..=depth {
            for w in self.model.alphabet().words_of_length(k) {
                worst = worst.max(self.evaluate(&w)?.abs());
            }
        }
        Ok(worst)
    }

    /// The combination scaled by a constant.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), factor * c))
                .collect(),
        }
    }

    /// The sum of two combinations over the same model. The left operand's
    /// terms come first; shared prefixes merge into the left position.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.same_model(other) {
            return Err(OomError::ModelMismatch);
        }
        let mut terms = self.terms.clone();
        for (word, coef) in &other.terms {
            match terms.iter_mut().find(|(w, _)| w == word) {
                Some((_, c)) => *c += coef,
                None => terms.push((word.clone(), *coef)),
            }
        }
        Ok(Self {
            model: self.model.clone(),
            terms,
        })
    }
}

/// Greedily picks a prefix family whose basis functions stay numerically
/// independent at the given truncation depth.
///
/// Candidates are tried in order; one is kept when the smallest eigenvalue
/// of the truncated Gram matrix of the kept set stays above `tol`.
/// Zero-probability candidates are never selected (their basis function is
/// identically zero), and duplicates are skipped.
pub fn select_basis(
    model: &Arc<MatrixOom>,
    candidates: &[Word],
    depth: usize,
    tol: f64,
    opts: &EnumOptions,
) -> Result<Vec<Word>> {
    let mut selected: Vec<Word> = Vec::new();
    for candidate in candidates {
        if selected.contains(candidate) {
            continue;
        }
        if model.probability(candidate)? <= 0.0 {
            continue;
        }
        let mut trial = selected.clone();
        trial.push(candidate.clone());
        let entries = embedding::gram_entries(model, &trial, depth, opts)?;
        let smallest = embedding::sorted_symmetric_eigenvalues(&entries)
            .first()
            .copied()
            .unwrap_or(0.0);
        if smallest > tol {
            selected = trial;
        }
    }
    Ok(selected)
}
