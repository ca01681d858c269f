//! The Boolean algebra of homogeneous cylinder unions and its pre-measures.
//!
//! A cylinder at level `k` fixes the first `k` observations of a
//! right-infinite sequence; a [`CylinderSet`] is a finite union of cylinders
//! at one common level. These unions form a Boolean algebra: the whole space
//! is the level-0 set containing the empty word, and any set can be lifted
//! to a higher level without changing which infinite sequences it contains.
//! Infinite sequences are never materialized; every operation works on the
//! finite word sets, and lifts that would explode are rejected against a
//! configurable word budget.
//!
//! The pre-measure of a set under a conditioning prefix is the sum of the
//! conditional probabilities of its words. The [`partition_refine`] routine
//! is the set-theoretic engine behind finite additivity: given two
//! partitions whose blocks pairwise nest or miss each other, it aligns each
//! coarse block with the finer blocks it is made of.

use crate::alphabet::{Alphabet, Word};
use crate::error::{OomError, Result};
use crate::model::MatrixOom;
use std::collections::{BTreeMap, BTreeSet};

/// Default cap on the number of words a lift or complement may materialize.
pub const DEFAULT_LIFT_BUDGET: u64 = 1_000_000;

/// A homogeneous union of cylinders: a set of words of one common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSet {
    alphabet: Alphabet,
    level: usize,
    words: BTreeSet<Word>,
}

impl CylinderSet {
    /// Builds a set from words that must all have length `level`.
    pub fn new<I>(alphabet: Alphabet, level: usize, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut set = BTreeSet::new();
        for word in words {
            alphabet.check_word(&word)?;
            if word.len() != level {
                return Err(OomError::MalformedCylinder(format!(
                    "word of length {} in a level-{} set",
                    word.len(),
                    level
                )));
            }
            set.insert(word);
        }
        Ok(Self {
            alphabet,
            level,
            words: set,
        })
    }

    /// The whole sequence space: level 0, containing the empty word.
    pub fn full_space(alphabet: Alphabet) -> Self {
        let mut words = BTreeSet::new();
        words.insert(Word::empty());
        Self {
            alphabet,
            level: 0,
            words,
        }
    }

    /// The empty set at a chosen level.
    pub fn empty(alphabet: Alphabet, level: usize) -> Self {
        Self {
            alphabet,
            level,
            words: BTreeSet::new(),
        }
    }

    /// The single cylinder fixing one word.
    pub fn from_word(alphabet: Alphabet, word: Word) -> Result<Self> {
        let level = word.len();
        Self::new(alphabet, level, [word])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The words of the set, in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// True when the set contains every word of its level.
    pub fn is_full(&self) -> bool {
        match (self.alphabet.len() as u128).checked_pow(self.level as u32) {
            Some(total) => self.words.len() as u128 == total,
            None => false,
        }
    }

    /// Re-represents the set at a higher level; the represented set of
    /// infinite sequences is unchanged. Uses the default word budget.
    pub fn lift(&self, target: usize) -> Result<Self> {
        self.lift_budgeted(target, DEFAULT_LIFT_BUDGET)
    }

    /// Like [`CylinderSet::lift`], rejecting lifts that would materialize
    /// more than `max_words` words.
    pub fn lift_budgeted(&self, target: usize, max_words: u64) -> Result<Self> {
        if target < self.level {
            return Err(OomError::LiftBelowLevel {
                level: self.level,
                target,
            });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let gap = (target - self.level) as u32;
        let per_word = (self.alphabet.len() as u128).checked_pow(gap);
        let needed = per_word.and_then(|p| p.checked_mul(self.words.len() as u128));
        match needed {
            Some(n) if n <= max_words as u128 => {}
            other => {
                return Err(OomError::LiftBudgetExceeded {
                    target,
                    needed: other.unwrap_or(u128::MAX),
                    budget: max_words,
                });
            }
        }
        let mut words = BTreeSet::new();
        for word in &self.words {
            for suffix in self.alphabet.words_of_length(target - self.level) {
                words.insert(word.concat(&suffix));
            }
        }
        Ok(Self {
            alphabet: self.alphabet.clone(),
            level: target,
            words,
        })
    }

    /// The complement within the whole space, at the same level.
    pub fn complement(&self) -> Result<Self> {
        let total = (self.alphabet.len() as u128).checked_pow(self.level as u32);
        match total {
            Some(n) if n <= DEFAULT_LIFT_BUDGET as u128 => {}
            other => {
                return Err(OomError::LiftBudgetExceeded {
                    target: self.level,
                    needed: other.unwrap_or(u128::MAX),
                    budget: DEFAULT_LIFT_BUDGET,
                });
            }
        }
        let words = self
            .alphabet
            .words_of_length(self.level)
            .filter(|w| !self.words.contains(w))
            .collect::<BTreeSet<_>>();
        Ok(Self {
            alphabet: self.alphabet.clone(),
            level: self.level,
            words,
        })
    }

    fn common_level(&self, other: &Self) -> Result<(Self, Self)> {
        if self.alphabet != other.alphabet {
            return Err(OomError::AlphabetMismatch);
        }
        let level = self.level.max(other.level);
        Ok((self.lift(level)?, other.lift(level)?))
    }

    /// Set intersection, computed at the higher of the two levels.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_level(other)?;
        let words = a.words.intersection(&b.words).cloned().collect();
        Ok(Self {
            alphabet: a.alphabet,
            level: a.level,
            words,
        })
    }

    /// Set union, computed at the higher of the two levels.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_level(other)?;
        let words = a.words.union(&b.words).cloned().collect();
        Ok(Self {
            alphabet: a.alphabet,
            level: a.level,
            words,
        })
    }

    /// Equality as subsets of the sequence space: representations at
    /// different levels are compared after lifting to the higher level.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.common_level(other)?;
        Ok(a.words == b.words)
    }

    /// Containment as subsets of the sequence space.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.common_level(other)?;
        Ok(a.words.is_subset(&b.words))
    }

    /// True when the two sets share no infinite sequence.
    pub fn is_disjoint_from(&self, other: &Self) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    /// Parses the textual form `level:word,word,…`. The word list must be
    /// non-empty; the whole space is written `0:` (one empty word at level
    /// 0). The empty set has no textual form.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let (level_text, words_text) = text.split_once(':').ok_or_else(|| {
            OomError::MalformedCylinder(format!("expected `level:words`, got `{text}`"))
        })?;
        let level: usize = level_text.trim().parse().map_err(|_| {
            OomError::MalformedCylinder(format!("bad level `{level_text}`"))
        })?;
        let mut words = Vec::new();
        for item in words_text.split(',') {
            words.push(alphabet.parse_word(item.trim())?);
        }
        Self::new(alphabet.clone(), level, words)
    }

    /// Renders the textual form `level:word,word,…` with words in
    /// lexicographic order.
    pub fn to_text(&self) -> String {
        let words: Vec<String> = self
            .words
            .iter()
            .map(|w| self.alphabet.format_word(w))
            .collect();
        format!("{}:{}", self.level, words.join(","))
    }
}

/// Pre-measure of a cylinder set under a conditioning prefix: the sum of the
/// conditional probabilities of its words, in lexicographic order. The whole
/// space has measure 1 when the prefix has positive probability and 0 when
/// it does not; the empty set always has measure 0.
pub fn premeasure(model: &MatrixOom, given: &Word, set: &CylinderSet) -> Result<f64> {
    if model.alphabet() != set.alphabet() {
        return Err(OomError::AlphabetMismatch);
    }
    let mut total = 0.0;
    for word in set.words() {
        total += model.conditional_probability(word, given)?;
    }
    Ok(total)
}

/// Finite-additivity residual: the absolute difference between the measure
/// of the union of pairwise-disjoint parts and the sum of their measures.
pub fn additivity_residual(
    model: &MatrixOom,
    given: &Word,
    parts: &[CylinderSet],
) -> Result<f64> {
    if parts.is_empty() {
        return Ok(0.0);
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            if !parts[i].is_disjoint_from(&parts[j])? {
                return Err(OomError::NotDisjoint { i, j });
            }
        }
    }
    let mut union = parts[0].clone();
    for part in &parts[1..] {
        union = union.union(part)?;
    }
    let whole = premeasure(model, given, &union)?;
    let mut sum = 0.0;
    for part in parts {
        sum += premeasure(model, given, part)?;
    }
    Ok((whole - sum).abs())
}

/// Majorization slack: the unconditioned measure scaled by the reciprocal
/// probability of the prefix, minus the conditioned measure. Nonnegative up
/// to rounding for every valid model. Rejects zero-probability prefixes.
pub fn majorization_slack(model: &MatrixOom, given: &Word, set: &CylinderSet) -> Result<f64> {
    let p = model.probability(given)?;
    if p <= 0.0 {
        return Err(OomError::ZeroProbability {
            prefix: model.alphabet().format_word(given),
        });
    }
    let unconditioned = premeasure(model, &Word::empty(), set)?;
    let conditioned = premeasure(model, given, set)?;
    Ok(unconditioned / p - conditioned)
}

/// Alignment of two compatible partitions of one ground set.
///
/// `i0` indexes the blocks of the first partition that are unions of blocks
/// of the second; `j_of[i]` lists those constituent blocks. Symmetrically,
/// `j0` indexes the blocks of the second partition that are strict unions of
/// first-partition blocks, with constituents in `i_of[j]`. `{i0}` together
/// with the `i_of` values partitions the first index set, and `{j0}` with
/// the `j_of` values partitions the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRefinement {
    pub i0: BTreeSet<usize>,
    pub j0: BTreeSet<usize>,
    pub j_of: BTreeMap<usize, BTreeSet<usize>>,
    pub i_of: BTreeMap<usize, BTreeSet<usize>>,
}

/// Aligns two partitions of the same finite ground set whose blocks are
/// pairwise disjoint or nested.
///
/// A first-partition block that contains (or equals) some second-partition
/// block lands in `i0`; a second-partition block that strictly contains some
/// first-partition block lands in `j0`. Empty blocks are rejected, as is any
/// pair of blocks that overlap without containment.
pub fn partition_refine<T: Ord>(
    a: &[BTreeSet<T>],
    b: &[BTreeSet<T>],
) -> Result<PartitionRefinement> {
    for (side, blocks) in [("first", a), ("second", b)] {
        for (index, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(OomError::EmptyPartitionBlock { side, index });
            }
        }
    }
    let ground_a: BTreeSet<&T> = a.iter().flatten().collect();
    let ground_b: BTreeSet<&T> = b.iter().flatten().collect();
    let count_a: usize = a.iter().map(BTreeSet::len).sum();
    let count_b: usize = b.iter().map(BTreeSet::len).sum();
    if count_a != ground_a.len() {
        return Err(OomError::NotAPartition(
            "blocks of the first partition overlap".into(),
        ));
    }
    if count_b != ground_b.len() {
        return Err(OomError::NotAPartition(
            "blocks of the second partition overlap".into(),
        ));
    }
    if ground_a != ground_b {
        return Err(OomError::NotAPartition(
            "the two families cover different ground sets".into(),
        ));
    }

    // Classify every pair: disjoint, A ⊇ B, or A ⊊ B. Anything else crosses.
    let mut a_contains = vec![vec![false; b.len()]; a.len()];
    let mut a_strictly_inside = vec![vec![false; b.len()]; a.len()];
    let mut meets = vec![vec![false; b.len()]; a.len()];
    for (i, block_a) in a.iter().enumerate() {
        for (j, block_b) in b.iter().enumerate() {
            let disjoint = block_a.intersection(block_b).next().is_none();
            if disjoint {
                continue;
            }
            meets[i][j] = true;
            if block_b.is_subset(block_a) {
                a_contains[i][j] = true;
            } else if block_a.is_subset(block_b) {
                a_strictly_inside[i][j] = true;
            } else {
                return Err(OomError::CrossingPair { i, j });
            }
        }
    }

    let i0: BTreeSet<usize> = (0..a.len())
        .filter(|&i| (0..b.len()).any(|j| a_contains[i][j]))
        .collect();
    let j0: BTreeSet<usize> = (0..b.len())
        .filter(|&j| (0..a.len()).any(|i| a_strictly_inside[i][j]))
        .collect();
    let j_of: BTreeMap<usize, BTreeSet<usize>> = i0
        .iter()
        .map(|&i| {
            let js = (0..b.len()).filter(|&j| meets[i][j]).collect();
            (i, js)
        })
        .collect();
    let i_of: BTreeMap<usize, BTreeSet<usize>> = j0
        .iter()
        .map(|&j| {
            let is = (0..a.len()).filter(|&i| meets[i][j]).collect();
            (j, is)
        })
        .collect();

    Ok(PartitionRefinement { i0, j0, j_of, i_of })
}

/// Applies [`partition_refine`] to two partitions given as cylinder sets,
/// lifting everything to a common level first.
pub fn partition_refine_cylinders(
    a: &[CylinderSet],
    b: &[CylinderSet],
) -> Result<PartitionRefinement> {
    let level = a
        .iter()
        .chain(b)
        .map(CylinderSet::level)
        .max()
        .unwrap_or(0);
    let to_words = |sets: &[CylinderSet]| -> Result<Vec<BTreeSet<Word>>> {
        sets.iter()
            .map(|s| Ok(s.lift(level)?.words().cloned().collect()))
            .collect()
    };
    let blocks_a = to_words(a)?;
    let blocks_b = to_words(b)?;
    partition_refine(&blocks_a, &blocks_b)
}
