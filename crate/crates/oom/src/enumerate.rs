//! Depth-first enumeration over the prefix tree of all strings.
//!
//! Both the model validator and the truncated inner products walk the full
//! tree of strings up to some depth, carrying state vectors along each
//! branch. The walkers here fix the reference semantics: children are
//! visited in alphabet order, and totals are combined per first-symbol
//! subtree in that order, so the serial and parallel schedules produce
//! identical results. Every examined string charges one node against a
//! budget; exceeding it aborts the walk.

use crate::error::{OomError, Result};
use crate::model::{MatrixOom, EPS_NEG};
use nalgebra::DVector;
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

/// Knobs for prefix-tree enumerations.
#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Maximum number of tree nodes (strings examined) per operation.
    pub node_budget: u64,
    /// Fan out over first-symbol subtrees instead of scanning serially.
    /// Results agree bit-for-bit with the serial schedule.
    pub parallel: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            node_budget: 10_000_000,
            parallel: false,
        }
    }
}

impl EnumOptions {
    /// No practical node limit.
    pub fn unlimited() -> Self {
        Self {
            node_budget: u64::MAX,
            parallel: false,
        }
    }

    pub fn with_budget(node_budget: u64) -> Self {
        Self {
            node_budget,
            parallel: false,
        }
    }
}

/// Shared node counter for one logical operation.
pub(crate) struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Self {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub(crate) fn charge(&self, nodes: u64) -> Result<()> {
        let before = self.used.fetch_add(nodes, Ordering::Relaxed);
        if before.saturating_add(nodes) > self.limit {
            return Err(OomError::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// Per-length totals and the worst value seen in a full scan.
#[derive(Debug)]
pub(crate) struct LevelScan {
    /// `level_sums[k]` is the total probability over all strings of length
    /// `k`; index 0 holds the functional of the initial state.
    pub level_sums: Vec<f64>,
    /// Minimum raw (unclamped) value encountered anywhere in the tree.
    pub min_value: f64,
}

/// Scans every string up to `depth` without pruning, accumulating per-level
/// totals and the minimum raw value.
pub(crate) fn level_scan(m: &MatrixOom, depth: usize, opts: &EnumOptions) -> Result<LevelScan> {
    let budget = Budget::new(opts.node_budget);
    let root_value = m.apply_sigma(m.initial_state());

    let scan_symbol = |sym: usize| -> Result<LevelScan> {
        let state = m.apply_operator(sym, m.initial_state())?;
        budget.charge(1)?;
        let mut partial = LevelScan {
            level_sums: vec![0.0; depth + 1],
            min_value: f64::INFINITY,
        };
        scan_rec(m, &state, 1, depth, &budget, &mut partial)?;
        Ok(partial)
    };

    let partials: Vec<LevelScan> = if depth == 0 {
        Vec::new()
    } else if opts.parallel {
        (0..m.alphabet().len())
            .into_par_iter()
            .map(scan_symbol)
            .collect::<Result<_>>()?
    } else {
        (0..m.alphabet().len())
            .map(scan_symbol)
            .collect::<Result<_>>()?
    };

    let mut total = LevelScan {
        level_sums: vec![0.0; depth + 1],
        min_value: root_value,
    };
    total.level_sums[0] = root_value;
    for partial in partials {
        for (k, v) in partial.level_sums.iter().enumerate() {
            total.level_sums[k] += v;
        }
        total.min_value = total.min_value.min(partial.min_value);
    }
    Ok(total)
}

fn scan_rec(
    m: &MatrixOom,
    state: &DVector<f64>,
    level: usize,
    depth: usize,
    budget: &Budget,
    out: &mut LevelScan,
) -> Result<()> {
    let value = m.apply_sigma(state);
    out.level_sums[level] += value;
    out.min_value = out.min_value.min(value);
    if level == depth {
        return Ok(());
    }
    for sym in 0..m.alphabet().len() {
        budget.charge(1)?;
        let child = m.apply_operator(sym, state)?;
        scan_rec(m, &child, level + 1, depth, budget, out)?;
    }
    Ok(())
}

/// A linear combination of propagated state vectors, evaluated at tree
/// leaves as `Σ coef·(σ(state)/norm)` with the terms in list order.
#[derive(Clone)]
pub(crate) struct WeightedStates {
    pub coefs: Vec<f64>,
    pub norms: Vec<f64>,
    pub states: Vec<DVector<f64>>,
}

impl WeightedStates {
    fn advance(&self, m: &MatrixOom, sym: usize) -> Result<Self> {
        let states = self
            .states
            .iter()
            .map(|s| m.apply_operator(sym, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coefs: self.coefs.clone(),
            norms: self.norms.clone(),
            states,
        })
    }

    fn value(&self, m: &MatrixOom) -> f64 {
        let mut acc = 0.0;
        for ((coef, norm), state) in self.coefs.iter().zip(&self.norms).zip(&self.states) {
            acc += coef * (m.apply_sigma(state) / norm);
        }
        acc
    }
}

/// Depth-`n` truncated sum `Σ_{|ā|=n, P(ā)>0} left(ā)·right(ā)/P(ā)`.
///
/// Subtrees rooted at a zero-probability prefix are pruned: for a valid
/// model every extension of such a prefix has probability zero and the
/// functions in scope vanish there as well. A raw value below `-EPS_NEG`
/// aborts with a model-invalidity error.
pub(crate) fn product_sum(
    m: &MatrixOom,
    left: &WeightedStates,
    right: &WeightedStates,
    n: usize,
    budget: &Budget,
    parallel: bool,
) -> Result<f64> {
    if n == 0 {
        return Err(OomError::InvalidArgument(
            "truncation depth must be at least 1".into(),
        ));
    }
    let base = m.initial_state().clone();
    let sum_symbol = |sym: usize| -> Result<f64> {
        budget.charge(1)?;
        let child_base = m.apply_operator(sym, &base)?;
        let p = m.apply_sigma(&child_base);
        if p < -EPS_NEG {
            return Err(OomError::NegativeProbability { value: p, length: 1 });
        }
        if p <= 0.0 {
            return Ok(0.0);
        }
        let child_left = left.advance(m, sym)?;
        if std::ptr::eq(left, right) {
            product_rec(m, &child_left, None, &child_base, n - 1, 1, budget)
        } else {
            let child_right = right.advance(m, sym)?;
            product_rec(m, &child_left, Some(&child_right), &child_base, n - 1, 1, budget)
        }
    };

    let partials: Vec<f64> = if parallel {
        (0..m.alphabet().len())
            .into_par_iter()
            .map(sum_symbol)
            .collect::<Result<_>>()?
    } else {
        (0..m.alphabet().len())
            .map(sum_symbol)
            .collect::<Result<_>>()?
    };
    Ok(partials.into_iter().sum())
}

fn product_rec(
    m: &MatrixOom,
    left: &WeightedStates,
    right: Option<&WeightedStates>,
    base: &DVector<f64>,
    remaining: usize,
    level: usize,
    budget: &Budget,
) -> Result<f64> {
    if remaining == 0 {
        let p = m.apply_sigma(base);
        debug_assert!(p > 0.0);
        let lv = left.value(m);
        let rv = match right {
            Some(r) => r.value(m),
            None => lv,
        };
        return Ok(lv * rv / p);
    }
    let mut total = 0.0;
    for sym in 0..m.alphabet().len() {
        budget.charge(1)?;
        let child_base = m.apply_operator(sym, base)?;
        let p = m.apply_sigma(&child_base);
        if p < -EPS_NEG {
            return Err(OomError::NegativeProbability {
                value: p,
                length: level + 1,
            });
        }
        if p <= 0.0 {
            continue;
        }
        let child_left = left.advance(m, sym)?;
        let child_right = match right {
            Some(r) => Some(r.advance(m, sym)?),
            None => None,
        };
        total += product_rec(
            m,
            &child_left,
            child_right.as_ref(),
            &child_base,
            remaining - 1,
            level + 1,
            budget,
        )?;
    }
    Ok(total)
}
