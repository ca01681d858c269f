//! Truncated estimators for the inner-product structure on future functions.
//!
//! The inner product of two future functions is the limit, as the depth
//! grows, of the sum over all strings of one length of the product of the
//! two function values divided by the string's probability. Everything here
//! works with the depth-`n` partial sums of that series: raw sums, norms,
//! operator-form cross-checks, stabilization studies, and Gram matrices
//! whose numerical rank estimates the dimension of the process. Densities
//! with respect to the unconditioned measure are estimated by the finite
//! ratio of a function value to the string probability.
//!
//! Strings with probability zero are skipped throughout: the functions in
//! scope vanish there, so those terms read as zero rather than 0/0, and
//! whole subtrees below a zero-probability prefix are pruned.

use crate::alphabet::{Alphabet, Word};
use crate::enumerate::{product_sum, Budget, EnumOptions, WeightedStates};
use crate::error::{OomError, Result};
use crate::future::FutureFunction;
use crate::model::{MatrixOom, EPS_NEG};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

/// Depth-`n` truncated inner product of two future functions over the same
/// model, with leaves visited in lexicographic order.
pub fn inner_product_truncated(
    g1: &FutureFunction,
    g2: &FutureFunction,
    n: usize,
    opts: &EnumOptions,
) -> Result<f64> {
    let budget = Budget::new(opts.node_budget);
    truncated_sum(g1, g2, n, &budget, opts.parallel)
}

/// Square root of the truncated inner product of a function with itself.
/// The squared sequence is nondecreasing in the depth.
pub fn norm2_truncated(g: &FutureFunction, n: usize, opts: &EnumOptions) -> Result<f64> {
    Ok(inner_product_truncated(g, g, n, opts)?.sqrt())
}

fn truncated_sum(
    g1: &FutureFunction,
    g2: &FutureFunction,
    n: usize,
    budget: &Budget,
    parallel: bool,
) -> Result<f64> {
    if !g1.same_model(g2) {
        return Err(OomError::ModelMismatch);
    }
    let model = g1.model();
    let left = weighted_states(model, g1)?;
    if std::ptr::eq(g1, g2) {
        return product_sum(model, &left, &left, n, budget, parallel);
    }
    let right = weighted_states(model, g2)?;
    product_sum(model, &left, &right, n, budget, parallel)
}

/// Propagated per-term states for leaf evaluation. Zero-probability terms
/// are dropped: their basis function is identically zero.
fn weighted_states(model: &MatrixOom, g: &FutureFunction) -> Result<WeightedStates> {
    let mut coefs = Vec::new();
    let mut norms = Vec::new();
    let mut states = Vec::new();
    for (prefix, coef) in g.terms() {
        let norm = model.probability(prefix)?;
        if norm <= 0.0 {
            continue;
        }
        coefs.push(*coef);
        norms.push(norm);
        states.push(model.propagate(prefix, model.initial_state())?);
    }
    Ok(WeightedStates {
        coefs,
        norms,
        states,
    })
}

/// Depth-`n` truncated inner product of two basis functions computed purely
/// from composite operators and the evaluation functional.
///
/// This is the second of two algebraically equal routes: the whole-string
/// operators for the two conditioning prefixes are composed as matrices, the
/// sum runs over the functional values of their propagated states, and the
/// division by the two prefix probabilities happens once at the end.
pub fn inner_product_operator_form(
    model: &MatrixOom,
    left_prefix: &Word,
    right_prefix: &Word,
    n: usize,
    opts: &EnumOptions,
) -> Result<f64> {
    if n == 0 {
        return Err(OomError::InvalidArgument(
            "truncation depth must be at least 1".into(),
        ));
    }
    let op_left = model.composite_operator(left_prefix)?;
    let op_right = model.composite_operator(right_prefix)?;
    let state_left = &op_left * model.initial_state();
    let state_right = &op_right * model.initial_state();
    let p_left = model.apply_sigma(&state_left);
    let p_right = model.apply_sigma(&state_right);
    for (p, w) in [(p_left, left_prefix), (p_right, right_prefix)] {
        if p <= 0.0 {
            return Err(OomError::ZeroProbability {
                prefix: model.alphabet().format_word(w),
            });
        }
    }

    let budget = Budget::new(opts.node_budget);
    let sum_symbol = |sym: usize| -> Result<f64> {
        budget.charge(1)?;
        let base = model.apply_operator(sym, model.initial_state())?;
        let u = model.apply_operator(sym, &state_left)?;
        let v = model.apply_operator(sym, &state_right)?;
        operator_rec(model, &u, &v, &base, n - 1, 1, &budget)
    };
    let partials: Vec<f64> = if opts.parallel {
        (0..model.alphabet().len())
            .into_par_iter()
            .map(sum_symbol)
            .collect::<Result<_>>()?
    } else {
        (0..model.alphabet().len())
            .map(sum_symbol)
            .collect::<Result<_>>()?
    };
    let total: f64 = partials.into_iter().sum();
    Ok(total / (p_left * p_right))
}

fn operator_rec(
    model: &MatrixOom,
    u: &DVector<f64>,
    v: &DVector<f64>,
    base: &DVector<f64>,
    remaining: usize,
    level: usize,
    budget: &Budget,
) -> Result<f64> {
    let p = model.apply_sigma(base);
    if p < -EPS_NEG {
        return Err(OomError::NegativeProbability {
            value: p,
            length: level,
        });
    }
    if p <= 0.0 {
        return Ok(0.0);
    }
    if remaining == 0 {
        return Ok(model.apply_sigma(u) * model.apply_sigma(v) / p);
    }
    let mut total = 0.0;
    for sym in 0..model.alphabet().len() {
        budget.charge(1)?;
        total += operator_rec(
            model,
            &model.apply_operator(sym, u)?,
            &model.apply_operator(sym, v)?,
            &model.apply_operator(sym, base)?,
            remaining - 1,
            level + 1,
            budget,
        )?;
    }
    Ok(total)
}

/// Truncated estimate of the density of a future function with respect to
/// the unconditioned measure, read along one string: the function value
/// divided by the string probability. Rejects zero-probability strings,
/// where the density carries no mass.
pub fn density_estimate(g: &FutureFunction, prefix: &Word) -> Result<f64> {
    let p = g.model().probability(prefix)?;
    if p <= 0.0 {
        return Err(OomError::ZeroProbability {
            prefix: g.model().alphabet().format_word(prefix),
        });
    }
    Ok(g.evaluate(prefix)? / p)
}

/// Slack of the two-norm contraction inequality at one depth: the depth-
/// `n+1` self sum of `g` minus the depth-`n` self sum of the operator image
/// of `g`. Nonnegative up to rounding for every valid model, level by level.
pub fn contraction_slack(
    g: &FutureFunction,
    symbol: usize,
    n: usize,
    opts: &EnumOptions,
) -> Result<f64> {
    let budget = Budget::new(opts.node_budget);
    let applied = g.apply_operator(symbol)?;
    let shifted = truncated_sum(&applied, &applied, n, &budget, opts.parallel)?;
    let original = truncated_sum(g, g, n + 1, &budget, opts.parallel)?;
    Ok(original - shifted)
}

/// Partial sums of a truncated inner product with a stabilization verdict.
///
/// The verdict means the series stopped moving within the window at the
/// reached depth; it never asserts that the underlying limit exists.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    /// Partial sums for depths `1..=depth_reached`.
    pub values: Vec<f64>,
    /// True when the last `window` consecutive steps each moved less than
    /// the tolerance.
    pub converged: bool,
    /// Largest step over the trailing window.
    pub tail_delta: f64,
    pub depth_reached: usize,
    pub window: usize,
}

impl ConvergenceReport {
    /// The deepest partial sum computed.
    pub fn last_value(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// CSV rendering: a header then one `depth,value` row per depth, with
    /// values at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("depth,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, fmt_f64(*v)));
        }
        out
    }
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "truncated inner product to depth {} (window {})",
            self.depth_reached, self.window
        )?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(f, "  S_{:<2} = {:.12}", i + 1, v)?;
        }
        write!(
            f,
            "  {} (trailing step {:.3e})",
            if self.converged {
                "stabilized within tolerance"
            } else {
                "did not stabilize"
            },
            self.tail_delta
        )
    }
}

/// Runs the truncated inner product depth by depth until the step size stays
/// below `tol` for `window` consecutive depths, or `max_depth` is reached.
/// One node budget covers the entire study.
pub fn inner_product_converged(
    g1: &FutureFunction,
    g2: &FutureFunction,
    tol: f64,
    max_depth: usize,
    window: usize,
    opts: &EnumOptions,
) -> Result<ConvergenceReport> {
    if tol <= 0.0 {
        return Err(OomError::InvalidArgument("tolerance must be positive".into()));
    }
    if window < 2 || max_depth < window {
        return Err(OomError::InvalidArgument(
            "need max_depth >= window >= 2".into(),
        ));
    }
    let budget = Budget::new(opts.node_budget);
    let mut values: Vec<f64> = Vec::new();
    let mut deltas: Vec<f64> = Vec::new();
    let mut quiet_steps = 0usize;
    let mut converged = false;
    for n in 1..=max_depth {
        let s = truncated_sum(g1, g2, n, &budget, opts.parallel)?;
        if let Some(prev) = values.last() {
            let delta = (s - *prev).abs();
            deltas.push(delta);
            if delta < tol {
                quiet_steps += 1;
            } else {
                quiet_steps = 0;
            }
        }
        values.push(s);
        if quiet_steps >= window {
            converged = true;
            break;
        }
    }
    let tail = deltas
        .iter()
        .rev()
        .take(window)
        .copied()
        .fold(0.0, f64::max);
    Ok(ConvergenceReport {
        depth_reached: values.len(),
        values,
        converged,
        tail_delta: tail,
        window,
    })
}

/// A truncated Gram matrix over a prefix family with eigenvalue diagnostics.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub prefixes: Vec<Word>,
    pub depth: usize,
    pub entries: DMatrix<f64>,
    /// Eigenvalues of the symmetrized matrix, ascending.
    pub eigenvalues: Vec<f64>,
    /// Count of eigenvalues above `rank_tol` times the largest one;
    /// estimates the dimension of the process.
    pub numerical_rank: usize,
    pub rank_tol: f64,
}

impl GramMatrix {
    pub fn smallest_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn largest_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// CSV rendering: a header row of prefixes, then the square matrix block
    /// at 17 significant digits.
    pub fn to_csv(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let header: Vec<String> = self
            .prefixes
            .iter()
            .map(|w| alphabet.format_word(w))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in 0..self.entries.nrows() {
            let row: Vec<String> = (0..self.entries.ncols())
                .map(|c| fmt_f64(self.entries[(r, c)]))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Fills the truncated Gram matrix of the basis functions of `prefixes` at
/// one depth and reads off eigenvalue and rank diagnostics. Rejects
/// zero-probability prefixes. One node budget covers all entries.
pub fn gram_matrix(
    model: &Arc<MatrixOom>,
    prefixes: &[Word],
    depth: usize,
    rank_tol: f64,
    opts: &EnumOptions,
) -> Result<GramMatrix> {
    let entries = gram_entries(model, prefixes, depth, opts)?;
    let eigenvalues = sorted_symmetric_eigenvalues(&entries);
    let largest = eigenvalues.last().copied().unwrap_or(0.0);
    let numerical_rank = if largest <= 0.0 {
        0
    } else {
        eigenvalues.iter().filter(|&&l| l > rank_tol * largest).count()
    };
    Ok(GramMatrix {
        prefixes: prefixes.to_vec(),
        depth,
        entries,
        eigenvalues,
        numerical_rank,
        rank_tol,
    })
}

/// Raw truncated Gram entries for a prefix family; the upper triangle is
/// computed and mirrored.
pub(crate) fn gram_entries(
    model: &Arc<MatrixOom>,
    prefixes: &[Word],
    depth: usize,
    opts: &EnumOptions,
) -> Result<DMatrix<f64>> {
    for prefix in prefixes {
        if model.probability(prefix)? <= 0.0 {
            return Err(OomError::ZeroProbability {
                prefix: model.alphabet().format_word(prefix),
            });
        }
    }
    let functions: Vec<FutureFunction> = prefixes
        .iter()
        .map(|w| FutureFunction::basis(model.clone(), w.clone()))
        .collect::<Result<_>>()?;
    let budget = Budget::new(opts.node_budget);
    let k = prefixes.len();
    let mut entries = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let value = truncated_sum(&functions[i], &functions[j], depth, &budget, opts.parallel)?;
            entries[(i, j)] = value;
            entries[(j, i)] = value;
        }
    }
    Ok(entries)
}

/// Eigenvalues of the explicit symmetrization of a matrix, ascending.
pub(crate) fn sorted_symmetric_eigenvalues(matrix: &DMatrix<f64>) -> Vec<f64> {
    if matrix.nrows() == 0 {
        return Vec::new();
    }
    let symmetric = (matrix + matrix.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = symmetric
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    eigenvalues
}

/// Fixed-width scientific rendering with 17 significant digits; precise
/// enough to re-parse to the exact value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
