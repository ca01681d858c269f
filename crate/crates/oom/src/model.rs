//! Matrix observable operator models and hidden Markov models.
//!
//! A matrix OOM consists of one square operator matrix per symbol, a row
//! functional, and an initial state vector. The probability of a string is
//! the functional applied to the product of the operators along the string,
//! innermost operator first, acting on the initial state. HMMs are supported
//! as a source of models that are valid by construction: the conversion
//! tracks the hidden-state distribution weighted by observation likelihoods.

use crate::alphabet::{Alphabet, Word};
use crate::enumerate::{level_scan, EnumOptions};
use crate::error::{OomError, Result};
use nalgebra::{DMatrix, DVector, RowDVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Magnitude below which a negative probability is treated as rounding noise
/// and clamped to zero. Anything more negative invalidates the model.
pub const EPS_NEG: f64 = 1e-9;

/// A matrix observable operator model.
///
/// Immutable after construction; all operations are pure.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixOom {
    alphabet: Alphabet,
    dim: usize,
    tau: Vec<DMatrix<f64>>,
    sigma: RowDVector<f64>,
    w_eps: DVector<f64>,
}

impl MatrixOom {
    /// Builds a model from its parts, checking structural consistency only.
    ///
    /// One operator matrix per alphabet symbol, in alphabet order; every
    /// matrix must be `dim`×`dim` and the functional and state vectors must
    /// have length `dim`. Numeric validity (nonnegativity, level sums,
    /// stationarity) is checked separately by [`MatrixOom::validate`], so
    /// deliberately broken models can still be constructed and diagnosed.
    pub fn new(
        alphabet: Alphabet,
        tau: Vec<DMatrix<f64>>,
        sigma: RowDVector<f64>,
        w_eps: DVector<f64>,
    ) -> Result<Self> {
        let dim = w_eps.len();
        if dim == 0 {
            return Err(OomError::InvalidArgument(
                "model dimension must be positive".into(),
            ));
        }
        if tau.len() != alphabet.len() {
            return Err(OomError::DimensionMismatch {
                context: "operator count".into(),
                expected: alphabet.len(),
                got: tau.len(),
            });
        }
        for (i, t) in tau.iter().enumerate() {
            if t.nrows() != dim || t.ncols() != dim {
                return Err(OomError::DimensionMismatch {
                    context: format!(
                        "operator for symbol `{}`",
                        alphabet.symbol(i).unwrap_or("?")
                    ),
                    expected: dim,
                    got: if t.nrows() != dim { t.nrows() } else { t.ncols() },
                });
            }
        }
        if sigma.len() != dim {
            return Err(OomError::DimensionMismatch {
                context: "evaluation functional".into(),
                expected: dim,
                got: sigma.len(),
            });
        }
        Ok(Self {
            alphabet,
            dim,
            tau,
            sigma,
            w_eps,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The operator matrix for a symbol index.
    pub fn operator(&self, symbol: usize) -> Result<&DMatrix<f64>> {
        self.tau.get(symbol).ok_or(OomError::UnknownSymbol {
            symbol: format!("#{symbol}"),
        })
    }

    pub fn sigma(&self) -> &RowDVector<f64> {
        &self.sigma
    }

    /// The state vector representing the unconditioned future.
    pub fn initial_state(&self) -> &DVector<f64> {
        &self.w_eps
    }

    /// Applies the functional to a state vector.
    pub fn apply_sigma(&self, state: &DVector<f64>) -> f64 {
        (&self.sigma * state)[0]
    }

    /// Applies the operator of one symbol to a state vector, without any
    /// normalization.
    pub fn apply_operator(&self, symbol: usize, state: &DVector<f64>) -> Result<DVector<f64>> {
        if state.len() != self.dim {
            return Err(OomError::DimensionMismatch {
                context: "state vector".into(),
                expected: self.dim,
                got: state.len(),
            });
        }
        Ok(self.operator(symbol)? * state)
    }

    /// The state vector reached from `start` by reading `word`, first symbol
    /// applied first.
    pub fn propagate(&self, word: &Word, start: &DVector<f64>) -> Result<DVector<f64>> {
        self.alphabet.check_word(word)?;
        let mut state = start.clone();
        for &sym in word.indices() {
            state = &self.tau[sym] * state;
        }
        Ok(state)
    }

    /// The composite operator of a whole string: the product of the
    /// per-symbol matrices with the first symbol innermost. The empty word
    /// yields the identity.
    pub fn composite_operator(&self, word: &Word) -> Result<DMatrix<f64>> {
        self.alphabet.check_word(word)?;
        let mut acc = DMatrix::<f64>::identity(self.dim, self.dim);
        for &sym in word.indices() {
            acc = &self.tau[sym] * acc;
        }
        Ok(acc)
    }

    /// Probability of observing `word`.
    ///
    /// The empty word has probability exactly 1. Negative values within
    /// [`EPS_NEG`] of zero are clamped to 0; more negative values report the
    /// model as invalid.
    pub fn probability(&self, word: &Word) -> Result<f64> {
        if word.is_empty() {
            return Ok(1.0);
        }
        let state = self.propagate(word, &self.w_eps)?;
        let p = self.apply_sigma(&state);
        if p < -EPS_NEG {
            return Err(OomError::NegativeProbability {
                value: p,
                length: word.len(),
            });
        }
        Ok(p.max(0.0))
    }

    /// Probability of observing `future` immediately after `given`.
    ///
    /// Returns 0 when the conditioning string has probability 0, matching the
    /// convention that the future of an impossible past is the zero function.
    pub fn conditional_probability(&self, future: &Word, given: &Word) -> Result<f64> {
        let denom = self.probability(given)?;
        if denom <= 0.0 {
            // Still validate the future word so unknown symbols are reported.
            self.alphabet.check_word(future)?;
            return Ok(0.0);
        }
        let joint = self.probability(&given.concat(future))?;
        Ok(joint / denom)
    }

    /// Draws a string of the given length.
    ///
    /// At each step the next-symbol weights are the functional applied to
    /// each operator image of the current unnormalized state, divided by the
    /// functional of the state itself; the state is then advanced by the
    /// chosen operator. Deterministic for a fixed seed.
    pub fn sample_sequence(&self, length: usize, seed: u64) -> Result<Word> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_sequence_with(length, &mut rng)
    }

    /// Like [`MatrixOom::sample_sequence`] but drawing from a caller-supplied
    /// generator, so many sequences can share one stream.
    pub fn sample_sequence_with<R: Rng>(&self, length: usize, rng: &mut R) -> Result<Word> {
        let mut state = self.w_eps.clone();
        let mut out = Vec::with_capacity(length);
        for step in 0..length {
            let mass = self.apply_sigma(&state);
            if mass <= 0.0 {
                return Err(OomError::SamplingFailed { step, mass });
            }
            let mut weights = Vec::with_capacity(self.alphabet.len());
            for tau in &self.tau {
                let w = (&self.sigma * (tau * &state))[0];
                if w < -EPS_NEG * mass {
                    return Err(OomError::SamplingFailed { step, mass: w });
                }
                weights.push(w.max(0.0));
            }
            let draw = rng.gen::<f64>() * mass;
            let mut cumulative = 0.0;
            let mut chosen = None;
            for (sym, w) in weights.iter().enumerate() {
                cumulative += w;
                if draw < cumulative {
                    chosen = Some(sym);
                    break;
                }
            }
            // Rounding can leave a sliver of mass uncovered; fall back to the
            // last symbol with positive weight.
            let sym = match chosen {
                Some(s) => s,
                None => match weights.iter().rposition(|&w| w > 0.0) {
                    Some(s) => s,
                    None => return Err(OomError::SamplingFailed { step, mass }),
                },
            };
            state = &self.tau[sym] * state;
            out.push(sym);
        }
        Ok(Word::from_indices(out))
    }

    /// Exhaustively checks the model up to a depth: nonnegativity of every
    /// string probability, level sums equal to one, and stationarity of the
    /// initial state. Failures are reported, not thrown.
    pub fn validate(&self, options: &ValidationOptions) -> Result<ValidationReport> {
        let scan = level_scan(self, options.depth, &options.enumeration)?;
        let max_negativity = (-scan.min_value).max(0.0);
        let max_level_sum_deviation = scan
            .level_sums
            .iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max);

        let mut op_sum = DMatrix::<f64>::zeros(self.dim, self.dim);
        for tau in &self.tau {
            op_sum += tau;
        }
        let stationarity_residual = (&op_sum * &self.w_eps - &self.w_eps).amax();

        Ok(ValidationReport {
            depth: options.depth,
            max_negativity,
            max_level_sum_deviation,
            stationarity_residual,
            negativity_ok: max_negativity <= options.negativity_tol,
            level_sums_ok: max_level_sum_deviation <= options.level_sum_tol,
            stationarity_ok: stationarity_residual <= options.stationarity_tol,
        })
    }
}

/// Tolerances and depth for [`MatrixOom::validate`].
#[derive(Clone, Debug)]
pub struct ValidationOptions {
    /// Exhaustive check depth; every string up to this length is examined.
    pub depth: usize,
    pub negativity_tol: f64,
    pub level_sum_tol: f64,
    pub stationarity_tol: f64,
    pub enumeration: EnumOptions,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            depth: 8,
            negativity_tol: EPS_NEG,
            level_sum_tol: 1e-10,
            stationarity_tol: 1e-10,
            enumeration: EnumOptions::default(),
        }
    }
}

impl ValidationOptions {
    pub fn with_depth(depth: usize) -> Self {
        Self {
            depth,
            ..Self::default()
        }
    }
}

/// Worst residuals found by an exhaustive depth-bounded model check.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub depth: usize,
    /// Magnitude of the most negative string probability seen (0 if none).
    pub max_negativity: f64,
    /// Worst deviation of a per-length total probability from 1, including
    /// the length-0 value of the functional on the initial state.
    pub max_level_sum_deviation: f64,
    /// Sup-norm residual of the initial state under the summed operators.
    pub stationarity_residual: f64,
    pub negativity_ok: bool,
    pub level_sums_ok: bool,
    pub stationarity_ok: bool,
}

impl ValidationReport {
    /// True only when every individual check passed.
    pub fn passed(&self) -> bool {
        self.negativity_ok && self.level_sums_ok && self.stationarity_ok
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        writeln!(f, "validation to depth {}", self.depth)?;
        writeln!(
            f,
            "  negativity      {}  (worst {:.3e})",
            mark(self.negativity_ok),
            self.max_negativity
        )?;
        writeln!(
            f,
            "  level sums      {}  (worst deviation {:.3e})",
            mark(self.level_sums_ok),
            self.max_level_sum_deviation
        )?;
        writeln!(
            f,
            "  stationarity    {}  (residual {:.3e})",
            mark(self.stationarity_ok),
            self.stationarity_residual
        )?;
        write!(f, "  verdict: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// A discrete hidden Markov model with a stationary initial distribution.
///
/// `transition[i][j]` is the chance of moving from state `i` to state `j`;
/// `emission[i][k]` is the chance of emitting symbol `k` while in state `i`
/// (symbols in alphabet order). Emission happens before the transition.
#[derive(Clone, Debug, PartialEq)]
pub struct Hmm {
    pub alphabet: Alphabet,
    pub transition: DMatrix<f64>,
    pub emission: DMatrix<f64>,
    pub initial: DVector<f64>,
}

impl Hmm {
    pub fn states(&self) -> usize {
        self.initial.len()
    }

    /// Checks shapes, row-stochasticity, entry ranges, and stationarity of
    /// the initial distribution. `tol` bounds every residual.
    pub fn check(&self, tol: f64) -> Result<()> {
        let m = self.states();
        if m == 0 {
            return Err(OomError::InvalidArgument(
                "HMM must have at least one state".into(),
            ));
        }
        if self.transition.nrows() != m || self.transition.ncols() != m {
            return Err(OomError::DimensionMismatch {
                context: "transition matrix".into(),
                expected: m,
                got: self.transition.nrows(),
            });
        }
        if self.emission.nrows() != m || self.emission.ncols() != self.alphabet.len() {
            return Err(OomError::DimensionMismatch {
                context: "emission matrix".into(),
                expected: self.alphabet.len(),
                got: self.emission.ncols(),
            });
        }
        for (name, matrix) in [("transition", &self.transition), ("emission", &self.emission)] {
            for r in 0..matrix.nrows() {
                let mut sum = 0.0;
                for c in 0..matrix.ncols() {
                    let v = matrix[(r, c)];
                    if !(-tol..=1.0 + tol).contains(&v) {
                        return Err(OomError::InvalidModel {
                            check: format!("{name} entry ({r},{c}) outside [0,1]"),
                            residual: if v < 0.0 { -v } else { v - 1.0 },
                            tolerance: tol,
                        });
                    }
                    sum += v;
                }
                let residual = (sum - 1.0).abs();
                if residual > tol {
                    return Err(OomError::InvalidModel {
                        check: format!("{name} row {r} sum"),
                        residual,
                        tolerance: tol,
                    });
                }
            }
        }
        let initial_sum: f64 = self.initial.iter().sum();
        if (initial_sum - 1.0).abs() > tol {
            return Err(OomError::InvalidModel {
                check: "initial distribution sum".into(),
                residual: (initial_sum - 1.0).abs(),
                tolerance: tol,
            });
        }
        let propagated = self.transition.transpose() * &self.initial;
        let residual = (&propagated - &self.initial).amax();
        if residual > tol {
            return Err(OomError::InvalidModel {
                check: "initial distribution stationarity".into(),
                residual,
                tolerance: tol,
            });
        }
        Ok(())
    }

    /// Converts a checked HMM into the equivalent matrix OOM.
    ///
    /// The operator for symbol `a` is `transitionᵀ · diag(emission column a)`,
    /// the functional is the all-ones row, and the initial state is the
    /// stationary distribution. String probabilities of the result equal the
    /// forward-algorithm marginals of the HMM.
    pub fn to_oom(&self) -> Result<MatrixOom> {
        self.check(1e-9)?;
        let m = self.states();
        let tau: Vec<DMatrix<f64>> = (0..self.alphabet.len())
            .map(|a| {
                let mut t = DMatrix::<f64>::zeros(m, m);
                for i in 0..m {
                    for j in 0..m {
                        // (Tᵀ · diag(O_a))[j][i] = T[i][j] · O[i][a]
                        t[(j, i)] = self.transition[(i, j)] * self.emission[(i, a)];
                    }
                }
                t
            })
            .collect();
        let sigma = RowDVector::from_element(m, 1.0);
        MatrixOom::new(self.alphabet.clone(), tau, sigma, self.initial.clone())
    }
}

/// Stationary distribution of a row-stochastic matrix by power iteration,
/// starting from uniform. Converges to sup-norm 1e-12 or fails after 1e5
/// iterations.
pub fn stationary_distribution(transition: &DMatrix<f64>) -> Result<DVector<f64>> {
    if transition.nrows() != transition.ncols() || transition.nrows() == 0 {
        return Err(OomError::InvalidArgument(
            "transition matrix must be square and nonempty".into(),
        ));
    }
    let m = transition.nrows();
    let step = transition.transpose();
    let mut v = DVector::from_element(m, 1.0 / m as f64);
    for _ in 0..100_000 {
        let next = &step * &v;
        let delta = (&next - &v).amax();
        v = next;
        if delta < 1e-12 {
            return Ok(v);
        }
    }
    Err(OomError::InvalidModel {
        check: "power iteration for the stationary distribution".into(),
        residual: f64::NAN,
        tolerance: 1e-12,
    })
}
