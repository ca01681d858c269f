//! Observable operator models, executable end to end.
//!
//! An observable operator model describes a stationary stochastic process
//! over a finite alphabet by one linear operator per symbol, an evaluation
//! functional, and an initial state: the probability of a string is the
//! functional applied to the product of the operators along the string.
//! This crate makes the surrounding structure computable at desk scale and
//! checkable against brute-force oracles:
//!
//! * [`model`] — matrix models and HMM ingestion, string and conditional
//!   probabilities, sampling, and exhaustive depth-bounded validation.
//! * [`future`] — finite linear combinations of conditional-future
//!   functions, function-level operator application, the shift identity,
//!   truncated sup norms, and greedy basis selection.
//! * [`cylinder`] — the Boolean algebra of homogeneous cylinder unions,
//!   pre-measures, partition refinement, additivity and majorization checks.
//! * [`embedding`] — truncated inner products in direct and operator form,
//!   stabilization studies, two-norm contraction slack, density estimates,
//!   and Gram matrices whose numerical rank estimates process dimension.
//! * [`model_file`] / [`builtin`] / [`cli`] — the JSON model format, three
//!   bundled example processes, and the dispatch behind the `oom` binary.
//!
//! Start with the runnable examples in `examples/`; each one walks through
//! a single capability on the bundled models.
//!
//! All types are immutable after construction and all operations are pure,
//! so everything can be shared freely across threads. Enumerations over all
//! strings of a given length visit children in alphabet order; the optional
//! parallel mode splits over first-symbol subtrees and combines partial
//! results in that same order, so it returns the same values as the serial
//! schedule.

pub mod alphabet;
pub mod builtin;
pub mod cli;
pub mod cylinder;
pub mod embedding;
mod enumerate;
pub mod error;
pub mod future;
pub mod model;
pub mod model_file;

pub use alphabet::{Alphabet, Word};
pub use builtin::BuiltinModel;
pub use cylinder::{CylinderSet, PartitionRefinement};
pub use embedding::{ConvergenceReport, GramMatrix};
pub use enumerate::EnumOptions;
pub use error::{OomError, Result};
pub use future::FutureFunction;
pub use model::{Hmm, MatrixOom, ValidationOptions, ValidationReport};
pub use model_file::ModelFile;
