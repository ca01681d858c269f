//! Command dispatch behind the `oom` binary.
//!
//! The binary is a thin wrapper: it parses flags into a [`RunConfig`] and
//! calls [`run`], which loads the model file, executes one library
//! operation, prints a human-readable report to the given writer, and
//! optionally writes a machine-readable CSV next to it. Exit codes are
//! derived from the error kind by [`exit_code`]:
//!
//! * 0 success
//! * 1 I/O failure
//! * 2 parse or schema violation
//! * 3 invalid model (including a failing validation report)
//! * 4 node or lift budget exhausted
//! * 5 zero-probability query where positive probability is required
//! * 6 unknown symbol in a query string

use crate::alphabet::Word;
use crate::builtin::BuiltinModel;
use crate::cylinder::{premeasure, CylinderSet};
use crate::embedding::{
    fmt_f64, gram_matrix, inner_product_converged, inner_product_truncated,
};
use crate::enumerate::EnumOptions;
use crate::error::OomError;
use crate::future::FutureFunction;
use crate::model::{MatrixOom, ValidationOptions};
use crate::model_file::ModelFile;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// One CLI invocation: a model file, a command, and the shared knobs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model_path: PathBuf,
    pub command: Command,
    /// Seed for sampling commands; identical configs give identical output.
    pub seed: u64,
    /// Destination for the machine-readable CSV, if any.
    pub output: Option<PathBuf>,
    /// Node cap for tree enumerations.
    pub budget: u64,
    /// Fan enumeration out over first-symbol subtrees.
    pub parallel: bool,
}

/// The queries the binary can run.
#[derive(Clone, Debug)]
pub enum Command {
    Validate { depth: usize },
    Prob { string: String },
    Cond { string: String, given: String },
    Sample { length: usize, count: usize },
    Inner { left: String, right: String, max_depth: usize },
    Converge {
        left: String,
        right: String,
        tol: f64,
        window: usize,
        max_depth: usize,
    },
    Gram {
        prefixes: Option<String>,
        depth: usize,
        rank_tol: f64,
    },
    Density { function: String, prefix: String },
    Cylinder { given: String, set: String },
}

/// A failed CLI run, tagged with enough structure to pick an exit code.
#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Model(OomError),
    ValidationFailed,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Model(e) => write!(f, "{e}"),
            CliError::ValidationFailed => write!(f, "model failed validation"),
        }
    }
}

impl From<OomError> for CliError {
    fn from(e: OomError) -> Self {
        CliError::Model(e)
    }
}

/// Exit code for a failed run; see the module docs for the taxonomy.
pub fn exit_code(error: &CliError) -> i32 {
    match error {
        CliError::Io { .. } => 1,
        CliError::ValidationFailed => 3,
        CliError::Model(e) => match e {
            OomError::Schema(_)
            | OomError::Parse(_)
            | OomError::MalformedCylinder(_)
            | OomError::DimensionMismatch { .. }
            | OomError::EmptyAlphabet
            | OomError::DuplicateSymbol(_)
            | OomError::InvalidArgument(_) => 2,
            OomError::InvalidModel { .. }
            | OomError::NegativeProbability { .. }
            | OomError::SamplingFailed { .. } => 3,
            OomError::BudgetExceeded { .. } | OomError::LiftBudgetExceeded { .. } => 4,
            OomError::ZeroProbability { .. } => 5,
            OomError::UnknownSymbol { .. } => 6,
            _ => 3,
        },
    }
}

fn read_model(path: &Path) -> Result<MatrixOom, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(ModelFile::from_json(&text)?.build()?)
}

fn write_output(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs one configured command, writing the human-readable report to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let model = Arc::new(read_model(&config.model_path)?);
    let opts = EnumOptions {
        node_budget: config.budget,
        parallel: config.parallel,
    };
    let mut validation_failed = false;

    let csv: String = match &config.command {
        Command::Validate { depth } => {
            let options = ValidationOptions {
                depth: *depth,
                enumeration: opts.clone(),
                ..ValidationOptions::default()
            };
            let report = model.validate(&options)?;
            writeln!(out, "{report}").ok();
            validation_failed = !report.passed();
            format!(
                "check,value,pass\nnegativity,{},{}\nlevel_sums,{},{}\nstationarity,{},{}\n",
                fmt_f64(report.max_negativity),
                report.negativity_ok,
                fmt_f64(report.max_level_sum_deviation),
                report.level_sums_ok,
                fmt_f64(report.stationarity_residual),
                report.stationarity_ok,
            )
        }
        Command::Prob { string } => {
            let word = model.alphabet().parse_word(string)?;
            let p = model.probability(&word)?;
            writeln!(out, "{p}").ok();
            format!("value\n{}\n", fmt_f64(p))
        }
        Command::Cond { string, given } => {
            let future = model.alphabet().parse_word(string)?;
            let past = model.alphabet().parse_word(given)?;
            let p = model.conditional_probability(&future, &past)?;
            writeln!(out, "{p}").ok();
            format!("value\n{}\n", fmt_f64(p))
        }
        Command::Sample { length, count } => {
            use rand::SeedableRng;
            let mut rows = String::from("index,sequence\n");
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
            for i in 0..*count {
                let word = model.sample_sequence_with(*length, &mut rng)?;
                let text = model.alphabet().format_word(&word);
                writeln!(out, "{text}").ok();
                rows.push_str(&format!("{i},{text}\n"));
            }
            rows
        }
        Command::Inner {
            left,
            right,
            max_depth,
        } => {
            let g1 = basis_from_text(&model, left)?;
            let g2 = basis_from_text(&model, right)?;
            let mut rows = String::from("depth,value\n");
            for n in 1..=*max_depth {
                let s = inner_product_truncated(&g1, &g2, n, &opts)?;
                writeln!(out, "S_{n} = {s}").ok();
                rows.push_str(&format!("{n},{}\n", fmt_f64(s)));
            }
            rows
        }
        Command::Converge {
            left,
            right,
            tol,
            window,
            max_depth,
        } => {
            let g1 = basis_from_text(&model, left)?;
            let g2 = basis_from_text(&model, right)?;
            let report = inner_product_converged(&g1, &g2, *tol, *max_depth, *window, &opts)?;
            writeln!(out, "{report}").ok();
            report.to_csv()
        }
        Command::Gram {
            prefixes,
            depth,
            rank_tol,
        } => {
            let words = match prefixes {
                Some(list) => parse_prefix_list(&model, list)?,
                None => default_gram_prefixes(&model)?,
            };
            let gram = gram_matrix(&model, &words, *depth, *rank_tol, &opts)?;
            let shown: Vec<String> = words
                .iter()
                .map(|w| {
                    let text = model.alphabet().format_word(w);
                    if text.is_empty() { "<eps>".into() } else { text }
                })
                .collect();
            writeln!(out, "prefixes: {}", shown.join(" ")).ok();
            writeln!(out, "truncation depth: {depth}").ok();
            for r in 0..gram.entries.nrows() {
                let row: Vec<String> = (0..gram.entries.ncols())
                    .map(|c| format!("{:>12.8}", gram.entries[(r, c)]))
                    .collect();
                writeln!(out, "  {}", row.join(" ")).ok();
            }
            let eigen: Vec<String> = gram.eigenvalues.iter().map(|l| format!("{l:.3e}")).collect();
            writeln!(out, "eigenvalues (ascending): {}", eigen.join(" ")).ok();
            writeln!(
                out,
                "numerical rank (tol {:.1e}): {}",
                gram.rank_tol, gram.numerical_rank
            )
            .ok();
            gram.to_csv(model.alphabet())
        }
        Command::Density { function, prefix } => {
            let g = basis_from_text(&model, function)?;
            let at = model.alphabet().parse_word(prefix)?;
            let d = crate::embedding::density_estimate(&g, &at)?;
            writeln!(out, "{d}").ok();
            format!("value\n{}\n", fmt_f64(d))
        }
        Command::Cylinder { given, set } => {
            let past = model.alphabet().parse_word(given)?;
            let cylinder = CylinderSet::parse(model.alphabet(), set)?;
            let measure = premeasure(&model, &past, &cylinder)?;
            writeln!(out, "{measure}").ok();
            format!("value\n{}\n", fmt_f64(measure))
        }
    };

    if let Some(path) = &config.output {
        write_output(path, &csv)?;
    }
    if validation_failed {
        return Err(CliError::ValidationFailed);
    }
    Ok(())
}

fn basis_from_text(model: &Arc<MatrixOom>, text: &str) -> Result<FutureFunction, CliError> {
    let word = model.alphabet().parse_word(text)?;
    Ok(FutureFunction::basis(model.clone(), word)?)
}

/// Comma-separated prefixes; an empty item denotes the empty string.
fn parse_prefix_list(model: &MatrixOom, list: &str) -> Result<Vec<Word>, CliError> {
    let mut words = Vec::new();
    for item in list.split(',') {
        words.push(model.alphabet().parse_word(item.trim())?);
    }
    Ok(words)
}

/// All positive-probability prefixes of length at most 2, including the
/// empty one; the stock family for dimension estimates.
fn default_gram_prefixes(model: &MatrixOom) -> Result<Vec<Word>, CliError> {
    let mut words = vec![Word::empty()];
    for k in 1..=2usize {
        for w in model.alphabet().words_of_length(k) {
            if model.probability(&w)? > 0.0 {
                words.push(w);
            }
        }
    }
    Ok(words)
}

/// Renders a built-in model file for the `example` subcommand.
pub fn generate_example(name: &str) -> Result<String, CliError> {
    let builtin = BuiltinModel::from_name(name).ok_or_else(|| {
        CliError::Model(OomError::Parse(format!(
            "unknown example `{name}`; expected one of iid_uniform, two_state_sticky, alternating"
        )))
    })?;
    Ok(builtin.model_file().to_json())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_generation_knows_the_three_builtins() {
        for builtin in BuiltinModel::all() {
            let json = generate_example(builtin.name()).unwrap();
            let model = ModelFile::from_json(&json).unwrap().build().unwrap();
            assert_eq!(model.alphabet().len(), 2);
        }
        assert!(generate_example("bogus").is_err());
    }

    #[test]
    fn run_reports_probabilities() {
        let dir = tempfile::tempdir().unwrap();
        let model_path = dir.path().join("sticky.json");
        std::fs::write(&model_path, generate_example("two_state_sticky").unwrap()).unwrap();
        let config = RunConfig {
            model_path,
            command: Command::Prob { string: "aa".into() },
            seed: 0,
            output: None,
            budget: 1_000_000,
            parallel: false,
        };
        let mut out = Vec::new();
        run(&config, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let value: f64 = text.trim().parse().unwrap();
        assert!((value - 0.45).abs() < 1e-12);
    }
}
