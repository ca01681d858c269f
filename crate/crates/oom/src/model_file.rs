//! JSON model files.
//!
//! A model file is a JSON document with a `type` field of `"hmm"` or
//! `"oom"`, an `alphabet` array of symbol strings, and either the HMM
//! parameters (`transition`, `emission`, `initial`) or the operator
//! parameters (`dim`, `tau` as a symbol-to-matrix map, `sigma`, `w_eps`).
//! Matrices are arrays of row arrays of decimal numbers.

use crate::alphabet::Alphabet;
use crate::error::{OomError, Result};
use crate::model::{Hmm, MatrixOom};
use nalgebra::{DMatrix, DVector, RowDVector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The on-disk form of a model.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ModelFile {
    Hmm {
        alphabet: Vec<String>,
        transition: Vec<Vec<f64>>,
        emission: Vec<Vec<f64>>,
        initial: Vec<f64>,
    },
    Oom {
        alphabet: Vec<String>,
        dim: usize,
        tau: BTreeMap<String, Vec<Vec<f64>>>,
        sigma: Vec<f64>,
        w_eps: Vec<f64>,
    },
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| OomError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files always serialize")
    }

    /// Builds the in-memory model, converting HMM parameters through the
    /// standard operator construction. Shape problems surface as schema
    /// errors; numeric invariant violations surface as model-invalid errors.
    pub fn build(&self) -> Result<MatrixOom> {
        match self {
            ModelFile::Hmm {
                alphabet,
                transition,
                emission,
                initial,
            } => {
                let alphabet = Alphabet::new(alphabet.iter().cloned())?;
                let states = initial.len();
                let transition = rows_to_matrix(transition, states, states, "transition")?;
                let emission = rows_to_matrix(emission, states, alphabet.len(), "emission")?;
                let hmm = Hmm {
                    alphabet,
                    transition,
                    emission,
                    initial: DVector::from_vec(initial.clone()),
                };
                hmm.to_oom()
            }
            ModelFile::Oom {
                alphabet,
                dim,
                tau,
                sigma,
                w_eps,
            } => {
                let alphabet = Alphabet::new(alphabet.iter().cloned())?;
                let mut operators = Vec::with_capacity(alphabet.len());
                for symbol in alphabet.symbols() {
                    let rows = tau.get(symbol).ok_or_else(|| {
                        OomError::Schema(format!("tau is missing symbol `{symbol}`"))
                    })?;
                    operators.push(rows_to_matrix(rows, *dim, *dim, &format!("tau[{symbol}]"))?);
                }
                for key in tau.keys() {
                    if alphabet.index_of(key).is_none() {
                        return Err(OomError::Schema(format!(
                            "tau has entry `{key}` outside the alphabet"
                        )));
                    }
                }
                if sigma.len() != *dim {
                    return Err(OomError::Schema(format!(
                        "sigma has length {}, expected dim = {dim}",
                        sigma.len()
                    )));
                }
                if w_eps.len() != *dim {
                    return Err(OomError::Schema(format!(
                        "w_eps has length {}, expected dim = {dim}",
                        w_eps.len()
                    )));
                }
                MatrixOom::new(
                    alphabet,
                    operators,
                    RowDVector::from_vec(sigma.clone()),
                    DVector::from_vec(w_eps.clone()),
                )
            }
        }
    }

    /// The on-disk form of an HMM.
    pub fn from_hmm(hmm: &Hmm) -> Self {
        ModelFile::Hmm {
            alphabet: hmm.alphabet.symbols().to_vec(),
            transition: matrix_to_rows(&hmm.transition),
            emission: matrix_to_rows(&hmm.emission),
            initial: hmm.initial.iter().copied().collect(),
        }
    }

    /// The on-disk form of a matrix model.
    pub fn from_oom(model: &MatrixOom) -> Result<Self> {
        let mut tau = BTreeMap::new();
        for (i, symbol) in model.alphabet().symbols().iter().enumerate() {
            tau.insert(symbol.clone(), matrix_to_rows(model.operator(i)?));
        }
        Ok(ModelFile::Oom {
            alphabet: model.alphabet().symbols().to_vec(),
            dim: model.dim(),
            tau,
            sigma: model.sigma().iter().copied().collect(),
            w_eps: model.initial_state().iter().copied().collect(),
        })
    }
}

fn rows_to_matrix(
    rows: &[Vec<f64>],
    nrows: usize,
    ncols: usize,
    name: &str,
) -> Result<DMatrix<f64>> {
    if rows.len() != nrows {
        return Err(OomError::Schema(format!(
            "{name} has {} rows, expected {nrows}",
            rows.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(OomError::Schema(format!(
                "{name} row {i} has {} entries, expected {ncols}",
                row.len()
            )));
        }
    }
    Ok(DMatrix::from_row_iterator(
        nrows,
        ncols,
        rows.iter().flatten().copied(),
    ))
}

fn matrix_to_rows(matrix: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..matrix.nrows())
        .map(|r| (0..matrix.ncols()).map(|c| matrix[(r, c)]).collect())
        .collect()
}
