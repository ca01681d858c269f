//! Built-in desk-scale models used by the examples and the test suite.

use crate::model::MatrixOom;
use crate::model_file::ModelFile;
use std::collections::BTreeMap;

/// The three bundled models.
///
/// `IidUniform` draws `a` or `b` independently with equal probability, so
/// every future looks the same (process dimension 1). `TwoStateSticky` is a
/// two-state chain that keeps its state with probability 0.9 and emits the
/// state's letter (dimension 2). `Alternating` is the even mixture of the
/// two strictly alternating sequences; half of all strings are impossible,
/// which exercises every zero-probability branch (dimension 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinModel {
    IidUniform,
    TwoStateSticky,
    Alternating,
}

impl BuiltinModel {
    pub fn all() -> [BuiltinModel; 3] {
        [
            BuiltinModel::IidUniform,
            BuiltinModel::TwoStateSticky,
            BuiltinModel::Alternating,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            BuiltinModel::IidUniform => "iid_uniform",
            BuiltinModel::TwoStateSticky => "two_state_sticky",
            BuiltinModel::Alternating => "alternating",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::all().into_iter().find(|m| m.name() == name)
    }

    /// The on-disk form of the model.
    pub fn model_file(self) -> ModelFile {
        match self {
            BuiltinModel::IidUniform => ModelFile::Oom {
                alphabet: vec!["a".into(), "b".into()],
                dim: 1,
                tau: BTreeMap::from([
                    ("a".to_string(), vec![vec![0.5]]),
                    ("b".to_string(), vec![vec![0.5]]),
                ]),
                sigma: vec![1.0],
                w_eps: vec![1.0],
            },
            BuiltinModel::TwoStateSticky => ModelFile::Hmm {
                alphabet: vec!["a".into(), "b".into()],
                transition: vec![vec![0.9, 0.1], vec![0.1, 0.9]],
                emission: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                initial: vec![0.5, 0.5],
            },
            BuiltinModel::Alternating => ModelFile::Hmm {
                alphabet: vec!["a".into(), "b".into()],
                transition: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
                emission: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                initial: vec![0.5, 0.5],
            },
        }
    }

    /// The in-memory model.
    pub fn build(self) -> MatrixOom {
        self.model_file()
            .build()
            .expect("built-in models are valid by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn names_round_trip() {
        for builtin in BuiltinModel::all() {
            assert_eq!(BuiltinModel::from_name(builtin.name()), Some(builtin));
        }
        assert_eq!(BuiltinModel::from_name("nonsense"), None);
    }

    #[test]
    fn alternating_strings_have_the_mixture_probabilities() {
        let m = BuiltinModel::Alternating.build();
        let p = |text: &str| m.probability(&m.alphabet().parse_word(text).unwrap()).unwrap();
        assert_abs_diff_eq!(p("ab"), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p("ba"), 0.5, epsilon = 1e-15);
        assert_eq!(p("aa"), 0.0);
        assert_eq!(p("bb"), 0.0);
        assert_abs_diff_eq!(p("ababab"), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn iid_file_is_operator_typed_and_uniform() {
        let m = BuiltinModel::IidUniform.build();
        assert_eq!(m.dim(), 1);
        let w = m.alphabet().parse_word("abba").unwrap();
        assert_eq!(m.probability(&w).unwrap(), 0.0625);
    }
}
