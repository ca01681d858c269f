//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p oom --test acceptance -- --nocapture` to see the
//! per-criterion lines.

mod common;

use common::*;
use oom::embedding::{
    contraction_slack, density_estimate, gram_matrix, inner_product_operator_form,
    inner_product_truncated, norm2_truncated,
};
use oom::cylinder::{additivity_residual, majorization_slack, partition_refine, premeasure};
use oom::{
    BuiltinModel, CylinderSet, EnumOptions, FutureFunction, OomError, ValidationOptions, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

fn opts() -> EnumOptions {
    EnumOptions::default()
}

#[test]
fn criterion_01_hidden_path_oracle_equivalence() {
    let start = Instant::now();
    for builtin in BuiltinModel::all() {
        let hmm = builtin_hmm(builtin);
        let model = builtin.build();
        for word in words_up_to(model.alphabet(), 8) {
            let oracle = path_sum_probability(&hmm, &word);
            let fwd = forward_probability(&hmm, &word);
            let lib = model.probability(&word).unwrap();
            assert!(
                (oracle - fwd).abs() <= 1e-12,
                "{builtin:?}: oracles disagree on {word}"
            );
            assert!(
                (lib - oracle).abs() <= 1e-12,
                "{builtin:?}: {word} lib {lib} vs oracle {oracle}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("acceptance criterion 01 (hidden-path oracle equivalence): PASS ({elapsed:?})");
}

#[test]
fn criterion_02_normalization_marginals_stationarity() {
    for builtin in BuiltinModel::all() {
        let model = builtin.build();
        let report = model.validate(&ValidationOptions::with_depth(8)).unwrap();
        assert!(
            report.max_level_sum_deviation <= 1e-10,
            "{builtin:?}: level sums off by {}",
            report.max_level_sum_deviation
        );

        let symbols = model.alphabet().len();
        for word in words_up_to(model.alphabet(), 7) {
            let p = model.probability(&word).unwrap();

            let mut marginal = 0.0;
            for sym in 0..symbols {
                marginal += model.probability(&word.extended(sym)).unwrap();
            }
            assert!(
                (marginal - p).abs() <= 1e-10,
                "{builtin:?}: marginal consistency fails at {word}"
            );

            let mut shifted = 0.0;
            for sym in 0..symbols {
                let prefixed = Word::from_indices(vec![sym]).concat(&word);
                shifted += model.probability(&prefixed).unwrap();
            }
            assert!(
                (shifted - p).abs() <= 1e-10,
                "{builtin:?}: stationarity fails at {word}"
            );
        }
    }
    println!("acceptance criterion 02 (normalization, marginals, stationarity): PASS");
}

fn is_partition_of(blocks: &[&BTreeSet<usize>], whole: usize) -> bool {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for block in blocks {
        count += block.len();
        seen.extend(block.iter().copied());
    }
    count == whole && seen.len() == whole && seen.iter().all(|&i| i < whole)
}

#[test]
fn criterion_03_partition_refinement_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0517);
    for _ in 0..1000 {
        let size: u64 = rng.gen_range(2..=40);
        let (a, b) = random_compatible_partitions(&mut rng, size);
        let r = partition_refine(&a, &b).unwrap();

        // The index families partition both index sets.
        let mut i_blocks: Vec<&BTreeSet<usize>> = vec![&r.i0];
        i_blocks.extend(r.i_of.values());
        assert!(is_partition_of(&i_blocks, a.len()));
        let mut j_blocks: Vec<&BTreeSet<usize>> = vec![&r.j0];
        j_blocks.extend(r.j_of.values());
        assert!(is_partition_of(&j_blocks, b.len()));
        assert_eq!(r.j_of.keys().copied().collect::<BTreeSet<_>>(), r.i0);
        assert_eq!(r.i_of.keys().copied().collect::<BTreeSet<_>>(), r.j0);

        // Exact reconstruction in both directions.
        for (&i, js) in &r.j_of {
            let union: BTreeSet<u64> = js.iter().flat_map(|&j| b[j].iter().copied()).collect();
            assert_eq!(union, a[i], "first-side block {i} not reconstructed");
        }
        for (&j, is) in &r.i_of {
            let union: BTreeSet<u64> = is.iter().flat_map(|&i| a[i].iter().copied()).collect();
            assert_eq!(union, b[j], "second-side block {j} not reconstructed");
        }
    }

    // Crossing pairs are rejected with the offending pair named.
    let mut rejected = 0;
    while rejected < 100 {
        let size: u64 = rng.gen_range(4..=30);
        let a = random_partition(&mut rng, size, 5);
        let b = random_partition(&mut rng, size, 5);
        match partition_refine(&a, &b) {
            Err(OomError::CrossingPair { i, j }) => {
                let meet: BTreeSet<_> = a[i].intersection(&b[j]).collect();
                assert!(!meet.is_empty());
                assert!(!a[i].is_subset(&b[j]) && !b[j].is_subset(&a[i]));
                rejected += 1;
            }
            Ok(_) => {}
            Err(e) => panic!("unexpected rejection: {e}"),
        }
    }
    println!("acceptance criterion 03 (partition refinement suite): PASS");
}

#[test]
fn criterion_04_finite_additivity_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0406);
    for builtin in BuiltinModel::all() {
        let model = builtin.build();
        let alphabet = model.alphabet().clone();
        for _ in 0..1000 {
            let family = random_disjoint_family(&alphabet, &mut rng, 4, 5);
            let given = random_positive_word(&model, &mut rng, 3);
            let residual = additivity_residual(&model, &given, &family).unwrap();
            assert!(
                residual < 1e-12,
                "{builtin:?}: additivity residual {residual}"
            );
        }
        // The whole space has measure one under every possible past.
        let full = CylinderSet::full_space(alphabet);
        for _ in 0..50 {
            let given = random_positive_word(&model, &mut rng, 4);
            let mass = premeasure(&model, &given, &full).unwrap();
            assert!((mass - 1.0).abs() < 1e-12);
        }
    }
    println!("acceptance criterion 04 (finite additivity suite): PASS");
}

#[test]
fn criterion_05_majorization_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0525);
    for builtin in BuiltinModel::all() {
        let model = builtin.build();
        for _ in 0..1000 {
            let given = random_positive_word(&model, &mut rng, 3);
            let set = random_cylinder(model.alphabet(), &mut rng, 4);
            let slack = majorization_slack(&model, &given, &set).unwrap();
            assert!(
                slack >= -1e-12,
                "{builtin:?}: slack {slack} for past {given} on {}",
                set.to_text()
            );
        }
    }
    println!("acceptance criterion 05 (majorization suite): PASS");
}

#[test]
fn criterion_06_inner_product_cross_formula() {
    let start = Instant::now();
    let opts = opts();
    for builtin in BuiltinModel::all() {
        let model = arc_model(builtin);
        let prefixes = positive_words_up_to(&model, 2);
        for (i, left) in prefixes.iter().enumerate() {
            for right in &prefixes[i..] {
                let g_left = FutureFunction::basis(model.clone(), left.clone()).unwrap();
                let g_right = FutureFunction::basis(model.clone(), right.clone()).unwrap();
                for n in 1..=12 {
                    let direct = inner_product_truncated(&g_left, &g_right, n, &opts).unwrap();
                    let operator =
                        inner_product_operator_form(&model, left, right, n, &opts).unwrap();
                    assert!(
                        (direct - operator).abs() <= 1e-10,
                        "{builtin:?}: routes differ at ({left}, {right}, n={n}): {direct} vs {operator}"
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("acceptance criterion 06 (inner-product cross-formula): PASS ({elapsed:?})");
}

#[test]
fn criterion_07_operator_contraction() {
    let opts = opts();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0706);
    for builtin in BuiltinModel::all() {
        let model = arc_model(builtin);
        for _ in 0..100 {
            let g = random_future_function(&model, &mut rng, 2, 4);
            for sym in 0..model.alphabet().len() {
                // Two-norm version, level by level.
                for n in 1..=8 {
                    let slack = contraction_slack(&g, sym, n, &opts).unwrap();
                    assert!(
                        slack >= -1e-12,
                        "{builtin:?}: 2-norm contraction slack {slack} at n={n}"
                    );
                }
                // Truncated sup-norm version.
                let applied = g.apply_operator(sym).unwrap();
                let lhs = applied.sup_norm_truncated(5).unwrap();
                let rhs = g.sup_norm_truncated(6).unwrap();
                assert!(
                    lhs <= rhs + 1e-12,
                    "{builtin:?}: sup-norm contraction {lhs} > {rhs}"
                );
            }
        }
    }
    println!("acceptance criterion 07 (operator contraction, 2-norm and sup-norm): PASS");
}

#[test]
fn criterion_08_inner_product_structure() {
    let opts = opts();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0808);
    for builtin in BuiltinModel::all() {
        let model = arc_model(builtin);
        for _ in 0..20 {
            let g1 = random_future_function(&model, &mut rng, 2, 3);
            let g2 = random_future_function(&model, &mut rng, 2, 3);
            let g3 = random_future_function(&model, &mut rng, 2, 3);
            let n = 6;

            let s12 = inner_product_truncated(&g1, &g2, n, &opts).unwrap();
            let s21 = inner_product_truncated(&g2, &g1, n, &opts).unwrap();
            assert!((s12 - s21).abs() <= 1e-12, "symmetry: {s12} vs {s21}");

            let alpha = rng.gen_range(-2.0..2.0);
            let beta = rng.gen_range(-2.0..2.0);
            let combo = g1.scale(alpha).add(&g2.scale(beta)).unwrap();
            let lhs = inner_product_truncated(&combo, &g3, n, &opts).unwrap();
            let rhs = alpha * inner_product_truncated(&g1, &g3, n, &opts).unwrap()
                + beta * inner_product_truncated(&g2, &g3, n, &opts).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12, "bilinearity: {lhs} vs {rhs}");

            let n1 = norm2_truncated(&g1, n, &opts).unwrap();
            let n2 = norm2_truncated(&g2, n, &opts).unwrap();
            assert!(
                s12.abs() <= n1 * n2 + 1e-10,
                "Cauchy-Schwarz: |{s12}| > {n1}*{n2}"
            );
        }

        // Self-pairings are nonnegative and nondecreasing in depth.
        for _ in 0..5 {
            let g = random_future_function(&model, &mut rng, 2, 3);
            let mut prev = 0.0;
            for n in 1..=15 {
                let s = inner_product_truncated(&g, &g, n, &opts).unwrap();
                assert!(s >= 0.0, "S_{n}(g,g) = {s} < 0");
                assert!(s >= prev - 1e-12, "S_{n}(g,g) = {s} < S_{}", n - 1);
                prev = s;
            }
        }
    }
    println!("acceptance criterion 08 (inner-product structure at fixed depth): PASS");
}

#[test]
fn criterion_09_dimension_diagnostics() {
    let opts = opts();
    for (builtin, expected_rank) in [
        (BuiltinModel::IidUniform, 1),
        (BuiltinModel::TwoStateSticky, 2),
        (BuiltinModel::Alternating, 2),
    ] {
        let model = arc_model(builtin);
        let candidates = positive_words_up_to(&model, 2);
        let gram = gram_matrix(&model, &candidates, 12, 1e-8, &opts).unwrap();
        assert_eq!(
            gram.numerical_rank, expected_rank,
            "{builtin:?}: eigenvalues {:?}",
            gram.eigenvalues
        );
        assert!(gram.smallest_eigenvalue() >= -1e-9);
    }
    println!("acceptance criterion 09 (Gram-rank dimension diagnostics): PASS");
}

#[test]
fn criterion_10_density_bounds_and_stabilization() {
    for builtin in BuiltinModel::all() {
        let model = arc_model(builtin);
        for prefix in positive_words_up_to(&model, 2) {
            let bound = 1.0 / model.probability(&prefix).unwrap();
            let g = FutureFunction::basis(model.clone(), prefix.clone()).unwrap();
            for at in positive_words_up_to(&model, 10) {
                let d = density_estimate(&g, &at).unwrap();
                assert!(
                    (-1e-12..=bound + 1e-12).contains(&d),
                    "{builtin:?}: density {d} outside [0, {bound}] for g_{prefix} at {at}"
                );
            }
        }
    }

    // Along the all-a ray of the sticky model the density estimate grows
    // monotonically and settles well before depth 20.
    let model = arc_model(BuiltinModel::TwoStateSticky);
    let a = model.alphabet().parse_word("a").unwrap();
    let g_a = FutureFunction::basis(model.clone(), a.clone()).unwrap();
    let values: Vec<f64> = (0..=20)
        .map(|k| {
            let ray = Word::from_indices(vec![0; k]);
            density_estimate(&g_a, &ray).unwrap()
        })
        .collect();
    for pair in values.windows(2) {
        assert!(pair[1] >= pair[0] - 1e-12, "density not monotone: {values:?}");
    }
    let last = values[20];
    for v in &values[10..] {
        assert!((v - last).abs() < 1e-6, "density not stabilized: {values:?}");
    }
    println!("acceptance criterion 10 (density bounds and stabilization): PASS");
}

/// Supporting oracle check: the deep truncated inner product matches a
/// brute-force enumeration that only uses forward-oracle probabilities.
#[test]
fn oracle_inner_product_brute_force_check() {
    let opts = opts();
    let builtin = BuiltinModel::TwoStateSticky;
    let hmm = builtin_hmm(builtin);
    let model = arc_model(builtin);
    let a = model.alphabet().parse_word("a").unwrap();
    let g_a = FutureFunction::basis(model.clone(), a.clone()).unwrap();

    let n = 12;
    let p_a = forward_probability(&hmm, &a);
    let mut oracle = 0.0;
    for word in model.alphabet().words_of_length(n) {
        let p = forward_probability(&hmm, &word);
        if p <= 0.0 {
            continue;
        }
        let joint = forward_probability(&hmm, &a.concat(&word));
        let conditional = joint / p_a;
        oracle += conditional * conditional / p;
    }
    let lib = inner_product_truncated(&g_a, &g_a, n, &opts).unwrap();
    assert!(
        (lib - oracle).abs() <= 1e-10,
        "inner product {lib} vs oracle {oracle}"
    );
    println!("oracle cross-check (depth-12 inner product vs forward oracle): PASS");
}
