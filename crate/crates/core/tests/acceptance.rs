//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion 9 needs the real dataset; it reports SKIPPED when the file is
//! not present (point `ONUBHUTI_EMONOBA` at the CSV to enable it).

use std::time::Instant;

use onubhuti::classifiers::{
    train_adaboost_traced, train_decision_tree, train_knn, train_multilabel, AdaBoostConfig,
    BinaryClassifier, FamilyConfig, KnnConfig, PipelineConfig, TreeConfig,
};
use onubhuti::cli::{run_explain, run_sweep, run_train, AppConfig, FamilyName};
use onubhuti::corpus::{synth, Emotion, LabelVector, EMOTIONS};
use onubhuti::decomp::fit_pca;
use onubhuti::eval::{aggregate, confusion, evaluate, prf, AggregateMode, ConfusionCounts};
use onubhuti::explain::{explain_with_scorer, LimeConfig};
use onubhuti::features::{fit_tfidf, SparseVector, TfidfConfig};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn pass(criterion: u32, name: &str, start: Instant) {
    println!(
        "criterion {criterion} ({name}): PASS ({:.3} s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_1_tfidf_oracle() {
    let start = Instant::now();
    let model = fit_tfidf(&["a b", "a c"], &TfidfConfig::default()).unwrap();
    let a = model.vocabulary().index_of("a").unwrap();
    let b = model.vocabulary().index_of("b").unwrap();
    assert_eq!(model.idf(a), 1.0, "df = N must give idf exactly 1");
    let expected_b = 1.5f64.ln() + 1.0;
    assert!((model.idf(b) - expected_b).abs() < 1e-9);
    assert!((model.idf(b) - 1.405_465_108_108_164_4).abs() < 1e-9);

    // transform("a b b"): counts x idf, then L2 normalization.
    let raw_cfg = TfidfConfig {
        normalize: false,
        ..TfidfConfig::default()
    };
    let raw = fit_tfidf(&["a b", "a c"], &raw_cfg)
        .unwrap()
        .transform("a b b");
    assert!((raw.get(a) - 1.0).abs() < 1e-9);
    assert!((raw.get(b) - 2.0 * expected_b).abs() < 1e-9);
    let normalized = model.transform("a b b");
    let norm = (1.0 + 4.0 * expected_b * expected_b).sqrt();
    assert!((normalized.get(a) - 1.0 / norm).abs() < 1e-9);
    assert!((normalized.get(b) - 2.0 * expected_b / norm).abs() < 1e-9);

    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 1 runtime");
    pass(1, "TF-IDF oracle", start);
}

#[test]
fn criterion_2_pca_oracle() {
    let start = Instant::now();
    let mut compared = 0usize;
    let mut isolated = 0usize;
    let mut total = 0usize;
    for trial in 0..100u64 {
        let mut rng = ChaCha20Rng::seed_from_u64(9_000 + trial);
        let n = rng.random_range(4..=20);
        let d = rng.random_range(2..=20);
        let k = (n - 1).min(d);
        let x: Vec<SparseVector> = (0..n)
            .map(|_| {
                let dense: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..2.0)).collect();
                SparseVector::from_dense(&dense)
            })
            .collect();
        let model = fit_pca(&x, k).unwrap();

        // Orthonormality within 1e-8.
        for i in 0..k {
            for j in 0..k {
                let dot: f64 = model
                    .component(i)
                    .iter()
                    .zip(model.component(j))
                    .map(|(p, q)| p * q)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (dot - expected).abs() < 1e-8,
                    "trial {trial}: gram[{i}][{j}] = {dot}"
                );
            }
        }

        let (oracle_values, oracle_vectors) = dense_eigen_oracle(&x, d);
        for i in 0..k {
            total += 1;
            assert!(
                (model.explained_variance()[i] - oracle_values[i]).abs() < 1e-6,
                "trial {trial}: variance {i}"
            );
            // Eigenvectors are only defined up to sign for isolated,
            // nonzero eigenvalues; compare exactly those.
            if relative_gap(&oracle_values, i) > 1e-4 && oracle_values[i] > 1e-8 {
                isolated += 1;
                let mut expected = oracle_vectors[i].clone();
                sign_convention(&mut expected);
                let mut matches = true;
                for (p, q) in model.component(i).iter().zip(expected.iter()) {
                    if (p - q).abs() >= 1e-6 {
                        matches = false;
                    }
                }
                assert!(matches, "trial {trial}: component {i} mismatch");
                compared += 1;
            }
        }
    }
    assert_eq!(compared, isolated);
    assert!(
        isolated * 100 >= total * 90,
        "spectrum separation guard: {isolated}/{total}"
    );
    assert!(start.elapsed().as_secs_f64() < 10.0, "criterion 2 runtime");
    pass(2, "PCA oracle", start);
    println!("  components compared against the eigen oracle: {compared}/{total}");
}

#[test]
fn criterion_3_knn_oracle() {
    let start = Instant::now();
    for &n in &[10usize, 60, 200] {
        let mut rng = ChaCha20Rng::seed_from_u64(777 + n as u64);
        let x: Vec<SparseVector> = (0..n)
            .map(|_| {
                let dense: Vec<f64> = (0..8)
                    .map(|_| {
                        if rng.random_range(0..3) == 0 {
                            0.0
                        } else {
                            rng.random_range(0.0..1.0)
                        }
                    })
                    .collect();
                SparseVector::from_dense(&dense)
            })
            .collect();
        let y: Vec<bool> = (0..n).map(|_| rng.random_range(0..2) == 1).collect();
        for &k in &[1usize, 3, 5, 9] {
            if k > n {
                continue;
            }
            let model = train_knn(
                &x,
                &y,
                &KnnConfig {
                    k,
                    ..KnnConfig::default()
                },
            )
            .unwrap();
            for q in 0..25 {
                let query: Vec<f64> = (0..8).map(|_| rng.random_range(0.0..1.0)).collect();
                let query = SparseVector::from_dense(&query);
                let expected = brute_force_knn(&x, &query, k);
                assert_eq!(model.neighbors(&query), expected, "n={n} k={k} q={q}");
                let votes = expected.iter().filter(|&&i| y[i]).count();
                assert_eq!(model.predict(&query), 2 * votes > k, "n={n} k={k} q={q}");
            }
        }
    }
    pass(3, "KNN oracle", start);
}

#[test]
fn criterion_4_decision_tree() {
    let start = Instant::now();
    // XOR at depth 2.
    let x: Vec<SparseVector> = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]
        .iter()
        .map(|r| SparseVector::from_dense(r))
        .collect();
    let y = vec![false, true, true, false];
    let config = TreeConfig {
        max_depth: Some(2),
        min_samples_leaf: 1,
    };
    let tree = train_decision_tree(&x, &y, &config).unwrap();
    for (xi, &yi) in x.iter().zip(y.iter()) {
        assert_eq!(tree.predict(xi), yi, "XOR must be fit exactly at depth 2");
    }

    // Root split equals the exhaustive impurity optimum on random sets.
    for trial in 0..30u64 {
        let mut rng = ChaCha20Rng::seed_from_u64(4_000 + trial);
        let x: Vec<SparseVector> = (0..30)
            .map(|_| {
                SparseVector::from_dense(&[
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                ])
            })
            .collect();
        let y: Vec<bool> = (0..30).map(|_| rng.random_range(0..2) == 1).collect();
        if y.iter().all(|&b| b) || y.iter().all(|&b| !b) {
            continue;
        }
        let tree = train_decision_tree(
            &x,
            &y,
            &TreeConfig {
                max_depth: Some(3),
                min_samples_leaf: 1,
            },
        )
        .unwrap();
        let got = tree.root_split().expect("mixed labels split");
        let want = exhaustive_best_split(&x, &y);
        assert_eq!(got.0, want.0, "trial {trial}: feature");
        assert!((got.1 - want.1).abs() < 1e-12, "trial {trial}: threshold");
    }
    pass(4, "decision tree", start);
}

#[test]
fn criterion_5_adaboost_properties() {
    let start = Instant::now();
    // Alpha formula at epsilon = 0.25, checked to 1e-12.
    let alpha = 0.5 * ((1.0 - 0.25f64) / 0.25).ln();
    assert!((alpha - 0.5 * 3f64.ln()).abs() < 1e-12);
    assert!((alpha - 0.549_306_144_334_054_9).abs() < 1e-12);

    // Alternating-label stump task.
    let x: Vec<SparseVector> = (0..8)
        .map(|i| SparseVector::from_dense(&[i as f64]))
        .collect();
    let y: Vec<bool> = (0..8).map(|i| i % 2 == 0).collect();
    let config = AdaBoostConfig {
        n_estimators: 30,
        weak_depth: 1,
        ..AdaBoostConfig::default()
    };
    let (model, rounds) = train_adaboost_traced(&x, &y, &config).unwrap();
    assert!(!rounds.is_empty());
    for round in &rounds {
        let sum: f64 = round.weights.iter().sum();
        assert!((sum - 1.0).abs() <= 1e-9, "weights must stay normalized");
    }
    for stage in model.stages() {
        assert!(stage.alpha > 0.0);
    }
    // Ensemble (uniformly weighted) training error vs the first weak
    // learner alone; initial weights are uniform so the first round's
    // weighted error is exactly its training error.
    let error = |predict: &dyn Fn(&SparseVector) -> bool| -> f64 {
        x.iter()
            .zip(y.iter())
            .filter(|(xi, &yi)| predict(xi) != yi)
            .count() as f64
            / x.len() as f64
    };
    let first = &model.stages()[0].tree;
    assert!(error(&|xi| model.predict(xi)) <= error(&|xi| first.predict(xi)) + 1e-12);
    pass(5, "AdaBoost properties", start);
}

#[test]
fn criterion_6_lime_sign_recovery() {
    let start = Instant::now();
    let text = "আজ খুব ভালো দিন মানুষ কথা সময় মনে";
    let coefficients: std::collections::HashMap<&str, f64> = [
        ("আজ", 2.0),
        ("খুব", -1.5),
        ("ভালো", 3.0),
        ("দিন", -2.5),
        ("মানুষ", 1.0),
    ]
    .into_iter()
    .collect();
    let scorer = |t: &str| -> onubhuti::Result<f64> {
        let present: std::collections::HashSet<&str> = t.split_whitespace().collect();
        Ok(present.iter().filter_map(|w| coefficients.get(*w)).sum())
    };

    let mut correct_trials = 0;
    for seed in 0..20u64 {
        let config = LimeConfig {
            num_samples: 2000,
            num_features: 5,
            seed,
            ..LimeConfig::default()
        };
        let explanation = explain_with_scorer(scorer, text, "joy", &config).unwrap();
        let all_signs_match = explanation.features.iter().all(|(word, weight)| {
            coefficients
                .get(word.as_str())
                .is_none_or(|c| weight.signum() == c.signum())
        });
        let top5: Vec<&str> = explanation
            .features
            .iter()
            .map(|(w, _)| w.as_str())
            .collect();
        let covers = coefficients.keys().all(|k| top5.contains(k));
        if all_signs_match && covers {
            correct_trials += 1;
        }
    }
    assert!(
        correct_trials >= 19,
        "top-5 signs correct in {correct_trials}/20 trials, need >= 19"
    );

    // Constant model: all-zero weights within 1e-9.
    let config = LimeConfig {
        num_samples: 2000,
        seed: 5,
        ..LimeConfig::default()
    };
    let constant = explain_with_scorer(|_| Ok(1.25), text, "joy", &config).unwrap();
    for (word, weight) in &constant.features {
        assert!(weight.abs() <= 1e-9, "{word}: {weight}");
    }
    assert!((constant.intercept - 1.25).abs() <= 1e-9);

    assert!(start.elapsed().as_secs_f64() < 60.0, "criterion 6 runtime");
    pass(6, "LIME sign recovery", start);
    println!("  sign-correct trials: {correct_trials}/20");
}

#[test]
fn criterion_7_metrics() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(70_007);
    for _ in 0..1000 {
        let n = rng.random_range(1..=30);
        let random_lv = |rng: &mut ChaCha20Rng| {
            let mut v = LabelVector::default();
            for e in EMOTIONS {
                v.set(e, rng.random_range(0..2) == 1);
            }
            v
        };
        let gold: Vec<LabelVector> = (0..n).map(|_| random_lv(&mut rng)).collect();
        let predictions: Vec<LabelVector> = (0..n).map(|_| random_lv(&mut rng)).collect();
        let report = evaluate(&predictions, &gold, false).unwrap();
        for (j, &e) in EMOTIONS.iter().enumerate() {
            // Brute-force per-instance recount.
            let mut counts = ConfusionCounts::default();
            for i in 0..n {
                match (predictions[i].get(e), gold[i].get(e)) {
                    (true, true) => counts.true_pos += 1,
                    (true, false) => counts.false_pos += 1,
                    (false, true) => counts.false_neg += 1,
                    (false, false) => counts.true_neg += 1,
                }
            }
            assert_eq!(report.per_label[j].counts, counts);
            let p = prf(&counts);
            assert_eq!(report.per_label[j].f1, p.f1);
        }
        assert_eq!(
            confusion(&predictions, &gold, Emotion::Joy).unwrap(),
            report.per_label[1].counts
        );
    }

    // Macro/weighted toy case: supports 9 and 1 with F1s 1.0 and 0.0.
    let mut counts = [ConfusionCounts::default(); 6];
    counts[0] = ConfusionCounts {
        true_pos: 9,
        false_pos: 0,
        false_neg: 0,
        true_neg: 1,
    };
    counts[1] = ConfusionCounts {
        true_pos: 0,
        false_pos: 0,
        false_neg: 1,
        true_neg: 9,
    };
    let weighted = aggregate(&counts, AggregateMode::Weighted);
    assert_eq!(weighted.f1, 0.9);
    let two_label_macro = (prf(&counts[0]).f1 + prf(&counts[1]).f1) / 2.0;
    assert_eq!(two_label_macro, 0.5);
    pass(7, "metrics", start);
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("toy.csv");
    write_toy_csv(&data, 12, 3);

    let mut config = AppConfig::default();
    config.dataset.path = Some(data);
    config.output.dir = dir.path().join("out");
    config.split.seed = 42;
    config.model.family = FamilyName::Forest;
    config.model.forest.n_trees = 10;
    config.model.svm.epochs = 10;
    config.model.adaboost.n_estimators = 8;
    config.sweep.families = vec![FamilyName::Svm, FamilyName::Forest];
    config.sweep.ngrams = vec![[1, 1]];
    config.sweep.pca = vec![false];

    // train twice -> byte-identical model and metrics artifacts.
    let first = run_train(&config, false).unwrap();
    let model_bytes = std::fs::read(&first.model_path).unwrap();
    let metrics_bytes = std::fs::read(&first.metrics_path).unwrap();
    let second = run_train(&config, false).unwrap();
    assert_eq!(model_bytes, std::fs::read(&second.model_path).unwrap());
    assert_eq!(metrics_bytes, std::fs::read(&second.metrics_path).unwrap());

    // explain twice -> byte-identical explanation.
    let text = "রাগ হচ্ছে খুব আজ";
    let explain_path = run_explain(&config, &first.model_path, text, "anger").unwrap();
    let explain_bytes = std::fs::read(&explain_path).unwrap();
    run_explain(&config, &first.model_path, text, "anger").unwrap();
    assert_eq!(explain_bytes, std::fs::read(&explain_path).unwrap());

    // sweep twice -> byte-identical tables, results and every artifact.
    let sweep_first = run_sweep(&config, false).unwrap();
    let mut snapshots = Vec::new();
    let sweep_dir = config.output.dir.join("sweep");
    let mut entries: Vec<_> = std::fs::read_dir(&sweep_dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    for path in &entries {
        snapshots.push((path.clone(), std::fs::read(path).unwrap()));
    }
    assert!(!snapshots.is_empty());
    let sweep_second = run_sweep(&config, false).unwrap();
    for (path, bytes) in &snapshots {
        assert_eq!(
            &std::fs::read(path).unwrap(),
            bytes,
            "sweep artifact changed: {}",
            path.display()
        );
    }
    assert_eq!(sweep_first.table_path, sweep_second.table_path);
    pass(8, "determinism", start);
}

#[test]
fn criterion_9_emonoba_directional() {
    let start = Instant::now();
    let Some(dataset) = locate_emonoba() else {
        println!(
            "criterion 9 (EmoNoBa directional): SKIPPED (dataset not present; \
             set ONUBHUTI_EMONOBA to the CSV path)"
        );
        return;
    };
    let mut config = match std::env::var("ONUBHUTI_EMONOBA_CONFIG") {
        Ok(path) => AppConfig::from_toml_file(std::path::Path::new(&path)).unwrap(),
        Err(_) => AppConfig::default(),
    };
    config.dataset.path = Some(dataset);
    config.output.dir = std::env::temp_dir().join("onubhuti-emonoba-sweep");

    // Informational dataset statistics next to the published figures.
    let (records, rejected) = onubhuti::cli::load_records(&config, false).unwrap();
    let stats = onubhuti::corpus::compute_stats(&records, 10).unwrap();
    println!(
        "  informational: {} records ({} rejected) vs published 22698; \
         multi-label fraction {:.4} vs published 0.153",
        stats.record_count,
        rejected.len(),
        stats.multi_label_fraction
    );
    if let Some(shares) = &stats.platform_shares {
        if let Some((platform, share)) = shares.first() {
            println!(
                "  informational: top platform {platform} share {share:.4} vs published 0.7728"
            );
        }
    }

    let outcome = run_sweep(&config, false).unwrap();

    let cell = |row: &str, column: &str| -> f64 {
        outcome
            .results
            .cells
            .iter()
            .chain(outcome.results.pair.iter())
            .find(|c| c.row == row && c.column == column)
            .and_then(|c| c.test.as_ref())
            .map(|r| r.macro_avg.f1)
            .unwrap_or_else(|| panic!("cell {row}/{column} missing or failed"))
    };
    let svm_uni = cell("svm", "uni-gram");
    let svm_tri = cell("svm", "tri-gram");
    let svm_uni_pca = cell("svm", "uni-gram(pca)");
    assert!(
        svm_uni > svm_tri,
        "(a) SVM unigram {svm_uni} vs trigram {svm_tri}"
    );
    assert!(
        svm_uni > svm_uni_pca,
        "(a) SVM unigram {svm_uni} vs with PCA {svm_uni_pca}"
    );
    let with_ada = cell("tree+adaboost", "uni-gram");
    let without = cell("tree", "uni-gram");
    assert!(
        with_ada >= without - 0.01,
        "(b) AdaBoost {with_ada} vs plain tree {without}"
    );
    // (c) informational distance to the published cells; not gating.
    for (name, got, published) in [
        ("svm uni-gram", svm_uni, 0.63),
        ("svm tri-gram", svm_tri, 0.49),
        ("svm uni-gram(pca)", svm_uni_pca, 0.56),
        ("tree+adaboost", with_ada, 0.7860),
        ("tree", without, 0.7799),
    ] {
        println!(
            "  informational: {name} macro-F1 {got:.4} vs published {published:.4} \
             (|delta| = {:.4}, within 0.08: {})",
            (got - published).abs(),
            (got - published).abs() <= 0.08
        );
    }
    pass(9, "EmoNoBa directional", start);
}

fn locate_emonoba() -> Option<std::path::PathBuf> {
    if let Ok(path) = std::env::var("ONUBHUTI_EMONOBA") {
        let path = std::path::PathBuf::from(path);
        return path.exists().then_some(path);
    }
    for candidate in [
        "data/emonoba.csv",
        "../data/emonoba.csv",
        "../../data/emonoba.csv",
    ] {
        let path = std::path::PathBuf::from(candidate);
        if path.exists() {
            return Some(path);
        }
    }
    None
}

fn write_toy_csv(path: &std::path::Path, per_label: usize, multi_every: usize) {
    use std::fmt::Write as _;
    let records = synth::keyword_corpus(per_label, multi_every, 8);
    let mut csv = String::from("text,love,joy,surprise,anger,sadness,fear\n");
    for r in &records {
        write!(csv, "{}", r.text).unwrap();
        for &e in EMOTIONS.iter() {
            write!(csv, ",{}", if r.labels.get(e) { 1 } else { 0 }).unwrap();
        }
        csv.push('\n');
    }
    std::fs::write(path, csv).unwrap();
}

/// Dense-covariance eigendecomposition oracle (nalgebra), descending.
fn dense_eigen_oracle(x: &[SparseVector], d: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = x.len();
    let dense: Vec<Vec<f64>> = x.iter().map(SparseVector::to_dense).collect();
    let mean: Vec<f64> = (0..d)
        .map(|j| dense.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    let mut cov = nalgebra::DMatrix::<f64>::zeros(d, d);
    for row in &dense {
        for i in 0..d {
            for j in 0..d {
                cov[(i, j)] += (row[i] - mean[i]) * (row[j] - mean[j]);
            }
        }
    }
    cov /= (n - 1) as f64;
    let eigen = nalgebra::SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .partial_cmp(&eigen.eigenvalues[a])
            .unwrap()
    });
    let values = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eigen.eigenvectors.column(i).iter().copied().collect())
        .collect();
    (values, vectors)
}

fn relative_gap(values: &[f64], i: usize) -> f64 {
    let scale = values[0].abs().max(1e-12);
    let before = if i == 0 {
        f64::INFINITY
    } else {
        (values[i - 1] - values[i]).abs()
    };
    let after = if i + 1 < values.len() {
        (values[i] - values[i + 1]).abs()
    } else {
        f64::INFINITY
    };
    before.min(after) / scale
}

fn sign_convention(row: &mut [f64]) {
    let mut best = 0usize;
    for (i, v) in row.iter().enumerate() {
        if v.abs() > row[best].abs() {
            best = i;
        }
    }
    if row[best] < 0.0 {
        for v in row.iter_mut() {
            *v = -*v;
        }
    }
}

/// Brute-force nearest neighbors: dense cosine distances, selection by
/// repeated minimum extraction, ties at equal distance to the lower index.
fn brute_force_knn(x: &[SparseVector], query: &SparseVector, k: usize) -> Vec<usize> {
    let qd = query.to_dense();
    let nq = qd.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut distances: Vec<(f64, usize)> = x
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let xd = xi.to_dense();
            let dot: f64 = xd.iter().zip(qd.iter()).map(|(a, b)| a * b).sum();
            let nx = xd.iter().map(|v| v * v).sum::<f64>().sqrt();
            let d = if nx == 0.0 && nq == 0.0 {
                0.0
            } else if nx == 0.0 || nq == 0.0 {
                1.0
            } else {
                1.0 - dot / (nx * nq)
            };
            (d, i)
        })
        .collect();
    let mut selected = Vec::with_capacity(k);
    for _ in 0..k {
        let best = distances
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)))
            .map(|(pos, _)| pos)
            .unwrap();
        selected.push(distances.remove(best).1);
    }
    selected
}

/// Exhaustive CART split oracle with the lowest-feature/lowest-threshold
/// tie rule.
fn exhaustive_best_split(x: &[SparseVector], y: &[bool]) -> (u32, f64) {
    let n = x.len() as f64;
    let gini_side = |pos: f64, neg: f64| -> f64 {
        let w = pos + neg;
        if w <= 0.0 {
            0.0
        } else {
            w * (1.0 - (pos / w) * (pos / w) - (neg / w) * (neg / w))
        }
    };
    let mut best: Option<(f64, u32, f64)> = None;
    for feature in 0..2u32 {
        let mut values: Vec<f64> = x.iter().map(|r| r.get(feature)).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup();
        for pair in values.windows(2) {
            let threshold = 0.5 * (pair[0] + pair[1]);
            let (mut lp, mut ln, mut rp, mut rn) = (0.0, 0.0, 0.0, 0.0);
            for (row, &label) in x.iter().zip(y.iter()) {
                let w = 1.0 / n;
                match (row.get(feature) <= threshold, label) {
                    (true, true) => lp += w,
                    (true, false) => ln += w,
                    (false, true) => rp += w,
                    (false, false) => rn += w,
                }
            }
            let impurity = gini_side(lp, ln) + gini_side(rp, rn);
            if best.is_none() || impurity < best.unwrap().0 {
                best = Some((impurity, feature, threshold));
            }
        }
    }
    let (_, feature, threshold) = best.expect("at least one candidate split");
    (feature, threshold)
}

// The multilabel keyword example from the training contract doubles as an
// acceptance smoke check that the whole pipeline composes.
#[test]
fn keyword_corpus_pipeline_smoke() {
    let records = synth::keyword_corpus(2, 0, 60);
    assert_eq!(records.len(), 12);
    let model = train_multilabel(
        &records,
        &PipelineConfig::default(),
        &FamilyConfig::Tree(TreeConfig {
            max_depth: None,
            min_samples_leaf: 1,
        }),
    )
    .unwrap();
    for record in &records {
        assert_eq!(model.predict_text(&record.text).unwrap(), record.labels);
    }
}
