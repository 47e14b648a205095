use lexvec_core::eval::{
    gradient, mcnemar, mcnemar_counts, np_bracketing_eval, objective, sentiment_eval, spearman, train_logreg,
    train_logreg_traced, word_similarity_eval, Bracketing, LabeledSentence, LabeledSentenceDataset, LogRegConfig,
    NpTriple, NpTripleDataset, OovPolicy, WordPair, WordPairDataset,
};
use lexvec_core::{DenseEmbeddingTable, SparseVector};
use lexvec_oracles as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tied_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let levels = rng.random_range(2..=len.max(2));
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.random_range(0..levels) as f64 * 0.25 - 3.0).collect();
        if v.iter().any(|&x| x != v[0]) {
            return v;
        }
    }
}

#[test]
fn spearman_matches_average_rank_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..500 {
        let len = rng.random_range(2..=50);
        let x = tied_vector(&mut rng, len);
        let y = tied_vector(&mut rng, len);
        let got = spearman(&x, &y).unwrap();
        let want = oracle::spearman(&x, &y);
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        let warped: Vec<f64> = y.iter().map(|v| v * v * v + 7.0).collect();
        assert_eq!(spearman(&x, &warped).unwrap(), got);
    }
}

#[test]
fn skip_policy_never_reads_oov_values() {
    let words = ["a", "b", "c", "d"];
    let table = |extra: f64| {
        DenseEmbeddingTable::new(
            words.iter().map(|w| w.to_string()).collect(),
            2,
            vec![1.0, 0.0, 0.9, 0.1, 0.2, 0.8, extra, -extra],
        )
        .unwrap()
    };
    let ds = WordPairDataset::new(
        "t",
        vec![
            WordPair { first: "a".into(), second: "b".into(), gold: 9.0 },
            WordPair { first: "a".into(), second: "c".into(), gold: 2.0 },
            WordPair { first: "b".into(), second: "c".into(), gold: 4.0 },
            WordPair { first: "x".into(), second: "d".into(), gold: 7.0 },
        ],
    )
    .unwrap();
    let r1 = word_similarity_eval(&table(1.0), &ds, OovPolicy::Skip).unwrap();
    let r2 = word_similarity_eval(&table(-5.0), &ds, OovPolicy::Skip).unwrap();
    assert_eq!(r1, r2);
    assert_eq!(r1.coverage, 0.75);
}

fn random_problem(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> (Vec<SparseVector>, Vec<bool>) {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        let dense: Vec<f64> =
            (0..dim).map(|_| if rng.random_bool(0.4) { rng.random_range(-2.0..2.0) } else { 0.0 }).collect();
        xs.push(SparseVector::from_dense(&dense));
        ys.push(i % 2 == 0 || rng.random_bool(0.3));
    }
    (xs, ys)
}

#[test]
fn gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let dim = rng.random_range(1..8);
        let (xs, ys) = random_problem(&mut rng, 30, dim);
        let lambda = [0.0, 0.01, 1.0][rng.random_range(0..3)];
        let params: Vec<f64> = (0..=dim).map(|_| rng.random_range(-1.5..1.5)).collect();
        let f = |p: &[f64]| objective(&xs, &ys, lambda, &p[..dim], p[dim]);
        let fd = oracle::central_difference(f, &params, 1e-5);
        let (gw, gb) = gradient(&xs, &ys, lambda, &params[..dim], params[dim]);
        let g: Vec<f64> = gw.into_iter().chain([gb]).collect();
        let diff: f64 = g.iter().zip(&fd).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let scale: f64 = fd.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
        assert!(diff / scale < 1e-6, "relative error {}", diff / scale);
    }
}

#[test]
fn objective_matches_grid_search_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..6 {
        let n = rng.random_range(6..20);
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let ys: Vec<bool> = (0..n).map(|i| if i < 2 { i == 0 } else { rng.random_bool(0.5) ^ (xs[i] > 0.5) }).collect();
        let lambda = [1e-2, 1e-1, 1.0][trial % 3];
        let rows: Vec<SparseVector> = xs.iter().map(|&x| SparseVector::from_dense(&[x])).collect();
        let model = train_logreg(&rows, &ys, lambda).unwrap();
        let (_, best) =
            oracle::grid_search_2d(|w, b| oracle::logistic_objective_1d(&xs, &ys, lambda, w, b), (0.0, 0.0), 20.0);
        let ours = oracle::logistic_objective_1d(&xs, &ys, lambda, model.weights[0], model.bias);
        assert!((ours - best).abs() < 1e-8, "trial {trial}: {ours} vs {best}");
        assert!((model.objective - ours).abs() < 1e-12);
    }
}

#[test]
fn separable_toy_is_fit_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for _ in 0..60 {
        let (a, b): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let margin = a + 2.0 * b - 0.3;
        if margin.abs() < 0.05 {
            continue;
        }
        xs.push(SparseVector::from_dense(&[a, b]));
        ys.push(margin > 0.0);
    }
    let model = train_logreg(&xs, &ys, 1e-6).unwrap();
    assert_eq!(model.accuracy(&xs, &ys), 1.0);
}

#[test]
fn accepted_steps_never_increase_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for lambda in [0.0, 1e-3, 1.0, 1e6] {
        let (xs, ys) = random_problem(&mut rng, 50, 5);
        let (model, trace) = train_logreg_traced(&xs, &ys, LogRegConfig::new(lambda)).unwrap();
        assert!(trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*trace.last().unwrap(), model.objective);
        assert!(model.iterations <= 1000);
    }
}

#[test]
fn mcnemar_matches_oracles() {
    for b in 0..40u64 {
        for c in 0..40u64 {
            let r = mcnemar_counts(b, c);
            assert!(r.p_value > 0.0 && r.p_value <= 1.0);
            assert_eq!(r.p_value, mcnemar_counts(c, b).p_value);
            if b + c == 0 {
                assert_eq!(r.p_value, 1.0);
            } else if b + c < 25 {
                assert!(r.exact);
                assert!((r.p_value - oracle::binomial_two_sided(b + c, b.min(c))).abs() < 1e-12);
            } else {
                assert!(!r.exact);
                let d = (b.abs_diff(c) as f64 - 1.0).max(0.0);
                assert_eq!(r.statistic, d * d / (b + c) as f64);
                // the integration oracle is slow; sample a spread of cases
                if r.statistic > 0.0 && b >= c && (b + c) % 6 == 0 {
                    assert!((r.p_value - oracle::chi2_1_tail(r.statistic)).abs() < 1e-7);
                }
            }
        }
    }
    let r = mcnemar_counts(10, 0);
    assert!((r.p_value - oracle::binomial_two_sided(10, 0)).abs() < 1e-6);
    assert_eq!(mcnemar_counts(40, 10).statistic, 16.82);
}

#[test]
fn mcnemar_on_predictions_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let gold: Vec<bool> = (0..300).map(|_| rng.random_bool(0.5)).collect();
    let a: Vec<bool> = gold.iter().map(|&g| if rng.random_bool(0.8) { g } else { !g }).collect();
    let b: Vec<bool> = gold.iter().map(|&g| if rng.random_bool(0.7) { g } else { !g }).collect();
    let ab = mcnemar(&a, &b, &gold).unwrap();
    let ba = mcnemar(&b, &a, &gold).unwrap();
    assert_eq!((ab.b, ab.c), (ba.c, ba.b));
    assert_eq!(ab.p_value, ba.p_value);
}

fn one_hot(words: &[String]) -> DenseEmbeddingTable {
    let n = words.len();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
    }
    DenseEmbeddingTable::new(words.to_vec(), n, data).unwrap()
}

#[test]
fn np_lookup_rule_is_learned() {
    let heads: Vec<String> = (0..20).map(|i| format!("h{i:02}")).collect();
    let fillers: Vec<String> = (0..10).map(|i| format!("m{i}")).collect();
    let mut vocab = heads.clone();
    vocab.extend(fillers.clone());
    let table = one_hot(&vocab);
    let right = |h: usize| h % 2 == 1;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut items = Vec::new();
    for fold in 0..10u8 {
        let copies = if fold == 0 { 2 } else { 1 };
        for _ in 0..copies {
            for (h, head) in heads.iter().enumerate() {
                let words =
                    [head.clone(), fillers[rng.random_range(0..10)].clone(), fillers[rng.random_range(0..10)].clone()];
                items.push(NpTriple { words, label: Bracketing::from_label(right(h)), fold });
            }
        }
    }
    let ds = NpTripleDataset { items };
    let report = np_bracketing_eval(&table, &ds).unwrap();
    assert_eq!(report.accuracy, 1.0);
    for (i, pred) in &report.predictions {
        let h: usize = ds.items[*i].words[0][1..].parse().unwrap();
        assert_eq!(pred.as_label(), right(h));
    }
    assert_eq!(np_bracketing_eval(&table, &ds).unwrap(), report);
}

#[test]
fn sentiment_rule_is_learned() {
    let vocab: Vec<String> = (0..12).map(|i| format!("t{i:02}")).collect();
    let table = one_hot(&vocab);
    let positive = |t: usize| t < 6;
    let split = |offset: usize| -> Vec<LabeledSentence> {
        (0..24)
            .map(|i| {
                let t = (i + offset) % 12;
                LabeledSentence { tokens: vec![vocab[t].clone()], label: positive(t) }
            })
            .collect()
    };
    let ds = LabeledSentenceDataset { train: split(0), dev: split(3), test: split(7) };
    let report = sentiment_eval(&table, &ds).unwrap();
    assert_eq!(report.accuracy, 1.0);
    assert_eq!(sentiment_eval(&table, &ds).unwrap(), report);
}
