use biberkit_core::analytics::{pca_standardized, top_loadings};
use biberkit_core::pipeline::Pipeline;
use biberkit_core::synthetic::{corpus, pairs};
use biberkit_core::verify::{evaluate, train, ForestParams, PairExample};
use biberkit_core::{CountingMode, FeatureMatrix};

/// Best accuracy of any single threshold (either direction) on `scores`.
fn threshold_accuracy(scores: &[f64], positive: &[bool]) -> f64 {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let total_pos = positive.iter().filter(|&&p| p).count();
    let n = scores.len();
    let mut best = 0usize;
    let mut below_pos = 0;
    for k in 0..=n {
        if k > 0 && positive[order[k - 1]] {
            below_pos += 1;
        }
        // predict positive above the cut, or below it
        let above = (total_pos - below_pos) + (k - below_pos);
        best = best.max(above).max(n - above);
    }
    best as f64 / n as f64
}

#[test]
fn synthetic_styles_separate_on_a_leading_component() {
    let pl = Pipeline::new(CountingMode::Binary);
    let docs = corpus(300, 300, 17);
    let profiles: Vec<_> = docs.iter().map(|d| pl.profile_text(&d.id, Some(&d.label), &d.text).unwrap()).collect();
    let m = FeatureMatrix::from_profiles(&profiles).unwrap();
    let r = pca_standardized(&m, 2).unwrap();
    let truth: Vec<bool> = docs.iter().map(|d| d.label == "involved").collect();
    let acc = (0..2).map(|c| threshold_accuracy(&r.scores_of(c), &truth)).fold(0.0, f64::max);
    assert!(acc >= 0.95, "{acc}");
    let top: Vec<String> = top_loadings(&r, 0, 10).unwrap().into_iter().map(|x| x.0).collect();
    assert!(top.iter().any(|f| f == "FPP1" || f == "CONT" || f == "NN" || f == "PIN"), "{top:?}");
}

fn examples(n: usize, seed: u64, pl: &Pipeline) -> Vec<PairExample> {
    pairs(n, 300, seed)
        .iter()
        .map(|p| {
            let a = pl.profile_text("a", None, &p.texts[0]).unwrap();
            let b = pl.profile_text("b", None, &p.texts[1]).unwrap();
            PairExample::from_profiles(&a, &b, p.same).unwrap()
        })
        .collect()
}

#[test]
fn verification_on_synthetic_pairs() {
    let pl = Pipeline::new(CountingMode::Binary);
    let tr = examples(200, 1, &pl);
    let te = examples(200, 2, &pl);
    let model = train(&tr, ForestParams::default(), 7).unwrap();
    let m = evaluate(&model, &te, 0.5).unwrap();
    assert!(m.f1 >= 0.9, "{m:?}");
}
