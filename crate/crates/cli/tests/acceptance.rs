//! Acceptance suite: every release-gating check in one target, one test per
//! criterion, each printing a `criterion N: PASS/FAIL` line (run with
//! `-- --nocapture` to see them). Tolerances and time bounds are pinned in
//! the assertions.

use bayes_recipient::categorical::{
    conclusion_lr, posterior_means, CategoricalCounts, ConclusionLabel,
};
use bayes_recipient::coins::{
    coin_beta, coin_fair, coin_markov, coin_markov_exact, CoinSequence, MarkovWeighting,
};
use bayes_recipient::continuous::{log_lr_a, NormalGamma, ValidationSummary};
use bayes_recipient::recipient::{
    lr_a, posterior_odds, ContinuousPriors, ExpertReport, RecipientQuery, ValidationData,
};
use bayes_recipient::space::{two_coin_space, FiniteSpace};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Beta, Distribution, Gamma, Normal};
use std::time::{Duration, Instant};

fn assert_runtime(criterion: u32, elapsed: Duration, bound: Duration) {
    assert!(
        elapsed < bound,
        "criterion {criterion}: runtime {elapsed:?} exceeded {bound:?}"
    );
}

fn skeptical_priors() -> ContinuousPriors {
    ContinuousPriors {
        h1: NormalGamma::new(5.0, 1.0, 0.01, 1.0).unwrap(),
        h2: NormalGamma::new(-5.0, 1.0, 0.01, 1.0).unwrap(),
    }
}

#[test]
fn c01_categorical_no_data_lr_is_two() {
    let start = Instant::now();
    let lr = conclusion_lr(&CategoricalCounts::none(), ConclusionLabel::Identified).unwrap();
    let err = (lr - 2.0).abs();
    println!(
        "criterion 1: {} — no-data conclusion LR = {lr} (|err| = {err:.2e})",
        if err <= 1e-9 { "PASS" } else { "FAIL" }
    );
    assert!(err <= 1e-9);
    assert_runtime(1, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn c02_categorical_limit_matches_importance_sampling_oracle() {
    let start = Instant::now();
    let counts = CategoricalCounts::new(9500, 10_000, 500, 10_000).unwrap();
    let (e_p, e_q) = posterior_means(&counts).unwrap();
    let lr = conclusion_lr(&counts, ConclusionLabel::Identified).unwrap();

    // Oracle: independent draws from the unconstrained beta posteriors,
    // rejected on p > q; uncertainties from 200 batch replicates.
    let mut rng = StdRng::seed_from_u64(0x1000_0001);
    let bp = Beta::new(9501.0, 501.0).unwrap();
    let bq = Beta::new(501.0, 9501.0).unwrap();
    const BATCHES: usize = 200;
    const PER_BATCH: usize = 50_000; // 10^7 draws total
    let mut batches = Vec::with_capacity(BATCHES);
    for _ in 0..BATCHES {
        let (mut kept, mut sum_p, mut sum_q) = (0u64, 0.0f64, 0.0f64);
        for _ in 0..PER_BATCH {
            let p: f64 = bp.sample(&mut rng);
            let q: f64 = bq.sample(&mut rng);
            if p > q {
                kept += 1;
                sum_p += p;
                sum_q += q;
            }
        }
        assert!(kept > 0);
        let (mp, mq) = (sum_p / kept as f64, sum_q / kept as f64);
        batches.push((mp, mq, mp / mq));
    }
    let mean_and_sigma = |pick: &dyn Fn(&(f64, f64, f64)) -> f64| {
        let mean = batches.iter().map(pick).sum::<f64>() / BATCHES as f64;
        let var = batches
            .iter()
            .map(|b| (pick(b) - mean).powi(2))
            .sum::<f64>()
            / BATCHES as f64;
        (mean, (var / BATCHES as f64).sqrt())
    };
    let (mc_p, sigma_p) = mean_and_sigma(&|b| b.0);
    let (mc_q, sigma_q) = mean_and_sigma(&|b| b.1);
    let (mc_lr, sigma_lr) = mean_and_sigma(&|b| b.2);

    let in_range = lr > 18.0 && lr < 19.5;
    let within = (lr - mc_lr).abs() <= 3.0 * sigma_lr
        && (e_p - mc_p).abs() <= 3.0 * sigma_p
        && (e_q - mc_q).abs() <= 3.0 * sigma_q;
    println!(
        "criterion 2: {} — LR {lr:.6} vs oracle {mc_lr:.6} ± {sigma_lr:.2e} (3σ), \
         E_p {e_p:.6} vs {mc_p:.6}, E_q {e_q:.6} vs {mc_q:.6}, range (18, 19.5)",
        if in_range && within { "PASS" } else { "FAIL" }
    );
    assert!(in_range, "LR {lr} outside (18.0, 19.5)");
    assert!(
        (lr - mc_lr).abs() <= 3.0 * sigma_lr,
        "LR {lr} vs oracle {mc_lr} ± {sigma_lr} exceeds 3σ"
    );
    assert!(
        (e_p - mc_p).abs() <= 3.0 * sigma_p,
        "E_p {e_p} vs oracle {mc_p} ± {sigma_p} exceeds 3σ"
    );
    assert!(
        (e_q - mc_q).abs() <= 3.0 * sigma_q,
        "E_q {e_q} vs oracle {mc_q} ± {sigma_q} exceeds 3σ"
    );
    assert_runtime(2, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn c03_prior_only_lr_curve() {
    let start = Instant::now();
    let priors = skeptical_priors();
    let h1 = priors.h1.predictive();
    let h2 = priors.h2.predictive();
    let lr = |x: f64| log_lr_a(x, &h1, &h2).exp();

    let at_zero = lr(0.0);
    let at_fifteen = lr(15.0);

    // Sweep [-200, 200] on a grid that contains ±200, 0, and 15 exactly.
    let mut best_x = f64::NAN;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=1600 {
        let x = -200.0 + 0.25 * i as f64;
        let v = lr(x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let tail_hi = lr(200.0);
    let tail_lo = lr(-200.0);

    let zero_ok = (at_zero - 1.0).abs() <= 1e-12;
    let fifteen_ok = (at_fifteen - 2.0).abs() <= 1e-9;
    let peak_ok = best_x == 15.0;
    let tails_ok = (tail_hi - 1.0).abs() <= 0.02 && (tail_lo - 1.0).abs() <= 0.02;
    println!(
        "criterion 3: {} — LR(0)={at_zero}, LR(15)={at_fifteen:.12}, argmax={best_x}, \
         LR(200)={tail_hi:.6}, LR(-200)={tail_lo:.6}",
        if zero_ok && fifteen_ok && peak_ok && tails_ok {
            "PASS"
        } else {
            "FAIL"
        }
    );
    assert!(zero_ok, "LR(0) = {at_zero}");
    assert!(fifteen_ok, "LR(15) = {at_fifteen}");
    assert!(peak_ok, "max over the sweep at x = {best_x}, expected 15");
    assert!(
        tails_ok,
        "LR(±200) = {tail_hi}/{tail_lo}: not within 0.02 of 1"
    );
    assert_runtime(3, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn c04_batch_and_sequential_updates_agree() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x1000_0004);
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1e-300);

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let prior = NormalGamma::new(
            rng.random_range(-10.0..10.0),
            rng.random_range(0.1..20.0),
            rng.random_range(0.001..5.0),
            rng.random_range(0.1..20.0),
        )
        .unwrap();
        let n = rng.random_range(2..=300usize);
        let center = rng.random_range(-10.0..10.0);
        let spread = rng.random_range(0.1..8.0);
        let noise = Normal::new(center, spread).unwrap();
        let data: Vec<f64> = (0..n).map(|_| noise.sample(&mut rng)).collect();
        let split = rng.random_range(1..n);

        let pooled = prior.update(&ValidationSummary::from_samples(&data).unwrap());
        let sequential = prior
            .update(&ValidationSummary::from_samples(&data[..split]).unwrap())
            .update(&ValidationSummary::from_samples(&data[split..]).unwrap());

        for (a, b) in [
            (pooled.mu0(), sequential.mu0()),
            (pooled.n_mu(), sequential.n_mu()),
            (pooled.tau0(), sequential.tau0()),
            (pooled.n_tau(), sequential.n_tau()),
        ] {
            worst = worst.max(rel(a, b));
        }
        assert!(
            pooled.precision_weight() >= prior.precision_weight(),
            "precision weight decreased"
        );
        assert!(
            sequential.precision_weight() >= prior.precision_weight(),
            "precision weight decreased"
        );
    }
    println!(
        "criterion 4: {} — worst relative hyperparameter gap {worst:.2e} over 100 splits",
        if worst < 1e-10 { "PASS" } else { "FAIL" }
    );
    assert!(worst < 1e-10);
    assert_runtime(4, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn c05_predictive_matches_hierarchical_sampler() {
    let start = Instant::now();
    let prior = skeptical_priors().h1;
    let t = prior.predictive();

    let mut rng = StdRng::seed_from_u64(0x1000_0005);
    let shape = prior.n_tau() / 2.0;
    let scale = 2.0 * prior.tau0() / prior.n_tau();
    let gamma = Gamma::new(shape, scale).unwrap();
    let n = 100_000usize;
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let tau: f64 = gamma.sample(&mut rng);
        let mu = Normal::new(prior.mu0(), (prior.n_mu() * tau).recip().sqrt())
            .unwrap()
            .sample(&mut rng);
        ys.push(
            Normal::new(mu, tau.recip().sqrt())
                .unwrap()
                .sample(&mut rng),
        );
    }
    ys.sort_by(f64::total_cmp);
    let mut ks: f64 = 0.0;
    for (i, &y) in ys.iter().enumerate() {
        let f = t.cdf(y).unwrap();
        ks = ks
            .max(f - i as f64 / n as f64)
            .max((i + 1) as f64 / n as f64 - f);
    }
    println!(
        "criterion 5: {} — KS distance {ks:.5} over 10^5 hierarchical samples",
        if ks < 0.02 { "PASS" } else { "FAIL" }
    );
    assert!(ks < 0.02);
    assert_runtime(5, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn c06_validation_grows_lr_toward_normal_limit() {
    let start = Instant::now();
    let query = RecipientQuery::new(
        1.0,
        ExpertReport::numeric_log_lr(8.0).unwrap(),
        Some(skeptical_priors()),
    )
    .unwrap();

    let mut lrs = Vec::new();
    for n in [1u64, 10, 100, 1000, 10_000] {
        let data = ValidationData::Numeric {
            h1: ValidationSummary::new(n, 8.0, 25.0).unwrap(),
            h2: ValidationSummary::new(n, -12.5, 25.0).unwrap(),
        };
        lrs.push(lr_a(&query, &data).unwrap());
    }
    let monotone = lrs.windows(2).all(|w| w[1] >= w[0]);
    let limit = (420.25f64 / 50.0).exp();
    let final_gap = (lrs[4] / limit - 1.0).abs();
    println!(
        "criterion 6: {} — LR_A(8) by n: {lrs:.3?}; n=10^4 within {final_gap:.4} of normal limit {limit:.3}",
        if monotone && final_gap <= 0.05 { "PASS" } else { "FAIL" }
    );
    assert!(monotone, "not nondecreasing: {lrs:?}");
    assert!(final_gap <= 0.05, "n=10^4 LR {} vs limit {limit}", lrs[4]);
    assert_runtime(6, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn c07_coin_models_reproduce_worked_values() {
    let start = Instant::now();
    let seq = CoinSequence::parse("HHHHHTTT").unwrap();
    let fair = coin_fair(&seq);
    let beta = coin_beta(&seq, 1.0, 1.0).unwrap();
    let markov = coin_markov(&seq, MarkovWeighting::Equal).unwrap();
    let exact = coin_markov_exact(&seq, MarkovWeighting::Equal).unwrap();
    let thirteen_fortieths = BigRational::new(BigInt::from(13), BigInt::from(40));

    let ok = fair == 0.5
        && (beta - 0.6).abs() <= 1e-12
        && (markov - 0.325).abs() <= 1e-12
        && exact == thirteen_fortieths;
    println!(
        "criterion 7: {} — fair {fair}, beta {beta}, markov {markov} (exact {exact})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert_eq!(fair, 0.5);
    assert!((beta - 0.6).abs() <= 1e-12);
    assert!((markov - 0.325).abs() <= 1e-12);
    assert_eq!(exact, thirteen_fortieths);
    assert_runtime(7, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn c08_coherence_axioms_and_conditioning_counterexample() {
    let start = Instant::now();

    // Exact rational arithmetic on the two-coin space.
    let space = two_coin_space::<BigRational>();
    let one = BigRational::new(BigInt::from(1), BigInt::from(1));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let given_both = space.cond_prob("A", &["B", "C"]).unwrap();
    let given_c = space.cond_prob("A", &["C"]).unwrap();
    let indep = space.independent("A", "B").unwrap();
    assert_eq!(given_both, one);
    assert_eq!(given_c, half);
    assert!(indep);

    // Axioms on 1000 randomly generated spaces: nonnegativity, unit mass on
    // the sure event, additivity over disjoint events.
    let mut rng = StdRng::seed_from_u64(0x1000_0008);
    for _ in 0..1000 {
        let n = rng.random_range(1..=8usize);
        let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let labels: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let outcomes: Vec<(String, f64)> = labels
            .iter()
            .cloned()
            .zip(raw.iter().map(|w| w / total))
            .collect();
        let mut space = FiniteSpace::new(outcomes).unwrap();

        let member_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        space.define_event("S", &member_refs).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for label in &member_refs {
            match rng.random_range(0..3) {
                0 => a.push(*label),
                1 => b.push(*label),
                _ => {}
            }
        }
        space.define_event("A", &a).unwrap();
        space.define_event("B", &b).unwrap();
        let union: Vec<&str> = a.iter().chain(b.iter()).copied().collect();
        space.define_event("AB", &union).unwrap();

        assert!(space.prob("A").unwrap() >= 0.0);
        assert!(space.prob("B").unwrap() >= 0.0);
        assert!((space.prob("S").unwrap() - 1.0).abs() <= 1e-12);
        let additivity =
            (space.prob("AB").unwrap() - space.prob("A").unwrap() - space.prob("B").unwrap()).abs();
        assert!(additivity <= 1e-12);
    }

    println!(
        "criterion 8: PASS — P(A|B,C) = {given_both}, P(A|C) = {given_c}, independent(A,B) = {indep}; axioms held on 1000 random spaces"
    );
    assert_runtime(8, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn c09_posterior_odds_anchor() {
    let odds = posterior_odds(0.1, 100.0).unwrap();
    println!(
        "criterion 9: {} — posterior_odds(0.1, 100) = {odds}",
        if odds == 10.0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(odds, 10.0);
}

#[test]
fn c10_figure_commands_are_byte_deterministic() {
    use std::process::Command;
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_bayes-recipient"))
            .args(args)
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "{args:?} failed");
        out.stdout
    };
    for cmd in ["fig2", "fig3", "fig4"] {
        let first = run(&[cmd]);
        let second = run(&[cmd]);
        assert_eq!(first, second, "{cmd} output differs between runs");
    }
    let fig4 = String::from_utf8(run(&["fig4"])).unwrap();
    let corner: Vec<&str> = fig4.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((corner[0], corner[1]), ("0", "0"));
    let lr: f64 = corner[2].parse().unwrap();
    let ok = (lr - 2.0).abs() <= 1e-9;
    println!(
        "criterion 10: {} — fig2/fig3/fig4 byte-identical across runs; fig4 (0,0) = {lr}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}
