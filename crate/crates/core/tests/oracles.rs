//! Monte Carlo cross-checks of the closed-form and quadrature paths.
//!
//! Every expectation the library computes analytically is re-derived here by
//! simulation with fixed seeds: the normal-gamma predictive against a
//! hierarchical sampler, and the order-constrained posterior means against
//! rejection sampling from independent beta posteriors.

use bayes_recipient::categorical::{posterior_means, CategoricalCounts};
use bayes_recipient::continuous::NormalGamma;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Beta, Distribution, Gamma, Normal};

/// Empirical KS distance between sorted samples and a CDF.
fn ks_distance<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

/// Draw from the normal-gamma hierarchy: τ ~ Gamma(n_tau/2, rate n_tau/(2·tau0)),
/// μ | τ ~ Normal(mu0, 1/(n_mu·τ)), y | μ, τ ~ Normal(μ, 1/τ).
fn sample_predictive(ng: &NormalGamma, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let shape = ng.n_tau() / 2.0;
    let scale = 2.0 * ng.tau0() / ng.n_tau(); // 1 / rate
    let gamma = Gamma::new(shape, scale).unwrap();
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let tau: f64 = gamma.sample(&mut rng);
        let mu = Normal::new(ng.mu0(), (ng.n_mu() * tau).recip().sqrt())
            .unwrap()
            .sample(&mut rng);
        let y = Normal::new(mu, tau.recip().sqrt())
            .unwrap()
            .sample(&mut rng);
        ys.push(y);
    }
    ys.sort_by(f64::total_cmp);
    ys
}

#[test]
fn predictive_matches_hierarchical_sampler() {
    let prior = NormalGamma::new(5.0, 1.0, 0.01, 1.0).unwrap();
    let t = prior.predictive();
    let samples = sample_predictive(&prior, 100_000, 0x5eed_cafe);
    let d = ks_distance(&samples, |x| t.cdf(x).unwrap());
    assert!(d < 0.02, "KS distance {d}");
}

#[test]
fn updated_predictive_matches_hierarchical_sampler() {
    let prior = NormalGamma::new(-5.0, 1.0, 0.01, 1.0).unwrap();
    let post = prior
        .update(&bayes_recipient::continuous::ValidationSummary::new(100, -12.5, 25.0).unwrap());
    let t = post.predictive();
    let samples = sample_predictive(&post, 100_000, 0xfeed_beef);
    let d = ks_distance(&samples, |x| t.cdf(x).unwrap());
    assert!(d < 0.02, "KS distance {d}");
}

/// Rejection-sample the order-constrained posterior: independent draws
/// p ~ Beta(k1+1, n1−k1+1), q ~ Beta(k2+1, n2−k2+1), kept when p > q.
/// Returns ((E_p, its σ), (E_q, its σ)).
fn mc_posterior_means(c: &CategoricalCounts, draws: usize, seed: u64) -> ((f64, f64), (f64, f64)) {
    let mut rng = StdRng::seed_from_u64(seed);
    let bp = Beta::new((c.k1() + 1) as f64, (c.n1() - c.k1() + 1) as f64).unwrap();
    let bq = Beta::new((c.k2() + 1) as f64, (c.n2() - c.k2() + 1) as f64).unwrap();
    let (mut n, mut sp, mut spp, mut sq, mut sqq) = (0u64, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..draws {
        let p: f64 = bp.sample(&mut rng);
        let q: f64 = bq.sample(&mut rng);
        if p > q {
            n += 1;
            sp += p;
            spp += p * p;
            sq += q;
            sqq += q * q;
        }
    }
    assert!(n > 1000, "rejection sampler kept only {n} of {draws} draws");
    let nf = n as f64;
    let mean_p = sp / nf;
    let mean_q = sq / nf;
    let sd_p = ((spp / nf - mean_p * mean_p) / nf).sqrt();
    let sd_q = ((sqq / nf - mean_q * mean_q) / nf).sqrt();
    ((mean_p, sd_p), (mean_q, sd_q))
}

#[test]
fn constrained_means_match_rejection_sampler_on_fixed_grid() {
    // Ten configurations spanning no data, one-sided data, agreeing data,
    // conflicting data, and large counts.
    let grid: [(u64, u64, u64, u64); 10] = [
        (0, 0, 0, 0),
        (1, 1, 0, 0),
        (0, 0, 0, 1),
        (3, 10, 2, 10),
        (9, 10, 1, 10),
        (5, 20, 5, 20),
        (5, 30, 10, 30),
        (19, 20, 1, 20),
        (95, 100, 5, 100),
        (950, 1000, 50, 1000),
    ];
    for (i, &(k1, n1, k2, n2)) in grid.iter().enumerate() {
        let counts = CategoricalCounts::new(k1, n1, k2, n2).unwrap();
        let (e_p, e_q) = posterior_means(&counts).unwrap();
        let ((mp, sp), (mq, sq)) = mc_posterior_means(&counts, 600_000, 41 + i as u64);
        assert!(
            (e_p - mp).abs() <= 3.0 * sp,
            "({k1},{n1},{k2},{n2}): E_p {e_p} vs MC {mp} ± {sp}"
        );
        assert!(
            (e_q - mq).abs() <= 3.0 * sq,
            "({k1},{n1},{k2},{n2}): E_q {e_q} vs MC {mq} ± {sq}"
        );
    }
}

#[test]
fn large_count_limit_matches_rejection_sampler() {
    let counts = CategoricalCounts::new(9500, 10_000, 500, 10_000).unwrap();
    let (e_p, e_q) = posterior_means(&counts).unwrap();
    let ((mp, sp), (mq, sq)) = mc_posterior_means(&counts, 1_000_000, 2024);
    assert!((e_p - mp).abs() <= 3.0 * sp, "E_p {e_p} vs MC {mp} ± {sp}");
    assert!((e_q - mq).abs() <= 3.0 * sq, "E_q {e_q} vs MC {mq} ± {sq}");
}
