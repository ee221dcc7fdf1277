//! Recipient uncertainty about an expert's numeric log likelihood ratio.
//!
//! The recipient models the expert's reported log-LR under each hypothesis as
//! normal with unknown mean and precision, and carries a normal-gamma
//! distribution over those unknowns. Summaries of ground-truth-known
//! validation outcomes update the hyperparameters in closed form; the
//! marginal (posterior-predictive) law of the next report is a location-scale
//! Student-t. The ratio of the two predictive densities at the reported value
//! is the recipient's own likelihood ratio.

use crate::error::{Error, Result};
use crate::numerics::StudentT;

/// Normal-gamma hyperparameters for one hypothesis.
///
/// The parameterization is fixed as:
///
/// - `μ | τ ~ Normal(mean mu0, precision n_mu·τ)`
/// - `τ ~ Gamma(shape n_tau/2, rate n_tau/(2·tau0))`
///
/// so `mu0` is the prior guess for the mean log-LR, `tau0` a point value for
/// the precision, and `n_mu`, `n_tau` the observation-counts' worth of weight
/// behind each guess.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalGamma {
    mu0: f64,
    n_mu: f64,
    tau0: f64,
    n_tau: f64,
}

impl NormalGamma {
    pub fn new(mu0: f64, n_mu: f64, tau0: f64, n_tau: f64) -> Result<Self> {
        if !mu0.is_finite() {
            return Err(Error::Domain(format!("mu0 must be finite, got {mu0}")));
        }
        for (name, v) in [("n_mu", n_mu), ("tau0", tau0), ("n_tau", n_tau)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(Self {
            mu0,
            n_mu,
            tau0,
            n_tau,
        })
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn n_mu(&self) -> f64 {
        self.n_mu
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    pub fn n_tau(&self) -> f64 {
        self.n_tau
    }

    /// The quantity `n_tau / tau0`, the scaled sum of squares tracked by the
    /// precision update. It can only grow under conditioning.
    pub fn precision_weight(&self) -> f64 {
        self.n_tau / self.tau0
    }

    /// Condition on a validation summary.
    ///
    /// With `n` observations of sample mean `ȳ` and divisor-n variance `s²`:
    ///
    /// ```text
    /// mu0*         = (n_mu·mu0 + n·ȳ) / (n_mu + n)
    /// n_mu*        = n_mu + n
    /// n_tau*       = n_tau + n
    /// n_tau*/tau0* = n_tau/tau0 + n·s² + n_mu·n·(ȳ − mu0)²/(n_mu + n)
    /// ```
    ///
    /// An empty summary returns the prior unchanged.
    pub fn update(&self, data: &ValidationSummary) -> NormalGamma {
        if data.n == 0 {
            return *self;
        }
        let n = data.n as f64;
        let n_mu_post = self.n_mu + n;
        let mu_post = (self.n_mu * self.mu0 + n * data.mean) / n_mu_post;
        let n_tau_post = self.n_tau + n;
        let weight_post = self.n_tau / self.tau0
            + n * data.var
            + self.n_mu * n * (data.mean - self.mu0).powi(2) / n_mu_post;
        NormalGamma {
            mu0: mu_post,
            n_mu: n_mu_post,
            tau0: n_tau_post / weight_post,
            n_tau: n_tau_post,
        }
    }

    /// Marginal (posterior-predictive) distribution of the next reported
    /// log-LR: Student-t with `df = n_tau`, `loc = mu0`, and
    /// `scale² = (n_mu + 1)/(n_mu · tau0)`.
    pub fn predictive(&self) -> StudentT {
        let scale = ((self.n_mu + 1.0) / (self.n_mu * self.tau0)).sqrt();
        StudentT::new(self.n_tau, self.mu0, scale)
            .expect("valid hyperparameters yield a valid predictive")
    }
}

/// Sufficient statistics of a batch of validation log-LRs: count, sample
/// mean, and divisor-n sample variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationSummary {
    n: u64,
    mean: f64,
    var: f64,
}

impl ValidationSummary {
    /// Build a summary directly. `mean` and `var` are ignored when `n == 0`.
    ///
    /// No relation between `n` and `var` is enforced, so hypothetical
    /// summaries (say, one observation credited with a nonzero variance) are
    /// representable; [`ValidationSummary::from_samples`] always produces
    /// consistent ones.
    pub fn new(n: u64, mean: f64, var: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Domain(format!("mean must be finite, got {mean}")));
        }
        if !var.is_finite() || var < 0.0 {
            return Err(Error::Domain(format!(
                "var must be finite and >= 0, got {var}"
            )));
        }
        Ok(Self { n, mean, var })
    }

    /// The empty summary; conditioning on it is a no-op.
    pub fn empty() -> Self {
        Self {
            n: 0,
            mean: 0.0,
            var: 0.0,
        }
    }

    /// Summarize raw observations with a divisor-n variance, so that
    /// `n·var` is exactly the sum of squared deviations.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("samples must be finite".into()));
        }
        if samples.is_empty() {
            return Ok(Self::empty());
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        Ok(Self {
            n: samples.len() as u64,
            mean,
            var,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn var(&self) -> f64 {
        self.var
    }
}

/// Log of the recipient's likelihood ratio for an expert's reported log-LR
/// `x`: the log-density under the H₁ predictive minus the log-density under
/// the H₂ predictive.
pub fn log_lr_a(x: f64, h1: &StudentT, h2: &StudentT) -> f64 {
    h1.log_pdf(x) - h2.log_pdf(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h1_prior() -> NormalGamma {
        NormalGamma::new(5.0, 1.0, 0.01, 1.0).unwrap()
    }

    fn h2_prior() -> NormalGamma {
        NormalGamma::new(-5.0, 1.0, 0.01, 1.0).unwrap()
    }

    #[test]
    fn empty_update_is_identity() {
        let prior = h1_prior();
        assert_eq!(prior.update(&ValidationSummary::empty()), prior);
    }

    #[test]
    fn single_observation_update_by_hand() {
        // Prior (5, 1, 0.01, 1) with one observation of 8:
        // mu0* = 6.5, n_mu* = 2, n_tau* = 2,
        // n_tau*/tau0* = 100 + 0 + 1·1·9/2 = 104.5
        let post = h1_prior().update(&ValidationSummary::new(1, 8.0, 0.0).unwrap());
        assert_eq!(post.mu0(), 6.5);
        assert_eq!(post.n_mu(), 2.0);
        assert_eq!(post.n_tau(), 2.0);
        assert!((post.tau0() - 2.0 / 104.5).abs() < 1e-15);
        assert!((post.precision_weight() - 104.5).abs() < 1e-10);
    }

    #[test]
    fn predictive_closed_form() {
        let t = h1_prior().predictive();
        assert_eq!(t.df(), 1.0);
        assert_eq!(t.loc(), 5.0);
        assert!((t.scale() - 200f64.sqrt()).abs() < 1e-12);

        let t = h2_prior().predictive();
        assert_eq!(t.loc(), -5.0);
        assert!((t.scale() - 200f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn predictive_degenerate_limit_is_normal() {
        // n_mu, n_tau → ∞ with tau0 fixed: predictive → Normal(mu0, 1/tau0)
        let ng = NormalGamma::new(3.0, 1e6, 0.01, 1e6).unwrap();
        let t = ng.predictive();
        let sd = 10.0; // 1/√tau0
        for &x in &[3.0 - 2.0 * sd, 3.0 + 2.0 * sd] {
            let got = t.cdf(x).unwrap();
            let want = normal_cdf((x - 3.0) / sd);
            assert!((got - want).abs() < 1e-3, "x={x}: {got} vs {want}");
        }
    }

    // Abramowitz & Stegun 26.2.17, |error| < 7.5e-8.
    fn normal_cdf(z: f64) -> f64 {
        let x = z.abs();
        let k = 1.0 / (1.0 + 0.2316419 * x);
        let phi = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let poly = k
            * (0.319381530
                + k * (-0.356563782 + k * (1.781477937 + k * (-1.821255978 + k * 1.330274429))));
        let upper = 1.0 - phi * poly;
        if z >= 0.0 {
            upper
        } else {
            1.0 - upper
        }
    }

    #[test]
    fn lr_is_one_at_zero_and_two_at_fifteen() {
        let h1 = h1_prior().predictive();
        let h2 = h2_prior().predictive();
        assert_eq!(log_lr_a(0.0, &h1, &h2), 0.0);
        // Cauchy ratio (200 + 20²)/(200 + 10²) = 2
        assert!((log_lr_a(15.0, &h1, &h2) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn lr_peaks_at_fifteen_and_flattens() {
        let h1 = h1_prior().predictive();
        let h2 = h2_prior().predictive();
        let mut best_x = f64::NAN;
        let mut best = f64::NEG_INFINITY;
        for i in 0..=1600 {
            let x = -200.0 + 0.25 * i as f64;
            let v = log_lr_a(x, &h1, &h2);
            if v > best {
                best = v;
                best_x = x;
            }
        }
        assert_eq!(best_x, 15.0);
        assert!((best.exp() - 2.0).abs() < 1e-12);
        // Far out in either tail the ratio heads back toward 1
        assert!(log_lr_a(5e4, &h1, &h2).exp() - 1.0 < 1e-3);
        assert!(1.0 - log_lr_a(-5e4, &h1, &h2).exp() < 1e-3);
    }

    #[test]
    fn large_n_matches_normal_oracle() {
        // With 10⁴ validation results per hypothesis the predictives are
        // near Normal(8, 25) and Normal(−12.5, 25); at x = 8 the log-LR is
        // close to (8 + 12.5)²/(2·25) = 8.405.
        let s1 = ValidationSummary::new(10_000, 8.0, 25.0).unwrap();
        let s2 = ValidationSummary::new(10_000, -12.5, 25.0).unwrap();
        let h1 = h1_prior().update(&s1).predictive();
        let h2 = h2_prior().update(&s2).predictive();
        let got = log_lr_a(8.0, &h1, &h2);
        assert!((got - 8.405).abs() < 1.05f64.ln(), "got {got}");
    }

    fn summary_of(xs: &[f64]) -> ValidationSummary {
        ValidationSummary::from_samples(xs).unwrap()
    }

    #[test]
    fn two_point_sample_variance_uses_divisor_n() {
        let s = summary_of(&[3.0, 13.0]);
        assert_eq!(s.n(), 2);
        assert_eq!(s.mean(), 8.0);
        assert_eq!(s.var(), 25.0);
    }

    proptest! {
        #[test]
        fn batch_equals_sequential_on_any_split(
            data in proptest::collection::vec(-30.0f64..30.0, 2..40),
            split_frac in 0.0f64..1.0,
            mu0 in -10.0f64..10.0,
            n_mu in 0.1f64..20.0,
            tau0 in 0.001f64..10.0,
            n_tau in 0.1f64..20.0,
        ) {
            let prior = NormalGamma::new(mu0, n_mu, tau0, n_tau).unwrap();
            let k = 1 + ((data.len() - 2) as f64 * split_frac) as usize;
            let pooled = prior.update(&summary_of(&data));
            let seq = prior
                .update(&summary_of(&data[..k]))
                .update(&summary_of(&data[k..]));
            let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1e-30);
            prop_assert!(rel(pooled.mu0(), seq.mu0()) < 1e-10);
            prop_assert!(rel(pooled.n_mu(), seq.n_mu()) < 1e-10);
            prop_assert!(rel(pooled.tau0(), seq.tau0()) < 1e-10);
            prop_assert!(rel(pooled.n_tau(), seq.n_tau()) < 1e-10);
        }

        #[test]
        fn precision_weight_never_decreases(
            mu0 in -10.0f64..10.0,
            n_mu in 0.1f64..20.0,
            tau0 in 0.001f64..10.0,
            n_tau in 0.1f64..20.0,
            n in 0u64..50,
            mean in -30.0f64..30.0,
            var in 0.0f64..100.0,
        ) {
            let prior = NormalGamma::new(mu0, n_mu, tau0, n_tau).unwrap();
            let post = prior.update(&ValidationSummary::new(n, mean, var).unwrap());
            prop_assert!(post.precision_weight() >= prior.precision_weight() - 1e-9);
            if n == 0 {
                prop_assert_eq!(post.precision_weight(), prior.precision_weight());
            } else if var > 0.0 {
                prop_assert!(post.precision_weight() > prior.precision_weight());
            }
        }

        #[test]
        fn posterior_mean_between_prior_mean_and_data_mean(
            mu0 in -10.0f64..10.0,
            n_mu in 0.1f64..20.0,
            n in 1u64..100,
            mean in -30.0f64..30.0,
        ) {
            let prior = NormalGamma::new(mu0, n_mu, 1.0, 1.0).unwrap();
            let post = prior.update(&ValidationSummary::new(n, mean, 0.0).unwrap());
            let lo = mu0.min(mean) - 1e-12;
            let hi = mu0.max(mean) + 1e-12;
            prop_assert!(post.mu0() >= lo && post.mu0() <= hi);
        }

        #[test]
        fn mirror_symmetry_is_exact(x in -100.0f64..100.0) {
            let h1 = h1_prior().predictive();
            let h2 = h2_prior().predictive();
            let fwd = log_lr_a(x, &h1, &h2);
            let bwd = log_lr_a(-x, &h1, &h2);
            prop_assert_eq!(fwd, -bwd);
        }
    }
}
