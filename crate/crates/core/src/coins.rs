//! Three coin-flip predictors with identical data and different priors.
//!
//! Given a run of flips from some tossing device, what is the probability the
//! next flip lands heads? A believer in a fair device says 1/2 no matter
//! what. An observer with a uniform prior on the heads rate reports the
//! beta-binomial posterior mean. A third, worried the device drifts, models
//! each flip as depending on the previous one and mixes over the unknown flip
//! that preceded the record. All three apply Bayes' rule correctly; they
//! differ only in their priors. Exact rational arithmetic is available for
//! all of them.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A single flip outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flip {
    Heads,
    Tails,
}

/// An ordered record of coin flips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinSequence {
    flips: Vec<Flip>,
}

impl CoinSequence {
    pub fn new(flips: Vec<Flip>) -> Self {
        Self { flips }
    }

    /// Parse a string of `H`/`T` characters.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'H' => Ok(Flip::Heads),
                'T' => Ok(Flip::Tails),
                other => Err(Error::Format(format!(
                    "coin sequences use only 'H' and 'T', found {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn flips(&self) -> &[Flip] {
        &self.flips
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    fn heads(&self) -> u64 {
        self.flips.iter().filter(|f| **f == Flip::Heads).count() as u64
    }
}

/// How the drifting-coin model weights the two possibilities for the
/// unobserved flip before the record started.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovWeighting {
    /// Both possibilities weighted 1/2.
    Equal,
    /// Weighted by each branch's marginal likelihood of the record.
    Posterior,
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The fair-coin believer: 1/2 regardless of the record.
pub fn coin_fair(_seq: &CoinSequence) -> f64 {
    0.5
}

/// Exact form of [`coin_fair`].
pub fn coin_fair_exact(_seq: &CoinSequence) -> BigRational {
    ratio(1, 2)
}

/// Beta-binomial posterior mean of the heads rate:
/// `(alpha0 + #heads) / (alpha0 + beta0 + #flips)`.
pub fn coin_beta(seq: &CoinSequence, alpha0: f64, beta0: f64) -> Result<f64> {
    for (name, v) in [("alpha0", alpha0), ("beta0", beta0)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!(
                "{name} must be finite and > 0, got {v}"
            )));
        }
    }
    Ok((alpha0 + seq.heads() as f64) / (alpha0 + beta0 + seq.len() as f64))
}

/// Exact form of [`coin_beta`] for integer prior pseudo-counts.
pub fn coin_beta_exact(seq: &CoinSequence, alpha0: u64, beta0: u64) -> Result<BigRational> {
    if alpha0 == 0 || beta0 == 0 {
        return Err(Error::Domain("alpha0 and beta0 must be positive".into()));
    }
    Ok(ratio(
        alpha0 + seq.heads(),
        alpha0 + beta0 + seq.len() as u64,
    ))
}

/// The drifting-coin model: next-flip-heads probability under a first-order
/// chain with uniform priors on both transition probabilities.
///
/// Transition counts condition on the unknown flip `Y₀` before the record;
/// each branch yields conjugate beta posteriors for
/// `p = Pr(heads | previous heads)` and `q = Pr(heads | previous tails)`, and
/// the prediction is the mixture posterior mean of whichever parameter the
/// final observed flip selects. Requires a nonempty record.
pub fn coin_markov(seq: &CoinSequence, weighting: MarkovWeighting) -> Result<f64> {
    Ok(coin_markov_exact(seq, weighting)?
        .to_f64()
        .expect("probability fits in f64"))
}

/// Exact form of [`coin_markov`].
pub fn coin_markov_exact(seq: &CoinSequence, weighting: MarkovWeighting) -> Result<BigRational> {
    if seq.is_empty() {
        return Err(Error::Domain(
            "the drifting-coin model conditions on the last flip; the sequence must be nonempty"
                .into(),
        ));
    }
    let last = *seq.flips().last().expect("nonempty");

    let mut weighted_mean = BigRational::zero();
    let mut total_weight = BigRational::zero();
    for y0 in [Flip::Heads, Flip::Tails] {
        let branch = BranchCounts::tally(y0, seq.flips());
        let weight = match weighting {
            MarkovWeighting::Equal => ratio(1, 2),
            MarkovWeighting::Posterior => branch.marginal_likelihood(),
        };
        weighted_mean += &weight * branch.predictive_mean(last);
        total_weight += weight;
    }
    Ok(weighted_mean / total_weight)
}

/// Transition tallies for one assumption about the pre-record flip.
struct BranchCounts {
    hh: u64,
    ht: u64,
    th: u64,
    tt: u64,
}

impl BranchCounts {
    fn tally(y0: Flip, flips: &[Flip]) -> Self {
        let mut counts = Self {
            hh: 0,
            ht: 0,
            th: 0,
            tt: 0,
        };
        let mut prev = y0;
        for &flip in flips {
            match (prev, flip) {
                (Flip::Heads, Flip::Heads) => counts.hh += 1,
                (Flip::Heads, Flip::Tails) => counts.ht += 1,
                (Flip::Tails, Flip::Heads) => counts.th += 1,
                (Flip::Tails, Flip::Tails) => counts.tt += 1,
            }
            prev = flip;
        }
        counts
    }

    /// Posterior mean of `p` (last flip heads) or `q` (last flip tails)
    /// under uniform Beta(1, 1) priors.
    fn predictive_mean(&self, last: Flip) -> BigRational {
        match last {
            Flip::Heads => ratio(1 + self.hh, 2 + self.hh + self.ht),
            Flip::Tails => ratio(1 + self.th, 2 + self.th + self.tt),
        }
    }

    /// Marginal likelihood of the record under this branch:
    /// `B(1+hh, 1+ht) · B(1+th, 1+tt)` with the uniform-prior normalizers
    /// B(1,1) = 1.
    fn marginal_likelihood(&self) -> BigRational {
        beta_fn(1 + self.hh, 1 + self.ht) * beta_fn(1 + self.th, 1 + self.tt)
    }
}

/// Exact beta function for positive integers: B(a, b) = (a−1)!(b−1)!/(a+b−1)!
fn beta_fn(a: u64, b: u64) -> BigRational {
    BigRational::new(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> CoinSequence {
        CoinSequence::parse(s).unwrap()
    }

    #[test]
    fn fair_ignores_the_data() {
        assert_eq!(coin_fair(&seq("HHHHHTTT")), 0.5);
        assert_eq!(coin_fair(&seq("")), 0.5);
        assert_eq!(coin_fair(&seq("HHHH")), 0.5);
        assert_eq!(coin_fair_exact(&seq("TTTT")), ratio(1, 2));
    }

    #[test]
    fn beta_posterior_means() {
        assert!((coin_beta(&seq("HHHHHTTT"), 1.0, 1.0).unwrap() - 0.6).abs() < 1e-12);
        assert_eq!(coin_beta(&seq(""), 1.0, 1.0).unwrap(), 0.5);
        assert!((coin_beta(&seq("HHHH"), 1.0, 1.0).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(
            coin_beta_exact(&seq("HHHHHTTT"), 1, 1).unwrap(),
            ratio(6, 10)
        );
    }

    #[test]
    fn markov_equal_weighting_matches_hand_mixture() {
        // Branch Y₀=H: p ~ Beta(6,2), q ~ Beta(1,3); branch Y₀=T:
        // p ~ Beta(5,2), q ~ Beta(2,3). Last flip tails, so the answer is
        // the mixed E[q] = (1/4 + 2/5)/2 = 13/40 = 0.325.
        let p = coin_markov(&seq("HHHHHTTT"), MarkovWeighting::Equal).unwrap();
        assert!((p - 0.325).abs() < 1e-12);
        assert_eq!(
            coin_markov_exact(&seq("HHHHHTTT"), MarkovWeighting::Equal).unwrap(),
            ratio(13, 40)
        );
    }

    #[test]
    fn markov_posterior_weighting_reweights_branches() {
        // Branch weights B(6,2)B(1,3) : B(5,2)B(2,3) = 20 : 7, giving
        // E[q] = (20/27)(1/4) + (7/27)(2/5) = 13/45.
        let exact = coin_markov_exact(&seq("HHHHHTTT"), MarkovWeighting::Posterior).unwrap();
        assert_eq!(exact, ratio(13, 45));
        let p = coin_markov(&seq("HHHHHTTT"), MarkovWeighting::Posterior).unwrap();
        assert!((p - 13.0 / 45.0).abs() < 1e-12);
    }

    #[test]
    fn markov_single_head() {
        // Branches give E[p] = 2/3 and 1/2; equal mixture is 7/12.
        assert_eq!(
            coin_markov_exact(&seq("H"), MarkovWeighting::Equal).unwrap(),
            ratio(7, 12)
        );
    }

    #[test]
    fn markov_rejects_empty_sequence() {
        assert!(coin_markov(&seq(""), MarkovWeighting::Equal).is_err());
    }

    #[test]
    fn parse_rejects_other_symbols() {
        assert!(CoinSequence::parse("HHx").is_err());
        assert!(CoinSequence::parse("ht").is_err());
    }

    proptest! {
        #[test]
        fn beta_mirror_sequences_sum_to_one(
            flips in proptest::collection::vec(prop_oneof![Just(Flip::Heads), Just(Flip::Tails)], 0..40),
            a0 in 1u64..5,
        ) {
            let seq = CoinSequence::new(flips.clone());
            let mirrored = CoinSequence::new(
                flips
                    .iter()
                    .map(|f| match f {
                        Flip::Heads => Flip::Tails,
                        Flip::Tails => Flip::Heads,
                    })
                    .collect(),
            );
            let total = coin_beta_exact(&seq, a0, a0).unwrap()
                + coin_beta_exact(&mirrored, a0, a0).unwrap();
            prop_assert_eq!(total, BigRational::one());
        }

        #[test]
        fn markov_prediction_is_a_probability(
            flips in proptest::collection::vec(prop_oneof![Just(Flip::Heads), Just(Flip::Tails)], 1..40),
            posterior in proptest::bool::ANY,
        ) {
            let weighting = if posterior { MarkovWeighting::Posterior } else { MarkovWeighting::Equal };
            let p = coin_markov(&CoinSequence::new(flips), weighting).unwrap();
            prop_assert!(p > 0.0 && p < 1.0);
        }
    }
}
