//! Finite probability spaces with named events.
//!
//! Small enough to do everything by enumeration: event probabilities,
//! conditioning, and (conditional) independence checks, either in `f64` or in
//! exact rational arithmetic. The classic two-coin space shows why pairwise
//! independence does not survive conditioning: with A = "first toss heads",
//! B = "second toss heads", and C = "both tosses equal", A and B are
//! independent, yet P(A | B, C) = 1 while P(A | C) = 1/2.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Div, Mul, Sub};

/// Scalar type a [`FiniteSpace`] can carry probabilities in.
pub trait Probability:
    Clone
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_ratio(num: u64, den: u64) -> Self;

    /// Equality up to the scalar's tolerance: exact for rationals, within
    /// 1e-12 for floats.
    fn close_to(&self, other: &Self) -> bool;
}

impl Probability for f64 {
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn close_to(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-12
    }
}

impl Probability for BigRational {
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }
}

/// A finite outcome set with a probability assignment and named events.
#[derive(Debug, Clone)]
pub struct FiniteSpace<P> {
    outcomes: Vec<(String, P)>,
    index: BTreeMap<String, usize>,
    events: BTreeMap<String, BTreeSet<usize>>,
}

impl<P: Probability> FiniteSpace<P> {
    /// Build a space from `(label, probability)` pairs. Probabilities must be
    /// nonnegative and sum to one (exactly for rationals, within 1e-12 for
    /// floats).
    pub fn new<L: Into<String>>(outcomes: Vec<(L, P)>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::Domain(
                "a finite space needs at least one outcome".into(),
            ));
        }
        let outcomes: Vec<(String, P)> = outcomes
            .into_iter()
            .map(|(label, p)| (label.into(), p))
            .collect();
        let mut index = BTreeMap::new();
        let mut total = P::zero();
        for (i, (label, p)) in outcomes.iter().enumerate() {
            if *p < P::zero() {
                return Err(Error::Domain(format!(
                    "outcome {label:?} has a negative probability"
                )));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::Domain(format!("duplicate outcome label {label:?}")));
            }
            total = total + p.clone();
        }
        if !total.close_to(&P::one()) {
            return Err(Error::Domain("outcome probabilities must sum to 1".into()));
        }
        Ok(Self {
            outcomes,
            index,
            events: BTreeMap::new(),
        })
    }

    /// Name a subset of outcome labels as an event.
    pub fn define_event(&mut self, name: &str, members: &[&str]) -> Result<()> {
        if self.events.contains_key(name) {
            return Err(Error::Domain(format!("event {name:?} is already defined")));
        }
        let mut set = BTreeSet::new();
        for label in members {
            let idx = self.index.get(*label).ok_or_else(|| {
                Error::Domain(format!(
                    "event {name:?} references unknown outcome {label:?}"
                ))
            })?;
            set.insert(*idx);
        }
        self.events.insert(name.to_string(), set);
        Ok(())
    }

    fn event(&self, name: &str) -> Result<&BTreeSet<usize>> {
        self.events
            .get(name)
            .ok_or_else(|| Error::Domain(format!("unknown event {name:?}")))
    }

    fn mass(&self, set: &BTreeSet<usize>) -> P {
        set.iter()
            .fold(P::zero(), |acc, &i| acc + self.outcomes[i].1.clone())
    }

    fn intersect_all(&self, names: &[&str]) -> Result<BTreeSet<usize>> {
        let mut iter = names.iter();
        let mut acc = match iter.next() {
            Some(first) => self.event(first)?.clone(),
            None => (0..self.outcomes.len()).collect(),
        };
        for name in iter {
            let set = self.event(name)?;
            acc = acc.intersection(set).copied().collect();
        }
        Ok(acc)
    }

    /// P(event).
    pub fn prob(&self, event: &str) -> Result<P> {
        Ok(self.mass(self.event(event)?))
    }

    /// P(a | ⋂ given). Conditioning on an event of probability zero is a
    /// domain error.
    pub fn cond_prob(&self, a: &str, given: &[&str]) -> Result<P> {
        let cond = self.intersect_all(given)?;
        let denom = self.mass(&cond);
        if denom <= P::zero() {
            return Err(Error::Domain(format!(
                "conditioning event {given:?} has probability zero"
            )));
        }
        let joint: BTreeSet<usize> = self.event(a)?.intersection(&cond).copied().collect();
        Ok(self.mass(&joint) / denom)
    }

    /// Whether P(a ∩ b) equals P(a)·P(b), to the scalar's tolerance.
    pub fn independent(&self, a: &str, b: &str) -> Result<bool> {
        let joint: BTreeSet<usize> = self
            .event(a)?
            .intersection(self.event(b)?)
            .copied()
            .collect();
        let product = self.prob(a)? * self.prob(b)?;
        Ok(self.mass(&joint).close_to(&product))
    }

    /// Whether P(a ∩ b | given) equals P(a | given)·P(b | given).
    pub fn cond_independent(&self, a: &str, b: &str, given: &[&str]) -> Result<bool> {
        let cond = self.intersect_all(given)?;
        let denom = self.mass(&cond);
        if denom <= P::zero() {
            return Err(Error::Domain(format!(
                "conditioning event {given:?} has probability zero"
            )));
        }
        let restricted = |name: &str| -> Result<P> {
            let joint: BTreeSet<usize> = self.event(name)?.intersection(&cond).copied().collect();
            Ok(self.mass(&joint) / denom.clone())
        };
        let ab: BTreeSet<usize> = self
            .event(a)?
            .intersection(self.event(b)?)
            .copied()
            .collect();
        let ab_in_cond: BTreeSet<usize> = ab.intersection(&cond).copied().collect();
        let joint_given = self.mass(&ab_in_cond) / denom.clone();
        Ok(joint_given.close_to(&(restricted(a)? * restricted(b)?)))
    }

    /// Labels of all outcomes, in construction order.
    pub fn outcome_labels(&self) -> impl Iterator<Item = &str> {
        self.outcomes.iter().map(|(label, _)| label.as_str())
    }
}

/// Two independent fair coin tosses with the events A = "first toss heads",
/// B = "second toss heads", and C = "both tosses equal" predefined.
pub fn two_coin_space<P: Probability>() -> FiniteSpace<P> {
    let quarter = || P::from_ratio(1, 4);
    let mut space = FiniteSpace::new(vec![
        ("HH", quarter()),
        ("HT", quarter()),
        ("TH", quarter()),
        ("TT", quarter()),
    ])
    .expect("four quarters sum to one");
    space
        .define_event("A", &["HH", "HT"])
        .expect("labels exist");
    space
        .define_event("B", &["HH", "TH"])
        .expect("labels exist");
    space
        .define_event("C", &["HH", "TT"])
        .expect("labels exist");
    space
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(num: u64, den: u64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn two_coin_counterexample_exact() {
        let space = two_coin_space::<BigRational>();
        // Pairwise independent ...
        assert!(space.independent("A", "B").unwrap());
        // ... but conditioning on C couples them completely.
        assert_eq!(
            space.cond_prob("A", &["B", "C"]).unwrap(),
            BigRational::one()
        );
        assert_eq!(space.cond_prob("A", &["C"]).unwrap(), rational(1, 2));
        assert!(!space.cond_independent("A", "B", &["C"]).unwrap());
    }

    #[test]
    fn two_coin_counterexample_float() {
        let space = two_coin_space::<f64>();
        assert!(space.independent("A", "B").unwrap());
        assert_eq!(space.cond_prob("A", &["B", "C"]).unwrap(), 1.0);
        assert_eq!(space.cond_prob("A", &["C"]).unwrap(), 0.5);
    }

    #[test]
    fn sure_event_and_additivity() {
        let mut space = FiniteSpace::<BigRational>::new(vec![
            ("a", rational(1, 6)),
            ("b", rational(1, 3)),
            ("c", rational(1, 2)),
        ])
        .unwrap();
        space.define_event("S", &["a", "b", "c"]).unwrap();
        space.define_event("ab", &["a", "b"]).unwrap();
        space.define_event("just_a", &["a"]).unwrap();
        space.define_event("just_b", &["b"]).unwrap();
        assert_eq!(space.prob("S").unwrap(), BigRational::one());
        let sum = space.prob("just_a").unwrap() + space.prob("just_b").unwrap();
        assert_eq!(space.prob("ab").unwrap(), sum);
    }

    #[test]
    fn empty_event_has_zero_probability() {
        let mut space = two_coin_space::<f64>();
        space.define_event("never", &[]).unwrap();
        assert_eq!(space.prob("never").unwrap(), 0.0);
        assert!(space.cond_prob("A", &["never"]).is_err());
    }

    #[test]
    fn conditioning_on_nothing_is_unconditional() {
        let space = two_coin_space::<f64>();
        assert_eq!(space.cond_prob("A", &[]).unwrap(), space.prob("A").unwrap());
    }

    #[test]
    fn rejects_bad_spaces() {
        assert!(FiniteSpace::<f64>::new(Vec::<(&str, f64)>::new()).is_err());
        assert!(FiniteSpace::new(vec![("a", 0.5), ("b", 0.6)]).is_err());
        assert!(FiniteSpace::new(vec![("a", -0.5), ("b", 1.5)]).is_err());
        assert!(FiniteSpace::new(vec![("a", 0.5), ("a", 0.5)]).is_err());
    }

    #[test]
    fn rejects_unknown_names() {
        let mut space = two_coin_space::<f64>();
        assert!(space.prob("nope").is_err());
        assert!(space.define_event("bad", &["HH", "XX"]).is_err());
        assert!(space.define_event("A", &["HH"]).is_err());
    }

    proptest::proptest! {
        // Nonnegativity, unit mass on the sure event, and additivity over
        // disjoint events, on arbitrary spaces.
        #[test]
        fn probability_axioms_hold(
            weights in proptest::collection::vec(0.01f64..1.0, 1..8),
            assignment in proptest::collection::vec(0u8..3, 8),
        ) {
            let total: f64 = weights.iter().sum();
            let labels: Vec<String> = (0..weights.len()).map(|i| format!("o{i}")).collect();
            let outcomes: Vec<(String, f64)> = labels
                .iter()
                .cloned()
                .zip(weights.iter().map(|w| w / total))
                .collect();
            let mut space = FiniteSpace::new(outcomes).unwrap();

            let all: Vec<&str> = labels.iter().map(String::as_str).collect();
            let first: Vec<&str> = all
                .iter()
                .zip(&assignment)
                .filter(|(_, a)| **a == 0)
                .map(|(l, _)| *l)
                .collect();
            let second: Vec<&str> = all
                .iter()
                .zip(&assignment)
                .filter(|(_, a)| **a == 1)
                .map(|(l, _)| *l)
                .collect();
            let union: Vec<&str> = first.iter().chain(second.iter()).copied().collect();
            space.define_event("sure", &all).unwrap();
            space.define_event("first", &first).unwrap();
            space.define_event("second", &second).unwrap();
            space.define_event("union", &union).unwrap();

            proptest::prop_assert!(space.prob("first").unwrap() >= 0.0);
            proptest::prop_assert!((space.prob("sure").unwrap() - 1.0).abs() <= 1e-12);
            let gap = space.prob("union").unwrap()
                - space.prob("first").unwrap()
                - space.prob("second").unwrap();
            proptest::prop_assert!(gap.abs() <= 1e-12);
        }
    }
}
