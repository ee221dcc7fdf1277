//! The end-to-end recipient engine.
//!
//! A recipient hears an expert's report — a numeric log likelihood ratio or a
//! categorical conclusion — alongside whatever ground-truth-known validation
//! results the expert can produce. The engine summarizes the validation
//! records, computes the recipient's own likelihood ratio for the report, and
//! multiplies it into the recipient's prior odds. The hybrid shortcut
//! (multiplying one's own prior odds by the *expert's* likelihood ratio) is
//! provided for side-by-side contrast; it is not a Bayesian update for the
//! recipient.

use crate::categorical::{conclusion_lr, CategoricalCounts, ConclusionLabel};
use crate::continuous::{log_lr_a, NormalGamma, ValidationSummary};
use crate::error::{Error, Result};

/// Which hypothesis a validation test was run under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    H1,
    H2,
}

/// The outcome of one validation test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    /// The expert's method produced this log likelihood ratio.
    LogLr(f64),
    /// The expert's method produced this conclusion.
    Conclusion(ConclusionLabel),
}

/// One ground-truth-known validation result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationRecord {
    pub hypothesis: Hypothesis,
    pub outcome: Outcome,
}

/// What the expert communicated for the case at hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpertReport {
    /// A numeric likelihood ratio, carried as its natural log.
    NumericLogLr(f64),
    /// A categorical conclusion.
    Categorical(ConclusionLabel),
}

impl ExpertReport {
    pub fn numeric_log_lr(log_lr: f64) -> Result<Self> {
        if !log_lr.is_finite() {
            return Err(Error::Domain(format!(
                "a numeric report must be finite, got log-LR {log_lr}"
            )));
        }
        Ok(Self::NumericLogLr(log_lr))
    }

    /// A numeric report given on the linear scale; converted to log.
    pub fn numeric_linear_lr(lr: f64) -> Result<Self> {
        if !lr.is_finite() || lr <= 0.0 {
            return Err(Error::Domain(format!(
                "a linear-scale LR must be finite and > 0, got {lr}"
            )));
        }
        Self::numeric_log_lr(lr.ln())
    }
}

/// The recipient's normal-gamma priors for the expert's log-LR distribution
/// under each hypothesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousPriors {
    pub h1: NormalGamma,
    pub h2: NormalGamma,
}

/// A complete question for the engine: prior odds, the expert's report, and
/// — for numeric reports — the recipient's continuous priors. Categorical
/// reports carry their prior implicitly (uniform over the ordered pair of
/// reporting rates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecipientQuery {
    prior_odds: f64,
    report: ExpertReport,
    continuous_priors: Option<ContinuousPriors>,
}

impl RecipientQuery {
    pub fn new(
        prior_odds: f64,
        report: ExpertReport,
        continuous_priors: Option<ContinuousPriors>,
    ) -> Result<Self> {
        if !prior_odds.is_finite() || prior_odds <= 0.0 {
            return Err(Error::Domain(format!(
                "prior odds must be finite and > 0, got {prior_odds}"
            )));
        }
        if matches!(report, ExpertReport::NumericLogLr(_)) && continuous_priors.is_none() {
            return Err(Error::Domain(
                "a numeric report needs continuous priors for both hypotheses".into(),
            ));
        }
        Ok(Self {
            prior_odds,
            report,
            continuous_priors,
        })
    }

    pub fn prior_odds(&self) -> f64 {
        self.prior_odds
    }

    pub fn report(&self) -> &ExpertReport {
        &self.report
    }
}

/// Validation data reduced to sufficient statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidationData {
    /// No validation records were offered.
    Empty,
    /// Numeric outcomes, summarized per hypothesis.
    Numeric {
        h1: ValidationSummary,
        h2: ValidationSummary,
    },
    /// Categorical outcomes, tallied per hypothesis.
    Categorical(CategoricalCounts),
}

/// Reduce validation records to per-hypothesis sufficient statistics.
///
/// All records must share one outcome kind; mixing numeric and categorical
/// outcomes is a format error.
pub fn summarize_validation(records: &[ValidationRecord]) -> Result<ValidationData> {
    if records.is_empty() {
        return Ok(ValidationData::Empty);
    }

    let numeric = matches!(records[0].outcome, Outcome::LogLr(_));
    if numeric {
        let mut h1 = Vec::new();
        let mut h2 = Vec::new();
        for record in records {
            let Outcome::LogLr(value) = record.outcome else {
                return Err(Error::Format(
                    "validation records mix numeric and categorical outcomes".into(),
                ));
            };
            match record.hypothesis {
                Hypothesis::H1 => h1.push(value),
                Hypothesis::H2 => h2.push(value),
            }
        }
        Ok(ValidationData::Numeric {
            h1: ValidationSummary::from_samples(&h1)?,
            h2: ValidationSummary::from_samples(&h2)?,
        })
    } else {
        let (mut k1, mut n1, mut k2, mut n2) = (0u64, 0u64, 0u64, 0u64);
        for record in records {
            let Outcome::Conclusion(label) = record.outcome else {
                return Err(Error::Format(
                    "validation records mix numeric and categorical outcomes".into(),
                ));
            };
            let identified = u64::from(label == ConclusionLabel::Identified);
            match record.hypothesis {
                Hypothesis::H1 => {
                    n1 += 1;
                    k1 += identified;
                }
                Hypothesis::H2 => {
                    n2 += 1;
                    k2 += identified;
                }
            }
        }
        Ok(ValidationData::Categorical(CategoricalCounts::new(
            k1, n1, k2, n2,
        )?))
    }
}

/// The recipient's likelihood ratio for the query's report, given summarized
/// validation data. The data kind must match the report kind; empty data
/// matches either.
pub fn lr_a(query: &RecipientQuery, data: &ValidationData) -> Result<f64> {
    match (&query.report, data) {
        (ExpertReport::NumericLogLr(x), ValidationData::Empty)
        | (ExpertReport::NumericLogLr(x), ValidationData::Numeric { .. }) => {
            let priors = query
                .continuous_priors
                .as_ref()
                .expect("validated at construction");
            let (s1, s2) = match data {
                ValidationData::Numeric { h1, h2 } => (*h1, *h2),
                _ => (ValidationSummary::empty(), ValidationSummary::empty()),
            };
            let h1 = priors.h1.update(&s1).predictive();
            let h2 = priors.h2.update(&s2).predictive();
            Ok(log_lr_a(*x, &h1, &h2).exp())
        }
        (ExpertReport::Categorical(label), ValidationData::Empty) => {
            conclusion_lr(&CategoricalCounts::none(), *label)
        }
        (ExpertReport::Categorical(label), ValidationData::Categorical(counts)) => {
            conclusion_lr(counts, *label)
        }
        (ExpertReport::NumericLogLr(_), ValidationData::Categorical(_)) => Err(
            Error::KindMismatch("numeric report cannot use categorical validation data".into()),
        ),
        (ExpertReport::Categorical(_), ValidationData::Numeric { .. }) => Err(Error::KindMismatch(
            "categorical report cannot use numeric validation data".into(),
        )),
    }
}

/// Bayes' rule for the recipient: posterior odds are the product of the
/// recipient's prior odds and the recipient's own likelihood ratio.
pub fn posterior_odds(prior_odds: f64, lr: f64) -> Result<f64> {
    checked_odds_product(prior_odds, lr)
}

/// The hybrid shortcut: the recipient's prior odds multiplied by the
/// *expert's* likelihood ratio. Same arithmetic as [`posterior_odds`], kept
/// separate so callers can label the two computations side by side — this one
/// is not a Bayesian update for the recipient.
pub fn hybrid_posterior_odds(prior_odds_dm: f64, lr_expert: f64) -> Result<f64> {
    checked_odds_product(prior_odds_dm, lr_expert)
}

fn checked_odds_product(prior_odds: f64, lr: f64) -> Result<f64> {
    if !prior_odds.is_finite() || prior_odds <= 0.0 {
        return Err(Error::Domain(format!(
            "prior odds must be finite and > 0, got {prior_odds}"
        )));
    }
    if !lr.is_finite() || lr <= 0.0 {
        return Err(Error::Domain(format!(
            "a likelihood ratio must be finite and > 0, got {lr}"
        )));
    }
    Ok(prior_odds * lr)
}

/// Parse validation records from their file format: UTF-8 CSV with the
/// header `hypothesis,outcome`, one record per line, hypothesis in
/// `{H1, H2}`, outcome either a finite decimal log-LR or a label from
/// `{identified, not_identified}`. Unknown labels are errors; kind
/// homogeneity is enforced when the records are summarized.
pub fn parse_validation_records(text: &str) -> Result<Vec<ValidationRecord>> {
    let mut lines = text.lines();
    match lines.next().map(str::trim) {
        Some("hypothesis,outcome") => {}
        other => {
            return Err(Error::Format(format!(
                "expected header 'hypothesis,outcome', got {other:?}"
            )))
        }
    }

    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((hyp, outcome)) = line.split_once(',') else {
            return Err(Error::Format(format!(
                "line {line_no}: expected 'hypothesis,outcome', got {line:?}"
            )));
        };
        let hypothesis = match hyp.trim() {
            "H1" => Hypothesis::H1,
            "H2" => Hypothesis::H2,
            other => {
                return Err(Error::Format(format!(
                    "line {line_no}: hypothesis must be H1 or H2, got {other:?}"
                )))
            }
        };
        let outcome = match outcome.trim() {
            "identified" => Outcome::Conclusion(ConclusionLabel::Identified),
            "not_identified" => Outcome::Conclusion(ConclusionLabel::NotIdentified),
            number => match number.parse::<f64>() {
                Ok(v) if v.is_finite() => Outcome::LogLr(v),
                _ => {
                    return Err(Error::Format(format!(
                        "line {line_no}: outcome must be a finite number, 'identified', or 'not_identified', got {number:?}"
                    )))
                }
            },
        };
        records.push(ValidationRecord {
            hypothesis,
            outcome,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skeptical_priors() -> ContinuousPriors {
        ContinuousPriors {
            h1: NormalGamma::new(5.0, 1.0, 0.01, 1.0).unwrap(),
            h2: NormalGamma::new(-5.0, 1.0, 0.01, 1.0).unwrap(),
        }
    }

    fn numeric_query(log_lr: f64) -> RecipientQuery {
        RecipientQuery::new(
            1.0,
            ExpertReport::numeric_log_lr(log_lr).unwrap(),
            Some(skeptical_priors()),
        )
        .unwrap()
    }

    #[test]
    fn summarize_empty() {
        assert_eq!(summarize_validation(&[]).unwrap(), ValidationData::Empty);
    }

    #[test]
    fn summarize_single_numeric_record() {
        let records = [ValidationRecord {
            hypothesis: Hypothesis::H1,
            outcome: Outcome::LogLr(8.0),
        }];
        let ValidationData::Numeric { h1, h2 } = summarize_validation(&records).unwrap() else {
            panic!("expected numeric data");
        };
        assert_eq!((h1.n(), h1.mean(), h1.var()), (1, 8.0, 0.0));
        assert_eq!(h2.n(), 0);
    }

    #[test]
    fn summarize_uses_divisor_n_variance() {
        let records = [
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(3.0),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(13.0),
            },
        ];
        let ValidationData::Numeric { h1, .. } = summarize_validation(&records).unwrap() else {
            panic!("expected numeric data");
        };
        assert_eq!((h1.n(), h1.mean(), h1.var()), (2, 8.0, 25.0));
    }

    #[test]
    fn summarize_counts_identified_per_hypothesis() {
        let records = [
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::Conclusion(ConclusionLabel::Identified),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::Conclusion(ConclusionLabel::NotIdentified),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H2,
                outcome: Outcome::Conclusion(ConclusionLabel::Identified),
            },
        ];
        let ValidationData::Categorical(counts) = summarize_validation(&records).unwrap() else {
            panic!("expected categorical data");
        };
        assert_eq!(
            (counts.k1(), counts.n1(), counts.k2(), counts.n2()),
            (1, 2, 1, 1)
        );
    }

    #[test]
    fn summarize_rejects_mixed_outcomes() {
        let records = [
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(3.0),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H2,
                outcome: Outcome::Conclusion(ConclusionLabel::Identified),
            },
        ];
        assert!(matches!(
            summarize_validation(&records),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn lr_a_symmetric_report_is_neutral() {
        let lr = lr_a(&numeric_query(0.0), &ValidationData::Empty).unwrap();
        assert_eq!(lr, 1.0);
    }

    #[test]
    fn lr_a_at_fifteen_is_two() {
        let lr = lr_a(&numeric_query(15.0), &ValidationData::Empty).unwrap();
        assert!((lr - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lr_a_categorical_no_data_is_two() {
        let query = RecipientQuery::new(
            1.0,
            ExpertReport::Categorical(ConclusionLabel::Identified),
            None,
        )
        .unwrap();
        let lr = lr_a(&query, &ValidationData::Empty).unwrap();
        assert!((lr - 2.0).abs() < 1e-9);
    }

    #[test]
    fn lr_a_categorical_uses_summarized_counts() {
        let records: Vec<ValidationRecord> = [
            (Hypothesis::H1, ConclusionLabel::Identified),
            (Hypothesis::H2, ConclusionLabel::NotIdentified),
            (Hypothesis::H1, ConclusionLabel::Identified),
        ]
        .into_iter()
        .map(|(hypothesis, label)| ValidationRecord {
            hypothesis,
            outcome: Outcome::Conclusion(label),
        })
        .collect();
        let data = summarize_validation(&records).unwrap();
        let query = RecipientQuery::new(
            1.0,
            ExpertReport::Categorical(ConclusionLabel::Identified),
            None,
        )
        .unwrap();
        let via_engine = lr_a(&query, &data).unwrap();
        let direct = crate::categorical::conclusion_lr(
            &CategoricalCounts::new(2, 2, 0, 1).unwrap(),
            ConclusionLabel::Identified,
        )
        .unwrap();
        assert_eq!(via_engine, direct);
        assert!(
            via_engine > 2.0,
            "supportive counts strengthen the conclusion"
        );
    }

    #[test]
    fn lr_a_rejects_kind_mismatch() {
        let data = ValidationData::Categorical(CategoricalCounts::none());
        assert!(matches!(
            lr_a(&numeric_query(1.0), &data),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn lr_a_depends_only_on_sufficient_statistics() {
        let mut records = vec![
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(6.5),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H2,
                outcome: Outcome::LogLr(-9.0),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(11.0),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(7.25),
            },
        ];
        let query = numeric_query(4.0);
        let forward = lr_a(&query, &summarize_validation(&records).unwrap()).unwrap();
        records.reverse();
        let reversed = lr_a(&query, &summarize_validation(&records).unwrap()).unwrap();
        assert!((forward - reversed).abs() <= 1e-12 * forward);
    }

    #[test]
    fn posterior_odds_product() {
        assert_eq!(posterior_odds(0.1, 100.0).unwrap(), 10.0);
        assert_eq!(posterior_odds(0.7, 1.0).unwrap(), 0.7);
        assert_eq!(posterior_odds(1.0, 2.0).unwrap(), 2.0);
        assert!(posterior_odds(0.0, 2.0).is_err());
        assert!(posterior_odds(1.0, -2.0).is_err());
        assert!(posterior_odds(f64::INFINITY, 2.0).is_err());
    }

    #[test]
    fn bayes_coherence_ratio_identity() {
        for &(p, l) in &[(0.1, 100.0), (2.5, 0.004), (7.0, 7.0)] {
            let post = posterior_odds(p, l).unwrap();
            assert_eq!(post / p, l);
        }
    }

    #[test]
    fn hybrid_contrast_with_recipient() {
        // An expert reporting log-LR 15 moves the hybrid computation by e^15
        // but the skeptical recipient only by 2.
        let query = numeric_query(15.0);
        let recipient = posterior_odds(
            query.prior_odds(),
            lr_a(&query, &ValidationData::Empty).unwrap(),
        )
        .unwrap();
        let hybrid = hybrid_posterior_odds(query.prior_odds(), 15f64.exp()).unwrap();
        assert!((recipient - 2.0).abs() < 1e-12);
        assert!((hybrid - 15f64.exp()).abs() < 1e-9 * hybrid);
        assert_eq!(hybrid_posterior_odds(0.1, 100.0).unwrap(), 10.0);
        assert_eq!(hybrid_posterior_odds(1.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn mirror_numeric_reports_cancel() {
        // With no data and mirror-symmetric priors, lr(x)·lr(−x) = 1.
        for &x in &[0.5, 3.0, 12.0, 40.0] {
            let fwd = lr_a(&numeric_query(x), &ValidationData::Empty).unwrap();
            let bwd = lr_a(&numeric_query(-x), &ValidationData::Empty).unwrap();
            assert!((fwd * bwd - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn duplicated_dataset_equals_pooled_update() {
        let base = [
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(6.0),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H1,
                outcome: Outcome::LogLr(10.0),
            },
            ValidationRecord {
                hypothesis: Hypothesis::H2,
                outcome: Outcome::LogLr(-4.0),
            },
        ];
        let doubled: Vec<ValidationRecord> = base.iter().chain(base.iter()).copied().collect();
        let query = numeric_query(8.0);
        let via_doubled = lr_a(&query, &summarize_validation(&doubled).unwrap()).unwrap();

        // Pooled statistics of the doubled data equal those of the base data
        // with doubled counts; the engine must agree through either path.
        let ValidationData::Numeric { h1, h2 } = summarize_validation(&base).unwrap() else {
            panic!()
        };
        let pooled = ValidationData::Numeric {
            h1: ValidationSummary::new(2 * h1.n(), h1.mean(), h1.var()).unwrap(),
            h2: ValidationSummary::new(2 * h2.n(), h2.mean(), h2.var()).unwrap(),
        };
        let via_pooled = lr_a(&query, &pooled).unwrap();
        assert!((via_doubled - via_pooled).abs() <= 1e-12 * via_doubled);
    }

    #[test]
    fn query_requires_priors_for_numeric_reports() {
        assert!(
            RecipientQuery::new(1.0, ExpertReport::numeric_log_lr(3.0).unwrap(), None).is_err()
        );
        assert!(RecipientQuery::new(
            -1.0,
            ExpertReport::Categorical(ConclusionLabel::Identified),
            None
        )
        .is_err());
        assert!(ExpertReport::numeric_log_lr(f64::NAN).is_err());
        assert!(ExpertReport::numeric_linear_lr(0.0).is_err());
        assert!(
            (match ExpertReport::numeric_linear_lr(100.0).unwrap() {
                ExpertReport::NumericLogLr(x) => x,
                _ => panic!(),
            } - 100f64.ln())
            .abs()
                < 1e-15
        );
    }

    #[test]
    fn parses_well_formed_files() {
        let text = "hypothesis,outcome\nH1,3.5\nH2,-2.25\n\nH1,0\n";
        let records = parse_validation_records(text).unwrap();
        assert_eq!(records.len(), 3);
        assert_eq!(records[1].hypothesis, Hypothesis::H2);
        assert_eq!(records[1].outcome, Outcome::LogLr(-2.25));

        let text = "hypothesis,outcome\nH1,identified\nH2,not_identified\n";
        let records = parse_validation_records(text).unwrap();
        assert_eq!(
            records[1].outcome,
            Outcome::Conclusion(ConclusionLabel::NotIdentified)
        );
    }

    #[test]
    fn parse_is_strict() {
        assert!(parse_validation_records("").is_err());
        assert!(parse_validation_records("hyp,out\nH1,1\n").is_err());
        assert!(parse_validation_records("hypothesis,outcome\nH3,1\n").is_err());
        assert!(parse_validation_records("hypothesis,outcome\nH1,maybe\n").is_err());
        assert!(parse_validation_records("hypothesis,outcome\nH1,inf\n").is_err());
        assert!(parse_validation_records("hypothesis,outcome\nH1\n").is_err());
        // Mixed kinds parse record by record but fail to summarize.
        let mixed =
            parse_validation_records("hypothesis,outcome\nH1,1.5\nH2,identified\n").unwrap();
        assert!(summarize_validation(&mixed).is_err());
    }
}
