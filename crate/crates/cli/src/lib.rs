//! Command implementations behind the `bayes-recipient` binary.
//!
//! Each command builds its complete output in memory and returns it as a
//! string, so the binary never emits a partial table and tests can call the
//! commands directly. All output is deterministic: identical inputs produce
//! byte-identical bytes.

use bayes_recipient::categorical::{figure4_grid, ConclusionLabel};
use bayes_recipient::coins::{
    coin_beta, coin_beta_exact, coin_fair, coin_fair_exact, coin_markov, coin_markov_exact,
    CoinSequence, MarkovWeighting,
};
use bayes_recipient::continuous::{log_lr_a, NormalGamma, ValidationSummary};
use bayes_recipient::recipient::{
    hybrid_posterior_odds, lr_a, parse_validation_records, posterior_odds, summarize_validation,
    ContinuousPriors, ExpertReport, RecipientQuery, ValidationData,
};
use bayes_recipient::space::two_coin_space;
use bayes_recipient::{Error, Result};
use num_rational::BigRational;
use std::fmt::Write as _;

/// Fixed validation summaries used by the `fig3` tabulation: the modeled
/// expert's method scores around +8 under H₁ and −12.5 under H₂, both with
/// variance 25.
pub const FIG3_H1_SUMMARY: (f64, f64) = (8.0, 25.0);
pub const FIG3_H2_SUMMARY: (f64, f64) = (-12.5, 25.0);

/// "Identified" rates for the `fig4` grid under H₁- and H₂-true validation.
pub const FIG4_RATES: (f64, f64) = (0.95, 0.05);

/// Hyperparameters for both hypotheses as they arrive from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorSpec {
    pub mu1: f64,
    pub nmu1: f64,
    pub tau1: f64,
    pub ntau1: f64,
    pub mu2: f64,
    pub nmu2: f64,
    pub tau2: f64,
    pub ntau2: f64,
}

impl Default for PriorSpec {
    /// The skeptical defaults: symmetric priors centered at ±5 with one
    /// observation's worth of weight and a precision point value of 1/100.
    fn default() -> Self {
        Self {
            mu1: 5.0,
            nmu1: 1.0,
            tau1: 0.01,
            ntau1: 1.0,
            mu2: -5.0,
            nmu2: 1.0,
            tau2: 0.01,
            ntau2: 1.0,
        }
    }
}

impl PriorSpec {
    pub fn build(&self) -> Result<ContinuousPriors> {
        Ok(ContinuousPriors {
            h1: NormalGamma::new(self.mu1, self.nmu1, self.tau1, self.ntau1)?,
            h2: NormalGamma::new(self.mu2, self.nmu2, self.tau2, self.ntau2)?,
        })
    }
}

/// The expert's report as specified on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReportSpec {
    LogLr(f64),
    LinearLr(f64),
    Conclusion(ConclusionLabel),
}

/// One table cell: validation sizes print as integers, everything else in
/// exponent notation with 13 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Count(u64),
    Value(f64),
}

/// A plot-ready table: named columns over rows of finite numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl FigureTable {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Format(format!(
                "row arity {} does not match {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        for cell in &row {
            if let Cell::Value(v) = cell {
                if !v.is_finite() {
                    return Err(Error::Format(format!("non-finite table value {v}")));
                }
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Comma-separated rendering: header first, LF line endings, no trailing
    /// delimiter.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Cell::Count(n) => {
                        let _ = write!(out, "{n}");
                    }
                    Cell::Value(v) => {
                        let _ = write!(out, "{v:.12e}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Evenly spaced grid from `min` to `max` inclusive.
fn x_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !min.is_finite() || !max.is_finite() || min > max {
        return Err(Error::Domain(format!("invalid range [{min}, {max}]")));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    let count = ((max - min) / step + 1e-9).floor();
    if count > 10_000_000.0 {
        return Err(Error::Domain(format!(
            "step {step} over [{min}, {max}] yields more than 10^7 grid points"
        )));
    }
    Ok((0..=count as usize)
        .map(|i| min + i as f64 * step)
        .collect())
}

fn fmt_sig(v: f64) -> String {
    format!("{v:.14e}")
}

/// Compute LR_A and both posterior odds for one report, returning the lines
/// to print. The hybrid line only exists for numeric reports, where the
/// expert actually supplied a likelihood ratio that could be borrowed.
pub fn cmd_lr_a(
    prior_odds: f64,
    report: ReportSpec,
    priors: &PriorSpec,
    validation_text: Option<&str>,
) -> Result<String> {
    let expert_report = match report {
        ReportSpec::LogLr(x) => ExpertReport::numeric_log_lr(x)?,
        ReportSpec::LinearLr(r) => ExpertReport::numeric_linear_lr(r)?,
        ReportSpec::Conclusion(label) => ExpertReport::Categorical(label),
    };
    let continuous = match expert_report {
        ExpertReport::NumericLogLr(_) => Some(priors.build()?),
        ExpertReport::Categorical(_) => None,
    };
    let query = RecipientQuery::new(prior_odds, expert_report, continuous)?;
    let data = match validation_text {
        Some(text) => summarize_validation(&parse_validation_records(text)?)?,
        None => ValidationData::Empty,
    };

    let lr = lr_a(&query, &data)?;
    let posterior = posterior_odds(prior_odds, lr)?;

    let mut out = String::new();
    let _ = writeln!(out, "LR_A: {}", fmt_sig(lr));
    let _ = writeln!(out, "posterior odds (recipient): {}", fmt_sig(posterior));
    if let ExpertReport::NumericLogLr(x) = expert_report {
        let hybrid = hybrid_posterior_odds(prior_odds, x.exp())?;
        let _ = writeln!(
            out,
            "posterior odds (hybrid, expert's LR): {}",
            fmt_sig(hybrid)
        );
    }
    Ok(out)
}

/// Prior predictive densities under both hypotheses and the LR_A curve over
/// an x grid of reported log-LR values.
pub fn cmd_fig2(
    priors: &PriorSpec,
    x_min: f64,
    x_max: f64,
    step: f64,
    log10: bool,
) -> Result<FigureTable> {
    let built = priors.build()?;
    let h1 = built.h1.predictive();
    let h2 = built.h2.predictive();

    let mut columns = vec!["x", "pdf_h1", "pdf_h2", "lr_a"];
    if log10 {
        columns.push("lr_a_log10");
    }
    let mut table = FigureTable::new(columns);
    for x in x_grid(x_min, x_max, step)? {
        let log_lr = log_lr_a(x, &h1, &h2);
        let mut row = vec![
            Cell::Value(x),
            Cell::Value(h1.pdf(x)),
            Cell::Value(h2.pdf(x)),
            Cell::Value(log_lr.exp()),
        ];
        if log10 {
            row.push(Cell::Value(log_lr / std::f64::consts::LN_10));
        }
        table.push_row(row)?;
    }
    Ok(table)
}

/// As [`cmd_fig2`], but with both priors first updated by `n` validation
/// results per hypothesis (fixed summaries, varying `n`).
pub fn cmd_fig3(
    priors: &PriorSpec,
    n_list: &[u64],
    x_min: f64,
    x_max: f64,
    step: f64,
    log10: bool,
) -> Result<FigureTable> {
    let built = priors.build()?;
    let grid = x_grid(x_min, x_max, step)?;

    let mut columns = vec!["n", "x", "pdf_h1", "pdf_h2", "lr_a"];
    if log10 {
        columns.push("lr_a_log10");
    }
    let mut table = FigureTable::new(columns);
    for &n in n_list {
        let s1 = ValidationSummary::new(n, FIG3_H1_SUMMARY.0, FIG3_H1_SUMMARY.1)?;
        let s2 = ValidationSummary::new(n, FIG3_H2_SUMMARY.0, FIG3_H2_SUMMARY.1)?;
        let h1 = built.h1.update(&s1).predictive();
        let h2 = built.h2.update(&s2).predictive();
        for &x in &grid {
            let log_lr = log_lr_a(x, &h1, &h2);
            let mut row = vec![
                Cell::Count(n),
                Cell::Value(x),
                Cell::Value(h1.pdf(x)),
                Cell::Value(h2.pdf(x)),
                Cell::Value(log_lr.exp()),
            ];
            if log10 {
                row.push(Cell::Value(log_lr / std::f64::consts::LN_10));
            }
            table.push_row(row)?;
        }
    }
    Ok(table)
}

/// Conclusion-LR grid over validation sizes, row-major in `(n1, n2)`.
pub fn cmd_fig4(n_list: &[u64], log10: bool) -> Result<FigureTable> {
    let cells = figure4_grid(n_list, FIG4_RATES.0, FIG4_RATES.1)?;
    let mut columns = vec!["n1", "n2", "lr"];
    if log10 {
        columns.push("lr_log10");
    }
    let mut table = FigureTable::new(columns);
    for cell in cells {
        let mut row = vec![
            Cell::Count(cell.n1),
            Cell::Count(cell.n2),
            Cell::Value(cell.lr),
        ];
        if log10 {
            row.push(Cell::Value(cell.lr.log10()));
        }
        table.push_row(row)?;
    }
    Ok(table)
}

/// Which coin predictor to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinModel {
    Fair,
    Beta,
    Markov,
}

/// Next-flip-heads probability for one of the coin models.
pub fn cmd_coin(
    model: CoinModel,
    sequence: &str,
    weighting: MarkovWeighting,
    rational: bool,
) -> Result<String> {
    let seq = CoinSequence::parse(sequence)?;
    let rendered = if rational {
        let p: BigRational = match model {
            CoinModel::Fair => coin_fair_exact(&seq),
            CoinModel::Beta => coin_beta_exact(&seq, 1, 1)?,
            CoinModel::Markov => coin_markov_exact(&seq, weighting)?,
        };
        p.to_string()
    } else {
        let p: f64 = match model {
            CoinModel::Fair => coin_fair(&seq),
            CoinModel::Beta => coin_beta(&seq, 1.0, 1.0)?,
            CoinModel::Markov => coin_markov(&seq, weighting)?,
        };
        p.to_string()
    };
    Ok(format!("P(next flip heads) = {rendered}\n"))
}

/// Report on the two-coin space where pairwise independence fails to survive
/// conditioning.
pub fn cmd_counterexample(rational: bool) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "space: two independent fair coin tosses {{HH, HT, TH, TT}}, each probability 1/4"
    );
    let _ = writeln!(
        out,
        "events: A = first toss heads, B = second toss heads, C = tosses agree"
    );
    if rational {
        let space = two_coin_space::<BigRational>();
        let _ = writeln!(out, "P(A) = {}", space.prob("A")?);
        let _ = writeln!(out, "P(B) = {}", space.prob("B")?);
        let _ = writeln!(out, "independent(A, B) = {}", space.independent("A", "B")?);
        let _ = writeln!(out, "P(A | C) = {}", space.cond_prob("A", &["C"])?);
        let _ = writeln!(out, "P(A | B, C) = {}", space.cond_prob("A", &["B", "C"])?);
        let _ = writeln!(
            out,
            "cond_independent(A, B | C) = {}",
            space.cond_independent("A", "B", &["C"])?
        );
    } else {
        let space = two_coin_space::<f64>();
        let _ = writeln!(out, "P(A) = {}", space.prob("A")?);
        let _ = writeln!(out, "P(B) = {}", space.prob("B")?);
        let _ = writeln!(out, "independent(A, B) = {}", space.independent("A", "B")?);
        let _ = writeln!(out, "P(A | C) = {}", space.cond_prob("A", &["C"])?);
        let _ = writeln!(out, "P(A | B, C) = {}", space.cond_prob("A", &["B", "C"])?);
        let _ = writeln!(
            out,
            "cond_independent(A, B | C) = {}",
            space.cond_independent("A", "B", &["C"])?
        );
    }
    let _ = writeln!(
        out,
        "note: A and B are independent, yet conditioning on C makes B decisive for A"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_fig2_has_161_rows() {
        let table = cmd_fig2(&PriorSpec::default(), -40.0, 40.0, 0.5, false).unwrap();
        assert_eq!(table.n_rows(), 161);
    }

    #[test]
    fn fig2_symmetry_and_anchor_rows() {
        let table = cmd_fig2(&PriorSpec::default(), -40.0, 40.0, 0.5, false).unwrap();
        let csv = table.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,pdf_h1,pdf_h2,lr_a");
        // x = 0 row: densities equal, lr exactly 1
        let row0: Vec<&str> = lines[81].split(',').collect();
        assert_eq!(row0[0].parse::<f64>().unwrap(), 0.0);
        assert_eq!(row0[1], row0[2]);
        assert_eq!(row0[3].parse::<f64>().unwrap(), 1.0);
        // x = 15 row: lr = 2
        let row15: Vec<&str> = lines[111].split(',').collect();
        assert_eq!(row15[0].parse::<f64>().unwrap(), 15.0);
        assert!((row15[3].parse::<f64>().unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fig3_n_zero_matches_fig2() {
        let fig2 = cmd_fig2(&PriorSpec::default(), -40.0, 40.0, 0.5, false).unwrap();
        let fig3 = cmd_fig3(&PriorSpec::default(), &[0], -40.0, 40.0, 0.5, false).unwrap();
        let fig2_csv = fig2.to_csv();
        let fig2_rows: Vec<&str> = fig2_csv.lines().skip(1).map(str::trim).collect();
        let fig3_rows: Vec<String> = fig3
            .to_csv()
            .lines()
            .skip(1)
            .map(|line| line.split_once(',').unwrap().1.to_string())
            .collect();
        assert_eq!(fig2_rows.len(), fig3_rows.len());
        for (a, b) in fig2_rows.iter().zip(&fig3_rows) {
            assert_eq!(*a, b);
        }
    }

    #[test]
    fn fig3_lr_at_eight_nondecreasing_in_n() {
        let table = cmd_fig3(
            &PriorSpec::default(),
            &[1, 10, 100, 1000, 10_000],
            8.0,
            8.0,
            1.0,
            false,
        )
        .unwrap();
        let csv = table.to_csv();
        let lrs: Vec<f64> = csv
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(lrs.len(), 5);
        for w in lrs.windows(2) {
            assert!(w[1] >= w[0], "{lrs:?}");
        }
        // At n = 10^4 the predictives are nearly Normal(8, 25) and
        // Normal(-12.5, 25); LR_A(8) sits within 5% of the normal-limit
        // value exp(20.5²/50).
        let limit = (420.25f64 / 50.0).exp();
        assert!(
            (lrs[4] / limit - 1.0).abs() <= 0.05,
            "{} vs {limit}",
            lrs[4]
        );
    }

    #[test]
    fn fig4_zero_cell_and_shape() {
        let table = cmd_fig4(&[0, 10], false).unwrap();
        assert_eq!(table.n_rows(), 4);
        let csv = table.to_csv();
        let first = csv.lines().nth(1).unwrap();
        let fields: Vec<&str> = first.split(',').collect();
        assert_eq!(fields[0], "0");
        assert_eq!(fields[1], "0");
        assert!((fields[2].parse::<f64>().unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn lr_a_numeric_prints_three_lines() {
        let out = cmd_lr_a(1.0, ReportSpec::LogLr(15.0), &PriorSpec::default(), None).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        let lr: f64 = lines[0].rsplit(' ').next().unwrap().parse().unwrap();
        assert!((lr - 2.0).abs() < 1e-9);
        let hybrid: f64 = lines[2].rsplit(' ').next().unwrap().parse().unwrap();
        assert!((hybrid - 15f64.exp()).abs() < 1e-3);
    }

    #[test]
    fn lr_a_categorical_prints_two_lines() {
        let out = cmd_lr_a(
            0.1,
            ReportSpec::Conclusion(ConclusionLabel::Identified),
            &PriorSpec::default(),
            None,
        )
        .unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        let posterior: f64 = lines[1].rsplit(' ').next().unwrap().parse().unwrap();
        assert!((posterior - 0.2).abs() < 1e-9);
    }

    #[test]
    fn lr_a_reads_validation_text() {
        let csv = "hypothesis,outcome\nH1,3.0\nH1,13.0\nH2,-12.5\n";
        let out = cmd_lr_a(
            1.0,
            ReportSpec::LogLr(8.0),
            &PriorSpec::default(),
            Some(csv),
        )
        .unwrap();
        assert!(out.starts_with("LR_A: "));
        // Mismatched kinds are an error.
        let cat = "hypothesis,outcome\nH1,identified\n";
        assert!(cmd_lr_a(
            1.0,
            ReportSpec::LogLr(8.0),
            &PriorSpec::default(),
            Some(cat)
        )
        .is_err());
    }

    #[test]
    fn coin_outputs() {
        let w = MarkovWeighting::Equal;
        assert_eq!(
            cmd_coin(CoinModel::Fair, "HHHHHTTT", w, false).unwrap(),
            "P(next flip heads) = 0.5\n"
        );
        assert_eq!(
            cmd_coin(CoinModel::Beta, "HHHHHTTT", w, false).unwrap(),
            "P(next flip heads) = 0.6\n"
        );
        assert_eq!(
            cmd_coin(CoinModel::Markov, "HHHHHTTT", w, false).unwrap(),
            "P(next flip heads) = 0.325\n"
        );
        assert_eq!(
            cmd_coin(CoinModel::Markov, "HHHHHTTT", w, true).unwrap(),
            "P(next flip heads) = 13/40\n"
        );
        assert_eq!(
            cmd_coin(
                CoinModel::Markov,
                "HHHHHTTT",
                MarkovWeighting::Posterior,
                true
            )
            .unwrap(),
            "P(next flip heads) = 13/45\n"
        );
        assert!(cmd_coin(CoinModel::Fair, "HHxT", w, false).is_err());
    }

    #[test]
    fn counterexample_values_and_determinism() {
        let float = cmd_counterexample(false).unwrap();
        assert!(float.contains("P(A | B, C) = 1\n"));
        assert!(float.contains("P(A | C) = 0.5\n"));
        assert!(float.contains("independent(A, B) = true"));
        assert_eq!(float, cmd_counterexample(false).unwrap());

        let rational = cmd_counterexample(true).unwrap();
        assert!(rational.contains("P(A | B, C) = 1\n"));
        assert!(rational.contains("P(A | C) = 1/2\n"));
    }

    #[test]
    fn table_rejects_ragged_or_non_finite_rows() {
        let mut table = FigureTable::new(vec!["a", "b"]);
        assert!(table.push_row(vec![Cell::Value(1.0)]).is_err());
        assert!(table
            .push_row(vec![Cell::Value(1.0), Cell::Value(f64::NAN)])
            .is_err());
        assert!(table
            .push_row(vec![Cell::Count(1), Cell::Value(2.0)])
            .is_ok());
    }

    #[test]
    fn grid_respects_bounds() {
        assert_eq!(x_grid(0.0, 1.0, 0.25).unwrap().len(), 5);
        assert_eq!(x_grid(5.0, 5.0, 1.0).unwrap(), vec![5.0]);
        assert!(x_grid(1.0, 0.0, 0.5).is_err());
        assert!(x_grid(0.0, 1.0, 0.0).is_err());
        assert!(x_grid(0.0, 1.0, 1e-300).is_err());
    }
}
