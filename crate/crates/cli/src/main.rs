use bayes_recipient::categorical::ConclusionLabel;
use bayes_recipient::coins::MarkovWeighting;
use bayes_recipient_cli::{
    cmd_coin, cmd_counterexample, cmd_fig2, cmd_fig3, cmd_fig4, cmd_lr_a, CoinModel, PriorSpec,
    ReportSpec,
};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Recipient-side Bayesian evaluation of expert evidence reports.
#[derive(Parser)]
#[command(name = "bayes-recipient", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute LR_A and posterior odds for one expert report
    LrA(LrAArgs),
    /// Tabulate prior predictive densities and the LR_A curve
    Fig2(Fig2Args),
    /// Tabulate predictive densities and LR_A curves after validation updates
    Fig3(Fig3Args),
    /// Tabulate conclusion LRs over a grid of validation set sizes
    Fig4(Fig4Args),
    /// Next-flip-heads probability under one of three coin models
    Coin(CoinArgs),
    /// Pairwise independence does not survive conditioning: a worked space
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct PriorArgs {
    /// Prior mean of the log-LR distribution under H1
    #[arg(long, default_value_t = PriorSpec::default().mu1, allow_negative_numbers = true)]
    mu1: f64,
    /// Observations' worth of weight behind --mu1
    #[arg(long, default_value_t = PriorSpec::default().nmu1)]
    nmu1: f64,
    /// Prior precision point value under H1
    #[arg(long, default_value_t = PriorSpec::default().tau1)]
    tau1: f64,
    /// Observations' worth of weight behind --tau1
    #[arg(long, default_value_t = PriorSpec::default().ntau1)]
    ntau1: f64,
    /// Prior mean of the log-LR distribution under H2
    #[arg(long, default_value_t = PriorSpec::default().mu2, allow_negative_numbers = true)]
    mu2: f64,
    /// Observations' worth of weight behind --mu2
    #[arg(long, default_value_t = PriorSpec::default().nmu2)]
    nmu2: f64,
    /// Prior precision point value under H2
    #[arg(long, default_value_t = PriorSpec::default().tau2)]
    tau2: f64,
    /// Observations' worth of weight behind --tau2
    #[arg(long, default_value_t = PriorSpec::default().ntau2)]
    ntau2: f64,
}

impl PriorArgs {
    fn spec(&self) -> PriorSpec {
        PriorSpec {
            mu1: self.mu1,
            nmu1: self.nmu1,
            tau1: self.tau1,
            ntau1: self.ntau1,
            mu2: self.mu2,
            nmu2: self.nmu2,
            tau2: self.tau2,
            ntau2: self.ntau2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConclusionArg {
    Identified,
    #[value(name = "not_identified", alias = "not-identified")]
    NotIdentified,
}

impl From<ConclusionArg> for ConclusionLabel {
    fn from(value: ConclusionArg) -> Self {
        match value {
            ConclusionArg::Identified => ConclusionLabel::Identified,
            ConclusionArg::NotIdentified => ConclusionLabel::NotIdentified,
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("report").required(true).multiple(false)))]
struct LrAArgs {
    /// The recipient's prior odds of H1 versus H2
    #[arg(long, default_value_t = 1.0)]
    prior_odds: f64,
    /// Expert's reported log likelihood ratio (natural log)
    #[arg(long, group = "report", allow_negative_numbers = true)]
    report_loglr: Option<f64>,
    /// Expert's reported likelihood ratio on the linear scale
    #[arg(long, group = "report")]
    report_lr: Option<f64>,
    /// Expert's categorical conclusion
    #[arg(long, group = "report", value_enum)]
    conclusion: Option<ConclusionArg>,
    /// CSV file of validation outcomes (header: hypothesis,outcome)
    #[arg(long)]
    validation: Option<PathBuf>,
    #[command(flatten)]
    priors: PriorArgs,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig2Args {
    #[arg(long, default_value_t = -40.0, allow_negative_numbers = true)]
    x_min: f64,
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    x_max: f64,
    #[arg(long, default_value_t = 0.5)]
    step: f64,
    /// Add a log10(LR_A) column
    #[arg(long)]
    log10: bool,
    #[command(flatten)]
    priors: PriorArgs,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig3Args {
    /// Validation set sizes, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 10, 100, 1000])]
    n_list: Vec<u64>,
    #[arg(long, default_value_t = -40.0, allow_negative_numbers = true)]
    x_min: f64,
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    x_max: f64,
    #[arg(long, default_value_t = 0.5)]
    step: f64,
    /// Add a log10(LR_A) column
    #[arg(long)]
    log10: bool,
    #[command(flatten)]
    priors: PriorArgs,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig4Args {
    /// Validation set sizes, comma separated; the grid is their square
    #[arg(long, value_delimiter = ',', default_values_t = [0u64, 10, 20, 40, 100, 200, 400, 1000])]
    n_list: Vec<u64>,
    /// Add a log10(LR) column
    #[arg(long)]
    log10: bool,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoinModelArg {
    Fair,
    Beta,
    Markov,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightingArg {
    Equal,
    Posterior,
}

#[derive(Args)]
struct CoinArgs {
    /// Which predictor to evaluate
    #[arg(long, value_enum)]
    model: CoinModelArg,
    /// Observed flips, e.g. HHHHHTTT
    #[arg(long)]
    seq: String,
    /// Branch weighting for the markov model
    #[arg(long, value_enum, default_value_t = WeightingArg::Equal)]
    weighting: WeightingArg,
    /// Print the probability as an exact fraction
    #[arg(long)]
    rational: bool,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Print probabilities as exact fractions
    #[arg(long)]
    rational: bool,
    /// Write output here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::LrA(args) => {
            let report = if let Some(x) = args.report_loglr {
                ReportSpec::LogLr(x)
            } else if let Some(r) = args.report_lr {
                ReportSpec::LinearLr(r)
            } else {
                ReportSpec::Conclusion(args.conclusion.expect("clap enforces the group").into())
            };
            let validation_text = match &args.validation {
                Some(path) => Some(
                    std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
                ),
                None => None,
            };
            let output = cmd_lr_a(
                args.prior_odds,
                report,
                &args.priors.spec(),
                validation_text.as_deref(),
            )
            .map_err(|e| e.to_string())?;
            emit(args.out.as_deref(), &output).map_err(|e| e.to_string())
        }
        Command::Fig2(args) => {
            let table = cmd_fig2(
                &args.priors.spec(),
                args.x_min,
                args.x_max,
                args.step,
                args.log10,
            )
            .map_err(|e| e.to_string())?;
            emit(args.out.as_deref(), &table.to_csv()).map_err(|e| e.to_string())
        }
        Command::Fig3(args) => {
            let table = cmd_fig3(
                &args.priors.spec(),
                &args.n_list,
                args.x_min,
                args.x_max,
                args.step,
                args.log10,
            )
            .map_err(|e| e.to_string())?;
            emit(args.out.as_deref(), &table.to_csv()).map_err(|e| e.to_string())
        }
        Command::Fig4(args) => {
            let table = cmd_fig4(&args.n_list, args.log10).map_err(|e| e.to_string())?;
            emit(args.out.as_deref(), &table.to_csv()).map_err(|e| e.to_string())
        }
        Command::Coin(args) => {
            let model = match args.model {
                CoinModelArg::Fair => CoinModel::Fair,
                CoinModelArg::Beta => CoinModel::Beta,
                CoinModelArg::Markov => CoinModel::Markov,
            };
            let weighting = match args.weighting {
                WeightingArg::Equal => MarkovWeighting::Equal,
                WeightingArg::Posterior => MarkovWeighting::Posterior,
            };
            let output =
                cmd_coin(model, &args.seq, weighting, args.rational).map_err(|e| e.to_string())?;
            emit(args.out.as_deref(), &output).map_err(|e| e.to_string())
        }
        Command::Counterexample(args) => {
            let output = cmd_counterexample(args.rational).map_err(|e| e.to_string())?;
            emit(args.out.as_deref(), &output).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
