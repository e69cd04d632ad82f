//! `aidcheck` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 semantic validation
//! failure, 3 flag misuse.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analytic::{breakeven_discrimination, compare_policies, evaluate, Breakeven};
use crate::error::Error;
use crate::model::{
    cell_flags, validate_scenario, DependencyModel, RawScenario, ReliancePolicy, Scenario,
};
use crate::simulate::estimate_accuracy;
use crate::sweep::{run_sweep, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Significant digits kept in numeric JSON and CSV output.
pub const OUTPUT_SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "aidcheck",
    version,
    about = "Accuracy of a decision maker consulting a fallible decision aid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form accuracy of the configured policy.
    Eval {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Configured policy versus routine acceptance and routine ignoring.
    Compare {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monte Carlo estimate of the configured policy's accuracy.
    Simulate {
        scenario: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: u64,
    },
    /// Sweep one parameter and write the accuracy series as CSV.
    Sweep {
        scenario: PathBuf,
        /// Dot-path into the scenario, e.g. policy.p_accept
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimum symmetric discrimination that matches the better routine policy.
    Breakeven { scenario: PathBuf },
}

/// Common wrapper around every command's JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope<T> {
    pub tool_version: String,
    /// Canonical form of the input scenario.
    pub scenario: RawScenario,
    pub result: T,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Summary printed by `sweep` after the CSV is written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub parameter_path: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub out: String,
    pub aided_min: f64,
    pub aided_max: f64,
    pub max_chord_deviation: f64,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::Io(_) => EXIT_IO,
            Error::Validation(_)
            | Error::InvalidSweepValue { .. }
            | Error::WrongPolicy { .. }
            | Error::NoClosedForm { .. } => EXIT_INVALID,
            Error::InvalidArgument(_)
            | Error::UnknownParameter(_)
            | Error::ParameterNotApplicable { .. } => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Rounds to `digits` significant digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

fn round_json(v: &mut serde_json::Value) {
    use serde_json::Value;
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().unwrap(), OUTPUT_SIGNIFICANT_DIGITS);
            if let Some(r) = serde_json::Number::from_f64(x) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Renders a number for CSV: rounded, always with a decimal point or exponent.
pub fn csv_number(x: f64) -> String {
    format!("{:?}", round_significant(x, OUTPUT_SIGNIFICANT_DIGITS))
}

fn envelope_json<T: Serialize>(
    scenario: &Scenario,
    result: &T,
    notes: Vec<String>,
) -> Result<String, Failure> {
    let mut payload = serde_json::to_value(result).map_err(Error::from)?;
    round_json(&mut payload);
    let envelope = OutputEnvelope {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: scenario.to_raw(),
        result: payload,
        notes,
    };
    Ok(serde_json::to_string_pretty(&envelope).map_err(Error::from)?)
}

fn load_scenario(path: &Path) -> Result<Scenario, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let raw = RawScenario::from_json(&text).map_err(Error::from)?;
    Ok(validate_scenario(&raw).map_err(Error::from)?)
}

fn closed_form_caveats(scenario: &Scenario) -> Vec<String> {
    let mut notes = scenario.warnings();
    if matches!(scenario.policy(), ReliancePolicy::SelfGated { .. })
        && scenario.dependency() != DependencyModel::Independent
    {
        notes.push(format!(
            "self-gated reliance under {} dependency is beyond the independent-aid \
             closed form; only the simulation covers it",
            scenario.dependency().name()
        ));
    }
    notes
}

fn cmd_eval(path: &Path, format: Format) -> Result<String, Failure> {
    let scenario = load_scenario(path)?;
    let result = evaluate(&scenario)?;
    match format {
        Format::Json => envelope_json(&scenario, &result, Vec::new()),
        Format::Csv => {
            let mut s = String::from("metric,value\n");
            let _ = writeln!(
                s,
                "p_correct_aided,{}",
                csv_number(result.p_correct_aided.value())
            );
            let _ = writeln!(
                s,
                "p_accept_marginal,{}",
                csv_number(result.p_accept_marginal.value())
            );
            for (i, p) in result.outcome_table.cells.iter().enumerate() {
                let (a, acc, f) = cell_flags(i);
                let _ = writeln!(
                    s,
                    "outcome_advice{}_accepted{}_final{},{}",
                    a as u8,
                    acc as u8,
                    f as u8,
                    csv_number(*p)
                );
            }
            Ok(s)
        }
    }
}

fn cmd_compare(path: &Path, format: Format) -> Result<String, Failure> {
    let scenario = load_scenario(path)?;
    let cmp = compare_policies(&scenario)?;
    match format {
        Format::Json => envelope_json(&scenario, &cmp, Vec::new()),
        Format::Csv => {
            let mut s = String::from("policy,p_correct_aided,margin_to_best,best\n");
            for p in &cmp.policies {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    p.policy,
                    csv_number(p.result.p_correct_aided.value()),
                    csv_number(p.margin_to_best),
                    p.policy == cmp.best_policy
                );
            }
            Ok(s)
        }
    }
}

fn cmd_simulate(path: &Path, trials: u64, seed: u64, shards: u64) -> Result<String, Failure> {
    if trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    if shards == 0 {
        return Err(Failure::usage("--shards must be at least 1"));
    }
    let scenario = load_scenario(path)?;
    let estimate = estimate_accuracy(&scenario, trials, seed, shards)?;
    envelope_json(&scenario, &estimate, closed_form_caveats(&scenario))
}

fn cmd_sweep(
    path: &Path,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
    out: &Path,
) -> Result<String, Failure> {
    if steps < 2 {
        return Err(Failure::usage(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(Failure::usage("--from and --to must be finite"));
    }
    let scenario = load_scenario(path)?;
    let series = run_sweep(&SweepSpec {
        base: scenario,
        parameter_path: param.to_string(),
        from,
        to,
        steps,
    })?;

    let mut csv =
        String::from("param_value,aided_accuracy,unaided_reference,routine_accept_reference\n");
    for i in 0..series.len() {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            csv_number(series.values[i]),
            csv_number(series.accuracies[i].value()),
            csv_number(series.unaided_reference[i]),
            csv_number(series.routine_accept_reference[i]),
        );
    }
    std::fs::write(out, csv).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", out.display()),
    })?;

    let accs = series.accuracies.iter().map(|p| p.value());
    let summary = SweepSummary {
        parameter_path: param.to_string(),
        from,
        to,
        steps,
        out: out.display().to_string(),
        aided_min: accs.clone().fold(f64::INFINITY, f64::min),
        aided_max: accs.fold(f64::NEG_INFINITY, f64::max),
        max_chord_deviation: series.max_chord_deviation(),
    };
    envelope_json(&scenario, &summary, scenario.warnings())
}

fn cmd_breakeven(path: &Path) -> Result<String, Failure> {
    let scenario = load_scenario(path)?;
    let result: Breakeven = breakeven_discrimination(
        scenario.aid(),
        scenario.user(),
        scenario.dependency(),
        scenario.degradation_mode_setting(),
    )?;
    let mut notes = scenario.warnings();
    notes.push(
        "break-even uses symmetric discriminating acceptance (d, 1 - d); \
         the configured policy is not used"
            .into(),
    );
    envelope_json(&scenario, &result, notes)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
        }
    };

    let outcome = match &cli.command {
        Command::Eval { scenario, format } => cmd_eval(scenario, *format),
        Command::Compare { scenario, format } => cmd_compare(scenario, *format),
        Command::Simulate {
            scenario,
            trials,
            seed,
            shards,
        } => cmd_simulate(scenario, *trials, *seed, *shards),
        Command::Sweep {
            scenario,
            param,
            from,
            to,
            steps,
            out,
        } => cmd_sweep(scenario, param, *from, *to, *steps, out),
        Command::Breakeven { scenario } => cmd_breakeven(scenario),
    };

    match outcome {
        Ok(text) => {
            let _ = write!(out, "{text}");
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
