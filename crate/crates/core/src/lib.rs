//! Accuracy of a decision maker who consults a fallible decision aid.
//!
//! The crate evaluates how often the human/aid pair reaches the correct
//! answer under different reliance policies: routine acceptance, routine
//! ignoring, indiscriminate or discriminating attendance to the advice, and
//! self-gated reliance. It provides
//!
//! * [`model`]: validated scenario types and the joint aid/user structure,
//! * [`analytic`]: closed forms, policy comparison, and break-even discrimination,
//! * [`simulate`]: a seeded Monte Carlo engine that checks the closed forms,
//! * [`sweep`]: parameter sweeps and exact sensitivities,
//! * [`cli`]: the `aidcheck` command-line tool.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod model;
pub mod simulate;
pub mod sweep;

pub use analytic::{
    breakeven_discrimination, compare_policies, eq1_aided_accuracy, eq2_aided_accuracy,
    eq3_self_gated_accuracy, evaluate, potential_combined, Breakeven, PolicyComparison,
};
pub use error::{Error, Result};
pub use model::{
    conditional_user_rates, validate_scenario, AidProfile, DegradationMode, DependencyModel,
    EvalResult, OutcomeTable, Probability, RawScenario, ReliancePolicy, Scenario, UserProfile,
    ValidationReport,
};
pub use simulate::{estimate_accuracy, sample_trial, SimEstimate, TrialOutcome};
pub use sweep::{run_sweep, sensitivity, SweepSeries, SweepSpec};
