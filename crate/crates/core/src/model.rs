//! Domain types for the aid/user interaction model.
//!
//! Every probability the closed forms and the simulator consume lives here:
//! the aid's hit rate, the user's unaided and post-rejection rates, the
//! reliance policy, and the joint structure between aid and user
//! correctness. Raw scenario data (as read from JSON) is converted into a
//! [`Scenario`] by [`validate_scenario`], which reports every violated
//! constraint at once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Values this far outside `[0, 1]` are clamped onto the interval instead of rejected.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Slack allowed when checking `P(both correct)` against its Fréchet–Hoeffding bounds.
pub const FRECHET_TOLERANCE: f64 = 1e-9;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

/// Returned when a value cannot be used as a probability.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("{0} is not a probability (must lie in [0, 1])")]
pub struct ProbabilityError(pub f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self, ProbabilityError> {
        if value.is_nan() {
            return Err(ProbabilityError(value));
        }
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else if (-CLAMP_TOLERANCE..0.0).contains(&value) {
            Ok(Probability(0.0))
        } else if value > 1.0 && value <= 1.0 + CLAMP_TOLERANCE {
            Ok(Probability(1.0))
        } else {
            Err(ProbabilityError(value))
        }
    }

    /// Clamps arithmetic results that are known to be probabilities back onto `[0, 1]`.
    pub(crate) fn saturating(value: f64) -> Self {
        Probability(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = ProbabilityError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The decision aid, summarized by its marginal hit rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AidProfile {
    pub p_advice_correct: Probability,
}

/// The human decision maker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserProfile {
    /// Accuracy when no aid is present.
    pub p_unaided_correct: Probability,
    /// Accuracy after attending to and rejecting the advice. Deliberation
    /// eats into solving time, so this is normally below the unaided rate.
    pub p_post_reject_correct: Probability,
}

/// How the user treats the aid's advice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReliancePolicy {
    /// Take the advice every time, without deliberation.
    RoutineAccept,
    /// Never look at the advice. No deliberation time is spent, so the
    /// user performs at the unaided rate.
    RoutineIgnore,
    /// Attend to the advice, then accept it with a probability that does
    /// not depend on whether it is correct.
    Indiscriminate { p_accept: Probability },
    /// Attend to the advice; acceptance depends on the (unobserved)
    /// correctness of the advice.
    Discriminating {
        p_accept_given_correct: Probability,
        p_accept_given_wrong: Probability,
    },
    /// Predict own success first: ignore the aid when confident, otherwise
    /// take its advice outright. Gating is assumed to cost no time.
    SelfGated {
        p_ignore_given_user_correct: Probability,
        p_use_given_user_wrong: Probability,
    },
}

impl ReliancePolicy {
    /// Identifier used in JSON (`"type"` tag) and in policy comparisons.
    pub fn name(&self) -> &'static str {
        match self {
            ReliancePolicy::RoutineAccept => "routine_accept",
            ReliancePolicy::RoutineIgnore => "routine_ignore",
            ReliancePolicy::Indiscriminate { .. } => "indiscriminate",
            ReliancePolicy::Discriminating { .. } => "discriminating",
            ReliancePolicy::SelfGated { .. } => "self_gated",
        }
    }

    /// Acceptance probabilities `(given advice correct, given advice wrong)`
    /// for the policies that attend to the advice.
    pub fn acceptance_rates(&self) -> Option<(Probability, Probability)> {
        match *self {
            ReliancePolicy::Indiscriminate { p_accept } => Some((p_accept, p_accept)),
            ReliancePolicy::Discriminating {
                p_accept_given_correct,
                p_accept_given_wrong,
            } => Some((p_accept_given_correct, p_accept_given_wrong)),
            _ => None,
        }
    }
}

/// Joint structure between "advice correct" and "user would be correct".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DependencyModel {
    Independent,
    /// `P(advice correct AND user would be correct)` given directly.
    Joint {
        p_both_correct: Probability,
    },
    /// The aid is uniformly better: whenever the user would be right, so is the aid.
    Dominant,
}

impl DependencyModel {
    pub fn name(&self) -> &'static str {
        match self {
            DependencyModel::Independent => "independent",
            DependencyModel::Joint { .. } => "joint",
            DependencyModel::Dominant => "dominant",
        }
    }
}

/// Which post-rejection accuracy applies once the user rejects the advice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegradationMode {
    /// Use `p_post_reject_correct` regardless of the dependency.
    FixedRate,
    /// Use the user's correctness rates conditional on the advice
    /// being right or wrong, derived from the joint distribution.
    ConditionalFromJoint,
}

impl DegradationMode {
    pub fn default_for(dependency: &DependencyModel) -> Self {
        match dependency {
            DependencyModel::Independent => DegradationMode::FixedRate,
            _ => DegradationMode::ConditionalFromJoint,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DegradationMode::FixedRate => "fixed_rate",
            DegradationMode::ConditionalFromJoint => "conditional_from_joint",
        }
    }
}

// ---------------------------------------------------------------------------
// Raw (unvalidated) scenario, mirroring the JSON schema.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAid {
    pub p_advice_correct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawUser {
    pub p_unaided_correct: f64,
    pub p_post_reject_correct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawPolicy {
    RoutineAccept,
    RoutineIgnore,
    Indiscriminate {
        p_accept: f64,
    },
    Discriminating {
        p_accept_given_correct: f64,
        p_accept_given_wrong: f64,
    },
    SelfGated {
        p_ignore_given_user_correct: f64,
        p_use_given_user_wrong: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawDependency {
    Independent,
    Joint { p_both_correct: f64 },
    Dominant,
}

/// Scenario data exactly as it appears in a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub aid: RawAid,
    pub user: RawUser,
    pub policy: RawPolicy,
    pub dependency: RawDependency,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degradation_mode: Option<DegradationMode>,
}

impl RawScenario {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// A single violated constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: String,
    pub value: f64,
    pub allowed: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: value {} not in allowed range {}",
            self.constraint, self.value, self.allowed
        )
    }
}

/// Every constraint a raw scenario violates.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize, thiserror::Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, constraint: impl Into<String>, value: f64, allowed: impl Into<String>) {
        self.violations.push(Violation {
            constraint: constraint.into(),
            value,
            allowed: allowed.into(),
        });
    }

    fn probability(&mut self, path: &str, value: f64) -> Option<Probability> {
        match Probability::new(value) {
            Ok(p) => Some(p),
            Err(_) => {
                self.push(path, value, "[0, 1]");
                None
            }
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} constraint violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

/// A validated scenario. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    aid: AidProfile,
    user: UserProfile,
    policy: ReliancePolicy,
    dependency: DependencyModel,
    degradation_mode: Option<DegradationMode>,
}

/// Checks every field and cross-field bound of `raw`.
pub fn validate_scenario(raw: &RawScenario) -> Result<Scenario, ValidationReport> {
    let mut report = ValidationReport::default();

    let p_advice = report.probability("aid.p_advice_correct", raw.aid.p_advice_correct);
    let p_unaided = report.probability("user.p_unaided_correct", raw.user.p_unaided_correct);
    let p_post_reject =
        report.probability("user.p_post_reject_correct", raw.user.p_post_reject_correct);

    let policy = match raw.policy {
        RawPolicy::RoutineAccept => Some(ReliancePolicy::RoutineAccept),
        RawPolicy::RoutineIgnore => Some(ReliancePolicy::RoutineIgnore),
        RawPolicy::Indiscriminate { p_accept } => report
            .probability("policy.p_accept", p_accept)
            .map(|p_accept| ReliancePolicy::Indiscriminate { p_accept }),
        RawPolicy::Discriminating {
            p_accept_given_correct,
            p_accept_given_wrong,
        } => {
            let ac = report.probability("policy.p_accept_given_correct", p_accept_given_correct);
            let aw = report.probability("policy.p_accept_given_wrong", p_accept_given_wrong);
            ac.zip(aw).map(|(ac, aw)| ReliancePolicy::Discriminating {
                p_accept_given_correct: ac,
                p_accept_given_wrong: aw,
            })
        }
        RawPolicy::SelfGated {
            p_ignore_given_user_correct,
            p_use_given_user_wrong,
        } => {
            let gc = report.probability(
                "policy.p_ignore_given_user_correct",
                p_ignore_given_user_correct,
            );
            let gw = report.probability("policy.p_use_given_user_wrong", p_use_given_user_wrong);
            gc.zip(gw).map(|(gc, gw)| ReliancePolicy::SelfGated {
                p_ignore_given_user_correct: gc,
                p_use_given_user_wrong: gw,
            })
        }
    };

    let dependency = match raw.dependency {
        RawDependency::Independent => Some(DependencyModel::Independent),
        RawDependency::Dominant => Some(DependencyModel::Dominant),
        RawDependency::Joint { p_both_correct } => report
            .probability("dependency.p_both_correct", p_both_correct)
            .map(|p_both_correct| DependencyModel::Joint { p_both_correct }),
    };

    // Cross-field bounds only make sense once both marginals are valid.
    if let (Some(pa), Some(pu), Some(dep)) = (p_advice, p_unaided, dependency) {
        check_dependency(&mut report, pa.value(), pu.value(), &dep);
    }

    match (p_advice, p_unaided, p_post_reject, policy, dependency) {
        (Some(pa), Some(pu), Some(r), Some(policy), Some(dependency)) if report.is_empty() => {
            Ok(Scenario {
                aid: AidProfile {
                    p_advice_correct: pa,
                },
                user: UserProfile {
                    p_unaided_correct: pu,
                    p_post_reject_correct: r,
                },
                policy,
                dependency,
                degradation_mode: raw.degradation_mode,
            })
        }
        _ => Err(report),
    }
}

/// Fréchet–Hoeffding bounds on `P(both correct)` for the given marginals.
pub fn frechet_bounds(p_advice: f64, p_unaided: f64) -> (f64, f64) {
    let hi = p_advice.min(p_unaided);
    ((p_advice + p_unaided - 1.0).max(0.0).min(hi), hi)
}

fn check_dependency(report: &mut ValidationReport, pa: f64, pu: f64, dep: &DependencyModel) {
    match *dep {
        DependencyModel::Independent => {}
        DependencyModel::Joint { p_both_correct } => {
            let (lo, hi) = frechet_bounds(pa, pu);
            let p11 = p_both_correct.value();
            if p11 < lo - FRECHET_TOLERANCE || p11 > hi + FRECHET_TOLERANCE {
                report.push(
                    "dependency.p_both_correct within Frechet bounds \
                     [max(0, pA + pU - 1), min(pA, pU)]",
                    p11,
                    format!("[{lo}, {hi}]"),
                );
            }
        }
        DependencyModel::Dominant => {
            if pa < pu - FRECHET_TOLERANCE {
                report.push(
                    "dependency dominant requires aid.p_advice_correct >= user.p_unaided_correct",
                    pa,
                    format!("[{pu}, 1]"),
                );
            }
        }
    }
}

impl Scenario {
    /// Builds and validates a scenario from typed parts.
    pub fn new(
        aid: AidProfile,
        user: UserProfile,
        policy: ReliancePolicy,
        dependency: DependencyModel,
        degradation_mode: Option<DegradationMode>,
    ) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        check_dependency(
            &mut report,
            aid.p_advice_correct.value(),
            user.p_unaided_correct.value(),
            &dependency,
        );
        if report.is_empty() {
            Ok(Scenario {
                aid,
                user,
                policy,
                dependency,
                degradation_mode,
            })
        } else {
            Err(report)
        }
    }

    /// Parses and validates scenario JSON.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let raw = RawScenario::from_json(text)?;
        Ok(validate_scenario(&raw)?)
    }

    pub fn aid(&self) -> AidProfile {
        self.aid
    }

    pub fn user(&self) -> UserProfile {
        self.user
    }

    pub fn policy(&self) -> ReliancePolicy {
        self.policy
    }

    pub fn dependency(&self) -> DependencyModel {
        self.dependency
    }

    /// The mode as configured, `None` if left to the default.
    pub fn degradation_mode_setting(&self) -> Option<DegradationMode> {
        self.degradation_mode
    }

    /// The mode in effect.
    pub fn degradation_mode(&self) -> DegradationMode {
        self.degradation_mode
            .unwrap_or_else(|| DegradationMode::default_for(&self.dependency))
    }

    pub fn p_advice_correct(&self) -> f64 {
        self.aid.p_advice_correct.value()
    }

    pub fn p_unaided_correct(&self) -> f64 {
        self.user.p_unaided_correct.value()
    }

    pub fn p_post_reject_correct(&self) -> f64 {
        self.user.p_post_reject_correct.value()
    }

    /// Same scenario, different policy. Policies carry no cross-field constraints.
    pub fn with_policy(&self, policy: ReliancePolicy) -> Scenario {
        Scenario { policy, ..*self }
    }

    pub fn with_degradation_mode(&self, mode: Option<DegradationMode>) -> Scenario {
        Scenario {
            degradation_mode: mode,
            ..*self
        }
    }

    /// `P(advice correct AND user would be correct)`, clamped into the Fréchet range.
    pub fn p_both_correct(&self) -> f64 {
        p_both_correct(self.aid, self.user, self.dependency)
    }

    /// Joint cells `[p11, p10, p01, p00]`, indexed as (advice correct, user would be correct).
    pub fn joint_cells(&self) -> [f64; 4] {
        joint_cells(self.aid, self.user, self.dependency)
    }

    /// Non-fatal caveats about the parameter values.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.p_post_reject_correct() > self.p_unaided_correct() {
            out.push(format!(
                "user.p_post_reject_correct ({}) exceeds user.p_unaided_correct ({}); \
                 rejecting advice normally costs solving time",
                self.p_post_reject_correct(),
                self.p_unaided_correct()
            ));
        }
        out
    }

    /// Canonical raw form; validating it yields `self` again.
    pub fn to_raw(&self) -> RawScenario {
        let policy = match self.policy {
            ReliancePolicy::RoutineAccept => RawPolicy::RoutineAccept,
            ReliancePolicy::RoutineIgnore => RawPolicy::RoutineIgnore,
            ReliancePolicy::Indiscriminate { p_accept } => RawPolicy::Indiscriminate {
                p_accept: p_accept.value(),
            },
            ReliancePolicy::Discriminating {
                p_accept_given_correct,
                p_accept_given_wrong,
            } => RawPolicy::Discriminating {
                p_accept_given_correct: p_accept_given_correct.value(),
                p_accept_given_wrong: p_accept_given_wrong.value(),
            },
            ReliancePolicy::SelfGated {
                p_ignore_given_user_correct,
                p_use_given_user_wrong,
            } => RawPolicy::SelfGated {
                p_ignore_given_user_correct: p_ignore_given_user_correct.value(),
                p_use_given_user_wrong: p_use_given_user_wrong.value(),
            },
        };
        let dependency = match self.dependency {
            DependencyModel::Independent => RawDependency::Independent,
            DependencyModel::Dominant => RawDependency::Dominant,
            DependencyModel::Joint { p_both_correct } => RawDependency::Joint {
                p_both_correct: p_both_correct.value(),
            },
        };
        RawScenario {
            aid: RawAid {
                p_advice_correct: self.p_advice_correct(),
            },
            user: RawUser {
                p_unaided_correct: self.p_unaided_correct(),
                p_post_reject_correct: self.p_post_reject_correct(),
            },
            policy,
            dependency,
            degradation_mode: self.degradation_mode,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("scenario serializes")
    }
}

pub(crate) fn p_both_correct(aid: AidProfile, user: UserProfile, dep: DependencyModel) -> f64 {
    let pa = aid.p_advice_correct.value();
    let pu = user.p_unaided_correct.value();
    let (lo, hi) = frechet_bounds(pa, pu);
    let p11 = match dep {
        DependencyModel::Independent => pa * pu,
        DependencyModel::Joint { p_both_correct } => p_both_correct.value(),
        DependencyModel::Dominant => hi,
    };
    p11.clamp(lo, hi)
}

pub(crate) fn joint_cells(aid: AidProfile, user: UserProfile, dep: DependencyModel) -> [f64; 4] {
    let pa = aid.p_advice_correct.value();
    let pu = user.p_unaided_correct.value();
    let p11 = p_both_correct(aid, user, dep);
    let p10 = (pa - p11).max(0.0);
    let p01 = (pu - p11).max(0.0);
    let p00 = (1.0 - p11 - p10 - p01).max(0.0);
    [p11, p10, p01, p00]
}

/// The user's would-be correctness conditional on the advice being right,
/// and on the advice being wrong: `(P(U | A), P(U | not A))`.
///
/// When the conditioning event has probability zero the corresponding rate
/// is defined as 0.
pub fn conditional_user_rates(scenario: &Scenario) -> (Probability, Probability) {
    let pa = scenario.p_advice_correct();
    let pu = scenario.p_unaided_correct();
    match scenario.dependency {
        DependencyModel::Independent => (
            scenario.user.p_unaided_correct,
            scenario.user.p_unaided_correct,
        ),
        _ => {
            let p11 = scenario.p_both_correct();
            let given_correct = if pa > 0.0 { p11 / pa } else { 0.0 };
            let given_wrong = if pa < 1.0 {
                (pu - p11) / (1.0 - pa)
            } else {
                0.0
            };
            (
                Probability::saturating(given_correct),
                Probability::saturating(given_wrong),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// Index of an outcome cell: `advice_correct * 4 + accepted * 2 + final_correct`.
#[inline]
pub fn cell_index(advice_correct: bool, accepted: bool, final_correct: bool) -> usize {
    (advice_correct as usize) << 2 | (accepted as usize) << 1 | final_correct as usize
}

/// Inverse of [`cell_index`].
#[inline]
pub fn cell_flags(index: usize) -> (bool, bool, bool) {
    (index & 4 != 0, index & 2 != 0, index & 1 != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeCell {
    pub advice_correct: bool,
    /// Advice accepted (attending policies) or aid used (self-gated).
    pub accepted: bool,
    pub final_correct: bool,
    pub probability: f64,
}

/// Probabilities over (advice correct) × (accepted / used) × (final correct).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<OutcomeCell>", try_from = "Vec<OutcomeCell>")]
pub struct OutcomeTable {
    pub cells: [f64; 8],
}

impl OutcomeTable {
    pub fn get(&self, advice_correct: bool, accepted: bool, final_correct: bool) -> f64 {
        self.cells[cell_index(advice_correct, accepted, final_correct)]
    }

    pub(crate) fn add(
        &mut self,
        advice_correct: bool,
        accepted: bool,
        final_correct: bool,
        p: f64,
    ) {
        self.cells[cell_index(advice_correct, accepted, final_correct)] += p;
    }

    pub fn total(&self) -> f64 {
        self.cells.iter().sum()
    }

    pub fn p_final_correct(&self) -> f64 {
        (0..8).filter(|&i| i & 1 == 1).map(|i| self.cells[i]).sum()
    }

    pub fn p_accepted(&self) -> f64 {
        (0..8).filter(|&i| i & 2 == 2).map(|i| self.cells[i]).sum()
    }

    pub fn p_advice_correct(&self) -> f64 {
        (4..8).map(|i| self.cells[i]).sum()
    }
}

impl From<OutcomeTable> for Vec<OutcomeCell> {
    fn from(table: OutcomeTable) -> Self {
        table
            .cells
            .iter()
            .enumerate()
            .map(|(i, &probability)| {
                let (advice_correct, accepted, final_correct) = cell_flags(i);
                OutcomeCell {
                    advice_correct,
                    accepted,
                    final_correct,
                    probability,
                }
            })
            .collect()
    }
}

impl TryFrom<Vec<OutcomeCell>> for OutcomeTable {
    type Error = String;

    fn try_from(cells: Vec<OutcomeCell>) -> Result<Self, Self::Error> {
        let mut table = OutcomeTable::default();
        let mut seen = [false; 8];
        for c in cells {
            let i = cell_index(c.advice_correct, c.accepted, c.final_correct);
            if seen[i] {
                return Err(format!("duplicate outcome cell {i}"));
            }
            seen[i] = true;
            table.cells[i] = c.probability;
        }
        if seen.iter().all(|&s| s) {
            Ok(table)
        } else {
            Err("outcome table must list all 8 cells".into())
        }
    }
}

/// Accuracy of the aided decision maker with its outcome decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub p_correct_aided: Probability,
    pub outcome_table: OutcomeTable,
    pub p_accept_marginal: Probability,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl EvalResult {
    pub(crate) fn from_table(outcome_table: OutcomeTable, notes: Vec<String>) -> Self {
        EvalResult {
            p_correct_aided: Probability::saturating(outcome_table.p_final_correct()),
            p_accept_marginal: Probability::saturating(outcome_table.p_accepted()),
            outcome_table,
            notes,
        }
    }
}
