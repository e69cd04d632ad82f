//! Closed-form aided accuracy.
//!
//! Three regimes are covered:
//!
//! * attending policies (indiscriminate or discriminating acceptance),
//!   where a rejected recommendation leaves the user to solve the problem
//!   in the remaining time;
//! * self-gated reliance, where the user first predicts their own success
//!   and either solves unaided or takes the advice outright;
//! * the two routine policies, which never deliberate.
//!
//! Every evaluation returns the full 8-cell outcome table; the headline
//! accuracy is the sum of its `final_correct` cells.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    p_both_correct, AidProfile, DegradationMode, DependencyModel, EvalResult, OutcomeTable,
    Probability, ReliancePolicy, Scenario, UserProfile,
};

/// Accuracies closer than this are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Post-rejection correctness `(given advice correct, given advice wrong)`
/// under the scenario's degradation mode.
pub fn post_reject_rates(scenario: &Scenario) -> (f64, f64) {
    match scenario.degradation_mode() {
        DegradationMode::FixedRate => {
            let r = scenario.p_post_reject_correct();
            (r, r)
        }
        DegradationMode::ConditionalFromJoint => {
            let (c, w) = crate::model::conditional_user_rates(scenario);
            (c.value(), w.value())
        }
    }
}

fn attending_table(scenario: &Scenario, accept_correct: f64, accept_wrong: f64) -> OutcomeTable {
    let pa = scenario.p_advice_correct();
    let (u_c, u_w) = post_reject_rates(scenario);
    let mut t = OutcomeTable::default();
    t.add(true, true, true, pa * accept_correct);
    t.add(true, false, true, pa * (1.0 - accept_correct) * u_c);
    t.add(
        true,
        false,
        false,
        pa * (1.0 - accept_correct) * (1.0 - u_c),
    );
    t.add(false, true, false, (1.0 - pa) * accept_wrong);
    t.add(false, false, true, (1.0 - pa) * (1.0 - accept_wrong) * u_w);
    t.add(
        false,
        false,
        false,
        (1.0 - pa) * (1.0 - accept_wrong) * (1.0 - u_w),
    );
    t
}

fn self_gated_table(
    joint: [f64; 4],
    ignore_given_correct: f64,
    use_given_wrong: f64,
) -> OutcomeTable {
    let [p11, p10, p01, p00] = joint;
    let (gc, gw) = (ignore_given_correct, use_given_wrong);
    let mut t = OutcomeTable::default();
    // user would be correct: ignore -> user's answer, use -> advice
    t.add(true, false, true, p11 * gc);
    t.add(true, true, true, p11 * (1.0 - gc));
    t.add(false, false, true, p01 * gc);
    t.add(false, true, false, p01 * (1.0 - gc));
    // user would be wrong: use -> advice, ignore -> wrong
    t.add(true, true, true, p10 * gw);
    t.add(true, false, false, p10 * (1.0 - gw));
    t.add(false, true, false, p00 * gw);
    t.add(false, false, false, p00 * (1.0 - gw));
    t
}

/// Accuracy of an attending user with arbitrary acceptance rates, without
/// building an [`EvalResult`]. The scenario's own policy is ignored.
pub fn discriminating_accuracy(scenario: &Scenario, accept_correct: f64, accept_wrong: f64) -> f64 {
    let pa = scenario.p_advice_correct();
    let (u_c, u_w) = post_reject_rates(scenario);
    accept_correct * pa
        + u_c * (1.0 - accept_correct) * pa
        + u_w * (1.0 - accept_wrong) * (1.0 - pa)
}

fn mode_notes(scenario: &Scenario) -> Vec<String> {
    let mut notes = Vec::new();
    if scenario.degradation_mode_setting().is_none() {
        notes.push(format!(
            "degradation_mode not set; using {} (default for {} dependency)",
            scenario.degradation_mode().name(),
            scenario.dependency().name()
        ));
    }
    notes
}

/// Indiscriminate attendance: accept with probability `p` whatever the advice.
///
/// Under the fixed-rate mode this is `pA·p + r·(1 − p)`. Other dependency
/// structures go through the same machinery as [`eq2_aided_accuracy`].
pub fn eq1_aided_accuracy(scenario: &Scenario) -> Result<EvalResult> {
    let ReliancePolicy::Indiscriminate { p_accept } = scenario.policy() else {
        return Err(Error::WrongPolicy {
            operation: "eq1_aided_accuracy",
            expected: "indiscriminate",
            found: scenario.policy().name(),
        });
    };
    let p = p_accept.value();
    Ok(EvalResult::from_table(
        attending_table(scenario, p, p),
        mode_notes(scenario),
    ))
}

/// Discriminating attendance:
/// `ac·pA + u_c·(1 − ac)·pA + u_w·(1 − aw)·(1 − pA)`.
pub fn eq2_aided_accuracy(scenario: &Scenario) -> Result<EvalResult> {
    let ReliancePolicy::Discriminating {
        p_accept_given_correct,
        p_accept_given_wrong,
    } = scenario.policy()
    else {
        return Err(Error::WrongPolicy {
            operation: "eq2_aided_accuracy",
            expected: "discriminating",
            found: scenario.policy().name(),
        });
    };
    Ok(EvalResult::from_table(
        attending_table(
            scenario,
            p_accept_given_correct.value(),
            p_accept_given_wrong.value(),
        ),
        mode_notes(scenario),
    ))
}

/// Self-gated reliance with the aid independent of the user:
/// `g_c·pU + pA·(1 − g_c)·pU + pA·g_w·(1 − pU)`.
///
/// Gating is free, so no degradation applies. Dependent structures have no
/// closed form here; [`crate::simulate::estimate_accuracy`] handles them.
pub fn eq3_self_gated_accuracy(scenario: &Scenario) -> Result<EvalResult> {
    let ReliancePolicy::SelfGated {
        p_ignore_given_user_correct,
        p_use_given_user_wrong,
    } = scenario.policy()
    else {
        return Err(Error::WrongPolicy {
            operation: "eq3_self_gated_accuracy",
            expected: "self_gated",
            found: scenario.policy().name(),
        });
    };
    if scenario.dependency() != DependencyModel::Independent {
        return Err(Error::NoClosedForm {
            dependency: scenario.dependency().name(),
        });
    }
    let table = self_gated_table(
        scenario.joint_cells(),
        p_ignore_given_user_correct.value(),
        p_use_given_user_wrong.value(),
    );
    Ok(EvalResult::from_table(table, Vec::new()))
}

/// Probability that at least one of the two solvers is correct:
/// `pA + pU − P(both correct)`.
pub fn potential_combined(aid: AidProfile, user: UserProfile, dep: DependencyModel) -> Probability {
    let pa = aid.p_advice_correct.value();
    let pu = user.p_unaided_correct.value();
    Probability::saturating(pa + pu - p_both_correct(aid, user, dep))
}

/// Analytic accuracy for whatever policy the scenario carries.
pub fn evaluate(scenario: &Scenario) -> Result<EvalResult> {
    let mut result = match scenario.policy() {
        ReliancePolicy::RoutineAccept => {
            let pa = scenario.p_advice_correct();
            let mut t = OutcomeTable::default();
            t.add(true, true, true, pa);
            t.add(false, true, false, 1.0 - pa);
            EvalResult::from_table(t, Vec::new())
        }
        ReliancePolicy::RoutineIgnore => {
            let [p11, p10, p01, p00] = scenario.joint_cells();
            let mut t = OutcomeTable::default();
            t.add(true, false, true, p11);
            t.add(true, false, false, p10);
            t.add(false, false, true, p01);
            t.add(false, false, false, p00);
            let mut r = EvalResult::from_table(t, Vec::new());
            r.p_correct_aided = scenario.user().p_unaided_correct;
            r
        }
        ReliancePolicy::Indiscriminate { .. } => eq1_aided_accuracy(scenario)?,
        ReliancePolicy::Discriminating { .. } => eq2_aided_accuracy(scenario)?,
        ReliancePolicy::SelfGated { .. } => eq3_self_gated_accuracy(scenario)?,
    };
    result.notes.extend(scenario.warnings());
    Ok(result)
}

/// One row of a [`PolicyComparison`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyOutcome {
    pub policy: String,
    pub result: EvalResult,
    /// `best − this`, never negative.
    pub margin_to_best: f64,
}

/// The configured policy side by side with the two routine policies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyComparison {
    /// In tie-break precedence order: routine_ignore, routine_accept, configured.
    pub policies: Vec<PolicyOutcome>,
    pub best_policy: String,
    /// Every policy within [`TIE_TOLERANCE`] of the best, when more than one.
    #[serde(default)]
    pub tied: Vec<String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl PolicyComparison {
    pub fn get(&self, policy: &str) -> Option<&PolicyOutcome> {
        self.policies.iter().find(|p| p.policy == policy)
    }

    pub fn best(&self) -> &PolicyOutcome {
        self.get(&self.best_policy).expect("best policy is listed")
    }
}

/// Evaluates the configured policy against routine acceptance and routine
/// ignoring. Ties resolve to routine_ignore, then routine_accept, then the
/// configured policy.
pub fn compare_policies(scenario: &Scenario) -> Result<PolicyComparison> {
    let mut candidates = vec![ReliancePolicy::RoutineIgnore, ReliancePolicy::RoutineAccept];
    let configured = scenario.policy();
    if !candidates.contains(&configured) {
        candidates.push(configured);
    }

    let mut evaluated = Vec::with_capacity(candidates.len());
    for policy in candidates {
        let result = evaluate(&scenario.with_policy(policy))?;
        evaluated.push((policy.name().to_string(), result));
    }

    let max = evaluated
        .iter()
        .map(|(_, r)| r.p_correct_aided.value())
        .fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<String> = evaluated
        .iter()
        .filter(|(_, r)| r.p_correct_aided.value() >= max - TIE_TOLERANCE)
        .map(|(name, _)| name.clone())
        .collect();
    let best_policy = tied[0].clone();

    let mut notes = scenario.warnings();
    let tied = if tied.len() > 1 {
        notes.push(format!(
            "tie within {TIE_TOLERANCE:e} among {}; resolved by precedence \
             routine_ignore > routine_accept > configured policy",
            tied.join(", ")
        ));
        tied
    } else {
        Vec::new()
    };

    let policies = evaluated
        .into_iter()
        .map(|(policy, result)| PolicyOutcome {
            margin_to_best: (max - result.p_correct_aided.value()).max(0.0),
            policy,
            result,
        })
        .collect();

    Ok(PolicyComparison {
        policies,
        best_policy,
        tied,
        notes,
    })
}

/// Smallest symmetric discrimination `d` (accept correct advice with
/// probability `d`, wrong advice with `1 − d`) at which discriminating
/// attendance is at least as accurate as the better routine policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakeven {
    /// `None` when even perfect discrimination (`d = 1`) falls short.
    #[serde(with = "d_star_repr")]
    pub d_star: Option<f64>,
    /// `max(pA, pU)`.
    pub target: f64,
    pub eq2_at_d_star: Option<f64>,
    /// Accuracy at `d = 1`, the best any symmetric discrimination can reach.
    pub eq2_at_full_discrimination: f64,
}

mod d_star_repr {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    const UNATTAINABLE: &str = "unattainable";

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Value(f64),
        Label(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(d) => Repr::Value(*d),
            None => Repr::Label(UNATTAINABLE.into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Value(v) => Ok(Some(v)),
            Repr::Label(l) if l == UNATTAINABLE => Ok(None),
            Repr::Label(l) => Err(serde::de::Error::custom(format!(
                "expected a number or \"{UNATTAINABLE}\", got \"{l}\""
            ))),
        }
    }
}

/// Solves for the break-even discrimination in closed form. Accuracy is
/// affine in `d`, so two evaluations pin the line.
pub fn breakeven_discrimination(
    aid: AidProfile,
    user: UserProfile,
    dep: DependencyModel,
    mode: Option<DegradationMode>,
) -> Result<Breakeven> {
    let scenario = Scenario::new(aid, user, ReliancePolicy::RoutineAccept, dep, mode)?;
    let at = |d: f64| discriminating_accuracy(&scenario, d, 1.0 - d);

    let target = scenario
        .p_advice_correct()
        .max(scenario.p_unaided_correct());
    let intercept = at(0.0);
    let slope = at(1.0) - intercept;
    let at_half = at(0.5);
    let at_full = at(1.0);

    let d_star = if at_half >= target - TIE_TOLERANCE {
        Some(0.5)
    } else if at_full < target - TIE_TOLERANCE {
        None
    } else {
        Some(((target - intercept) / slope).clamp(0.5, 1.0))
    };

    Ok(Breakeven {
        d_star,
        target,
        eq2_at_d_star: d_star.map(at),
        eq2_at_full_discrimination: at_full,
    })
}
