//! One-dimensional parameter sweeps and exact sensitivities.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::evaluate;
use crate::error::{Error, Result};
use crate::model::{
    validate_scenario, DegradationMode, DependencyModel, Probability, RawScenario, ReliancePolicy,
    Scenario,
};

/// Every numeric leaf of the scenario JSON that can be swept.
pub const PARAMETER_PATHS: &[&str] = &[
    "aid.p_advice_correct",
    "user.p_unaided_correct",
    "user.p_post_reject_correct",
    "policy.p_accept",
    "policy.p_accept_given_correct",
    "policy.p_accept_given_wrong",
    "policy.p_ignore_given_user_correct",
    "policy.p_use_given_user_wrong",
    "dependency.p_both_correct",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: Scenario,
    /// Dot-path into the scenario JSON, e.g. `policy.p_accept`.
    pub parameter_path: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

/// Analytic accuracy along a sweep, with the two routine-policy reference lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSeries {
    pub parameter_path: String,
    pub values: Vec<f64>,
    pub accuracies: Vec<Probability>,
    /// Unaided accuracy `pU` at each point.
    pub unaided_reference: Vec<f64>,
    /// Routine-acceptance accuracy `pA` at each point.
    pub routine_accept_reference: Vec<f64>,
}

impl SweepSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest distance between a point and the chord joining the endpoints.
    pub fn max_chord_deviation(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let (x0, x1) = (self.values[0], self.values[n - 1]);
        let (y0, y1) = (self.accuracies[0].value(), self.accuracies[n - 1].value());
        if x1 == x0 {
            return 0.0;
        }
        self.values
            .iter()
            .zip(&self.accuracies)
            .map(|(&x, y)| (y.value() - (y0 + (y1 - y0) * (x - x0) / (x1 - x0))).abs())
            .fold(0.0, f64::max)
    }

    /// Parameter values where the piecewise-linear series meets `level`.
    /// Sign changes between grid points are refined by bisection.
    pub fn crossings(&self, level: f64) -> Vec<f64> {
        let xs = &self.values;
        let ys: Vec<f64> = self.accuracies.iter().map(|p| p.value() - level).collect();
        let mut out = Vec::new();
        for i in 0..xs.len().saturating_sub(1) {
            let (x0, x1, y0, y1) = (xs[i], xs[i + 1], ys[i], ys[i + 1]);
            if y0 == 0.0 {
                out.push(x0);
                continue;
            }
            if y0 * y1 >= 0.0 {
                continue;
            }
            let interp = |x: f64| y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            let (mut lo, mut hi) = (x0, x1);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if (interp(mid) < 0.0) == (y0 < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        if let (Some(&x), Some(&y)) = (xs.last(), ys.last()) {
            if y == 0.0 && xs.len() > 1 {
                out.push(x);
            }
        }
        out
    }
}

/// Inclusive, equally spaced grid of `steps` points from `from` to `to`.
pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    to
                } else {
                    from + (to - from) * (i as f64 / (steps - 1) as f64)
                }
            })
            .collect(),
    }
}

fn navigate<'a>(root: &'a mut serde_json::Value, path: &str) -> Result<&'a mut serde_json::Value> {
    if !PARAMETER_PATHS.contains(&path) {
        return Err(Error::UnknownParameter(path.to_string()));
    }
    let (section, leaf) = path.split_once('.').expect("known paths are dotted");
    let node = &mut root[section];
    let kind = node
        .get("type")
        .and_then(|t| t.as_str())
        .map(|t| format!("{section} type is {t}"))
        .unwrap_or_default();
    match node.get_mut(leaf) {
        Some(v) if v.is_number() => Ok(v),
        _ => Err(Error::ParameterNotApplicable {
            path: path.to_string(),
            reason: kind,
        }),
    }
}

/// Current value of the parameter at `path`.
pub fn parameter_value(scenario: &Scenario, path: &str) -> Result<f64> {
    let mut json = serde_json::to_value(scenario.to_raw())?;
    let v = navigate(&mut json, path)?;
    Ok(v.as_f64().expect("numeric leaf"))
}

/// Copy of `scenario` with the parameter at `path` set to `value`, revalidated.
pub fn with_parameter(scenario: &Scenario, path: &str, value: f64) -> Result<Scenario> {
    let mut json = serde_json::to_value(scenario.to_raw())?;
    let slot = navigate(&mut json, path)?;
    *slot = serde_json::Number::from_f64(value)
        .map(serde_json::Value::Number)
        .ok_or_else(|| Error::InvalidArgument(format!("{value} is not a finite number")))?;
    let raw: RawScenario = serde_json::from_value(json)?;
    validate_scenario(&raw).map_err(|report| Error::InvalidSweepValue {
        path: path.to_string(),
        value,
        report,
    })
}

/// Evaluates the analytic accuracy over the sweep grid. Every grid point is
/// validated before anything is evaluated.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepSeries> {
    if spec.steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "a sweep needs at least 2 steps, got {}",
            spec.steps
        )));
    }
    if !spec.from.is_finite() || !spec.to.is_finite() {
        return Err(Error::InvalidArgument("sweep bounds must be finite".into()));
    }

    let values = grid(spec.from, spec.to, spec.steps);
    let scenarios = values
        .iter()
        .map(|&v| with_parameter(&spec.base, &spec.parameter_path, v))
        .collect::<Result<Vec<_>>>()?;

    let accuracies = scenarios
        .par_iter()
        .map(|s| evaluate(s).map(|r| r.p_correct_aided))
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepSeries {
        parameter_path: spec.parameter_path.clone(),
        unaided_reference: scenarios.iter().map(|s| s.p_unaided_correct()).collect(),
        routine_accept_reference: scenarios.iter().map(|s| s.p_advice_correct()).collect(),
        values,
        accuracies,
    })
}

/// Exact partial derivatives of the analytic accuracy with respect to each
/// free parameter of the scenario's policy, keyed by parameter path.
///
/// All the closed forms are multilinear, so the partials are hand-derived
/// rather than approximated. Parameters that do not enter the active
/// formula (e.g. `p_post_reject_correct` under self-gating) are omitted.
pub fn sensitivity(scenario: &Scenario) -> Result<BTreeMap<String, f64>> {
    // fails exactly when the analytic evaluation fails
    evaluate(scenario)?;

    let pa = scenario.p_advice_correct();
    let pu = scenario.p_unaided_correct();
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: f64| {
        out.insert(k.to_string(), v);
    };

    match scenario.policy() {
        ReliancePolicy::RoutineAccept => put("aid.p_advice_correct", 1.0),
        ReliancePolicy::RoutineIgnore => put("user.p_unaided_correct", 1.0),
        ReliancePolicy::SelfGated {
            p_ignore_given_user_correct,
            p_use_given_user_wrong,
        } => {
            let (gc, gw) = (
                p_ignore_given_user_correct.value(),
                p_use_given_user_wrong.value(),
            );
            put("aid.p_advice_correct", (1.0 - gc) * pu + gw * (1.0 - pu));
            put("user.p_unaided_correct", gc + pa * (1.0 - gc) - pa * gw);
            put("policy.p_ignore_given_user_correct", pu * (1.0 - pa));
            put("policy.p_use_given_user_wrong", pa * (1.0 - pu));
        }
        policy
        @ (ReliancePolicy::Indiscriminate { .. } | ReliancePolicy::Discriminating { .. }) => {
            let (ac, aw) = policy.acceptance_rates().expect("attending policy");
            let (ac, aw) = (ac.value(), aw.value());

            // d/d(ac) and d/d(aw), before collapsing for the indiscriminate case
            let (d_ac, d_aw) = match scenario.degradation_mode() {
                DegradationMode::FixedRate => {
                    let r = scenario.p_post_reject_correct();
                    put("aid.p_advice_correct", ac + r * (1.0 - ac) - r * (1.0 - aw));
                    put(
                        "user.p_post_reject_correct",
                        (1.0 - ac) * pa + (1.0 - aw) * (1.0 - pa),
                    );
                    (pa * (1.0 - r), -(1.0 - pa) * r)
                }
                DegradationMode::ConditionalFromJoint => {
                    // accuracy = ac·pA + (1 − ac)·p11 + (1 − aw)·(pU − p11)
                    let p11 = scenario.p_both_correct();
                    match scenario.dependency() {
                        DependencyModel::Independent => {
                            put(
                                "aid.p_advice_correct",
                                ac + (1.0 - ac) * pu - (1.0 - aw) * pu,
                            );
                            put(
                                "user.p_unaided_correct",
                                (1.0 - ac) * pa + (1.0 - aw) * (1.0 - pa),
                            );
                        }
                        DependencyModel::Joint { .. } => {
                            put("aid.p_advice_correct", ac);
                            put("user.p_unaided_correct", 1.0 - aw);
                            put("dependency.p_both_correct", aw - ac);
                        }
                        DependencyModel::Dominant => {
                            put("aid.p_advice_correct", ac);
                            put("user.p_unaided_correct", 1.0 - ac);
                        }
                    }
                    (pa - p11, -(pu - p11))
                }
            };
            match policy {
                ReliancePolicy::Indiscriminate { .. } => put("policy.p_accept", d_ac + d_aw),
                _ => {
                    put("policy.p_accept_given_correct", d_ac);
                    put("policy.p_accept_given_wrong", d_aw);
                }
            }
        }
    }
    Ok(out)
}

/// Finite-difference estimate of the accuracy's partial derivative along
/// `path`. Central when both neighbours are valid scenarios, one-sided
/// otherwise.
pub fn finite_difference(scenario: &Scenario, path: &str, step: f64) -> Result<f64> {
    let x = parameter_value(scenario, path)?;
    let eval = |v: f64| -> Option<f64> {
        let s = with_parameter(scenario, path, v).ok()?;
        evaluate(&s).ok().map(|r| r.p_correct_aided.value())
    };
    let here = evaluate(scenario)?.p_correct_aided.value();
    match (eval(x + step), eval(x - step)) {
        (Some(up), Some(down)) => Ok((up - down) / (2.0 * step)),
        (Some(up), None) => Ok((up - here) / step),
        (None, Some(down)) => Ok((here - down) / step),
        (None, None) => Err(Error::InvalidArgument(format!(
            "no valid neighbour of {path} = {x} at step {step}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{RawAid, RawDependency, RawPolicy, RawUser};

    fn scenario(
        pa: f64,
        pu: f64,
        r: f64,
        policy: RawPolicy,
        dependency: RawDependency,
    ) -> Scenario {
        validate_scenario(&RawScenario {
            aid: RawAid {
                p_advice_correct: pa,
            },
            user: RawUser {
                p_unaided_correct: pu,
                p_post_reject_correct: r,
            },
            policy,
            dependency,
            degradation_mode: None,
        })
        .unwrap()
    }

    fn base() -> Scenario {
        scenario(
            0.7,
            0.6,
            0.4,
            RawPolicy::Indiscriminate { p_accept: 0.5 },
            RawDependency::Independent,
        )
    }

    fn spec(base: Scenario, path: &str, from: f64, to: f64, steps: usize) -> SweepSpec {
        SweepSpec {
            base,
            parameter_path: path.into(),
            from,
            to,
            steps,
        }
    }

    #[test]
    fn grid_is_inclusive() {
        let g = grid(0.0, 1.0, 11);
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert!((g[3] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn p_accept_sweep_is_affine() {
        let s = run_sweep(&spec(base(), "policy.p_accept", 0.0, 1.0, 11)).unwrap();
        assert_eq!(s.len(), 11);
        for (i, a) in s.accuracies.iter().enumerate() {
            // eq1 by hand: pA p + r (1 - p)
            let p = i as f64 / 10.0;
            assert!((a.value() - (0.7 * p + 0.4 * (1.0 - p))).abs() < 1e-12);
        }
        assert!((s.accuracies[0].value() - 0.4).abs() < 1e-12);
        assert!((s.accuracies[10].value() - 0.7).abs() < 1e-12);
        assert!(s.max_chord_deviation() < 1e-12);
        assert!(s.unaided_reference.iter().all(|&u| u == 0.6));
        assert!(s.routine_accept_reference.iter().all(|&u| u == 0.7));
    }

    #[test]
    fn aid_sweep_under_routine_accept_is_identity() {
        let b = base().with_policy(ReliancePolicy::RoutineAccept);
        let s = run_sweep(&spec(b, "aid.p_advice_correct", 0.0, 1.0, 2)).unwrap();
        assert_eq!(s.accuracies, [Probability::ZERO, Probability::ONE]);
    }

    #[test]
    fn inapplicable_path_is_rejected() {
        let err =
            run_sweep(&spec(base(), "policy.p_accept_given_correct", 0.0, 1.0, 3)).unwrap_err();
        assert!(matches!(err, Error::ParameterNotApplicable { .. }), "{err}");
        let err = run_sweep(&spec(base(), "policy.bogus", 0.0, 1.0, 3)).unwrap_err();
        assert!(matches!(err, Error::UnknownParameter(_)));
    }

    #[test]
    fn first_invalid_grid_value_is_named() {
        let b = scenario(
            0.7,
            0.6,
            0.4,
            RawPolicy::Discriminating {
                p_accept_given_correct: 0.7,
                p_accept_given_wrong: 0.3,
            },
            RawDependency::Joint {
                p_both_correct: 0.42,
            },
        );
        let err = run_sweep(&spec(b, "dependency.p_both_correct", 0.0, 1.0, 11)).unwrap_err();
        match err {
            Error::InvalidSweepValue { value, .. } => assert_eq!(value, 0.0),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn too_few_steps() {
        assert!(matches!(
            run_sweep(&spec(base(), "policy.p_accept", 0.0, 1.0, 1)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn crossing_of_unaided_line() {
        let s = run_sweep(&spec(base(), "policy.p_accept", 0.0, 1.0, 101)).unwrap();
        let c = s.crossings(0.6);
        assert_eq!(c.len(), 1);
        assert!((c[0] - (0.6 - 0.4) / (0.7 - 0.4)).abs() < 1e-9);
    }

    #[test]
    fn sensitivity_eq1() {
        let d = sensitivity(&base()).unwrap();
        assert!((d["policy.p_accept"] - 0.3).abs() < 1e-12);
        assert!((d["aid.p_advice_correct"] - 0.5).abs() < 1e-12);
        assert!((d["user.p_post_reject_correct"] - 0.5).abs() < 1e-12);
        let fd = finite_difference(&base(), "policy.p_accept", 1e-6).unwrap();
        assert!((fd - 0.3).abs() < 1e-6);
    }

    #[test]
    fn sensitivity_eq3() {
        let s = scenario(
            0.7,
            0.6,
            0.4,
            RawPolicy::SelfGated {
                p_ignore_given_user_correct: 0.7,
                p_use_given_user_wrong: 0.7,
            },
            RawDependency::Independent,
        );
        let d = sensitivity(&s).unwrap();
        assert!((d["aid.p_advice_correct"] - 0.46).abs() < 1e-12);
        let fd = finite_difference(&s, "aid.p_advice_correct", 1e-6).unwrap();
        assert!((fd - 0.46).abs() < 1e-6);
        assert!(!d.contains_key("user.p_post_reject_correct"));
    }

    #[test]
    fn parameter_roundtrip() {
        let s = with_parameter(&base(), "user.p_post_reject_correct", 0.25).unwrap();
        assert_eq!(
            parameter_value(&s, "user.p_post_reject_correct").unwrap(),
            0.25
        );
        assert_eq!(parameter_value(&s, "policy.p_accept").unwrap(), 0.5);
    }
}
