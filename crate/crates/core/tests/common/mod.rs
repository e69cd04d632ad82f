#![allow(dead_code)]

use std::path::PathBuf;

use aidcheck::model::{RawAid, RawDependency, RawPolicy, RawScenario, RawUser};
use aidcheck::{validate_scenario, DegradationMode, Scenario};

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

pub fn load(name: &str) -> Scenario {
    let text = std::fs::read_to_string(scenario_path(name)).unwrap();
    Scenario::from_json(&text).unwrap()
}

pub fn build(
    pa: f64,
    pu: f64,
    r: f64,
    policy: RawPolicy,
    dependency: RawDependency,
    mode: Option<DegradationMode>,
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
        degradation_mode: mode,
    })
    .unwrap_or_else(|e| panic!("{e}"))
}

pub fn discriminating(ac: f64, aw: f64) -> RawPolicy {
    RawPolicy::Discriminating {
        p_accept_given_correct: ac,
        p_accept_given_wrong: aw,
    }
}

pub fn self_gated(gc: f64, gw: f64) -> RawPolicy {
    RawPolicy::SelfGated {
        p_ignore_given_user_correct: gc,
        p_use_given_user_wrong: gw,
    }
}

// Hand-written closed forms used as oracles. They follow the textbook
// algebra directly and share nothing with the outcome-table code path.

pub fn eq1_by_hand(pa: f64, p: f64, r: f64) -> f64 {
    pa * p + r * (1.0 - p)
}

pub fn eq2_by_hand(pa: f64, ac: f64, aw: f64, u_c: f64, u_w: f64) -> f64 {
    ac * pa + u_c * (1.0 - ac) * pa + u_w * (1.0 - aw) * (1.0 - pa)
}

pub fn eq3_by_hand(pa: f64, pu: f64, gc: f64, gw: f64) -> f64 {
    gc * pu + pa * (1.0 - gc) * pu + pa * gw * (1.0 - pu)
}

/// Grid-search break-even: first d on {0, 0.001, .., 1} with d >= 0.5 at
/// which the fixed-rate independent accuracy reaches max(pA, pU).
pub fn grid_breakeven(pa: f64, pu: f64, r: f64) -> Option<f64> {
    let target = pa.max(pu);
    (500..=1000)
        .map(|i| i as f64 / 1000.0)
        .find(|&d| eq2_by_hand(pa, d, 1.0 - d, r, r) >= target - 1e-12)
}
