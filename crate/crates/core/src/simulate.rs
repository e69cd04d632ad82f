//! Seeded Monte Carlo over individual decision trials.
//!
//! Each trial draws the pair (advice correct, user would be correct) from
//! the scenario's joint distribution, then plays out the reliance policy.
//! The engine shares no code path with [`crate::analytic`] beyond the
//! joint-cell masses, so it serves as an independent check on the closed
//! forms and covers combinations they do not.
//!
//! # Reproducibility
//!
//! Trials are split across `shards`; shard `i` gets `n / shards` trials plus
//! one more if `i < n % shards`, and its own [`ChaCha8Rng`] seeded with
//! [`shard_seed`]`(seed, i)`. For a fixed `(scenario, n_trials, seed,
//! shards)` the estimate is bit-identical across runs and thread counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    cell_flags, cell_index, DegradationMode, Probability, ReliancePolicy, Scenario,
};

/// A single simulated decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub advice_correct: bool,
    pub user_would_be_correct: bool,
    /// The user deliberated over the advice (attending policies only).
    pub attended: bool,
    pub accepted_or_used: bool,
    pub final_correct: bool,
}

/// Per-scenario constants for drawing trials.
#[derive(Debug, Clone, Copy)]
pub struct TrialSampler {
    // cumulative masses of (A,U) = (1,1), (1,0), (0,1); (0,0) takes the rest
    cum: [f64; 3],
    policy: ReliancePolicy,
    mode: DegradationMode,
    post_reject: f64,
}

impl TrialSampler {
    pub fn new(scenario: &Scenario) -> Self {
        let [p11, p10, p01, _] = scenario.joint_cells();
        TrialSampler {
            cum: [p11, p11 + p10, p11 + p10 + p01],
            policy: scenario.policy(),
            mode: scenario.degradation_mode(),
            post_reject: scenario.p_post_reject_correct(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> TrialOutcome {
        let u: f64 = rng.gen();
        let (advice_correct, user_would_be_correct) = if u < self.cum[0] {
            (true, true)
        } else if u < self.cum[1] {
            (true, false)
        } else if u < self.cum[2] {
            (false, true)
        } else {
            (false, false)
        };

        let (attended, accepted_or_used, final_correct) = match self.policy {
            ReliancePolicy::RoutineAccept => (false, true, advice_correct),
            ReliancePolicy::RoutineIgnore => (false, false, user_would_be_correct),
            ReliancePolicy::Indiscriminate { p_accept } => self.attend(
                rng,
                advice_correct,
                user_would_be_correct,
                p_accept,
                p_accept,
            ),
            ReliancePolicy::Discriminating {
                p_accept_given_correct,
                p_accept_given_wrong,
            } => self.attend(
                rng,
                advice_correct,
                user_would_be_correct,
                p_accept_given_correct,
                p_accept_given_wrong,
            ),
            ReliancePolicy::SelfGated {
                p_ignore_given_user_correct,
                p_use_given_user_wrong,
            } => {
                let use_aid = if user_would_be_correct {
                    !bernoulli(rng, p_ignore_given_user_correct.value())
                } else {
                    bernoulli(rng, p_use_given_user_wrong.value())
                };
                let final_correct = if use_aid {
                    advice_correct
                } else {
                    user_would_be_correct
                };
                (false, use_aid, final_correct)
            }
        };

        TrialOutcome {
            advice_correct,
            user_would_be_correct,
            attended,
            accepted_or_used,
            final_correct,
        }
    }

    fn attend<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        advice_correct: bool,
        user_would_be_correct: bool,
        accept_correct: Probability,
        accept_wrong: Probability,
    ) -> (bool, bool, bool) {
        let p_accept = if advice_correct {
            accept_correct
        } else {
            accept_wrong
        };
        if bernoulli(rng, p_accept.value()) {
            return (true, true, advice_correct);
        }
        let final_correct = match self.mode {
            DegradationMode::FixedRate => bernoulli(rng, self.post_reject),
            DegradationMode::ConditionalFromJoint => user_would_be_correct,
        };
        (true, false, final_correct)
    }
}

#[inline]
fn bernoulli<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    rng.gen::<f64>() < p
}

/// Draws one trial.
pub fn sample_trial<R: Rng + ?Sized>(scenario: &Scenario, rng: &mut R) -> TrialOutcome {
    TrialSampler::new(scenario).sample(rng)
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of shard `index`: `mix64(seed ^ mix64(index))`, with `mix64` the
/// SplitMix64 step.
pub fn shard_seed(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index))
}

/// Trial counts over the 8 (advice correct, accepted/used, final correct) cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<OutcomeCount>", try_from = "Vec<OutcomeCount>")]
pub struct OutcomeCounts {
    pub cells: [u64; 8],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeCount {
    pub advice_correct: bool,
    pub accepted: bool,
    pub final_correct: bool,
    pub count: u64,
}

impl OutcomeCounts {
    pub fn get(&self, advice_correct: bool, accepted: bool, final_correct: bool) -> u64 {
        self.cells[cell_index(advice_correct, accepted, final_correct)]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }

    fn sum_where(&self, pred: impl Fn(usize) -> bool) -> u64 {
        (0..8).filter(|&i| pred(i)).map(|i| self.cells[i]).sum()
    }

    pub fn final_correct(&self) -> u64 {
        self.sum_where(|i| i & 1 == 1)
    }

    pub fn accepted(&self) -> u64 {
        self.sum_where(|i| i & 2 == 2)
    }

    pub fn advice_correct(&self) -> u64 {
        self.sum_where(|i| i & 4 == 4)
    }
}

impl From<OutcomeCounts> for Vec<OutcomeCount> {
    fn from(c: OutcomeCounts) -> Self {
        (0..8)
            .map(|i| {
                let (advice_correct, accepted, final_correct) = cell_flags(i);
                OutcomeCount {
                    advice_correct,
                    accepted,
                    final_correct,
                    count: c.cells[i],
                }
            })
            .collect()
    }
}

impl TryFrom<Vec<OutcomeCount>> for OutcomeCounts {
    type Error = String;

    fn try_from(v: Vec<OutcomeCount>) -> Result<Self, Self::Error> {
        if v.len() != 8 {
            return Err(format!("expected 8 outcome cells, got {}", v.len()));
        }
        let mut out = OutcomeCounts::default();
        let mut seen = [false; 8];
        for c in v {
            let i = cell_index(c.advice_correct, c.accepted, c.final_correct);
            if std::mem::replace(&mut seen[i], true) {
                return Err(format!("duplicate outcome cell {i}"));
            }
            out.cells[i] = c.count;
        }
        Ok(out)
    }
}

/// Monte Carlo estimate of aided accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimEstimate {
    pub p_hat: Probability,
    pub n_trials: u64,
    /// `sqrt(p_hat (1 - p_hat) / n_trials)`.
    pub std_err: f64,
    /// Normal-approximation 95% interval, clipped to `[0, 1]`.
    pub ci95: (f64, f64),
    pub seed: u64,
    pub shards: u64,
    pub outcome_counts: OutcomeCounts,
    pub user_would_be_correct_count: u64,
    pub attended_count: u64,
}

impl SimEstimate {
    /// Binomial standard error of an arbitrary empirical frequency from this run.
    pub fn std_err_of(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.n_trials as f64).sqrt()
    }

    pub fn frequency(&self, count: u64) -> f64 {
        count as f64 / self.n_trials as f64
    }
}

#[derive(Default)]
struct Tally {
    cells: [u64; 8],
    user_correct: u64,
    attended: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.cells.iter_mut().zip(other.cells) {
            *a += b;
        }
        self.user_correct += other.user_correct;
        self.attended += other.attended;
        self
    }
}

fn run_shard(sampler: &TrialSampler, trials: u64, seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    for _ in 0..trials {
        let t = sampler.sample(&mut rng);
        tally.cells[cell_index(t.advice_correct, t.accepted_or_used, t.final_correct)] += 1;
        tally.user_correct += t.user_would_be_correct as u64;
        tally.attended += t.attended as u64;
    }
    tally
}

/// Runs `n_trials` simulated decisions split over `shards` independent streams.
pub fn estimate_accuracy(
    scenario: &Scenario,
    n_trials: u64,
    seed: u64,
    shards: u64,
) -> Result<SimEstimate> {
    if n_trials == 0 {
        return Err(Error::InvalidArgument("n_trials must be at least 1".into()));
    }
    if shards == 0 {
        return Err(Error::InvalidArgument("shards must be at least 1".into()));
    }

    let sampler = TrialSampler::new(scenario);
    let base = n_trials / shards;
    let extra = n_trials % shards;
    let tally = (0..shards)
        .into_par_iter()
        .map(|i| {
            let trials = base + u64::from(i < extra);
            run_shard(&sampler, trials, shard_seed(seed, i))
        })
        .reduce(Tally::default, Tally::merge);

    let outcome_counts = OutcomeCounts { cells: tally.cells };
    let n = n_trials as f64;
    let p_hat = outcome_counts.final_correct() as f64 / n;
    let std_err = (p_hat * (1.0 - p_hat) / n).sqrt();
    let half = 1.959_963_984_540_054 * std_err;

    Ok(SimEstimate {
        p_hat: Probability::saturating(p_hat),
        n_trials,
        std_err,
        ci95: ((p_hat - half).max(0.0), (p_hat + half).min(1.0)),
        seed,
        shards,
        outcome_counts,
        user_would_be_correct_count: tally.user_correct,
        attended_count: tally.attended,
    })
}
