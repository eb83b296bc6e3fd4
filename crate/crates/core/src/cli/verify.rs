//! The seeded suite behind `arithstat verify`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{Fault, RunConfig};
use crate::continuity::{closure_checks, continuity_battery, uniform_limit_check, ContinuityReport, RealFunction};
use crate::density::{asc_verdict, block_density, Axis, EpsilonGrid, Outcome, VerdictPolicy};
use crate::error::{Error, Result};
use crate::kernel::{GeneratorSpec, SeqSample, SpikeSupport, WitnessModulus};
use crate::lacunary::{coarse_block_density_from_fine, LacunaryScheme, SchemeGenerator};
use crate::theorems::families::{materialize, standard_family, RandomInstances};
use crate::theorems::{
    check_delta_transfer, check_lac1_bound, check_markov_step, check_sum_closure, describe_sequence,
    run_inclusion_experiment, scalar_closure_against, CheckReport, FamilyMember, Hypothesis, InclusionExperiment,
    RatioBounds,
};

/// Longest random sample drawn by the suites.
const MAX_LEN: u64 = 10_000;
const MIN_LEN: u64 = 16;
/// Failing reports kept per suite.
const KEEP_FAILURES: usize = 5;
const AGGREGATION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    ScalarClosure,
    SumClosure,
    MarkovStep,
    Lac1Bound,
    RefinementAggregation,
    DeltaTransfer,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::ScalarClosure,
        Suite::SumClosure,
        Suite::MarkovStep,
        Suite::Lac1Bound,
        Suite::RefinementAggregation,
        Suite::DeltaTransfer,
    ];

    /// Instances run for a base count; the scheme-pair suites run half.
    pub fn instances(self, base: usize) -> usize {
        match self {
            Suite::RefinementAggregation | Suite::DeltaTransfer => base.div_ceil(2),
            _ => base,
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub instances: usize,
    /// Individual checks; one instance may check several axes or blocks.
    pub checks: usize,
    pub failed: usize,
    pub failures: Vec<CheckReport>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn tally(suite: Suite, instances: usize, reports: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut s = SuiteSummary { suite, instances, checks: 0, failed: 0, failures: Vec::new() };
        for r in reports {
            s.checks += 1;
            if !r.passed() {
                s.failed += 1;
                if s.failures.len() < KEEP_FAILURES {
                    s.failures.push(r);
                }
            }
        }
        s
    }
}

fn instance_rng(seed: u64, suite: Suite, i: usize) -> RandomInstances {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite.stream() << 32) | i as u64);
    RandomInstances::new(rng)
}

/// Adds a one-index block at the start of the first coarse block of length >= 2.
fn with_singleton(coarse: &LacunaryScheme, fine: &LacunaryScheme) -> LacunaryScheme {
    let Some(b) = coarse.blocks().find(|b| b.len() >= 2) else {
        return fine.clone();
    };
    let mut points = fine.points().to_vec();
    if !fine.contains_point(b.start + 1) {
        points.push(b.start + 1);
        points.sort_unstable();
    }
    LacunaryScheme::new(points).expect("adding a point keeps the scheme valid")
}

fn suite_instance(
    suite: Suite,
    rnd: &mut RandomInstances,
    i: usize,
    policy: &VerdictPolicy,
    fault: Option<Fault>,
) -> Result<Vec<CheckReport>> {
    let len = rnd.len(MIN_LEN, MAX_LEN);
    let x = rnd.sample(len);
    let n = rnd.n(policy.n_max);
    let eps = rnd.epsilon(policy.grid.values());
    let scheme = rnd.scheme(len);
    let blocks = 1..=scheme.blocks_within(len);
    match suite {
        Suite::ScalarClosure => {
            let c = rnd.scale_factor();
            let rhs = if fault == Some(Fault::Scaling) { eps } else { eps / c.abs() };
            [Axis::Prefix, Axis::Block]
                .into_iter()
                .map(|axis| scalar_closure_against(&x, c, n, eps, axis, Some(&scheme), rhs))
                .collect()
        }
        Suite::SumClosure => {
            let y = rnd.sample(len);
            [Axis::Prefix, Axis::Block]
                .into_iter()
                .map(|axis| check_sum_closure(&x, &y, n, eps, axis, Some(&scheme)))
                .collect()
        }
        Suite::MarkovStep => blocks.map(|r| check_markov_step(&x, &scheme, n, eps, r)).collect(),
        Suite::Lac1Bound => blocks.map(|r| check_lac1_bound(&x, &scheme, n, eps, r)).collect(),
        Suite::RefinementAggregation => {
            let fine = rnd.refinement(&scheme, len);
            blocks
                .map(|r| {
                    let via_fine = coarse_block_density_from_fine(&x, &scheme, &fine, n, eps, r)?;
                    let direct = block_density(&x, &scheme, n, eps, r)?;
                    let instance = json!({
                        "sequence": describe_sequence(&x), "coarse": scheme.points(), "fine": fine.points(),
                        "n": n, "epsilon": eps, "block": r,
                    });
                    let failure = ((via_fine - direct).abs() > AGGREGATION_TOL)
                        .then(|| json!({ "from_fine": via_fine, "direct": direct }));
                    Ok(CheckReport::new("refinement_aggregation", instance, failure))
                })
                .collect()
        }
        Suite::DeltaTransfer => {
            // every tenth instance is a self-refinement (δ = 1), the next one has a singleton block
            let fine = match i % 10 {
                0 => scheme.clone(),
                1 => with_singleton(&scheme, &rnd.refinement(&scheme, len)),
                _ => rnd.refinement(&scheme, len),
            };
            Ok(vec![check_delta_transfer(&x, &scheme, &fine, n, eps)?])
        }
    }
}

/// Runs `instances` seeded instances of one suite.
pub fn run_suite(
    suite: Suite,
    seed: u64,
    instances: usize,
    policy: &VerdictPolicy,
    fault: Option<Fault>,
) -> Result<SuiteSummary> {
    let reports: Vec<Vec<CheckReport>> = (0..instances)
        .into_par_iter()
        .map(|i| suite_instance(suite, &mut instance_rng(seed, suite, i), i, policy, fault))
        .collect::<Result<_>>()?;
    Ok(SuiteSummary::tally(suite, instances, reports.into_iter().flatten()))
}

/// Dyadic scheme `1, 2, ..., 2^16` (16 blocks), the twelve-member family at
/// `T = 2^16 + 1`, with spikes placed beyond `N_max`.
pub fn corollary_setup(policy: &VerdictPolicy) -> Result<(LacunaryScheme, Vec<FamilyMember>)> {
    let scheme = SchemeGenerator::Geometric { ratio: 2.0, count: 17, start: 1 }.build()?;
    let family = materialize(&standard_family(policy.n_max + 1), (1 << 16) + 1)?;
    Ok((scheme, family))
}

/// `+η` on `1..=n_max` and `-η` beyond, with `η = 2^-10`: deviations stay
/// below `2η`, yet a unit step at 0 turns it into `1` then `0`, so every
/// index past `n_max` deviates by 1 for every `n <= n_max`.
pub fn crossing_sequence(n_max: u64) -> GeneratorSpec {
    let eta = 1.0 / 1024.0;
    GeneratorSpec::SparseSpike {
        support: SpikeSupport::Explicit { indices: (1..=n_max).collect() },
        values: vec![2.0 * eta],
        base: -eta,
    }
}

/// `(name, f_1..f_M, f)` with `f_m -> f` uniformly on bounded sets.
pub fn uniform_limit_families(m: usize) -> Vec<(String, Vec<RealFunction>, RealFunction)> {
    let unit = RealFunction::Clamp { lo: 0.0, hi: 1.0 };
    let inv = |k: usize| 1.0 / k as f64;
    vec![
        (
            "affine(1, 1/m) -> identity".into(),
            (1..=m).map(|k| RealFunction::Affine { a: 1.0, b: inv(k) }).collect(),
            RealFunction::identity(),
        ),
        (
            "affine(1 + 1/m, 0) -> identity".into(),
            (1..=m).map(|k| RealFunction::Affine { a: 1.0 + inv(k), b: 0.0 }).collect(),
            RealFunction::identity(),
        ),
        (
            "clamp(0, 1) + 1/m^2 -> clamp(0, 1)".into(),
            (1..=m)
                .map(|k| RealFunction::sum(unit.clone(), RealFunction::Affine { a: 0.0, b: inv(k * k) }))
                .collect(),
            unit.clone(),
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Refusal {
    pub experiment: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformLimitSummary {
    pub family: String,
    pub checks: usize,
    pub failed: usize,
    pub refused: usize,
    pub failures: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Control {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteSummary>,
    pub experiments: Vec<InclusionExperiment>,
    pub refusals: Vec<Refusal>,
    pub continuity: Vec<ContinuityReport>,
    pub closure: Vec<CheckReport>,
    pub uniform_limit: Vec<UniformLimitSummary>,
    pub controls: Vec<Control>,
    pub passed: bool,
}

fn identity_control(policy: &VerdictPolicy) -> Result<Control> {
    let x = SeqSample::from_fn(1 << 12, |m| m as f64)?;
    let policy = VerdictPolicy { grid: EpsilonGrid::new(vec![1.0])?, ..policy.clone() };
    let v = asc_verdict(&x, &policy)?;
    Ok(Control {
        name: "x_m = m, ASC at ε = 1".into(),
        expected: "NotConvergentAtScale".into(),
        observed: format!("{:?}", v.outcome),
        passed: v.outcome == Outcome::NotConvergentAtScale,
    })
}

fn squares_refusal(family: &[FamilyMember], policy: &VerdictPolicy) -> Result<(Control, Option<Refusal>)> {
    let squares = SchemeGenerator::Polynomial { degree: 2, count: 256 }.build()?;
    let name = "lac1 on k_r = r^2";
    match run_inclusion_experiment(Hypothesis::Lac1, family, &squares, policy, &RatioBounds::default()) {
        Err(Error::Refused(reason)) => Ok((
            Control { name: name.into(), expected: "refused".into(), observed: "refused".into(), passed: true },
            Some(Refusal { experiment: name.into(), reason }),
        )),
        Err(e) => Err(e),
        Ok(_) => Ok((
            Control { name: name.into(), expected: "refused".into(), observed: "ran".into(), passed: false },
            None,
        )),
    }
}

fn uniform_limit_suite(
    family: &[FamilyMember],
    scheme: &LacunaryScheme,
) -> Result<Vec<UniformLimitSummary>> {
    let probe = [-1.0, 0.0, 0.5, 1.0];
    let cases: Vec<(WitnessModulus, f64)> = [1, 12]
        .into_iter()
        .flat_map(|n| [0.5, 0.1].map(move |eps| (WitnessModulus::new(n).unwrap(), eps)))
        .collect();
    uniform_limit_families(2000)
        .into_iter()
        .map(|(name, list, f)| {
            let results: Vec<Option<CheckReport>> = family
                .par_iter()
                .flat_map_iter(|m| cases.iter().map(move |&c| (m, c)))
                .map(|(m, (n, eps))| match uniform_limit_check(&list, &f, &m.sample, scheme, n, eps, &probe) {
                    Ok(r) => Ok(Some(r)),
                    Err(Error::Refused(_)) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect::<Result<_>>()?;
            let refused = results.iter().filter(|r| r.is_none()).count();
            let reports: Vec<CheckReport> = results.into_iter().flatten().collect();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            Ok(UniformLimitSummary {
                family: name,
                checks: reports.len(),
                failed,
                refused,
                failures: reports.into_iter().filter(|r| !r.passed()).take(KEEP_FAILURES).collect(),
            })
        })
        .collect()
}

/// Everything `verify` runs, in a fixed order.
pub fn run_verify(config: &RunConfig) -> Result<VerifyReport> {
    let policy = &config.policy;
    let suites = Suite::ALL
        .iter()
        .map(|&s| run_suite(s, config.seed, s.instances(config.instances), policy, config.inject_fault))
        .collect::<Result<Vec<_>>>()?;

    let (scheme, family) = corollary_setup(policy)?;
    let bounds = RatioBounds::default();
    let experiments = [Hypothesis::Corollary, Hypothesis::Lac1, Hypothesis::Lac2, Hypothesis::AcSubset]
        .into_iter()
        .map(|h| run_inclusion_experiment(h, &family, &scheme, policy, &bounds))
        .collect::<Result<Vec<_>>>()?;

    let mut controls = vec![identity_control(policy)?];
    let (control, refusal) = squares_refusal(&family, policy)?;
    controls.push(control);
    let refusals: Vec<Refusal> = refusal.into_iter().collect();

    let small_len = (1 << 14) + 1;
    let small = materialize(&standard_family(policy.n_max + 1), small_len)?;
    // the crossing member only clears the smallest ε by a margin a Lipschitz map can erase,
    // so it feeds the step control alone
    let mut with_crossing = small.clone();
    with_crossing.push(FamilyMember::generate("crossing", &crossing_sequence(policy.n_max), small_len)?);
    let affine = RealFunction::Affine { a: -2.0, b: 5.0 };
    let square = RealFunction::Polynomial { coeffs: vec![0.0, 0.0, 1.0] };
    let clamp = RealFunction::Clamp { lo: -1.0, hi: 1.0 };
    let mut continuity = [&affine, &square, &clamp]
        .into_iter()
        .map(|f| continuity_battery(f, &small, &scheme, policy))
        .collect::<Result<Vec<_>>>()?;
    let step = continuity_battery(&RealFunction::step(0.0, 0.0, 1.0), &with_crossing, &scheme, policy)?;
    controls.push(Control {
        name: "unit step at 0, continuity battery".into(),
        expected: "at least one contradiction".into(),
        observed: format!("{} contradictions", step.contradictions),
        passed: step.contradictions > 0,
    });
    let continuous_ok = continuity.iter().all(ContinuityReport::supported);
    continuity.push(step);
    let closure = vec![
        closure_checks(&affine, &clamp, &small, &scheme, policy)?,
        closure_checks(&square, &affine, &small, &scheme, policy)?,
    ];

    let uniform_limit = uniform_limit_suite(&small, &scheme)?;

    let passed = suites.iter().all(SuiteSummary::passed)
        && experiments.iter().all(InclusionExperiment::passed)
        && continuous_ok
        && closure.iter().all(CheckReport::passed)
        && uniform_limit.iter().all(|u| u.failed == 0)
        && controls.iter().all(|c| c.passed);
    Ok(VerifyReport { suites, experiments, refusals, continuity, closure, uniform_limit, controls, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::generate;

    #[test]
    fn suites_pass_and_fault_is_caught() {
        let policy = VerdictPolicy::default();
        for s in Suite::ALL {
            let summary = run_suite(s, 9, 40, &policy, None).unwrap();
            assert!(summary.passed(), "{s:?}: {:?}", summary.failures.first());
            assert!(summary.checks >= 20);
        }
        let broken = run_suite(Suite::ScalarClosure, 9, 40, &policy, Some(Fault::Scaling)).unwrap();
        assert!(!broken.passed());
    }

    #[test]
    fn crossing_sequence_is_small() {
        let x = generate(&crossing_sequence(64), 200).unwrap();
        assert_eq!(x.get(64).unwrap(), 1.0 / 1024.0);
        assert_eq!(x.get(65).unwrap(), -1.0 / 1024.0);
    }
}
