//! Exact finite-scale checks of the set identities and inequalities behind
//! the closure, refinement and inclusion results, and verdict-comparison
//! experiments for the inclusions themselves.
//!
//! Every `check_*` function evaluates an identity or inequality that holds
//! for each finite instance, so a failing report is a bug in the evaluation
//! path, never an asymptotic effect.

pub mod families;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::density::{
    ac_theta_verdict, asc_theta_verdict, asc_verdict, block_exceedance, check_eps, exceedance_prefix,
    sample_block, Axis, ConvergenceVerdict, ExceedanceSet, Outcome, VerdictPolicy,
};
use crate::error::{Error, Result};
use crate::exact::ExactSum;
use crate::kernel::{deviation_unchecked, SeqSample, WitnessModulus};
use crate::lacunary::{q_ratio_stats, refinement_map, LacunaryScheme, RatioStats};

pub use families::FamilyMember;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail,
}

/// Result of one exact check on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: Value,
    pub outcome: CheckOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Value>,
}

impl CheckReport {
    pub(crate) fn new(check: &str, instance: Value, failure: Option<Value>) -> Self {
        CheckReport {
            check: check.to_string(),
            instance,
            outcome: if failure.is_some() { CheckOutcome::Fail } else { CheckOutcome::Pass },
            failure,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == CheckOutcome::Pass
    }
}

/// Recipe of `x` when known, else its raw values.
pub fn describe_sequence(x: &SeqSample) -> Value {
    match x.recipe() {
        Some(r) => json!({ "len": x.len(), "recipe": r }),
        None => json!({ "len": x.len(), "values": x.values() }),
    }
}

fn describe_scheme(s: Option<&LacunaryScheme>) -> Value {
    s.map_or(Value::Null, |s| json!(s.points()))
}

/// Exceedance sets over the whole prefix `1..=T`, or over every block of
/// `scheme` inside the sample.
fn exceedance_sets(
    x: &SeqSample,
    n: WitnessModulus,
    eps: f64,
    axis: Axis,
    scheme: Option<&LacunaryScheme>,
) -> Result<Vec<ExceedanceSet>> {
    match axis {
        Axis::Prefix => Ok(vec![exceedance_prefix(x, n, eps, x.len())?]),
        Axis::Block => {
            let scheme = scheme.ok_or_else(|| Error::InvalidArgument("block axis needs a scheme".into()))?;
            let available = scheme.blocks_within(x.len());
            if available == 0 {
                return Err(Error::BlockOutOfRange { block: 1, available: 0 });
            }
            (1..=available).map(|r| block_exceedance(x, scheme, n, eps, r)).collect()
        }
    }
}

/// `exceedance(c·x, ε) == exceedance(x, ε/|c|)` on every region of the axis.
pub fn check_scalar_closure(
    x: &SeqSample,
    c: f64,
    n: WitnessModulus,
    eps: f64,
    axis: Axis,
    scheme: Option<&LacunaryScheme>,
) -> Result<CheckReport> {
    scalar_closure_against(x, c, n, eps, axis, scheme, eps / c.abs())
}

/// Scalar closure with an explicit right-hand threshold; `check_scalar_closure`
/// passes `ε / |c|`. Used to inject faults into the verification suite.
pub(crate) fn scalar_closure_against(
    x: &SeqSample,
    c: f64,
    n: WitnessModulus,
    eps: f64,
    axis: Axis,
    scheme: Option<&LacunaryScheme>,
    rhs_eps: f64,
) -> Result<CheckReport> {
    check_eps(eps)?;
    if !c.is_finite() {
        return Err(Error::InvalidArgument(format!("scale factor must be finite, got {c}")));
    }
    let instance = json!({
        "sequence": describe_sequence(x), "c": c, "n": n, "epsilon": eps,
        "axis": axis, "scheme": describe_scheme(scheme),
    });
    let scaled = x.scaled(c)?;
    let lhs = exceedance_sets(&scaled, n, eps, axis, scheme)?;
    if c == 0.0 {
        // c·x is identically zero, so every exceedance set must be empty
        let failure = lhs
            .iter()
            .find(|s| !s.is_empty())
            .map(|s| json!({ "range": s.range, "unexpected": s.members }));
        return Ok(CheckReport::new("scalar_closure", instance, failure));
    }
    let rhs = exceedance_sets(x, n, rhs_eps, axis, scheme)?;
    let failure = lhs.iter().zip(&rhs).find(|(a, b)| a.members != b.members).map(|(a, b)| {
        let sa: BTreeSet<u64> = a.members.iter().copied().collect();
        let sb: BTreeSet<u64> = b.members.iter().copied().collect();
        json!({
            "range": a.range,
            "only_scaled": sa.difference(&sb).collect::<Vec<_>>(),
            "only_unscaled": sb.difference(&sa).collect::<Vec<_>>(),
        })
    });
    Ok(CheckReport::new("scalar_closure", instance, failure))
}

/// `exceedance(x+y, ε) ⊆ exceedance(x, ε/2) ∪ exceedance(y, ε/2)`.
pub fn check_sum_closure(
    x: &SeqSample,
    y: &SeqSample,
    n: WitnessModulus,
    eps: f64,
    axis: Axis,
    scheme: Option<&LacunaryScheme>,
) -> Result<CheckReport> {
    check_eps(eps)?;
    let sum = x.add(y)?;
    let instance = json!({
        "x": describe_sequence(x), "y": describe_sequence(y), "n": n, "epsilon": eps,
        "axis": axis, "scheme": describe_scheme(scheme),
    });
    let lhs = exceedance_sets(&sum, n, eps, axis, scheme)?;
    let rx = exceedance_sets(x, n, eps / 2.0, axis, scheme)?;
    let ry = exceedance_sets(y, n, eps / 2.0, axis, scheme)?;
    let mut failure = None;
    for ((l, a), b) in lhs.iter().zip(&rx).zip(&ry) {
        let cover: BTreeSet<u64> = a.members.iter().chain(&b.members).copied().collect();
        let missing: Vec<u64> = l.members.iter().copied().filter(|m| !cover.contains(m)).collect();
        if !missing.is_empty() {
            failure = Some(json!({ "range": l.range, "uncovered": missing }));
            break;
        }
    }
    Ok(CheckReport::new("sum_closure", instance, failure))
}

/// `ε · |block exceedance| <= Σ_{m in I_r} deviation`, compared exactly.
pub fn check_markov_step(
    x: &SeqSample,
    scheme: &LacunaryScheme,
    n: WitnessModulus,
    eps: f64,
    r: usize,
) -> Result<CheckReport> {
    let set = block_exceedance(x, scheme, n, eps, r)?;
    let block = sample_block(x, scheme, r)?;
    let devs: Vec<f64> = block.indices().map(|m| deviation_unchecked(x, m, n.get())).collect();
    let exact: ExactSum = devs.iter().copied().collect();
    let instance = json!({
        "sequence": describe_sequence(x), "scheme": scheme.points(), "n": n, "epsilon": eps, "block": r,
    });
    let failure = (exact.cmp_multiple(set.len() as u64, eps) == Ordering::Less).then(|| {
        json!({
            "count": set.len(),
            "deviation_sum": devs.iter().sum::<f64>(),
            "epsilon_times_count": eps * set.len() as f64,
        })
    });
    Ok(CheckReport::new("markov_step", instance, failure))
}

/// `a/b >= c/d` for nonnegative integers, by cross multiplication.
fn frac_ge(a: u64, b: u64, c: u64, d: u64) -> bool {
    a as u128 * d as u128 >= c as u128 * b as u128
}

/// `prefix_density(k_r) >= σ_r/(1+σ_r) · block_density(r)` with
/// `σ_r = q_r - 1`, so the factor is exactly `h_r / k_r`.
pub fn check_lac1_bound(
    x: &SeqSample,
    scheme: &LacunaryScheme,
    n: WitnessModulus,
    eps: f64,
    r: usize,
) -> Result<CheckReport> {
    let block_set = block_exceedance(x, scheme, n, eps, r)?;
    let block = sample_block(x, scheme, r)?;
    let (k_prev, k_r, h_r) = (block.start, block.end, block.len());
    let prefix_set = exceedance_prefix(x, n, eps, k_r)?;
    // σ_r = h_r / k_{r-1}; σ/(1+σ) = (h_r/k_{r-1}) / (k_r/k_{r-1}) = h_r / k_r
    let (sigma_num, sigma_den) = (h_r, k_prev);
    let (factor_num, factor_den) = (sigma_num * k_prev, (sigma_den + sigma_num) * k_prev);
    debug_assert!(factor_num as u128 * k_r as u128 == h_r as u128 * factor_den as u128);

    let (cp, cb) = (prefix_set.len() as u64, block_set.len() as u64);
    // rhs = (factor_num/factor_den) · (cb/h_r)
    let holds = frac_ge(cp, k_r, factor_num * cb, factor_den * h_r);
    let instance = json!({
        "sequence": describe_sequence(x), "scheme": scheme.points(), "n": n, "epsilon": eps, "block": r,
    });
    let failure = (!holds).then(|| {
        json!({
            "prefix_count": cp, "block_count": cb, "k_r": k_r, "h_r": h_r,
            "prefix_density": cp as f64 / k_r as f64,
            "bound": (h_r as f64 / k_r as f64) * (cb as f64 / h_r as f64),
        })
    });
    Ok(CheckReport::new("lac1_bound", instance, failure))
}

/// For every fine block `J ⊆ I`: `|E ∩ J| / |J| <= (1/δ) · |E ∩ I| / |I|`,
/// where `E` is the exceedance set and δ the refinement statistic.
pub fn check_delta_transfer(
    x: &SeqSample,
    coarse: &LacunaryScheme,
    fine: &LacunaryScheme,
    n: WitnessModulus,
    eps: f64,
) -> Result<CheckReport> {
    check_eps(eps)?;
    let relation = refinement_map(coarse, fine)?;
    let delta = relation.delta;
    let available = coarse.blocks_within(x.len());
    let instance = json!({
        "sequence": describe_sequence(x), "coarse": coarse.points(), "fine": fine.points(),
        "n": n, "epsilon": eps, "delta": delta,
    });
    let mut failure = None;
    'blocks: for r in 1..=available {
        let outer = block_exceedance(x, coarse, n, eps, r)?;
        let outer_len = outer.range.len();
        for piece in relation.pieces_in(r) {
            let inner = block_exceedance(x, fine, n, eps, piece.inner)?;
            let (cj, ci) = (inner.len() as u128, outer.len() as u128);
            // cj/|J| <= (whole/part) · ci/|I|
            let lhs = cj * outer_len as u128 * delta.part as u128;
            let rhs = delta.whole as u128 * ci * piece.len() as u128;
            if lhs > rhs {
                failure = Some(json!({
                    "coarse_block": r, "fine_block": piece.inner,
                    "fine_count": inner.len(), "fine_len": piece.len(),
                    "coarse_count": outer.len(), "coarse_len": outer_len,
                }));
                break 'blocks;
            }
        }
    }
    Ok(CheckReport::new("delta_transfer", instance, failure))
}

/// Which inclusion an experiment probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `liminf q_r > 1`: ASC ⊆ ASC_θ.
    Lac1,
    /// `limsup q_r < ∞`: ASC_θ ⊆ ASC.
    Lac2,
    /// Both ratio bounds: ASC = ASC_θ.
    Corollary,
    /// AC_θ ⊆ ASC_θ, no ratio condition.
    AcSubset,
}

/// Finite surrogates for the ratio hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioBounds {
    pub tail_fraction: f64,
    /// `liminf q_r > 1` is accepted when the tail minimum is at least this.
    pub min_liminf: f64,
    /// `limsup q_r < ∞` is accepted when the tail maximum is at most this.
    pub max_limsup: f64,
}

impl Default for RatioBounds {
    fn default() -> Self {
        RatioBounds { tail_fraction: 0.5, min_liminf: 1.05, max_limsup: 16.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InclusionRow {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asc: Option<ConvergenceVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asc_theta: Option<ConvergenceVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ac_theta: Option<ConvergenceVerdict>,
    /// No direction was probed because no left side converged.
    pub vacuous: bool,
    /// A left side converged and its right side came out inconclusive.
    pub inconclusive: bool,
    /// A left side converged and its right side came out not convergent.
    pub contradiction: bool,
}

impl InclusionRow {
    pub fn supports(&self) -> bool {
        !self.contradiction
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InclusionSummary {
    pub members: usize,
    pub supports: usize,
    pub contradictions: usize,
    pub inconclusive: usize,
    pub vacuous: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InclusionExperiment {
    pub hypothesis: Hypothesis,
    pub scheme: Vec<u64>,
    pub ratio_stats: Option<RatioStats>,
    pub bounds: RatioBounds,
    pub rows: Vec<InclusionRow>,
    pub summary: InclusionSummary,
}

impl InclusionExperiment {
    /// Fails only on a hard contradiction.
    pub fn passed(&self) -> bool {
        self.summary.contradictions == 0
    }
}

fn hypothesis_check(
    hypothesis: Hypothesis,
    scheme: &LacunaryScheme,
    bounds: &RatioBounds,
) -> Result<Option<RatioStats>> {
    if hypothesis == Hypothesis::AcSubset {
        return Ok(q_ratio_stats(scheme, bounds.tail_fraction).ok());
    }
    let stats = q_ratio_stats(scheme, bounds.tail_fraction)?;
    let need_lower = matches!(hypothesis, Hypothesis::Lac1 | Hypothesis::Corollary);
    let need_upper = matches!(hypothesis, Hypothesis::Lac2 | Hypothesis::Corollary);
    if need_lower && stats.liminf < bounds.min_liminf {
        return Err(Error::Refused(format!(
            "liminf q_r estimate {:.6} is below {}; the lower ratio hypothesis is not met",
            stats.liminf, bounds.min_liminf
        )));
    }
    if need_upper && stats.limsup > bounds.max_limsup {
        return Err(Error::Refused(format!(
            "limsup q_r estimate {:.6} exceeds {}; the upper ratio hypothesis is not met",
            stats.limsup, bounds.max_limsup
        )));
    }
    Ok(Some(stats))
}

enum Direction {
    Holds,
    Vacuous,
    Inconclusive,
    Contradiction,
}

fn direction(left: &ConvergenceVerdict, right: &ConvergenceVerdict) -> Direction {
    if left.outcome != Outcome::ConvergentAtScale {
        return Direction::Vacuous;
    }
    match right.outcome {
        Outcome::ConvergentAtScale => Direction::Holds,
        Outcome::Inconclusive => Direction::Inconclusive,
        Outcome::NotConvergentAtScale => Direction::Contradiction,
    }
}

fn run_row(
    hypothesis: Hypothesis,
    member: &FamilyMember,
    scheme: &LacunaryScheme,
    policy: &VerdictPolicy,
) -> Result<InclusionRow> {
    let x = &member.sample;
    let asc_theta = Some(asc_theta_verdict(x, scheme, policy)?);
    let asc = match hypothesis {
        Hypothesis::AcSubset => None,
        _ => Some(asc_verdict(x, policy)?),
    };
    let ac_theta = match hypothesis {
        Hypothesis::AcSubset => Some(ac_theta_verdict(x, scheme, policy)?),
        _ => None,
    };
    let (a, t) = (asc.as_ref(), asc_theta.as_ref().unwrap());
    let directions: Vec<Direction> = match hypothesis {
        Hypothesis::Lac1 => vec![direction(a.unwrap(), t)],
        Hypothesis::Lac2 => vec![direction(t, a.unwrap())],
        Hypothesis::Corollary => vec![direction(a.unwrap(), t), direction(t, a.unwrap())],
        Hypothesis::AcSubset => vec![direction(ac_theta.as_ref().unwrap(), t)],
    };
    Ok(InclusionRow {
        label: member.label.clone(),
        vacuous: directions.iter().all(|d| matches!(d, Direction::Vacuous)),
        inconclusive: directions.iter().any(|d| matches!(d, Direction::Inconclusive)),
        contradiction: directions.iter().any(|d| matches!(d, Direction::Contradiction)),
        asc,
        asc_theta,
        ac_theta,
    })
}

/// Compares left and right verdicts over a family. Refuses (with
/// [`Error::Refused`]) when the scheme does not meet the ratio hypothesis.
pub fn run_inclusion_experiment(
    hypothesis: Hypothesis,
    family: &[FamilyMember],
    scheme: &LacunaryScheme,
    policy: &VerdictPolicy,
    bounds: &RatioBounds,
) -> Result<InclusionExperiment> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("inclusion experiment needs a nonempty family".into()));
    }
    let ratio_stats = hypothesis_check(hypothesis, scheme, bounds)?;
    let rows: Vec<InclusionRow> = family
        .par_iter()
        .map(|m| run_row(hypothesis, m, scheme, policy))
        .collect::<Result<_>>()?;
    let summary = InclusionSummary {
        members: rows.len(),
        supports: rows.iter().filter(|r| r.supports()).count(),
        contradictions: rows.iter().filter(|r| r.contradiction).count(),
        inconclusive: rows.iter().filter(|r| r.inconclusive).count(),
        vacuous: rows.iter().filter(|r| r.vacuous).count(),
    };
    Ok(InclusionExperiment {
        hypothesis,
        scheme: scheme.points().to_vec(),
        ratio_stats,
        bounds: *bounds,
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{generate, GeneratorSpec, SpikeSupport};
    use crate::lacunary::SchemeGenerator;

    fn w(n: u64) -> WitnessModulus {
        WitnessModulus::new(n).unwrap()
    }

    fn dyadic(count: usize) -> LacunaryScheme {
        SchemeGenerator::Geometric { ratio: 2.0, count, start: 1 }.build().unwrap()
    }

    fn spiky_periodic(len: u64) -> SeqSample {
        let spec = GeneratorSpec::gcd_identity(6).plus(GeneratorSpec::SparseSpike {
            support: SpikeSupport::Random { seed: 5, scale: 2.0, exponent: 0.5, min_index: 2 },
            values: vec![3.0, -1.5, 0.25],
            base: 0.0,
        });
        generate(&spec, len).unwrap()
    }

    #[test]
    fn scalar_closure_examples() {
        let x = spiky_periodic(10_000);
        let s = dyadic(14);
        for axis in [Axis::Prefix, Axis::Block] {
            assert!(check_scalar_closure(&x, 1.0, w(6), 0.5, axis, Some(&s)).unwrap().passed());
            assert!(check_scalar_closure(&x, -3.0, w(6), 0.5, axis, Some(&s)).unwrap().passed());
            assert!(check_scalar_closure(&x, 0.0, w(6), 0.5, axis, Some(&s)).unwrap().passed());
        }
        // the mutated threshold must be caught
        let bad = scalar_closure_against(&x, 10.0, w(6), 1.0, Axis::Prefix, None, 1.0).unwrap();
        assert!(!bad.passed());
        assert!(bad.failure.is_some());
    }

    #[test]
    fn scalar_closure_brute_force_oracle() {
        let x = spiky_periodic(2_000);
        let cx = x.scaled(-3.0).unwrap();
        let lhs: Vec<u64> = (1..=2000u64)
            .filter(|&m| {
                let d = (1..=m).rev().find(|d| m % d == 0 && 6 % d == 0).unwrap();
                (cx.get(m).unwrap() - cx.get(d).unwrap()).abs() >= 0.5
            })
            .collect();
        let rhs = exceedance_prefix(&x, w(6), 0.5 / 3.0, 2000).unwrap().members;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sum_closure_examples() {
        let x = spiky_periodic(5_000);
        let zero = SeqSample::new(vec![0.0; 5_000]).unwrap();
        let neg = x.scaled(-1.0).unwrap();
        assert!(check_sum_closure(&x, &zero, w(3), 0.1, Axis::Prefix, None).unwrap().passed());
        let report = check_sum_closure(&x, &neg, w(3), 0.1, Axis::Block, Some(&dyadic(13))).unwrap();
        assert!(report.passed());
        assert!(exceedance_prefix(&x.add(&neg).unwrap(), w(3), 0.1, 5000).unwrap().is_empty());
        let short = SeqSample::new(vec![0.0; 10]).unwrap();
        assert!(check_sum_closure(&x, &short, w(1), 0.1, Axis::Prefix, None).is_err());
    }

    #[test]
    fn markov_step_examples() {
        let c = SeqSample::new(vec![2.0; 64]).unwrap();
        assert!(check_markov_step(&c, &dyadic(7), w(1), 0.5, 6).unwrap().passed());
        let mut v = vec![0.0; 64];
        v[40] = 0.75;
        let spike = SeqSample::new(v).unwrap();
        let rep = check_markov_step(&spike, &dyadic(7), w(1), 0.75, 6).unwrap();
        assert!(rep.passed());
        // ten deviations of exactly 0.1 sit on the float-rounding edge
        let tenths = SeqSample::from_fn(32, |m| if m > 16 && m <= 26 { 0.1 } else { 0.0 }).unwrap();
        assert!(check_markov_step(&tenths, &dyadic(6), w(1), 0.1, 5).unwrap().passed());
    }

    #[test]
    fn lac1_examples() {
        let s = dyadic(12);
        let x = spiky_periodic(2048);
        for r in 1..=11 {
            assert!(check_lac1_bound(&x, &s, w(2), 0.5, r).unwrap().passed());
            let c = SeqSample::new(vec![1.0; 2048]).unwrap();
            assert!(check_lac1_bound(&c, &s, w(2), 0.5, r).unwrap().passed());
        }
    }

    #[test]
    fn delta_transfer_examples() {
        let coarse = LacunaryScheme::new(vec![1, 4, 16, 64, 256]).unwrap();
        let fine = LacunaryScheme::new(vec![1, 2, 4, 8, 16, 32, 64, 65, 256]).unwrap();
        let x = spiky_periodic(256);
        let c = SeqSample::new(vec![1.0; 256]).unwrap();
        assert!(check_delta_transfer(&c, &coarse, &fine, w(1), 0.1).unwrap().passed());
        assert!(check_delta_transfer(&x, &coarse, &coarse, w(1), 0.1).unwrap().passed());
        assert!(check_delta_transfer(&x, &coarse, &fine, w(1), 0.1).unwrap().passed());
        assert!(check_delta_transfer(&x, &fine, &coarse, w(1), 0.1).is_err());
    }

    #[test]
    fn inclusion_refuses_square_scheme_for_lac1() {
        let squares = SchemeGenerator::Polynomial { degree: 2, count: 100 }.build().unwrap();
        let fam = families::materialize(&families::standard_family(65), 10_000).unwrap();
        let err = run_inclusion_experiment(
            Hypothesis::Lac1,
            &fam[..1],
            &squares,
            &VerdictPolicy::default(),
            &RatioBounds::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
        // the AC_θ ⊆ ASC_θ experiment has no ratio hypothesis
        assert!(run_inclusion_experiment(
            Hypothesis::AcSubset,
            &fam[..1],
            &squares,
            &VerdictPolicy::default(),
            &RatioBounds::default(),
        )
        .is_ok());
    }

    #[test]
    fn small_inclusion_experiment() {
        let fam = families::materialize(&families::standard_family(65), 1 << 12).unwrap();
        let exp = run_inclusion_experiment(
            Hypothesis::Lac1,
            &fam[..3],
            &dyadic(13),
            &VerdictPolicy::default(),
            &RatioBounds::default(),
        )
        .unwrap();
        assert!(exp.passed());
        assert_eq!(exp.summary.members, 3);
        assert_eq!(exp.summary.contradictions, 0);
    }
}
