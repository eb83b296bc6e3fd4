//! Exceedance sets, prefix and block densities, the AC / AC_θ / N_θ
//! functionals, and the finite-scale verdict engine.
//!
//! "The density tends to 0 for some n" cannot be decided on a finite
//! sample. A verdict instead samples a density curve (over prefixes `t` or
//! over the blocks of a scheme), averages its last `W` points and compares
//! that tail mean with two thresholds `τ < τ_hi`:
//!
//! * `ConvergentAtScale`: some `n <= N_max` keeps every ε's tail mean `<= τ`;
//!   the smallest such `n` is the witness.
//! * `NotConvergentAtScale`: for every `n <= N_max` some ε has tail mean
//!   `>= τ_hi` over a non-decreasing tail.
//! * `Inconclusive`: anything else.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{deviation_unchecked, SeqSample, WitnessModulus};
use crate::lacunary::{Block, LacunaryScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Prefix,
    Block,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Prefix => "prefix",
            Axis::Block => "block",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axis", rename_all = "snake_case")]
pub enum ExceedanceRange {
    /// `1..=t`
    Prefix { t: u64 },
    /// `(start, end]`, block `r` of a scheme.
    Block { r: usize, start: u64, end: u64 },
}

impl ExceedanceRange {
    pub fn len(&self) -> u64 {
        match *self {
            ExceedanceRange::Prefix { t } => t,
            ExceedanceRange::Block { start, end, .. } => end - start,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `{ m in range : |x_m - x_gcd(m,n)| >= ε }`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceedanceSet {
    pub range: ExceedanceRange,
    pub epsilon: f64,
    pub n: WitnessModulus,
    pub members: Vec<u64>,
}

impl ExceedanceSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `|members| / |range|`.
    pub fn density(&self) -> f64 {
        self.members.len() as f64 / self.range.len() as f64
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("epsilon must be a positive real, got {eps}")))
    }
}

pub(crate) fn sample_block(x: &SeqSample, scheme: &LacunaryScheme, r: usize) -> Result<Block> {
    let block = scheme.block(r)?;
    if block.end > x.len() {
        return Err(Error::BlockOutOfRange { block: r, available: scheme.blocks_within(x.len()) });
    }
    Ok(block)
}

fn members_in(
    x: &SeqSample,
    n: WitnessModulus,
    eps: f64,
    indices: impl Iterator<Item = u64>,
) -> Vec<u64> {
    indices.filter(|&m| deviation_unchecked(x, m, n.get()) >= eps).collect()
}

pub fn exceedance_prefix(x: &SeqSample, n: WitnessModulus, eps: f64, t: u64) -> Result<ExceedanceSet> {
    check_eps(eps)?;
    x.check_index(t)?;
    Ok(ExceedanceSet {
        range: ExceedanceRange::Prefix { t },
        epsilon: eps,
        n,
        members: members_in(x, n, eps, 1..=t),
    })
}

/// `(1/t) |{ m <= t : deviation >= ε }|`.
pub fn prefix_density(x: &SeqSample, n: WitnessModulus, eps: f64, t: u64) -> Result<f64> {
    Ok(exceedance_prefix(x, n, eps, t)?.density())
}

pub fn block_exceedance(
    x: &SeqSample,
    scheme: &LacunaryScheme,
    n: WitnessModulus,
    eps: f64,
    r: usize,
) -> Result<ExceedanceSet> {
    check_eps(eps)?;
    let block = sample_block(x, scheme, r)?;
    Ok(ExceedanceSet {
        range: ExceedanceRange::Block { r, start: block.start, end: block.end },
        epsilon: eps,
        n,
        members: members_in(x, n, eps, block.indices()),
    })
}

/// `(1/h_r) |{ m in I_r : deviation >= ε }|`.
pub fn block_density(
    x: &SeqSample,
    scheme: &LacunaryScheme,
    n: WitnessModulus,
    eps: f64,
    r: usize,
) -> Result<f64> {
    Ok(block_exceedance(x, scheme, n, eps, r)?.density())
}

/// Strictly decreasing positive ε values standing in for "every ε > 0".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EpsilonGrid(Vec<f64>);

impl EpsilonGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("epsilon grid is empty".into()));
        }
        values.iter().try_for_each(|&e| check_eps(e))?;
        if values.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidArgument("epsilon grid must be strictly decreasing".into()));
        }
        Ok(EpsilonGrid(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Smallest ε; the binding one since densities are monotone in ε.
    pub fn min(&self) -> f64 {
        *self.0.last().unwrap()
    }
}

impl Default for EpsilonGrid {
    fn default() -> Self {
        EpsilonGrid(vec![1.0, 0.5, 0.1, 0.05, 0.01])
    }
}

impl TryFrom<Vec<f64>> for EpsilonGrid {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        EpsilonGrid::new(v)
    }
}

impl From<EpsilonGrid> for Vec<f64> {
    fn from(g: EpsilonGrid) -> Vec<f64> {
        g.0
    }
}

/// Knobs of the verdict engine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictPolicy {
    pub grid: EpsilonGrid,
    /// Number of trailing curve points averaged (`W`).
    pub tail_window: usize,
    /// Convergence threshold `τ`.
    pub tol: f64,
    /// Divergence threshold `τ_hi`.
    pub tol_hi: f64,
    /// Witness search bound `N_max`.
    pub n_max: u64,
    /// Prefix checkpoint growth factor `γ`.
    pub growth: f64,
}

impl Default for VerdictPolicy {
    fn default() -> Self {
        VerdictPolicy {
            grid: EpsilonGrid::default(),
            tail_window: 8,
            tol: 0.02,
            tol_hi: 0.2,
            n_max: 64,
            growth: 1.3,
        }
    }
}

impl VerdictPolicy {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.tail_window == 0 {
            return bad("tail window must be >= 1".into());
        }
        if self.n_max == 0 {
            return bad("n_max must be >= 1".into());
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad(format!("tolerance must be positive, got {}", self.tol));
        }
        if !(self.tol_hi.is_finite() && self.tol < self.tol_hi) {
            return bad(format!("need tol < tol_hi, got {} and {}", self.tol, self.tol_hi));
        }
        if !(self.growth.is_finite() && self.growth > 1.0) {
            return bad(format!("checkpoint growth must exceed 1, got {}", self.growth));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    /// Prefix length `t` or block number `r`.
    pub index: u64,
    pub value: f64,
}

/// Densities sampled along prefixes or blocks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityCurve {
    pub axis: Axis,
    pub epsilon: f64,
    pub n: WitnessModulus,
    pub points: Vec<CurvePoint>,
}

impl DensityCurve {
    /// Mean of the last `window` values.
    pub fn tail_mean(&self, window: usize) -> Option<f64> {
        tail_mean(&self.points, window)
    }
}

/// `t = floor(γ^j)` for `j = 0, 1, ...` up to `len`, deduplicated, with
/// `len` itself appended as the final checkpoint.
pub fn prefix_checkpoints(len: u64, growth: f64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut p = 1.0f64;
    while p <= len as f64 {
        let t = p.floor() as u64;
        if out.last() != Some(&t) {
            out.push(t);
        }
        p *= growth;
    }
    if out.last() != Some(&len) {
        out.push(len);
    }
    out
}

/// Where a curve is sampled.
#[derive(Clone, Copy, Debug)]
enum Sampling<'a> {
    Prefix(&'a [u64]),
    Blocks(&'a [Block]),
}

fn exceedance_curve(devs: &[f64], eps: f64, sampling: Sampling<'_>) -> Vec<CurvePoint> {
    match sampling {
        Sampling::Prefix(checkpoints) => {
            let mut out = Vec::with_capacity(checkpoints.len());
            let mut count = 0u64;
            let mut m = 0u64;
            for &t in checkpoints {
                while m < t {
                    if devs[m as usize] >= eps {
                        count += 1;
                    }
                    m += 1;
                }
                out.push(CurvePoint { index: t, value: count as f64 / t as f64 });
            }
            out
        }
        Sampling::Blocks(blocks) => blocks
            .iter()
            .map(|b| {
                let count = devs[b.start as usize..b.end as usize].iter().filter(|&&d| d >= eps).count();
                CurvePoint { index: b.index as u64, value: count as f64 / b.len() as f64 }
            })
            .collect(),
    }
}

fn block_mean_curve(devs: &[f64], blocks: &[Block]) -> Vec<CurvePoint> {
    blocks
        .iter()
        .map(|b| {
            let sum: f64 = devs[b.start as usize..b.end as usize].iter().sum();
            CurvePoint { index: b.index as u64, value: sum / b.len() as f64 }
        })
        .collect()
}

fn tail_mean(points: &[CurvePoint], window: usize) -> Option<f64> {
    if window == 0 || points.len() < window {
        return None;
    }
    let tail = &points[points.len() - window..];
    Some(tail.iter().map(|p| p.value).sum::<f64>() / window as f64)
}

fn tail_non_decreasing(points: &[CurvePoint], window: usize) -> bool {
    points[points.len() - window..].windows(2).all(|w| w[1].value >= w[0].value)
}

fn sample_blocks(x: &SeqSample, scheme: &LacunaryScheme) -> Result<Vec<Block>> {
    let blocks: Vec<Block> = scheme.blocks().take(scheme.blocks_within(x.len())).collect();
    if blocks.is_empty() {
        return Err(Error::BlockOutOfRange { block: 1, available: 0 });
    }
    Ok(blocks)
}

fn deviations_raw(x: &SeqSample, n: u64) -> Vec<f64> {
    (1..=x.len()).map(|m| deviation_unchecked(x, m, n)).collect()
}

/// Exceedance densities sampled along prefix checkpoints (growth `γ`) or
/// along every block of `scheme` that fits in the sample.
pub fn density_curve(
    x: &SeqSample,
    n: WitnessModulus,
    eps: f64,
    axis: Axis,
    scheme: Option<&LacunaryScheme>,
    growth: f64,
) -> Result<DensityCurve> {
    check_eps(eps)?;
    let devs = deviations_raw(x, n.get());
    let points = match axis {
        Axis::Prefix => {
            if !(growth.is_finite() && growth > 1.0) {
                return Err(Error::InvalidArgument(format!("checkpoint growth must exceed 1, got {growth}")));
            }
            exceedance_curve(&devs, eps, Sampling::Prefix(&prefix_checkpoints(x.len(), growth)))
        }
        Axis::Block => {
            let scheme = scheme.ok_or_else(|| Error::InvalidArgument("block axis needs a scheme".into()))?;
            exceedance_curve(&devs, eps, Sampling::Blocks(&sample_blocks(x, scheme)?))
        }
    };
    Ok(DensityCurve { axis, epsilon: eps, n, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    ConvergentAtScale,
    NotConvergentAtScale,
    Inconclusive,
}

/// Tail summary of one curve. `epsilon` is `None` for block-mean (AC_θ) curves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailStat {
    pub epsilon: Option<f64>,
    pub tail_mean: f64,
    pub non_decreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceVerdict {
    pub axis: Axis,
    pub outcome: Outcome,
    /// Smallest passing `n`; present iff the outcome is `ConvergentAtScale`.
    pub witness: Option<WitnessModulus>,
    /// The `n` whose tail statistics are reported: the witness, or else the
    /// `n` with the smallest worst-case tail mean.
    pub examined_n: WitnessModulus,
    pub tails: Vec<TailStat>,
    pub policy: VerdictPolicy,
}

impl ConvergenceVerdict {
    pub fn is_convergent(&self) -> bool {
        self.outcome == Outcome::ConvergentAtScale
    }

    pub fn max_tail(&self) -> f64 {
        self.tails.iter().map(|t| t.tail_mean).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy)]
enum Functional {
    Exceedance,
    BlockMean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Divergent,
    Undecided,
}

struct Candidate {
    n: u64,
    status: Status,
    tails: Vec<TailStat>,
}

fn evaluate(
    x: &SeqSample,
    n: u64,
    sampling: Sampling<'_>,
    functional: Functional,
    policy: &VerdictPolicy,
) -> Candidate {
    let devs = deviations_raw(x, n);
    let w = policy.tail_window;
    let curves: Vec<(Option<f64>, Vec<CurvePoint>)> = match functional {
        Functional::Exceedance => policy
            .grid
            .values()
            .iter()
            .map(|&eps| (Some(eps), exceedance_curve(&devs, eps, sampling)))
            .collect(),
        Functional::BlockMean => match sampling {
            Sampling::Blocks(blocks) => vec![(None, block_mean_curve(&devs, blocks))],
            Sampling::Prefix(_) => unreachable!("block means are only defined on blocks"),
        },
    };
    let tails: Vec<TailStat> = curves
        .iter()
        .map(|(eps, pts)| TailStat {
            epsilon: *eps,
            tail_mean: tail_mean(pts, w).expect("curve length checked"),
            non_decreasing: tail_non_decreasing(pts, w),
        })
        .collect();
    let status = if tails.iter().all(|t| t.tail_mean <= policy.tol) {
        Status::Pass
    } else if tails.iter().any(|t| t.tail_mean >= policy.tol_hi && t.non_decreasing) {
        Status::Divergent
    } else {
        Status::Undecided
    };
    Candidate { n, status, tails }
}

fn run_verdict(
    x: &SeqSample,
    axis: Axis,
    sampling: Sampling<'_>,
    functional: Functional,
    policy: &VerdictPolicy,
) -> Result<ConvergenceVerdict> {
    policy.validate()?;
    let available = match sampling {
        Sampling::Prefix(c) => c.len(),
        Sampling::Blocks(b) => b.len(),
    };
    if available < policy.tail_window {
        return Err(Error::SampleTooShort { needed: policy.tail_window, available });
    }

    // candidates are scanned in chunks so the smallest passing n can stop the search early
    let chunk = rayon::current_num_threads().max(1) as u64;
    let mut evaluated: Vec<Candidate> = Vec::new();
    let mut start = 1u64;
    while start <= policy.n_max {
        let end = (start + chunk - 1).min(policy.n_max);
        let batch: Vec<Candidate> = (start..=end)
            .into_par_iter()
            .map(|n| evaluate(x, n, sampling, functional, policy))
            .collect();
        let passed = batch.iter().any(|c| c.status == Status::Pass);
        evaluated.extend(batch);
        if passed {
            break;
        }
        start = end + 1;
    }

    let verdict = |outcome, witness: Option<u64>, best: &Candidate| ConvergenceVerdict {
        axis,
        outcome,
        witness: witness.map(|n| WitnessModulus::new(n).unwrap()),
        examined_n: WitnessModulus::new(best.n).unwrap(),
        tails: best.tails.clone(),
        policy: policy.clone(),
    };

    if let Some(c) = evaluated.iter().find(|c| c.status == Status::Pass) {
        return Ok(verdict(Outcome::ConvergentAtScale, Some(c.n), c));
    }
    let worst = |c: &Candidate| c.tails.iter().map(|t| t.tail_mean).fold(0.0, f64::max);
    let best = evaluated
        .iter()
        .min_by(|a, b| worst(a).total_cmp(&worst(b)).then(a.n.cmp(&b.n)))
        .expect("n_max >= 1");
    let outcome = if evaluated.iter().all(|c| c.status == Status::Divergent) {
        Outcome::NotConvergentAtScale
    } else {
        Outcome::Inconclusive
    };
    Ok(verdict(outcome, None, best))
}

/// Finite-scale ASC verdict from prefix densities.
pub fn asc_verdict(x: &SeqSample, policy: &VerdictPolicy) -> Result<ConvergenceVerdict> {
    policy.validate()?;
    let checkpoints = prefix_checkpoints(x.len(), policy.growth);
    run_verdict(x, Axis::Prefix, Sampling::Prefix(&checkpoints), Functional::Exceedance, policy)
}

/// Finite-scale ASC_θ verdict from the block densities of `scheme`.
pub fn asc_theta_verdict(
    x: &SeqSample,
    scheme: &LacunaryScheme,
    policy: &VerdictPolicy,
) -> Result<ConvergenceVerdict> {
    let blocks = sample_blocks(x, scheme)?;
    run_verdict(x, Axis::Block, Sampling::Blocks(&blocks), Functional::Exceedance, policy)
}

/// Finite-scale AC_θ verdict: the block means of the deviations play the role
/// of the density curve; the ε grid is not used.
pub fn ac_theta_verdict(
    x: &SeqSample,
    scheme: &LacunaryScheme,
    policy: &VerdictPolicy,
) -> Result<ConvergenceVerdict> {
    let blocks = sample_blocks(x, scheme)?;
    run_verdict(x, Axis::Block, Sampling::Blocks(&blocks), Functional::BlockMean, policy)
}

/// Classical statistical density `(1/t) |{ m <= t : |x_m - L| >= ε }|`.
pub fn stat_prefix_density(x: &SeqSample, limit: f64, eps: f64, t: u64) -> Result<f64> {
    check_eps(eps)?;
    x.check_index(t)?;
    let count = x.values()[..t as usize].iter().filter(|&&v| (v - limit).abs() >= eps).count();
    Ok(count as f64 / t as f64)
}

/// `max_{m <= T} |x_m - x_gcd(m,n)|`; x is AC at scale for `(n, ε)` iff this is `< ε`.
pub fn ac_sup_deviation(x: &SeqSample, n: WitnessModulus) -> f64 {
    (1..=x.len()).map(|m| deviation_unchecked(x, m, n.get())).fold(0.0, f64::max)
}

/// `Σ_{m in I_r} |x_m - x_gcd(m,n)|`.
pub fn block_deviation_sum(x: &SeqSample, scheme: &LacunaryScheme, n: WitnessModulus, r: usize) -> Result<f64> {
    let block = sample_block(x, scheme, r)?;
    Ok(block.indices().map(|m| deviation_unchecked(x, m, n.get())).sum())
}

/// `(1/h_r) Σ_{m in I_r} |x_m - x_gcd(m,n)|`.
pub fn ac_theta_block_mean(x: &SeqSample, scheme: &LacunaryScheme, n: WitnessModulus, r: usize) -> Result<f64> {
    let block = sample_block(x, scheme, r)?;
    Ok(block_deviation_sum(x, scheme, n, r)? / block.len() as f64)
}

/// `(1/h_r) Σ_{m in I_r} |x_m - l|`.
pub fn ntheta_mean(x: &SeqSample, scheme: &LacunaryScheme, l: f64, r: usize) -> Result<f64> {
    let block = sample_block(x, scheme, r)?;
    let sum: f64 = block.indices().map(|m| (x.at(m) - l).abs()).sum();
    Ok(sum / block.len() as f64)
}

/// `max_r (1/h_r) Σ_{m in I_r} |x_m|` over the blocks that fit in the sample.
pub fn ntheta_norm(x: &SeqSample, scheme: &LacunaryScheme) -> Result<f64> {
    let blocks = sample_blocks(x, scheme)?;
    let mut norm: f64 = 0.0;
    for b in blocks {
        norm = norm.max(ntheta_mean(x, scheme, 0.0, b.index)?);
    }
    Ok(norm)
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

    fn spikes(len: u64) -> SeqSample {
        generate(
            &GeneratorSpec::SparseSpike { support: SpikeSupport::default(), values: vec![10.0], base: 0.0 },
            len,
        )
        .unwrap()
    }

    #[test]
    fn constant_has_empty_exceedance() {
        let x = generate(&GeneratorSpec::Constant { value: 4.0 }, 300).unwrap();
        for n in 1..8 {
            for &eps in &[1.0, 0.01] {
                assert!(exceedance_prefix(&x, w(n), eps, 300).unwrap().is_empty());
                assert_eq!(prefix_density(&x, w(n), eps, 77).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn spike_prefix_examples() {
        let x = spikes(16);
        let set = exceedance_prefix(&x, w(1), 1.0, 16).unwrap();
        assert_eq!(set.members, vec![2, 4, 8, 16]);
        assert_eq!(set.density(), 0.25);

        let big = spikes(1 << 20);
        // support {2, 4, ..., 2^20}: floor(log2 t) spikes
        assert_eq!(prefix_density(&big, w(1), 1.0, 1 << 20).unwrap(), 20.0 / (1u64 << 20) as f64);
    }

    #[test]
    fn exceedance_errors() {
        let x = spikes(16);
        assert!(exceedance_prefix(&x, w(1), 0.0, 4).is_err());
        assert!(exceedance_prefix(&x, w(1), -1.0, 4).is_err());
        assert!(exceedance_prefix(&x, w(1), 1.0, 17).is_err());
        assert!(exceedance_prefix(&x, w(1), 1.0, 0).is_err());
        assert!(block_density(&x, &dyadic(6), w(1), 1.0, 5).is_err());
        assert!(block_density(&x, &dyadic(6), w(1), 1.0, 4).is_ok());
    }

    #[test]
    fn ties_count_as_exceedance() {
        let x = SeqSample::new(vec![0.0, 0.5, 0.0]).unwrap();
        assert_eq!(exceedance_prefix(&x, w(1), 0.5, 3).unwrap().members, vec![2]);
    }

    #[test]
    fn dyadic_blocks_hold_one_spike_each() {
        let scheme = dyadic(11);
        let x = spikes(1024);
        for r in 1..=10 {
            let expected = 2f64.powi(1 - r as i32);
            assert_eq!(block_density(&x, &scheme, w(1), 1.0, r).unwrap(), expected);
        }
        // ε above every deviation empties each block
        for r in 1..=10 {
            assert_eq!(block_density(&x, &scheme, w(1), 10.5, r).unwrap(), 0.0);
        }
    }

    #[test]
    fn checkpoints_are_log_spaced() {
        let c = prefix_checkpoints(100, 1.3);
        assert_eq!(c.first(), Some(&1));
        assert_eq!(c.last(), Some(&100));
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(prefix_checkpoints(1, 1.3), vec![1]);
    }

    #[test]
    fn curves_on_both_axes() {
        let x = spikes(1 << 12);
        let curve = density_curve(&x, w(1), 1.0, Axis::Prefix, None, 1.3).unwrap();
        assert!(curve.points.iter().all(|p| (0.0..=1.0).contains(&p.value)));
        assert!(curve.points.windows(2).all(|w| w[0].index < w[1].index));

        let scheme = dyadic(13);
        let curve = density_curve(&x, w(1), 1.0, Axis::Block, Some(&scheme), 1.3).unwrap();
        assert_eq!(curve.points.len(), 12);
        for p in &curve.points {
            assert_eq!(p.value, 2f64.powi(1 - p.index as i32));
        }
        assert!(density_curve(&x, w(1), 1.0, Axis::Block, None, 1.3).is_err());
    }

    #[test]
    fn constant_and_gcd_periodic_verdicts() {
        let policy = VerdictPolicy::default();
        let c = generate(&GeneratorSpec::Constant { value: 1.0 }, 10_000).unwrap();
        let v = asc_verdict(&c, &policy).unwrap();
        assert_eq!(v.outcome, Outcome::ConvergentAtScale);
        assert_eq!(v.witness, Some(w(1)));
        assert!(v.tails.iter().all(|t| t.tail_mean == 0.0));

        let g = generate(&GeneratorSpec::gcd_identity(6), 10_000).unwrap();
        let v = asc_verdict(&g, &policy).unwrap();
        assert_eq!(v.outcome, Outcome::ConvergentAtScale);
        assert_eq!(v.witness, Some(w(6)));
    }

    #[test]
    fn identity_sequence_is_not_convergent() {
        let x = SeqSample::from_fn(10_000, |m| m as f64).unwrap();
        let v = asc_verdict(&x, &VerdictPolicy::default()).unwrap();
        assert_eq!(v.outcome, Outcome::NotConvergentAtScale);
        assert!(v.witness.is_none());

        // brute-force oracle: for ε = 1 only divisors of n avoid exceedance
        for n in [1u64, 7, 64] {
            let divs = (1..=n).filter(|d| n % d == 0).count() as f64;
            let d = prefix_density(&x, w(n), 1.0, 10_000).unwrap();
            assert!((d - (10_000.0 - divs) / 10_000.0).abs() < 1e-15);
        }
    }

    #[test]
    fn short_sample_is_rejected() {
        let x = SeqSample::new(vec![0.0; 5]).unwrap();
        assert!(matches!(asc_verdict(&x, &VerdictPolicy::default()), Err(Error::SampleTooShort { .. })));
        let scheme = dyadic(4);
        let x = SeqSample::new(vec![0.0; 8]).unwrap();
        assert!(matches!(
            asc_theta_verdict(&x, &scheme, &VerdictPolicy::default()),
            Err(Error::SampleTooShort { .. })
        ));
    }

    #[test]
    fn policy_validation() {
        let mut p = VerdictPolicy::default();
        p.tol = 0.3;
        assert!(p.validate().is_err());
        let mut p = VerdictPolicy::default();
        p.n_max = 0;
        assert!(p.validate().is_err());
        assert!(EpsilonGrid::new(vec![0.1, 0.5]).is_err());
        assert!(EpsilonGrid::new(vec![0.5, 0.0]).is_err());
        assert!(EpsilonGrid::new(vec![]).is_err());
    }

    #[test]
    fn statistical_density_examples() {
        let c = generate(&GeneratorSpec::Constant { value: 2.0 }, 50).unwrap();
        assert_eq!(stat_prefix_density(&c, 2.0, 0.5, 50).unwrap(), 0.0);
        assert_eq!(stat_prefix_density(&c, 3.0, 0.5, 50).unwrap(), 1.0);
        let x = spikes(64);
        // oracle: spikes {2,4,8,16,32,64} sit at distance 10 from L = 0
        assert_eq!(stat_prefix_density(&x, 0.0, 1.0, 64).unwrap(), 6.0 / 64.0);
        assert_eq!(stat_prefix_density(&x, 0.0, 1.0, 31).unwrap(), 4.0 / 31.0);
    }

    #[test]
    fn ac_functionals() {
        let c = generate(&GeneratorSpec::Constant { value: 2.0 }, 64).unwrap();
        assert_eq!(ac_sup_deviation(&c, w(3)), 0.0);
        let g = generate(&GeneratorSpec::gcd_identity(12), 500).unwrap();
        assert_eq!(ac_sup_deviation(&g, w(12)), 0.0);
        let lin = SeqSample::from_fn(300, |m| m as f64).unwrap();
        assert_eq!(ac_sup_deviation(&lin, w(1)), 299.0);

        let scheme = LacunaryScheme::new(vec![1, 4, 12]).unwrap();
        let mut v = vec![0.0; 12];
        v[6] = 7.0; // x_7 = A
        let spike = SeqSample::new(v).unwrap();
        assert_eq!(ac_theta_block_mean(&spike, &scheme, w(1), 2).unwrap(), 7.0 / 8.0);
        assert_eq!(ac_theta_block_mean(&spike, &scheme, w(1), 1).unwrap(), 0.0);
        assert_eq!(ac_theta_block_mean(&g, &dyadic(9), w(12), 8).unwrap(), 0.0);
    }

    #[test]
    fn ntheta_functionals() {
        let scheme = dyadic(10);
        let c = generate(&GeneratorSpec::Constant { value: -2.5 }, 512).unwrap();
        assert_eq!(ntheta_mean(&c, &scheme, -2.5, 5).unwrap(), 0.0);
        assert_eq!(ntheta_norm(&c, &scheme).unwrap(), 2.5);
        let alt = SeqSample::from_fn(512, |m| if m % 2 == 0 { 1.0 } else { -1.0 }).unwrap();
        assert_eq!(ntheta_norm(&alt, &scheme).unwrap(), 1.0);
    }

    #[test]
    fn ac_theta_verdict_on_zero_deviation() {
        let g = generate(&GeneratorSpec::gcd_identity(6), 1 << 12).unwrap();
        let v = ac_theta_verdict(&g, &dyadic(13), &VerdictPolicy::default()).unwrap();
        assert_eq!(v.outcome, Outcome::ConvergentAtScale);
        assert_eq!(v.witness, Some(w(6)));
        assert_eq!(v.tails[0].epsilon, None);
    }
}
