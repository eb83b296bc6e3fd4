//! Real functions applied pointwise to samples, empirical ASC_θ-continuity
//! batteries, closure under sum / difference / composition, and the exact
//! three-set decomposition behind the uniform-limit results.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::density::{asc_theta_verdict, check_eps, ConvergenceVerdict, Outcome, VerdictPolicy};
use crate::error::{Error, Result};
use crate::kernel::{gcd_unchecked, SeqSample, WitnessModulus};
use crate::lacunary::LacunaryScheme;
use crate::theorems::{describe_sequence, CheckReport, FamilyMember};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    Linear,
    /// Value of the nearest sample point at or below the argument.
    Previous,
}

/// Total real function given by a descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealFunction {
    Affine { a: f64, b: f64 },
    /// Coefficients in increasing degree: `c_0 + c_1 v + ...`.
    Polynomial { coeffs: Vec<f64> },
    Clamp { lo: f64, hi: f64 },
    /// `outer(inner(v))`.
    Composition { outer: Box<RealFunction>, inner: Box<RealFunction> },
    Sum { left: Box<RealFunction>, right: Box<RealFunction> },
    Difference { left: Box<RealFunction>, right: Box<RealFunction> },
    /// Piecewise rule through `(v, f(v))` points with strictly increasing
    /// `v`; constant beyond the end points.
    Tabulated { points: Vec<(f64, f64)>, rule: Interpolation },
}

impl RealFunction {
    pub fn identity() -> Self {
        RealFunction::Affine { a: 1.0, b: 0.0 }
    }

    /// Unit step at `at`: `below` for `v < at`, `above` for `v >= at`.
    pub fn step(at: f64, below: f64, above: f64) -> Self {
        RealFunction::Tabulated { points: vec![(at - 1.0, below), (at, above)], rule: Interpolation::Previous }
    }

    pub fn compose(outer: RealFunction, inner: RealFunction) -> Self {
        RealFunction::Composition { outer: Box::new(outer), inner: Box::new(inner) }
    }

    pub fn sum(left: RealFunction, right: RealFunction) -> Self {
        RealFunction::Sum { left: Box::new(left), right: Box::new(right) }
    }

    pub fn difference(left: RealFunction, right: RealFunction) -> Self {
        RealFunction::Difference { left: Box::new(left), right: Box::new(right) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.to_string()));
        match self {
            RealFunction::Affine { a, b } if !(a.is_finite() && b.is_finite()) => bad("affine coefficients must be finite"),
            RealFunction::Polynomial { coeffs } if coeffs.iter().any(|c| !c.is_finite()) => {
                bad("polynomial coefficients must be finite")
            }
            RealFunction::Clamp { lo, hi } if !(lo.is_finite() && hi.is_finite() && lo <= hi) => {
                bad("clamp needs finite lo <= hi")
            }
            RealFunction::Tabulated { points, .. } => {
                if points.is_empty() {
                    return bad("tabulated function needs at least one point");
                }
                if points.iter().any(|(v, y)| !v.is_finite() || !y.is_finite()) {
                    return bad("tabulated points must be finite");
                }
                if points.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return bad("tabulated abscissae must be strictly increasing");
                }
                Ok(())
            }
            RealFunction::Composition { outer: l, inner: r }
            | RealFunction::Sum { left: l, right: r }
            | RealFunction::Difference { left: l, right: r } => {
                l.validate()?;
                r.validate()
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, v: f64) -> f64 {
        match self {
            RealFunction::Affine { a, b } => a * v + b,
            RealFunction::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * v + c),
            RealFunction::Clamp { lo, hi } => v.clamp(*lo, *hi),
            RealFunction::Composition { outer, inner } => outer.eval(inner.eval(v)),
            RealFunction::Sum { left, right } => left.eval(v) + right.eval(v),
            RealFunction::Difference { left, right } => left.eval(v) - right.eval(v),
            RealFunction::Tabulated { points, rule } => tabulated(points, *rule, v),
        }
    }
}

fn tabulated(points: &[(f64, f64)], rule: Interpolation, v: f64) -> f64 {
    let (first, last) = (points[0], points[points.len() - 1]);
    if v <= first.0 {
        return first.1;
    }
    if v >= last.0 {
        return last.1;
    }
    // points[i].0 <= v < points[i + 1].0
    let i = points.partition_point(|p| p.0 <= v) - 1;
    let (lo, hi) = (points[i], points[i + 1]);
    match rule {
        Interpolation::Previous => lo.1,
        Interpolation::Linear => lo.1 + (hi.1 - lo.1) * (v - lo.0) / (hi.0 - lo.0),
    }
}

/// Pointwise image `f(x_m)`. The deviation of the image at `(m, n)` is
/// `|f(x_m) - f(x_gcd(m,n))|` because mapping acts index by index.
pub fn map_sequence(f: &RealFunction, x: &SeqSample) -> Result<SeqSample> {
    f.validate()?;
    SeqSample::new(x.values().iter().map(|&v| f.eval(v)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BatteryStatus {
    /// Input not ASC_θ convergent at scale; nothing to preserve.
    Skipped,
    Support,
    Inconclusive,
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryRow {
    pub label: String,
    pub input: ConvergenceVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mapped: Option<ConvergenceVerdict>,
    pub status: BatteryStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub function: RealFunction,
    pub rows: Vec<BatteryRow>,
    pub supports: usize,
    pub inconclusive: usize,
    pub contradictions: usize,
    pub skipped: usize,
}

impl ContinuityReport {
    /// No convergent input was mapped to a non-convergent image.
    pub fn supported(&self) -> bool {
        self.contradictions == 0
    }
}

/// Maps every ASC_θ-convergent family member through `f` and classifies the
/// image's verdict.
pub fn continuity_battery(
    f: &RealFunction,
    family: &[FamilyMember],
    scheme: &LacunaryScheme,
    policy: &VerdictPolicy,
) -> Result<ContinuityReport> {
    f.validate()?;
    let rows: Vec<BatteryRow> = family
        .par_iter()
        .map(|member| {
            let input = asc_theta_verdict(&member.sample, scheme, policy)?;
            if input.outcome != Outcome::ConvergentAtScale {
                return Ok(BatteryRow { label: member.label.clone(), input, mapped: None, status: BatteryStatus::Skipped });
            }
            let mapped = asc_theta_verdict(&map_sequence(f, &member.sample)?, scheme, policy)?;
            let status = match mapped.outcome {
                Outcome::ConvergentAtScale => BatteryStatus::Support,
                Outcome::Inconclusive => BatteryStatus::Inconclusive,
                Outcome::NotConvergentAtScale => BatteryStatus::Contradiction,
            };
            Ok(BatteryRow { label: member.label.clone(), input, mapped: Some(mapped), status })
        })
        .collect::<Result<_>>()?;
    let count = |s: BatteryStatus| rows.iter().filter(|r| r.status == s).count();
    Ok(ContinuityReport {
        function: f.clone(),
        supports: count(BatteryStatus::Support),
        inconclusive: count(BatteryStatus::Inconclusive),
        contradictions: count(BatteryStatus::Contradiction),
        skipped: count(BatteryStatus::Skipped),
        rows,
    })
}

/// Passes iff, whenever `f` and `g` both survive the battery, so do
/// `f + g`, `f - g` and `f ∘ g`.
pub fn closure_checks(
    f: &RealFunction,
    g: &RealFunction,
    family: &[FamilyMember],
    scheme: &LacunaryScheme,
    policy: &VerdictPolicy,
) -> Result<CheckReport> {
    let rf = continuity_battery(f, family, scheme, policy)?;
    let rg = continuity_battery(g, family, scheme, policy)?;
    let instance = json!({
        "f": f, "g": g, "scheme": scheme.points(),
        "family": family.iter().map(|m| m.label.as_str()).collect::<Vec<_>>(),
    });
    if !(rf.supported() && rg.supported()) {
        // premise fails; nothing to check
        return Ok(CheckReport::new("continuity_closure", instance, None));
    }
    let combos = [
        ("sum", RealFunction::sum(f.clone(), g.clone())),
        ("difference", RealFunction::difference(f.clone(), g.clone())),
        ("composition", RealFunction::compose(f.clone(), g.clone())),
    ];
    let mut broken = Vec::new();
    for (name, h) in combos {
        let report = continuity_battery(&h, family, scheme, policy)?;
        if !report.supported() {
            let labels: Vec<&str> = report
                .rows
                .iter()
                .filter(|r| r.status == BatteryStatus::Contradiction)
                .map(|r| r.label.as_str())
                .collect();
            broken.push(json!({ "combination": name, "contradicting_members": labels }));
        }
    }
    let failure = (!broken.is_empty()).then(|| json!(broken));
    Ok(CheckReport::new("continuity_closure", instance, failure))
}

/// Three-set decomposition for a uniformly convergent function sequence.
///
/// Picks the first `N` (1-based) with `max |f_N(v) - f(v)| < ε/3` over the
/// probe set `domain_probe ∪ {x_m}`; refuses with [`Error::Refused`] when no
/// such `N` exists. Then checks on every block of `scheme` inside the sample
///
/// ```text
/// {m : |f(x_m) - f(x_d)| >= ε} ⊆ {m : |f_N(x_d) - f(x_d)| >= ε/3}
///                              ∪ {m : |f_N(x_d) - f_N(x_m)| >= ε/3}
///                              ∪ {m : |f_N(x_m) - f(x_m)| >= ε/3},   d = gcd(m, n).
/// ```
pub fn uniform_limit_check(
    f_list: &[RealFunction],
    f: &RealFunction,
    x: &SeqSample,
    scheme: &LacunaryScheme,
    n: WitnessModulus,
    eps: f64,
    domain_probe: &[f64],
) -> Result<CheckReport> {
    check_eps(eps)?;
    f.validate()?;
    f_list.iter().try_for_each(RealFunction::validate)?;
    let third = eps / 3.0;
    let probe: Vec<f64> = domain_probe.iter().chain(x.values()).copied().collect();
    let sup_gap = |g: &RealFunction| probe.iter().map(|&v| (g.eval(v) - f.eval(v)).abs()).fold(0.0, f64::max);
    let (idx, f_n) = f_list
        .iter()
        .enumerate()
        .find(|(_, g)| sup_gap(g) < third)
        .ok_or_else(|| Error::Refused(format!("no listed function is within ε/3 = {third} of f on the probe set")))?;

    let available = scheme.blocks_within(x.len());
    if available == 0 {
        return Err(Error::BlockOutOfRange { block: 1, available: 0 });
    }
    let instance = json!({
        "sequence": describe_sequence(x), "scheme": scheme.points(), "n": n, "epsilon": eps,
        "f": f, "f_N": f_n, "N": idx + 1, "sup_gap": sup_gap(f_n), "blocks": available,
    });
    let vals = x.values();
    let mut failure = None;
    'blocks: for block in scheme.blocks().take(available) {
        for m in block.indices() {
            let d = gcd_unchecked(m, n.get());
            let (a, b) = (vals[(m - 1) as usize], vals[(d - 1) as usize]);
            if (f.eval(a) - f.eval(b)).abs() < eps {
                continue;
            }
            let covered = (f_n.eval(b) - f.eval(b)).abs() >= third
                || (f_n.eval(b) - f_n.eval(a)).abs() >= third
                || (f_n.eval(a) - f.eval(a)).abs() >= third;
            if !covered {
                failure = Some(json!({ "block": block.index, "m": m, "x_m": a, "x_gcd": b }));
                break 'blocks;
            }
        }
    }
    Ok(CheckReport::new("uniform_limit", instance, failure))
}
