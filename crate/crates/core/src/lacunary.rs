//! Lacunary schemes `k_0 < k_1 < ... < k_R` and their algebra.
//!
//! Block `r` is the half-open integer interval `I_r = (k_{r-1}, k_r]` with
//! length `h_r = k_r - k_{r-1}` and ratio `q_r = k_r / k_{r-1}`. Blocks are
//! numbered from 1, so a scheme with `R + 1` points has `R` blocks.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::density::block_density;
use crate::error::{Error, Result};
use crate::kernel::{SeqSample, WitnessModulus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LacunaryScheme {
    points: Vec<u64>,
    advisory: bool,
}

/// One block `(start, end]` of a scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// 1-based block number `r`.
    pub index: usize,
    /// `k_{r-1}`, excluded.
    pub start: u64,
    /// `k_r`, included.
    pub end: u64,
}

impl Block {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn contains(&self, m: u64) -> bool {
        self.start < m && m <= self.end
    }

    pub fn indices(&self) -> RangeInclusive<u64> {
        self.start + 1..=self.end
    }
}

impl LacunaryScheme {
    /// Builds a scheme from strictly increasing points with `k_0 >= 1`.
    pub fn new(points: Vec<u64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidScheme(format!(
                "need at least two points, got {}",
                points.len()
            )));
        }
        if points[0] < 1 {
            return Err(Error::InvalidScheme("k_0 must be >= 1".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScheme(format!(
                "points must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let advisory = !lengths_grow(&points);
        Ok(LacunaryScheme { points, advisory })
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    /// Number of blocks `R`.
    pub fn num_blocks(&self) -> usize {
        self.points.len() - 1
    }

    pub fn first_point(&self) -> u64 {
        self.points[0]
    }

    pub fn last_point(&self) -> u64 {
        *self.points.last().unwrap()
    }

    /// Set when block lengths do not visibly grow: the mean of the last
    /// quarter of `h_r` does not exceed the mean of the first quarter.
    pub fn lacunarity_advisory(&self) -> bool {
        self.advisory
    }

    pub fn block(&self, r: usize) -> Result<Block> {
        if r == 0 || r > self.num_blocks() {
            return Err(Error::BlockOutOfRange { block: r, available: self.num_blocks() });
        }
        Ok(Block { index: r, start: self.points[r - 1], end: self.points[r] })
    }

    pub fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        self.points
            .windows(2)
            .enumerate()
            .map(|(i, w)| Block { index: i + 1, start: w[0], end: w[1] })
    }

    /// Number of leading blocks that fit inside a sample of length `len`.
    pub fn blocks_within(&self, len: u64) -> usize {
        self.points[1..].iter().take_while(|&&k| k <= len).count()
    }

    pub fn lengths(&self) -> Vec<u64> {
        self.points.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.points.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect()
    }

    pub fn contains_point(&self, k: u64) -> bool {
        self.points.binary_search(&k).is_ok()
    }

    /// Keeps the points `<= len`; fails if fewer than two remain.
    pub fn truncated(&self, len: u64) -> Result<Self> {
        LacunaryScheme::new(self.points.iter().copied().take_while(|&k| k <= len).collect())
    }
}

fn lengths_grow(points: &[u64]) -> bool {
    let h: Vec<u64> = points.windows(2).map(|w| w[1] - w[0]).collect();
    let q = (h.len() / 4).max(1);
    let mean = |s: &[u64]| s.iter().map(|&v| v as f64).sum::<f64>() / s.len() as f64;
    mean(&h[h.len() - q..]) > mean(&h[..q])
}

/// Convenience constructor mirroring [`LacunaryScheme::new`].
pub fn make_scheme(points: Vec<u64>) -> Result<LacunaryScheme> {
    LacunaryScheme::new(points)
}

/// Serialized form of a scheme: an explicit point list or a generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeSpec {
    Explicit(Vec<u64>),
    Generated(SchemeGenerator),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeGenerator {
    /// `k_r = floor(start * ratio^r)` for `r = 0..count`.
    Geometric {
        ratio: f64,
        count: usize,
        #[serde(default = "one")]
        start: u64,
    },
    /// `k_r = r^degree` for `r = 1..=count`.
    Polynomial { degree: u32, count: usize },
    /// `k_r = r!` for `r = 1..=count`.
    Factorial { count: usize },
}

fn one() -> u64 {
    1
}

impl SchemeSpec {
    pub fn build(&self) -> Result<LacunaryScheme> {
        match self {
            SchemeSpec::Explicit(points) => LacunaryScheme::new(points.clone()),
            SchemeSpec::Generated(g) => g.build(),
        }
    }
}

impl SchemeGenerator {
    pub fn build(&self) -> Result<LacunaryScheme> {
        let overflow = || Error::InvalidScheme(format!("{self:?} overflows u64"));
        let points = match *self {
            SchemeGenerator::Geometric { ratio, count, start } => {
                if !(ratio.is_finite() && ratio > 1.0) {
                    return Err(Error::InvalidScheme(format!("geometric ratio must exceed 1, got {ratio}")));
                }
                let mut out = Vec::with_capacity(count);
                for r in 0..count {
                    let v = (start as f64 * ratio.powi(r as i32)).floor();
                    if v >= u64::MAX as f64 {
                        return Err(overflow());
                    }
                    out.push(v as u64);
                }
                out
            }
            SchemeGenerator::Polynomial { degree, count } => {
                if degree == 0 {
                    return Err(Error::InvalidScheme("polynomial degree must be >= 1".into()));
                }
                (1..=count as u64)
                    .map(|r| r.checked_pow(degree).ok_or_else(overflow))
                    .collect::<Result<_>>()?
            }
            SchemeGenerator::Factorial { count } => {
                let mut out = Vec::with_capacity(count);
                let mut f: u64 = 1;
                for r in 1..=count as u64 {
                    f = f.checked_mul(r).ok_or_else(overflow)?;
                    out.push(f);
                }
                out
            }
        };
        LacunaryScheme::new(points)
    }
}

/// Exact ratio `part / whole` of two integer counts. Equality and ordering
/// compare the rational values, so `2/6 == 1/3`.
#[derive(Clone, Copy, Debug)]
pub struct BlockRatio {
    pub part: u64,
    pub whole: u64,
}

impl BlockRatio {
    pub fn new(part: u64, whole: u64) -> Self {
        assert!(whole > 0, "ratio with zero denominator");
        BlockRatio { part, whole }
    }

    pub fn value(&self) -> f64 {
        self.part as f64 / self.whole as f64
    }
}

impl PartialEq for BlockRatio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BlockRatio {}

impl Ord for BlockRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.part as u128 * other.whole as u128).cmp(&(other.part as u128 * self.whole as u128))
    }
}

impl PartialOrd for BlockRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.part, self.whole)
    }
}

impl Serialize for BlockRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BlockRatio", 3)?;
        s.serialize_field("part", &self.part)?;
        s.serialize_field("whole", &self.whole)?;
        s.serialize_field("value", &self.value())?;
        s.end()
    }
}

/// Trailing-tail estimates of `liminf q_r` and `limsup q_r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioStats {
    pub liminf: f64,
    pub limsup: f64,
    pub tail_len: usize,
}

/// Min and max of `q_r` over the trailing `tail_fraction` of the blocks.
pub fn q_ratio_stats(scheme: &LacunaryScheme, tail_fraction: f64) -> Result<RatioStats> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!("tail fraction must lie in (0, 1], got {tail_fraction}")));
    }
    let q = scheme.ratios();
    if q.len() < 2 {
        return Err(Error::InvalidArgument("ratio statistics need at least two ratios".into()));
    }
    let tail_len = ((q.len() as f64 * tail_fraction).ceil() as usize).min(q.len());
    if tail_len == 0 {
        return Err(Error::InvalidArgument("empty ratio tail".into()));
    }
    let tail = &q[q.len() - tail_len..];
    Ok(RatioStats {
        liminf: tail.iter().copied().fold(f64::INFINITY, f64::min),
        limsup: tail.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        tail_len,
    })
}

/// True iff every point of `coarse` is a point of `fine`.
pub fn is_refinement(coarse: &LacunaryScheme, fine: &LacunaryScheme) -> bool {
    first_missing(coarse, fine).is_none()
}

fn first_missing(coarse: &LacunaryScheme, fine: &LacunaryScheme) -> Option<u64> {
    coarse.points.iter().copied().find(|&k| !fine.contains_point(k))
}

/// Sorted union of the point sets; a refinement of both inputs.
pub fn union_refinement(a: &LacunaryScheme, b: &LacunaryScheme) -> LacunaryScheme {
    let mut points = Vec::with_capacity(a.points.len() + b.points.len());
    let (mut i, mut j) = (0, 0);
    while i < a.points.len() || j < b.points.len() {
        let next = match (a.points.get(i), b.points.get(j)) {
            (Some(&p), Some(&q)) if p == q => {
                i += 1;
                j += 1;
                p
            }
            (Some(&p), Some(&q)) if p < q => {
                i += 1;
                p
            }
            (Some(_), Some(&q)) => {
                j += 1;
                q
            }
            (Some(&p), None) => {
                i += 1;
                p
            }
            (None, Some(&q)) => {
                j += 1;
                q
            }
            (None, None) => unreachable!(),
        };
        points.push(next);
    }
    let out = LacunaryScheme::new(points).expect("union of valid schemes is valid");
    assert!(is_refinement(a, &out) && is_refinement(b, &out));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Refinement,
    GeneralPair,
}

/// A nonempty piece `I_outer ∩ J_inner` with its share of the outer block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationPiece {
    /// Block number in the first (coarse) scheme.
    pub outer: usize,
    /// Block number in the second (fine) scheme.
    pub inner: usize,
    pub start: u64,
    pub end: u64,
    /// `|piece| / |outer block|`.
    pub ratio: BlockRatio,
}

impl RelationPiece {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemeRelation {
    pub kind: RelationKind,
    pub pieces: Vec<RelationPiece>,
    /// Minimum piece ratio.
    pub delta: BlockRatio,
}

impl SchemeRelation {
    /// Pieces lying in outer block `r`, in increasing order.
    pub fn pieces_in(&self, r: usize) -> impl Iterator<Item = &RelationPiece> + '_ {
        self.pieces.iter().filter(move |p| p.outer == r)
    }
}

/// For each coarse block, the fine blocks tiling it.
pub fn refinement_map(coarse: &LacunaryScheme, fine: &LacunaryScheme) -> Result<SchemeRelation> {
    if let Some(k) = first_missing(coarse, fine) {
        return Err(Error::NotRefinement(k));
    }
    let mut pieces = Vec::new();
    let fine_blocks: Vec<Block> = fine.blocks().collect();
    // fine blocks before k_0 fall outside every coarse block
    let mut j = fine_blocks.partition_point(|b| b.end <= coarse.first_point());
    for outer in coarse.blocks() {
        while j < fine_blocks.len() && fine_blocks[j].end <= outer.end {
            let fb = fine_blocks[j];
            pieces.push(RelationPiece {
                outer: outer.index,
                inner: fb.index,
                start: fb.start,
                end: fb.end,
                ratio: BlockRatio::new(fb.len(), outer.len()),
            });
            j += 1;
        }
    }
    let delta = pieces.iter().map(|p| p.ratio).min().expect("coarse scheme has a block");
    Ok(SchemeRelation { kind: RelationKind::Refinement, pieces, delta })
}

/// All nonempty intersections `I_i ∩ J_j` with ratios `|I_ij| / |I_i|`.
///
/// Parts of `a`'s range not covered by `b`'s blocks produce no piece.
pub fn block_intersections(a: &LacunaryScheme, b: &LacunaryScheme) -> SchemeRelation {
    let a_blocks: Vec<Block> = a.blocks().collect();
    let b_blocks: Vec<Block> = b.blocks().collect();
    let mut pieces = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a_blocks.len() && j < b_blocks.len() {
        let (ia, jb) = (a_blocks[i], b_blocks[j]);
        let lo = ia.start.max(jb.start);
        let hi = ia.end.min(jb.end);
        if lo < hi {
            pieces.push(RelationPiece {
                outer: ia.index,
                inner: jb.index,
                start: lo,
                end: hi,
                ratio: BlockRatio::new(hi - lo, ia.len()),
            });
        }
        if ia.end <= jb.end {
            i += 1;
        } else {
            j += 1;
        }
    }
    // a scheme lying entirely outside the other's range has no pieces; δ is reported as 0
    let delta = pieces.iter().map(|p| p.ratio).min().unwrap_or(BlockRatio::new(0, 1));
    SchemeRelation { kind: RelationKind::GeneralPair, pieces, delta }
}

/// δ of a refinement: the minimum `|J| / |I|` over fine blocks `J ⊆ I`.
pub fn delta_refinement(coarse: &LacunaryScheme, fine: &LacunaryScheme) -> Result<BlockRatio> {
    Ok(refinement_map(coarse, fine)?.delta)
}

/// δ of a general pair: the minimum `|I_ij| / |I_i|` over nonempty intersections.
pub fn delta_intersection(a: &LacunaryScheme, b: &LacunaryScheme) -> BlockRatio {
    block_intersections(a, b).delta
}

/// Coarse block density rebuilt from the fine blocks it contains:
/// `(1/h_r) * Σ_{J ⊆ I_r} h_J * density(J)`.
pub fn coarse_block_density_from_fine(
    x: &SeqSample,
    coarse: &LacunaryScheme,
    fine: &LacunaryScheme,
    n: WitnessModulus,
    eps: f64,
    r: usize,
) -> Result<f64> {
    let relation = refinement_map(coarse, fine)?;
    let block = coarse.block(r)?;
    let mut acc = 0.0;
    for piece in relation.pieces_in(r) {
        acc += piece.len() as f64 * block_density(x, fine, n, eps, piece.inner)?;
    }
    Ok(acc / block.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(p: &[u64]) -> LacunaryScheme {
        LacunaryScheme::new(p.to_vec()).unwrap()
    }

    #[test]
    fn derived_quantities() {
        let s = scheme(&[1, 2, 4, 8, 16]);
        assert_eq!(s.lengths(), vec![1, 2, 4, 8]);
        assert_eq!(s.ratios(), vec![2.0; 4]);
        assert!(!s.lacunarity_advisory());
        assert_eq!(s.block(2).unwrap(), Block { index: 2, start: 2, end: 4 });
        assert!(s.block(0).is_err());
        assert!(s.block(5).is_err());
        assert_eq!(s.blocks_within(10), 3);

        assert!(scheme(&[1, 2, 3, 4]).lacunarity_advisory());

        let f = SchemeGenerator::Factorial { count: 5 }.build().unwrap();
        assert_eq!(f.points(), &[1, 2, 6, 24, 120]);
        assert_eq!(f.ratios(), vec![2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn rejects_invalid_points() {
        assert!(LacunaryScheme::new(vec![0, 1, 2]).is_err());
        assert!(LacunaryScheme::new(vec![1, 3, 3]).is_err());
        assert!(LacunaryScheme::new(vec![4, 2]).is_err());
        assert!(LacunaryScheme::new(vec![1]).is_err());
    }

    #[test]
    fn generators() {
        let g = SchemeGenerator::Geometric { ratio: 2.0, count: 5, start: 1 }.build().unwrap();
        assert_eq!(g.points(), &[1, 2, 4, 8, 16]);
        let p = SchemeGenerator::Polynomial { degree: 2, count: 4 }.build().unwrap();
        assert_eq!(p.points(), &[1, 4, 9, 16]);
        assert!(SchemeGenerator::Factorial { count: 25 }.build().is_err());
        assert!(SchemeGenerator::Geometric { ratio: 1.1, count: 5, start: 1 }.build().is_err());

        let spec: SchemeSpec = serde_json::from_str(r#"{"geometric": {"ratio": 2.0, "count": 3}}"#).unwrap();
        assert_eq!(spec.build().unwrap().points(), &[1, 2, 4]);
        let spec: SchemeSpec = serde_json::from_str("[1, 4, 16]").unwrap();
        assert_eq!(spec.build().unwrap().points(), &[1, 4, 16]);
        let spec: SchemeSpec = serde_json::from_str(r#"{"factorial": {"count": 4}}"#).unwrap();
        assert_eq!(spec.build().unwrap().points(), &[1, 2, 6, 24]);
    }

    #[test]
    fn ratio_stats() {
        let g = SchemeGenerator::Geometric { ratio: 2.0, count: 12, start: 1 }.build().unwrap();
        let st = q_ratio_stats(&g, 0.5).unwrap();
        assert_eq!((st.liminf, st.limsup), (2.0, 2.0));

        let sq = SchemeGenerator::Polynomial { degree: 2, count: 100 }.build().unwrap();
        let st = q_ratio_stats(&sq, 0.5).unwrap();
        // tail minimum is the last ratio (100/99)^2
        let oracle = (100.0f64 / 99.0).powi(2);
        assert!((st.liminf - oracle).abs() < 1e-12);
        assert!(st.liminf > 1.0 && st.liminf < 1.05);

        let f = SchemeGenerator::Factorial { count: 10 }.build().unwrap();
        assert_eq!(q_ratio_stats(&f, 0.5).unwrap().limsup, 10.0);

        assert!(q_ratio_stats(&scheme(&[1, 2]), 0.5).is_err());
        assert!(q_ratio_stats(&g, 0.0).is_err());
        assert!(q_ratio_stats(&g, 1.5).is_err());
    }

    #[test]
    fn refinement_relation() {
        let coarse = scheme(&[1, 4, 16]);
        assert!(is_refinement(&coarse, &scheme(&[1, 2, 4, 8, 16])));
        assert!(!is_refinement(&coarse, &scheme(&[1, 3, 9, 27])));
        assert!(is_refinement(&coarse, &coarse));
        assert!(matches!(refinement_map(&coarse, &scheme(&[1, 3, 9, 27])), Err(Error::NotRefinement(4))));
    }

    #[test]
    fn refinement_map_examples() {
        let rel = refinement_map(&scheme(&[1, 4, 16]), &scheme(&[1, 2, 4, 8, 16])).unwrap();
        let spans: Vec<(usize, u64, u64)> = rel.pieces.iter().map(|p| (p.outer, p.start, p.end)).collect();
        assert_eq!(spans, vec![(1, 1, 2), (1, 2, 4), (2, 4, 8), (2, 8, 16)]);
        assert_eq!(rel.delta, BlockRatio::new(1, 3));

        let s = scheme(&[1, 3, 10, 40]);
        let own = refinement_map(&s, &s).unwrap();
        assert!(own.pieces.iter().all(|p| p.outer == p.inner && p.ratio.value() == 1.0));
        assert_eq!(own.delta.value(), 1.0);

        let rel = refinement_map(&scheme(&[1, 8]), &scheme(&[1, 2, 3, 8])).unwrap();
        let ratios: Vec<BlockRatio> = rel.pieces.iter().map(|p| p.ratio).collect();
        assert_eq!(ratios, vec![BlockRatio::new(1, 7), BlockRatio::new(1, 7), BlockRatio::new(5, 7)]);
        assert_eq!(rel.delta, BlockRatio::new(1, 7));
    }

    #[test]
    fn refinement_ignores_fine_blocks_outside_coarse_range() {
        let rel = refinement_map(&scheme(&[4, 16]), &scheme(&[1, 4, 8, 16, 32])).unwrap();
        assert_eq!(rel.pieces.len(), 2);
        let total: u64 = rel.pieces.iter().map(|p| p.len()).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn union_examples() {
        assert_eq!(union_refinement(&scheme(&[1, 4, 16]), &scheme(&[1, 2, 8, 16])).points(), &[1, 2, 4, 8, 16]);
        let t = scheme(&[2, 5, 11]);
        assert_eq!(union_refinement(&t, &t), t);
        assert_eq!(union_refinement(&scheme(&[2, 6, 18]), &scheme(&[1, 6, 36])).points(), &[1, 2, 6, 18, 36]);
    }

    #[test]
    fn intersection_examples() {
        let a = scheme(&[1, 4, 16]);
        let same = block_intersections(&a, &a);
        assert_eq!(same.pieces.len(), 2);
        assert_eq!(same.delta.value(), 1.0);

        let rel = block_intersections(&a, &scheme(&[1, 8, 16]));
        let got: Vec<(usize, usize, u64, BlockRatio)> =
            rel.pieces.iter().map(|p| (p.outer, p.inner, p.len(), p.ratio)).collect();
        assert_eq!(
            got,
            vec![
                (1, 1, 3, BlockRatio::new(3, 3)),
                (2, 1, 4, BlockRatio::new(4, 12)),
                (2, 2, 8, BlockRatio::new(8, 12)),
            ]
        );
        assert_eq!(rel.delta, BlockRatio::new(1, 3));
        assert_eq!(delta_intersection(&a, &scheme(&[1, 8, 16])), BlockRatio::new(1, 3));

        // shifted schemes tiling overlapping ranges still meet
        let rel = block_intersections(&scheme(&[1, 5, 9, 13]), &scheme(&[3, 7, 11, 15]));
        assert!(!rel.pieces.is_empty());
        assert!(rel.pieces.iter().all(|p| !p.is_empty()));
    }

    #[test]
    fn block_ratio_ordering_is_exact() {
        assert!(BlockRatio::new(1, 3) < BlockRatio::new(2, 5));
        assert_eq!(BlockRatio::new(2, 6).cmp(&BlockRatio::new(1, 3)), Ordering::Equal);
        assert_eq!(BlockRatio::new(1, 3).to_string(), "1/3");
    }
}
