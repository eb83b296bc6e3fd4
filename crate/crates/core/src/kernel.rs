//! gcd arithmetic, finite sequence samples and the gcd-indexed deviation
//! `|x_m - x_gcd(m, n)|`, plus the deterministic generator families used by
//! the check harness.
//!
//! Sequences are 1-indexed: `m` runs over `1..=T` and index 0 never exists.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Greatest common divisor of two positive integers.
pub fn gcd_pair(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "gcd arguments must be positive, got ({m}, {n})"
        )));
    }
    Ok(gcd_unchecked(m, n))
}

#[inline]
pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Sorted positive divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The integer `n` whose gcd indexing defines the deviation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct WitnessModulus(u64);

impl WitnessModulus {
    pub const ONE: WitnessModulus = WitnessModulus(1);

    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("witness modulus must be >= 1".into()));
        }
        Ok(WitnessModulus(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for WitnessModulus {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        WitnessModulus::new(n)
    }
}

impl From<WitnessModulus> for u64 {
    fn from(n: WitnessModulus) -> u64 {
        n.0
    }
}

impl fmt::Display for WitnessModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Finite truncation `x_1, ..., x_T` of a real sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqSample {
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    recipe: Option<GeneratorSpec>,
}

impl SeqSample {
    /// Wraps raw values; `values[0]` is `x_1`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("sample must hold at least x_1".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "x_{} = {} is not finite",
                i + 1,
                values[i]
            )));
        }
        Ok(SeqSample { values, recipe: None })
    }

    pub fn from_fn(len: u64, f: impl Fn(u64) -> f64) -> Result<Self> {
        SeqSample::new((1..=len).map(f).collect())
    }

    pub fn with_recipe(mut self, recipe: GeneratorSpec) -> Self {
        self.recipe = Some(recipe);
        self
    }

    pub fn recipe(&self) -> Option<&GeneratorSpec> {
        self.recipe.as_ref()
    }

    /// Sample length `T`.
    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `x_m` for `1 <= m <= T`.
    pub fn get(&self, m: u64) -> Result<f64> {
        if m == 0 || m > self.len() {
            return Err(Error::IndexOutOfRange { index: m, len: self.len() });
        }
        Ok(self.values[(m - 1) as usize])
    }

    #[inline]
    pub(crate) fn at(&self, m: u64) -> f64 {
        self.values[(m - 1) as usize]
    }

    /// Pointwise `c * x`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let out = SeqSample::new(self.values.iter().map(|v| c * v).collect())?;
        Ok(match &self.recipe {
            Some(r) => out.with_recipe(GeneratorSpec::Scaled { factor: c, inner: Box::new(r.clone()) }),
            None => out,
        })
    }

    /// Pointwise `x + y`; both samples must have the same length.
    pub fn add(&self, other: &SeqSample) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot add samples of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        let out = SeqSample::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())?;
        Ok(match (&self.recipe, &other.recipe) {
            (Some(a), Some(b)) => out.with_recipe(GeneratorSpec::Sum {
                left: Box::new(a.clone()),
                right: Box::new(b.clone()),
            }),
            _ => out,
        })
    }

    /// First `t` terms.
    pub fn truncated(&self, t: u64) -> Result<Self> {
        if t == 0 || t > self.len() {
            return Err(Error::IndexOutOfRange { index: t, len: self.len() });
        }
        Ok(SeqSample { values: self.values[..t as usize].to_vec(), recipe: self.recipe.clone() })
    }

    pub(crate) fn check_index(&self, m: u64) -> Result<()> {
        if m == 0 || m > self.len() {
            Err(Error::IndexOutOfRange { index: m, len: self.len() })
        } else {
            Ok(())
        }
    }
}

/// `|x_m - x_gcd(m, n)|`, zero whenever `m` divides `n`.
pub fn deviation(x: &SeqSample, m: u64, n: WitnessModulus) -> Result<f64> {
    x.check_index(m)?;
    Ok(deviation_unchecked(x, m, n.get()))
}

#[inline]
pub(crate) fn deviation_unchecked(x: &SeqSample, m: u64, n: u64) -> f64 {
    let d = gcd_unchecked(m, n);
    (x.at(m) - x.at(d)).abs()
}

/// Deviations for every `m` in `1..=T`; entry `i` belongs to `m = i + 1`.
pub fn deviations(x: &SeqSample, n: WitnessModulus) -> Vec<f64> {
    (1..=x.len()).map(|m| deviation_unchecked(x, m, n.get())).collect()
}

/// Deterministic recipe for a test-family sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Constant {
        value: f64,
    },
    /// `x_m = table[gcd(m, modulus)]`; one `(divisor, value)` entry per divisor.
    GcdPeriodic {
        modulus: u64,
        table: Vec<(u64, f64)>,
    },
    /// `base` everywhere except on `support`, where the j-th support point
    /// carries `base + values[j % values.len()]`.
    SparseSpike {
        support: SpikeSupport,
        values: Vec<f64>,
        #[serde(default)]
        base: f64,
    },
    Scaled {
        factor: f64,
        inner: Box<GeneratorSpec>,
    },
    Sum {
        left: Box<GeneratorSpec>,
        right: Box<GeneratorSpec>,
    },
}

/// Where the spikes of a [`GeneratorSpec::SparseSpike`] sit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum SpikeSupport {
    Explicit { indices: Vec<u64> },
    /// `{ base^j : j >= 1 } ∩ [min_index, ∞)`; natural density zero.
    Powers { base: u64, min_index: u64 },
    /// Each `m >= min_index` is included independently with probability
    /// `min(1, scale * m^-exponent)`, drawn from a ChaCha stream keyed by `seed`.
    Random { seed: u64, scale: f64, exponent: f64, min_index: u64 },
}

impl Default for SpikeSupport {
    fn default() -> Self {
        SpikeSupport::Powers { base: 2, min_index: 2 }
    }
}

impl SpikeSupport {
    /// Support points `<= len`, strictly increasing.
    pub fn points(&self, len: u64) -> Result<Vec<u64>> {
        match self {
            SpikeSupport::Explicit { indices } => {
                if indices.contains(&0) {
                    return Err(Error::InvalidSpec("spike indices are 1-based".into()));
                }
                if indices.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidSpec("spike support must be strictly increasing".into()));
                }
                Ok(indices.iter().copied().take_while(|&m| m <= len).collect())
            }
            SpikeSupport::Powers { base, min_index } => {
                if *base < 2 {
                    return Err(Error::InvalidSpec(format!("power support needs base >= 2, got {base}")));
                }
                let mut out = Vec::new();
                let mut p = *base;
                while p <= len {
                    if p >= *min_index {
                        out.push(p);
                    }
                    match p.checked_mul(*base) {
                        Some(next) => p = next,
                        None => break,
                    }
                }
                Ok(out)
            }
            SpikeSupport::Random { seed, scale, exponent, min_index } => {
                if !(scale.is_finite() && *scale >= 0.0 && exponent.is_finite()) {
                    return Err(Error::InvalidSpec("random support needs finite scale >= 0 and exponent".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let start = (*min_index).max(1);
                let mut out = Vec::new();
                for m in 1..=len {
                    // one draw per index keeps supports prefix-consistent across lengths
                    let u: f64 = rng.gen();
                    if m < start {
                        continue;
                    }
                    let p = (scale * (m as f64).powf(-exponent)).min(1.0);
                    if u < p {
                        out.push(m);
                    }
                }
                Ok(out)
            }
        }
    }
}

impl GeneratorSpec {
    /// `gcd_periodic` whose table maps each divisor to itself.
    pub fn gcd_identity(modulus: u64) -> Self {
        GeneratorSpec::GcdPeriodic {
            modulus,
            table: divisors(modulus).into_iter().map(|d| (d, d as f64)).collect(),
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        GeneratorSpec::Scaled { factor, inner: Box::new(self) }
    }

    pub fn plus(self, other: GeneratorSpec) -> Self {
        GeneratorSpec::Sum { left: Box::new(self), right: Box::new(other) }
    }

    /// Modulus at which the generated sequence has identically zero
    /// deviation, when the recipe is built only from constants and
    /// gcd-periodic parts (sums combine moduli by lcm).
    pub fn gcd_periodic_modulus(&self) -> Option<u64> {
        match self {
            GeneratorSpec::Constant { .. } => Some(1),
            GeneratorSpec::GcdPeriodic { modulus, .. } => Some(*modulus),
            GeneratorSpec::SparseSpike { .. } => None,
            GeneratorSpec::Scaled { inner, .. } => inner.gcd_periodic_modulus(),
            GeneratorSpec::Sum { left, right } => {
                let (a, b) = (left.gcd_periodic_modulus()?, right.gcd_periodic_modulus()?);
                Some(a / gcd_unchecked(a, b) * b)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorSpec::Constant { value } => finite(*value, "constant value"),
            GeneratorSpec::GcdPeriodic { modulus, table } => {
                if *modulus == 0 {
                    return Err(Error::InvalidSpec("gcd_periodic modulus must be >= 1".into()));
                }
                let mut keys: Vec<u64> = table.iter().map(|(d, _)| *d).collect();
                keys.sort_unstable();
                if keys != divisors(*modulus) {
                    return Err(Error::InvalidSpec(format!(
                        "gcd_periodic table must have exactly one entry per divisor of {modulus}"
                    )));
                }
                table.iter().try_for_each(|(_, v)| finite(*v, "table value"))
            }
            GeneratorSpec::SparseSpike { support, values, base } => {
                if values.is_empty() {
                    return Err(Error::InvalidSpec("sparse_spike needs at least one spike value".into()));
                }
                values.iter().try_for_each(|v| finite(*v, "spike value"))?;
                finite(*base, "spike base")?;
                support.points(0).map(|_| ())
            }
            GeneratorSpec::Scaled { factor, inner } => {
                finite(*factor, "scale factor")?;
                inner.validate()
            }
            GeneratorSpec::Sum { left, right } => {
                left.validate()?;
                right.validate()
            }
        }
    }

    fn fill(&self, len: u64) -> Result<Vec<f64>> {
        let n = len as usize;
        Ok(match self {
            GeneratorSpec::Constant { value } => vec![*value; n],
            GeneratorSpec::GcdPeriodic { modulus, table } => {
                let lookup = |d: u64| table.iter().find(|(k, _)| *k == d).map(|(_, v)| *v);
                let by_divisor: Vec<(u64, f64)> = divisors(*modulus)
                    .into_iter()
                    .map(|d| (d, lookup(d).unwrap_or(f64::NAN)))
                    .collect();
                (1..=len)
                    .map(|m| {
                        let d = gcd_unchecked(m, *modulus);
                        by_divisor.iter().find(|(k, _)| *k == d).map_or(f64::NAN, |(_, v)| *v)
                    })
                    .collect()
            }
            GeneratorSpec::SparseSpike { support, values, base } => {
                let mut out = vec![*base; n];
                for (j, m) in support.points(len)?.into_iter().enumerate() {
                    out[(m - 1) as usize] = base + values[j % values.len()];
                }
                out
            }
            GeneratorSpec::Scaled { factor, inner } => {
                inner.fill(len)?.into_iter().map(|v| factor * v).collect()
            }
            GeneratorSpec::Sum { left, right } => {
                let a = left.fill(len)?;
                let b = right.fill(len)?;
                a.into_iter().zip(b).map(|(u, v)| u + v).collect()
            }
        })
    }
}

fn finite(v: f64, what: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{what} must be finite, got {v}")))
    }
}

/// Materializes `x_1..x_T` from a recipe; identical `(spec, len)` give identical samples.
pub fn generate(spec: &GeneratorSpec, len: u64) -> Result<SeqSample> {
    if len == 0 {
        return Err(Error::InvalidArgument("sample length must be >= 1".into()));
    }
    spec.validate()?;
    Ok(SeqSample::new(spec.fill(len)?)?.with_recipe(spec.clone()))
}
