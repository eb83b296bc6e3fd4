//! Sequence families and randomized instances for the check harness.
//!
//! Random values live on the lattice `k / 4` with small `k`, so scaling by
//! the harness factors `±{0.5, 1, 3, 10}` and pairwise sums are exact in
//! double precision.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kernel::{divisors, generate, GeneratorSpec, SeqSample, SpikeSupport, WitnessModulus};
use crate::lacunary::{LacunaryScheme, SchemeGenerator};

/// Scale factors exercised by the scalar-closure checks.
pub const SCALE_FACTORS: [f64; 8] = [0.5, -0.5, 1.0, -1.0, 3.0, -3.0, 10.0, -10.0];

/// A labelled member of an experiment family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub label: String,
    pub sample: SeqSample,
}

impl FamilyMember {
    pub fn generate(label: impl Into<String>, spec: &GeneratorSpec, len: u64) -> Result<Self> {
        Ok(FamilyMember { label: label.into(), sample: generate(spec, len)? })
    }

    /// True when the recipe has identically zero deviation at some modulus.
    pub fn is_gcd_periodic(&self) -> bool {
        self.sample.recipe().and_then(GeneratorSpec::gcd_periodic_modulus).is_some()
    }
}

fn table(modulus: u64, f: impl Fn(u64) -> f64) -> GeneratorSpec {
    GeneratorSpec::GcdPeriodic { modulus, table: divisors(modulus).into_iter().map(|d| (d, f(d))).collect() }
}

/// Spikes at powers of `base` from `min_index` on.
pub fn power_spikes(base: u64, min_index: u64, value: f64) -> GeneratorSpec {
    GeneratorSpec::SparseSpike { support: SpikeSupport::Powers { base, min_index }, values: vec![value], base: 0.0 }
}

/// The twelve-member family of gcd-periodic bases, density-zero spikes and
/// their scaled and summed combinations.
///
/// Spike supports start above `min_spike`, so no spike can sit at an index
/// `gcd(m, n)` with `n < min_spike`.
pub fn standard_family(min_spike: u64) -> Vec<(String, GeneratorSpec)> {
    let periodic6 = GeneratorSpec::gcd_identity(6);
    let periodic12 = table(12, |d| (d % 5) as f64 * 0.75 - 1.0);
    let dyadic_spikes = power_spikes(2, min_spike, 10.0);
    let triadic_spikes = power_spikes(3, min_spike, -4.0);
    let random_spikes = GeneratorSpec::SparseSpike {
        support: SpikeSupport::Random { seed: 17, scale: 4.0, exponent: 1.0, min_index: min_spike },
        values: vec![2.5, -6.0, 1.25],
        base: 0.0,
    };
    vec![
        ("constant".into(), GeneratorSpec::Constant { value: 1.5 }),
        ("gcd6".into(), periodic6.clone()),
        ("gcd12".into(), periodic12.clone()),
        ("gcd10+gcd6".into(), table(10, |d| d as f64 / 4.0).plus(periodic6.clone())),
        ("dyadic-spikes".into(), dyadic_spikes.clone()),
        ("gcd12+dyadic-spikes".into(), periodic12.clone().plus(dyadic_spikes.clone())),
        ("-3*(gcd12+dyadic-spikes)".into(), periodic12.clone().plus(dyadic_spikes).scaled(-3.0)),
        ("0.5*gcd6".into(), periodic6.clone().scaled(0.5)),
        ("gcd6+triadic-spikes".into(), periodic6.plus(triadic_spikes)),
        ("random-spikes".into(), random_spikes.clone()),
        ("2*gcd12+random-spikes".into(), periodic12.scaled(2.0).plus(random_spikes)),
        ("gcd4+gcd9".into(), table(4, |d| -(d as f64)).plus(table(9, |d| d as f64 * 0.5))),
    ]
}

pub fn materialize(family: &[(String, GeneratorSpec)], len: u64) -> Result<Vec<FamilyMember>> {
    family.iter().map(|(label, spec)| FamilyMember::generate(label.clone(), spec, len)).collect()
}

/// Random instance generator driven by a seeded ChaCha stream.
pub struct RandomInstances {
    rng: ChaCha8Rng,
}

impl RandomInstances {
    pub fn new(rng: ChaCha8Rng) -> Self {
        RandomInstances { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn lattice(&mut self, span: i32) -> f64 {
        self.rng.gen_range(-span..=span) as f64 / 4.0
    }

    pub fn len(&mut self, min: u64, max: u64) -> u64 {
        self.rng.gen_range(min..=max)
    }

    pub fn n(&mut self, n_max: u64) -> WitnessModulus {
        WitnessModulus::new(self.rng.gen_range(1..=n_max)).unwrap()
    }

    pub fn epsilon(&mut self, grid: &[f64]) -> f64 {
        *grid.choose(&mut self.rng).unwrap()
    }

    pub fn scale_factor(&mut self) -> f64 {
        *SCALE_FACTORS.choose(&mut self.rng).unwrap()
    }

    /// Random recipe of bounded depth.
    pub fn spec(&mut self, depth: u32) -> GeneratorSpec {
        let pick = if depth == 0 { self.rng.gen_range(0..4) } else { self.rng.gen_range(0..6) };
        match pick {
            0 => GeneratorSpec::Constant { value: self.lattice(16) },
            1 => {
                let modulus = self.rng.gen_range(1..=24);
                let entries = divisors(modulus).into_iter().map(|d| (d, self.lattice(16))).collect();
                GeneratorSpec::GcdPeriodic { modulus, table: entries }
            }
            2 => {
                // lattice noise: every index carries one of a few cycled values
                let k = self.rng.gen_range(2..=9);
                let values = (0..k).map(|_| self.lattice(12)).collect();
                GeneratorSpec::SparseSpike {
                    support: SpikeSupport::Random { seed: self.rng.gen(), scale: 1.0, exponent: 0.0, min_index: 1 },
                    values,
                    base: 0.0,
                }
            }
            3 => {
                let k = self.rng.gen_range(1..=4);
                let values = (0..k).map(|_| self.lattice(40)).collect();
                let support = if self.rng.gen_bool(0.5) {
                    SpikeSupport::Powers { base: self.rng.gen_range(2..=5), min_index: self.rng.gen_range(1..=80) }
                } else {
                    SpikeSupport::Random {
                        seed: self.rng.gen(),
                        scale: self.rng.gen_range(0.5..6.0),
                        exponent: *[0.0, 0.5, 1.0].choose(&mut self.rng).unwrap(),
                        min_index: self.rng.gen_range(1..=80),
                    }
                };
                GeneratorSpec::SparseSpike { support, values, base: self.lattice(8) }
            }
            4 => self.spec(depth - 1).scaled(self.scale_factor()),
            _ => self.spec(depth - 1).plus(self.spec(depth - 1)),
        }
    }

    pub fn sample(&mut self, len: u64) -> SeqSample {
        let spec = self.spec(2);
        generate(&spec, len).expect("random specs are valid")
    }

    /// Random geometric, polynomial, factorial or irregular scheme inside `1..=len`.
    pub fn scheme(&mut self, len: u64) -> LacunaryScheme {
        loop {
            let points: Vec<u64> = match self.rng.gen_range(0..4) {
                0 => {
                    let ratio = *[1.5, 2.0, 2.5, 3.0].choose(&mut self.rng).unwrap();
                    let start = self.rng.gen_range(1..=5);
                    SchemeGenerator::Geometric { ratio, count: 64, start }
                        .build()
                        .map(|s| s.points().to_vec())
                        .unwrap_or_default()
                }
                1 => {
                    let degree = self.rng.gen_range(2..=3);
                    (1..=200u64).map(|r| r.pow(degree)).collect()
                }
                2 => SchemeGenerator::Factorial { count: 12 }.build().unwrap().points().to_vec(),
                _ => {
                    let mut k = self.rng.gen_range(1..=10u64);
                    let mut out = vec![k];
                    while k < len {
                        k += self.rng.gen_range(1..=(k / 2 + 2));
                        out.push(k);
                    }
                    out
                }
            };
            let kept: Vec<u64> = points.into_iter().take_while(|&k| k <= len).collect();
            if let Ok(s) = LacunaryScheme::new(kept) {
                return s;
            }
        }
    }

    /// Random refinement of `coarse` inside `1..=len`: sometimes the scheme
    /// itself, sometimes with singleton blocks, possibly extending past `k_R`.
    pub fn refinement(&mut self, coarse: &LacunaryScheme, len: u64) -> LacunaryScheme {
        if self.rng.gen_bool(0.15) {
            return coarse.clone();
        }
        let mut points = coarse.points().to_vec();
        for b in coarse.blocks() {
            if b.len() < 2 {
                continue;
            }
            if self.rng.gen_bool(0.2) {
                points.push(b.start + 1);
            }
            for _ in 0..self.rng.gen_range(0..=3) {
                points.push(self.rng.gen_range(b.start + 1..b.end));
            }
        }
        if coarse.last_point() < len && self.rng.gen_bool(0.3) {
            points.push(self.rng.gen_range(coarse.last_point() + 1..=len));
        }
        points.sort_unstable();
        points.dedup();
        LacunaryScheme::new(points).expect("refinement points are valid")
    }
}
