//! Prefix and block exceedance densities of a sparse spike train.

use arithstat::density::{density_curve, prefix_density, Axis};
use arithstat::kernel::{generate, GeneratorSpec, SpikeSupport, WitnessModulus};
use arithstat::lacunary::SchemeGenerator;

fn main() -> arithstat::Result<()> {
    let spec = GeneratorSpec::SparseSpike {
        support: SpikeSupport::Powers { base: 2, min_index: 2 },
        values: vec![1.0],
        base: 0.0,
    };
    let x = generate(&spec, 1 << 12)?;
    let n = WitnessModulus::ONE;

    for t in [16, 256, 4096] {
        println!("prefix density at t = {t}: {}", prefix_density(&x, n, 0.5, t)?);
    }

    let prefix = density_curve(&x, n, 0.5, Axis::Prefix, None, 2.0)?;
    for p in &prefix.points {
        println!("prefix  t = {:5}  {:.6}", p.index, p.value);
    }

    let dyadic = SchemeGenerator::Geometric { ratio: 2.0, count: 13, start: 1 }.build()?;
    let blocks = density_curve(&x, n, 0.5, Axis::Block, Some(&dyadic), 2.0)?;
    for p in &blocks.points {
        println!("block   r = {:2}  {:.6}", p.index, p.value);
    }
    Ok(())
}
