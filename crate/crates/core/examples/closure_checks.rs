//! Exact scalar and sum closure checks on both axes.

use arithstat::density::Axis;
use arithstat::kernel::{generate, GeneratorSpec, SpikeSupport, WitnessModulus};
use arithstat::lacunary::SchemeGenerator;
use arithstat::theorems::{check_scalar_closure, check_sum_closure};

fn main() -> arithstat::Result<()> {
    let x = generate(
        &GeneratorSpec::gcd_identity(12).plus(GeneratorSpec::SparseSpike {
            support: SpikeSupport::Random { seed: 3, scale: 2.0, exponent: 0.5, min_index: 13 },
            values: vec![1.5, -2.25],
            base: 0.0,
        }),
        10_000,
    )?;
    let y = generate(&GeneratorSpec::gcd_identity(10).scaled(-0.5), 10_000)?;
    let scheme = SchemeGenerator::Geometric { ratio: 2.0, count: 14, start: 1 }.build()?;
    let n = WitnessModulus::new(12)?;

    for axis in [Axis::Prefix, Axis::Block] {
        for c in [-10.0, 0.5, 3.0] {
            let r = check_scalar_closure(&x, c, n, 0.5, axis, Some(&scheme))?;
            println!("{:6} scalar c = {c:5}: {:?}", axis.as_str(), r.outcome);
        }
        let r = check_sum_closure(&x, &y, n, 0.5, axis, Some(&scheme))?;
        println!("{:6} sum: {:?}", axis.as_str(), r.outcome);
    }
    Ok(())
}
