//! Three-set inclusion for uniformly convergent function sequences.

use arithstat::cli::uniform_limit_families;
use arithstat::continuity::uniform_limit_check;
use arithstat::kernel::{generate, GeneratorSpec, SpikeSupport, WitnessModulus};
use arithstat::lacunary::SchemeGenerator;

fn main() -> arithstat::Result<()> {
    let x = generate(
        &GeneratorSpec::gcd_identity(12).scaled(0.25).plus(GeneratorSpec::SparseSpike {
            support: SpikeSupport::Powers { base: 3, min_index: 13 },
            values: vec![2.0],
            base: 0.0,
        }),
        1 << 12,
    )?;
    let scheme = SchemeGenerator::Geometric { ratio: 2.0, count: 13, start: 1 }.build()?;
    let n = WitnessModulus::new(12)?;

    for (name, list, f) in uniform_limit_families(500) {
        for eps in [1.0, 0.1] {
            let r = uniform_limit_check(&list, &f, &x, &scheme, n, eps, &[0.0, 1.0])?;
            println!("{name:36} ε = {eps:3}: N = {}  {:?}", r.instance["N"], r.outcome);
        }
    }
    Ok(())
}
