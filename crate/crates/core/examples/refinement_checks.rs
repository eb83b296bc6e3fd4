//! Per-block inequalities relating prefix, block and refined-block densities.

use arithstat::density::block_density;
use arithstat::kernel::{generate, GeneratorSpec, SpikeSupport, WitnessModulus};
use arithstat::lacunary::{coarse_block_density_from_fine, LacunaryScheme, SchemeGenerator};
use arithstat::theorems::{check_delta_transfer, check_lac1_bound, check_markov_step};

fn main() -> arithstat::Result<()> {
    let x = generate(
        &GeneratorSpec::SparseSpike {
            support: SpikeSupport::Random { seed: 11, scale: 0.3, exponent: 0.0, min_index: 1 },
            values: vec![1.0, 0.25, -0.75],
            base: 0.0,
        },
        4096,
    )?;
    let coarse = SchemeGenerator::Geometric { ratio: 4.0, count: 7, start: 1 }.build()?;
    let fine = SchemeGenerator::Geometric { ratio: 2.0, count: 13, start: 1 }.build()?;
    let (n, eps) = (WitnessModulus::ONE, 0.5);

    for r in 1..=coarse.num_blocks() {
        let direct = block_density(&x, &coarse, n, eps, r)?;
        let via_fine = coarse_block_density_from_fine(&x, &coarse, &fine, n, eps, r)?;
        let markov = check_markov_step(&x, &coarse, n, eps, r)?;
        let lac1 = check_lac1_bound(&x, &coarse, n, eps, r)?;
        println!(
            "r = {r}: density {direct:.4} (via fine {via_fine:.4})  markov {:?}  lac1 {:?}",
            markov.outcome, lac1.outcome
        );
    }

    let mut pts = coarse.points().to_vec();
    pts.push(5);
    pts.sort_unstable();
    for f in [coarse.clone(), fine, LacunaryScheme::new(pts)?] {
        let r = check_delta_transfer(&x, &coarse, &f, n, eps)?;
        println!("δ-transfer with δ = {}: {:?}", r.instance["delta"]["value"], r.outcome);
    }
    Ok(())
}
