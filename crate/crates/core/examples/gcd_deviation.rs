//! gcd-indexed deviations |x_m - x_gcd(m,n)| for a gcd-periodic sequence and
//! for the same sequence with a few spikes added.

use arithstat::kernel::{deviations, generate, gcd_pair, GeneratorSpec, SpikeSupport, WitnessModulus};

fn main() -> arithstat::Result<()> {
    println!("gcd(12, 8) = {}", gcd_pair(12, 8)?);

    let periodic = GeneratorSpec::gcd_identity(6);
    let x = generate(&periodic, 24)?;
    println!("x = {:?}", x.values());

    for n in [1, 2, 6] {
        let d = deviations(&x, WitnessModulus::new(n)?);
        println!("n = {n}: {:?}", d);
    }

    let spiky = periodic.plus(GeneratorSpec::SparseSpike {
        support: SpikeSupport::Explicit { indices: vec![7, 19] },
        values: vec![5.0],
        base: 0.0,
    });
    let y = generate(&spiky, 24)?;
    println!("with spikes, n = 6: {:?}", deviations(&y, WitnessModulus::new(6)?));
    Ok(())
}
