//! Finite-scale verdicts with witnesses: a gcd-periodic sequence converges,
//! x_m = m does not.

use arithstat::density::{ac_theta_verdict, asc_theta_verdict, asc_verdict, EpsilonGrid, VerdictPolicy};
use arithstat::kernel::{generate, GeneratorSpec, SeqSample};
use arithstat::lacunary::SchemeGenerator;

fn main() -> arithstat::Result<()> {
    let policy = VerdictPolicy::default();
    let scheme = SchemeGenerator::Geometric { ratio: 2.0, count: 15, start: 1 }.build()?;

    let x = generate(&GeneratorSpec::gcd_identity(6), 1 << 14)?;
    for (name, v) in [
        ("ASC", asc_verdict(&x, &policy)?),
        ("ASC_theta", asc_theta_verdict(&x, &scheme, &policy)?),
        ("AC_theta", ac_theta_verdict(&x, &scheme, &policy)?),
    ] {
        println!("gcd6 {name:9} {:?} witness {:?} max tail {}", v.outcome, v.witness, v.max_tail());
    }

    let identity = SeqSample::from_fn(1 << 12, |m| m as f64)?;
    let at_one = VerdictPolicy { grid: EpsilonGrid::new(vec![1.0])?, ..policy };
    let v = asc_verdict(&identity, &at_one)?;
    println!("x_m = m    ASC {:?}, best n {} with tail {}", v.outcome, v.examined_n, v.max_tail());
    Ok(())
}
