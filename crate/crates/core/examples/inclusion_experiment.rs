//! ASC versus ASC_θ verdicts over the standard family on a dyadic scheme, and
//! the refusal on a scheme whose ratios tend to 1.

use arithstat::cli::corollary_setup;
use arithstat::density::VerdictPolicy;
use arithstat::lacunary::SchemeGenerator;
use arithstat::theorems::{run_inclusion_experiment, Hypothesis, RatioBounds};

fn main() -> arithstat::Result<()> {
    let policy = VerdictPolicy::default();
    let bounds = RatioBounds::default();
    let (scheme, family) = corollary_setup(&policy)?;

    let exp = run_inclusion_experiment(Hypothesis::Corollary, &family, &scheme, &policy, &bounds)?;
    for row in &exp.rows {
        let (a, t) = (row.asc.as_ref().unwrap(), row.asc_theta.as_ref().unwrap());
        println!("{:28} ASC {:?} (n = {:?})  ASC_θ {:?} (n = {:?})", row.label, a.outcome, a.witness, t.outcome, t.witness);
    }
    println!("{:?}", exp.summary);

    let squares = SchemeGenerator::Polynomial { degree: 2, count: 256 }.build()?;
    match run_inclusion_experiment(Hypothesis::Lac1, &family, &squares, &policy, &bounds) {
        Err(e) => println!("k_r = r^2: {e}"),
        Ok(_) => println!("k_r = r^2 unexpectedly accepted"),
    }
    Ok(())
}
