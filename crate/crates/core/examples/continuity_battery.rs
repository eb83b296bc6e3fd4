//! Mapping convergent sequences through continuous functions and through a
//! unit step.

use arithstat::cli::crossing_sequence;
use arithstat::continuity::{closure_checks, continuity_battery, RealFunction};
use arithstat::density::VerdictPolicy;
use arithstat::lacunary::SchemeGenerator;
use arithstat::theorems::families::{materialize, standard_family};
use arithstat::theorems::FamilyMember;

fn main() -> arithstat::Result<()> {
    let policy = VerdictPolicy::default();
    let len = (1 << 13) + 1;
    let scheme = SchemeGenerator::Geometric { ratio: 2.0, count: 14, start: 1 }.build()?;
    let mut family = materialize(&standard_family(policy.n_max + 1), len)?;

    let affine = RealFunction::Affine { a: -2.0, b: 5.0 };
    let clamp = RealFunction::Clamp { lo: -1.0, hi: 1.0 };
    for f in [&affine, &clamp] {
        let rep = continuity_battery(f, &family, &scheme, &policy)?;
        println!("{:?}: {} support, {} contradictions", f, rep.supports, rep.contradictions);
    }
    let closure = closure_checks(&affine, &clamp, &family, &scheme, &policy)?;
    println!("closure under +, -, ∘: {:?}", closure.outcome);

    family.push(FamilyMember::generate("crossing", &crossing_sequence(policy.n_max), len)?);
    let step = continuity_battery(&RealFunction::step(0.0, 0.0, 1.0), &family, &scheme, &policy)?;
    for row in step.rows.iter().filter(|r| r.mapped.is_some()) {
        println!("step on {:28} {:?}", row.label, row.status);
    }
    Ok(())
}
