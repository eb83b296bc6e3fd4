//! Block lengths, ratios, refinements, unions and intersections of lacunary
//! schemes, with exact δ statistics.

use arithstat::lacunary::{
    block_intersections, q_ratio_stats, refinement_map, union_refinement, LacunaryScheme, SchemeGenerator,
};

fn main() -> arithstat::Result<()> {
    let coarse = LacunaryScheme::new(vec![1, 4, 16])?;
    let fine = LacunaryScheme::new(vec![1, 2, 4, 8, 16])?;
    let map = refinement_map(&coarse, &fine)?;
    println!("refinement pieces:");
    for p in &map.pieces {
        println!("  I_{} ⊇ J_{} = ({}, {}]  share {}", p.outer, p.inner, p.start, p.end, p.ratio);
    }
    println!("δ = {}", map.delta);

    let a = LacunaryScheme::new(vec![1, 3, 7, 20])?;
    let b = LacunaryScheme::new(vec![1, 5, 12, 20])?;
    println!("union: {:?}", union_refinement(&a, &b).points());
    let rel = block_intersections(&a, &b);
    println!("intersections: {} pieces, δ = {}", rel.pieces.len(), rel.delta);

    for (name, s) in [
        ("2^r", SchemeGenerator::Geometric { ratio: 2.0, count: 20, start: 1 }.build()?),
        ("r^2", SchemeGenerator::Polynomial { degree: 2, count: 100 }.build()?),
        ("r!", SchemeGenerator::Factorial { count: 12 }.build()?),
    ] {
        let stats = q_ratio_stats(&s, 0.5)?;
        println!(
            "{name:4} liminf q ≈ {:.4}  limsup q ≈ {:.4}  advisory {}",
            stats.liminf,
            stats.limsup,
            s.lacunarity_advisory()
        );
    }
    Ok(())
}
