//! Classify a catalog into subgroup classes, print the Hasse diagram, depth
//! and the DOT rendering.

use csdepth::catalog::poset_to_dot;
use csdepth::fixtures::fixture;
use csdepth::lattice::FieldSpec;
use csdepth::poset::build_poset;

fn main() -> csdepth::Result<()> {
    let catalog = fixture("ex5.3-1b")?;
    for field in [FieldSpec::Rationals, FieldSpec::AlgebraicClosure] {
        let p = build_poset(&catalog, field)?;
        let d = p.depth();
        println!("over {field}: {} classes, depth {}, chain {:?}", p.len(), d.depth, d.witness_chain);
        for c in &p.elements {
            println!("  {} {:?}: {}", c.id, c.labels, c.structure.structure_string());
        }
        println!("  edges {:?}", p.hasse_edges());
    }
    let p = build_poset(&catalog, FieldSpec::AlgebraicClosure)?;
    print!("{}", poset_to_dot(&p));
    Ok(())
}
