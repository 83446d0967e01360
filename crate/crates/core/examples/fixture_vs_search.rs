//! Compare a built-in catalog with a fresh search over the same fiber: which
//! fixture subgroups the search also reaches, and how many extra it finds.

use csdepth::enumeration::{enumerate_models, EnumerationOptions};
use csdepth::fixtures::fixture;
use csdepth::lattice::{subgroup_equals, FieldSpec};
use csdepth::poset::build_poset;

fn main() -> csdepth::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "ex5.2-2b".into());
    let field = FieldSpec::AlgebraicClosure;
    let fixed = fixture(&name)?;
    let opts = EnumerationOptions { field, ..EnumerationOptions::default() };
    let found = enumerate_models(&fixed.fiber, &opts)?;
    let mut missing = Vec::new();
    for e in &fixed.entries {
        let mut hit = false;
        for f in &found.entries {
            if subgroup_equals(&e.lattice, &f.lattice, field)? {
                hit = true;
                break;
            }
        }
        if !hit {
            missing.push(e.label.clone());
        }
    }
    let pf = build_poset(&fixed, field)?;
    let ps = build_poset(&found, field)?;
    println!("{name} over {field}");
    println!("  fixture: {} classes, depth {}", pf.len(), pf.depth().depth);
    println!("  search:  {} classes, depth {} (complete: {})", ps.len(), ps.depth().depth, found.complete);
    println!("  fixture rows not reached by the search: {missing:?}");
    Ok(())
}
