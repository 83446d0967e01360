//! The CP^n x S^(2n+1) family across the field tower and the Sp(n) chains.

use csdepth::enumeration::{cp_family, sp_chain};
use csdepth::lattice::FieldSpec;
use csdepth::poset::{build_poset, c_value};

fn main() -> csdepth::Result<()> {
    for n in [2u32, 4, 8, 14] {
        let c = cp_family(n)?;
        let mut row = Vec::new();
        for k in [FieldSpec::Rationals, FieldSpec::Cyclotomic(n as u64 + 1), FieldSpec::AlgebraicClosure] {
            row.push(format!("{k}: {}", build_poset(&c, k)?.depth().depth));
        }
        println!("CP^{n}: {} models, depths {}, c({}) = {}", c.entries.len(), row.join(", "), n + 1, c_value(n as u64 + 1)?);
    }
    for n in [1u32, 3, 5, 7] {
        let c = sp_chain(n)?;
        let p = build_poset(&c, FieldSpec::AlgebraicClosure)?;
        let groups: Vec<String> = p.elements.iter().map(|e| e.structure.structure_string()).collect();
        println!("Sp({n}): depth {}, groups {}", p.depth().depth, groups.join(" > "));
    }
    Ok(())
}
