//! Constraint lattices, their closures over different fields and the point
//! groups they cut out of the torus.

use csdepth::lattice::{field_closure, points_structure, subgroup_includes, ConstraintLattice, FieldSpec};

fn main() -> csdepth::Result<()> {
    // a^15 = 1 in a rank-one torus, and a^3 = 1.
    let l15 = ConstraintLattice::new(1, &[vec![15]])?;
    let l3 = ConstraintLattice::new(1, &[vec![3]])?;
    for k in [
        FieldSpec::Rationals,
        FieldSpec::Cyclotomic(3),
        FieldSpec::Cyclotomic(5),
        FieldSpec::Cyclotomic(15),
        FieldSpec::AlgebraicClosure,
    ] {
        let s = points_structure(&l15, k);
        println!(
            "over {k}: a^15 = 1 gives {}, closure {}, contains a^3 = 1: {}",
            s.structure_string(),
            field_closure(&l15, k),
            subgroup_includes(&l15, &l3, k)?
        );
    }
    // ad = bc = 1, b^5 = c b^-1 on a rank-four torus.
    let l = ConstraintLattice::new(4, &[vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 6, -1, 0]])?;
    println!("{l}: {}", points_structure(&l, FieldSpec::AlgebraicClosure).structure_string());
    Ok(())
}
