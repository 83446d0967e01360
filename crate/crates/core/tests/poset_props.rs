mod common;

use csdepth::enumeration::{cp_family, cp_family_restricted, cp_indices};
use csdepth::lattice::{points_structure, ConstraintLattice, FieldSpec};
use csdepth::poset::{build_poset, c_value, transitive_reduction, CsPoset, PosetClass};
use proptest::prelude::*;

/// A random strict order on `n` points: a random DAG on increasing indices,
/// transitively closed.
fn order_strategy() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..=9).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.3), n * n).prop_map(move |bits| {
            let mut gt = vec![vec![false; n]; n];
            for a in 0..n {
                for b in a + 1..n {
                    gt[a][b] = bits[a * n + b];
                }
            }
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if gt[a][k] && gt[k][b] {
                            gt[a][b] = true;
                        }
                    }
                }
            }
            gt
        })
    })
}

fn poset_from(gt: &[Vec<bool>]) -> CsPoset {
    let n = gt.len();
    let above: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b || gt[a][b]).collect()).collect();
    let lattice = ConstraintLattice::full(1);
    let elements = (0..n)
        .map(|i| PosetClass {
            id: i + 1,
            representatives: vec![i],
            labels: vec![format!("{}", i + 1)],
            structure: points_structure(&lattice, FieldSpec::AlgebraicClosure),
            lattice: lattice.clone(),
            dims: vec![1],
            unipotent: 0,
        })
        .collect();
    CsPoset {
        field: FieldSpec::AlgebraicClosure,
        elements,
        hasse: transitive_reduction(&above),
        above,
        flagged: Vec::new(),
    }
}

/// Longest chain ending at each element, counted in elements.
fn oracle_coheights(gt: &[Vec<bool>]) -> Vec<usize> {
    let n = gt.len();
    let transposed: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| gt[b][a]).collect()).collect();
    (0..n)
        .map(|b| {
            let ups: Vec<usize> = (0..n).filter(|&a| gt[a][b]).collect();
            if ups.is_empty() {
                return 1;
            }
            // chains ending at b = 1 + longest chain among elements above b
            let sub: Vec<Vec<bool>> = ups.iter().map(|&x| ups.iter().map(|&y| transposed[y][x]).collect()).collect();
            1 + common::longest_chain(&sub)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn hasse_depth_and_coheight_match_oracles(gt in order_strategy()) {
        let p = poset_from(&gt);
        prop_assert_eq!(p.hasse_edges().to_vec(), common::covers(&gt));
        let d = p.depth();
        prop_assert_eq!(d.depth, common::longest_chain(&gt));
        prop_assert_eq!(d.height + 1, d.depth);
        prop_assert_eq!(d.witness_chain.len(), d.depth);
        for w in d.witness_chain.windows(2) {
            prop_assert!(p.hasse_edges().contains(&(w[0], w[1])));
        }
        prop_assert_eq!(p.coheights(), oracle_coheights(&gt));
    }

    #[test]
    fn c_value_is_one_plus_big_omega(q in 2u64..200_000) {
        prop_assert_eq!(c_value(q).unwrap(), 1 + common::big_omega(q));
    }
}

#[test]
fn cp_depth_equals_c_value_over_qbar_and_rises_along_towers() {
    for n in (2u32..=24).step_by(2) {
        let c = cp_family(n).unwrap();
        let m = n as u64 + 1;
        let depth = |k| build_poset(&c, k).unwrap().depth().depth;
        let q = depth(FieldSpec::Rationals);
        let full = depth(FieldSpec::Cyclotomic(m));
        let qbar = depth(FieldSpec::AlgebraicClosure);
        assert_eq!(q, 1, "CP^{n} over q");
        assert_eq!(qbar as u32, c_value(m).unwrap(), "CP^{n}");
        assert_eq!(full, qbar, "CP^{n}: cyc:{m}");
        // Q ⊂ Q(zeta_d) ⊂ Q(zeta_{n+1}) for every divisor d >= 3
        for d in (3..m).filter(|d| m.is_multiple_of(*d)) {
            let mid = depth(FieldSpec::Cyclotomic(d));
            assert!(q <= mid && mid <= full, "CP^{n}: cyc:{d}");
        }
    }
}

#[test]
fn divisor_lattice_of_z_mod_n_embeds() {
    for n in [4u32, 8, 14, 20, 26] {
        let m = n + 1;
        let c = cp_family(n).unwrap();
        let p = build_poset(&c, FieldSpec::AlgebraicClosure).unwrap();
        // index i cuts out Z/i (Z/(n+1) for i = 0), so the classes are the
        // subgroups of Z/(n+1) ordered by divisibility
        let order = |i: u32| if i == 0 { m } else { i };
        let idx = cp_indices(n);
        assert_eq!(idx.len(), p.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                assert_eq!(p.above[a][b], order(i) % order(j) == 0, "n={n} i={i} j={j}");
            }
        }
    }
    let r = cp_family_restricted(26, &[0, 1, 3, 9]).unwrap();
    let p = build_poset(&r, FieldSpec::AlgebraicClosure).unwrap();
    assert_eq!(p.depth().depth, 4);
}
