mod common;

use std::collections::BTreeSet;

use csdepth::lattice::{
    field_closure, identity, mat_mul, points_structure, subgroup_equals, subgroup_includes, to_big,
    ConstraintLattice, FieldSpec,
};
use num_traits::Signed;
use num_integer::Integer;
use proptest::prelude::*;

fn fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::Rationals,
        FieldSpec::Cyclotomic(3),
        FieldSpec::Cyclotomic(4),
        FieldSpec::Cyclotomic(5),
        FieldSpec::Cyclotomic(6),
        FieldSpec::Cyclotomic(12),
        FieldSpec::AlgebraicClosure,
    ]
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(fields())
}

fn roots_in(k: FieldSpec) -> Option<i64> {
    match k {
        FieldSpec::Rationals => Some(2),
        FieldSpec::Cyclotomic(m) => Some(if m % 2 == 0 { m as i64 } else { 2 * m as i64 }),
        FieldSpec::AlgebraicClosure => None,
    }
}

fn small_det(m: &[Vec<i64>]) -> bool {
    let d = common::signed_det(m).abs();
    d > 0 && d <= if m.len() == 3 { 16 } else { 36 }
}

fn square_of(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n).prop_filter("full rank, small det", |m| small_det(m))
}

/// Square full-rank matrices with small determinant, n <= 3.
fn square_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(square_of)
}

fn square_pair() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1usize..=3).prop_flat_map(|n| (square_of(n), square_of(n)))
}

fn lattice(rows: &[Vec<i64>]) -> ConstraintLattice {
    ConstraintLattice::new(rows[0].len(), rows).unwrap()
}

fn points(rows: &[Vec<i64>], modulus: i64, k: FieldSpec) -> BTreeSet<Vec<i64>> {
    common::brute_points(rows, rows[0].len(), modulus, roots_in(k))
}

fn matrix_strategy(max_n: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-6i64..=6, n), 0..=n + 2)))
}

fn contains_all(big: &ConstraintLattice, small: &ConstraintLattice) -> bool {
    small.is_sublattice_of(big)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_500))]

    #[test]
    fn point_group_matches_brute_force(m in square_strategy(), k in field_strategy()) {
        let modulus = common::signed_det(&m).abs();
        let pts = points(&m, modulus, k);
        let s = points_structure(&lattice(&m), k);
        prop_assert_eq!(s.free_rank, 0);
        prop_assert_eq!(s.order(), Some(pts.len() as i64));
    }

    #[test]
    fn inclusion_matches_brute_force((a, b) in square_pair(), k in field_strategy()) {
        let modulus = common::signed_det(&a).abs().lcm(&common::signed_det(&b).abs());
        let (pa, pb) = (points(&a, modulus, k), points(&b, modulus, k));
        let (la, lb) = (lattice(&a), lattice(&b));
        prop_assert_eq!(subgroup_includes(&la, &lb, k).unwrap(), pa.is_subset(&pb));
        prop_assert_eq!(subgroup_includes(&lb, &la, k).unwrap(), pb.is_subset(&pa));
        prop_assert_eq!(subgroup_equals(&la, &lb, k).unwrap(), pa == pb);
    }

    #[test]
    fn membership_matches_cramer(m in square_strategy(), v in prop::collection::vec(-12i64..=12, 3)) {
        let v = &v[..m.len()];
        prop_assert_eq!(lattice(&m).contains(v), common::in_row_lattice(&m, v));
    }

    #[test]
    fn closure_operator_laws((n, rows) in matrix_strategy(6), extra in prop::collection::vec(prop::collection::vec(-6i64..=6, 6), 0..=2), k in field_strategy()) {
        let l = ConstraintLattice::new(n, &rows).unwrap();
        let c = field_closure(&l, k);
        prop_assert!(contains_all(&c, &l), "extensive");
        prop_assert_eq!(field_closure(&c, k), c.clone(), "idempotent");
        let mut bigger_rows = rows.clone();
        bigger_rows.extend(extra.iter().map(|r| r[..n].to_vec()));
        let bigger = ConstraintLattice::new(n, &bigger_rows).unwrap();
        prop_assert!(contains_all(&field_closure(&bigger, k), &c), "monotone");
        prop_assert_eq!(c.rank(), l.rank());
    }

    #[test]
    fn closure_along_field_tower((n, rows) in matrix_strategy(6)) {
        let l = ConstraintLattice::new(n, &rows).unwrap();
        let q = field_closure(&l, FieldSpec::Rationals);
        let c3 = field_closure(&l, FieldSpec::Cyclotomic(3));
        let c15 = field_closure(&l, FieldSpec::Cyclotomic(15));
        let qbar = field_closure(&l, FieldSpec::AlgebraicClosure);
        prop_assert!(contains_all(&q, &c3));
        prop_assert!(contains_all(&c3, &c15));
        prop_assert!(contains_all(&c15, &qbar));
        prop_assert_eq!(qbar, l);
    }

    #[test]
    fn smith_postconditions((n, rows) in matrix_strategy(6)) {
        prop_assume!(!rows.is_empty());
        let sm = csdepth::lattice::smith_normal_form(&rows, n);
        let r = rows.len();
        prop_assert_eq!(mat_mul(&mat_mul(&sm.u, &to_big(&rows)), &sm.v), sm.s.clone());
        prop_assert_eq!(common::det_q(&sm.u).abs(), common::q(1));
        prop_assert_eq!(common::det_q(&sm.v).abs(), common::q(1));
        prop_assert_eq!(mat_mul(&sm.v, &sm.v_inv), to_big(&identity(n)));
        for i in 0..r {
            for j in 0..n {
                if i != j {
                    prop_assert!(sm.s[i][j] == 0.into());
                }
            }
        }
        let diag: Vec<i64> = (0..r.min(n)).map(|i| i64::try_from(&sm.s[i][i]).unwrap()).collect();
        prop_assert!(diag.iter().all(|&d| d >= 0));
        for w in diag.windows(2) {
            prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0), "divisibility {:?}", diag);
            prop_assert!(w[0] != 0 || w[1] == 0, "zeros last {:?}", diag);
        }
    }

    #[test]
    fn normal_form_is_canonical((n, rows) in matrix_strategy(5), seed in prop::collection::vec(-2i64..=2, 25)) {
        prop_assume!(!rows.is_empty());
        // multiply by a unimodular elementary product built from the seed
        let r = rows.len();
        let mut mixed = rows.clone();
        for (t, &c) in seed.iter().enumerate() {
            let (i, j) = (t % r, (t / r) % r);
            if i != j {
                let add: Vec<i64> = mixed[j].iter().map(|x| x * c).collect();
                for (x, y) in mixed[i].iter_mut().zip(add) {
                    *x += y;
                }
            }
        }
        mixed.reverse();
        prop_assert_eq!(ConstraintLattice::new(n, &rows).unwrap(), ConstraintLattice::new(n, &mixed).unwrap());
    }
}

#[test]
fn cyclic_examples() {
    let l = ConstraintLattice::new(1, &[vec![15]]).unwrap();
    let orders: Vec<Option<i64>> = fields().into_iter().map(|k| points_structure(&l, k).order()).collect();
    assert_eq!(orders, vec![Some(1), Some(3), Some(1), Some(5), Some(3), Some(3), Some(15)]);
}
