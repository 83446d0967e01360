mod common;

use std::sync::Arc;

use common::WordPoly;
use csdepth::algebra::{GradedPolynomial, Monomial, RelativeModel, SullivanModel};
use csdepth::cohomology::{betti_numbers, dense_betti_numbers, formal_dimension};
use csdepth::fixtures::{fixture, fixture_names};
use proptest::prelude::*;

/// A relative model over odd spheres with a random differential built from
/// monomials in `t` and lower generators. Invalid draws are filtered out.
fn random_model(degrees: &[u32], picks: &[Vec<(usize, i64)>]) -> Option<RelativeModel> {
    let fiber = SullivanModel::odd_spheres(degrees).ok()?;
    let mut rm = RelativeModel::over(fiber, "t").ok()?;
    let u = Arc::clone(rm.total().universe());
    let total_degrees = u.degrees();
    for (i, pick) in picks.iter().enumerate() {
        let g = i + 1;
        let target = total_degrees[g] + 1;
        // only t and generators below g
        let lower: Vec<u32> = total_degrees[..g].to_vec();
        let basis = common::brute_basis(&lower, target);
        let mut p = GradedPolynomial::zero(&u);
        if !basis.is_empty() {
            for &(k, c) in pick {
                let mut e = basis[k % basis.len()].clone();
                e.resize(u.len(), 0);
                let m = Monomial::from_exponents(&u, e)?;
                p.add_term(m, common::q(c));
            }
        }
        rm.set_total_differential(i, p).ok()?;
    }
    rm.validate().is_valid().then_some(rm)
}

fn model_strategy() -> impl Strategy<Value = (Vec<u32>, Vec<Vec<(usize, i64)>>)> {
    prop::collection::vec(prop::sample::select(vec![3u32, 5, 7, 9]), 1..=3).prop_flat_map(|mut d| {
        d.sort_unstable();
        let n = d.len();
        (
            Just(d),
            prop::collection::vec(prop::collection::vec((0usize..32, prop::sample::select(vec![-2i64, -1, 1, 2])), 0..=3), n),
        )
    })
}

fn oracle_differential(rm: &RelativeModel) -> Vec<WordPoly> {
    let total = rm.total();
    (0..total.num_generators())
        .map(|g| {
            total
                .differential_of(g)
                .terms()
                .map(|(m, c)| (common::exps_to_word(m.exponents()), c.clone()))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn block_betti_matches_dense_and_oracle((deg, picks) in model_strategy()) {
        let rm = random_model(&deg, &picks);
        prop_assume!(rm.is_some());
        let rm = rm.unwrap();
        let up_to = 16;
        let sparse = betti_numbers(rm.total(), up_to);
        let dense = dense_betti_numbers(rm.total(), up_to);
        prop_assert_eq!(&sparse.by_degree, &dense.by_degree);
        let oracle = common::brute_betti(&rm.total().universe().degrees(), &oracle_differential(&rm), up_to);
        let lib: Vec<usize> = (0..=up_to).map(|k| sparse.get(k).unwrap_or(0)).collect();
        prop_assert_eq!(lib, oracle);
    }
}

#[test]
fn certified_fixtures_satisfy_duality_and_euler_dichotomy() {
    for name in fixture_names() {
        let catalog = fixture(&name).unwrap();
        let n = formal_dimension(&catalog.fiber).unwrap();
        for e in &catalog.entries {
            let cert = &e.certificate;
            assert!(cert.is_certified(), "{name}/{}", e.label);
            let b = match &cert.betti {
                Some(b) => b.clone(),
                None => betti_numbers(e.model.total(), n + 1),
            };
            let top = b.top_degree().expect("nonzero cohomology");
            assert_eq!(b.get(top), Some(1), "{name}/{}: top class", e.label);
            for k in 0..=top {
                assert_eq!(b.get(k), b.get(top - k), "{name}/{}: b{k} vs b{}", e.label, top - k);
            }
            assert_eq!(b.total(), cert.total_dim, "{name}/{}", e.label);
            let u = e.model.total().universe();
            let odd = u.generators().iter().filter(|g| g.is_odd()).count();
            let even = u.len() - odd;
            let chi = b.euler_characteristic();
            if odd > even {
                assert_eq!(chi, 0, "{name}/{}", e.label);
            } else {
                assert!(chi > 0, "{name}/{}: chi {chi}", e.label);
            }
        }
    }
}

#[test]
fn dense_and_block_agree_on_small_fixtures() {
    for name in ["ex5.1a", "ex5.1c", "ex5.2a", "ex5.2-2a", "s5", "ex5.3-3"] {
        let catalog = fixture(name).unwrap();
        for e in &catalog.entries {
            let n = e.certificate.formal_dimension_y + 1;
            assert_eq!(
                betti_numbers(e.model.total(), n).by_degree,
                dense_betti_numbers(e.model.total(), n).by_degree,
                "{name}/{}",
                e.label
            );
        }
    }
}
