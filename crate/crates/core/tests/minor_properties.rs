mod common;

use std::collections::BTreeSet;

use minor_spread_core::invariants::{
    analytic_spread, analytic_spread_oracle, rank_p, reduction_number, reduction_number_by_terms,
    reduction_number_oracle, theta_oracle, ThetaRoute,
};
use minor_spread_core::minors::{
    build_d1, build_d2, build_side_lattice, build_theta, coheight_formula, join_irreducible_test, join_irreducibles,
    l_indices, literal_l_indices, minimal_join_irreducibles, phi, theta_join_irreducibles_decompose,
};
use minor_spread_core::{ProblemSpec, Side};
use proptest::prelude::*;

use common::spec;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closed_forms_match_oracles(s in spec(6)) {
        prop_assert_eq!(analytic_spread(&s), analytic_spread_oracle(&s).unwrap());
        prop_assert_eq!(reduction_number(&s), reduction_number_oracle(&s).unwrap());
        prop_assert_eq!(reduction_number(&s), reduction_number_by_terms(&s));
        prop_assert!(analytic_spread(&s) >= 1);
        prop_assert!(reduction_number(&s) >= 0);
    }

    #[test]
    fn theta_is_a_distributive_product(s in spec(5)) {
        let theta = build_theta(&s).unwrap();
        let d1 = build_d1(&s).unwrap();
        let d2 = build_d2(&s).unwrap();
        prop_assert_eq!(theta.len(), d1.len() * d2.len());
        prop_assert_eq!(theta.rank(), d1.rank() + d2.rank());
        let check = theta.check_distributive_lattice();
        prop_assert!(check.is_lattice && check.is_distributive);
        // joins are componentwise maxima
        let join = check.join_table.unwrap();
        for (x, row) in join.iter().enumerate() {
            for (y, &j) in row.iter().enumerate() {
                let (gx, gy, gj) = (theta.element(x), theta.element(y), theta.element(j));
                let max = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(p, q)| *p.max(q)).collect::<Vec<_>>();
                prop_assert_eq!(gj.rows.entries(), &max(gx.rows.entries(), gy.rows.entries())[..]);
                prop_assert_eq!(gj.cols.entries(), &max(gx.cols.entries(), gy.cols.entries())[..]);
            }
        }
    }

    #[test]
    fn theta_join_irreducibles_split_by_side(s in spec(5)) {
        let theta_ji = join_irreducibles(&build_theta(&s).unwrap()).unwrap();
        let p1 = join_irreducibles(&build_d1(&s).unwrap()).unwrap();
        let p2 = join_irreducibles(&build_d2(&s).unwrap()).unwrap();
        prop_assert!(theta_join_irreducibles_decompose(&s, &theta_ji, &p1, &p2).unwrap());
        prop_assert_eq!(theta_ji.rank(), rank_p(&s));
    }

    #[test]
    fn positional_test_agrees_with_cover_count(s in spec(7), side in prop::sample::select(Side::BOTH.to_vec())) {
        let d = build_side_lattice(&s, side).unwrap();
        for i in 0..d.len() {
            let by_covers = d.lower_covers(i).len() == 1;
            prop_assert_eq!(join_irreducible_test(d.element(i), &s, side).is_some(), by_covers);
        }
    }

    #[test]
    fn phi_is_an_order_reversing_staircase(s in spec(7), side in prop::sample::select(Side::BOTH.to_vec())) {
        let p = join_irreducibles(&build_side_lattice(&s, side).unwrap()).unwrap();
        let coheights = p.coheights();
        let points: Vec<(i64, i64)> = p.elements().iter().map(|t| {
            let f = phi(t, &s, side).unwrap();
            (f.p, f.q)
        }).collect();
        let image: BTreeSet<(i64, i64)> = points.iter().copied().collect();
        prop_assert_eq!(image.len(), points.len());
        for (i, &(pi, qi)) in points.iter().enumerate() {
            prop_assert!(pi >= 0 && qi >= 0);
            prop_assert_eq!(coheights[i], pi + qi);
            for pp in 0..=pi {
                for qq in 0..=qi {
                    prop_assert!(image.contains(&(pp, qq)));
                }
            }
            for (j, &(pj, qj)) in points.iter().enumerate() {
                prop_assert_eq!(p.leq(i, j), pi >= pj && qi >= qj);
            }
        }
    }

    #[test]
    fn minimal_join_irreducibles_from_index_set(s in spec(7), side in prop::sample::select(Side::BOTH.to_vec())) {
        let p = join_irreducibles(&build_side_lattice(&s, side).unwrap()).unwrap();
        let mut from_poset: Vec<_> = p
            .minimal_indices()
            .into_iter()
            .map(|i| (p.element(i).clone(), p.coheights()[i]))
            .collect();
        from_poset.sort();
        let mut from_formula = minimal_join_irreducibles(&s, side);
        from_formula.sort();
        prop_assert_eq!(from_formula, from_poset);
    }

    #[test]
    fn rank_p_is_max_coheight_formula(s in spec(7)) {
        let s = &s;
        let best = Side::BOTH
            .iter()
            .flat_map(|&side| l_indices(s, side).indices.into_iter().map(move |l| coheight_formula(s, side, l)))
            .max()
            .unwrap_or(-1);
        prop_assert_eq!(rank_p(s), best);
    }

    #[test]
    fn literal_rows_set_is_never_off(s in spec(7)) {
        prop_assert_eq!(l_indices(&s, Side::Rows), literal_l_indices(&s, Side::Rows));
    }

    #[test]
    fn spread_does_not_shrink_when_n_grows(s in spec(6)) {
        let wider = ProblemSpec::new(s.m(), s.n() + 1, s.r(), s.a().to_vec(), s.b().to_vec(), s.u()).unwrap();
        prop_assert!(analytic_spread(&wider) >= analytic_spread(&s));
    }
}

#[test]
fn generic_case_closure() {
    for m in 1..=6u32 {
        for n in 1..=6u32 {
            for r in 1..=m.min(n) {
                for u in 1..=r {
                    let s = ProblemSpec::new(m, n, r, (1..=r).collect(), (1..=r).collect(), u).unwrap();
                    let expected = i64::from(u * (n - u) + 1);
                    assert_eq!(analytic_spread(&s), expected, "{m} {n} {r} {u}");
                    assert_eq!(analytic_spread_oracle(&s).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn literal_column_set_misses_a_chain() {
    let s = ProblemSpec::new(3, 3, 3, vec![1, 2, 3], vec![1, 2, 3], 2).unwrap();
    assert_eq!(l_indices(&s, Side::Columns).indices, vec![2]);
    assert!(literal_l_indices(&s, Side::Columns).indices.is_empty());
    let d2 = build_d2(&s).unwrap();
    assert_eq!((d2.len(), d2.rank()), (3, 2));
    assert_eq!(reduction_number_oracle(&s).unwrap(), 0);
    assert_eq!(reduction_number(&s), 0);
}

#[test]
fn large_specs_use_the_factored_oracle() {
    let a = vec![1, 2, 3, 7, 8, 10, 11, 12];
    let s = ProblemSpec::new(13, 13, 8, a.clone(), a, 13).unwrap();
    let oracle = theta_oracle(&s).unwrap();
    assert_eq!(oracle.route, ThetaRoute::Factored);
    assert_eq!(oracle.size_d1, 411);
    assert_eq!(oracle.rank_theta + 1, analytic_spread(&s));
    assert_eq!((analytic_spread(&s), reduction_number(&s)), (45, 36));
}
