use compact_lines::duality::{
    dual_inclusion, embed_in_double_dual, k_finite, line_in_double_dual, projection_from_right_inverse,
    right_inverse_from_gaps, right_inverse_with, x_finite, DualityError,
};
use compact_lines::oracle::{all_final_segments, all_increasing_maps, check_iso, exhaustive_duality_with, Mutation};
use compact_lines::order::{FiniteOrder, Side};

fn subsets(n: usize) -> impl Iterator<Item = FiniteOrder<usize>> {
    (0..1u64 << n).map(move |m| FiniteOrder::chain(n).select_mask(m))
}

#[test]
fn k_is_the_set_of_final_segments() {
    for n in 0..=8 {
        let x = FiniteOrder::chain(n);
        assert_eq!(k_finite(&x).points().labels(), all_final_segments(&x).unwrap().as_slice());
    }
}

#[test]
fn every_right_inverse_yields_a_retraction() {
    // all right inverses, not just the one chosen fiber by fiber
    for n in 0..=5 {
        let x = FiniteOrder::chain(n);
        for y in subsets(n) {
            let f = dual_inclusion(&x, &y).unwrap();
            let candidates = all_increasing_maps(f.codomain(), f.domain()).unwrap();
            let mut found = 0;
            for g in candidates {
                if !f.compose(&g).unwrap().is_identity() {
                    assert_eq!(
                        projection_from_right_inverse(&x, &y, &g).unwrap_err(),
                        DualityError::NotRightInverse
                    );
                    continue;
                }
                found += 1;
                let p = projection_from_right_inverse(&x, &y, &g).unwrap();
                assert!(p.images().windows(2).all(|w| w[0] <= w[1]));
                for a in y.iter() {
                    assert_eq!(p.apply(a), Some(a));
                }
            }
            assert!(found >= 1, "no right inverse for {:?}", y.labels());
        }
    }
}

#[test]
fn right_inverses_are_counted_by_fiber_sizes() {
    // f is a surjection of chains; its right inverses pick one point per fiber
    let x = FiniteOrder::chain(5);
    for y in subsets(5) {
        let f = dual_inclusion(&x, &y).unwrap();
        let expected: usize = (0..f.codomain().len())
            .map(|j| f.fiber(j).unwrap().count())
            .product();
        let found = all_increasing_maps(f.codomain(), f.domain())
            .unwrap()
            .into_iter()
            .filter(|g| f.compose(g).unwrap().is_identity())
            .count();
        assert_eq!(found, expected);
    }
}

#[test]
fn fiber_recipe_picks_the_minimum() {
    let x = FiniteOrder::chain(6);
    for y in subsets(6) {
        let f = dual_inclusion(&x, &y).unwrap();
        let g = right_inverse_from_gaps(&f).unwrap();
        for (j, &i) in g.images().iter().enumerate() {
            assert_eq!(i, *f.fiber(j).unwrap().start());
        }
    }
}

#[test]
fn fiber_recipe_reports_two_sided_limits() {
    let x = FiniteOrder::chain(3);
    let y = x.select(&[0, 2]);
    let f = dual_inclusion(&x, &y).unwrap();
    let err = right_inverse_with(&f, |_, _| false).unwrap_err();
    assert_eq!(err, DualityError::GapObstruction { alpha: 1, beta: 2 });
    let g = right_inverse_with(&f, |_, side| side == Side::Left).unwrap();
    assert_eq!(g.images(), &[0, 2, 3]);
}

#[test]
fn canonical_maps_are_isomorphisms() {
    for n in 0..=8 {
        let x = FiniteOrder::chain(n);
        assert!(embed_in_double_dual(&x).unwrap().is_bijective());
        let k = k_finite(&x).points().clone();
        assert!(line_in_double_dual(&k).unwrap().is_bijective());
        assert!(check_iso(&x, &x_finite(&k).unwrap()).is_some());
    }
}

#[test]
fn dropping_a_segment_is_caught() {
    let report = exhaustive_duality_with(3, Some(Mutation::DropSegment)).unwrap();
    assert!(!report.passed());
    assert!(report.failures.iter().all(|f| f.contains("--mutate drop-segment")));
}

#[test]
fn public_types_are_thread_safe() {
    fn check<T: Send + Sync>() {}
    check::<compact_lines::order::OrderExpr>();
    check::<compact_lines::order::Element>();
    check::<compact_lines::kurepa::KurepaPoint>();
    check::<compact_lines::kurepa::FiltrationLevel>();
    check::<compact_lines::duality::FinitePresentation>();
    check::<compact_lines::duality::IncreasingMap<usize, usize>>();
    check::<compact_lines::duality::FiniteCompactLine<usize>>();
    check::<compact_lines::oracle::OracleReport>();
    check::<compact_lines::report::Report>();
}
