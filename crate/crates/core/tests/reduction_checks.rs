//! Cross-checks between the per-class orbit reductions used by the criteria
//! scans and the direct dense computations on materialized modules. The two
//! routes share nothing but the group, so agreement on the overlap validates
//! the reductions.

use std::sync::Arc;

use fsiglab::agl::AffineGroup;
use fsiglab::criteria::{cover_map_surjective_dense, evaluate_criteria};
use fsiglab::kg::census::census;
use fsiglab::kg::orbits::{scan_degree, symmetric_power_rep};
use fsiglab::kg::{bar_h1, det_index_of_family, h1_lhs, Representation, BAR_H1_FULL_TABLE_CAP};

#[test]
fn dense_cover_map_matches_per_class_route() {
    for (p, r, d_max) in [(3u64, 1u64, 6u64), (3, 2, 4), (5, 1, 4), (5, 2, 3)] {
        let report = evaluate_criteria(p, r, d_max).unwrap();
        for d in 0..=d_max {
            let dense = cover_map_surjective_dense(p, r, d).unwrap();
            assert_eq!(
                dense, report.rows[d as usize].cover_surjective,
                "cover verdict mismatch at p={p} r={r} d={d}"
            );
        }
    }
}

#[test]
fn dense_h1_matches_per_class_route() {
    for (p, r, d_max) in [(3u64, 1u64, 5u64), (3, 2, 3), (5, 1, 3), (5, 2, 2)] {
        let group = AffineGroup::new(p).unwrap();
        let nu = det_index_of_family(&group, r);
        let cover = Representation::projective_cover(Arc::clone(&group), nu);
        let rad = cover.sub_rep(&cover.radical_subspace()).unwrap();
        let report = evaluate_criteria(p, r, d_max).unwrap();
        for d in 0..=d_max {
            let dense = h1_lhs(&symmetric_power_rep(&group, r, d).tensor(&rad)) as u64;
            assert_eq!(
                dense, report.rows[d as usize].h1_rad_pnu,
                "h1 mismatch at p={p} r={r} d={d}"
            );
        }
    }
}

#[test]
fn generator_cocycles_match_lhs_on_tensors() {
    // a different pair of routes: the raw cocycle solver against the
    // normal-subgroup reduction, on materialized degree modules
    for (p, r, d_max) in [(3u64, 1u64, 4u64), (5, 1, 2)] {
        let group = AffineGroup::new(p).unwrap();
        let nu = det_index_of_family(&group, r);
        let cover = Representation::projective_cover(Arc::clone(&group), nu);
        let rad = cover.sub_rep(&cover.radical_subspace()).unwrap();
        for d in 0..=d_max {
            let m = symmetric_power_rep(&group, r, d).tensor(&rad);
            assert_eq!(
                h1_lhs(&m),
                bar_h1(&m, BAR_H1_FULL_TABLE_CAP),
                "p={p} r={r} d={d}"
            );
        }
    }
}

#[test]
fn scan_and_census_agree_on_a_medium_grid() {
    for p in [3u64, 5, 7] {
        let group = AffineGroup::new(p).unwrap();
        for r in [1u64, 2] {
            let expected = census(p, r, 8);
            for d in 0..=8u64 {
                let scanned = scan_degree(&group, r, d, false).unwrap().census;
                assert_eq!(scanned, expected[d as usize], "p={p} r={r} d={d}");
            }
        }
    }
}

#[test]
fn socle_of_degree_parts_sees_only_census_characters() {
    // the number of trivial socle summands of B_d equals the number of
    // orbits (each orbit module has a one-dimensional fixed space), an
    // independent sanity check of the orbit counts
    let group = AffineGroup::new(5).unwrap();
    for d in 0..=5u64 {
        let bd = symmetric_power_rep(&group, 1, d);
        let fixed = bd.fixed_space_dim() as u64;
        let c = &census(5, 1, d)[d as usize];
        let orbit_count = c.trivial + c.free_by_stab_order.values().sum::<u64>();
        assert_eq!(fixed, orbit_count, "d={d}");
    }
}
