use framing_core::weil::{build_fiber, cross_check, default_fiber_window, oracle_cohomology};
use framing_core::GradedDims;

fn dims(pairs: &[(i64, usize)]) -> GradedDims {
    GradedDims::from_pairs(pairs.iter().copied())
}

#[test]
fn oracle_for_n4() {
    let c = GradedDims::point(0);
    let f = build_fiber(4, &c, default_fiber_window(4, &c), false).unwrap();
    assert!(f.complex.verify().unwrap());
    let h = oracle_cohomology(&f).unwrap().dims;
    assert_eq!(h, dims(&[(0, 2), (3, 1)]));
}

#[test]
fn cross_checks_in_four_dimensions() {
    for c in [GradedDims::point(0), GradedDims::point(3), dims(&[(3, 1), (7, 1)])] {
        let r = cross_check(4, &c, default_fiber_window(4, &c), false).unwrap();
        assert!(r.matches(), "{r:?}");
    }
}

#[test]
fn cross_check_with_two_slots_in_three_dimensions() {
    let c = dims(&[(3, 1), (7, 1)]);
    let r = cross_check(3, &c, default_fiber_window(3, &c), false).unwrap();
    assert!(r.matches(), "{r:?}");
}

#[test]
#[ignore = "slow in debug builds; run with --ignored --release"]
fn cross_check_in_five_dimensions() {
    let c = GradedDims::point(0);
    let r = cross_check(5, &c, default_fiber_window(5, &c), true).unwrap();
    assert!(r.matches(), "{r:?}");
    assert_eq!(r.oracle, dims(&[(-1, 1), (3, 1)]));
}
