use std::collections::BTreeSet;
use tropih::ic::{is_allowable, Space, Variant};
use tropih::linalg::Coeff;
use tropih::polyhedral::builders::{ray_fan, triangle_cycle, u31, unit_segment};
use tropih::stratification::{dual_perversity, trop_filtration, Perversity};
use tropih::Error;

fn u31_space() -> Space {
    let u = u31();
    let f = trop_filtration(&u).unwrap();
    Space::new(u, f).unwrap().conical(0).unwrap()
}

fn nonzero(r: &tropih::ic::HomologyResult) -> Vec<((usize, usize), usize)> {
    r.nonzero().into_iter().map(|(k, g)| (k, g.free_rank)).collect()
}

#[test]
fn segment_nongm_zero_perversity() {
    let c = unit_segment();
    let f = trop_filtration(&c).unwrap();
    let s = Space::new(c, f).unwrap();
    let p = Perversity::zero(s.stratification());
    let r = s.homology(&p, 0..=2, Variant::NonGm, Coeff::Q).unwrap();
    assert_eq!(nonzero(&r), vec![((0, 1), 1), ((1, 1), 1)]);
}

#[test]
fn segment_nongm_negative_perversity() {
    let c = unit_segment();
    let f = trop_filtration(&c).unwrap();
    let s = Space::new(c, f).unwrap();
    let p = Perversity::constant(s.stratification(), -1);
    let r = s.homology(&p, 0..=2, Variant::NonGm, Coeff::Z).unwrap();
    assert_eq!(nonzero(&r), vec![((0, 0), 1), ((1, 0), 1)]);
}

#[test]
fn u31_nongm_vanishes() {
    let s = u31_space();
    let p = Perversity::zero(s.stratification());
    assert!(s.homology(&p, 0..=2, Variant::NonGm, Coeff::Q).unwrap().is_zero());
    let d = dual_perversity(s.stratification(), &p);
    assert!(s.bm_homology(&d, 0..=2, Variant::NonGm, Coeff::Q).unwrap().is_zero());
    assert!(s.cohomology(&p, 0..=2, Variant::NonGm, Coeff::Q, false).unwrap().is_zero());
}

#[test]
fn u31_gm() {
    let s = u31_space();
    let p = Perversity::zero(s.stratification());
    let r = s.homology(&p, 0..=1, Variant::Gm, Coeff::Z).unwrap();
    assert_eq!(nonzero(&r), vec![((0, 0), 1), ((1, 0), 2)]);
    let c = s.cohomology(&p, 0..=0, Variant::Gm, Coeff::Q, false).unwrap();
    assert_eq!(nonzero(&c), vec![((0, 0), 1)]);
    let d = dual_perversity(s.stratification(), &p);
    assert!(s.bm_homology(&d, 1..=1, Variant::Gm, Coeff::Q).unwrap().is_zero());
}

#[test]
fn u31_tropical_and_relative() {
    let s = u31_space();
    let t = s.tropical_homology(0..=1, Coeff::Z).unwrap();
    assert_eq!(nonzero(&t), vec![((0, 0), 1), ((1, 0), 2)]);
    let p = Perversity::zero(s.stratification());
    let r = s.relative_homology(&BTreeSet::from([0]), &p, 0..=0, Variant::NonGm, Coeff::Q).unwrap();
    assert_eq!(nonzero(&r), vec![((0, 1), 3)]);
    let punctured = s.open_homology(&BTreeSet::from([0]), &p, 0..=1, Variant::NonGm, Coeff::Q).unwrap();
    assert_eq!(nonzero(&punctured), vec![((0, 0), 3), ((1, 0), 3)]);
}

#[test]
fn allowability_at_cone_point() {
    let s = u31_space();
    let p = Perversity::zero(s.stratification());
    let t = s.triangulation(2).unwrap();
    let v = (0..t.simplices(0).len()).find(|&i| t.carrier(0, i) == 0).unwrap();
    assert!(!is_allowable(&t, s.stratification(), &p, 0, v));
    let e = (0..t.simplices(1).len()).find(|&i| t.simplices(1)[i][0] as usize == v).unwrap();
    assert!(is_allowable(&t, s.stratification(), &p, 1, e));
}

#[test]
fn line_bm() {
    let c = ray_fan(1, &[vec![1], vec![-1]]).unwrap();
    let f = trop_filtration(&c).unwrap();
    let s = Space::new(c, f).unwrap().conical(0).unwrap();
    let p = Perversity::zero(s.stratification());
    let r = s.bm_homology(&p, 0..=1, Variant::NonGm, Coeff::Z).unwrap();
    assert_eq!(nonzero(&r), vec![((0, 1), 1), ((1, 1), 1)]);
    let a = s.homology(&p, 0..=1, Variant::NonGm, Coeff::Z).unwrap();
    assert_eq!(nonzero(&a), vec![((0, 0), 1), ((1, 0), 1)]);
}

#[test]
fn circle_tropical_homology() {
    let c = triangle_cycle();
    let f = trop_filtration(&c).unwrap();
    let s = Space::new(c, f).unwrap();
    let r = s.tropical_homology(0..=0, Coeff::Z).unwrap();
    assert_eq!(nonzero(&r), vec![((0, 0), 1), ((0, 1), 1)]);
    let z = s.cohomology(&Perversity::zero(s.stratification()), 0..=1, Variant::NonGm, Coeff::Z, false).unwrap();
    assert_eq!(z.rank(0, 1), 3);
}

#[test]
fn non_conical_bm_is_rejected() {
    let c = ray_fan(2, &[vec![1, 0], vec![0, 1]]).unwrap();
    let f = trop_filtration(&c).unwrap();
    let s = Space::new(c, f).unwrap();
    let p = Perversity::zero(s.stratification());
    assert!(matches!(s.bm_homology(&p, 0..=1, Variant::NonGm, Coeff::Q), Err(Error::ConicalStructureRequired)));
}
