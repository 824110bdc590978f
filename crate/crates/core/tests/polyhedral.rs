use tropih::polyhedral::builders::{four_quadrants, rats, segment, triangle_cycle, u31, unit_segment};
use tropih::polyhedral::{validate_complex, Ambient, Coord, ExtendedPoint, FaceComplex, HPolyhedron};

#[test]
fn u31_is_valid_fan() {
    let c = u31();
    assert_eq!(c.len(), 4);
    assert!(validate_complex(&c).valid, "{:?}", validate_complex(&c));
    assert_eq!(c.dim(0), 0);
    assert_eq!(c.cofaces(0), &[1, 2, 3]);
}

#[test]
fn crossing_segments_are_invalid() {
    let a = segment(&rats(&[-1, 0]), &rats(&[1, 0])).unwrap();
    let b = segment(&rats(&[0, -1]), &rats(&[0, 1])).unwrap();
    let c = FaceComplex::from_maximal(2, vec![a, b]).unwrap();
    let rep = validate_complex(&c);
    assert!(!rep.valid);
    assert!(rep.violations.iter().any(|v| v.contains("not a common face")));
}

#[test]
fn empty_and_small_complexes() {
    assert!(validate_complex(&FaceComplex::empty(3)).valid);
    for c in [unit_segment(), triangle_cycle(), four_quadrants()] {
        let rep = validate_complex(&c);
        assert!(rep.valid, "{rep:?}");
    }
    assert_eq!(four_quadrants().len(), 9);
    assert_eq!(triangle_cycle().len(), 6);
}

#[test]
fn tropical_line_has_bottom_point() {
    let c = FaceComplex::from_maximal_in(Ambient::Tropical, 1, vec![HPolyhedron::whole(1, vec![])]).unwrap();
    assert_eq!(c.len(), 2);
    assert!(validate_complex(&c).valid);
    let bottom = ExtendedPoint { coords: vec![Coord::Bottom] };
    assert_eq!(c.locate(&bottom).map(|i| c.sedentarity(i).to_vec()), Some(vec![0]));
}
