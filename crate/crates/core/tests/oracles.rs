use tropih::ic::Space;
use tropih::linalg::Coeff;
use tropih::oracles::{check_cone, gm_case, ConeCase, ConeFlavor};
use tropih::polyhedral::builders::{cone2, four_quadrants, ray_fan, rats, u31};
use tropih::polyhedral::FaceComplex;
use tropih::stratification::{face_filtration, trop_filtration, Filtration, Perversity};

fn check_all(space: &Space, perv: &Perversity) {
    for flavor in ConeFlavor::ALL {
        for p in space.p_range() {
            for coeff in [Coeff::Q, Coeff::Z] {
                let m = check_cone(space, perv, p, flavor, coeff).unwrap();
                assert!(m.is_empty(), "{flavor:?} p={p} {coeff:?}: {m:?}");
            }
        }
    }
}

fn fan(c: FaceComplex, f: Filtration) -> Space {
    Space::new(c, f).unwrap().conical(0).unwrap()
}

#[test]
fn u31_all_vertex_perversities() {
    for pv in -2..=2 {
        let c = u31();
        let f = trop_filtration(&c).unwrap();
        let s = fan(c, f);
        let perv = Perversity::constant(s.stratification(), pv);
        check_all(&s, &perv);
    }
}

#[test]
fn line_with_marked_origin() {
    for pv in -1..=1 {
        let c = ray_fan(1, &[vec![1], vec![-1]]).unwrap();
        let f = face_filtration(&c);
        let s = fan(c, f);
        check_all(&s, &Perversity::constant(s.stratification(), pv));
    }
}

#[test]
fn quadrant() {
    let c = FaceComplex::from_maximal(2, vec![cone2(&rats(&[0, 0]), &[1, 0], &[0, 1])]).unwrap();
    let f = trop_filtration(&c).unwrap();
    let s = fan(c, f);
    for m in -1..=1 {
        check_all(&s, &Perversity::constant(s.stratification(), m));
    }
}

#[test]
fn four_quadrants_face_filtration() {
    let c = four_quadrants();
    let f = face_filtration(&c);
    let s = fan(c, f);
    for m in [-1, 0] {
        check_all(&s, &Perversity::constant(s.stratification(), m));
    }
}

#[test]
fn gm_guards_are_disjoint() {
    for n in 0..4 {
        for pv in -4..6 {
            for q in 0..6 {
                let _ = gm_case(q, n, pv);
            }
        }
    }
    assert_eq!(gm_case(0, 1, 0), ConeCase::AllowableSum);
    assert_eq!(gm_case(0, 1, 1), ConeCase::VertexMultitangent);
}
