//! Structural properties of the engine on the shipped corpus and on small
//! hand-built spaces.

mod common;

use common::*;
use tropih::suites::{check_instance, default_corpus, load_suite};

fn each_instance(f: impl Fn(&tropih::instance::Instance) -> Check) {
    for inst in corpus() {
        if let Err(e) = f(&inst) {
            panic!("{e}");
        }
    }
}

#[test]
fn boundary_squares_to_zero_on_corpus() {
    each_instance(check_boundaries);
}

#[test]
fn subdivision_levels_two_and_three_agree() {
    each_instance(check_stability);
}

#[test]
fn integral_cohomology_satisfies_uct() {
    each_instance(check_uct);
}

#[test]
fn vertex_allowability_matches_face_enumeration() {
    each_instance(check_vertex_allowability);
}

#[test]
fn face_structure_independence() {
    let insts = load_suite(&default_corpus(), "independence").unwrap();
    assert!(insts.len() >= 3);
    for inst in &insts {
        let r = check_instance(inst);
        assert!(r.passed(), "{:?}", r.to_json());
    }
}

#[test]
fn p_zero_matches_classical_intersection_homology() {
    let insts: Vec<_> = corpus().into_iter().filter(|i| CLASSICAL_NAMES.contains(&i.name.as_str())).collect();
    assert_eq!(insts.len(), CLASSICAL_NAMES.len());
    for inst in &insts {
        check_classical(inst).unwrap();
    }
}

#[test]
fn large_perversity_gives_tropical_homology() {
    for (name, space) in remark_spaces() {
        check_large_perversity(name, &space).unwrap();
    }
}

#[test]
fn small_perversity_gm_equals_nongm() {
    for (name, space) in remark_spaces() {
        check_small_perversity(name, &space).unwrap();
    }
}

#[test]
fn excision() {
    for c in covers() {
        check_excision(&c).unwrap();
    }
}

#[test]
fn mayer_vietoris_is_rank_exact() {
    for c in covers() {
        check_mayer_vietoris(&c).unwrap();
    }
}
