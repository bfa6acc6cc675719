use std::sync::Arc;

use sphmap::degrees::{congruences_for, deg_aut, deg_hom, deg_surjection, mapping_degree_set, out_data, standard_surjections};
use sphmap::groups::{cached_group, Group, GroupSpec};
use sphmap::homs::{make_hom_words, Homomorphism};
use sphmap::lens::DegreeSet;

fn g(s: &str) -> Arc<Group> {
    cached_group(&s.parse().unwrap()).unwrap()
}

fn hom(a: &str, b: &str, imgs: &[(&str, &str)]) -> Homomorphism {
    make_hom_words(&g(a), &g(b), imgs).unwrap()
}

fn set(m: &str, n: &str) -> DegreeSet {
    let m: GroupSpec = m.parse().unwrap();
    let n: GroupSpec = n.parse().unwrap();
    mapping_degree_set(&m, &n).unwrap()
}

#[test]
fn automorphism_anchors() {
    assert_eq!(deg_aut(&hom("I*", "I*", &[("a", "a^-1"), ("b", "b^-1abab^-1a")])).unwrap(), 49);
    assert_eq!(deg_aut(&hom("O*", "O*", &[("b", "b"), ("a", "a^-1")])).unwrap(), 25);
    assert_eq!(deg_aut(&hom("O*", "O*", &[("b", "b"), ("a", "a")])).unwrap(), 1);
    let q8 = hom("D*(2)", "D*(2)", &[("b", "a"), ("a", "b")]);
    assert_eq!(deg_aut(&q8).unwrap(), 1);
    let sys = congruences_for(&q8).unwrap();
    assert_eq!(sys.solution.unwrap().residues(), vec![1, 5]);
}

#[test]
fn out_orders() {
    for (s, n) in [("D*(2)", 6), ("D*(4)", 4), ("D*(6)", 4), ("T'(1)", 2), ("T'(2)", 6), ("D'(3,2)", 2), ("D'(5,2)", 4), ("D'(3,3)", 4), ("O*", 2), ("I*", 2)] {
        assert_eq!(out_data(&g(s)).unwrap().order(), n, "{s}");
    }
}

#[test]
fn standard_surjections_pass_congruences() {
    for s in ["D*(2)", "D*(4)", "D*(6)", "D*(12)", "O*", "I*", "T'(1)", "T'(2)", "D'(3,2)", "D'(5,2)", "D'(3,3)", "D'(15,2)", "D'(9,3)"] {
        for std in standard_surjections(&g(s)).unwrap().iter() {
            let d = deg_surjection(&std.hom).unwrap_or_else(|e| panic!("{}: {e}", std.label));
            assert_eq!(d, std.degree, "{}", std.label);
        }
    }
}

#[test]
fn surjection_anchors() {
    let t = hom("T'(2)", "T'(1)", &[("a", "a"), ("w", "w")]);
    assert_eq!(deg_surjection(&t).unwrap(), 3);
    for n in [2, 4] {
        let d = format!("D*({n})");
        let z = hom(&d, "Z(2)", &[("b", "c"), ("a", "1")]);
        assert_eq!(deg_surjection(&z).unwrap(), (1 + n / 2) % 2);
    }
    let o = hom("O*", "Z(2)", &[("b", "1"), ("a", "c")]);
    assert_eq!(deg_hom(&o).unwrap(), 1);
}

#[test]
fn octahedral_self_degrees() {
    assert_eq!(set("O*", "O*"), DegreeSet::new(48, [0, 1, 24, 25]));
}

#[test]
fn lens_into_product() {
    assert_eq!(set("L(120;1,7)", "Z(5)xO*"), DegreeSet::new(240, [0, 16, 24, 64, 66, 96, 114, 120, 144, 160, 210, 216]));
}

#[test]
fn trivial_target() {
    assert_eq!(set("O*", "Z(1)"), DegreeSet::new(1, [0]));
    assert_eq!(set("L(5;1,2)", "Z(1)"), DegreeSet::new(1, [0]));
}

#[test]
fn self_sets_contain_zero_and_one() {
    for s in ["D*(2)", "D*(4)", "T'(1)", "D'(3,2)", "Z(5)xD*(2)", "I*"] {
        let d = set(s, s);
        assert!(d.contains(0) && d.contains(1), "{s}: {d}");
    }
}
