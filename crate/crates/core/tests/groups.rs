use std::sync::Arc;

use sphmap::groups::presentation::relations;
use sphmap::groups::*;
use sphmap::homs;
use sphmap::lens::{homeomorphic, lens_of_cyclic, oriented_equivalent, LensSpace};

fn build(s: &str) -> Group {
    build_group(&s.parse().unwrap()).unwrap()
}

fn sizes(g: &Group) -> Vec<usize> {
    let mut v: Vec<usize> = conjugacy_classes(g).iter().map(|c| c.members.len()).collect();
    v.sort_unstable();
    v
}

#[test]
fn orders_match_theory() {
    for (s, n) in [
        ("D*(2)", 8),
        ("D*(4)", 16),
        ("D*(6)", 24),
        ("O*", 48),
        ("I*", 120),
        ("T'(1)", 24),
        ("T'(2)", 72),
        ("D'(3,2)", 12),
        ("D'(5,3)", 40),
        ("Z(5)xO*", 240),
        ("Z(7)xI*", 840),
        ("Z(1)", 1),
        ("L(7;1,3)", 7),
    ] {
        assert_eq!(build(s).order(), n, "{s}");
    }
}

#[test]
fn relations_hold() {
    for s in ["D*(2)", "D*(6)", "O*", "I*", "T'(1)", "T'(2)", "D'(3,2)", "D'(5,3)", "Z(5)xO*", "Z(7)xT'(1)", "L(9;1,4)"] {
        let g = build(s);
        for (l, r) in relations(g.spec.as_ref().unwrap()) {
            let (lw, rw) = (g.parse_word(&l).unwrap(), g.parse_word(&r).unwrap());
            assert_eq!(g.eval(&lw), g.eval(&rw), "{s}: {l} = {r}");
        }
    }
}

#[test]
fn class_tables() {
    assert_eq!(sizes(&build("O*")), vec![1, 1, 6, 6, 6, 8, 8, 12]);
    assert_eq!(sizes(&build("I*")), vec![1, 1, 12, 12, 12, 12, 20, 20, 30]);
    assert_eq!(conjugacy_classes(&build("T'(1)")).len(), 7);
    for s in ["D*(2)", "O*", "I*", "T'(2)", "D'(5,3)"] {
        let g = build(s);
        assert_eq!(sizes(&g).iter().sum::<usize>(), g.order());
    }
}

#[test]
fn stable_indexing() {
    let a = build("Z(5)xO*");
    let b = build("Z(5)xO*");
    for x in 0..a.order() {
        assert_eq!(a.matrix(x), b.matrix(x));
    }
}

#[test]
fn octahedral_b_is_lens_6() {
    let g = build("O*");
    let (l, _) = lens_of_cyclic(&g, &[g.gen("b").unwrap()]).unwrap();
    assert!(homeomorphic(&l, &LensSpace::new(6, 1, 1).unwrap()));
    assert!(oriented_equivalent(&l, &LensSpace::new(6, 5, 7).unwrap()));
}

#[test]
fn classification() {
    let g = build("O*");
    let subs = subgroups(&g).unwrap();
    let mut types: Vec<String> = subs.iter().map(|s| s.classification.to_string()).collect();
    types.sort();
    types.dedup();
    println!("{types:?}");
    assert!(types.contains(&"D*(4)".to_string()));
    assert!(types.contains(&"T'(1)".to_string()));
    assert!(types.contains(&"Z(8)".to_string()));
    let i = Arc::new(build("I*"));
    let z = Arc::new(build("Z(5)"));
    assert_eq!(homs::enumerate_homs(&i, &z).unwrap().len(), 1);
}
