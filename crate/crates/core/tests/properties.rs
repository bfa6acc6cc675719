use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use sphmap::arith::gcd;
use sphmap::degrees::{congruences_for, deg_hom, homs_up_to_conjugacy};
use sphmap::groups::{cached_group, conjugacy_classes, Group};
use sphmap::homs::{enumerate_homs, Homomorphism};
use sphmap::lens::{lens_hom_degree, LensSpace};

const SMALL: &[&str] = &["Z(2)", "L(4;1,1)", "L(8;1,3)", "L(6;1,5)", "D*(2)", "D*(4)", "T'(1)", "D'(3,2)", "O*"];

fn small_groups() -> &'static Vec<Arc<Group>> {
    static G: OnceLock<Vec<Arc<Group>>> = OnceLock::new();
    G.get_or_init(|| SMALL.iter().map(|s| cached_group(&s.parse().unwrap()).unwrap()).collect())
}

/// All homomorphisms between every ordered pair of the small groups.
fn hom_table() -> &'static Vec<Vec<Vec<Homomorphism>>> {
    static H: OnceLock<Vec<Vec<Vec<Homomorphism>>>> = OnceLock::new();
    H.get_or_init(|| {
        let gs = small_groups();
        gs.iter().map(|a| gs.iter().map(|b| enumerate_homs(a, b).unwrap()).collect()).collect()
    })
}

fn unit(m: u64, seed: u64) -> i64 {
    (0..m).map(|k| (seed + k) % m).find(|&r| gcd(r, m) == 1).unwrap_or(0) as i64
}

/// A lens space of order m with rotation numbers derived from the seeds.
fn lens(m: u64, s1: u64, s2: u64) -> LensSpace {
    LensSpace::new(m, unit(m, s1), unit(m, s2)).unwrap()
}

/// An exponent l with l·m1 ≡ 0 (mod m2).
fn exponent(m1: u64, m2: u64, s: u64) -> i64 {
    let step = m2 / gcd(m1, m2);
    (step * (s % (m2 / step).max(1))) as i64
}

#[test]
fn class_equation() {
    for s in ["D*(2)", "D*(6)", "O*", "I*", "T'(1)", "T'(2)", "D'(3,2)", "D'(5,3)", "Z(5)xD*(4)", "L(12;1,5)"] {
        let g = cached_group(&s.parse().unwrap()).unwrap();
        let classes = conjugacy_classes(&g);
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, g.order(), "{s}");
        for c in &classes {
            assert_eq!(g.order() % c.members.len(), 0, "{s}");
        }
        assert_eq!(classes[0].members, vec![0]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lens_degree_multiplicative(m1 in 1u64..=60, m2 in 1u64..=60, m3 in 1u64..=60, seeds in any::<[u64; 8]>()) {
        let (a, b, c) = (lens(m1, seeds[0], seeds[1]), lens(m2, seeds[2], seeds[3]), lens(m3, seeds[4], seeds[5]));
        let l = exponent(m1, m2, seeds[6]);
        let k = exponent(m2, m3, seeds[7]);
        let d1 = lens_hom_degree(&a, &b, l).unwrap() as u128;
        let d2 = lens_hom_degree(&b, &c, k).unwrap() as u128;
        let d = lens_hom_degree(&a, &c, l * k).unwrap() as u128;
        prop_assert_eq!(d, d1 * d2 % m3 as u128);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn degree_of_composite(i in 0usize..SMALL.len(), j in 0usize..SMALL.len(), k in 0usize..SMALL.len(), x in any::<usize>(), y in any::<usize>()) {
        let h = hom_table();
        let (first, second) = (&h[i][j], &h[j][k]);
        let p1 = &first[x % first.len()];
        let p2 = &second[y % second.len()];
        let n = p2.codomain.order() as u128;
        let d = deg_hom(&p1.then(p2)).unwrap() as u128;
        let product = deg_hom(p1).unwrap() as u128 * deg_hom(p2).unwrap() as u128 % n;
        prop_assert_eq!(d, product);
    }
}

#[test]
fn congruences_contain_degree() {
    let pairs = [
        ("D*(2)", "D*(2)"),
        ("D*(4)", "D*(2)"),
        ("T'(1)", "T'(1)"),
        ("T'(2)", "L(9;1,2)"),
        ("D'(3,2)", "D'(3,2)"),
        ("L(120;1,7)", "Z(5)xO*"),
        ("O*", "O*"),
    ];
    for (a, b) in pairs {
        let g1 = cached_group(&a.parse().unwrap()).unwrap();
        let g2 = cached_group(&b.parse().unwrap()).unwrap();
        for psi in homs_up_to_conjugacy(&g1, &g2).unwrap() {
            let coset = congruences_for(&psi).unwrap().solution.expect("solvable");
            let d = deg_hom(&psi).unwrap();
            assert!(coset.contains(d), "{a} -> {b}: {} not in {:?}", d, coset.residues());
        }
    }
}
