use serde::Serialize;

use super::group::Group;
use crate::arith::factorize;

/// Sorted list of element indices.
pub type ElemSet = Vec<u32>;

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: ElemSet,
    pub element_order: usize,
}

pub fn conjugacy_classes(g: &Group) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut members: Vec<u32> = (0..n).map(|h| g.conj(h, x) as u32).collect();
        members.sort_unstable();
        members.dedup();
        for &y in &members {
            seen[y as usize] = true;
        }
        out.push(ConjugacyClass { representative: x, members, element_order: g.elem_order(x) });
    }
    out
}

/// Map from element to the index of its conjugacy class.
pub fn class_index(g: &Group, classes: &[ConjugacyClass]) -> Vec<usize> {
    let mut idx = vec![0; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in &c.members {
            idx[x as usize] = i;
        }
    }
    idx
}

/// Subgroup generated by the given elements.
pub fn generated(g: &Group, gens: &[usize]) -> ElemSet {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut list = vec![0usize];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                list.push(y);
            }
        }
        i += 1;
    }
    let mut out: Vec<u32> = list.into_iter().map(|x| x as u32).collect();
    out.sort_unstable();
    out
}

pub fn center(g: &Group) -> ElemSet {
    let gens: Vec<usize> = g.generators().iter().map(|x| x.elem).collect();
    (0..g.order())
        .filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
        .map(|z| z as u32)
        .collect()
}

pub fn commutator_subgroup(g: &Group) -> ElemSet {
    let n = g.order();
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            let c = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    generated(g, &comms)
}

pub fn is_normal(g: &Group, h: &[u32]) -> bool {
    let mut inside = vec![false; g.order()];
    for &x in h {
        inside[x as usize] = true;
    }
    g.generators().iter().all(|s| h.iter().all(|&x| inside[g.conj(s.elem, x as usize)]))
}

/// Invariant factors of a finite abelian group given by its element orders.
pub fn abelian_invariants(orders: &[usize]) -> Vec<u64> {
    let mut elementary: Vec<Vec<u64>> = Vec::new();
    for (p, e) in factorize(orders.len() as u64) {
        // log_p #{x : x^{p^k} = 1} = Σ_i min(a_i, k) for the p-part ⊕ Z_{p^{a_i}}
        let log_count = |k: u32| -> u32 {
            let c = orders.iter().filter(|&&o| p.pow(k) % o as u64 == 0).count() as u64;
            let mut l = 0;
            let mut r = c;
            while r > 1 {
                r /= p;
                l += 1;
            }
            l
        };
        let at_least: Vec<u32> = (1..=e + 1).map(|k| log_count(k) - log_count(k - 1)).collect();
        let mut factors = Vec::new();
        for k in 1..=e {
            for _ in 0..(at_least[k as usize - 1] - at_least[k as usize]) {
                factors.push(p.pow(k));
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        elementary.push(factors);
    }
    // combine elementary divisors into invariant factors d1 | d2 | ...
    let width = elementary.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut inv = vec![1u64; width];
    for factors in &elementary {
        for (i, x) in factors.iter().enumerate() {
            inv[width - 1 - i] *= x;
        }
    }
    inv
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicSubgroups {
    pub commutator: ElemSet,
    pub center: ElemSet,
    pub abelianization: Vec<u64>,
}

pub fn characteristic_subgroups(g: &Group) -> CharacteristicSubgroups {
    let commutator = commutator_subgroup(g);
    let quotient = super::subgroups::coset_table(g, &commutator);
    let orders: Vec<usize> = (0..quotient.order()).map(|x| quotient.elem_order(x)).collect();
    CharacteristicSubgroups { commutator, center: center(g), abelianization: abelian_invariants(&orders) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_products() {
        // Z2 x Z2: orders 1,2,2,2
        assert_eq!(abelian_invariants(&[1, 2, 2, 2]), vec![2, 2]);
        // Z6
        assert_eq!(abelian_invariants(&[1, 6, 3, 2, 3, 6]), vec![6]);
        // Z2 x Z4
        assert_eq!(abelian_invariants(&[1, 2, 2, 2, 4, 4, 4, 4]), vec![2, 4]);
        assert_eq!(abelian_invariants(&[1]), Vec::<u64>::new());
    }
}
