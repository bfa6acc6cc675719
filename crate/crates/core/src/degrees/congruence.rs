//! Covering-degree congruences from restrictions to cyclic subgroups.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{gcd, Coset};
use crate::error::{Error, Result};
use crate::groups::structure::class_index;
use crate::groups::{conjugacy_classes, Group};
use crate::homs::Homomorphism;
use crate::lens::{lens_hom_degree, lens_of_element, LensSpace};

/// For each element, the largest order of an element whose cyclic group contains it.
pub fn max_overorder(g: &Group) -> &[usize] {
    g.memo.overorder.get_or_init(|| overorder(g))
}

fn overorder(g: &Group) -> Vec<usize> {
    let mut best: Vec<usize> = (0..g.order()).map(|x| g.elem_order(x)).collect();
    for z in 0..g.order() {
        let k = g.elem_order(z);
        let mut y = z;
        for _ in 0..k {
            best[y] = best[y].max(k);
            y = g.mul(y, z);
        }
    }
    best
}

/// Generators of maximal cyclic subgroups, one per conjugacy class of subgroups.
pub fn maximal_cyclic_reps(g: &Group) -> &[usize] {
    g.memo.cyclic_reps.get_or_init(|| cyclic_reps(g))
}

fn cyclic_reps(g: &Group) -> Vec<usize> {
    let best = max_overorder(g);
    let classes = conjugacy_classes(g);
    let idx = class_index(g, &classes);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        let k = g.elem_order(x);
        if best[x] != k {
            continue;
        }
        let mut key: Vec<usize> = (1..=k.max(1)).filter(|&j| gcd(j as u64, k as u64) == 1).map(|j| idx[g.pow(x, j as i64)]).collect();
        key.sort_unstable();
        key.dedup();
        if seen.insert(key) {
            out.push(x);
        }
    }
    out
}

/// A generator k of a maximal cyclic subgroup containing y, and l with y = k^l.
pub fn maximal_cyclic_over(g: &Group, best: &[usize], y: usize) -> (usize, i64) {
    for k in 0..g.order() {
        let ord = g.elem_order(k);
        if best[k] != ord || ord % g.elem_order(y) != 0 {
            continue;
        }
        let mut p = 0;
        for l in 0..ord {
            if p == y {
                return (k, l as i64);
            }
            p = g.mul(p, k);
        }
    }
    unreachable!("every element lies in a maximal cyclic subgroup")
}

#[derive(Clone, Debug, Serialize)]
pub struct Constraint {
    /// Domain cyclic subgroup, as lens data relative to its generator.
    pub source: LensSpace,
    pub target: LensSpace,
    /// Exponent l with ψ(h) = k^l.
    pub exponent: i64,
    /// [G1 : H]
    pub multiplier: u64,
    /// [G2 : K] · (lifted lens degree)
    pub residue: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceSystem {
    pub modulus: u64,
    pub constraints: Vec<Constraint>,
    pub solution: Option<Coset>,
}

/// All constraints `[G1:H]·deg ≡ [G2:K]·d_H (mod |G2|)` over maximal cyclic H ≤ G1.
pub fn congruences_for(psi: &Homomorphism) -> Result<CongruenceSystem> {
    let (g1, g2) = (&psi.domain, &psi.codomain);
    let modulus = g2.order() as u64;
    let best2 = max_overorder(g2);
    let mut constraints = Vec::new();
    let mut solution = Some(Coset::full(modulus));
    for &h in maximal_cyclic_reps(g1) {
        let source = lens_of_element(g1, h)?;
        let (k, l) = maximal_cyclic_over(g2, best2, psi.apply(h));
        let target = lens_of_element(g2, k)?;
        let d = lens_hom_degree(&source, &target, l)?;
        let multiplier = (g1.order() / g1.elem_order(h)) as u64;
        let residue = ((modulus / target.m) as u128 * d as u128 % modulus as u128) as u64;
        let c = Coset::solve(multiplier as i128, residue as i128, modulus)
            .ok_or_else(|| Error::InconsistentSystem(format!("{}·deg ≡ {residue} (mod {modulus}) has no solution", multiplier)))?;
        solution = solution.and_then(|s| s.intersect(&c));
        constraints.push(Constraint { source, target, exponent: l, multiplier, residue });
    }
    Ok(CongruenceSystem { modulus, constraints, solution })
}

/// Like [`congruences_for`], requiring a solution.
pub fn solve_congruences(psi: &Homomorphism) -> Result<(CongruenceSystem, Coset)> {
    let sys = congruences_for(psi)?;
    match sys.solution.clone() {
        Some(c) => Ok((sys, c)),
        None => Err(Error::InconsistentSystem(format!("no common solution for {psi:?}"))),
    }
}
