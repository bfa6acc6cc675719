//! Degree sets from first principles: cyclic-subgroup congruences, completed on the
//! 2-part by the Sylow 2-subgroup when it is quaternion.

use std::sync::Arc;

use crate::arith::Coset;
use crate::degrees::congruence::congruences_for;
use crate::degrees::equivariant::intertwiner_sign;
use crate::degrees::registry::external_out_data;
use crate::degrees::homs_up_to_conjugacy;
use crate::error::{Error, Result};
use crate::groups::{cached_group, generated, Family, Group, GroupSpec};
use crate::homs::Homomorphism;
use crate::lens::DegreeSet;

/// A Sylow 2-subgroup, grown greedily from the identity.
pub fn sylow2(g: &Group) -> Vec<u32> {
    let target = 1usize << g.order().trailing_zeros();
    let mut gens: Vec<usize> = Vec::new();
    let mut h = vec![0u32];
    for x in 0..g.order() {
        if h.len() == target {
            break;
        }
        if !g.elem_order(x).is_power_of_two() || h.binary_search(&(x as u32)).is_ok() {
            continue;
        }
        gens.push(x);
        let k = generated(g, &gens);
        if k.len().is_power_of_two() {
            h = k;
        } else {
            gens.pop();
        }
    }
    h
}

/// Whether (x*)³ vanishes in H³(P; F₂) for x: P → F₂ given on the listed elements,
/// by solving δβ = x³ over normalized 2-cochains.
pub fn cube_vanishes(g: &Group, p: &[u32], x: impl Fn(usize) -> bool) -> bool {
    let n = p.len();
    let pos = |e: usize| p.binary_search(&(e as u32)).unwrap();
    // unknowns β(g_i, g_j) for i, j ≥ 1 (index 0 is the identity)
    let var = |i: usize, j: usize| -> Option<usize> { (i > 0 && j > 0).then(|| (i - 1) * (n - 1) + (j - 1)) };
    let words = ((n - 1) * (n - 1) + 1).div_ceil(64);
    let rhs_bit = (n - 1) * (n - 1);
    let xs: Vec<bool> = p.iter().map(|&e| x(e as usize)).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let ij = pos(g.mul(p[i] as usize, p[j] as usize));
            for k in 1..n {
                let jk = pos(g.mul(p[j] as usize, p[k] as usize));
                let mut row = vec![0u64; words];
                for v in [var(j, k), var(ij, k), var(i, jk), var(i, j)].into_iter().flatten() {
                    row[v / 64] ^= 1 << (v % 64);
                }
                if xs[i] && xs[j] && xs[k] {
                    row[rhs_bit / 64] ^= 1 << (rhs_bit % 64);
                }
                rows.push(row);
            }
        }
    }
    // Gaussian elimination; inconsistent iff a row reduces to 0 = 1
    let mut rank = 0;
    for col in 0..rhs_bit {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else { continue };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (a, c) in row.iter_mut().zip(&pivot) {
                    *a ^= c;
                }
            }
        }
        rank += 1;
    }
    let (w, b) = (rhs_bit / 64, 1u64 << (rhs_bit % 64));
    rows[rank..].iter().all(|r| r[w] & b == 0)
}

/// Extra constraint from the Sylow 2-subgroup P: `[G1:P]·deg ≡ [G2:ψ(P)]·d_P`, where
/// d_P is known modulo |ψ(P)|.
fn sylow_constraint(psi: &Homomorphism, p: &[u32]) -> Option<Coset> {
    let (g1, g2) = (&psi.domain, &psi.codomain);
    let modulus = g2.order() as u64;
    let mut img: Vec<u32> = p.iter().map(|&x| psi.map()[x as usize]).collect();
    img.sort_unstable();
    img.dedup();
    let index1 = (g1.order() / p.len()) as i128;
    let index2 = (g2.order() / img.len()) as i128;
    let lifted = if img.len() == 1 {
        0
    } else if img.len() == 2 {
        i128::from(!cube_vanishes(g1, p, |x| psi.apply(x) != 0))
    } else if img.len() == p.len() {
        intertwiner_sign(g1, g2, p, |x| psi.apply(x))? as i128
    } else {
        return None;
    };
    Coset::solve(index1, index2 * lifted, modulus)
}

fn is_quaternion(g: &Group, p: &[u32]) -> bool {
    p.len() >= 8 && p.iter().filter(|&&x| g.elem_order(x as usize) == 2).count() == 1
}

/// Degree of ψ mod |G2| without the standard-surjection registry.
pub fn brute_degree(psi: &Homomorphism) -> Result<u64> {
    let sys = congruences_for(psi)?;
    let mut coset = sys.solution.ok_or_else(|| Error::InconsistentSystem(format!("{psi:?}")))?;
    if coset.is_singleton() {
        return Ok(coset.base);
    }
    let g1 = &psi.domain;
    let p = sylow2(g1);
    if !is_quaternion(g1, &p) {
        return Err(Error::Underdetermined(format!("{psi:?}: congruences give {:?}", coset.residues())));
    }
    if let Some(c) = sylow_constraint(psi, &p) {
        coset = coset
            .intersect(&c)
            .ok_or_else(|| Error::InconsistentSystem(format!("{psi:?}: Sylow constraint contradicts congruences")))?;
        if coset.is_singleton() {
            return Ok(coset.base);
        }
    }
    // compose with automorphisms whose degrees are known facts: ψ = (ψ∘η⁻¹)∘η
    if g1.spec.as_ref().is_some_and(|s| s.m == 1 && s.family != Family::Cyclic) {
        let out = external_out_data(g1)?;
        let n = g1.order();
        for eta in out.elements.iter().skip(1) {
            let mut inv = vec![0u32; n];
            for (x, &y) in eta.map.iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            let twisted: Vec<u32> = inv.iter().map(|&y| psi.map()[y as usize]).collect();
            let twisted = Homomorphism::from_map(g1.clone(), psi.codomain.clone(), twisted);
            if let Some(c) = sylow_constraint(&twisted, &p) {
                let sys = congruences_for(&twisted)?;
                if let Some(t) = sys.solution.and_then(|s| s.intersect(&c)) {
                    if t.is_singleton() {
                        let modulus = psi.codomain.order() as u64;
                        let d = (t.base as u128 * eta.degree as u128 % modulus as u128) as u64;
                        if coset.contains(d) {
                            return Ok(d);
                        }
                        return Err(Error::InconsistentSystem(format!("{psi:?}: composed degree {d} outside congruences")));
                    }
                }
            }
        }
    }
    Err(Error::Underdetermined(format!("{psi:?}: congruences give {:?}", coset.residues())))
}

/// D(M, N) assembled from [`brute_degree`] over all homomorphisms up to conjugacy.
pub fn brute_degree_set(m: &GroupSpec, n: &GroupSpec) -> Result<DegreeSet> {
    let g1 = cached_group(m)?;
    let g2 = cached_group(n)?;
    brute_set_of_groups(&g1, &g2)
}

pub fn brute_set_of_groups(g1: &Arc<Group>, g2: &Arc<Group>) -> Result<DegreeSet> {
    let n = g2.order() as u64;
    if n == 1 {
        return Ok(DegreeSet::new(1, [0]));
    }
    let mut residues = Vec::new();
    let mut failed = Vec::new();
    for psi in homs_up_to_conjugacy(g1, g2)? {
        match brute_degree(&psi) {
            Ok(d) => residues.push(d),
            Err(Error::Underdetermined(msg)) => failed.push(msg),
            Err(e) => return Err(e),
        }
    }
    if !failed.is_empty() {
        return Err(Error::Underdetermined(failed.join("; ")));
    }
    Ok(DegreeSet::new(n, residues))
}
