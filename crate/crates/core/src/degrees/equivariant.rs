//! Orientation sign of an equivariant isometry realizing an injective homomorphism.

use crate::groups::so4::Mat4;
use crate::groups::Group;
use crate::lens::ANGLE_TOL;

/// Whether x and φ(x) have equal traces for every listed x (equal real characters).
pub fn characters_match(g1: &Group, g2: &Group, elems: &[u32], phi: impl Fn(usize) -> usize) -> bool {
    elems.iter().all(|&x| match (g1.matrix(x as usize), g2.matrix(phi(x as usize))) {
        (Some(a), Some(b)) => (a.trace() - b.trace()).abs() < ANGLE_TOL,
        _ => false,
    })
}

/// sign(det A) for an invertible A with M2(φ(x))·A = A·M1(x) for all listed x, if the
/// two actions are equivalent. The listed elements must form a subgroup.
pub fn intertwiner_sign(g1: &Group, g2: &Group, elems: &[u32], phi: impl Fn(usize) -> usize) -> Option<i64> {
    if !characters_match(g1, g2, elems, &phi) {
        return None;
    }
    let pairs: Vec<(&Mat4, &Mat4)> = elems
        .iter()
        .map(|&x| (g1.matrix(x as usize).unwrap(), g2.matrix(phi(x as usize)).unwrap()))
        .collect();
    let mut best = 0.0f64;
    for seed in 1..=6u32 {
        // fixed pseudo-random seeds; averaging projects onto the intertwiners
        let x = Mat4::from_fn(|i, j| ((seed * 31 + (4 * i + j) as u32 * 17) as f64).sin());
        let a = pairs.iter().fold(Mat4::zeros(), |acc, (m1, m2)| acc + *m2 * x * m1.transpose());
        let d = a.determinant() / (elems.len() as f64).powi(4);
        if d.abs() > best.abs() {
            best = d;
        }
        if best.abs() > 1e-3 {
            break;
        }
    }
    if best.abs() < 1e-9 {
        return None;
    }
    Some(if best > 0.0 { 1 } else { -1 })
}
