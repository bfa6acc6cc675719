//! Lens spaces L(m; r1, r2), their identification inside SO(4), and the degree formulas
//! for maps between them.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector4;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, mod_inv, mod_inv_big, modp, to_u64};
use crate::error::{Error, Result};
use crate::groups::so4::{rotation_cosines, Mat4};
use crate::groups::{generated, Group, GroupSpec};

pub const ANGLE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    pub m: u64,
    pub r1: u64,
    pub r2: u64,
}

impl LensSpace {
    pub fn new(m: u64, r1: i64, r2: i64) -> Result<LensSpace> {
        if m == 0 {
            return Err(Error::SpecInvalid("lens order must be positive".into()));
        }
        let red = |r: i64| r.rem_euclid(m as i64) as u64;
        let l = LensSpace { m, r1: red(r1), r2: red(r2) };
        if m > 1 && (gcd(l.r1, m) != 1 || gcd(l.r2, m) != 1) {
            return Err(Error::SpecInvalid(format!("{l}: rotation numbers must be coprime to {m}")));
        }
        Ok(l)
    }

    pub fn from_spec(spec: &GroupSpec) -> Option<LensSpace> {
        if !spec.is_cyclic() {
            return None;
        }
        let (r1, r2) = spec.lens.unwrap_or((1 % spec.m, 1 % spec.m));
        Some(LensSpace { m: spec.m, r1, r2 })
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec::lens_space(self.m, self.r1 as i64, self.r2 as i64).expect("valid lens")
    }

    /// The same space with the opposite orientation.
    pub fn reversed(&self) -> LensSpace {
        LensSpace::new(self.m, self.r1 as i64, -(self.r2 as i64)).unwrap()
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({};{},{})", self.m, self.r1, self.r2)
    }
}

impl FromStr for LensSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec: GroupSpec = s.parse()?;
        LensSpace::from_spec(&spec).ok_or_else(|| Error::Parse(format!("'{s}' is not a lens space")))
    }
}

/// The representative L(m; 1, r') with r' = r2·r1⁻¹ (same oriented space).
pub fn canonical_lens(l: &LensSpace) -> LensSpace {
    if l.m <= 1 {
        return LensSpace { m: l.m, r1: 0, r2: 0 };
    }
    let inv = mod_inv(l.r1 as i64, l.m).expect("unit");
    LensSpace { m: l.m, r1: 1, r2: (l.r2 as u128 * inv as u128 % l.m as u128) as u64 }
}

/// The classical criterion: the sets {±r1/r2, ±r2/r1} coincide in Z_m^*.
pub fn homeomorphic(a: &LensSpace, b: &LensSpace) -> bool {
    if a.m != b.m {
        return false;
    }
    if a.m <= 2 {
        return true;
    }
    let set = |l: &LensSpace| {
        let m = l.m;
        let x = canonical_lens(l).r2;
        let y = mod_inv(x as i64, m).unwrap();
        let mut v = vec![x, y, (m - x) % m, (m - y) % m];
        v.sort_unstable();
        v.dedup();
        v
    };
    set(a) == set(b)
}

/// Orientation-preserving homeomorphism: r' ≡ r or r·r' ≡ 1 for the canonical forms.
pub fn oriented_equivalent(a: &LensSpace, b: &LensSpace) -> bool {
    if a.m != b.m {
        return false;
    }
    if a.m <= 2 {
        return true;
    }
    let (x, y) = (canonical_lens(a).r2, canonical_lens(b).r2);
    x == y || (x as u128 * y as u128) % a.m as u128 == 1
}

fn best_residual(cands: &[Vector4<f64>], basis: &[Vector4<f64>]) -> Vector4<f64> {
    let mut best = Vector4::zeros();
    let mut best_norm = -1.0;
    for c in cands {
        let mut r = *c;
        for b in basis {
            r -= b * b.dot(&r);
        }
        let n = r.norm();
        if n > best_norm {
            best_norm = n;
            best = r / n;
        }
    }
    best
}

fn std_basis() -> Vec<Vector4<f64>> {
    (0..4)
        .map(|i| {
            let mut e = Vector4::zeros();
            e[i] = 1.0;
            e
        })
        .collect()
}

/// Rotation angles (θ1, θ2) of `m` in a positively oriented orthonormal frame
/// adapted to its two invariant planes, with θ1 ∈ [0, π].
pub fn oriented_angles(m: &Mat4) -> (f64, f64) {
    let (c1, c2) = rotation_cosines(m);
    let id = Mat4::identity();
    // (M² - 2c2·M + I) annihilates the second invariant plane
    let p = m * m - m * (2.0 * c2) + id;
    // the discriminant square root turns rounding noise of ~1e-16 into ~1e-8
    let distinct = (c1 - c2).abs() > 1e-6;
    let plane1: Vec<Vector4<f64>> = if distinct { (0..4).map(|i| p.column(i).into_owned()).collect() } else { std_basis() };
    let e1 = best_residual(&plane1, &[]);
    // rotate within the invariant plane, orthogonalized so that angles near 0 or π stay exact
    let turn = |e: Vector4<f64>, fallback: Vector4<f64>| {
        let v = m * e - e * e.dot(&(m * e));
        if v.norm() > 1e-6 { v / v.norm() } else { fallback }
    };
    let e2 = turn(e1, best_residual(&plane1, &[e1]));
    let e3 = best_residual(&std_basis(), &[e1, e2]);
    let e4 = turn(e3, best_residual(&std_basis(), &[e1, e2, e3]));
    let t1 = e2.dot(&(m * e1)).atan2(e1.dot(&(m * e1)));
    let mut t2 = e4.dot(&(m * e3)).atan2(e3.dot(&(m * e3)));
    let frame = Mat4::from_columns(&[e1, e2, e3, e4]);
    if frame.determinant() < 0.0 {
        t2 = -t2;
    }
    (t1, t2)
}

fn rotation_number(theta: f64, k: usize) -> Result<u64> {
    let x = theta * k as f64 / (2.0 * std::f64::consts::PI);
    let r = x.round();
    let err = (x - r).abs() * 2.0 * std::f64::consts::PI / k as f64;
    if err > ANGLE_TOL {
        return Err(Error::AngleNotCommensurate { angle: theta, order: k });
    }
    Ok((r as i64).rem_euclid(k as i64) as u64)
}

/// Lens data of ⟨x⟩ relative to the generator x.
pub fn lens_of_element(g: &Group, x: usize) -> Result<LensSpace> {
    let k = g.elem_order(x);
    let mat = g
        .matrix(x)
        .ok_or_else(|| Error::SpecInvalid("lens identification needs the SO(4) action".into()))?;
    if k == 1 {
        return Ok(LensSpace { m: 1, r1: 0, r2: 0 });
    }
    let (t1, t2) = oriented_angles(mat);
    let (r1, r2) = (rotation_number(t1, k)?, rotation_number(t2, k)?);
    if gcd(r1, k as u64) != 1 || gcd(r2, k as u64) != 1 {
        return Err(Error::ConstraintViolated(format!("element acts with fixed points (L({k};{r1},{r2}))")));
    }
    Ok(LensSpace { m: k as u64, r1, r2 })
}

/// Lens space S³/H for the cyclic subgroup H generated by `gens`, relative to the
/// returned generator of H (the first given generator of full order, else the
/// smallest-index one).
pub fn lens_of_cyclic(g: &Group, gens: &[usize]) -> Result<(LensSpace, usize)> {
    let h = generated(g, gens);
    let n = h.len();
    let c = gens
        .iter()
        .copied()
        .find(|&x| g.elem_order(x) == n)
        .or_else(|| h.iter().map(|&x| x as usize).find(|&x| g.elem_order(x) == n))
        .ok_or(Error::NotCyclic)?;
    Ok((lens_of_element(g, c)?, c))
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Degree mod m2 of the map L1 → L2 inducing c1 ↦ c2^l on generators.
pub fn lens_hom_degree(l1: &LensSpace, l2: &LensSpace, l: i64) -> Result<u64> {
    let (m1, m2) = (l1.m, l2.m);
    let lm = BigInt::from(l) * big(m1);
    if modp(&lm, &big(m2)) != BigInt::from(0) {
        return Err(Error::ConstraintViolated(format!("l·m1 = {l}·{m1} is not divisible by m2 = {m2}")));
    }
    if m2 == 1 {
        return Ok(0);
    }
    let num = BigInt::from(l) * &lm;
    debug_assert!(modp(&num, &big(m2)) == BigInt::from(0));
    let base = num / big(m2);
    let inv1 = mod_inv_big(&big(l1.r1), &big(m1)).expect("unit");
    let inv2 = mod_inv_big(&big(l1.r2), &big(m1)).expect("unit");
    let d = base * big(l2.r1) * big(l2.r2) * inv1 * inv2;
    Ok(to_u64(&modp(&d, &big(m2))))
}

/// The same degree computed through the lift to the image: (l, m2)·deg(f̃) where f̃
/// is the surjection onto S³/⟨c2^l⟩.
pub fn lens_hom_degree_composite(l1: &LensSpace, l2: &LensSpace, l: i64) -> Result<u64> {
    let m2 = l2.m;
    if (l as i128 * l1.m as i128).rem_euclid(m2 as i128) != 0 {
        return Err(Error::ConstraintViolated(format!("l·m1 = {l}·{} is not divisible by m2 = {m2}", l1.m)));
    }
    let g = gcd(arith::reduce(l as i128, m2), m2).max(1);
    if g == m2 {
        return Ok(0);
    }
    let k = m2 / g;
    let image = LensSpace { m: k, r1: l2.r1 % k, r2: l2.r2 % k };
    let lifted = lens_hom_degree(l1, &image, l / g as i64)?;
    Ok(arith::reduce(g as i128 * lifted as i128, m2))
}

/// Residue classes mod `modulus` realized as degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeSet {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl DegreeSet {
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = u64>) -> DegreeSet {
        let mut r: Vec<u64> = residues.into_iter().map(|x| x % modulus.max(1)).collect();
        r.sort_unstable();
        r.dedup();
        DegreeSet { modulus, residues: r }
    }

    pub fn negated(&self) -> DegreeSet {
        DegreeSet::new(self.modulus, self.residues.iter().map(|&r| (self.modulus - r) % self.modulus))
    }

    pub fn contains(&self, d: i64) -> bool {
        self.residues.contains(&arith::reduce(d as i128, self.modulus))
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residues.iter().map(|x| x.to_string()).collect();
        write!(f, "modulus {}: {{{}}}", self.modulus, r.join(", "))
    }
}

/// All degrees of maps L1 → L2.
pub fn lens_degree_set(l1: &LensSpace, l2: &LensSpace) -> DegreeSet {
    let (m1, m2) = (l1.m, l2.m);
    if m2 == 1 {
        return DegreeSet::new(1, [0]);
    }
    let g = gcd(m1, m2);
    let inv1 = mod_inv_big(&big(l1.r1), &big(m1)).expect("unit");
    let inv2 = mod_inv_big(&big(l1.r2), &big(m1)).expect("unit");
    let unit = big(l2.r1) * big(l2.r2) * big(m1 * m2 / (g * g)) * inv1 * inv2;
    DegreeSet::new(m2, (0..g).map(|j| to_u64(&modp(&(big(j * j) * &unit), &big(m2)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(m: u64, a: i64, b: i64) -> LensSpace {
        LensSpace::new(m, a, b).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_lens(&l(6, 5, 5)), l(6, 1, 1));
        assert_eq!(canonical_lens(&l(9, 1, 4)), l(9, 1, 4));
        let c = canonical_lens(&l(120, 7, 49));
        assert_eq!(c.r1, 1);
        assert_eq!(c.r2, 7);
    }

    #[test]
    fn remark_pair() {
        assert!(homeomorphic(&l(3, 1, 1), &l(3, 1, 2)));
        assert!(!oriented_equivalent(&l(3, 1, 1), &l(3, 1, 2)));
        assert!(!homeomorphic(&l(5, 1, 1), &l(7, 1, 1)));
        assert_eq!(lens_hom_degree(&l(3, 1, 1), &l(3, 1, 2), 1).unwrap(), 2);
        assert_eq!(lens_degree_set(&l(3, 1, 1), &l(3, 1, 2)), DegreeSet::new(3, [0, 2]));
    }

    #[test]
    fn degenerate_and_coprime() {
        assert_eq!(lens_hom_degree(&l(5, 1, 2), &l(1, 0, 0), 0).unwrap(), 0);
        assert_eq!(lens_degree_set(&l(2, 1, 1), &l(3, 1, 1)), DegreeSet::new(3, [0]));
        assert!(lens_hom_degree(&l(8, 1, 1), &l(4, 1, 1), 1).is_ok());
        assert!(matches!(lens_hom_degree(&l(2, 1, 1), &l(4, 1, 1), 1), Err(Error::ConstraintViolated(_))));
    }
}
