//! Integer helpers: extended Euclid, modular inverses, linear congruences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Representative of `a` in [0, m).
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn mod_inv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let (g, x, _) = ext_gcd(&modp(a, m), m);
    g.is_one().then(|| modp(&x, m))
}

pub fn mod_inv(a: i64, m: u64) -> Option<u64> {
    let r = mod_inv_big(&BigInt::from(a), &BigInt::from(m))?;
    Some(to_u64(&r))
}

pub fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).expect("residue fits in u64")
}

pub fn reduce(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// The residue set `{x : x ≡ base (mod step)}` inside Z/modulus, with `step | modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coset {
    pub modulus: u64,
    pub base: u64,
    pub step: u64,
}

impl Coset {
    pub fn full(modulus: u64) -> Self {
        Coset { modulus, base: 0, step: 1 }
    }

    pub fn is_singleton(&self) -> bool {
        self.step == self.modulus
    }

    pub fn residues(&self) -> Vec<u64> {
        (0..self.modulus / self.step).map(|k| self.base + k * self.step).collect()
    }

    pub fn contains(&self, x: u64) -> bool {
        x % self.step == self.base
    }

    /// Solutions of `a·x ≡ b (mod modulus)`.
    pub fn solve(a: i128, b: i128, modulus: u64) -> Option<Coset> {
        let mm = modulus as i128;
        let a = a.rem_euclid(mm);
        let b = b.rem_euclid(mm);
        let g = gcd(a as u64, modulus) as i128;
        if b % g != 0 {
            return None;
        }
        let step = (mm / g) as u64;
        if step == 1 {
            return Some(Coset { modulus, base: 0, step: 1 });
        }
        let inv = mod_inv((a / g) as i64, step).expect("unit after dividing by gcd") as i128;
        let base = reduce((b / g) % step as i128 * inv, step);
        Some(Coset { modulus, base, step })
    }

    pub fn intersect(&self, other: &Coset) -> Option<Coset> {
        assert_eq!(self.modulus, other.modulus);
        let (r1, s1, r2, s2) = (self.base as i128, self.step as i128, other.base as i128, other.step as i128);
        let g = gcd(s1 as u64, s2 as u64) as i128;
        if (r2 - r1) % g != 0 {
            return None;
        }
        let step = lcm(s1 as u64, s2 as u64);
        // r1 + s1*t ≡ r2 (mod s2)
        let t = Coset::solve(s1 / g, (r2 - r1) / g, (s2 / g) as u64)?;
        let base = reduce(r1 + s1 * t.base as i128, step);
        Some(Coset { modulus: self.modulus, base, step })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        for m in 2..60u64 {
            for a in 1..m {
                match mod_inv(a as i64, m) {
                    Some(x) => assert_eq!(a * x % m, 1),
                    None => assert!(gcd(a, m) > 1),
                }
            }
        }
        assert_eq!(mod_inv(7, 120), Some(103));
    }

    #[test]
    fn linear_congruence() {
        let c = Coset::solve(4, 4, 8).unwrap();
        assert_eq!(c.residues(), vec![1, 3, 5, 7]);
        let d = Coset::solve(2, 2, 8).unwrap();
        assert_eq!(c.intersect(&d).unwrap().residues(), vec![1, 5]);
        assert!(Coset::solve(2, 1, 8).is_none());
    }

    #[test]
    fn crt_combination() {
        let a = Coset::solve(5, 5, 40).unwrap();
        let b = Coset::solve(8, 32, 40).unwrap();
        assert_eq!(a.intersect(&b).unwrap().residues(), vec![9]);
    }

    #[test]
    fn totients() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(120), 32);
    }
}
