use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Cyclic,
    BinaryDihedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    GeneralizedTetrahedral,
    Dicyclic,
}

impl Family {
    /// Short family symbol used in data files.
    pub fn key(self) -> &'static str {
        match self {
            Family::Cyclic => "Z",
            Family::BinaryDihedral => "D*",
            Family::BinaryOctahedral => "O*",
            Family::BinaryIcosahedral => "I*",
            Family::GeneralizedTetrahedral => "T'",
            Family::Dicyclic => "D'",
        }
    }
}

/// Symbolic description of a spherical space-form group.
///
/// Unused parameters are stored as 0 so that equal groups compare equal. For the
/// cyclic family `m` is the order and `lens` the rotation numbers, reduced mod `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub m: u64,
    pub n: u64,
    pub q: u32,
    pub lens: Option<(u64, u64)>,
}

impl GroupSpec {
    pub fn lens_space(m: u64, r1: i64, r2: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::SpecInvalid("cyclic order must be positive".into()));
        }
        let red = |r: i64| r.rem_euclid(m as i64) as u64;
        let s = GroupSpec { family: Family::Cyclic, m, n: 0, q: 0, lens: Some((red(r1), red(r2))) };
        s.validate()?;
        Ok(s)
    }

    pub fn cyclic(m: u64) -> Self {
        GroupSpec { family: Family::Cyclic, m, n: 0, q: 0, lens: Some((1 % m, 1 % m)) }
    }

    pub fn binary_dihedral(n: u64) -> Self {
        GroupSpec { family: Family::BinaryDihedral, m: 1, n, q: 0, lens: None }
    }

    pub fn octahedral() -> Self {
        GroupSpec { family: Family::BinaryOctahedral, m: 1, n: 0, q: 0, lens: None }
    }

    pub fn icosahedral() -> Self {
        GroupSpec { family: Family::BinaryIcosahedral, m: 1, n: 0, q: 0, lens: None }
    }

    pub fn tetrahedral(q: u32) -> Self {
        GroupSpec { family: Family::GeneralizedTetrahedral, m: 1, n: 0, q, lens: None }
    }

    pub fn dicyclic(n: u64, q: u32) -> Self {
        GroupSpec { family: Family::Dicyclic, m: 1, n, q, lens: None }
    }

    pub fn with_cofactor(mut self, m: u64) -> Self {
        assert!(self.family != Family::Cyclic);
        self.m = m;
        self
    }

    /// The group with the cyclic cofactor removed (cyclic specs are returned unchanged).
    pub fn core(&self) -> GroupSpec {
        if self.family == Family::Cyclic {
            self.clone()
        } else {
            GroupSpec { m: 1, ..self.clone() }
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.family == Family::Cyclic
    }

    /// Order of the group without the cyclic cofactor.
    pub fn base_order(&self) -> u64 {
        match self.family {
            Family::Cyclic => self.m,
            Family::BinaryDihedral => 4 * self.n,
            Family::BinaryOctahedral => 48,
            Family::BinaryIcosahedral => 120,
            Family::GeneralizedTetrahedral => 8 * 3u64.pow(self.q),
            Family::Dicyclic => self.n * 2u64.pow(self.q),
        }
    }

    pub fn order(&self) -> u64 {
        match self.family {
            Family::Cyclic => self.m,
            _ => self.m * self.base_order(),
        }
    }

    /// Same abstract group, forgetting the lens rotation numbers.
    pub fn abstract_key(&self) -> GroupSpec {
        match self.family {
            Family::Cyclic => GroupSpec { lens: None, ..self.clone() },
            _ => self.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::SpecInvalid(msg));
        if self.m == 0 {
            return bad("cofactor order m must be positive".into());
        }
        match self.family {
            Family::Cyclic => {
                if let Some((r1, r2)) = self.lens {
                    if self.m > 1 && (gcd(r1, self.m) != 1 || gcd(r2, self.m) != 1) {
                        return bad(format!(
                            "L({};{},{}): rotation numbers must be coprime to {}",
                            self.m, r1, r2, self.m
                        ));
                    }
                }
                return Ok(());
            }
            Family::BinaryDihedral => {
                if self.n == 0 || self.n % 2 != 0 {
                    return bad(format!("D*({}): n must be even (use D'(n,2) for odd n)", self.n));
                }
            }
            Family::GeneralizedTetrahedral => {
                if self.q < 1 {
                    return bad("T'(q): q must be at least 1".into());
                }
            }
            Family::Dicyclic => {
                if self.n % 2 == 0 {
                    return bad(format!("D'({},{}): n must be odd", self.n, self.q));
                }
                if self.n <= 1 {
                    return bad(format!("D'({},{}): n must exceed 1", self.n, self.q));
                }
                if self.q <= 1 {
                    return bad(format!("D'({},{}): q must exceed 1", self.n, self.q));
                }
            }
            Family::BinaryOctahedral | Family::BinaryIcosahedral => {}
        }
        if gcd(self.m, self.base_order()) != 1 {
            return bad(format!(
                "cofactor Z({}) must have order coprime to {}",
                self.m,
                self.base_order()
            ));
        }
        Ok(())
    }

    /// Every valid spec (lens data omitted for cyclic groups) of the given order.
    pub fn all_of_order(order: u64) -> Vec<GroupSpec> {
        let mut out = vec![GroupSpec { lens: None, ..GroupSpec::cyclic(order) }];
        let mut push_with = |core: GroupSpec| {
            let b = core.base_order();
            if b > 0 && order % b == 0 {
                let s = core.with_cofactor(order / b);
                if s.validate().is_ok() {
                    out.push(s);
                }
            }
        };
        let mut n = 2;
        while 4 * n <= order {
            push_with(GroupSpec::binary_dihedral(n));
            n += 2;
        }
        push_with(GroupSpec::octahedral());
        push_with(GroupSpec::icosahedral());
        let mut q = 1;
        while 8 * 3u64.pow(q) <= order {
            push_with(GroupSpec::tetrahedral(q));
            q += 1;
        }
        let mut q = 2;
        while 3 * 2u64.pow(q) <= order {
            let mut n = 3;
            while n * 2u64.pow(q) <= order {
                push_with(GroupSpec::dicyclic(n, q));
                n += 2;
            }
            q += 1;
        }
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == Family::Cyclic {
            return match self.lens {
                _ if self.m <= 2 => write!(f, "Z({})", self.m),
                Some((1, 1)) | None => write!(f, "Z({})", self.m),
                Some((r1, r2)) => write!(f, "L({};{},{})", self.m, r1, r2),
            };
        }
        if self.m > 1 {
            write!(f, "Z({})x", self.m)?;
        }
        match self.family {
            Family::BinaryDihedral => write!(f, "D*({})", self.n),
            Family::BinaryOctahedral => write!(f, "O*"),
            Family::BinaryIcosahedral => write!(f, "I*"),
            Family::GeneralizedTetrahedral => write!(f, "T'({})", self.q),
            Family::Dicyclic => write!(f, "D'({},{})", self.n, self.q),
            Family::Cyclic => unreachable!(),
        }
    }
}

fn parse_args(s: &str, sep: char) -> Result<Vec<i64>> {
    s.split(sep)
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer '{t}'"))))
        .collect()
}

fn inner<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')
}

fn positive(x: i64, what: &str) -> Result<u64> {
    u64::try_from(x)
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::SpecInvalid(format!("{what} must be positive, got {x}")))
}

fn parse_core(s: &str) -> Result<GroupSpec> {
    let spec = if s == "O*" {
        GroupSpec::octahedral()
    } else if s == "I*" {
        GroupSpec::icosahedral()
    } else if let Some(a) = inner(s, "Z") {
        let v = parse_args(a, ',')?;
        match v.as_slice() {
            [m] => GroupSpec::cyclic(positive(*m, "m")?),
            _ => return Err(Error::Parse(format!("Z(m) takes one argument: '{s}'"))),
        }
    } else if let Some(a) = inner(s, "L") {
        let v = parse_args(&a.replace(';', ","), ',')?;
        match v.as_slice() {
            [m, r] => GroupSpec::lens_space(positive(*m, "m")?, 1, *r)?,
            [m, r1, r2] => GroupSpec::lens_space(positive(*m, "m")?, *r1, *r2)?,
            _ => return Err(Error::Parse(format!("L(m;r1,r2) expected: '{s}'"))),
        }
    } else if let Some(a) = inner(s, "D*") {
        match parse_args(a, ',')?.as_slice() {
            [n] => GroupSpec::binary_dihedral(positive(*n, "n")?),
            _ => return Err(Error::Parse(format!("D*(n) takes one argument: '{s}'"))),
        }
    } else if let Some(a) = inner(s, "T'") {
        match parse_args(a, ',')?.as_slice() {
            [q] => GroupSpec::tetrahedral(positive(*q, "q")? as u32),
            _ => return Err(Error::Parse(format!("T'(q) takes one argument: '{s}'"))),
        }
    } else if let Some(a) = inner(s, "D'") {
        match parse_args(a, ',')?.as_slice() {
            [n, q] => GroupSpec::dicyclic(positive(*n, "n")?, positive(*q, "q")? as u32),
            _ => return Err(Error::Parse(format!("D'(n,q) takes two arguments: '{s}'"))),
        }
    } else {
        return Err(Error::Parse(format!("unrecognized group '{s}'")));
    };
    Ok(spec)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let spec = match s.find(")x") {
            Some(pos) if s.starts_with("Z(") => {
                let cof = parse_core(&s[..=pos])?;
                let core = parse_core(&s[pos + 2..])?;
                if core.is_cyclic() {
                    return Err(Error::SpecInvalid(format!(
                        "'{s}': a product of cyclic groups should be written as a single Z(m)"
                    )));
                }
                core.with_cofactor(cof.m)
            }
            _ => parse_core(&s)?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trip() {
        for s in ["Z(7)", "L(120;1,7)", "D*(4)", "O*", "I*", "T'(2)", "D'(3,3)", "Z(5)xO*", "Z(7)xI*"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
    }

    #[test]
    fn constraints() {
        assert!(matches!("D'(4,2)".parse::<GroupSpec>(), Err(Error::SpecInvalid(_))));
        assert!(matches!("D*(3)".parse::<GroupSpec>(), Err(Error::SpecInvalid(_))));
        assert!(matches!("D'(3,1)".parse::<GroupSpec>(), Err(Error::SpecInvalid(_))));
        assert!(matches!("Z(2)xO*".parse::<GroupSpec>(), Err(Error::SpecInvalid(_))));
        assert!(matches!("L(6;2,1)".parse::<GroupSpec>(), Err(Error::SpecInvalid(_))));
        assert!(matches!("Q(3)".parse::<GroupSpec>(), Err(Error::Parse(_))));
    }

    #[test]
    fn orders() {
        assert_eq!("Z(5)xO*".parse::<GroupSpec>().unwrap().order(), 240);
        assert_eq!("T'(2)".parse::<GroupSpec>().unwrap().order(), 72);
        assert_eq!("D'(5,3)".parse::<GroupSpec>().unwrap().order(), 40);
    }

    #[test]
    fn order_listing() {
        let l = GroupSpec::all_of_order(24);
        let names: Vec<String> = l.iter().map(|s| s.to_string()).collect();
        assert!(names.contains(&"D*(6)".to_string()));
        assert!(names.contains(&"T'(1)".to_string()));
        assert!(names.contains(&"Z(3)xD*(2)".to_string()));
        assert!(names.contains(&"D'(3,3)".to_string()));
    }
}
