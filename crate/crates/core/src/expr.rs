//! Exact rational evaluation of the small formula language used by the data tables.
//!
//! Grammar: integers, identifiers, `+ - * / % ^`, comparisons, `&&`, `||`, parentheses
//! and the functions `gcd(a, b)`, `inv(a, m)`, `phi(n)`. The power operator is right
//! associative and accepts negative integer exponents.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

pub type Vars = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    const OPS: [&str; 18] = [
        "&&", "||", "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%", "^", "(", ")", ",", "!",
    ];
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        for op in OPS {
            let n = op.len();
            if i + n <= chars.len() && chars[i..i + n].iter().copied().eq(op.chars()) {
                out.push(Tok::Op(op));
                i += n;
                continue 'outer;
            }
        }
        return Err(Error::Expr(format!("unexpected '{c}' in '{src}'")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Vars,
    src: &'a str,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn truth(b: bool) -> BigRational {
    rat(b as i64)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Expr(format!("{msg} in '{}'", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Op(o)) if *o == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: &str) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{op}'")))
        }
    }

    fn or(&mut self) -> Result<BigRational> {
        let mut v = self.and()?;
        while self.eat("||") {
            if !v.is_zero() {
                self.skip(&["||"]);
                v = truth(true);
                continue;
            }
            let w = self.and()?;
            v = truth(!w.is_zero());
        }
        Ok(v)
    }

    fn and(&mut self) -> Result<BigRational> {
        let mut v = self.cmp()?;
        while self.eat("&&") {
            if v.is_zero() {
                self.skip(&["&&", "||"]);
                continue;
            }
            let w = self.cmp()?;
            v = truth(!w.is_zero());
        }
        Ok(v)
    }

    /// Skips an operand that short-circuiting leaves unevaluated, stopping before
    /// any of `stops`, a closing parenthesis or comma at depth zero.
    fn skip(&mut self, stops: &[&str]) {
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            match t {
                Tok::Op("(") => depth += 1,
                Tok::Op(")" | ",") if depth == 0 => return,
                Tok::Op(")") => depth -= 1,
                Tok::Op(o) if depth == 0 && stops.contains(o) => return,
                _ => {}
            }
            self.pos += 1;
        }
    }

    fn cmp(&mut self) -> Result<BigRational> {
        let v = self.add()?;
        for op in ["==", "!=", "<=", ">=", "<", ">"] {
            if self.eat(op) {
                let w = self.add()?;
                return Ok(truth(match op {
                    "==" => v == w,
                    "!=" => v != w,
                    "<=" => v <= w,
                    ">=" => v >= w,
                    "<" => v < w,
                    _ => v > w,
                }));
            }
        }
        Ok(v)
    }

    fn add(&mut self) -> Result<BigRational> {
        let mut v = self.mul()?;
        loop {
            if self.eat("+") {
                v += self.mul()?;
            } else if self.eat("-") {
                v -= self.mul()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn mul(&mut self) -> Result<BigRational> {
        let mut v = self.unary()?;
        loop {
            if self.eat("*") {
                v *= self.unary()?;
            } else if self.eat("/") {
                let w = self.unary()?;
                if w.is_zero() {
                    return Err(self.err("division by zero"));
                }
                v /= w;
            } else if self.eat("%") {
                let w = self.unary()?;
                if !v.is_integer() || !w.is_integer() || w.is_zero() {
                    return Err(self.err("'%' needs nonzero integers"));
                }
                v = BigRational::from_integer(v.to_integer().mod_floor(&w.to_integer()));
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<BigRational> {
        if self.eat("-") {
            return Ok(-self.unary()?);
        }
        if self.eat("!") {
            return Ok(truth(self.unary()?.is_zero()));
        }
        self.pow()
    }

    fn pow(&mut self) -> Result<BigRational> {
        let base = self.atom()?;
        if self.eat("^") {
            let e = self.unary()?;
            if !e.is_integer() {
                return Err(self.err("non-integer exponent"));
            }
            let e = e.to_integer().to_i64().filter(|e| e.abs() < 1 << 20).ok_or_else(|| self.err("exponent too large"))?;
            if base.is_zero() && e < 0 {
                return Err(self.err("zero to a negative power"));
            }
            let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
            return Ok(if e < 0 { p.recip() } else { p });
        }
        Ok(base)
    }

    fn int_arg(&self, v: &BigRational) -> Result<BigInt> {
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(self.err("integer argument expected"))
        }
    }

    fn atom(&mut self) -> Result<BigRational> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(BigRational::from_integer(n))
            }
            Some(Tok::Op("(")) => {
                self.pos += 1;
                let v = self.or()?;
                self.expect(")")?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat("(") {
                    let mut args = vec![self.or()?];
                    while self.eat(",") {
                        args.push(self.or()?);
                    }
                    self.expect(")")?;
                    let ints = args.iter().map(|a| self.int_arg(a)).collect::<Result<Vec<_>>>()?;
                    return match (name.as_str(), ints.as_slice()) {
                        ("gcd", [a, b]) => Ok(BigRational::from_integer(a.gcd(b))),
                        ("inv", [a, m]) => arith::mod_inv_big(a, m)
                            .map(BigRational::from_integer)
                            .ok_or_else(|| self.err("no modular inverse")),
                        ("phi", [n]) => {
                            let n = n.to_u64().ok_or_else(|| self.err("phi of negative"))?;
                            Ok(rat(arith::totient(n) as i64))
                        }
                        _ => Err(self.err(&format!("unknown function {name}/{}", ints.len()))),
                    };
                }
                self.vars
                    .get(&name)
                    .map(|&x| rat(x))
                    .ok_or_else(|| self.err(&format!("unbound variable '{name}'")))
            }
            _ => Err(self.err("unexpected end or token")),
        }
    }
}

pub fn eval(src: &str, vars: &Vars) -> Result<BigRational> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, vars, src };
    let v = p.or()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn eval_int(src: &str, vars: &Vars) -> Result<i64> {
    let v = eval(src, vars)?;
    if !v.is_integer() {
        return Err(Error::Expr(format!("'{src}' is not an integer ({v})")));
    }
    v.to_integer().to_i64().ok_or_else(|| Error::Expr(format!("'{src}' overflows i64")))
}

pub fn eval_bool(src: &str, vars: &Vars) -> Result<bool> {
    Ok(!eval(src, vars)?.is_zero())
}

/// Reduces a rational value into Z/modulus; the denominator must be a unit.
pub fn to_residue(v: &BigRational, modulus: u64) -> Result<u64> {
    let m = BigInt::from(modulus);
    let inv = arith::mod_inv_big(v.denom(), &m)
        .ok_or_else(|| Error::Expr(format!("denominator of {v} not invertible mod {modulus}")))?;
    let r = arith::modp(&(v.numer() * inv), &m);
    Ok(arith::to_u64(&r))
}

pub fn eval_mod(src: &str, vars: &Vars, modulus: u64) -> Result<u64> {
    to_residue(&eval(src, vars)?, modulus)
}

pub fn is_integer_valued(v: &BigRational) -> bool {
    v.denom().is_one() || v.denom().abs().is_one()
}

/// All extensions of `base` by the inclusive loops `(name, lo, hi)`, each bound an
/// expression in earlier variables, that satisfy `when`.
pub fn expand(loops: &[(String, String, String)], when: &str, base: &Vars) -> Result<Vec<Vars>> {
    let mut acc = vec![base.clone()];
    for (name, lo, hi) in loops {
        let mut next = Vec::new();
        for v in &acc {
            let (a, b) = (eval_int(lo, v)?, eval_int(hi, v)?);
            for x in a..=b {
                let mut w = v.clone();
                w.insert(name.clone(), x);
                next.push(w);
            }
        }
        acc = next;
    }
    let mut out = Vec::new();
    for v in acc {
        if eval_bool(when, &v)? {
            out.push(v);
        }
    }
    Ok(out)
}

pub fn vars(pairs: &[(&str, i64)]) -> Vars {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let v = vars(&[("n", 3), ("q", 2)]);
        assert_eq!(eval_int("(1-n^(2^(q-1)))*n + n^(2^(q-1)-1)", &v).unwrap(), -24 + 3);
        assert_eq!(eval_int("2^3^2", &v).unwrap(), 512);
        assert_eq!(eval_int("-2^2", &v).unwrap(), -4);
        assert_eq!(eval_int("gcd(12, 18) + 7 % 4", &v).unwrap(), 9);
        assert!(eval_bool("n % 2 == 1 && q > 1", &v).unwrap());
        // the right operand is not evaluated once the result is known
        assert!(!eval_bool("n % 2 == 0 && (n/2) % 2 == 0", &v).unwrap());
        assert!(eval_bool("n > 0 || (1/0) == 1", &v).unwrap());
        assert!(eval_bool("(n == 1 && 1/0 == 1) || q == 2", &v).unwrap());
    }

    #[test]
    fn fractions_reduce_mod() {
        let v = vars(&[("q", 1), ("r", 1)]);
        assert_eq!(eval_mod("(1/8)*(3-3^(2*q+1))^(q-r)", &v, 3).unwrap(), 2);
        assert_eq!(eval_mod("2^(-1)", &v, 9).unwrap(), 5);
        assert!(eval_mod("1/2", &v, 8).is_err());
    }
}
