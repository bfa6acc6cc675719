//! Outer automorphism groups, from the full automorphism group.

use std::sync::OnceLock;

use serde::Deserialize;

use super::*;
use crate::arith::{gcd, lcm};
use crate::groups::structure::abelian_invariants;
use crate::homs::{automorphism_group, out_group, outer_classes};

const DATA: &str = include_str!("../../../data/tables/out.json");

#[derive(Deserialize)]
struct File {
    id: String,
    title: String,
    rows: Vec<OutRow>,
}

#[derive(Deserialize)]
struct OutRow {
    label: String,
    group: String,
    samples: Vec<Vars>,
    #[serde(default)]
    order: Option<String>,
    #[serde(default)]
    abelian: Option<bool>,
    /// Abelian factors: `Z:k` cyclic, `U:k` units mod k, `U/2:k` units mod k over ±1.
    #[serde(default)]
    factors: Vec<String>,
}

fn data() -> &'static File {
    static D: OnceLock<File> = OnceLock::new();
    D.get_or_init(|| parse_data("out", DATA))
}

pub(super) fn ids() -> Vec<&'static str> {
    vec![data().id.as_str()]
}

/// Element orders of a factor.
fn factor_orders(f: &str, v: &Vars) -> Result<Vec<u64>> {
    let (kind, e) = f.split_once(':').ok_or_else(|| Error::Parse(f.into()))?;
    let k = expr::eval_int(e, v)? as u64;
    let units: Vec<u64> = (1..=k.max(1)).filter(|&x| gcd(x, k) == 1).map(|x| x % k.max(1)).collect();
    let order_mod = |x: u64, stop: &dyn Fn(u64) -> bool| {
        let (mut y, mut e) = (x % k.max(1), 1);
        while !stop(y) {
            y = y * x % k;
            e += 1;
        }
        e
    };
    Ok(match kind {
        "Z" => (0..k).map(|x| k / gcd(x, k)).collect(),
        "U" => units.iter().map(|&x| order_mod(x, &|y| y == 1 % k)).collect(),
        "U/2" => {
            let mut seen = Vec::new();
            let mut out = Vec::new();
            for &x in &units {
                if seen.contains(&x) {
                    continue;
                }
                seen.extend([x, (k - x) % k]);
                out.push(order_mod(x, &|y| y == 1 % k || y == (k - 1) % k));
            }
            out
        }
        _ => return Err(Error::Parse(f.into())),
    })
}

fn check(r: &OutRow, v: &Vars) -> Result<Option<String>> {
    let (_, g) = group_at(&r.group, v)?;
    let auts = automorphism_group(&g)?;
    let classes = outer_classes(&auts);
    let (out, _) = out_group(&auts, &classes);
    let k = out.order();
    let abelian = (0..k).all(|x| (0..k).all(|y| out.mul(x, y) == out.mul(y, x)));
    if let Some(o) = &r.order {
        let o = expr::eval_int(o, v)? as usize;
        if k != o {
            return Ok(Some(format!("|Out| = {k}, expected {o}")));
        }
    }
    if let Some(a) = r.abelian {
        if a != abelian {
            return Ok(Some(format!("Out is {}abelian", if abelian { "" } else { "non-" })));
        }
    }
    if !r.factors.is_empty() {
        let mut orders = vec![1u64];
        for f in &r.factors {
            let fo = factor_orders(f, v)?;
            orders = orders.iter().flat_map(|&a| fo.iter().map(move |&b| lcm(a, b))).collect();
        }
        let expected = abelian_invariants(&orders.iter().map(|&x| x as usize).collect::<Vec<_>>());
        let got = abelian_invariants(&(0..k).map(|x| out.elem_order(x)).collect::<Vec<_>>());
        if !abelian || got != expected {
            let shape = if abelian { format!("abelian with invariants {got:?}") } else { format!("non-abelian of order {k}") };
            return Ok(Some(format!("Out is {shape}, expected invariants {expected:?}")));
        }
    }
    Ok(None)
}

pub(super) fn verify(id: &str) -> Option<VerificationReport> {
    let d = data();
    if d.id != id {
        return None;
    }
    let mut rows = Vec::new();
    for r in &d.rows {
        let mut out = Outcome::default();
        let mut names = Vec::new();
        for v in &r.samples {
            let name = crate::degrees::registry::substitute(&r.group, v).unwrap_or_else(|_| r.group.clone());
            names.push(name.clone());
            out.check(check(r, v), || format!("sphmap group \"{name}\" --out"));
        }
        let meta = Meta { label: r.label.clone(), printed: true, ..Default::default() };
        let mut expected = Vec::new();
        if let Some(o) = &r.order {
            expected.push(format!("order {o}"));
        }
        if let Some(a) = r.abelian {
            expected.push(if a { "abelian".into() } else { "non-abelian".into() });
        }
        if !r.factors.is_empty() {
            expected.push(r.factors.join(" x "));
        }
        rows.push(Judged { meta: &meta, params: names.join(", "), expected: expected.join(", "), verbatim: out, corrected: None }.row(Status::Fail));
    }
    Some(VerificationReport::new(&d.id, &d.title, rows, Vec::new()))
}
