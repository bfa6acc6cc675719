//! Degree tables of endomorphisms and surjections, replayed through the
//! first-principles degree computation.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Deserialize;
use serde_json::Value;

use super::*;
use crate::degrees::{congruences_for, deg_hom};
use crate::degrees::registry::substitute;
use crate::homs::make_hom_words;
use crate::lens::lens_of_element;
use crate::oracle::brute::brute_degree;

const DATA: &str = include_str!("../../../data/tables/degrees.json");

#[derive(Deserialize)]
struct File {
    tables: Vec<Table>,
}

#[derive(Deserialize)]
struct Table {
    id: String,
    title: String,
    domain: String,
    samples: Vec<Vars>,
    rows: Vec<Value>,
}

#[derive(Deserialize)]
struct DegRow {
    #[serde(default)]
    vars: Loops,
    #[serde(default = "always")]
    when: String,
    /// `self`, `cyclic` (with `order` and a domain `generator`), or a spec template.
    codomain: String,
    #[serde(default)]
    order: Option<String>,
    #[serde(default)]
    generator: Option<String>,
    images: BTreeMap<String, String>,
    degree: String,
}

fn data() -> &'static File {
    static D: OnceLock<File> = OnceLock::new();
    D.get_or_init(|| parse_data("degrees", DATA))
}

pub(super) fn ids() -> Vec<&'static str> {
    data().tables.iter().map(|t| t.id.as_str()).collect()
}

fn codomain(g: &Arc<Group>, row: &DegRow, v: &Vars) -> Result<Arc<Group>> {
    match row.codomain.as_str() {
        "self" => Ok(g.clone()),
        "cyclic" => {
            let order = expr::eval_int(row.order.as_deref().unwrap_or("1"), v)? as u64;
            let x = elem(g, row.generator.as_deref().unwrap_or("1"), v)?;
            if g.elem_order(x) as u64 != order {
                return Err(Error::Inconsistent(format!("generator has order {}, not {order}", g.elem_order(x))));
            }
            let l = lens_of_element(g, x)?;
            let spec = if order <= 1 { GroupSpec::cyclic(1) } else { GroupSpec::lens_space(order, l.r1 as i64, l.r2 as i64)? };
            cached_group(&spec)
        }
        t => Ok(group_at(t, v)?.1),
    }
}

fn check(row: &DegRow, groups: &[(String, Vars, Arc<Group>)]) -> Outcome {
    let mut out = Outcome::default();
    for (name, base, g) in groups {
        let insts = match expand(&row.vars, &row.when, base) {
            Ok(i) => i,
            Err(e) => {
                out.check(Err(e), || name.clone());
                continue;
            }
        };
        for v in insts {
            let mut target_name = String::new();
            let mut imgs_text = String::new();
            let mut partial = false;
            let found = (|| -> Result<Option<String>> {
                let target = codomain(g, row, &v)?;
                target_name = target.display_name();
                let imgs: Vec<(&str, String)> = row.images.iter().map(|(k, w)| Ok((k.as_str(), substitute(w, &v)?))).collect::<Result<_>>()?;
                imgs_text = imgs.iter().map(|(k, w)| format!("{k}->{w}")).collect::<Vec<_>>().join(", ");
                let refs: Vec<(&str, &str)> = imgs.iter().map(|(k, w)| (*k, w.as_str())).collect();
                let psi = make_hom_words(g, &target, &refs)?;
                let modulus = target.order() as u64;
                let expected = expr::eval_mod(&row.degree, &v, modulus)?;
                let brute = match brute_degree(&psi) {
                    Err(Error::Underdetermined(_)) => {
                        // fall back to the congruences, which must admit the tabulated value
                        let coset = congruences_for(&psi)?.solution.ok_or_else(|| Error::InconsistentSystem(name.clone()))?;
                        if !coset.contains(expected) {
                            return Ok(Some(format!("{name} -> {target_name} ({imgs_text}): congruences give {:?}, table gives {expected}", coset.residues())));
                        }
                        partial = true;
                        expected
                    }
                    d => d?,
                };
                if brute != expected {
                    return Ok(Some(format!("{name} -> {target_name} ({imgs_text}): degree {brute} mod {modulus}, table gives {expected}")));
                }
                let engine = deg_hom(&psi)?;
                Ok((engine != brute).then(|| format!("{name} -> {target_name}: engine gives {engine}, first principles {brute}")))
            })();
            out.partial += usize::from(partial && matches!(found, Ok(None)));
            out.check(found, || format!("sphmap homs \"{name}\" \"{target_name}\"  ({imgs_text}; {})", fmt_vars(&v)));
        }
    }
    out
}

fn describe(r: &DegRow) -> String {
    let imgs: Vec<String> = r.images.iter().map(|(k, w)| format!("{k}->{w}")).collect();
    let target = match r.codomain.as_str() {
        "cyclic" => format!("Z({})", r.order.as_deref().unwrap_or("1")),
        t => t.to_string(),
    };
    format!("to {target}, {}: deg = {}", imgs.join(", "), r.degree)
}

pub(super) fn verify(id: &str) -> Option<VerificationReport> {
    let t = data().tables.iter().find(|t| t.id == id)?;
    let mut rows = Vec::new();
    let mut groups = Vec::new();
    for v in &t.samples {
        match group_at(&t.domain, v) {
            Ok((name, g)) => groups.push((name, v.clone(), g)),
            Err(e) => rows.push(Row {
                label: format!("build {}", t.domain),
                params: fmt_vars(v),
                expected: "group builds".into(),
                computed: e.to_string(),
                status: Status::Fail,
                note: None,
                reproducer: Some(format!("sphmap group \"{}\"", t.domain)),
            }),
        }
    }
    let params = groups.iter().map(|g| g.0.as_str()).collect::<Vec<_>>().join(", ");
    for rv in &t.rows {
        let (meta, verbatim, corrected) = variants::<DegRow>(rv);
        let corrected = corrected.map(|c| (describe(&c), check(&c, &groups)));
        rows.push(
            Judged { meta: &meta, params: params.clone(), expected: describe(&verbatim), verbatim: check(&verbatim, &groups), corrected }
                .row(Status::Fail),
        );
    }
    Some(VerificationReport::new(&t.id, &t.title, rows, Vec::new()))
}
