//! Lens spaces covering S³/G through maximal cyclic subgroups, checked against the
//! eigen-angles of the SO(4) action. On a mismatch the computed lens data stands and
//! the row is reported as a discrepancy.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Deserialize;
use serde_json::Value;

use super::*;
use crate::degrees::maximal_cyclic_reps;
use crate::groups::{conjugacy_classes, generated};
use crate::groups::structure::class_index;
use crate::lens::{lens_of_cyclic, oriented_equivalent, LensSpace};

const DATA: &str = include_str!("../../../data/tables/lens.json");

#[derive(Deserialize)]
struct File {
    id: String,
    title: String,
    families: Vec<Family>,
}

#[derive(Deserialize)]
struct Family {
    group: String,
    grid: BTreeMap<String, Vec<i64>>,
    rows: Vec<Value>,
}

#[derive(Deserialize)]
struct CoverRow {
    gens: Vec<String>,
    order: String,
    lens: [String; 2],
}

fn data() -> &'static File {
    static D: OnceLock<File> = OnceLock::new();
    D.get_or_init(|| parse_data("lens", DATA))
}

pub(super) fn ids() -> Vec<&'static str> {
    vec![data().id.as_str()]
}

struct Sample {
    name: String,
    vars: Vars,
    group: Arc<Group>,
    class_of: Vec<usize>,
}

/// Grid points that give an admissible group.
fn samples(f: &Family) -> Vec<Sample> {
    let mut points = vec![Vars::new()];
    for (k, vals) in &f.grid {
        points = points
            .iter()
            .flat_map(|p| {
                vals.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.insert(k.clone(), x);
                    q
                })
            })
            .collect();
    }
    points
        .into_iter()
        .filter_map(|v| {
            let (name, group) = group_at(&f.group, &v).ok()?;
            let class_of = class_index(&group, &conjugacy_classes(&group));
            Some(Sample { name, vars: v, group, class_of })
        })
        .collect()
}

fn subgroup_gens(g: &Group, row: &CoverRow, v: &Vars) -> Result<Vec<usize>> {
    row.gens.iter().filter(|w| w.as_str() != "v" || g.gen_position("v").is_some()).map(|w| elem(g, w, v)).collect()
}

fn check(row: &CoverRow, samples: &[Sample]) -> Outcome {
    let mut out = Outcome::default();
    for s in samples {
        let found = (|| -> Result<Option<String>> {
            let g = &s.group;
            let (got, _) = lens_of_cyclic(g, &subgroup_gens(g, row, &s.vars)?)?;
            let order = expr::eval_int(&row.order, &s.vars)? as u64;
            if got.m != order {
                return Ok(Some(format!("{}: subgroup has order {}, table says {order} (computed {got})", s.name, got.m)));
            }
            let exp = LensSpace::new(order, expr::eval_int(&row.lens[0], &s.vars)?, expr::eval_int(&row.lens[1], &s.vars)?)?;
            Ok((!oriented_equivalent(&got, &exp)).then(|| format!("{}: computed {got}, table gives {exp}", s.name)))
        })();
        out.check(found, || format!("sphmap group \"{}\" --subgroups; gens {}  ({})", s.name, row.gens.join(", "), fmt_vars(&s.vars)));
    }
    out
}

/// Every maximal cyclic subgroup class is hit by some listed subgroup.
fn cover(rows: &[&CoverRow], samples: &[Sample]) -> Outcome {
    let mut out = Outcome::default();
    for s in samples {
        let found = (|| -> Result<Option<String>> {
            let g = &s.group;
            let mut listed = Vec::new();
            for r in rows {
                listed.push(generated(g, &subgroup_gens(g, r, &s.vars)?));
            }
            let mut missing = Vec::new();
            for &h in maximal_cyclic_reps(g) {
                let k = g.elem_order(h);
                let hit = listed.iter().any(|l| l.len() == k && l.iter().any(|&x| s.class_of[x as usize] == s.class_of[h]));
                if !hit {
                    missing.push(crate::lens::lens_of_element(g, h)?.to_string());
                }
            }
            Ok((!missing.is_empty()).then(|| format!("{}: unlisted {}", s.name, missing.join(", "))))
        })();
        out.check(found, || format!("sphmap group \"{}\"", s.name));
    }
    out
}

fn describe(r: &CoverRow) -> String {
    format!("S^3/<{}> = L({}; {}, {})", r.gens.join(", "), r.order, r.lens[0], r.lens[1])
}

pub(super) fn verify(id: &str) -> Option<VerificationReport> {
    let d = data();
    if d.id != id {
        return None;
    }
    let (mut rows, mut done) = (Vec::new(), Vec::new());
    for f in &d.families {
        let ss = samples(f);
        let params = ss.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", ");
        let parsed: Vec<(Meta, CoverRow, Option<CoverRow>)> = f.rows.iter().map(variants::<CoverRow>).collect();
        for (meta, verbatim, corrected) in &parsed {
            let meta = Meta { label: format!("{}: {}", f.group, meta.label), ..meta.clone() };
            let corrected = corrected.as_ref().map(|c| (describe(c), check(c, &ss)));
            rows.push(
                Judged { meta: &meta, params: params.clone(), expected: describe(verbatim), verbatim: check(verbatim, &ss), corrected }
                    .row(Status::Discrepancy),
            );
        }
        let printed: Vec<&CoverRow> = parsed.iter().filter(|p| p.0.printed).map(|p| &p.1).collect();
        let all: Vec<&CoverRow> = parsed.iter().map(|p| p.2.as_ref().unwrap_or(&p.1)).collect();
        done.push(completeness(
            &format!("{}: maximal cyclic subgroups covered", f.group),
            params,
            "every conjugacy class of maximal cyclic subgroups listed",
            cover(&printed, &ss),
            cover(&all, &ss),
            None,
        ));
    }
    Some(VerificationReport::new(&d.id, &d.title, rows, done))
}
