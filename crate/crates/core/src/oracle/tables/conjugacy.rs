//! Conjugacy-class tables: each row instance lists one full class by words.

use std::sync::{Arc, OnceLock};

use serde::Deserialize;
use serde_json::Value;

use super::*;
use crate::groups::conjugacy_classes;
use crate::groups::structure::class_index;

const DATA: &str = include_str!("../../../data/tables/conjugacy.json");

#[derive(Deserialize)]
struct File {
    tables: Vec<Table>,
}

#[derive(Deserialize)]
struct Table {
    id: String,
    title: String,
    group: String,
    samples: Vec<Vars>,
    rows: Vec<Value>,
}

#[derive(Deserialize)]
struct ClassRow {
    #[serde(default)]
    vars: Loops,
    #[serde(default = "always")]
    when: String,
    order: String,
    /// Loops over the members of one class.
    #[serde(default)]
    each: Loops,
    words: Vec<String>,
}

fn data() -> &'static File {
    static D: OnceLock<File> = OnceLock::new();
    D.get_or_init(|| parse_data("conjugacy", DATA))
}

pub(super) fn ids() -> Vec<&'static str> {
    data().tables.iter().map(|t| t.id.as_str()).collect()
}

struct Sample {
    name: String,
    vars: Vars,
    group: Arc<Group>,
    class_of: Vec<usize>,
    classes: usize,
}

/// Checks a row on every sample; also returns the classes it hit, per sample.
fn check(row: &ClassRow, samples: &[Sample]) -> (Outcome, Vec<Vec<usize>>) {
    let mut out = Outcome::default();
    let mut hits = Vec::new();
    for s in samples {
        let mut hit = Vec::new();
        let insts = match expand(&row.vars, &row.when, &s.vars) {
            Ok(v) => v,
            Err(e) => {
                out.check(Err(e), || s.name.clone());
                hits.push(hit);
                continue;
            }
        };
        for v in insts {
            let found = check_instance(row, s, &v, &mut hit);
            out.check(found, || format!("sphmap group \"{}\" --classes  ({})", s.name, fmt_vars(&v)));
        }
        hits.push(hit);
    }
    (out, hits)
}

fn check_instance(row: &ClassRow, s: &Sample, v: &Vars, hit: &mut Vec<usize>) -> Result<Option<String>> {
    let g = &s.group;
    let mut members = Vec::new();
    for e in expand(&row.each, "1", v)? {
        for w in &row.words {
            members.push(elem(g, w, &e)?);
        }
    }
    let order = expr::eval_int(&row.order, v)? as usize;
    let first = members[0];
    let cls = s.class_of[first];
    hit.push(cls);
    let mut sorted = members.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != members.len() {
        return Ok(Some(format!("{}: listed words repeat an element", s.name)));
    }
    let class: Vec<usize> = (0..g.order()).filter(|&x| s.class_of[x] == cls).collect();
    if class != sorted {
        return Ok(Some(format!("{}: {} listed elements, the class of the first has {}", s.name, sorted.len(), class.len())));
    }
    if g.elem_order(first) != order {
        return Ok(Some(format!("{}: elements have order {}, table says {order}", s.name, g.elem_order(first))));
    }
    Ok(None)
}

/// Whether the hit classes partition the group, per sample.
fn partition(samples: &[Sample], hits: &[Vec<Vec<usize>>]) -> Outcome {
    let mut out = Outcome::default();
    for (i, s) in samples.iter().enumerate() {
        let mut all: Vec<usize> = hits.iter().flat_map(|h| h[i].iter().copied()).collect();
        all.sort_unstable();
        let n = all.len();
        all.dedup();
        let found = if n != all.len() {
            Some(format!("{}: a class is listed twice", s.name))
        } else if all.len() != s.classes {
            Some(format!("{}: {} of {} classes listed", s.name, all.len(), s.classes))
        } else {
            None
        };
        out.check(Ok(found), || format!("sphmap group \"{}\" --classes", s.name));
    }
    out
}

pub(super) fn verify(id: &str) -> Option<VerificationReport> {
    let t = data().tables.iter().find(|t| t.id == id)?;
    let mut samples = Vec::new();
    let mut rows = Vec::new();
    for v in &t.samples {
        match group_at(&t.group, v) {
            Ok((name, group)) => {
                let classes = conjugacy_classes(&group);
                let class_of = class_index(&group, &classes);
                samples.push(Sample { name, vars: v.clone(), group, class_of, classes: classes.len() });
            }
            Err(e) => rows.push(Row {
                label: format!("build {}", t.group),
                params: fmt_vars(v),
                expected: "group builds".into(),
                computed: e.to_string(),
                status: Status::Fail,
                note: None,
                reproducer: Some(format!("sphmap group \"{}\"", t.group)),
            }),
        }
    }
    let params: Vec<&str> = samples.iter().map(|s| s.name.as_str()).collect();
    let params = params.join(", ");
    let (mut printed_hits, mut all_hits) = (Vec::new(), Vec::new());
    for rv in &t.rows {
        let (meta, verbatim, corrected) = variants::<ClassRow>(rv);
        let (vo, vh) = check(&verbatim, &samples);
        let corrected = corrected.map(|c| {
            let (co, ch) = check(&c, &samples);
            (describe(&c), co, ch)
        });
        let effective = corrected.as_ref().map(|c| c.2.clone()).unwrap_or_else(|| vh.clone());
        if meta.printed {
            printed_hits.push(vh);
        }
        all_hits.push(effective);
        rows.push(
            Judged { meta: &meta, params: params.clone(), expected: describe(&verbatim), verbatim: vo, corrected: corrected.map(|c| (c.0, c.1)) }
                .row(Status::Fail),
        );
    }
    let done = completeness(
        "classes partition the group",
        params,
        "every conjugacy class listed exactly once",
        partition(&samples, &printed_hits),
        partition(&samples, &all_hits),
        None,
    );
    Some(VerificationReport::new(&t.id, &t.title, rows, vec![done]))
}

fn describe(r: &ClassRow) -> String {
    let loops: Vec<String> = r.vars.iter().map(|(n, a, b)| format!("{a} <= {n} <= {b}")).collect();
    let each: Vec<String> = r.each.iter().map(|(n, a, b)| format!("{a} <= {n} <= {b}")).collect();
    let mut s = format!("order {}; {}", r.order, r.words.join(", "));
    if !each.is_empty() {
        s.push_str(&format!(" for {}", each.join(", ")));
    }
    if !loops.is_empty() {
        s.push_str(&format!("; {}", loops.join(", ")));
    }
    s
}
