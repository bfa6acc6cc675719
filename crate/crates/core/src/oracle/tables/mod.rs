//! Replay of the stored reference tables (`data/tables/*.json`).
//!
//! Tables are kept verbatim. A row may carry a `corrected` patch, merged over the row,
//! and rows marked `"printed": false` are supplements absent from the printed table.
//! A printed row passes when its verbatim form matches the computation, is a
//! discrepancy when only the corrected form does, and fails otherwise; a supplement
//! is at best a discrepancy.

mod conjugacy;
mod covers;
mod degrees;
mod out;
mod sets;
mod structure;

use std::fmt;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::expr::{self, Vars};
use crate::groups::{cached_group, Classification, Group, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Discrepancy,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Discrepancy => "discrepancy",
            Status::Fail => "fail",
        })
    }
}

/// One expected-vs-computed comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub label: String,
    /// Parameter points the row was instantiated at.
    pub params: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub note: Option<String>,
    /// Spec strings and inputs reproducing the first mismatch.
    pub reproducer: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub table_id: String,
    pub title: String,
    pub status: Status,
    pub rows: Vec<Row>,
    /// Checks that the table, read as a whole, lists everything.
    pub completeness: Vec<Row>,
}

impl VerificationReport {
    fn new(id: &str, title: &str, rows: Vec<Row>, completeness: Vec<Row>) -> Self {
        let status = rows.iter().chain(&completeness).map(|r| r.status).max().unwrap_or(Status::Pass);
        VerificationReport { table_id: id.into(), title: title.into(), status, rows, completeness }
    }

    pub fn count(&self, s: Status) -> usize {
        self.rows.iter().chain(&self.completeness).filter(|r| r.status == s).count()
    }
}

/// Ids of every registered table, in report order.
pub fn list_tables() -> Vec<&'static str> {
    let mut ids = Vec::new();
    ids.extend(conjugacy::ids());
    ids.extend(structure::ids());
    ids.extend(covers::ids());
    ids.extend(out::ids());
    ids.extend(degrees::ids());
    ids.extend(sets::ids());
    ids
}

pub fn verify_table(id: &str) -> Result<VerificationReport> {
    conjugacy::verify(id)
        .or_else(|| structure::verify(id))
        .or_else(|| covers::verify(id))
        .or_else(|| out::verify(id))
        .or_else(|| degrees::verify(id))
        .or_else(|| sets::verify(id))
        .ok_or_else(|| Error::UnknownTable(id.into()))
}

pub fn verify_all() -> Vec<VerificationReport> {
    list_tables().into_iter().map(|id| verify_table(id).expect("registered table")).collect()
}

fn parse_data<T: DeserializeOwned>(name: &str, text: &str) -> T {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("table data {name}: {e}"))
}

fn always() -> String {
    "1".into()
}

pub(crate) type Loops = Vec<(String, String, String)>;

/// Row metadata shared by every table kind.
#[derive(Clone, Debug, Default, Deserialize)]
struct Meta {
    label: String,
    #[serde(default)]
    note: Option<String>,
    #[serde(default = "yes")]
    printed: bool,
    #[serde(default)]
    corrected: Option<Value>,
}

fn yes() -> bool {
    true
}

/// The verbatim row and, if it carries a patch, the corrected one.
fn variants<T: DeserializeOwned>(v: &Value) -> (Meta, T, Option<T>) {
    let meta: Meta = serde_json::from_value(v.clone()).expect("row metadata");
    let verbatim = serde_json::from_value(v.clone()).unwrap_or_else(|e| panic!("row {}: {e}", meta.label));
    let corrected = meta.corrected.as_ref().map(|patch| {
        let mut merged = v.clone();
        if let (Some(obj), Some(p)) = (merged.as_object_mut(), patch.as_object()) {
            for (k, x) in p {
                obj.insert(k.clone(), x.clone());
            }
        }
        serde_json::from_value(merged).unwrap_or_else(|e| panic!("corrected row {}: {e}", meta.label))
    });
    (meta, verbatim, corrected)
}

/// Tally of one variant of a row over its instances; keeps the first mismatch.
#[derive(Clone, Debug, Default)]
struct Outcome {
    instances: usize,
    /// Instances confirmed only up to the solution set of the congruences.
    partial: usize,
    mismatch: Option<(String, String)>,
}

impl Outcome {
    /// `found` is `Some(description)` on a mismatch.
    fn check(&mut self, found: Result<Option<String>>, reproducer: impl FnOnce() -> String) {
        self.instances += 1;
        let msg = match found {
            Ok(None) => return,
            Ok(Some(m)) => m,
            Err(e) => format!("error: {e}"),
        };
        if self.mismatch.is_none() {
            self.mismatch = Some((msg, reproducer()));
        }
    }

    fn ok(&self) -> bool {
        self.mismatch.is_none()
    }

    fn summary(&self) -> String {
        match &self.mismatch {
            None if self.partial > 0 => format!(
                "matches at {} instance(s); {} of them only up to the congruence solutions, the first-principles degree being underdetermined",
                self.instances, self.partial
            ),
            None => format!("matches at {} instance(s)", self.instances),
            Some((m, _)) => m.clone(),
        }
    }
}

struct Judged<'a> {
    meta: &'a Meta,
    params: String,
    expected: String,
    verbatim: Outcome,
    corrected: Option<(String, Outcome)>,
}

impl Judged<'_> {
    /// Applies the status rules; `unpatched_mismatch` is the status of a printed row
    /// that matches neither form and has no correction.
    fn row(self, unpatched_mismatch: Status) -> Row {
        let Judged { meta, params, expected, verbatim, corrected } = self;
        let note = meta.note.clone();
        let mk = |status, computed: String, reproducer: Option<String>| Row {
            label: meta.label.clone(),
            params: params.clone(),
            expected: expected.clone(),
            computed,
            status,
            note: note.clone(),
            reproducer,
        };
        if !meta.printed {
            return if verbatim.ok() {
                mk(Status::Discrepancy, format!("not in the printed table; {}", verbatim.summary()), None)
            } else {
                let r = verbatim.mismatch.as_ref().map(|m| m.1.clone());
                mk(Status::Fail, verbatim.summary(), r)
            };
        }
        if verbatim.ok() {
            return mk(Status::Pass, verbatim.summary(), None);
        }
        let repro = verbatim.mismatch.as_ref().map(|m| m.1.clone());
        match corrected {
            Some((cexp, c)) if c.ok() => mk(
                Status::Discrepancy,
                format!("printed form: {}; corrected form ({cexp}) {}", verbatim.summary(), c.summary()),
                repro,
            ),
            Some((cexp, c)) => {
                let r = c.mismatch.as_ref().map(|m| m.1.clone());
                mk(Status::Fail, format!("printed form: {}; corrected form ({cexp}): {}", verbatim.summary(), c.summary()), r)
            }
            None => mk(unpatched_mismatch, verbatim.summary(), repro),
        }
    }
}

/// A completeness check over the printed rows and over all rows (with patches).
fn completeness(label: &str, params: String, expected: &str, printed: Outcome, all: Outcome, note: Option<String>) -> Row {
    let (status, computed, reproducer) = if printed.ok() {
        (Status::Pass, printed.summary(), None)
    } else if all.ok() {
        (Status::Discrepancy, format!("printed rows: {}; with corrections and supplements: complete", printed.summary()), printed.mismatch.map(|m| m.1))
    } else {
        (Status::Fail, all.summary(), all.mismatch.map(|m| m.1))
    };
    let note = match status {
        Status::Discrepancy => note.or_else(|| Some("the printed rows alone do not cover the group; the corrected rows do".into())),
        _ => note,
    };
    Row { label: label.into(), params, expected: expected.into(), computed, status, note, reproducer }
}

/// Normalizes a type string from the tables into a spec: `Z(1)x` prefixes vanish and
/// D'(1, q) is the cyclic group Z(2^q).
fn parse_type(text: &str) -> Result<GroupSpec> {
    let t = text.trim();
    let t = t.strip_prefix("Z(1)x").unwrap_or(t);
    if let Some(rest) = t.strip_prefix("D'(1,") {
        let q: u32 = rest.trim_end_matches(')').trim().parse().map_err(|_| Error::Parse(text.into()))?;
        return Ok(GroupSpec::cyclic(1 << q));
    }
    t.parse()
}

fn same_type(expected: &str, got: &Classification) -> Result<bool> {
    let e = parse_type(expected)?;
    Ok(got.spec().is_some_and(|s| s.abstract_key() == e.abstract_key()))
}

/// Group named by a template such as `D*([n])` at the given parameters.
fn group_at(template: &str, vars: &Vars) -> Result<(String, Arc<Group>)> {
    let text = crate::degrees::registry::substitute(template, vars)?;
    let spec = parse_type(&text)?;
    spec.validate()?;
    let name = spec.to_string();
    Ok((name, cached_group(&spec)?))
}

fn fmt_vars(v: &Vars) -> String {
    let parts: Vec<String> = v.iter().map(|(k, x)| format!("{k}={x}")).collect();
    parts.join(", ")
}

fn expand(loops: &Loops, when: &str, base: &Vars) -> Result<Vec<Vars>> {
    expr::expand(loops, when, base)
}

fn elem(g: &Group, template: &str, vars: &Vars) -> Result<usize> {
    let w = crate::degrees::registry::substitute(template, vars)?;
    Ok(g.eval(&g.parse_word(&w)?))
}
