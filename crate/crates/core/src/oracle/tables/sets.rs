//! Complete degree sets, recomputed from first principles and by the engine.

use std::sync::OnceLock;

use serde::Deserialize;

use super::*;
use crate::degrees::mapping_degree_set;
use crate::lens::{homeomorphic, DegreeSet, LensSpace};
use crate::oracle::brute::brute_degree_set;

const DATA: &str = include_str!("../../../data/tables/sets.json");

#[derive(Deserialize)]
struct File {
    tables: Vec<Table>,
}

#[derive(Deserialize)]
struct Table {
    id: String,
    title: String,
    rows: Vec<SetRow>,
    #[serde(default)]
    homeomorphic: Vec<(String, String)>,
}

#[derive(Deserialize)]
struct SetRow {
    label: String,
    domain: String,
    target: String,
    modulus: u64,
    residues: Vec<u64>,
}

fn data() -> &'static File {
    static D: OnceLock<File> = OnceLock::new();
    D.get_or_init(|| parse_data("sets", DATA))
}

pub(super) fn ids() -> Vec<&'static str> {
    data().tables.iter().map(|t| t.id.as_str()).collect()
}

fn plain(label: &str, params: String, expected: String, found: Result<Option<String>>, reproducer: String) -> Row {
    let mut out = Outcome::default();
    out.check(found, || reproducer);
    let meta = Meta { label: label.into(), printed: true, ..Default::default() };
    Judged { meta: &meta, params, expected, verbatim: out, corrected: None }.row(Status::Fail)
}

fn set_row(r: &SetRow) -> Row {
    let expected = DegreeSet::new(r.modulus, r.residues.iter().copied());
    let found = (|| -> Result<Option<String>> {
        let (m, n): (GroupSpec, GroupSpec) = (r.domain.parse()?, r.target.parse()?);
        let brute = brute_degree_set(&m, &n)?;
        let engine = mapping_degree_set(&m, &n)?;
        Ok(if brute != expected {
            Some(format!("first principles give {brute}"))
        } else if engine != expected {
            Some(format!("engine gives {engine}"))
        } else {
            None
        })
    })();
    plain(&r.label, format!("{} -> {}", r.domain, r.target), expected.to_string(), found, format!("sphmap degrees \"{}\" \"{}\"", r.domain, r.target))
}

pub(super) fn verify(id: &str) -> Option<VerificationReport> {
    let t = data().tables.iter().find(|t| t.id == id)?;
    let mut rows: Vec<Row> = t.rows.iter().map(set_row).collect();
    for (a, b) in &t.homeomorphic {
        let found = (|| -> Result<Option<String>> {
            let la = LensSpace::from_spec(&a.parse()?).ok_or(Error::NotCyclic)?;
            let lb = LensSpace::from_spec(&b.parse()?).ok_or(Error::NotCyclic)?;
            Ok((!homeomorphic(&la, &lb)).then(|| "not homeomorphic".to_string()))
        })();
        rows.push(plain(&format!("{a} homeomorphic to {b}"), format!("{a}, {b}"), "true".into(), found, format!("sphmap lens \"{a}\" \"{b}\"")));
    }
    Some(VerificationReport::new(&t.id, &t.title, rows, Vec::new()))
}
