//! Characteristic subgroups, subgroup-type lists, and parameterized subgroup tables.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use serde::Deserialize;
use serde_json::Value;

use super::*;
use crate::groups::{characteristic_subgroups, classify, generated, quotient, subgroups, ElemSet, SubgroupRecord};

const DATA: &str = include_str!("../../../data/tables/structure.json");

#[derive(Deserialize)]
struct File {
    characteristic: CharTable,
    subgroup_types: Vec<TypeTable>,
    subgroup_rows: Vec<SubTable>,
}

#[derive(Deserialize)]
struct CharTable {
    id: String,
    title: String,
    rows: Vec<CharRow>,
}

#[derive(Deserialize)]
struct Named {
    #[serde(rename = "type")]
    ty: String,
    #[serde(default)]
    gens: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct CharRow {
    label: String,
    group: String,
    samples: Vec<Vars>,
    commutator: Named,
    abelianization: Vec<String>,
    center: Named,
}

#[derive(Deserialize)]
struct TypeTable {
    id: String,
    title: String,
    group: String,
    types: Vec<String>,
    normal: Vec<String>,
    quotients: Vec<String>,
}

#[derive(Deserialize)]
struct SubTable {
    id: String,
    title: String,
    group: String,
    samples: Vec<Vars>,
    rows: Vec<Value>,
}

#[derive(Deserialize)]
struct SubRow {
    #[serde(default)]
    vars: Loops,
    #[serde(default = "always")]
    when: String,
    #[serde(rename = "type")]
    ty: String,
    #[serde(default)]
    each: Loops,
    members: Vec<Vec<String>>,
    /// `-` for a non-normal subgroup, else the quotient type.
    quotient: String,
    #[serde(default)]
    quotient_when: Option<String>,
}

fn data() -> &'static File {
    static D: OnceLock<File> = OnceLock::new();
    D.get_or_init(|| parse_data("structure", DATA))
}

pub(super) fn ids() -> Vec<&'static str> {
    let d = data();
    let mut out = vec![d.characteristic.id.as_str()];
    out.extend(d.subgroup_types.iter().map(|t| t.id.as_str()));
    out.extend(d.subgroup_rows.iter().map(|t| t.id.as_str()));
    out
}

pub(super) fn verify(id: &str) -> Option<VerificationReport> {
    let d = data();
    if d.characteristic.id == id {
        return Some(characteristic(&d.characteristic));
    }
    if let Some(t) = d.subgroup_types.iter().find(|t| t.id == id) {
        return Some(type_lists(t));
    }
    d.subgroup_rows.iter().find(|t| t.id == id).map(subgroup_rows)
}

fn elements(g: &Group, gens: &[String], v: &Vars) -> Result<ElemSet> {
    let xs: Vec<usize> = gens.iter().map(|w| elem(g, w, v)).collect::<Result<_>>()?;
    Ok(generated(g, &xs))
}

fn check_named(g: &Group, what: &str, got: &ElemSet, exp: &Named, v: &Vars) -> Result<Option<String>> {
    let ty = crate::degrees::registry::substitute(&exp.ty, v)?;
    let all: Vec<usize> = got.iter().map(|&x| x as usize).collect();
    let cls = crate::groups::subgroups::classify_subset(g, got, &all)?;
    if !same_type(&ty, &cls)? {
        return Ok(Some(format!("{what} is {cls}, table says {ty}")));
    }
    if let Some(gens) = &exp.gens {
        if &elements(g, gens, v)? != got {
            return Ok(Some(format!("{what} is not generated by {}", gens.join(", "))));
        }
    }
    Ok(None)
}

fn characteristic(t: &CharTable) -> VerificationReport {
    let mut rows = Vec::new();
    for r in &t.rows {
        let mut out = Outcome::default();
        let mut names = Vec::new();
        for v in &r.samples {
            let found = (|| -> Result<Option<String>> {
                let (name, g) = group_at(&r.group, v)?;
                names.push(name);
                let c = characteristic_subgroups(&g);
                if let Some(m) = check_named(&g, "commutator subgroup", &c.commutator, &r.commutator, v)? {
                    return Ok(Some(m));
                }
                if let Some(m) = check_named(&g, "center", &c.center, &r.center, v)? {
                    return Ok(Some(m));
                }
                let mut exp: Vec<u64> = r.abelianization.iter().map(|e| expr::eval_int(e, v).map(|x| x as u64)).collect::<Result<_>>()?;
                exp.retain(|&x| x != 1);
                exp.sort_unstable();
                let mut got = c.abelianization.clone();
                got.sort_unstable();
                Ok((got != exp).then(|| format!("abelianization invariants {got:?}, table says {exp:?}")))
            })();
            out.check(found, || format!("sphmap group \"{}\" --char", crate::degrees::registry::substitute(&r.group, v).unwrap_or_default()));
        }
        let meta = Meta { label: r.label.clone(), printed: true, ..Default::default() };
        let inv: Vec<String> = r.abelianization.iter().map(|s| format!("Z({s})")).collect();
        let expected = format!("[G,G] = {}, G^ab = {}, Z(G) = {}", r.commutator.ty, if inv.is_empty() { "1".into() } else { inv.join(" x ") }, r.center.ty);
        rows.push(Judged { meta: &meta, params: names.join(", "), expected, verbatim: out, corrected: None }.row(Status::Fail));
    }
    VerificationReport::new(&t.id, &t.title, rows, Vec::new())
}

fn type_set(list: &[String]) -> Result<BTreeSet<GroupSpec>> {
    list.iter().map(|s| parse_type(s).map(|x| x.abstract_key())).collect()
}

fn fmt_set(s: &BTreeSet<GroupSpec>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn proper(g: &Group, subs: &[SubgroupRecord]) -> Vec<SubgroupRecord> {
    subs.iter().filter(|r| r.order() > 1 && r.order() < g.order()).cloned().collect()
}

fn type_lists(t: &TypeTable) -> VerificationReport {
    let computed = (|| -> Result<[BTreeSet<GroupSpec>; 3]> {
        let (_, g) = group_at(&t.group, &Vars::new())?;
        let subs = proper(&g, &subgroups(&g)?);
        let key = |r: &SubgroupRecord| r.classification.spec().map(|s| s.abstract_key());
        let all: BTreeSet<GroupSpec> = subs.iter().filter_map(key).collect();
        let normal: BTreeSet<GroupSpec> = subs.iter().filter(|r| r.is_normal).filter_map(key).collect();
        let mut quotients = BTreeSet::new();
        for r in subs.iter().filter(|r| r.is_normal) {
            if let Classification::Spherical(s) = classify(&quotient(&g, &r.elements)?)? {
                quotients.insert(s.abstract_key());
            }
        }
        if subs.iter().any(|r| r.classification.spec().is_none()) {
            return Err(Error::Ambiguous("a subgroup is not spherical".into()));
        }
        Ok([all, normal, quotients])
    })();
    let mut rows = Vec::new();
    let specs = [("subgroup types", &t.types, "--subgroups"), ("normal subgroup types", &t.normal, "--subgroups"), ("spherical quotients", &t.quotients, "--subgroups")];
    for (i, (label, list, flag)) in specs.into_iter().enumerate() {
        let meta = Meta { label: label.into(), printed: true, ..Default::default() };
        let mut out = Outcome::default();
        let expected = type_set(list);
        let found = match (&computed, &expected) {
            (Ok(c), Ok(e)) => Ok((c[i] != *e).then(|| format!("computed {}", fmt_set(&c[i])))),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        out.check(found, || format!("sphmap group \"{}\" {flag}", t.group));
        let exp = expected.as_ref().map(fmt_set).unwrap_or_else(|e| e.to_string());
        rows.push(Judged { meta: &meta, params: t.group.clone(), expected: exp, verbatim: out, corrected: None }.row(Status::Fail));
    }
    VerificationReport::new(&t.id, &t.title, rows, Vec::new())
}

struct Sample {
    name: String,
    vars: Vars,
    group: Arc<Group>,
    subs: Vec<SubgroupRecord>,
    index: HashMap<ElemSet, usize>,
    /// Classes other than 1 and G.
    classes: BTreeSet<usize>,
}

fn check_sub(row: &SubRow, samples: &[Sample]) -> (Outcome, Vec<BTreeSet<usize>>) {
    let mut out = Outcome::default();
    let mut hits = Vec::new();
    for s in samples {
        let mut hit = BTreeSet::new();
        match expand(&row.vars, &row.when, &s.vars) {
            Ok(insts) => {
                for v in insts {
                    let found = sub_instance(row, s, &v, &mut hit);
                    out.check(found, || format!("sphmap group \"{}\" --subgroups  ({})", s.name, fmt_vars(&v)));
                }
            }
            Err(e) => out.check(Err(e), || s.name.clone()),
        }
        hits.push(hit);
    }
    (out, hits)
}

fn sub_instance(row: &SubRow, s: &Sample, v: &Vars, hit: &mut BTreeSet<usize>) -> Result<Option<String>> {
    let g = &s.group;
    let mut listed = BTreeSet::new();
    for e in expand(&row.each, "1", v)? {
        for gens in &row.members {
            let h = elements(g, gens, &e)?;
            if h.len() == 1 || h.len() == g.order() {
                continue;
            }
            listed.insert(s.index[&h]);
        }
    }
    let ty = crate::degrees::registry::substitute(&row.ty, v)?;
    let quotient_on = match &row.quotient_when {
        Some(c) => expr::eval_bool(c, v)?,
        None => true,
    };
    let qexp = if quotient_on { crate::degrees::registry::substitute(&row.quotient, v)? } else { "-".into() };
    for &i in &listed {
        let r = &s.subs[i];
        hit.insert(r.class_id);
        if !same_type(&ty, &r.classification)? {
            return Ok(Some(format!("{}: subgroup of order {} is {}, table says {ty}", s.name, r.order(), r.classification)));
        }
        if let Some(m) = check_quotient(g, r, &qexp)? {
            return Ok(Some(format!("{}: {m}", s.name)));
        }
    }
    // the listed subgroups must be closed under conjugation
    let classes: BTreeSet<usize> = listed.iter().map(|&i| s.subs[i].class_id).collect();
    let full: usize = classes.iter().map(|&c| s.subs.iter().filter(|r| r.class_id == c).count()).sum();
    if full != listed.len() {
        return Ok(Some(format!("{}: {} subgroups listed, their conjugates number {full}", s.name, listed.len())));
    }
    Ok(None)
}

fn check_quotient(g: &Group, r: &SubgroupRecord, qexp: &str) -> Result<Option<String>> {
    if qexp == "-" {
        return Ok(r.is_normal.then(|| format!("subgroup of order {} is normal, table lists no quotient", r.order())));
    }
    if !r.is_normal {
        return Ok(Some(format!("subgroup of order {} is not normal, table lists quotient {qexp}", r.order())));
    }
    let q = quotient(g, &r.elements)?;
    let ok = if let Some(n) = qexp.strip_prefix("dihedral(").and_then(|x| x.strip_suffix(')')) {
        is_dihedral(&q, n.parse().map_err(|_| Error::Parse(qexp.into()))?)
    } else if let Some(n) = qexp.strip_prefix("klein(").and_then(|x| x.strip_suffix(')')) {
        is_klein_extension(&q, n.parse().map_err(|_| Error::Parse(qexp.into()))?)
    } else {
        same_type(qexp, &classify(&q)?)?
    };
    Ok((!ok).then(|| format!("quotient by the subgroup of order {} is not {qexp}", r.order())))
}

/// Dihedral of order n: ⟨x⟩ of index 2 and an involution outside it inverting x.
fn is_dihedral(q: &Group, n: usize) -> bool {
    if q.order() != n || n % 2 != 0 {
        return false;
    }
    (0..n).filter(|&x| q.elem_order(x) == n / 2).any(|x| {
        let cx = generated(q, &[x]);
        (0..n).any(|y| q.elem_order(y) == 2 && cx.binary_search(&(y as u32)).is_err() && q.conj(y, x) == q.inv(x))
    })
}

/// (Z2 x Z2) ⋊ Z_n, non-abelian: exactly three involutions, forming a subgroup with 1.
fn is_klein_extension(q: &Group, n: usize) -> bool {
    if q.order() != 4 * n {
        return false;
    }
    let inv: Vec<usize> = (0..q.order()).filter(|&x| q.elem_order(x) == 2).collect();
    let abelian = (0..q.order()).all(|x| (0..q.order()).all(|y| q.mul(x, y) == q.mul(y, x)));
    inv.len() == 3 && !abelian && generated(q, &inv).len() == 4
}

fn cover(samples: &[Sample], hits: &[Vec<BTreeSet<usize>>]) -> Outcome {
    let mut out = Outcome::default();
    for (i, s) in samples.iter().enumerate() {
        let got: BTreeSet<usize> = hits.iter().flat_map(|h| h[i].iter().copied()).collect();
        let missing: Vec<String> = s
            .classes
            .difference(&got)
            .map(|&c| {
                let r = s.subs.iter().find(|r| r.class_id == c).unwrap();
                format!("{} ({} conjugates)", r.classification, r.class_size)
            })
            .collect();
        let found = (!missing.is_empty()).then(|| format!("{}: unlisted classes {}", s.name, missing.join(", ")));
        out.check(Ok(found), || format!("sphmap group \"{}\" --subgroups", s.name));
    }
    out
}

fn subgroup_rows(t: &SubTable) -> VerificationReport {
    let mut samples = Vec::new();
    let mut rows = Vec::new();
    for v in &t.samples {
        let built = group_at(&t.group, v).and_then(|(name, group)| {
            let subs = subgroups(&group)?;
            Ok((name, group, subs))
        });
        match built {
            Ok((name, group, subs)) => {
                let index = subs.iter().enumerate().map(|(i, r)| (r.elements.clone(), i)).collect();
                let classes = subs.iter().filter(|r| r.order() > 1 && r.order() < group.order()).map(|r| r.class_id).collect();
                samples.push(Sample { name, vars: v.clone(), group, subs, index, classes });
            }
            Err(e) => rows.push(Row {
                label: format!("build {}", t.group),
                params: fmt_vars(v),
                expected: "group builds".into(),
                computed: e.to_string(),
                status: Status::Fail,
                note: None,
                reproducer: Some(format!("sphmap group \"{}\" --subgroups", t.group)),
            }),
        }
    }
    let params = samples.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", ");
    let (mut printed_hits, mut all_hits) = (Vec::new(), Vec::new());
    for rv in &t.rows {
        let (meta, verbatim, corrected) = variants::<SubRow>(rv);
        let (vo, vh) = check_sub(&verbatim, &samples);
        let corrected = corrected.map(|c| {
            let (co, ch) = check_sub(&c, &samples);
            (describe(&c), co, ch)
        });
        all_hits.push(corrected.as_ref().map(|c| c.2.clone()).unwrap_or_else(|| vh.clone()));
        if meta.printed {
            printed_hits.push(vh);
        }
        rows.push(
            Judged { meta: &meta, params: params.clone(), expected: describe(&verbatim), verbatim: vo, corrected: corrected.map(|c| (c.0, c.1)) }
                .row(Status::Fail),
        );
    }
    let done = completeness(
        "subgroup classes covered",
        params,
        "every conjugacy class of subgroups other than 1 and G listed",
        cover(&samples, &printed_hits),
        cover(&samples, &all_hits),
        None,
    );
    VerificationReport::new(&t.id, &t.title, rows, vec![done])
}

fn describe(r: &SubRow) -> String {
    let gens: Vec<String> = r.members.iter().map(|m| format!("<{}>", m.join(", "))).collect();
    let mut s = format!("{} = {}; quotient {}", r.ty, gens.join(", "), r.quotient);
    if let Some(c) = &r.quotient_when {
        s.push_str(&format!(" when {c}"));
    }
    if !r.each.is_empty() || !r.vars.is_empty() {
        let loops: Vec<String> = r.vars.iter().chain(&r.each).map(|(n, a, b)| format!("{a} <= {n} <= {b}")).collect();
        s.push_str(&format!("; {}", loops.join(", ")));
    }
    s
}
