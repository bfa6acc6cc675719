use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::group::Group;
use super::spec::GroupSpec;
use super::structure::{characteristic_subgroups, conjugacy_classes};
use crate::error::{Error, Result};
use crate::homs;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Isomorphic to the group of this spec (lens data omitted for cyclic groups).
    Spherical(GroupSpec),
    NotSpherical { order: usize },
}

impl Classification {
    pub fn spec(&self) -> Option<&GroupSpec> {
        match self {
            Classification::Spherical(s) => Some(s),
            Classification::NotSpherical { .. } => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Spherical(s) => write!(f, "{s}"),
            Classification::NotSpherical { order } => write!(f, "non-spherical group of order {order}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    order: usize,
    abelianization: Vec<u64>,
    center: usize,
    class_sizes: Vec<usize>,
    element_orders: Vec<usize>,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let ch = characteristic_subgroups(g);
    let mut class_sizes: Vec<usize> = conjugacy_classes(g).iter().map(|c| c.members.len()).collect();
    class_sizes.sort_unstable();
    let mut element_orders: Vec<usize> = (0..g.order()).map(|x| g.elem_order(x)).collect();
    element_orders.sort_unstable();
    Fingerprint {
        order: g.order(),
        abelianization: ch.abelianization,
        center: ch.center.len(),
        class_sizes,
        element_orders,
    }
}

type Candidate = (Arc<Group>, Fingerprint);

fn candidates(order: usize) -> Result<Vec<Candidate>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<Candidate>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&order) {
        return Ok(c.clone());
    }
    let mut out = Vec::new();
    for spec in GroupSpec::all_of_order(order as u64) {
        let build_spec = if spec.is_cyclic() { GroupSpec::cyclic(spec.m) } else { spec.clone() };
        let cfg = super::group::Config { group_cap: order.max(1), ..Default::default() };
        let mut g = Group::build_with(&build_spec, &cfg)?;
        g.spec = Some(spec);
        let fp = fingerprint(&g);
        out.push((Arc::new(g), fp));
    }
    cache.lock().unwrap().insert(order, out.clone());
    Ok(out)
}

/// Identifies `h` as one of the spherical space-form groups, by fingerprint and an
/// explicit isomorphism.
pub fn classify(h: &Group) -> Result<Classification> {
    let n = h.order();
    let is_cyclic = (0..n).any(|x| h.elem_order(x) == n);
    if is_cyclic {
        return Ok(Classification::Spherical(GroupSpec { lens: None, ..GroupSpec::cyclic(n as u64) }));
    }
    let fp = fingerprint(h);
    let matching: Vec<Candidate> = candidates(n)?.into_iter().filter(|(_, f)| *f == fp).collect();
    let mut confirmed = Vec::new();
    for (cand, _) in &matching {
        if homs::find_isomorphism(cand, h).is_some() {
            confirmed.push(cand.spec.clone().unwrap());
        }
    }
    match confirmed.len() {
        // the isomorphism search is exhaustive, so a bare fingerprint match is a collision
        0 => Ok(Classification::NotSpherical { order: n }),
        1 => Ok(Classification::Spherical(confirmed.pop().unwrap())),
        _ => Err(Error::Ambiguous(format!(
            "isomorphic to several specs: {}",
            confirmed.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
        ))),
    }
}
