//! Spherical space-form groups as finite subgroups of SO(4).

pub mod classify;
pub mod group;
pub mod presentation;
pub mod so4;
pub mod spec;
pub mod structure;
pub mod subgroups;
pub mod words;

pub use classify::{classify, Classification};
pub use group::{Config, Generator, Group, Word};
pub use spec::{Family, GroupSpec};
pub use structure::{characteristic_subgroups, conjugacy_classes, generated, CharacteristicSubgroups, ConjugacyClass, ElemSet};
pub use subgroups::{quotient, subgroups, SubgroupRecord};
pub use words::canonical_word;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    Group::build(spec)
}

/// Shared, memoized construction honoring the `SPHMAP_CAP` override.
pub fn cached_group(spec: &GroupSpec) -> Result<Arc<Group>> {
    static CACHE: OnceLock<Mutex<HashMap<GroupSpec, Arc<Group>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(spec) {
        return Ok(g.clone());
    }
    let g = Arc::new(Group::build_with(spec, &Config::from_env())?);
    cache.lock().unwrap().insert(spec.clone(), g.clone());
    Ok(g)
}
