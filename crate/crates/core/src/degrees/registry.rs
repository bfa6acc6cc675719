//! Standard surjections and outer-automorphism generators, loaded from data.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Vars};
use crate::groups::{cached_group, ElemSet, Group, GroupSpec};
use crate::homs::{make_hom_words, Homomorphism};
use crate::lens::{lens_of_element, LensSpace};

const REGISTRY: &str = include_str!("../../data/registry.json");

/// A row of a degree table: a family of homomorphisms with a symbolic degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardSurjectionEntry {
    pub id: String,
    pub domain: String,
    /// Loop variables `[name, lo, hi]`, bounds being expressions in earlier variables.
    #[serde(default)]
    pub vars: Vec<(String, String, String)>,
    #[serde(default = "always")]
    pub when: String,
    /// Spec template such as `D*([n/k])`, or `cyclic`.
    #[serde(default)]
    pub codomain: String,
    #[serde(default)]
    pub order: Option<String>,
    /// For cyclic targets: the domain element whose cyclic subgroup gives the target lens space.
    #[serde(default)]
    pub generator: Option<String>,
    pub images: BTreeMap<String, String>,
    pub degree: String,
    /// Value as originally tabulated, when it differs from `degree`.
    #[serde(default)]
    pub printed: Option<String>,
    /// Set for degrees taken as known facts rather than derived.
    #[serde(default)]
    pub external: Option<String>,
}

fn always() -> String {
    "1".into()
}

#[derive(Debug, Deserialize)]
struct RegistryFile {
    surjections: Vec<StandardSurjectionEntry>,
    automorphisms: Vec<StandardSurjectionEntry>,
}

fn registry() -> &'static RegistryFile {
    static R: OnceLock<RegistryFile> = OnceLock::new();
    R.get_or_init(|| serde_json::from_str(REGISTRY).expect("registry data parses"))
}

pub fn surjection_entries() -> &'static [StandardSurjectionEntry] {
    &registry().surjections
}

pub fn automorphism_entries() -> &'static [StandardSurjectionEntry] {
    &registry().automorphisms
}

pub fn base_vars(spec: &GroupSpec) -> Vars {
    expr::vars(&[("n", spec.n as i64), ("q", spec.q as i64), ("m", spec.m as i64)])
}

/// Replaces every `[expr]` by its integer value.
pub fn substitute(template: &str, vars: &Vars) -> Result<String> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(start) = rest.find('[') {
        let end = rest[start..].find(']').ok_or_else(|| Error::Expr(format!("unclosed '[' in '{template}'")))? + start;
        out.push_str(&rest[..start]);
        out.push_str(&expr::eval_int(&rest[start + 1..end], vars)?.to_string());
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// All variable assignments of an entry for the given domain spec.
pub fn instances(entry: &StandardSurjectionEntry, spec: &GroupSpec) -> Result<Vec<Vars>> {
    expr::expand(&entry.vars, &entry.when, &base_vars(spec))
}

fn word_images<'a>(entry: &'a StandardSurjectionEntry, vars: &Vars) -> Result<Vec<(&'a str, String)>> {
    entry.images.iter().map(|(k, w)| Ok((k.as_str(), substitute(w, vars)?))).collect()
}

/// An instantiated standard surjection ψ_std: G → Q.
#[derive(Clone, Debug)]
pub struct StandardSurjection {
    pub id: String,
    pub label: String,
    pub vars: Vars,
    pub hom: Homomorphism,
    /// Degree modulo |Q|.
    pub degree: u64,
    /// Lens data of a cyclic target, relative to its generator `c`.
    pub target_lens: Option<LensSpace>,
}

impl StandardSurjection {
    pub fn kernel(&self) -> &ElemSet {
        self.hom.kernel()
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.hom.codomain
    }
}

fn fmt_vars(vars: &Vars) -> String {
    let v: Vec<String> = vars.iter().filter(|(k, _)| !matches!(k.as_str(), "n" | "q" | "m")).map(|(k, v)| format!("{k}={v}")).collect();
    if v.is_empty() {
        String::new()
    } else {
        format!(" [{}]", v.join(", "))
    }
}

fn instantiate_surjection(g: &Arc<Group>, entry: &StandardSurjectionEntry, vars: Vars) -> Result<StandardSurjection> {
    let (target, lens) = if entry.codomain == "cyclic" {
        let order = expr::eval_int(entry.order.as_deref().unwrap_or("1"), &vars)? as u64;
        let gw = substitute(entry.generator.as_deref().unwrap_or("1"), &vars)?;
        let x = g.eval(&g.parse_word(&gw)?);
        if g.elem_order(x) as u64 != order {
            return Err(Error::Inconsistent(format!("{}: generator {gw} does not have order {order}", entry.id)));
        }
        let l = lens_of_element(g, x)?;
        let spec = if order <= 1 { GroupSpec::cyclic(1) } else { GroupSpec::lens_space(order, l.r1 as i64, l.r2 as i64)? };
        (cached_group(&spec)?, Some(l))
    } else {
        let spec: GroupSpec = substitute(&entry.codomain, &vars)?.parse()?;
        (cached_group(&spec)?, None)
    };
    let imgs = word_images(entry, &vars)?;
    let refs: Vec<(&str, &str)> = imgs.iter().map(|(k, w)| (*k, w.as_str())).collect();
    let hom = make_hom_words(g, &target, &refs)?;
    if !hom.is_surjective() {
        return Err(Error::Inconsistent(format!("{}: standard map is not surjective", entry.id)));
    }
    let degree = expr::eval_mod(&entry.degree, &vars, target.order() as u64)?;
    let label = match &lens {
        Some(l) => format!("{} -> {l}{}", g.display_name(), fmt_vars(&vars)),
        None => format!("{} -> {}{}", g.display_name(), target.display_name(), fmt_vars(&vars)),
    };
    Ok(StandardSurjection { id: entry.id.clone(), label, vars, hom, degree, target_lens: lens })
}

type Cache<T> = OnceLock<Mutex<HashMap<GroupSpec, Arc<T>>>>;

fn cached<T>(cache: &'static Cache<T>, spec: &GroupSpec, make: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
    let c = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = c.lock().unwrap().get(spec) {
        return Ok(v.clone());
    }
    let v = Arc::new(make()?);
    c.lock().unwrap().insert(spec.clone(), v.clone());
    Ok(v)
}

/// The identity followed by every registered standard surjection of a core group.
pub fn standard_surjections(g: &Arc<Group>) -> Result<Arc<Vec<StandardSurjection>>> {
    static CACHE: Cache<Vec<StandardSurjection>> = OnceLock::new();
    let spec = g.spec.clone().ok_or_else(|| Error::UnregisteredFamily("group without spec".into()))?;
    cached(&CACHE, &spec, || {
        let id_map: Vec<u32> = (0..g.order() as u32).collect();
        let mut out = vec![StandardSurjection {
            id: "identity".into(),
            label: format!("{0} -> {0}", g.display_name()),
            vars: base_vars(&spec),
            hom: Homomorphism::from_map(g.clone(), g.clone(), id_map),
            degree: 1 % g.order() as u64,
            target_lens: None,
        }];
        for entry in surjection_entries().iter().filter(|e| e.domain == spec.family.key()) {
            for vars in instances(entry, &spec)? {
                out.push(instantiate_surjection(g, entry, vars)?);
            }
        }
        Ok(out)
    })
}

/// A registered automorphism with its degree.
#[derive(Clone, Debug)]
pub struct RegisteredAutomorphism {
    pub label: String,
    pub hom: Homomorphism,
    pub degree: u64,
    pub external: bool,
}

pub fn registered_automorphisms(g: &Arc<Group>) -> Result<Vec<RegisteredAutomorphism>> {
    let spec = g.spec.clone().ok_or_else(|| Error::UnregisteredFamily("group without spec".into()))?;
    let mut out = Vec::new();
    for entry in automorphism_entries().iter().filter(|e| e.domain == spec.family.key()) {
        for vars in instances(entry, &spec)? {
            let imgs = word_images(entry, &vars)?;
            let refs: Vec<(&str, &str)> = imgs.iter().map(|(k, w)| (*k, w.as_str())).collect();
            let hom = make_hom_words(g, g, &refs)?;
            if !hom.is_injective() {
                return Err(Error::Inconsistent(format!("{}: registered automorphism is not bijective", entry.id)));
            }
            let degree = expr::eval_mod(&entry.degree, &vars, g.order() as u64)?;
            out.push(RegisteredAutomorphism {
                label: format!("{}{}", entry.id, fmt_vars(&vars)),
                hom,
                degree,
                external: entry.external.is_some(),
            });
        }
    }
    Ok(out)
}

/// One outer class reached from the registered generators.
#[derive(Clone, Debug)]
pub struct OutElement {
    pub map: Vec<u32>,
    pub degree: u64,
    /// Registered generators composed to reach this class (applied left to right).
    pub word: Vec<String>,
}

#[derive(Debug)]
pub struct OutData {
    pub modulus: u64,
    pub elements: Vec<OutElement>,
    index: HashMap<Vec<u32>, usize>,
    free: Vec<usize>,
}

/// Images of the free generators under the lexicographically least conjugate of `map`.
pub fn outer_key(g: &Group, free: &[usize], map: &[u32]) -> Vec<u32> {
    let imgs: Vec<usize> = free.iter().map(|&x| map[x] as usize).collect();
    (0..g.order())
        .map(|h| imgs.iter().map(|&y| g.conj(h, y) as u32).collect::<Vec<u32>>())
        .min()
        .unwrap_or_default()
}

impl OutData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn class_of(&self, g: &Group, map: &[u32]) -> Option<usize> {
        self.index.get(&outer_key(g, &self.free, map)).copied()
    }
}

/// Closes the registered automorphisms under composition modulo inner automorphisms,
/// checking that the tabulated degrees multiply consistently.
pub fn out_data(g: &Arc<Group>) -> Result<Arc<OutData>> {
    static CACHE: Cache<OutData> = OnceLock::new();
    let spec = g.spec.clone().ok_or_else(|| Error::UnregisteredFamily("group without spec".into()))?;
    cached(&CACHE, &spec, || close_out(g, false))
}

/// The part of Out reached from the externally known automorphism degrees only.
pub fn external_out_data(g: &Arc<Group>) -> Result<Arc<OutData>> {
    static CACHE: Cache<OutData> = OnceLock::new();
    let spec = g.spec.clone().ok_or_else(|| Error::UnregisteredFamily("group without spec".into()))?;
    cached(&CACHE, &spec, || close_out(g, true))
}

fn close_out(g: &Arc<Group>, external_only: bool) -> Result<OutData> {
    {
        let modulus = g.order() as u64;
        let free: Vec<usize> = g.free_generators().map(|(_, gen)| gen.elem).collect();
        let id: Vec<u32> = (0..g.order() as u32).collect();
        let mut data = OutData {
            modulus,
            elements: vec![OutElement { map: id.clone(), degree: 1 % modulus, word: Vec::new() }],
            index: HashMap::from([(outer_key(g, &free, &id), 0)]),
            free: free.clone(),
        };
        let mut kept: Vec<RegisteredAutomorphism> = Vec::new();
        let mismatch = |what: &str, a: u64, b: u64| {
            Error::DecompositionFailed(format!("{}: {what} has degree {a} and {b} by different routes", g.display_name()))
        };
        for gen in registered_automorphisms(g)?.into_iter().filter(|a| a.external || !external_only) {
            if let Some(i) = data.class_of(g, gen.hom.map()) {
                if data.elements[i].degree != gen.degree {
                    return Err(mismatch(&gen.label, gen.degree, data.elements[i].degree));
                }
                continue;
            }
            kept.push(gen);
            let mut i = 0;
            while i < data.elements.len() {
                for k in &kept {
                    let e = &data.elements[i];
                    let map: Vec<u32> = e.map.iter().map(|&y| k.hom.map()[y as usize]).collect();
                    let degree = (e.degree as u128 * k.degree as u128 % modulus as u128) as u64;
                    let key = outer_key(g, &free, &map);
                    match data.index.get(&key) {
                        Some(&j) if data.elements[j].degree != degree => {
                            return Err(mismatch(&format!("class {}", j), degree, data.elements[j].degree));
                        }
                        Some(_) => {}
                        None => {
                            let mut word = e.word.clone();
                            word.push(k.label.clone());
                            data.index.insert(key, data.elements.len());
                            data.elements.push(OutElement { map, degree, word });
                        }
                    }
                }
                i += 1;
            }
        }
        Ok(data)
    }
}
