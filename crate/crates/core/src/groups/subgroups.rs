use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::classify::{classify, Classification};
use super::group::{Config, Group};
use super::structure::{generated, is_normal, ElemSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRecord {
    pub elements: ElemSet,
    /// Elements generating the subgroup (one or two).
    pub generators: Vec<usize>,
    pub is_normal: bool,
    /// Index of the conjugacy class of subgroups this record belongs to.
    pub class_id: usize,
    pub class_size: usize,
    pub classification: Classification,
}

impl SubgroupRecord {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Every subgroup, each once, ordered by size then by element list.
pub fn subgroups(g: &Group) -> Result<Vec<SubgroupRecord>> {
    subgroups_with(g, &Config::default())
}

pub fn subgroups_with(g: &Group, cfg: &Config) -> Result<Vec<SubgroupRecord>> {
    if g.order() > cfg.group_cap {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration".into(),
            size: g.order() as u128,
            cap: cfg.group_cap as u128,
        });
    }
    let mut found: HashMap<ElemSet, Vec<usize>> = HashMap::new();
    let mut cyclic_gens: Vec<(usize, Vec<bool>)> = Vec::new();
    for x in 0..g.order() {
        let h = generated(g, &[x]);
        if !found.contains_key(&h) {
            let mut mask = vec![false; g.order()];
            for &y in &h {
                mask[y as usize] = true;
            }
            cyclic_gens.push((x, mask));
            found.insert(h, vec![x]);
        }
    }
    for i in 0..cyclic_gens.len() {
        for j in i + 1..cyclic_gens.len() {
            let (x, mx) = &cyclic_gens[i];
            let (y, my) = &cyclic_gens[j];
            if mx[*y] || my[*x] {
                continue;
            }
            let h = generated(g, &[*x, *y]);
            found.entry(h).or_insert_with(|| vec![*x, *y]);
        }
    }
    let mut list: Vec<(ElemSet, Vec<usize>)> = found.into_iter().collect();
    list.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let position: HashMap<&ElemSet, usize> = list.iter().enumerate().map(|(i, (h, _))| (h, i)).collect();

    let mut class_of = vec![usize::MAX; list.len()];
    let mut class_sizes = Vec::new();
    for i in 0..list.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cid = class_sizes.len();
        let mut members = HashSet::new();
        for c in 0..g.order() {
            let mut conj: Vec<u32> = list[i].0.iter().map(|&x| g.conj(c, x as usize) as u32).collect();
            conj.sort_unstable();
            let k = position[&conj];
            class_of[k] = cid;
            members.insert(k);
        }
        class_sizes.push(members.len());
    }
    let mut out = Vec::with_capacity(list.len());
    let mut cache: HashMap<usize, Classification> = HashMap::new();
    for (i, (elems, gens)) in list.iter().enumerate() {
        let cid = class_of[i];
        let classification = match cache.get(&cid) {
            Some(c) => c.clone(),
            None => {
                let c = classify_subset(g, elems, gens)?;
                cache.insert(cid, c.clone());
                c
            }
        };
        out.push(SubgroupRecord {
            elements: elems.clone(),
            generators: gens.clone(),
            is_normal: class_sizes[cid] == 1,
            class_id: cid,
            class_size: class_sizes[cid],
            classification,
        });
    }
    debug_assert!(out.iter().all(|r| r.is_normal == is_normal(g, &r.elements)));
    Ok(out)
}

pub fn classify_subset(g: &Group, elems: &[u32], gens: &[usize]) -> Result<Classification> {
    let named: Vec<(String, usize)> = gens.iter().enumerate().map(|(i, &x)| (format!("x{i}"), x)).collect();
    let h = g.subgroup_group(elems, &named);
    classify(&h)
}

/// Coset group G/N for a normal subgroup N.
pub fn quotient(g: &Group, normal: &[u32]) -> Result<Group> {
    if !normal.contains(&0) || !is_normal(g, normal) || generated(g, &normal.iter().map(|&x| x as usize).collect::<Vec<_>>()).len() != normal.len() {
        return Err(Error::NotNormal);
    }
    Ok(coset_table(g, normal))
}

/// The coset group without the normality check.
pub fn coset_table(g: &Group, normal: &[u32]) -> Group {
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in normal {
            coset[g.mul(x, h as usize)] = id;
        }
    }
    let k = reps.len();
    let mut mul = vec![0u32; k * k];
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            mul[i * k + j] = coset[g.mul(x, y)] as u32;
        }
    }
    let named = g
        .free_generators()
        .map(|(_, gen)| (gen.name.clone(), coset[gen.elem]))
        .collect();
    Group::from_table(k, mul, named)
}
