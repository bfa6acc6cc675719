//! Homomorphisms between constructed groups: validation, enumeration, automorphisms.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::presentation::relations;
use crate::groups::words::normal_forms;
use crate::groups::{Config, ElemSet, Group, Word};

#[derive(Clone)]
pub struct Homomorphism {
    pub domain: Arc<Group>,
    pub codomain: Arc<Group>,
    /// Image of each domain generator (by generator position).
    pub images: Vec<usize>,
    map: Vec<u32>,
    kernel: ElemSet,
    image: ElemSet,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {}", self.domain.display_name(), self.codomain.display_name(), self.describe())
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Homomorphism {
    /// Builds a homomorphism from a complete element map known to be multiplicative.
    pub fn from_map(domain: Arc<Group>, codomain: Arc<Group>, map: Vec<u32>) -> Homomorphism {
        let images = domain.generators().iter().map(|g| map[g.elem] as usize).collect();
        let kernel: ElemSet = (0..map.len()).filter(|&x| map[x] == 0).map(|x| x as u32).collect();
        let mut image: ElemSet = map.clone();
        image.sort_unstable();
        image.dedup();
        Homomorphism { domain, codomain, images, map, kernel, image }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn kernel(&self) -> &ElemSet {
        &self.kernel
    }

    pub fn image(&self) -> &ElemSet {
        &self.image
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image.len() == self.codomain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.image.len() == 1
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        assert_eq!(self.codomain.order(), other.domain.order());
        let map = self.map.iter().map(|&y| other.map[y as usize]).collect();
        Homomorphism::from_map(self.domain.clone(), other.codomain.clone(), map)
    }

    /// Generator images as normal-form words of the codomain.
    pub fn describe(&self) -> String {
        let nf = normal_forms(&self.codomain);
        let parts: Vec<String> = self
            .domain
            .generators()
            .iter()
            .zip(&self.images)
            .filter(|(g, _)| g.derived.is_none())
            .map(|(g, &y)| format!("{} -> {}", g.name, self.codomain.fmt_word(&nf[y])))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn image_words(&self) -> Vec<(String, String)> {
        let nf = normal_forms(&self.codomain);
        self.domain
            .generators()
            .iter()
            .zip(&self.images)
            .filter(|(g, _)| g.derived.is_none())
            .map(|(g, &y)| (g.name.clone(), self.codomain.fmt_word(&nf[y])))
            .collect()
    }
}

fn eval_under(codomain: &Group, w: &Word, images: &[usize]) -> usize {
    w.0.iter().fold(0, |acc, &(g, e)| codomain.mul(acc, codomain.pow(images[g], e)))
}

/// Extends images of the free generators along the domain's spanning tree, checking
/// every Cayley-graph edge; `None` if the assignment is not a homomorphism.
fn extend_map(dom: &Group, cod: &Group, images: &[usize]) -> Option<Vec<u32>> {
    let n = dom.order();
    let free: Vec<usize> = dom.free_generators().map(|(i, _)| i).collect();
    let mut map = vec![0u32; n];
    for &y in dom.tree_order().iter().skip(1) {
        let (p, j) = dom.tree_edge(y as usize);
        map[y as usize] = cod.mul(map[p] as usize, images[free[j]]) as u32;
    }
    for (j, gen) in dom.free_generators() {
        for x in 0..n {
            if map[dom.mul(x, gen.elem)] as usize != cod.mul(map[x] as usize, images[j]) {
                return None;
            }
        }
    }
    Some(map)
}

struct Relations {
    words: Vec<(String, Word, Word)>,
    /// Position in the free-generator order after which the relation can be checked.
    ready_at: Vec<usize>,
}

fn domain_relations(dom: &Group, free: &[usize]) -> Result<Relations> {
    let Some(spec) = &dom.spec else {
        return Ok(Relations { words: Vec::new(), ready_at: Vec::new() });
    };
    let mut words = Vec::new();
    let mut ready_at = Vec::new();
    for (l, r) in relations(spec) {
        let (lw, rw) = (dom.parse_word(&l)?, dom.parse_word(&r)?);
        let mut deps = HashSet::new();
        for w in [&lw, &rw] {
            for &(g, _) in &w.0 {
                match &dom.generators()[g].derived {
                    Some(d) => deps.extend(d.0.iter().map(|x| x.0)),
                    None => {
                        deps.insert(g);
                    }
                }
            }
        }
        let at = deps.iter().map(|g| free.iter().position(|f| f == g).unwrap()).max().unwrap_or(0);
        words.push((format!("{l} = {r}"), lw, rw));
        ready_at.push(at);
    }
    Ok(Relations { words, ready_at })
}

fn fill_derived(dom: &Group, cod: &Group, images: &mut [usize]) {
    for (i, g) in dom.generators().iter().enumerate() {
        if let Some(d) = &g.derived {
            images[i] = eval_under(cod, d, images);
        }
    }
}

/// Validates generator images (by generator name) and builds the homomorphism.
pub fn make_hom(g1: &Arc<Group>, g2: &Arc<Group>, images: &[(&str, usize)]) -> Result<Homomorphism> {
    let gens = g1.generators();
    let mut imgs = vec![usize::MAX; gens.len()];
    for &(name, y) in images {
        let p = g1
            .gen_position(name)
            .ok_or_else(|| Error::Parse(format!("{} has no generator '{name}'", g1.display_name())))?;
        if y >= g2.order() {
            return Err(Error::Parse(format!("element index {y} out of range")));
        }
        imgs[p] = y;
    }
    for (i, g) in gens.iter().enumerate() {
        if g.derived.is_none() && imgs[i] == usize::MAX {
            return Err(Error::Parse(format!("no image given for generator '{}'", g.name)));
        }
    }
    let given = imgs.clone();
    fill_derived(g1, g2, &mut imgs);
    for (i, g) in gens.iter().enumerate() {
        if g.derived.is_some() && given[i] != usize::MAX && given[i] != imgs[i] {
            return Err(Error::RelationViolated(format!("{} must map to the image of {}", g.name, g1.fmt_word(g.derived.as_ref().unwrap()))));
        }
    }
    let free: Vec<usize> = g1.free_generators().map(|(i, _)| i).collect();
    let rels = domain_relations(g1, &free)?;
    for (name, l, r) in &rels.words {
        if eval_under(g2, l, &imgs) != eval_under(g2, r, &imgs) {
            return Err(Error::RelationViolated(name.clone()));
        }
    }
    let map = extend_map(g1, g2, &imgs).ok_or_else(|| Error::RelationViolated("presentation incomplete: Cayley graph inconsistency".into()))?;
    Ok(Homomorphism::from_map(g1.clone(), g2.clone(), map))
}

/// Same as [`make_hom`] with images written as words in the codomain generators.
pub fn make_hom_words(g1: &Arc<Group>, g2: &Arc<Group>, images: &[(&str, &str)]) -> Result<Homomorphism> {
    let mut v = Vec::new();
    for &(name, w) in images {
        v.push((name, g2.eval(&g2.parse_word(w)?)));
    }
    make_hom(g1, g2, &v)
}

/// Parses a literal such as `{b: "b", a: "b a"}`.
pub fn parse_hom_literal(g1: &Arc<Group>, g2: &Arc<Group>, text: &str) -> Result<Homomorphism> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut pairs = Vec::new();
    for item in body.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item.split_once(':').ok_or_else(|| Error::Parse(format!("expected 'gen: word' in '{item}'")))?;
        pairs.push((k.trim().trim_matches('"').to_string(), v.trim().trim_matches('"').to_string()));
    }
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    make_hom_words(g1, g2, &refs)
}

enum OrderRule {
    Divides,
    Equal,
}

/// Backtracking over images of the free generators; `visit` returns false to stop.
fn search(
    g1: &Group,
    g2: &Group,
    rule: OrderRule,
    cfg: &Config,
    mut visit: impl FnMut(Vec<u32>, Vec<usize>) -> bool,
) -> Result<()> {
    let free: Vec<usize> = g1.free_generators().map(|(i, _)| i).collect();
    let cands: Vec<Vec<usize>> = free
        .iter()
        .map(|&p| {
            let o = g1.elem_order(g1.generators()[p].elem);
            (0..g2.order())
                .filter(|&y| match rule {
                    OrderRule::Divides => o % g2.elem_order(y) == 0,
                    OrderRule::Equal => o == g2.elem_order(y),
                })
                .collect()
        })
        .collect();
    let total: u128 = cands.iter().map(|c| c.len() as u128).product();
    if total > cfg.search_cap {
        return Err(Error::CapExceeded { what: "homomorphism search".into(), size: total, cap: cfg.search_cap });
    }
    let rels = domain_relations(g1, &free)?;
    let mut imgs = vec![0usize; g1.generators().len()];
    let mut choice = vec![0usize; free.len()];
    let mut level = 0usize;
    if free.is_empty() {
        if let Some(map) = extend_map(g1, g2, &imgs) {
            visit(map, imgs);
        }
        return Ok(());
    }
    loop {
        if choice[level] >= cands[level].len() {
            if level == 0 {
                break;
            }
            choice[level] = 0;
            level -= 1;
            choice[level] += 1;
            continue;
        }
        imgs[free[level]] = cands[level][choice[level]];
        let mut trial = imgs.clone();
        fill_derived(g1, g2, &mut trial);
        let ok = rels
            .words
            .iter()
            .zip(&rels.ready_at)
            .filter(|(_, &at)| at == level)
            .all(|((_, l, r), _)| eval_under(g2, l, &trial) == eval_under(g2, r, &trial));
        if !ok {
            choice[level] += 1;
            continue;
        }
        if level + 1 < free.len() {
            level += 1;
            continue;
        }
        if let Some(map) = extend_map(g1, g2, &trial) {
            if !visit(map, trial) {
                return Ok(());
            }
        }
        choice[level] += 1;
    }
    Ok(())
}

/// All homomorphisms G1 → G2, in lexicographic order of generator images.
pub fn enumerate_homs(g1: &Arc<Group>, g2: &Arc<Group>) -> Result<Vec<Homomorphism>> {
    enumerate_homs_with(g1, g2, &Config::default())
}

pub fn enumerate_homs_with(g1: &Arc<Group>, g2: &Arc<Group>, cfg: &Config) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    search(g1, g2, OrderRule::Divides, cfg, |map, _| {
        if seen.insert(map.clone()) {
            out.push(Homomorphism::from_map(g1.clone(), g2.clone(), map));
        }
        true
    })?;
    Ok(out)
}

/// An isomorphism a → b (as an element map), if one exists.
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<Vec<u32>> {
    if a.order() != b.order() {
        return None;
    }
    let mut found = None;
    let cfg = Config { search_cap: u128::MAX, ..Config::default() };
    search(a, b, OrderRule::Equal, &cfg, |map, _| {
        let mut seen = vec![false; b.order()];
        for &y in &map {
            seen[y as usize] = true;
        }
        if seen.iter().all(|&s| s) {
            found = Some(map);
            false
        } else {
            true
        }
    })
    .ok()?;
    found
}

/// Every isomorphism a → b.
pub fn all_isomorphisms(a: &Arc<Group>, b: &Arc<Group>) -> Result<Vec<Homomorphism>> {
    if a.order() != b.order() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let cfg = Config { search_cap: u128::MAX, ..Config::default() };
    search(a, b, OrderRule::Equal, &cfg, |map, _| {
        let mut seen = vec![false; b.order()];
        for &y in &map {
            seen[y as usize] = true;
        }
        if seen.iter().all(|&s| s) {
            out.push(Homomorphism::from_map(a.clone(), b.clone(), map));
        }
        true
    })?;
    Ok(out)
}

pub fn automorphism_group(g: &Arc<Group>) -> Result<Vec<Homomorphism>> {
    all_isomorphisms(g, g)
}

pub fn inner_maps(g: &Group) -> Vec<Vec<u32>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in 0..g.order() {
        let map: Vec<u32> = (0..g.order()).map(|x| g.conj(h, x) as u32).collect();
        if seen.insert(map.clone()) {
            out.push(map);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OuterClass {
    /// Index into the automorphism list.
    pub representative: usize,
    pub members: Vec<usize>,
    /// Filled in by the degree engine.
    pub deg_bar: Option<u64>,
}

/// Partition of `auts` (all automorphisms of their common domain) into outer classes.
pub fn outer_classes(auts: &[Homomorphism]) -> Vec<OuterClass> {
    let Some(first) = auts.first() else { return Vec::new() };
    let g = &first.domain;
    let inner = inner_maps(g);
    let index: HashMap<&[u32], usize> = auts.iter().enumerate().map(|(i, a)| (a.map(), i)).collect();
    let mut class = vec![usize::MAX; auts.len()];
    let mut out = Vec::new();
    for i in 0..auts.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let cid = out.len();
        let mut members = Vec::new();
        for c in &inner {
            let m: Vec<u32> = auts[i].map().iter().map(|&y| c[y as usize]).collect();
            let k = index[m.as_slice()];
            if class[k] == usize::MAX {
                class[k] = cid;
                members.push(k);
            }
        }
        members.sort_unstable();
        out.push(OuterClass { representative: i, members, deg_bar: None });
    }
    out
}

/// Out(G) as an abstract group, with the class of each automorphism.
pub fn out_group(auts: &[Homomorphism], classes: &[OuterClass]) -> (Group, Vec<usize>) {
    let mut class_of = vec![0; auts.len()];
    for (c, oc) in classes.iter().enumerate() {
        for &m in &oc.members {
            class_of[m] = c;
        }
    }
    let index: HashMap<&[u32], usize> = auts.iter().enumerate().map(|(i, a)| (a.map(), i)).collect();
    let k = classes.len();
    // identity class first
    let id_aut = auts.iter().position(|a| a.map().iter().enumerate().all(|(x, &y)| x == y as usize)).unwrap();
    let id_class = class_of[id_aut];
    let mut perm: Vec<usize> = (0..k).collect();
    perm.swap(0, id_class);
    let mut pos = vec![0; k];
    for (i, &c) in perm.iter().enumerate() {
        pos[c] = i;
    }
    let mut mul = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            let a = &auts[classes[perm[i]].representative];
            let b = &auts[classes[perm[j]].representative];
            // (a·b)(x) = a(b(x))
            let m: Vec<u32> = b.map().iter().map(|&y| a.map()[y as usize]).collect();
            mul[i * k + j] = pos[class_of[index[m.as_slice()]]] as u32;
        }
    }
    let named = (0..k).map(|i| (format!("o{i}"), i)).collect();
    (Group::from_table(k, mul, named), class_of.iter().map(|&c| pos[c]).collect())
}

/// True iff ψ2 = conj_g ∘ ψ1 for some g in the codomain.
pub fn conjugate_homs(p1: &Homomorphism, p2: &Homomorphism) -> bool {
    if p1.image.len() != p2.image.len() || p1.kernel != p2.kernel {
        return false;
    }
    let c = &p1.codomain;
    (0..c.order()).any(|g| p1.images.iter().zip(&p2.images).all(|(&x, &y)| c.conj(g, x) == y))
}
