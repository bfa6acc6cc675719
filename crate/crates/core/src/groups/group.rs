use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::so4::{self, Mat4};
use super::spec::{Family, GroupSpec};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 2000;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Largest group order that may be built.
    pub group_cap: usize,
    /// Largest number of candidate generator tuples examined by hom enumeration.
    pub search_cap: u128,
}

impl Default for Config {
    fn default() -> Self {
        Config { group_cap: DEFAULT_CAP, search_cap: 100_000_000 }
    }
}

impl Config {
    pub fn from_env() -> Self {
        let mut c = Config::default();
        if let Some(cap) = std::env::var("SPHMAP_CAP").ok().and_then(|s| s.parse().ok()) {
            c.group_cap = cap;
        }
        c
    }
}

/// A group word: sequence of (generator position, exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word(pub Vec<(usize, i64)>);

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub elem: usize,
    /// For generators defined in terms of the others (b = w a w⁻¹ in T').
    pub derived: Option<Word>,
}

/// A concrete finite group with its Cayley table.
#[derive(Clone)]
pub struct Group {
    pub spec: Option<GroupSpec>,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    gens: Vec<Generator>,
    /// Spanning tree over the free generators: element = parent · generator.
    tree: Vec<(u32, u32)>,
    /// Elements in breadth-first order of the spanning tree.
    bfs: Vec<u32>,
    matrices: Option<Vec<Mat4>>,
    /// Derived data that depends only on the multiplication table.
    pub(crate) memo: Memo,
}

#[derive(Clone, Default)]
pub(crate) struct Memo {
    pub overorder: OnceLock<Vec<usize>>,
    pub cyclic_reps: OnceLock<Vec<usize>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("spec", &self.spec).field("order", &self.order).finish()
    }
}

fn fingerprint(m: &Mat4) -> [i64; 16] {
    let mut k = [0i64; 16];
    for (i, x) in m.iter().enumerate() {
        let v = (x * 1e7).round() as i64;
        k[i] = if v == 0 { 0 } else { v };
    }
    k
}

impl Group {
    pub fn build(spec: &GroupSpec) -> Result<Group> {
        Group::build_with(spec, &Config::default())
    }

    pub fn build_with(spec: &GroupSpec, cfg: &Config) -> Result<Group> {
        spec.validate()?;
        let expected = spec.order() as usize;
        if expected > cfg.group_cap {
            return Err(Error::CapExceeded {
                what: format!("group {spec}"),
                size: expected as u128,
                cap: cfg.group_cap as u128,
            });
        }
        let mut named: Vec<(String, Mat4)> =
            so4::core_generators(spec).into_iter().map(|(n, m)| (n.to_string(), m)).collect();
        if spec.family != Family::Cyclic && spec.m > 1 {
            named.push(("v".into(), so4::cofactor(spec.m)));
        }
        let mut g = Group::closure(&named, cfg.group_cap)?;
        if g.order != expected {
            return Err(Error::ClosureMismatch { expected, got: g.order });
        }
        if spec.family == Family::GeneralizedTetrahedral {
            // b = w a w⁻¹, listed first as in the normal form b^s a^e w^t
            let (a, w) = (0, 1);
            let word = Word(vec![(w + 1, 1), (a + 1, 1), (w + 1, -1)]);
            g.gens.insert(0, Generator { name: "b".into(), elem: 0, derived: Some(word.clone()) });
            g.gens[0].elem = g.eval(&word);
        }
        g.spec = Some(spec.clone());
        Ok(g)
    }

    /// Closure of generator matrices under multiplication.
    pub fn closure(named: &[(String, Mat4)], cap: usize) -> Result<Group> {
        let mut index: HashMap<[i64; 16], usize> = HashMap::new();
        let mut mats: Vec<Mat4> = Vec::new();
        let mut insert = |m: Mat4, mats: &mut Vec<Mat4>| -> (usize, bool) {
            let k = fingerprint(&m);
            if let Some(&i) = index.get(&k) {
                return (i, false);
            }
            index.insert(k, mats.len());
            mats.push(m);
            (mats.len() - 1, true)
        };
        insert(Mat4::identity(), &mut mats);
        let mut gens = Vec::new();
        for (name, m) in named {
            let (i, _) = insert(*m, &mut mats);
            gens.push(Generator { name: name.clone(), elem: i, derived: None });
        }
        let k = gens.len();
        let mut right: Vec<u32> = Vec::new();
        let mut tree: Vec<(u32, u32)> = vec![(0, u32::MAX); mats.len()];
        for (j, gen) in gens.iter().enumerate() {
            if gen.elem != 0 && tree[gen.elem].1 == u32::MAX {
                tree[gen.elem] = (0, j as u32);
            }
        }
        let mut x = 0;
        while x < mats.len() {
            for (j, (_, gm)) in named.iter().enumerate() {
                let y = mats[x] * gm;
                let (iy, fresh) = insert(y, &mut mats);
                if fresh {
                    if mats.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "group closure".into(),
                            size: mats.len() as u128,
                            cap: cap as u128,
                        });
                    }
                    tree.push((x as u32, j as u32));
                }
                right.push(iy as u32);
            }
            x += 1;
        }
        let order = mats.len();
        let mut g = Group::from_right_table(order, &right, k, gens, tree);
        g.matrices = Some(mats);
        Ok(g)
    }

    /// Builds full tables from the right-multiplication-by-generator table.
    fn from_right_table(order: usize, right: &[u32], k: usize, gens: Vec<Generator>, tree: Vec<(u32, u32)>) -> Group {
        // BFS order over the tree so parents are processed before children.
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); order];
        for (x, &(p, _)) in tree.iter().enumerate().skip(1) {
            children[p as usize].push(x);
        }
        let mut bfs = Vec::with_capacity(order);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            bfs.push(x);
            queue.extend(children[x].iter().copied());
        }
        let mut mul = vec![0u32; order * order];
        for i in 0..order {
            let row = i * order;
            mul[row] = i as u32;
            for &y in bfs.iter().skip(1) {
                let (p, j) = tree[y];
                let ip = mul[row + p as usize] as usize;
                mul[row + y] = right[ip * k + j as usize];
            }
        }
        Group::from_mul(order, mul, gens, tree)
    }

    fn from_mul(order: usize, mul: Vec<u32>, gens: Vec<Generator>, tree: Vec<(u32, u32)>) -> Group {
        let mut inv = vec![0u32; order];
        for i in 0..order {
            for j in 0..order {
                if mul[i * order + j] == 0 {
                    inv[i] = j as u32;
                    break;
                }
            }
        }
        let mut elem_order = vec![1u32; order];
        for i in 1..order {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = mul[x * order + i] as usize;
                k += 1;
            }
            elem_order[i] = k;
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); order];
        for x in 1..order {
            children[tree[x].0 as usize].push(x);
        }
        let mut bfs = Vec::with_capacity(order);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            bfs.push(x as u32);
            queue.extend(children[x].iter().copied());
        }
        Group { spec: None, order, mul, inv, elem_order, gens, tree, bfs, matrices: None, memo: Memo::default() }
    }

    /// Abstract group from a multiplication table (index 0 must be the identity) and
    /// named generating elements.
    pub fn from_table(order: usize, mul: Vec<u32>, named: Vec<(String, usize)>) -> Group {
        let mut tree = vec![(0u32, u32::MAX); order];
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (j, (_, g)) in named.iter().enumerate() {
                let y = mul[x * order + g] as usize;
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = (x as u32, j as u32);
                    queue.push_back(y);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "named elements must generate the group");
        let gens = named.into_iter().map(|(name, elem)| Generator { name, elem, derived: None }).collect();
        Group::from_mul(order, mul, gens, tree)
    }

    /// The subgroup on `elems` (sorted, containing 0) as a group in its own right,
    /// inheriting matrices; `named` are generating elements given as parent indices.
    pub fn subgroup_group(&self, elems: &[u32], named: &[(String, usize)]) -> Group {
        let pos: HashMap<u32, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = elems.len();
        let mut mul = vec![0u32; k * k];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                mul[i * k + j] = pos[&(self.mul(x as usize, y as usize) as u32)] as u32;
            }
        }
        let named_local = named.iter().map(|(n, e)| (n.clone(), pos[&(*e as u32)])).collect();
        let mut g = Group::from_table(k, mul, named_local);
        if let Some(ms) = &self.matrices {
            g.matrices = Some(elems.iter().map(|&e| ms[e as usize]).collect());
        }
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(x) } else { x };
        let k = (e.unsigned_abs() % self.elem_order[x] as u64) as usize;
        (0..k).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, x: usize) -> usize {
        self.elem_order[x] as usize
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn free_generators(&self) -> impl Iterator<Item = (usize, &Generator)> {
        self.gens.iter().enumerate().filter(|(_, g)| g.derived.is_none())
    }

    pub fn gen_position(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn gen(&self, name: &str) -> Option<usize> {
        self.gens.iter().find(|g| g.name == name).map(|g| g.elem)
    }

    pub fn matrices(&self) -> Option<&[Mat4]> {
        self.matrices.as_deref()
    }

    pub fn matrix(&self, x: usize) -> Option<&Mat4> {
        self.matrices.as_ref().map(|m| &m[x])
    }

    pub fn eval(&self, w: &Word) -> usize {
        w.0.iter().fold(0, |acc, &(g, e)| self.mul(acc, self.pow(self.gens[g].elem, e)))
    }

    /// Elements ordered so that tree parents precede their children.
    pub fn tree_order(&self) -> &[u32] {
        &self.bfs
    }

    /// (parent, index among the free generators) of `x` in the spanning tree.
    pub fn tree_edge(&self, x: usize) -> (usize, usize) {
        let (p, j) = self.tree[x];
        (p as usize, j as usize)
    }

    pub fn display_name(&self) -> String {
        match &self.spec {
            Some(s) => s.to_string(),
            None => format!("<group of order {}>", self.order),
        }
    }

    /// Exhaustive check of the group axioms (associativity is O(n³)).
    pub fn check_axioms(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| self.mul(0, x) == x && self.mul(x, 0) == x && self.mul(x, self.inv(x)) == 0)
            && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))))
    }
}

pub fn fmt_word(w: &Word, names: &[String]) -> String {
    if w.0.is_empty() {
        return "1".into();
    }
    w.0.iter()
        .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^{}", names[g], e) })
        .collect::<Vec<_>>()
        .join(" ")
}

impl Group {
    pub fn gen_names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        fmt_word(w, &self.gen_names())
    }

    /// Parses words such as `b^2 a`, `bab^{-1}a`, `(ab)^2`, `1`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
        let mut pos = 0;
        let w = self.parse_seq(&chars, &mut pos, text)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("unbalanced word '{text}'")));
        }
        Ok(w)
    }

    fn parse_seq(&self, chars: &[char], pos: &mut usize, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        while *pos < chars.len() && chars[*pos] != ')' {
            let c = chars[*pos];
            let mut item: Vec<(usize, i64)> = if c == '(' {
                *pos += 1;
                let inner = self.parse_seq(chars, pos, text)?;
                if chars.get(*pos) != Some(&')') {
                    return Err(Error::Parse(format!("missing ')' in '{text}'")));
                }
                *pos += 1;
                inner.0
            } else if c == '1' && !chars.get(*pos + 1).is_some_and(|d| d.is_ascii_digit()) {
                *pos += 1;
                Vec::new()
            } else {
                let name = c.to_string();
                let g = self
                    .gen_position(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown generator '{c}' in '{text}'")))?;
                *pos += 1;
                vec![(g, 1)]
            };
            if chars.get(*pos) == Some(&'^') {
                *pos += 1;
                let braced = chars.get(*pos) == Some(&'{');
                if braced {
                    *pos += 1;
                }
                let start = *pos;
                while *pos < chars.len() && (chars[*pos] == '-' || chars[*pos].is_ascii_digit()) {
                    *pos += 1;
                }
                let e: i64 = chars[start..*pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{text}'")))?;
                if braced {
                    if chars.get(*pos) != Some(&'}') {
                        return Err(Error::Parse(format!("missing '}}' in '{text}'")));
                    }
                    *pos += 1;
                }
                item = power_word(&item, e);
            }
            out.extend(item);
        }
        Ok(Word(out))
    }
}

fn power_word(w: &[(usize, i64)], e: i64) -> Vec<(usize, i64)> {
    if w.len() == 1 {
        return vec![(w[0].0, w[0].1 * e)];
    }
    let base: Vec<(usize, i64)> = if e < 0 { w.iter().rev().map(|&(g, x)| (g, -x)).collect() } else { w.to_vec() };
    (0..e.unsigned_abs()).flat_map(|_| base.iter().copied()).collect()
}
