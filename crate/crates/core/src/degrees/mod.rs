//! Degrees of maps between spherical space forms, modulo the target group order.
//!
//! The degree of a map M → N is determined modulo |π₁N| by the induced homomorphism.
//! Noncyclic domains are handled through a registry of standard surjections: every ψ
//! factors as θ ∘ ψ_std ∘ α with α an automorphism and θ injective, and the degree is
//! the product of the three factors times the covering index of the image.

pub mod congruence;
pub mod equivariant;
pub mod registry;

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{mod_inv, reduce, Coset};
use crate::error::{Error, Result};
use crate::groups::{cached_group, Config, Family, Group, GroupSpec};
use crate::homs::{enumerate_homs_with, make_hom, Homomorphism};
use crate::lens::{lens_degree_set, lens_hom_degree, lens_of_element, DegreeSet};

pub use congruence::{congruences_for, maximal_cyclic_reps, CongruenceSystem, Constraint};
pub use registry::{out_data, standard_surjections, OutData, StandardSurjection, StandardSurjectionEntry};

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m.max(1) as u128) as u64
}

fn family(g: &Group) -> Option<Family> {
    g.spec.as_ref().map(|s| s.family)
}

fn is_product(g: &Group) -> bool {
    g.spec.as_ref().is_some_and(|s| s.family != Family::Cyclic && s.m > 1)
}

/// Degree of the outer class of an automorphism.
pub fn deg_aut(eta: &Homomorphism) -> Result<u64> {
    let g = &eta.domain;
    if !eta.is_injective() || eta.codomain.order() != g.order() {
        return Err(Error::ConstraintViolated("deg_aut needs an automorphism".into()));
    }
    if family(g) == Some(Family::Cyclic) {
        let c = g.generators()[0].elem;
        let l = lens_of_element(g, c)?;
        return lens_hom_degree(&l, &l, discrete_log(g, c, eta.apply(c)));
    }
    let out = out_data(g)?;
    let i = out
        .class_of(g, eta.map())
        .ok_or_else(|| Error::DecompositionFailed(format!("{eta:?} is not reached by the registered outer automorphisms")))?;
    Ok(out.elements[i].degree)
}

fn discrete_log(g: &Group, c: usize, y: usize) -> i64 {
    let mut p = 0;
    for l in 0..g.elem_order(c) {
        if p == y {
            return l as i64;
        }
        p = g.mul(p, c);
    }
    panic!("element is not a power of the generator")
}

/// ψ = θ ∘ ψ_std ∘ α.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// Outer class index of α in [`OutData`].
    pub alpha: usize,
    pub alpha_degree: u64,
    pub alpha_word: Vec<String>,
    pub standard: StandardSurjection,
    /// Injective θ from the standard quotient into the codomain of ψ.
    pub theta: Homomorphism,
}

/// Factors a homomorphism out of a registered core group through a standard surjection.
pub fn find_standard_factorization(psi: &Homomorphism) -> Result<Factorization> {
    let g1 = &psi.domain;
    let out = out_data(g1)?;
    let stds = standard_surjections(g1)?;
    let kernel = psi.kernel();
    for std in stds.iter().filter(|s| s.kernel().len() == kernel.len()) {
        for (i, alpha) in out.elements.iter().enumerate() {
            let mut moved: Vec<u32> = kernel.iter().map(|&x| alpha.map[x as usize]).collect();
            moved.sort_unstable();
            if &moved != std.kernel() {
                continue;
            }
            let q = std.target();
            let mut theta = vec![u32::MAX; q.order()];
            for x in 0..g1.order() {
                theta[std.hom.apply(alpha.map[x] as usize)] = psi.map()[x];
            }
            debug_assert!(theta.iter().all(|&t| t != u32::MAX));
            return Ok(Factorization {
                alpha: i,
                alpha_degree: alpha.degree,
                alpha_word: alpha.word.clone(),
                standard: std.clone(),
                theta: Homomorphism::from_map(q.clone(), psi.codomain.clone(), theta),
            });
        }
    }
    Err(Error::NoFactorization(format!(
        "{psi:?}: kernel of order {} matches no standard surjection",
        kernel.len()
    )))
}

/// Degree mod |Q| of the map S³/Q → S³/θ(Q) inducing the isomorphism θ onto its image.
fn embedding_degree(theta: &Homomorphism, std: &StandardSurjection) -> Result<(u64, Option<String>)> {
    let q = &theta.domain;
    let g2 = &theta.codomain;
    if let Some(l) = &std.target_lens {
        let c = q.gen("c").ok_or_else(|| Error::Inconsistent("cyclic quotient without generator".into()))?;
        let target = lens_of_element(g2, theta.apply(c))?;
        return Ok((lens_hom_degree(l, &target, 1)?, None));
    }
    let all: Vec<u32> = (0..q.order() as u32).collect();
    let out = out_data(q)?;
    for beta in &out.elements {
        if let Some(s) = equivariant::intertwiner_sign(q, g2, &all, |x| theta.apply(beta.map[x] as usize)) {
            let inv = mod_inv(beta.degree as i64, q.order() as u64)
                .ok_or_else(|| Error::Inconsistent(format!("automorphism degree {} is not a unit", beta.degree)))?;
            let twist = (!beta.word.is_empty()).then(|| beta.word.join(" . "));
            return Ok((reduce(s as i128 * inv as i128, q.order() as u64), twist));
        }
    }
    Err(Error::EmbeddingUnresolved(format!("{theta:?}: no outer twist is realized by an isometry")))
}

/// How a degree was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct Explanation {
    pub hom: String,
    pub route: String,
    pub kernel_order: usize,
    pub image_order: usize,
    pub covering_index: u64,
    pub standard: Option<String>,
    /// Registered automorphisms composing α (η'').
    pub pre: Vec<String>,
    pub pre_degree: Option<u64>,
    /// Degree of θ on the standard quotient (η'), and the outer twist used to realize it.
    pub post_degree: Option<u64>,
    pub post_twist: Option<String>,
    pub standard_degree: Option<u64>,
    pub degree: u64,
    pub modulus: u64,
    pub congruences: Option<Coset>,
}

impl Explanation {
    fn new(psi: &Homomorphism, route: &str) -> Self {
        Explanation {
            hom: String::new(),
            route: route.into(),
            kernel_order: psi.kernel().len(),
            image_order: psi.image().len(),
            covering_index: (psi.codomain.order() / psi.image().len()) as u64,
            standard: None,
            pre: Vec::new(),
            pre_degree: None,
            post_degree: None,
            post_twist: None,
            standard_degree: None,
            degree: 0,
            modulus: psi.codomain.order() as u64,
            congruences: None,
        }
    }
}

fn lens_route(psi: &Homomorphism, c: usize) -> Result<u64> {
    let (g1, g2) = (&psi.domain, &psi.codomain);
    let y = psi.apply(c);
    let l1 = lens_of_element(g1, c)?;
    let l2 = lens_of_element(g2, y)?;
    let index = (g2.order() / g2.elem_order(y)) as u64;
    Ok(mulmod(index, lens_hom_degree(&l1, &l2, 1)?, g2.order() as u64))
}

/// Inclusion of the core factor G1' into Z_m × G1'.
pub fn core_inclusion(g: &Arc<Group>) -> Result<Homomorphism> {
    let spec = g.spec.clone().ok_or_else(|| Error::UnregisteredFamily("group without spec".into()))?;
    let core = cached_group(&spec.core())?;
    let imgs: Vec<(&str, usize)> = core
        .free_generators()
        .map(|(_, gen)| (gen.name.as_str(), g.gen(&gen.name).expect("core generator present in product")))
        .collect();
    make_hom(&core, g, &imgs)
}

fn product_route(psi: &Homomorphism, ex: &mut Explanation) -> Result<u64> {
    let (g1, g2) = (&psi.domain, &psi.codomain);
    let n = g2.order() as u64;
    let m = g1.spec.as_ref().unwrap().m;
    let core_order = g1.order() as u64 / m;
    let incl = core_inclusion(g1)?;
    let (d_core, inner) = evaluate(&incl.then(psi))?;
    let v = g1.gen("v").expect("product has cofactor generator");
    let d_v = lens_route(psi, v)?;
    let a = Coset::solve(m as i128, d_core as i128, n);
    let b = Coset::solve(core_order as i128, d_v as i128, n);
    let x = a
        .zip(b)
        .and_then(|(a, b)| a.intersect(&b))
        .ok_or_else(|| Error::Inconsistent(format!("product split: {m}·x ≡ {d_core}, {core_order}·x ≡ {d_v} (mod {n})")))?;
    ex.standard = inner.standard;
    ex.pre = inner.pre;
    ex.pre_degree = inner.pre_degree;
    ex.post_degree = inner.post_degree;
    ex.post_twist = inner.post_twist;
    ex.standard_degree = inner.standard_degree;
    Ok(x.base)
}

fn table_route(psi: &Homomorphism, ex: &mut Explanation) -> Result<u64> {
    let g2 = &psi.codomain;
    let n = g2.order() as u64;
    let f = find_standard_factorization(psi)?;
    let q = f.theta.domain.order() as u64;
    let (d_theta, twist) = embedding_degree(&f.theta, &f.standard)?;
    let inner = mulmod(mulmod(d_theta, f.standard.degree, q), f.alpha_degree % q, q);
    ex.standard = Some(f.standard.label.clone());
    ex.pre = f.alpha_word;
    ex.pre_degree = Some(f.alpha_degree);
    ex.post_degree = Some(d_theta);
    ex.post_twist = twist;
    ex.standard_degree = Some(f.standard.degree);
    Ok(mulmod(n / q, inner, n))
}

/// Degree mod |G2| of any map inducing ψ, with the factorization used.
pub fn deg_hom_explained(psi: &Homomorphism) -> Result<(u64, Explanation)> {
    let (d, mut ex) = evaluate(psi)?;
    ex.hom = psi.describe();
    Ok((d, ex))
}

fn evaluate(psi: &Homomorphism) -> Result<(u64, Explanation)> {
    let (g1, g2) = (&psi.domain, &psi.codomain);
    let n = g2.order() as u64;
    let (route, value, mut ex);
    if n == 1 || psi.is_trivial() {
        route = "trivial";
        ex = Explanation::new(psi, route);
        value = 0;
    } else if family(g1) == Some(Family::Cyclic) {
        route = "lens";
        ex = Explanation::new(psi, route);
        value = lens_route(psi, g1.generators()[0].elem)?;
    } else if is_product(g1) {
        route = "product";
        ex = Explanation::new(psi, route);
        value = product_route(psi, &mut ex)?;
    } else {
        route = "table";
        ex = Explanation::new(psi, route);
        value = table_route(psi, &mut ex)?;
    }
    let (_, coset) = congruence::solve_congruences(psi)?;
    if !coset.contains(value) {
        return Err(Error::Inconsistent(format!(
            "{psi:?}: {route} degree {value} mod {n} outside congruence solutions {:?}",
            coset.residues()
        )));
    }
    ex.degree = value;
    ex.congruences = Some(coset);
    Ok((value, ex))
}

pub fn deg_hom(psi: &Homomorphism) -> Result<u64> {
    evaluate(psi).map(|(d, _)| d)
}

/// Degree mod |codomain| of a surjection from a registered group.
pub fn deg_surjection(psi: &Homomorphism) -> Result<u64> {
    if !psi.is_surjective() {
        return Err(Error::ConstraintViolated("deg_surjection needs a surjective homomorphism".into()));
    }
    deg_hom(psi)
}

/// Representatives of homomorphisms G1 → G2 up to conjugation in G2.
pub fn homs_up_to_conjugacy(g1: &Arc<Group>, g2: &Arc<Group>) -> Result<Vec<Homomorphism>> {
    let homs = enumerate_homs_with(g1, g2, &Config::from_env())?;
    let free: Vec<usize> = g1.free_generators().map(|(_, gen)| gen.elem).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in homs {
        let key = (0..g2.order())
            .map(|g| free.iter().map(|&x| g2.conj(g, h.apply(x))).collect::<Vec<_>>())
            .min()
            .unwrap_or_default();
        if seen.insert(key) {
            out.push(h);
        }
    }
    Ok(out)
}

/// D(M, N): all degrees of maps S³/G1 → S³/G2, as residues mod |G2|.
pub fn mapping_degree_set(m: &GroupSpec, n: &GroupSpec) -> Result<DegreeSet> {
    let g1 = cached_group(m)?;
    let g2 = cached_group(n)?;
    degree_set_of_groups(&g1, &g2)
}

pub fn degree_set_of_groups(g1: &Arc<Group>, g2: &Arc<Group>) -> Result<DegreeSet> {
    let n = g2.order() as u64;
    if n == 1 {
        return Ok(DegreeSet::new(1, [0]));
    }
    if family(g1) == Some(Family::Cyclic) {
        return cyclic_degree_set(g1, g2);
    }
    let mut residues = Vec::new();
    for psi in homs_up_to_conjugacy(g1, g2)? {
        residues.push(deg_hom(&psi)?);
    }
    Ok(DegreeSet::new(n, residues))
}

/// Every map out of a lens space lifts to a lens space covering the target.
pub fn cyclic_degree_set(g1: &Arc<Group>, g2: &Arc<Group>) -> Result<DegreeSet> {
    let n = g2.order() as u64;
    if g1.order() == 1 {
        return Ok(DegreeSet::new(n, [0]));
    }
    let l1 = lens_of_element(g1, g1.generators()[0].elem)?;
    let mut residues = Vec::new();
    for &k in maximal_cyclic_reps(g2) {
        let lk = lens_of_element(g2, k)?;
        let index = n / lk.m;
        residues.extend(lens_degree_set(&l1, &lk).residues.into_iter().map(|r| mulmod(index, r, n)));
    }
    Ok(DegreeSet::new(n, residues))
}
