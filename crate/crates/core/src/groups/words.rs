//! Normal-form words for group elements.

use std::collections::VecDeque;

use super::group::{Group, Word};
use super::spec::Family;

/// Normal-form word for every element, indexed by element.
///
/// Families with a listed normal form use it (`c^s`, `b^s a^e`, `b^s a^e w^t`,
/// `u^s w^t`, optionally prefixed by `v^j`); otherwise shortest words over the free
/// generators and their inverses, found breadth-first.
pub fn normal_forms(g: &Group) -> Vec<Word> {
    let Some(spec) = &g.spec else {
        return shortest_words(g, &g.free_generators().map(|(i, _)| i).collect::<Vec<_>>());
    };
    let pos = |name: &str| g.gen_position(name).expect("family generator");
    let core: Vec<(usize, Vec<i64>)> = match spec.family {
        Family::Cyclic => vec![(pos("c"), (0..spec.m as i64).collect())],
        Family::BinaryDihedral => vec![(pos("b"), (0..2 * spec.n as i64).collect()), (pos("a"), vec![0, 1])],
        Family::GeneralizedTetrahedral => vec![
            (pos("b"), (0..4).collect()),
            (pos("a"), vec![0, 1]),
            (pos("w"), (0..3i64.pow(spec.q)).collect()),
        ],
        Family::Dicyclic => vec![(pos("u"), (0..spec.n as i64).collect()), (pos("w"), (0..2i64.pow(spec.q)).collect())],
        Family::BinaryOctahedral | Family::BinaryIcosahedral => Vec::new(),
    };
    let mut out: Vec<Option<Word>> = vec![None; g.order()];
    let cof: Vec<i64> = if spec.family != Family::Cyclic && spec.m > 1 { (0..spec.m as i64).collect() } else { vec![0] };
    let core_words: Vec<Word> = if core.is_empty() {
        let ab = [pos("a"), pos("b")];
        let sw = shortest_words(g, &ab);
        let ab_elems = [g.generators()[ab[0]].elem, g.generators()[ab[1]].elem];
        let core_elems: Vec<usize> = super::structure::generated(g, &ab_elems).into_iter().map(|x| x as usize).collect();
        core_elems.into_iter().map(|x| sw[x].clone()).collect()
    } else {
        let mut words = vec![Word::default()];
        for (gpos, range) in &core {
            words = words
                .iter()
                .flat_map(|w| {
                    range.iter().map(move |&e| {
                        let mut w = w.clone();
                        if e != 0 {
                            w.0.push((*gpos, e));
                        }
                        w
                    })
                })
                .collect();
        }
        words
    };
    for &j in &cof {
        for cw in &core_words {
            let mut w = Word::default();
            if j != 0 {
                w.0.push((pos("v"), j));
            }
            w.0.extend(cw.0.iter().copied());
            let x = g.eval(&w);
            if out[x].is_none() {
                out[x] = Some(w);
            }
        }
    }
    out.into_iter().map(|w| w.expect("normal forms cover the group")).collect()
}

/// Shortest words over the given generators and their inverses, with exponents of
/// consecutive equal letters merged.
pub fn shortest_words(g: &Group, gens: &[usize]) -> Vec<Word> {
    let n = g.order();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Word::default());
    let mut queue = VecDeque::from([0usize]);
    let letters: Vec<(usize, i64)> = gens.iter().map(|&p| (p, 1)).chain(gens.iter().map(|&p| (p, -1))).collect();
    while let Some(x) = queue.pop_front() {
        for &(p, e) in &letters {
            let s = g.generators()[p].elem;
            let y = g.mul(x, if e > 0 { s } else { g.inv(s) });
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                match w.0.last_mut() {
                    Some(last) if last.0 == p && last.1.signum() == e => last.1 += e,
                    _ => w.0.push((p, e)),
                }
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    words.into_iter().map(|w| w.unwrap_or_default()).collect()
}

pub fn canonical_word(g: &Group, idx: usize) -> Word {
    normal_forms(g).swap_remove(idx)
}
