//! Defining relations of each family, as pairs of words that must agree.

use super::spec::{Family, GroupSpec};

pub fn relations(spec: &GroupSpec) -> Vec<(String, String)> {
    let r = |l: &str, r: &str| (l.to_string(), r.to_string());
    let mut out = match spec.family {
        Family::Cyclic => vec![r(&format!("c^{}", spec.m), "1")],
        Family::BinaryDihedral => {
            let n = spec.n;
            vec![r("a^2", &format!("b^{n}")), r(&format!("b^{n}"), "(ab)^2"), r("a^4", "1")]
        }
        Family::BinaryOctahedral => vec![r("a^2", "b^3"), r("b^3", "(ab)^4"), r("a^4", "1")],
        Family::BinaryIcosahedral => vec![r("a^2", "b^3"), r("b^3", "(ab)^5"), r("a^4", "1")],
        Family::GeneralizedTetrahedral => vec![
            r("a^2", "b^2"),
            r("b^2", "(ab)^2"),
            r("a^4", "1"),
            r(&format!("w^{}", 3u64.pow(spec.q)), "1"),
            r("wa", "bw"),
            r("wb", "abw"),
        ],
        Family::Dicyclic => vec![
            r(&format!("u^{}", spec.n), "1"),
            r(&format!("w^{}", 2u64.pow(spec.q)), "1"),
            r("uwu", "w"),
        ],
    };
    if spec.family != Family::Cyclic && spec.m > 1 {
        out.push(r(&format!("v^{}", spec.m), "1"));
        let core: &[&str] = match spec.family {
            Family::GeneralizedTetrahedral => &["a", "w"],
            Family::Dicyclic => &["u", "w"],
            _ => &["b", "a"],
        };
        for g in core {
            out.push(r(&format!("v{g}"), &format!("{g}v")));
        }
    }
    out
}
