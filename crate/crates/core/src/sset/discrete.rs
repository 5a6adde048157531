use serde::{Deserialize, Serialize};

use super::complex::{discrete, interval_power, point, product, product_projections, simplex, SSet};
use super::hom::{hom_count, hom_set, is_isomorphic};

/// `τ₋₁X`: the point when `X` is inhabited, otherwise empty.
pub fn minus_one_truncation(x: &SSet) -> SSet {
    discrete(usize::from(!x.is_empty()), x.level)
}

/// Failures of the three requirements for suitable propositions, tested
/// against a sample of objects: a terminal object, copowers of it, and the
/// reflection onto subterminals.
pub fn suitable_propositions_failures(sample: &[SSet]) -> Vec<String> {
    let mut out = Vec::new();
    let Some(level) = sample.first().map(|x| x.level) else { return out };
    let one = point(level);
    let subterminals = [discrete(0, level), one.clone()];
    for (i, x) in sample.iter().enumerate() {
        if hom_count(x, &one) != 1 {
            out.push(format!("sample {i}: not exactly one map to the point"));
        }
        for k in 0..=3 {
            let want = x.sizes[0].pow(k as u32);
            if hom_count(&discrete(k, level), x) != want {
                out.push(format!("sample {i}: maps out of {k}·1 are not {k}-tuples of vertices"));
            }
        }
        let t = minus_one_truncation(x);
        for (j, u) in subterminals.iter().enumerate() {
            if hom_count(x, u) != hom_count(&t, u) {
                out.push(format!("sample {i}: τ₋₁ is not a reflection against subterminal {j}"));
            }
        }
        for (j, z) in sample.iter().enumerate() {
            if hom_count(z, &t) > 1 {
                out.push(format!("sample {i}: τ₋₁ is not subterminal (sample {j} has two maps in)"));
            }
        }
    }
    out
}

/// Whether `g ↦ g ∘ π` is a bijection `Hom(τ₋₁X, X) -> Hom(T × τ₋₁X, X)`.
pub fn local_against(x: &SSet, t: &SSet) -> bool {
    let tau = minus_one_truncation(x);
    let src = product(t, &tau);
    let (_, pi) = product_projections(t, &tau);
    let before = hom_set(&tau, x);
    let after: std::collections::HashSet<_> = hom_set(&src, x).into_iter().collect();
    let pulled: std::collections::HashSet<_> = before.iter().map(|g| g.after(&pi)).collect();
    pulled.len() == before.len() && pulled == after
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalDiscreteness {
    /// Local against `Y[n] × τ₋₁X` for every `n` up to the truncation.
    pub simplex_local: bool,
    /// Local against `Y[1]^n` (times `τ₋₁X`) for every `n` up to the truncation.
    pub interval_local: bool,
}

pub fn external_discreteness(x: &SSet) -> ExternalDiscreteness {
    let d = x.level;
    ExternalDiscreteness {
        simplex_local: (0..=d).all(|n| local_against(x, &simplex(n, d))),
        interval_local: (0..=d).all(|n| local_against(x, &interval_power(n, d))),
    }
}

/// Panics if the two locality criteria disagree.
pub fn is_externally_discrete(x: &SSet) -> bool {
    let r = external_discreteness(x);
    assert_eq!(r.simplex_local, r.interval_local, "locality criteria disagree on {x}");
    r.simplex_local
}

/// Whether `X` is the constant simplicial set on its vertices.
pub fn is_constant(x: &SSet) -> bool {
    is_isomorphic(x, &discrete(x.sizes[0], x.level))
}
