use serde::{Deserialize, Serialize};

use super::class::{ClassError, ClassSpec, MorphismClass};
use super::lifting::{verify_wfs, WfsReport};
use crate::fincat::limits::pullback;
use crate::fincat::{Category, FiniteCategory};

/// Cofibrations, fibrations and weak equivalences on a fixed category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelStructure {
    pub cofibrations: MorphismClass,
    pub fibrations: MorphismClass,
    pub weak: MorphismClass,
}

impl ModelStructure {
    pub fn from_specs(c: &FiniteCategory, cof: &ClassSpec, fib: &ClassSpec, weak: &ClassSpec) -> Result<Self, ClassError> {
        Ok(ModelStructure {
            cofibrations: MorphismClass::from_spec("C", c, cof)?,
            fibrations: MorphismClass::from_spec("F", c, fib)?,
            weak: MorphismClass::from_spec("W", c, weak)?,
        })
    }
}

/// `(g, f)` with exactly two of `f`, `g`, `g ∘ f` weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoOfThreeWitness {
    pub g: String,
    pub f: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    /// `(C ∩ W, F)`
    pub trivial_cofibrations: WfsReport,
    /// `(C, F ∩ W)`
    pub trivial_fibrations: WfsReport,
    pub two_of_three: Vec<TwoOfThreeWitness>,
}

impl ModelReport {
    pub fn is_ok(&self) -> bool {
        self.trivial_cofibrations.is_ok() && self.trivial_fibrations.is_ok() && self.two_of_three.is_empty()
    }
}

pub fn two_of_three(c: &FiniteCategory, w: &MorphismClass) -> Vec<TwoOfThreeWitness> {
    let mut out = Vec::new();
    for f in 0..c.arrow_count() {
        for &g in c.arrows_out(c.cod(&f)) {
            let count = [w.contains(f), w.contains(g), w.contains(c.compose(&g, &f))].iter().filter(|b| **b).count();
            if count == 2 {
                out.push(TwoOfThreeWitness { g: c.arrow_name(&g), f: c.arrow_name(&f) });
            }
        }
    }
    out
}

pub fn verify_model_structure(c: &FiniteCategory, m: &ModelStructure) -> ModelReport {
    ModelReport {
        trivial_cofibrations: verify_wfs(c, &m.cofibrations.intersect(&m.weak), &m.fibrations),
        trivial_fibrations: verify_wfs(c, &m.cofibrations, &m.fibrations.intersect(&m.weak)),
        two_of_three: two_of_three(c, &m.weak),
    }
}

/// Pullbacks of weak equivalences along fibrations that are not weak
/// equivalences, as `(w, p)` name pairs. Missing pullbacks are skipped.
pub fn right_properness_failures(c: &FiniteCategory, m: &ModelStructure) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for w in m.weak.arrows() {
        for p in m.fibrations.arrows() {
            if c.cod(&p) != c.cod(&w) {
                continue;
            }
            if let Some(pb) = pullback(c, &w, &p) {
                // legs: [to dom w, to dom p, to cod]; the pullback of w is the leg to dom p
                if !m.weak.contains(pb.legs[1]) {
                    out.push((c.arrow_name(&w), c.arrow_name(&p)));
                }
            }
        }
    }
    out
}
