use std::collections::HashMap;

use thiserror::Error;

use super::filter::Filter;
use super::germ::{Germ, GermContext, QuotientError};
use super::quotient::FilterQuotient;
use crate::fincat::{Category, FiniteCategory, Functor, Obj, SubterminalPoset};

/// A category with a filter and its quotient.
#[derive(Clone, Copy)]
pub struct QuotientSide<'a> {
    pub category: &'a FiniteCategory,
    pub subterminals: &'a SubterminalPoset,
    pub filter: &'a Filter,
    pub quotient: &'a FilterQuotient,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InducedError {
    #[error("image of filter member {0} is not in the target filter")]
    FilterNotPreserved(String),
    #[error("no comparison map into the image of {object} × {subterminal}")]
    ProductNotPreserved { object: String, subterminal: String },
    #[error("image of {0} depends on the representative")]
    NotWellDefined(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// For each filter member `U`, the target member isomorphic to `F(U)`, or the first offender.
pub fn restrict_filter(src: QuotientSide<'_>, tgt: QuotientSide<'_>, f: &Functor) -> Result<HashMap<Obj, Obj>, InducedError> {
    filter_image(src.category, src.subterminals, src.filter, tgt.subterminals, tgt.filter, f)
}

/// [`restrict_filter`] without the quotients.
pub fn filter_image(
    c: &FiniteCategory,
    src: &SubterminalPoset,
    src_filter: &Filter,
    tgt: &SubterminalPoset,
    tgt_filter: &Filter,
    f: &Functor,
) -> Result<HashMap<Obj, Obj>, InducedError> {
    let mut out = HashMap::new();
    for e in src_filter.members() {
        let u = src.object(e);
        let el = tgt.element_of(f.objects[u]).filter(|el| tgt_filter.contains(*el)).ok_or_else(|| InducedError::FilterNotPreserved(c.object_name(u)))?;
        out.insert(u, tgt.object(el));
    }
    Ok(out)
}

/// The functor `C_Φ -> D_Ψ` induced by `F : C -> D` sending `Φ` into `Ψ`.
///
/// A germ `(U, h : X × U -> Y)` goes to `(U', F(h) ∘ c)` where `U' ≅ F(U)` is
/// the chosen member of `Ψ` and `c : F(X) × U' -> F(X × U)` is the comparison map.
/// Every representative is mapped and must land in the same class.
pub fn induced_functor(src: QuotientSide<'_>, tgt: QuotientSide<'_>, f: &Functor) -> Result<Functor, InducedError> {
    let members = restrict_filter(src, tgt, f)?;
    let sctx = GermContext::new(src.category, src.subterminals, src.filter)?;
    let tctx = GermContext::new(tgt.category, tgt.subterminals, tgt.filter)?;
    let (c, d) = (src.category, tgt.category);
    let mut comparisons: HashMap<(Obj, Obj), usize> = HashMap::new();
    let mut image = |g: &Germ| -> Result<usize, InducedError> {
        let u2 = members[&g.over];
        let key = (g.dom, g.over);
        let cmp = match comparisons.get(&key) {
            Some(&k) => k,
            None => {
                let sp = sctx.product(g.dom, g.over);
                let tp = tctx.product(f.objects[g.dom], u2);
                let j = d.hom(u2, f.objects[g.over])[0];
                let right = d.compose(&j, &tp.right);
                let k = d
                    .hom(tp.apex, f.objects[sp.apex])
                    .iter()
                    .copied()
                    .find(|k| d.compose(&f.apply(sp.left), k) == tp.left && d.compose(&f.apply(sp.right), k) == right)
                    .ok_or_else(|| InducedError::ProductNotPreserved { object: c.object_name(g.dom), subterminal: c.object_name(g.over) })?;
                comparisons.insert(key, k);
                k
            }
        };
        let germ = Germ { dom: f.objects[g.dom], cod: f.objects[g.cod], over: u2, arrow: d.compose(&f.apply(g.arrow), &cmp) };
        Ok(tgt.quotient.class_of(&germ).expect("germ of the target quotient"))
    };
    let mut arrows = Vec::with_capacity(src.quotient.classes.len());
    for (a, class) in src.quotient.classes.iter().enumerate() {
        let first = image(&class[0])?;
        for g in &class[1..] {
            if image(g)? != first {
                return Err(InducedError::NotWellDefined(src.quotient.category.arrow_name(&a)));
            }
        }
        arrows.push(first);
    }
    Ok(Functor { objects: f.objects.clone(), arrows })
}
