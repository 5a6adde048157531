use std::collections::HashMap;

use super::filter::Filter;
use super::germ::{Germ, GermContext, QuotientError};
use crate::fincat::{ArrowInfo, Category, FiniteCategory, Functor, Obj, Product, SubterminalPoset};

/// `C_Φ` together with the projection `P_Φ : C -> C_Φ` and the germ data behind each arrow.
#[derive(Clone, Debug)]
pub struct FilterQuotient {
    pub category: FiniteCategory,
    pub projection: Functor,
    /// Filter members as objects of `C`, top first.
    pub members: Vec<Obj>,
    /// Every representative of each quotient arrow.
    pub classes: Vec<Vec<Germ>>,
    class_of: HashMap<Germ, usize>,
}

impl FilterQuotient {
    pub fn class_of(&self, g: &Germ) -> Option<usize> {
        self.class_of.get(g).copied()
    }

    /// The canonical representative of a quotient arrow.
    pub fn representative(&self, arrow: usize) -> Germ {
        self.classes[arrow][0]
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Build `C_Φ` by saturating representatives under restriction.
///
/// Products in `C_Φ` are chosen as the images of the chosen products of `C`.
pub fn filter_quotient(c: &FiniteCategory, subterminals: &SubterminalPoset, filter: &Filter) -> Result<FilterQuotient, QuotientError> {
    let ctx = GermContext::new(c, subterminals, filter)?;
    let mut classes: Vec<Vec<Germ>> = Vec::new();
    let mut class_of: HashMap<Germ, usize> = HashMap::new();
    let mut arrows = Vec::new();
    for x in c.objects() {
        for y in c.objects() {
            let reps = ctx.representatives(x, y);
            let index: HashMap<Germ, usize> = reps.iter().enumerate().map(|(i, g)| (*g, i)).collect();
            let mut parent: Vec<usize> = (0..reps.len()).collect();
            for (i, g) in reps.iter().enumerate() {
                for &w in &ctx.members {
                    if w != g.over && ctx.leq(w, g.over) {
                        let j = index[&ctx.restrict(g, w)];
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        // keep the earliest representative as root
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
            let mut local: HashMap<usize, usize> = HashMap::new();
            for (i, g) in reps.iter().enumerate() {
                let root = find(&mut parent, i);
                let id = *local.entry(root).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[id].push(*g);
                class_of.insert(*g, id);
            }
        }
    }
    let projected: Vec<usize> = (0..c.arrow_count()).map(|f| class_of[&ctx.project(f)]).collect();
    let mut names: Vec<Option<String>> = vec![None; classes.len()];
    for f in 0..c.arrow_count() {
        names[projected[f]].get_or_insert_with(|| c.arrow_name(&f));
    }
    for (id, class) in classes.iter().enumerate() {
        let g = class[0];
        arrows.push(ArrowInfo { name: names[id].take().unwrap_or_else(|| ctx.germ_name(&g)), dom: g.dom, cod: g.cod });
    }
    let objects = c.object_names().to_vec();
    let identities = c.objects().map(|x| projected[c.identity(x)]).collect();
    let mut category = FiniteCategory::from_parts(objects, arrows, identities, |g, f| class_of[&ctx.compose(&classes[g][0], &classes[f][0])]);
    let n = c.object_count();
    let table = (0..n * n).map(|k| c.product(k / n, k % n).map(|p| Product { apex: p.apex, left: projected[p.left], right: projected[p.right] })).collect();
    category.set_chosen_products(table);
    let projection = Functor { objects: c.objects().collect(), arrows: projected };
    Ok(FilterQuotient { category, projection, members: ctx.members.clone(), classes, class_of })
}

/// A pair of composable quotient arrows whose composite depends on the representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionWitness {
    pub g: Germ,
    pub f: Germ,
    pub expected: usize,
    pub got: Option<usize>,
}

/// Recompute every composite from every pair of representatives.
pub fn check_composition(
    c: &FiniteCategory,
    subterminals: &SubterminalPoset,
    filter: &Filter,
    q: &FilterQuotient,
) -> Result<Option<CompositionWitness>, QuotientError> {
    let ctx = GermContext::new(c, subterminals, filter)?;
    let cat = &q.category;
    for f in 0..cat.arrow_count() {
        for &g in cat.arrows_out(cat.cod(&f)) {
            let expected = cat.compose(&g, &f);
            for rf in &q.classes[f] {
                for rg in &q.classes[g] {
                    let got = q.class_of(&ctx.compose(rg, rf));
                    if got != Some(expected) {
                        return Ok(Some(CompositionWitness { g: *rg, f: *rf, expected, got }));
                    }
                }
            }
        }
    }
    Ok(None)
}
