//! Limits and colimits by exhaustive search over cones.
//!
//! A cone `(L, legs)` is limiting iff for every object `A` the map
//! `hom(A, L) -> Cones(A)`, `u ↦ legs ∘ u`, is a bijection. Counting
//! `Cones(A)` once per apex lets most candidates be discarded without
//! touching their legs.

use std::borrow::Cow;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::category::{Category, Obj, Product};

/// A diagram given by its objects and generating edges `(src, tgt, arrow)`.
///
/// Naturality along generators implies naturality along all composites, so
/// identity and composite arrows of the indexing shape are never listed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram<A> {
    pub objects: Vec<Obj>,
    pub edges: Vec<(usize, usize, A)>,
}

/// Indexing shapes of the finite (co)limits checked throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// No objects: limits are terminal objects, colimits initial ones.
    Empty,
    /// Two objects, no arrows.
    Pair,
    /// `a -> c <- b`
    Cospan,
    /// `a <- c -> b`
    Span,
    /// `a ⇉ b`
    Parallel,
}

impl Shape {
    pub const ALL: [Shape; 5] = [Shape::Empty, Shape::Pair, Shape::Cospan, Shape::Span, Shape::Parallel];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Empty => "empty",
            Shape::Pair => "pair",
            Shape::Cospan => "cospan",
            Shape::Span => "span",
            Shape::Parallel => "parallel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone<A> {
    pub apex: Obj,
    pub legs: Vec<A>,
}

/// The opposite of a category.
#[derive(Clone, Copy, Debug)]
pub struct Op<'a, C>(pub &'a C);

impl<C: Category> Category for Op<'_, C> {
    type Arrow = C::Arrow;

    fn object_count(&self) -> usize {
        self.0.object_count()
    }
    fn object_name(&self, x: Obj) -> String {
        self.0.object_name(x)
    }
    fn arrow_name(&self, f: &C::Arrow) -> String {
        self.0.arrow_name(f)
    }
    fn dom(&self, f: &C::Arrow) -> Obj {
        self.0.cod(f)
    }
    fn cod(&self, f: &C::Arrow) -> Obj {
        self.0.dom(f)
    }
    fn identity(&self, x: Obj) -> C::Arrow {
        self.0.identity(x)
    }
    fn compose(&self, g: &C::Arrow, f: &C::Arrow) -> C::Arrow {
        self.0.compose(f, g)
    }
    fn hom(&self, a: Obj, b: Obj) -> Cow<'_, [C::Arrow]> {
        self.0.hom(b, a)
    }
}

impl<A: Clone> Diagram<A> {
    pub fn opposite(&self) -> Diagram<A> {
        Diagram { objects: self.objects.clone(), edges: self.edges.iter().map(|(s, t, a)| (*t, *s, a.clone())).collect() }
    }

    pub fn empty() -> Self {
        Diagram { objects: vec![], edges: vec![] }
    }

    pub fn pair(a: Obj, b: Obj) -> Self {
        Diagram { objects: vec![a, b], edges: vec![] }
    }

    pub fn map<B>(&self, obj: impl Fn(Obj) -> Obj, arr: impl Fn(&A) -> B) -> Diagram<B> {
        Diagram { objects: self.objects.iter().map(|&o| obj(o)).collect(), edges: self.edges.iter().map(|(s, t, a)| (*s, *t, arr(a))).collect() }
    }
}

/// All cones over `d` with the given apex.
pub fn cones_at<C: Category>(c: &C, d: &Diagram<C::Arrow>, apex: Obj) -> Vec<Vec<C::Arrow>> {
    let homs: Vec<Cow<'_, [C::Arrow]>> = d.objects.iter().map(|&o| c.hom(apex, o)).collect();
    let mut out = Vec::new();
    let mut legs: Vec<C::Arrow> = Vec::with_capacity(d.objects.len());
    fn go<C: Category>(c: &C, d: &Diagram<C::Arrow>, homs: &[Cow<'_, [C::Arrow]>], legs: &mut Vec<C::Arrow>, out: &mut Vec<Vec<C::Arrow>>) {
        let j = legs.len();
        if j == d.objects.len() {
            out.push(legs.clone());
            return;
        }
        for leg in homs[j].iter() {
            legs.push(leg.clone());
            let ok = d.edges.iter().all(|(s, t, e)| {
                let (s, t) = (*s, *t);
                if s.max(t) != j {
                    return true;
                }
                c.compose(e, &legs[s]) == legs[t]
            });
            if ok {
                go(c, d, homs, legs, out);
            }
            legs.pop();
        }
    }
    go(c, d, &homs, &mut legs, &mut out);
    out
}

fn injective_on<C: Category>(c: &C, legs: &[C::Arrow], apex: Obj, from: Obj) -> bool {
    let mut seen = HashSet::new();
    c.hom(from, apex).iter().all(|u| seen.insert(legs.iter().map(|l| c.compose(l, u)).collect::<Vec<_>>()))
}

/// Whether `cone` is a limit of `d`.
pub fn is_limit<C: Category>(c: &C, d: &Diagram<C::Arrow>, cone: &Cone<C::Arrow>) -> bool {
    if cones_at(c, d, cone.apex).iter().all(|l| l != &cone.legs) {
        return false;
    }
    c.objects().all(|a| c.hom(a, cone.apex).len() == cones_at(c, d, a).len() && injective_on(c, &cone.legs, cone.apex, a))
}

/// A limiting cone, or `None` when no cone in the category is universal.
pub fn limit<C: Category>(c: &C, d: &Diagram<C::Arrow>) -> Option<Cone<C::Arrow>> {
    let counts: Vec<usize> = c.objects().map(|a| cones_at(c, d, a).len()).collect();
    for apex in c.objects() {
        if !c.objects().all(|a| c.hom(a, apex).len() == counts[a]) {
            continue;
        }
        for legs in cones_at(c, d, apex) {
            if c.objects().all(|a| injective_on(c, &legs, apex, a)) {
                return Some(Cone { apex, legs });
            }
        }
    }
    None
}

/// A colimiting cocone: legs run from the diagram into the apex.
pub fn colimit<C: Category>(c: &C, d: &Diagram<C::Arrow>) -> Option<Cone<C::Arrow>> {
    limit(&Op(c), &d.opposite())
}

pub fn is_colimit<C: Category>(c: &C, d: &Diagram<C::Arrow>, cocone: &Cone<C::Arrow>) -> bool {
    is_limit(&Op(c), &d.opposite(), cocone)
}

pub fn terminal<C: Category>(c: &C) -> Option<Obj> {
    limit(c, &Diagram::empty()).map(|l| l.apex)
}

pub fn initial<C: Category>(c: &C) -> Option<Obj> {
    colimit(c, &Diagram::empty()).map(|l| l.apex)
}

pub fn search_product<C: Category>(c: &C, a: Obj, b: Obj) -> Option<Product<C::Arrow>> {
    limit(c, &Diagram::pair(a, b)).map(|mut l| {
        let right = l.legs.pop().unwrap();
        let left = l.legs.pop().unwrap();
        Product { apex: l.apex, left, right }
    })
}

pub fn coproduct<C: Category>(c: &C, a: Obj, b: Obj) -> Option<Cone<C::Arrow>> {
    colimit(c, &Diagram::pair(a, b))
}

/// Pullback of `f: a -> z` and `g: b -> z`; legs are `[to a, to b, to z]`.
pub fn pullback<C: Category>(c: &C, f: &C::Arrow, g: &C::Arrow) -> Option<Cone<C::Arrow>> {
    limit(c, &cospan(c, f, g))
}

pub fn cospan<C: Category>(c: &C, f: &C::Arrow, g: &C::Arrow) -> Diagram<C::Arrow> {
    Diagram { objects: vec![c.dom(f), c.dom(g), c.cod(f)], edges: vec![(0, 2, f.clone()), (1, 2, g.clone())] }
}

pub fn span<C: Category>(c: &C, f: &C::Arrow, g: &C::Arrow) -> Diagram<C::Arrow> {
    Diagram { objects: vec![c.cod(f), c.cod(g), c.dom(f)], edges: vec![(2, 0, f.clone()), (2, 1, g.clone())] }
}

pub fn parallel<C: Category>(c: &C, f: &C::Arrow, g: &C::Arrow) -> Diagram<C::Arrow> {
    Diagram { objects: vec![c.dom(f), c.cod(f)], edges: vec![(0, 1, f.clone()), (0, 1, g.clone())] }
}

/// Every diagram of the given shape in `c`.
pub fn diagrams<C: Category>(c: &C, shape: Shape) -> Vec<Diagram<C::Arrow>> {
    let arrows = c.all_arrows();
    let mut out = Vec::new();
    match shape {
        Shape::Empty => out.push(Diagram::empty()),
        Shape::Pair => {
            for a in c.objects() {
                for b in c.objects() {
                    out.push(Diagram::pair(a, b));
                }
            }
        }
        Shape::Cospan | Shape::Span | Shape::Parallel => {
            for f in &arrows {
                for g in &arrows {
                    let keep = match shape {
                        Shape::Cospan => c.cod(f) == c.cod(g),
                        Shape::Span => c.dom(f) == c.dom(g),
                        _ => c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g),
                    };
                    if keep {
                        out.push(match shape {
                            Shape::Cospan => cospan(c, f, g),
                            Shape::Span => span(c, f, g),
                            _ => parallel(c, f, g),
                        });
                    }
                }
            }
        }
    }
    out
}
