use std::collections::HashSet;

use super::category::{Category, Obj, Product};
use super::limits::{pullback, terminal, Op};
use super::poset::FinitePoset;

pub fn is_mono<C: Category>(c: &C, f: &C::Arrow) -> bool {
    let src = c.dom(f);
    c.objects().all(|a| {
        let mut seen = HashSet::new();
        c.hom(a, src).iter().all(|g| seen.insert(c.compose(f, g)))
    })
}

pub fn is_epi<C: Category>(c: &C, f: &C::Arrow) -> bool {
    is_mono(&Op(c), f)
}

/// Inverse of `f` if it is an isomorphism.
pub fn inverse<C: Category>(c: &C, f: &C::Arrow) -> Option<C::Arrow> {
    let (a, b) = (c.dom(f), c.cod(f));
    c.hom(b, a).iter().find(|g| c.compose(g, f) == c.identity(a) && c.compose(f, g) == c.identity(b)).cloned()
}

pub fn is_iso<C: Category>(c: &C, f: &C::Arrow) -> bool {
    inverse(c, f).is_some()
}

/// Some isomorphism `a -> b`.
pub fn find_iso<C: Category>(c: &C, a: Obj, b: Obj) -> Option<C::Arrow> {
    c.hom(a, b).iter().find(|f| is_iso(c, f)).cloned()
}

/// Mono test through the kernel pair: `f` is mono iff the pullback of `f`
/// along itself has equal legs. `None` when that pullback is missing.
pub fn is_mono_by_kernel_pair<C: Category>(c: &C, f: &C::Arrow) -> Option<bool> {
    pullback(c, f, f).map(|cone| cone.legs[0] == cone.legs[1])
}

pub fn is_subterminal<C: Category>(c: &C, u: Obj) -> bool {
    c.objects().all(|x| c.hom(x, u).len() <= 1)
}

/// Subterminal objects, one per isomorphism class, ordered by `U ≤ V` iff `U -> V` exists.
#[derive(Clone, Debug)]
pub struct SubterminalPoset {
    pub poset: FinitePoset,
    /// Representative object of each poset element.
    pub objects: Vec<Obj>,
    /// For each object of the category, the element it is isomorphic to.
    pub class_of: Vec<Option<usize>>,
}

impl SubterminalPoset {
    pub fn element_of(&self, x: Obj) -> Option<usize> {
        self.class_of[x]
    }

    pub fn object(&self, e: usize) -> Obj {
        self.objects[e]
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.poset.find(name)
    }
}

pub fn subterminal_poset<C: Category>(c: &C) -> SubterminalPoset {
    let subs: Vec<Obj> = c.objects().filter(|&u| is_subterminal(c, u)).collect();
    let below = |u: Obj, v: Obj| !c.hom(u, v).is_empty();
    let mut objects: Vec<Obj> = Vec::new();
    let mut class_of = vec![None; c.object_count()];
    for &u in &subs {
        match objects.iter().position(|&r| below(u, r) && below(r, u)) {
            Some(i) => class_of[u] = Some(i),
            None => {
                class_of[u] = Some(objects.len());
                objects.push(u);
            }
        }
    }
    let names = objects.iter().map(|&u| c.object_name(u)).collect();
    let poset = FinitePoset::from_fn(names, |i, j| below(objects[i], objects[j]));
    SubterminalPoset { poset, objects, class_of }
}

/// `E = Y^X` with evaluation `eval: E × X -> Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponential<A> {
    pub object: Obj,
    pub eval: A,
    pub product: Product<A>,
}

/// `u × X : Z × X -> E × X` for `u: Z -> E`.
pub fn product_map<C: Category>(c: &C, target: &Product<C::Arrow>, source: &Product<C::Arrow>, left: &C::Arrow, right: &C::Arrow) -> Option<C::Arrow> {
    c.pair(target, &c.compose(left, &source.left), &c.compose(right, &source.right))
}

/// Check the universal property of `(E, eval)` against every `Z` whose
/// product with `X` exists in the category.
pub fn verify_exponential<C: Category>(c: &C, x: Obj, y: Obj, exp: &Exponential<C::Arrow>) -> bool {
    let p = &exp.product;
    if c.dom(&p.left) != p.apex || c.cod(&p.left) != exp.object || c.cod(&p.right) != x {
        return false;
    }
    let idx = c.identity(x);
    c.objects().all(|z| {
        let Some(pz) = c.product(z, x) else { return true };
        let us = c.hom(z, exp.object);
        if us.len() != c.hom(pz.apex, y).len() {
            return false;
        }
        let mut seen = HashSet::new();
        us.iter().all(|u| match product_map(c, p, &pz, u, &idx) {
            Some(ux) => seen.insert(c.compose(&exp.eval, &ux)),
            None => false,
        })
    })
}

pub fn exponential<C: Category>(c: &C, x: Obj, y: Obj) -> Option<Exponential<C::Arrow>> {
    for e in c.objects() {
        let Some(product) = c.product(e, x) else { continue };
        for eval in c.hom(product.apex, y).iter() {
            let cand = Exponential { object: e, eval: eval.clone(), product: product.clone() };
            if verify_exponential(c, x, y, &cand) {
                return Some(cand);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubobjectClassifier<A> {
    pub terminal: Obj,
    pub omega: Obj,
    pub truth: A,
}

fn bang<C: Category>(c: &C, a: Obj, t: Obj) -> C::Arrow {
    c.hom(a, t)[0].clone()
}

/// Every mono has exactly one classifying map making its square a pullback.
pub fn verify_classifier<C: Category>(c: &C, sc: &SubobjectClassifier<C::Arrow>, monos: &[C::Arrow]) -> bool {
    let (t1, omega, truth) = (sc.terminal, sc.omega, &sc.truth);
    if !is_mono(c, truth) {
        return false;
    }
    monos.iter().all(|m| {
        let (s, x) = (c.dom(m), c.cod(m));
        let top_s = c.compose(truth, &bang(c, s, t1));
        let factoring: Vec<HashSet<C::Arrow>> = c.objects().map(|a| c.hom(a, s).iter().map(|u| c.compose(m, u)).collect()).collect();
        let chis = c.hom(x, omega);
        let classifying = chis.iter().filter(|chi| {
            c.compose(chi, m) == top_s
                && c.objects().all(|a| {
                    let top_a = c.compose(truth, &bang(c, a, t1));
                    c.hom(a, x).iter().all(|f| c.compose(chi, f) != top_a || factoring[a].contains(f))
                })
        });
        classifying.take(2).count() == 1
    })
}

pub fn subobject_classifier<C: Category>(c: &C) -> Option<SubobjectClassifier<C::Arrow>> {
    let t1 = terminal(c)?;
    let monos: Vec<C::Arrow> = c.all_arrows().into_iter().filter(|f| is_mono(c, f)).collect();
    for omega in c.objects() {
        for truth in c.hom(t1, omega).iter() {
            let sc = SubobjectClassifier { terminal: t1, omega, truth: truth.clone() };
            if verify_classifier(c, &sc, &monos) {
                return Some(sc);
            }
        }
    }
    None
}

/// Subobjects of `x`: monos into `x` up to isomorphism over `x`, ordered by factorization.
#[derive(Clone, Debug)]
pub struct SubobjectLattice<A> {
    pub target: Obj,
    pub monos: Vec<A>,
    pub order: FinitePoset,
}

impl<A: Clone + Eq> SubobjectLattice<A> {
    pub fn index_of<C: Category<Arrow = A>>(&self, c: &C, m: &A) -> Option<usize> {
        self.monos.iter().position(|r| factors_through(c, m, r) && factors_through(c, r, m))
    }
}

/// Whether `m` factors through `n` (both with the same codomain).
pub fn factors_through<C: Category>(c: &C, m: &C::Arrow, n: &C::Arrow) -> bool {
    c.cod(m) == c.cod(n) && c.hom(c.dom(m), c.dom(n)).iter().any(|u| &c.compose(n, u) == m)
}

pub fn subobject_lattice<C: Category>(c: &C, x: Obj) -> SubobjectLattice<C::Arrow> {
    let mut reps: Vec<C::Arrow> = Vec::new();
    for s in c.objects() {
        for m in c.hom(s, x).iter() {
            if is_mono(c, m) && !reps.iter().any(|r| factors_through(c, m, r) && factors_through(c, r, m)) {
                reps.push(m.clone());
            }
        }
    }
    let names = reps.iter().map(|m| c.arrow_name(m)).collect();
    let order = FinitePoset::from_fn(names, |i, j| factors_through(c, &reps[i], &reps[j]));
    SubobjectLattice { target: x, monos: reps, order }
}
