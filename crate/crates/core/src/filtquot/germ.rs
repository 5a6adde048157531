use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::filter::Filter;
use crate::fincat::{Category, FiniteCategory, Obj, Product, SubterminalPoset};

/// A representative `(U, f: X × U -> Y)` of a morphism `X -> Y` of a filter quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Germ {
    pub dom: Obj,
    pub cod: Obj,
    /// The subterminal object `U`.
    pub over: Obj,
    pub arrow: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("no terminal object among the subterminals")]
    NoTerminal,
    #[error("filter member {0} is not a subterminal element")]
    BadMember(usize),
    #[error("missing product {object} × {subterminal}")]
    MissingProduct { object: String, subterminal: String },
}

/// Everything needed to manipulate germs over a filter in a concrete category.
pub struct GermContext<'a> {
    pub c: &'a FiniteCategory,
    pub subterminals: &'a SubterminalPoset,
    pub filter: &'a Filter,
    /// Filter members as objects, the top first.
    pub members: Vec<Obj>,
    pub top: Obj,
    element: HashMap<Obj, usize>,
    products: HashMap<(Obj, Obj), Product<usize>>,
    pairings: RefCell<HashMap<(Obj, Obj, Obj), HashMap<(usize, usize), usize>>>,
}

impl<'a> GermContext<'a> {
    pub fn new(c: &'a FiniteCategory, subterminals: &'a SubterminalPoset, filter: &'a Filter) -> Result<Self, QuotientError> {
        let top_el = subterminals.poset.top().ok_or(QuotientError::NoTerminal)?;
        let mut els: Vec<usize> = filter.members().collect();
        if let Some(&bad) = els.iter().find(|&&e| e >= subterminals.len()) {
            return Err(QuotientError::BadMember(bad));
        }
        els.sort_by_key(|&e| (e != top_el, e));
        let members: Vec<Obj> = els.iter().map(|&e| subterminals.object(e)).collect();
        let element = els.iter().map(|&e| (subterminals.object(e), e)).collect();
        let mut products = HashMap::new();
        for x in c.objects() {
            for &u in &members {
                let p = c.product(x, u).ok_or_else(|| QuotientError::MissingProduct { object: c.object_name(x), subterminal: c.object_name(u) })?;
                products.insert((x, u), p);
            }
        }
        Ok(GermContext { c, subterminals, filter, top: subterminals.object(top_el), members, element, products, pairings: RefCell::new(HashMap::new()) })
    }

    /// The chosen product `X × U`.
    pub fn product(&self, x: Obj, u: Obj) -> &Product<usize> {
        &self.products[&(x, u)]
    }

    pub fn leq(&self, w: Obj, u: Obj) -> bool {
        self.subterminals.poset.leq(self.element[&w], self.element[&u])
    }

    /// The unique arrow `W -> U` between subterminals.
    pub fn below(&self, w: Obj, u: Obj) -> usize {
        self.c.hom(w, u)[0]
    }

    /// A filter member below both `u` and `v`.
    pub fn lower_bound(&self, u: Obj, v: Obj) -> Obj {
        let e = self.filter.lower_bound(&self.subterminals.poset, self.element[&u], self.element[&v]).expect("filters are directed");
        self.subterminals.object(e)
    }

    /// The unique `⟨f, g⟩ : Z -> A × B`.
    pub fn pair(&self, p: &Product<usize>, f: usize, g: usize) -> usize {
        let c = self.c;
        let z = c.dom(&f);
        let key = (c.cod(&p.left), c.cod(&p.right), z);
        let mut cache = self.pairings.borrow_mut();
        let table = cache.entry(key).or_insert_with(|| c.hom(z, p.apex).iter().map(|&u| ((c.compose(&p.left, &u), c.compose(&p.right, &u)), u)).collect());
        table[&(f, g)]
    }

    /// `X × W -> X × U` for `W ≤ U`.
    pub fn restriction_map(&self, x: Obj, u: Obj, w: Obj) -> usize {
        let (pu, pw) = (self.product(x, u), self.product(x, w));
        let to_u = self.c.compose(&self.below(w, u), &pw.right);
        self.pair(pu, pw.left, to_u)
    }

    /// The restriction of `g` to `W ≤ g.over`.
    pub fn restrict(&self, g: &Germ, w: Obj) -> Germ {
        let r = self.restriction_map(g.dom, g.over, w);
        Germ { over: w, arrow: self.c.compose(&g.arrow, &r), ..*g }
    }

    /// Whether some `W ∈ Φ` below both representatives makes their restrictions equal.
    pub fn germ_eq(&self, a: &Germ, b: &Germ) -> bool {
        a.dom == b.dom
            && a.cod == b.cod
            && self.members.iter().any(|&w| self.leq(w, a.over) && self.leq(w, b.over) && self.restrict(a, w).arrow == self.restrict(b, w).arrow)
    }

    /// `P_Φ(f) = (⊤, f ∘ π_X)`.
    pub fn project(&self, f: usize) -> Germ {
        let (x, y) = (self.c.dom(&f), self.c.cod(&f));
        let p = self.product(x, self.top);
        Germ { dom: x, cod: y, over: self.top, arrow: self.c.compose(&f, &p.left) }
    }

    pub fn identity(&self, x: Obj) -> Germ {
        self.project(self.c.identity(x))
    }

    /// `g ∘ f` on representatives.
    pub fn compose(&self, g: &Germ, f: &Germ) -> Germ {
        assert_eq!(f.cod, g.dom);
        let c = self.c;
        let w = self.lower_bound(f.over, g.over);
        let fw = self.restrict(f, w);
        let pw = self.product(f.dom, w);
        let to_v = c.compose(&self.below(w, g.over), &pw.right);
        let into = self.pair(self.product(g.dom, g.over), fw.arrow, to_v);
        Germ { dom: f.dom, cod: g.cod, over: w, arrow: c.compose(&g.arrow, &into) }
    }

    /// `f × U : X × U -> Y × U` for a representative `(U, f)`.
    pub fn times_over(&self, g: &Germ) -> usize {
        let p = self.product(g.dom, g.over);
        self.pair(self.product(g.cod, g.over), g.arrow, p.right)
    }

    /// Every representative with the given endpoints.
    pub fn representatives(&self, x: Obj, y: Obj) -> Vec<Germ> {
        self.members
            .iter()
            .flat_map(|&u| self.c.hom(self.product(x, u).apex, y).iter().map(move |&f| Germ { dom: x, cod: y, over: u, arrow: f }).collect::<Vec<_>>())
            .collect()
    }

    pub fn germ_name(&self, g: &Germ) -> String {
        format!("[{} on {}×{}]", self.c.arrow_name(&g.arrow), self.c.object_name(g.dom), self.c.object_name(g.over))
    }
}
