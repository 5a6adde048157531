use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::category::{Category, FiniteCategory, Obj};
use super::props::{find_iso, inverse};

/// A functor between two explicit categories, given by its object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functor {
    pub objects: Vec<Obj>,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctorViolation {
    Shape,
    ArrowType { arrow: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor { objects: c.objects().collect(), arrows: c.all_arrows() }
    }

    /// `after ∘ self`
    pub fn then(&self, after: &Functor) -> Functor {
        Functor { objects: self.objects.iter().map(|&o| after.objects[o]).collect(), arrows: self.arrows.iter().map(|&a| after.arrows[a]).collect() }
    }

    pub fn apply(&self, f: usize) -> usize {
        self.arrows[f]
    }

    /// Exhaustive functoriality check; the first violation of each kind is enough
    /// to reject, but all are listed.
    pub fn check(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> Vec<FunctorViolation> {
        let mut out = Vec::new();
        if self.objects.len() != src.object_count() || self.arrows.len() != src.arrow_count() {
            return vec![FunctorViolation::Shape];
        }
        for f in 0..src.arrow_count() {
            let img = self.arrows[f];
            if img >= tgt.arrow_count() || tgt.dom(&img) != self.objects[src.dom(&f)] || tgt.cod(&img) != self.objects[src.cod(&f)] {
                out.push(FunctorViolation::ArrowType { arrow: src.arrow_name(&f) });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in src.objects() {
            if self.arrows[src.identity(x)] != tgt.identity(self.objects[x]) {
                out.push(FunctorViolation::Identity { object: src.object_name(x) });
            }
        }
        for f in 0..src.arrow_count() {
            for &g in src.arrows_out(src.cod(&f)) {
                if self.arrows[src.compose(&g, &f)] != tgt.compose(&self.arrows[g], &self.arrows[f]) {
                    out.push(FunctorViolation::Composition { g: src.arrow_name(&g), f: src.arrow_name(&f) });
                }
            }
        }
        out
    }

    pub fn is_faithful(&self, src: &FiniteCategory) -> bool {
        src.objects().all(|a| {
            src.objects().all(|b| {
                let mut seen = HashSet::new();
                src.hom(a, b).iter().all(|f| seen.insert(self.arrows[*f]))
            })
        })
    }

    pub fn is_full(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> bool {
        src.objects().all(|a| {
            src.objects().all(|b| {
                let img: HashSet<usize> = src.hom(a, b).iter().map(|f| self.arrows[*f]).collect();
                img.len() == tgt.hom(self.objects[a], self.objects[b]).len()
            })
        })
    }

    pub fn is_essentially_surjective(&self, tgt: &FiniteCategory) -> bool {
        tgt.objects().all(|y| self.objects.iter().any(|&x| find_iso(tgt, x, y).is_some()))
    }
}

/// Isomorphism-class representatives and chosen isos `x -> rep(x)`.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub reps: Vec<Obj>,
    pub class_of: Vec<usize>,
    pub to_rep: Vec<usize>,
    pub from_rep: Vec<usize>,
}

pub fn skeleton(c: &FiniteCategory) -> Skeleton {
    let mut reps: Vec<Obj> = Vec::new();
    let mut class_of = Vec::new();
    let mut to_rep = Vec::new();
    let mut from_rep = Vec::new();
    for x in c.objects() {
        let found = reps.iter().enumerate().find_map(|(i, &r)| find_iso(c, x, r).map(|f| (i, f)));
        let (i, iso) = found.unwrap_or_else(|| {
            reps.push(x);
            (reps.len() - 1, c.identity(x))
        });
        class_of.push(i);
        from_rep.push(inverse(c, &iso).unwrap());
        to_rep.push(iso);
    }
    Skeleton { reps, class_of, to_rep, from_rep }
}

/// Witness functors `forward: C -> D`, `backward: D -> C` of an equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub forward: Functor,
    pub backward: Functor,
}

impl Equivalence {
    /// Both functors are functorial, fully faithful and essentially surjective.
    pub fn verify(&self, c: &FiniteCategory, d: &FiniteCategory) -> bool {
        let ok = |f: &Functor, s: &FiniteCategory, t: &FiniteCategory| {
            f.check(s, t).is_empty() && f.is_faithful(s) && f.is_full(s, t) && f.is_essentially_surjective(t)
        };
        ok(&self.forward, c, d) && ok(&self.backward, d, c)
    }
}

/// Search for an equivalence by matching skeleta up to isomorphism.
pub fn find_equivalence(c: &FiniteCategory, d: &FiniteCategory) -> Option<Equivalence> {
    let (sc, sd) = (skeleton(c), skeleton(d));
    if sc.reps.len() != sd.reps.len() {
        return None;
    }
    let (obj_map, arr_map) = skeleton_isomorphism(c, &sc.reps, d, &sd.reps)?;
    let inv_obj: HashMap<Obj, Obj> = obj_map.iter().map(|(a, b)| (*b, *a)).collect();
    let inv_arr: HashMap<usize, usize> = arr_map.iter().map(|(a, b)| (*b, *a)).collect();
    let forward = transport(c, &sc, d, &obj_map, &arr_map);
    let backward = transport(d, &sd, c, &inv_obj, &inv_arr);
    let eq = Equivalence { forward, backward };
    eq.verify(c, d).then_some(eq)
}

fn transport(c: &FiniteCategory, sk: &Skeleton, d: &FiniteCategory, obj_map: &HashMap<Obj, Obj>, arr_map: &HashMap<usize, usize>) -> Functor {
    let _ = d;
    let objects = c.objects().map(|x| obj_map[&sk.reps[sk.class_of[x]]]).collect();
    let arrows = (0..c.arrow_count())
        .map(|f| {
            let (x, y) = (c.dom(&f), c.cod(&f));
            let core = c.compose(&sk.to_rep[y], &c.compose(&f, &sk.from_rep[x]));
            arr_map[&core]
        })
        .collect();
    Functor { objects, arrows }
}

/// Isomorphism between the full subcategories on `a_objs` and `b_objs`.
pub fn skeleton_isomorphism(a: &FiniteCategory, a_objs: &[Obj], b: &FiniteCategory, b_objs: &[Obj]) -> Option<(HashMap<Obj, Obj>, HashMap<usize, usize>)> {
    let n = a_objs.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let arrows: Vec<usize> = a_objs.iter().flat_map(|&x| a_objs.iter().flat_map(move |&y| a.hom(x, y).into_owned())).collect();
    fn objects_rec(
        i: usize,
        a: &FiniteCategory,
        a_objs: &[Obj],
        b: &FiniteCategory,
        b_objs: &[Obj],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        arrows: &[usize],
    ) -> Option<HashMap<usize, usize>> {
        if i == a_objs.len() {
            let om: HashMap<Obj, Obj> = (0..a_objs.len()).map(|k| (a_objs[k], b_objs[assign[k].unwrap()])).collect();
            return ArrowMatcher::new(a, b, &om, arrows).solve();
        }
        for j in 0..b_objs.len() {
            if used[j] {
                continue;
            }
            let consistent = (0..=i).all(|k| {
                let kj = if k == i { j } else { assign[k].unwrap() };
                a.hom(a_objs[i], a_objs[k]).len() == b.hom(b_objs[j], b_objs[kj]).len()
                    && a.hom(a_objs[k], a_objs[i]).len() == b.hom(b_objs[kj], b_objs[j]).len()
            });
            if !consistent {
                continue;
            }
            assign[i] = Some(j);
            used[j] = true;
            if let Some(m) = objects_rec(i + 1, a, a_objs, b, b_objs, assign, used, arrows) {
                return Some(m);
            }
            assign[i] = None;
            used[j] = false;
        }
        None
    }
    let arr = objects_rec(0, a, a_objs, b, b_objs, &mut assign, &mut used, &arrows)?;
    let om = (0..n).map(|k| (a_objs[k], b_objs[assign[k].unwrap()])).collect();
    Some((om, arr))
}

/// Backtracking search for a composition-preserving bijection of arrows,
/// propagating forced composites after every choice.
struct ArrowMatcher<'a> {
    a: &'a FiniteCategory,
    b: &'a FiniteCategory,
    objs: &'a HashMap<Obj, Obj>,
    arrows: &'a [usize],
    map: HashMap<usize, usize>,
    used: HashSet<usize>,
    trail: Vec<usize>,
}

impl<'a> ArrowMatcher<'a> {
    fn new(a: &'a FiniteCategory, b: &'a FiniteCategory, objs: &'a HashMap<Obj, Obj>, arrows: &'a [usize]) -> Self {
        ArrowMatcher { a, b, objs, arrows, map: HashMap::new(), used: HashSet::new(), trail: Vec::new() }
    }

    fn solve(mut self) -> Option<HashMap<usize, usize>> {
        for (&x, &y) in self.objs.iter() {
            if !self.assign(self.a.identity(x), self.b.identity(y)) {
                return None;
            }
        }
        self.search(0).then_some(self.map)
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().unwrap();
            let g = self.map.remove(&f).unwrap();
            self.used.remove(&g);
        }
    }

    /// Assign `f ↦ g` and close under composition with assigned arrows.
    fn assign(&mut self, f: usize, g: usize) -> bool {
        let mut queue = vec![(f, g)];
        while let Some((f, g)) = queue.pop() {
            match self.map.get(&f) {
                Some(&h) if h == g => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used.contains(&g) {
                return false;
            }
            self.map.insert(f, g);
            self.used.insert(g);
            self.trail.push(f);
            let known: Vec<(usize, usize)> = self.map.iter().map(|(k, v)| (*k, *v)).collect();
            for (h, hv) in known {
                if let Some(c) = self.a.try_compose(h, f) {
                    if self.objs.contains_key(&self.a.cod(&c)) {
                        queue.push((c, self.b.compose(&hv, &g)));
                    }
                }
                if let Some(c) = self.a.try_compose(f, h) {
                    if self.objs.contains_key(&self.a.dom(&c)) {
                        queue.push((c, self.b.compose(&g, &hv)));
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, start: usize) -> bool {
        let Some(pos) = (start..self.arrows.len()).find(|&i| !self.map.contains_key(&self.arrows[i])) else {
            return true;
        };
        let f = self.arrows[pos];
        let (x, y) = (self.objs[&self.a.dom(&f)], self.objs[&self.a.cod(&f)]);
        let candidates = self.b.hom(x, y).into_owned();
        for g in candidates {
            if self.used.contains(&g) {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(f, g) && self.search(pos + 1) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}
