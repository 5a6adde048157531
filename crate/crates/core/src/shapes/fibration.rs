use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fincat::{Category, FiniteCategory, FinitePoset, Functor, Obj};

/// A functor `P : total -> base` meant to be a Grothendieck fibration.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub total: FiniteCategory,
    pub base: FiniteCategory,
    pub projection: Functor,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub functor_violations: Vec<String>,
    /// `(f, e)`: no cartesian arrow over `f` ends at `e`.
    pub missing_lifts: Vec<(String, String)>,
}

impl FibrationReport {
    pub fn is_ok(&self) -> bool {
        self.functor_violations.is_empty() && self.missing_lifts.is_empty()
    }
}

impl Fibration {
    pub fn new(total: FiniteCategory, base: FiniteCategory, projection: Functor) -> Self {
        Fibration { total, base, projection }
    }

    /// The identity fibration on `c`.
    pub fn identity(c: &FiniteCategory) -> Self {
        Fibration { total: c.clone(), base: c.clone(), projection: Functor::identity(c) }
    }

    /// Objects of the total category over `x`.
    pub fn over(&self, x: Obj) -> Vec<Obj> {
        self.total.objects().filter(|&d| self.projection.objects[d] == x).collect()
    }

    pub fn is_vertical(&self, a: usize) -> bool {
        let x = self.projection.objects[self.total.dom(&a)];
        self.projection.apply(a) == self.base.identity(x)
    }

    /// `ℓ : d -> e` is cartesian iff for every `d'` the map
    /// `k ↦ (ℓ ∘ k, P k)` is a bijection from `hom(d', d)` onto the pairs
    /// `(g : d' -> e, h : P d' -> P d)` with `P ℓ ∘ h = P g`.
    pub fn is_cartesian(&self, l: usize) -> bool {
        let (t, b, p) = (&self.total, &self.base, &self.projection);
        let (d, e) = (t.dom(&l), t.cod(&l));
        let f = p.apply(l);
        let x = p.objects[d];
        t.objects().all(|d2| {
            let x2 = p.objects[d2];
            let mut by_composite: HashMap<usize, usize> = HashMap::new();
            for h in b.hom(x2, x).iter() {
                *by_composite.entry(b.compose(&f, h)).or_default() += 1;
            }
            let pairs: usize = t.hom(d2, e).iter().map(|g| by_composite.get(&p.apply(*g)).copied().unwrap_or(0)).sum();
            let ks = t.hom(d2, d);
            if ks.len() != pairs {
                return false;
            }
            let mut seen = HashSet::new();
            ks.iter().all(|k| seen.insert((t.compose(&l, k), p.apply(*k))))
        })
    }

    /// A cartesian arrow over `f` ending at `e`.
    pub fn cartesian_lift(&self, f: usize, e: Obj) -> Option<usize> {
        let t = &self.total;
        let x = self.base.dom(&f);
        self.over(x).into_iter().find_map(|d| t.hom(d, e).iter().copied().find(|&a| self.projection.apply(a) == f && self.is_cartesian(a)))
    }

    pub fn cartesian_arrows(&self) -> Vec<bool> {
        (0..self.total.arrow_count()).into_par_iter().map(|a| self.is_cartesian(a)).collect()
    }

    pub fn fiber(&self, x: Obj) -> Fiber {
        let t = &self.total;
        let objects = self.over(x);
        let below = |a: Obj, b: Obj| t.hom(a, b).iter().any(|&f| self.is_vertical(f));
        let mut reps: Vec<Obj> = Vec::new();
        let mut class_of = HashMap::new();
        for &d in &objects {
            match reps.iter().position(|&r| below(d, r) && below(r, d)) {
                Some(i) => {
                    class_of.insert(d, i);
                }
                None => {
                    class_of.insert(d, reps.len());
                    reps.push(d);
                }
            }
        }
        let names = reps.iter().map(|&r| t.object_name(r)).collect();
        let order = FinitePoset::from_fn(names, |i, j| below(reps[i], reps[j]));
        Fiber { base: x, reps, class_of, order }
    }

    pub fn fibers(&self) -> Vec<Fiber> {
        self.base.objects().collect::<Vec<_>>().into_par_iter().map(|x| self.fiber(x)).collect()
    }

    /// `f^*(e)` as an element of the fiber over `dom f`.
    pub fn pull(&self, f: usize, e: Obj, fibers: &[Fiber]) -> Option<usize> {
        let l = self.cartesian_lift(f, e)?;
        fibers[self.base.dom(&f)].class_of.get(&self.total.dom(&l)).copied()
    }
}

/// Every arrow of the base has a cartesian lift at every object over its codomain.
pub fn verify_fibration(p: &Fibration) -> FibrationReport {
    let mut report =
        FibrationReport { functor_violations: p.projection.check(&p.total, &p.base).iter().map(|v| format!("{v:?}")).collect(), ..Default::default() };
    if !report.functor_violations.is_empty() {
        return report;
    }
    let jobs: Vec<(usize, Obj)> = (0..p.base.arrow_count()).flat_map(|f| p.over(p.base.cod(&f)).into_iter().map(move |e| (f, e))).collect();
    report.missing_lifts =
        jobs.into_par_iter().filter(|&(f, e)| p.cartesian_lift(f, e).is_none()).map(|(f, e)| (p.base.arrow_name(&f), p.total.object_name(e))).collect();
    report
}

/// The posetal reflection of the vertical arrows over one base object.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub base: Obj,
    /// One total object per element.
    pub reps: Vec<Obj>,
    pub class_of: HashMap<Obj, usize>,
    pub order: FinitePoset,
}

impl Fiber {
    pub fn element(&self, d: Obj) -> Option<usize> {
        self.class_of.get(&d).copied()
    }
}

/// Failures of the bounded-lattice laws, as readable strings.
pub fn lattice_violations(p: &FinitePoset) -> Vec<String> {
    let mut out = Vec::new();
    if !p.is_partial_order() {
        out.push("not a partial order".into());
        return out;
    }
    if p.top().is_none() {
        out.push("no top".into());
    }
    if p.bottom().is_none() {
        out.push("no bottom".into());
    }
    let n = p.len();
    for a in 0..n {
        for b in 0..n {
            let (Some(m), Some(j)) = (p.meet(a, b), p.join(a, b)) else {
                out.push(format!("missing meet or join of {} and {}", p.names[a], p.names[b]));
                continue;
            };
            let absorb_meet = p.join(a, b).and_then(|j| p.meet(a, j)) == Some(a);
            let absorb_join = p.meet(a, b).and_then(|m| p.join(a, m)) == Some(a);
            if !absorb_meet || !absorb_join {
                out.push(format!("absorption fails for {} and {} (meet {}, join {})", p.names[a], p.names[b], p.names[m], p.names[j]));
            }
        }
    }
    out
}

/// Where a map of fibers loses top, bottom, a binary meet or a binary join.
///
/// `base` and `total` are the object maps; `src` and `tgt` are all fibers,
/// indexed by base object.
pub fn fiber_map_failures(src: &[Fiber], tgt: &[Fiber], base: &[Obj], total: &[Obj]) -> Vec<String> {
    let mut bad = Vec::new();
    for fib in src {
        let target = &tgt[base[fib.base]];
        let Some(e) = fib.reps.iter().map(|&d| target.element(total[d])).collect::<Option<Vec<usize>>>() else {
            bad.push(format!("fiber over object {} leaves its target fiber", fib.base));
            continue;
        };
        let (o, q) = (&fib.order, &target.order);
        if o.top().map(|i| e[i]) != q.top() || o.bottom().map(|i| e[i]) != q.bottom() {
            bad.push(format!("top or bottom over object {}", fib.base));
        }
        for i in 0..e.len() {
            for j in 0..e.len() {
                if o.meet(i, j).map(|k| e[k]) != q.meet(e[i], e[j]) {
                    bad.push(format!("meet of {} and {}", o.names[i], o.names[j]));
                }
                if o.join(i, j).map(|k| e[k]) != q.join(e[i], e[j]) {
                    bad.push(format!("join of {} and {}", o.names[i], o.names[j]));
                }
            }
        }
    }
    bad
}
