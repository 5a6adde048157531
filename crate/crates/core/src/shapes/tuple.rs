use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fibration::{fiber_map_failures, lattice_violations, verify_fibration, Fibration};
use super::theory::{mono_model, subset_inclusions, subset_theory, MonoFibration};
use super::tope::{Axiom, IntervalData};
use crate::fincat::builtins::{finset, power};
use crate::fincat::limits::{diagrams, is_colimit, is_limit, parallel, terminal};
use crate::fincat::props::{product_map, subobject_lattice, verify_exponential, SubobjectLattice};
use crate::fincat::{exponential, is_mono, subobject_classifier, subterminal_poset, Category, Cone, Diagram, FiniteCategory, Functor, Obj, Shape};
use crate::model::{right_properness_failures, verify_model_structure, ClassSpec, ModelStructure};

/// A model structure `M`, a category `V`, a fibered theory `T1 -> T0` with a
/// model `(m0, m1)` in `Mono(V)`, and a functor `ω̄ : V -> M`.
#[derive(Clone, Debug)]
pub struct ShapesTuple {
    pub m: FiniteCategory,
    pub model: ModelStructure,
    pub v: FiniteCategory,
    pub theory: Fibration,
    pub m0: Functor,
    pub mono: MonoFibration,
    pub m1: Functor,
    pub omega: Functor,
    pub interval: Option<IntervalData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseFailure {
    pub clause: u8,
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapesReport {
    pub failures: Vec<ClauseFailure>,
    /// Counts and truncation notes that are not pass/fail.
    pub info: Vec<String>,
}

impl ShapesReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn clause_ok(&self, clause: u8) -> bool {
        self.failures.iter().all(|f| f.clause != clause)
    }

    pub fn first(&self, clause: u8) -> Option<&ClauseFailure> {
        self.failures.iter().find(|f| f.clause == clause)
    }

    fn fail(&mut self, clause: u8, check: &str, witness: impl Into<String>) {
        self.failures.push(ClauseFailure { clause, check: check.into(), witness: witness.into() });
    }
}

/// `e` is the coequalizer of some parallel pair into its domain.
pub fn is_regular_epi(c: &FiniteCategory, e: usize) -> bool {
    let x = c.dom(&e);
    c.objects().any(|a| {
        let hom = c.hom(a, x);
        hom.iter().any(|g| {
            let eg = c.compose(&e, g);
            hom.iter().filter(|h| c.compose(&e, h) == eg).any(|h| is_colimit(c, &parallel(c, g, h), &Cone { apex: c.cod(&e), legs: vec![eg, e] }))
        })
    })
}

fn map_cone(f: &Functor, cone: &Cone<usize>) -> Cone<usize> {
    Cone { apex: f.objects[cone.apex], legs: cone.legs.iter().map(|&l| f.apply(l)).collect() }
}

/// Limits of every standard shape that exist in `src` go to limits in `tgt`.
pub fn limit_failures(src: &FiniteCategory, tgt: &FiniteCategory, f: &Functor) -> Vec<String> {
    Shape::ALL
        .iter()
        .flat_map(|&shape| diagrams(src, shape).into_iter().map(move |d| (shape, d)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|(shape, d)| {
            let l = crate::fincat::limit(src, &d)?;
            let image = d.map(|o| f.objects[o], |a| f.apply(*a));
            (!is_limit(tgt, &image, &map_cone(f, &l))).then(|| {
                let objs: Vec<String> = d.objects.iter().map(|&o| src.object_name(o)).collect();
                let arrs: Vec<String> = d.edges.iter().map(|e| src.arrow_name(&e.2)).collect();
                format!("{} [{}] [{}]", shape.name(), objs.join(","), arrs.join(","))
            })
        })
        .collect()
}

pub fn regular_epi_failures(src: &FiniteCategory, tgt: &FiniteCategory, f: &Functor) -> Vec<String> {
    (0..src.arrow_count()).into_par_iter().filter(|&e| is_regular_epi(src, e) && !is_regular_epi(tgt, f.apply(e))).map(|e| src.arrow_name(&e)).collect()
}

/// Binary joins and the bottom of every subobject lattice are preserved.
pub fn union_failures(src: &FiniteCategory, tgt: &FiniteCategory, f: &Functor) -> Vec<String> {
    let targets: BTreeMap<Obj, SubobjectLattice<usize>> = src.objects().map(|x| (f.objects[x], subobject_lattice(tgt, f.objects[x]))).collect();
    let mut out = Vec::new();
    for x in src.objects() {
        let sub = subobject_lattice(src, x);
        let tsub = &targets[&f.objects[x]];
        let image = |i: usize| tsub.index_of(tgt, &f.apply(sub.monos[i]));
        let Some(ims) = (0..sub.monos.len()).map(image).collect::<Option<Vec<_>>>() else {
            out.push(format!("a subobject of {} is not sent to a mono", src.object_name(x)));
            continue;
        };
        if let Some(b) = sub.order.bottom() {
            if tsub.order.bottom() != Some(ims[b]) {
                out.push(format!("empty union in {}", src.object_name(x)));
            }
        }
        for i in 0..ims.len() {
            for j in i + 1..ims.len() {
                let Some(k) = sub.order.join(i, j) else { continue };
                if tsub.order.join(ims[i], ims[j]) != Some(ims[k]) {
                    out.push(format!("{} ∪ {}", sub.order.names[i], sub.order.names[j]));
                }
            }
        }
    }
    out
}

fn check_underlying_topos(t: &ShapesTuple, report: &mut ShapesReport) {
    let (m, model) = (&t.m, &t.model);
    for (w, p) in right_properness_failures(m, model) {
        report.fail(1, "right proper", format!("{w} pulled back along {p}"));
    }
    for f in model.cofibrations.arrows() {
        if !is_mono(m, &f) {
            report.fail(1, "cofibrations are monos", m.arrow_name(&f));
        }
    }
    let mr = verify_model_structure(m, model);
    if !mr.is_ok() {
        report.fail(1, "model structure", format!("{mr:?}"));
    }
    let Some(one) = terminal(m) else {
        report.fail(1, "terminal object", "none");
        return;
    };
    match subobject_classifier(m) {
        Some(sc) => report.info.push(format!("subobject classifier {}", m.object_name(sc.omega))),
        None => report.fail(1, "subobject classifier", "none"),
    }
    let st = subterminal_poset(m);
    for e in 0..st.len() {
        let u = st.object(e);
        for y in m.objects() {
            match exponential(m, u, y) {
                Some(exp) if verify_exponential(m, u, y, &exp) => {}
                _ => report.fail(1, "exponential by a subterminal", format!("{}^{}", m.object_name(y), m.object_name(u))),
            }
        }
    }
    let pairs = m.objects().flat_map(|x| m.objects().map(move |y| (x, y))).collect::<Vec<_>>();
    let found = pairs.par_iter().filter(|&&(x, y)| exponential(m, x, y).is_some()).count();
    report.info.push(format!("terminal {}; exponentials present for {found} of {} pairs in the fragment", m.object_name(one), pairs.len()));
}

fn check_theory_model(t: &ShapesTuple, report: &mut ShapesReport) {
    let (th, mono, v) = (&t.theory, &t.mono.fibration, &t.v);
    let fr = verify_fibration(th);
    for w in &fr.functor_violations {
        report.fail(2, "theory projection is a functor", w.clone());
    }
    for (f, e) in &fr.missing_lifts {
        report.fail(2, "theory is a fibration", format!("no cartesian lift of {f} at {e}"));
    }
    let fibers = th.fibers();
    for fib in &fibers {
        for msg in lattice_violations(&fib.order) {
            report.fail(2, "fibers are lattices", format!("over {}: {msg}", th.base.object_name(fib.base)));
        }
    }
    for w in t.m0.check(&th.base, v) {
        report.fail(2, "m0 is a functor", format!("{w:?}"));
    }
    for w in t.m1.check(&th.total, &mono.total) {
        report.fail(2, "m1 is a functor", format!("{w:?}"));
    }
    if !report.clause_ok(2) {
        return;
    }
    for d in th.total.objects() {
        if mono.projection.objects[t.m1.objects[d]] != t.m0.objects[th.projection.objects[d]] {
            report.fail(2, "square commutes", th.total.object_name(d));
        }
    }
    for a in 0..th.total.arrow_count() {
        if mono.projection.apply(t.m1.apply(a)) != t.m0.apply(th.projection.apply(a)) {
            report.fail(2, "square commutes", th.total.arrow_name(&a));
        }
    }
    let t0 = &th.base;
    for x in t0.objects() {
        for y in t0.objects() {
            let Some(p) = t0.product(x, y) else { continue };
            let cone = Cone { apex: t.m0.objects[p.apex], legs: vec![t.m0.apply(p.left), t.m0.apply(p.right)] };
            if !is_limit(v, &Diagram::pair(t.m0.objects[x], t.m0.objects[y]), &cone) {
                report.fail(2, "m0 preserves products", format!("{} × {}", t0.object_name(x), t0.object_name(y)));
            }
        }
    }
    let cartesian = th.cartesian_arrows();
    let lost: Vec<usize> = (0..cartesian.len()).into_par_iter().filter(|&a| cartesian[a] && !mono.is_cartesian(t.m1.apply(a))).collect();
    for a in lost {
        report.fail(2, "m1 preserves cartesian arrows", th.total.arrow_name(&a));
    }
    let mono_fibers = mono.fibers();
    for b in fiber_map_failures(&fibers, &mono_fibers, &t.m0.objects, &t.m1.objects) {
        report.fail(2, "m1 preserves fiber lattices", b);
    }
}

fn check_coherent(t: &ShapesTuple, report: &mut ShapesReport) {
    let (v, m, w) = (&t.v, &t.m, &t.omega);
    let violations = w.check(v, m);
    for x in &violations {
        report.fail(3, "ω̄ is a functor", format!("{x:?}"));
    }
    if !violations.is_empty() {
        return;
    }
    for x in limit_failures(v, m, w) {
        report.fail(3, "ω̄ preserves finite limits", x);
    }
    for x in regular_epi_failures(v, m, w) {
        report.fail(3, "ω̄ preserves regular epis", x);
    }
    for x in union_failures(v, m, w) {
        report.fail(3, "ω̄ preserves finite unions", x);
    }
}

/// `(U, f)` with `f ∈ C ∩ W` but `ω̄(U) × f ∉ C ∩ W`. Missing products are skipped.
pub fn acyclicity_failures(t: &ShapesTuple) -> (Vec<(String, String)>, usize) {
    let (m, model) = (&t.m, &t.model);
    let trivial = model.cofibrations.intersect(&model.weak).arrows();
    let mut skipped = 0;
    let mut out = Vec::new();
    for u in t.v.objects() {
        let wu = t.omega.objects[u];
        for &f in &trivial {
            let (Some(src), Some(tgt)) = (m.product(wu, m.dom(&f)), m.product(wu, m.cod(&f))) else {
                skipped += 1;
                continue;
            };
            let g = product_map(m, &tgt, &src, &m.identity(wu), &f).expect("product map");
            if !(model.cofibrations.contains(g) && model.weak.contains(g)) {
                out.push((t.v.object_name(u), m.arrow_name(&f)));
            }
        }
    }
    (out, skipped)
}

/// All four clauses, each failure with a witness.
pub fn validate_shapes_tuple(t: &ShapesTuple) -> ShapesReport {
    let mut report = ShapesReport::default();
    check_underlying_topos(t, &mut report);
    check_theory_model(t, &mut report);
    check_coherent(t, &mut report);
    let (bad, skipped) = acyclicity_failures(t);
    for (u, f) in bad {
        report.fail(4, "ω̄(U) × - preserves trivial cofibrations", format!("U = {u}, f = {f}"));
    }
    if skipped > 0 {
        report.info.push(format!("{skipped} products ω̄(U) × f missing from the fragment"));
    }
    report
}

/// The interval of the built-in tuple and its packaged axioms.
///
/// The axiom list is a reconstruction in the lattice reading: endpoints pull
/// the two atoms back to top and bottom, the atoms are disjoint and cover,
/// and reindexing along `!` preserves top and bottom.
pub fn interval_fragment_interval() -> IntervalData {
    let axioms = [
        "zero_in_is0: pull(0, is0) = top(1)",
        "one_in_is1: pull(1, is1) = top(1)",
        "zero_not_is1: pull(0, is1) = bot(1)",
        "one_not_is0: pull(1, is0) = bot(1)",
        "disjoint: meet(is0, is1) = bot(I)",
        "cover: join(is0, is1) = top(I)",
        "bang_top: pull(!, top(1)) = top(I)",
        "bang_bot: pull(!, bot(1)) = bot(I)",
    ];
    IntervalData {
        interval: "(2,2)".into(),
        point: "(1,1)".into(),
        zero: "(1>2:0,1>2:0)".into(),
        one: "(1>2:1,1>2:1)".into(),
        bang: "(2>1:00,2>1:00)".into(),
        atoms: [("is0", "(2:{0},2:{0})"), ("is1", "(2:{1},2:{1})")].into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        axioms: axioms.iter().map(|s| s.parse::<Axiom>().expect("packaged axiom")).collect(),
    }
}

impl ShapesTuple {
    /// Assemble a tuple whose `m1` is determined by a mono for each object of `T1`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m: FiniteCategory,
        model: ModelStructure,
        v: FiniteCategory,
        theory: Fibration,
        m0: Functor,
        object_monos: &[usize],
        omega: Functor,
        interval: Option<IntervalData>,
    ) -> Result<Self, String> {
        let mono = MonoFibration::new(&v);
        let m1 = mono_model(&theory, &mono, &m0, object_monos)?;
        Ok(ShapesTuple { m, model, v, theory, m0, mono, m1, omega, interval })
    }

    /// The mono of `V` that `m1` assigns to each object of `T1`.
    pub fn object_monos(&self) -> Vec<usize> {
        self.m1.objects.iter().map(|&o| self.mono.monos[o]).collect()
    }

    /// `M = V = T0 = FinSet≤2 × FinSet≤2` with cofibrations the isos and every
    /// arrow a fibration and weak equivalence; `T1` is subsets of points and
    /// `m1` sends each subset to its inclusion.
    pub fn interval_fragment() -> Self {
        let c = power(&finset(2), 2);
        let model = ModelStructure::from_specs(&c, &ClassSpec::Isos, &ClassSpec::All, &ClassSpec::All).expect("model");
        Self::interval_fragment_with(model)
    }

    /// The built-in tuple with another model structure on `M`.
    pub fn interval_fragment_with(model: ModelStructure) -> Self {
        let c = power(&finset(2), 2);
        let theory = subset_theory(2, 2);
        let monos = subset_inclusions(&theory, &c);
        let id = Functor::identity(&c);
        ShapesTuple::new(c.clone(), model, c, theory, id.clone(), &monos, id, Some(interval_fragment_interval())).expect("built-in tuple")
    }
}
