use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fibration::{fiber_map_failures, verify_fibration, Fibration, FibrationReport};
use super::theory::MonoFibration;
use super::tope::{check_strict_interval, IntervalReport, TermError};
use super::tuple::{limit_failures, regular_epi_failures, union_failures, validate_shapes_tuple, ShapesReport, ShapesTuple};
use crate::filtquot::{filter_image, filter_quotient, induced_functor, Filter, FilterQuotient, FilterReport, InducedError, QuotientError, QuotientSide};
use crate::fincat::{find_equivalence, subterminal_poset, Category, FiniteCategory, Functor, Obj, SubterminalPoset};
use crate::model::{transfer_model_structure, validate_model_filter, ModelFilterReport, TransferError};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ShapesError {
    #[error("top of the fiber over {0} is not subterminal")]
    TopNotSubterminal(String),
    #[error("preimage filter is invalid: {0:?}")]
    PreimageFilter(FilterReport),
    #[error("{stage}: {source}")]
    Quotient { stage: &'static str, source: QuotientError },
    #[error("{stage}: {source}")]
    Induced { stage: &'static str, source: InducedError },
    #[error("{stage}: {source}")]
    Transfer { stage: &'static str, source: TransferError },
    #[error("{0} does not send its filter into the next one: {1}")]
    Incompatible(&'static str, InducedError),
    #[error("not a model filter: {0:?}")]
    NotModelFilter(ModelFilterReport),
    #[error("the tuple fails clause {clause}: {check} at {witness}")]
    InvalidTuple { clause: u8, check: String, witness: String },
    #[error("interval: {0}")]
    Interval(TermError),
    #[error("quotient tuple: {0}")]
    Assemble(String),
}

/// The filter on `Sub(1)` of the total category generated by the fiber tops over members of `Φ`.
pub fn preimage_filter(p: &Fibration, base: &SubterminalPoset, filter: &Filter, total: &SubterminalPoset) -> Result<Filter, ShapesError> {
    let mut generators = Vec::new();
    for e in filter.members() {
        let u = base.object(e);
        let fiber = p.fiber(u);
        let top = fiber.order.top().map(|i| fiber.reps[i]);
        let el = top.and_then(|d| total.element_of(d)).ok_or_else(|| ShapesError::TopNotSubterminal(p.base.object_name(u)))?;
        generators.push(el);
    }
    let members: Vec<usize> = (0..total.len()).filter(|&x| generators.iter().any(|&g| total.poset.leq(g, x))).collect();
    Filter::new(&total.poset, &members).map_err(ShapesError::PreimageFilter)
}

/// A category with subterminals, a filter and the quotient.
#[derive(Clone, Debug)]
pub struct Quotiented {
    pub category: FiniteCategory,
    pub subterminals: SubterminalPoset,
    pub filter: Filter,
    pub quotient: FilterQuotient,
}

impl Quotiented {
    pub fn new(category: &FiniteCategory, subterminals: SubterminalPoset, filter: Filter, stage: &'static str) -> Result<Self, ShapesError> {
        let quotient = filter_quotient(category, &subterminals, &filter).map_err(|source| ShapesError::Quotient { stage, source })?;
        Ok(Quotiented { category: category.clone(), subterminals, filter, quotient })
    }

    pub fn side(&self) -> QuotientSide<'_> {
        QuotientSide { category: &self.category, subterminals: &self.subterminals, filter: &self.filter, quotient: &self.quotient }
    }
}

fn induce(src: &Quotiented, tgt: &Quotiented, f: &Functor, stage: &'static str) -> Result<Functor, ShapesError> {
    induced_functor(src.side(), tgt.side(), f).map_err(|source| ShapesError::Induced { stage, source })
}

/// `P_Φ : D_Φ -> C_Φ` for the preimage filter on `D`, with its fibration check.
#[derive(Clone, Debug)]
pub struct FibrationQuotient {
    pub total: Quotiented,
    pub base: Quotiented,
    pub fibration: Fibration,
    pub report: FibrationReport,
}

pub fn fibration_quotient(p: &Fibration, base: &SubterminalPoset, filter: &Filter) -> Result<FibrationQuotient, ShapesError> {
    let total_st = subterminal_poset(&p.total);
    let total_filter = preimage_filter(p, base, filter, &total_st)?;
    let total = Quotiented::new(&p.total, total_st, total_filter, "total quotient")?;
    let base = Quotiented::new(&p.base, base.clone(), filter.clone(), "base quotient")?;
    let projection = induce(&total, &base, &p.projection, "induced projection")?;
    let fibration = Fibration::new(total.quotient.category.clone(), base.quotient.category.clone(), projection);
    let report = verify_fibration(&fibration);
    Ok(FibrationQuotient { total, base, fibration, report })
}

/// Quotienting along `Q ∘ P` agrees with quotienting along `Q`, then along `P`
/// with the preimage filter: same filter on the total category and
/// `(Q ∘ P)_Φ = Q_Φ ∘ P_Ψ`.
pub fn fibration_quotient_composes(p: &Fibration, q: &Fibration, base: &SubterminalPoset, filter: &Filter) -> Result<bool, ShapesError> {
    let composite = Fibration::new(p.total.clone(), q.base.clone(), p.projection.then(&q.projection));
    let whole = fibration_quotient(&composite, base, filter)?;
    let lower = fibration_quotient(q, base, filter)?;
    let upper = fibration_quotient(p, &lower.total.subterminals, &lower.total.filter)?;
    Ok(whole.total.filter == upper.total.filter && whole.fibration.projection == upper.fibration.projection.then(&lower.fibration.projection))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularQuotientReport {
    pub upstream: Vec<String>,
    pub limits: Vec<String>,
    pub regular_epis: Vec<String>,
    pub unions: Vec<String>,
}

impl RegularQuotientReport {
    pub fn is_ok(&self) -> bool {
        self.limits.is_empty() && self.regular_epis.is_empty() && self.unions.is_empty()
    }
}

/// The functor induced on quotients by `F : V -> W`, checked for finite
/// limits, regular epis and finite unions. `upstream` lists what `F` itself fails.
pub fn regular_quotient_check(
    f: &Functor,
    v: &FiniteCategory,
    v_filter: &Filter,
    w: &FiniteCategory,
    w_filter: &Filter,
) -> Result<(Functor, RegularQuotientReport), ShapesError> {
    let (vst, wst) = (subterminal_poset(v), subterminal_poset(w));
    filter_image(v, &vst, v_filter, &wst, w_filter, f).map_err(|e| ShapesError::Incompatible("functor", e))?;
    let src = Quotiented::new(v, vst, v_filter.clone(), "source quotient")?;
    let tgt = Quotiented::new(w, wst, w_filter.clone(), "target quotient")?;
    let g = induce(&src, &tgt, f, "induced functor")?;
    let (a, b) = (&src.quotient.category, &tgt.quotient.category);
    let mut upstream = limit_failures(v, w, f);
    upstream.extend(regular_epi_failures(v, w, f));
    upstream.extend(union_failures(v, w, f));
    let report =
        RegularQuotientReport { upstream, limits: limit_failures(a, b, &g), regular_epis: regular_epi_failures(a, b, &g), unions: union_failures(a, b, &g) };
    Ok((g, report))
}

/// Filters on the subterminals of `T0`, `V` and `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapesFilters {
    pub theory: Filter,
    pub v: Filter,
    pub m: Filter,
}

impl ShapesFilters {
    /// The principal filter on the subterminal with this name, in all three categories.
    pub fn principal(t: &ShapesTuple, name: &str) -> Option<Self> {
        let one = |c: &FiniteCategory| {
            let st = subterminal_poset(c);
            st.find(name).map(|e| Filter::principal(&st.poset, e))
        };
        Some(ShapesFilters { theory: one(&t.theory.base)?, v: one(&t.v)?, m: one(&t.m)? })
    }
}

#[derive(Clone, Debug)]
pub struct QuotientShapes {
    pub tuple: ShapesTuple,
    pub theory: FibrationQuotient,
    pub mono: FibrationQuotient,
    /// `Mono(V)_Φ ≃ Mono(V_Φ)`.
    pub mono_equivalence: bool,
    /// `P ∘ m1_Φ = m0_Φ ∘ P_Φ` for the quotient of `m1` into `Mono(V)_Φ`.
    pub induced_square: bool,
    /// Quotient projections of `T` lose no fiber top, bottom, meet or join.
    pub projection_fiber_failures: Vec<String>,
    pub shapes: ShapesReport,
    pub interval: Option<IntervalReport>,
}

impl QuotientShapes {
    pub fn is_ok(&self) -> bool {
        self.theory.report.is_ok()
            && self.mono.report.is_ok()
            && self.mono_equivalence
            && self.induced_square
            && self.projection_fiber_failures.is_empty()
            && self.shapes.is_ok()
            && self.interval.as_ref().is_none_or(IntervalReport::is_ok)
    }
}

/// Quotient every component of a validated tuple and validate the result.
pub fn quotient_shapes_tuple(t: &ShapesTuple, filters: &ShapesFilters) -> Result<QuotientShapes, ShapesError> {
    if let Some(f) = validate_shapes_tuple(t).failures.into_iter().next() {
        return Err(ShapesError::InvalidTuple { clause: f.clause, check: f.check, witness: f.witness });
    }
    let (tst, vst, mst) = (subterminal_poset(&t.theory.base), subterminal_poset(&t.v), subterminal_poset(&t.m));
    filter_image(&t.theory.base, &tst, &filters.theory, &vst, &filters.v, &t.m0).map_err(|e| ShapesError::Incompatible("m0", e))?;
    filter_image(&t.v, &vst, &filters.v, &mst, &filters.m, &t.omega).map_err(|e| ShapesError::Incompatible("ω̄", e))?;
    let mf = validate_model_filter(&t.m, &t.model, &mst, &filters.m);
    if !mf.is_ok() {
        return Err(ShapesError::NotModelFilter(mf));
    }

    let theory = fibration_quotient(&t.theory, &tst, &filters.theory)?;
    let mono = fibration_quotient(&t.mono.fibration, &vst, &filters.v)?;
    let v = &mono.base;
    let m = Quotiented::new(&t.m, mst.clone(), filters.m.clone(), "model quotient")?;
    let transferred =
        transfer_model_structure(&t.m, &t.model, &mst, &filters.m).map_err(|source| ShapesError::Transfer { stage: "model structure", source })?;
    let m0 = induce(&theory.base, v, &t.m0, "m0")?;
    let omega = induce(v, &m, &t.omega, "ω̄")?;
    let m1 = induce(&theory.total, &mono.total, &t.m1, "m1")?;
    let induced_square = m1.then(&mono.fibration.projection) == theory.fibration.projection.then(&m0);

    let vq = &v.quotient;
    let mono_of_quotient = MonoFibration::new(&vq.category);
    let mono_equivalence = find_equivalence(&mono.fibration.total, &mono_of_quotient.fibration.total).is_some();

    let projection_fiber_failures =
        fiber_map_failures(&t.theory.fibers(), &theory.fibration.fibers(), &theory.base.quotient.projection.objects, &theory.total.quotient.projection.objects);

    let object_monos: Vec<usize> = t.object_monos().iter().map(|&a| vq.projection.apply(a)).collect();
    let interval = match &t.interval {
        Some(iv) => Some(
            iv.transport(&t.theory, &theory.fibration, &theory.base.quotient.projection, &theory.total.quotient.projection).map_err(ShapesError::Interval)?,
        ),
        None => None,
    };
    let tuple =
        ShapesTuple::new(m.quotient.category.clone(), transferred.model, vq.category.clone(), theory.fibration.clone(), m0, &object_monos, omega, interval)
            .map_err(ShapesError::Assemble)?;
    let shapes = validate_shapes_tuple(&tuple);
    let interval = tuple.interval.as_ref().map(|iv| check_strict_interval(&tuple.theory, iv));
    Ok(QuotientShapes { tuple, theory, mono, mono_equivalence, induced_square, projection_fiber_failures, shapes, interval })
}

/// `C^n -> C^k` keeping the listed coordinates; `k = 1` lands in `C` itself.
pub fn coordinate_projection(src: &FiniteCategory, tgt: &FiniteCategory, coords: &[usize]) -> Functor {
    let info = src.power_info().expect("power");
    let pick = |parts: &[usize]| -> Vec<usize> { coords.iter().map(|&i| parts[i]).collect() };
    let object = |parts: Vec<Obj>| match tgt.power_info() {
        Some(t) => crate::fincat::builtins::power_object(&t.base, &parts),
        None => parts[0],
    };
    let arrow = |parts: Vec<usize>| match tgt.power_info() {
        Some(t) => crate::fincat::builtins::power_arrow(&t.base, &parts),
        None => parts[0],
    };
    Functor { objects: info.object_parts.iter().map(|p| object(pick(p))).collect(), arrows: info.arrow_parts.iter().map(|p| arrow(pick(p))).collect() }
}
