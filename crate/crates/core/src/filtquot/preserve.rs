use serde::{Deserialize, Serialize};

use super::filter::Filter;
use super::germ::GermContext;
use super::quotient::{filter_quotient, FilterQuotient};
use crate::fincat::limits::{diagrams, is_colimit, is_limit, Cone, Shape};
use crate::fincat::props::{verify_classifier, verify_exponential};
use crate::fincat::{
    colimit, exponential, is_mono, limit, subobject_classifier, Category, Exponential, FiniteCategory, Product, SubobjectClassifier, SubterminalPoset,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationFailure {
    pub kind: String,
    pub detail: String,
}

/// Outcome of checking that `P_Φ` preserves the structure found in `C`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub limits_checked: usize,
    pub colimits_checked: usize,
    pub monos_checked: usize,
    pub exponentials_checked: usize,
    pub classifier_checked: bool,
    pub failures: Vec<PreservationFailure>,
}

impl ProjectionReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, kind: &str, detail: String) {
        self.failures.push(PreservationFailure { kind: kind.into(), detail });
    }
}

/// Law-check `C`, build `C_Φ`, and check preservation exhaustively.
pub fn verify_projection(c: &FiniteCategory, subterminals: &SubterminalPoset, filter: &Filter) -> ProjectionReport {
    let mut report = ProjectionReport::default();
    if let Some(v) = c.check_laws().first() {
        report.fail("category", v.to_string());
        return report;
    }
    match filter_quotient(c, subterminals, filter) {
        Ok(q) => check_preservation(c, &q, &mut report),
        Err(e) => report.fail("quotient", e.to_string()),
    }
    report
}

fn image(q: &FilterQuotient, cone: &Cone<usize>) -> Cone<usize> {
    Cone { apex: cone.apex, legs: cone.legs.iter().map(|&l| q.projection.apply(l)).collect() }
}

pub fn check_preservation(c: &FiniteCategory, q: &FilterQuotient, report: &mut ProjectionReport) {
    let d = &q.category;
    let p = &q.projection;
    for v in p.check(c, d) {
        report.fail("functor", format!("{v:?}"));
    }
    if let Some(v) = d.check_laws().first() {
        report.fail("quotient laws", v.to_string());
    }
    if !report.is_ok() {
        return;
    }
    for shape in Shape::ALL {
        for diag in diagrams(c, shape) {
            let mapped = diag.map(|o| o, |&a| p.apply(a));
            if let Some(l) = limit(c, &diag) {
                report.limits_checked += 1;
                if !is_limit(d, &mapped, &image(q, &l)) {
                    report.fail("limit", format!("{} over {:?}", shape.name(), names(c, &diag.objects)));
                }
            }
            if let Some(l) = colimit(c, &diag) {
                report.colimits_checked += 1;
                if !is_colimit(d, &mapped, &image(q, &l)) {
                    report.fail("colimit", format!("{} over {:?}", shape.name(), names(c, &diag.objects)));
                }
            }
        }
    }
    for f in 0..c.arrow_count() {
        if is_mono(c, &f) {
            report.monos_checked += 1;
            if !is_mono(d, &p.apply(f)) {
                report.fail("mono", c.arrow_name(&f));
            }
        }
    }
    for x in c.objects() {
        for y in c.objects() {
            let Some(e) = exponential(c, x, y) else { continue };
            report.exponentials_checked += 1;
            let mapped = Exponential {
                object: e.object,
                eval: p.apply(e.eval),
                product: Product { apex: e.product.apex, left: p.apply(e.product.left), right: p.apply(e.product.right) },
            };
            if !verify_exponential(d, x, y, &mapped) {
                report.fail("exponential", format!("{}^{}", c.object_name(y), c.object_name(x)));
            }
        }
    }
    if let Some(sc) = subobject_classifier(c) {
        report.classifier_checked = true;
        let mapped = SubobjectClassifier { terminal: sc.terminal, omega: sc.omega, truth: p.apply(sc.truth) };
        let monos: Vec<usize> = (0..d.arrow_count()).filter(|f| is_mono(d, f)).collect();
        if !verify_classifier(d, &mapped, &monos) {
            report.fail("classifier", c.object_name(sc.omega));
        }
    }
}

fn names(c: &FiniteCategory, objs: &[usize]) -> Vec<String> {
    objs.iter().map(|o| c.object_name(*o)).collect()
}

/// One row of the germ-mono comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermMonoRow {
    pub arrow: String,
    pub mono_in_quotient: bool,
    /// A filter member `U` with `f × U` mono in `C`.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermMonoReport {
    pub rows: Vec<GermMonoRow>,
    pub counterexamples: Vec<String>,
}

impl GermMonoReport {
    pub fn is_ok(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Compare `f` mono in `C_Φ` with `∃U ∈ Φ. f × U` mono in `C`, for every arrow of `C_Φ`.
pub fn germ_mono_characterization(c: &FiniteCategory, subterminals: &SubterminalPoset, filter: &Filter, q: &FilterQuotient) -> GermMonoReport {
    let ctx = GermContext::new(c, subterminals, filter).expect("quotient already built");
    let d = &q.category;
    let mut report = GermMonoReport::default();
    for (arrow, class) in q.classes.iter().enumerate() {
        let mono_in_quotient = is_mono(d, &arrow);
        let witness = class.iter().find(|g| is_mono(c, &ctx.times_over(g))).map(|g| c.object_name(g.over));
        if mono_in_quotient != witness.is_some() {
            report.counterexamples.push(d.arrow_name(&arrow));
        }
        report.rows.push(GermMonoRow { arrow: d.arrow_name(&arrow), mono_in_quotient, witness });
    }
    report
}
