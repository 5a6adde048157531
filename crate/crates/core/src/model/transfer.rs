use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::class::MorphismClass;
use super::structure::{right_properness_failures, verify_model_structure, ModelReport, ModelStructure};
use crate::filtquot::{filter_quotient, Filter, FilterQuotient, GermContext, QuotientError};
use crate::fincat::limits::terminal;
use crate::fincat::{Category, FiniteCategory, SubterminalPoset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityWitness {
    pub class: String,
    pub arrow: String,
    pub subterminal: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFilterReport {
    /// Filter members `U` with `U -> 1` not a fibration.
    pub non_fibrant: Vec<String>,
    /// `f ∈ S` with `f × U ∉ S`.
    pub unstable: Vec<StabilityWitness>,
    pub error: Option<String>,
}

impl ModelFilterReport {
    pub fn is_ok(&self) -> bool {
        self.non_fibrant.is_empty() && self.unstable.is_empty() && self.error.is_none()
    }
}

/// `f × U : X × U -> Y × U`.
pub fn times_subterminal(ctx: &GermContext<'_>, f: usize, u: usize) -> usize {
    let c = ctx.c;
    let (x, y) = (c.dom(&f), c.cod(&f));
    let p = ctx.product(x, u);
    ctx.pair(ctx.product(y, u), c.compose(&f, &p.left), p.right)
}

/// Fibrancy of every member and `Φ`-product stability of cofibrations and weak equivalences.
pub fn validate_model_filter(c: &FiniteCategory, m: &ModelStructure, subterminals: &SubterminalPoset, filter: &Filter) -> ModelFilterReport {
    let mut report = ModelFilterReport::default();
    let ctx = match GermContext::new(c, subterminals, filter) {
        Ok(ctx) => ctx,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    let Some(one) = terminal(c) else {
        report.error = Some("no terminal object".into());
        return report;
    };
    for &u in &ctx.members {
        if !m.fibrations.contains(c.hom(u, one)[0]) {
            report.non_fibrant.push(c.object_name(u));
        }
    }
    for class in [&m.cofibrations, &m.weak] {
        for f in class.arrows() {
            for &u in &ctx.members {
                if !class.contains(times_subterminal(&ctx, f, u)) {
                    report.unstable.push(StabilityWitness { class: class.name.clone(), arrow: c.arrow_name(&f), subterminal: c.object_name(u) });
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TransferError {
    #[error("not a model filter: {0:?}")]
    NotModelFilter(ModelFilterReport),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// `S_Φ`: germs with a representative `(U, f)` such that `f × U ∈ S`.
pub fn transfer_class(ctx: &GermContext<'_>, q: &FilterQuotient, class: &MorphismClass) -> MorphismClass {
    MorphismClass { name: format!("{}_Φ", class.name), members: q.classes.iter().map(|reps| reps.iter().any(|g| class.contains(ctx.times_over(g)))).collect() }
}

#[derive(Clone, Debug)]
pub struct TransferredModel {
    pub quotient: FilterQuotient,
    pub model: ModelStructure,
    pub report: ModelReport,
    /// Arrows of `C` in a class whose projection is not in the transferred class.
    pub not_preserved: Vec<(String, String)>,
    pub right_properness_failures: Vec<(String, String)>,
}

impl TransferredModel {
    pub fn is_ok(&self) -> bool {
        self.report.is_ok() && self.not_preserved.is_empty()
    }
}

pub fn transfer_model_structure(
    c: &FiniteCategory,
    m: &ModelStructure,
    subterminals: &SubterminalPoset,
    filter: &Filter,
) -> Result<TransferredModel, TransferError> {
    let check = validate_model_filter(c, m, subterminals, filter);
    if !check.is_ok() {
        return Err(TransferError::NotModelFilter(check));
    }
    let ctx = GermContext::new(c, subterminals, filter)?;
    let quotient = filter_quotient(c, subterminals, filter)?;
    let model = ModelStructure {
        cofibrations: transfer_class(&ctx, &quotient, &m.cofibrations),
        fibrations: transfer_class(&ctx, &quotient, &m.fibrations),
        weak: transfer_class(&ctx, &quotient, &m.weak),
    };
    let d = &quotient.category;
    let report = verify_model_structure(d, &model);
    let mut not_preserved = Vec::new();
    for (src, tgt) in [(&m.cofibrations, &model.cofibrations), (&m.fibrations, &model.fibrations), (&m.weak, &model.weak)] {
        for f in src.arrows() {
            if !tgt.contains(quotient.projection.apply(f)) {
                not_preserved.push((src.name.clone(), c.arrow_name(&f)));
            }
        }
    }
    let right_properness_failures = right_properness_failures(d, &model);
    Ok(TransferredModel { quotient, model, report, not_preserved, right_properness_failures })
}
