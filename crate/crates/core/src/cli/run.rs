use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::workspace::{parse_filter_flag, FilterMembers, Growth, Workspace};
use crate::filterprod::{finite_filter_product, internal_naturals};
use crate::filtquot::{filter_quotient, germ_mono_characterization, validate_filter, verify_projection, Filter};
use crate::fincat::{find_equivalence, Category, FinitePoset};
use crate::model::{right_properness_failures, transfer_model_structure, validate_model_filter, verify_model_structure, ModelStructure, TransferError};
use crate::shapes::{check_strict_interval, quotient_shapes_tuple, validate_shapes_tuple, ShapesFilters, ShapesTuple};
use crate::sset::{
    candidates, dn_sequence, frechet_externally_discrete, point, simplex, sphere, unique_arrow_check, unique_arrow_counterexamples, Context, Discreteness,
    FamilyError,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_WINDOW: u64 = 200;
pub const MAX_CELLS: usize = 8;
pub const DEFAULT_WINDOW: u64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Validate,
    Quotient,
    Product,
    ModelCheck,
    ShapesCheck,
    SsetDemo,
    Report,
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "validate" => Command::Validate,
            "quotient" => Command::Quotient,
            "product" => Command::Product,
            "model-check" => Command::ModelCheck,
            "shapes-check" => Command::ShapesCheck,
            "sset-demo" => Command::SsetDemo,
            "report" => Command::Report,
            _ => return Err(format!("unknown command `{s}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undecidable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecidable => "undecidable",
        })
    }
}

/// One check outcome. A failing record always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub schema_version: u32,
    pub document: String,
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub anchor: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

/// Stable anchors naming the statement each check exercises.
pub const ANCHORS: &[(&str, &str)] = &[
    ("category-laws", "identities and associativity of a finite category"),
    ("filter-laws", "non-empty, upward closed, meet-directed"),
    ("projection-preservation", "the quotient projection preserves finite limits, colimits, monos, exponentials and the classifier"),
    ("germ-mono", "a germ is mono iff some restriction is mono"),
    ("filter-product", "finite filter products as filter quotients of powers"),
    ("principal-collapse", "a principal filter product is equivalent to the base"),
    ("germ-classes", "sequences modulo eventual equality"),
    ("model-structure", "two weak factorization systems and two-out-of-three"),
    ("model-filter", "fibrant members and product-stable cofibrations and weak equivalences"),
    ("transfer", "the quotient carries the transferred model structure"),
    ("shapes-tuple", "the four clauses of a shapes tuple"),
    ("strict-interval", "interval axioms in the fibers"),
    ("shapes-quotient", "the quotient of a shapes tuple is a shapes tuple"),
    ("external-discreteness", "cofinitely many members discrete at every level"),
    ("dn-divergence", "the discreteness levels of an externally discrete family diverge"),
    ("unique-arrow", "the interval times U is the unique object with the six properties"),
];

pub fn anchor(key: &str) -> &'static str {
    ANCHORS.iter().find(|(k, _)| *k == key).map(|(k, _)| *k).expect("anchor in table")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    /// Overrides any window set in a document; `DEFAULT_WINDOW` otherwise.
    pub window: Option<u64>,
    pub max_size: Option<usize>,
    pub filter: Option<String>,
    pub seed: u64,
    pub timing: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { window: None, max_size: None, filter: None, seed: 0, timing: false }
    }
}

/// A run stopped because a bound was exceeded, not because a check failed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("resource bound exceeded: {0}")]
pub struct ResourceError(pub String);

struct Sink<'a> {
    document: &'a str,
    suite: &'static str,
    timing: bool,
    records: Vec<Record>,
}

impl Sink<'_> {
    fn push(&mut self, check: String, anchor_key: &str, status: Status, witnesses: Vec<String>, detail: String, start: Instant) {
        let witnesses = if status == Status::Fail && witnesses.is_empty() { vec![detail.clone()] } else { witnesses };
        self.records.push(Record {
            schema_version: SCHEMA_VERSION,
            document: self.document.to_string(),
            suite: self.suite.to_string(),
            check,
            status,
            witnesses,
            anchor: anchor(anchor_key).to_string(),
            detail,
            millis: self.timing.then(|| start.elapsed().as_millis() as u64),
        });
    }

    fn bool(&mut self, check: String, anchor_key: &str, ok: bool, witnesses: Vec<String>, detail: String, start: Instant) {
        self.push(check, anchor_key, if ok { Status::Pass } else { Status::Fail }, witnesses, detail, start);
    }
}

fn json<T: Serialize>(items: &[T]) -> Vec<String> {
    items.iter().take(5).map(|x| serde_json::to_string(x).expect("serializable witness")).collect()
}

fn filter_of(w: &Workspace, f: usize, flags: &Flags) -> Result<(Filter, String), String> {
    let def = &w.filters[f];
    let st = &w.categories[def.category].subterminals;
    let members = match (&flags.filter, &def.members) {
        (Some(spec), _) => FilterMembers::Principal(parse_filter_flag(spec)?),
        (None, m) => m.clone(),
    };
    match &members {
        FilterMembers::Principal(name) => {
            let e = st.find(name).ok_or_else(|| format!("`{name}` is not a subterminal of `{}`", w.categories[def.category].name))?;
            Ok((Filter::principal(&st.poset, e), format!("↑{name}")))
        }
        FilterMembers::Members(names) => {
            let idx: Vec<usize> = names.iter().map(|n| st.find(n).expect("resolved")).collect();
            let report = validate_filter(&st.poset, &idx);
            if !report.is_valid() {
                return Err(report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "));
            }
            Ok((Filter::new(&st.poset, &idx).expect("valid"), format!("{{{}}}", names.join("; "))))
        }
    }
}

fn validate_suite(w: &Workspace, sink: &mut Sink, flags: &Flags) {
    for c in &w.categories {
        let t = Instant::now();
        let report = c.category.check_laws();
        let witnesses = report.first().map(|v| vec![v.to_string()]).unwrap_or_default();
        let detail = format!("{} objects, {} arrows", c.category.object_count(), c.category.arrow_count());
        sink.bool(format!("category {}", c.name), "category-laws", report.is_valid(), witnesses, detail, t);
    }
    for (i, f) in w.filters.iter().enumerate() {
        let t = Instant::now();
        match filter_of(w, i, flags) {
            Ok((filter, desc)) => sink.bool(format!("filter {}", f.name), "filter-laws", true, vec![], format!("{desc}, {} members", filter.len()), t),
            Err(e) => sink.bool(format!("filter {}", f.name), "filter-laws", false, vec![e.clone()], e, t),
        }
    }
    for m in &w.models {
        let t = Instant::now();
        let c = &w.categories[m.category].category;
        let model = ModelStructure::from_specs(c, &m.cofibrations, &m.fibrations, &m.weak).expect("resolved classes");
        let r = verify_model_structure(c, &model);
        let witnesses = json(&r.two_of_three)
            .into_iter()
            .chain(json(&r.trivial_cofibrations.lifting_failures))
            .chain(json(&r.trivial_fibrations.lifting_failures))
            .chain(r.trivial_cofibrations.unfactored.iter().chain(&r.trivial_fibrations.unfactored).take(5).map(|a| format!("unfactored {a}")))
            .chain(
                r.trivial_cofibrations
                    .left_not_closed
                    .iter()
                    .chain(&r.trivial_fibrations.left_not_closed)
                    .take(5)
                    .map(|a| format!("left class not closed at {a}")),
            )
            .chain(
                r.trivial_cofibrations
                    .right_not_closed
                    .iter()
                    .chain(&r.trivial_fibrations.right_not_closed)
                    .take(5)
                    .map(|a| format!("right class not closed at {a}")),
            )
            .collect();
        sink.bool(
            format!("model {}", m.name),
            "model-structure",
            r.is_ok(),
            witnesses,
            format!("C = {}, F = {}, W = {}", m.cofibrations, m.fibrations, m.weak),
            t,
        );
    }
    for p in &w.products {
        let t = Instant::now();
        match finite_filter_product(&w.categories[p.base].category, p.index, &p.members) {
            Ok(fp) => sink.bool(format!("product {}", p.name), "filter-product", true, vec![], format!("{} objects", fp.quotient.category.object_count()), t),
            Err(e) => sink.bool(format!("product {}", p.name), "filter-product", false, vec![e.to_string()], e.to_string(), t),
        }
    }
    for s in &w.shapes {
        shapes_validate(w, s, sink);
    }
    for u in &w.unique {
        unique_base(u, sink);
    }
}

fn quotient_suite(w: &Workspace, sink: &mut Sink, flags: &Flags) {
    for (i, f) in w.filters.iter().enumerate() {
        let t = Instant::now();
        let c = &w.categories[f.category];
        let (filter, desc) = match filter_of(w, i, flags) {
            Ok(x) => x,
            Err(e) => {
                sink.bool(format!("filter {}", f.name), "filter-laws", false, vec![e.clone()], e, t);
                continue;
            }
        };
        let r = verify_projection(&c.category, &c.subterminals, &filter);
        let detail = format!(
            "{desc}: {} limits, {} colimits, {} monos, {} exponentials, classifier {}",
            r.limits_checked, r.colimits_checked, r.monos_checked, r.exponentials_checked, r.classifier_checked
        );
        sink.bool(format!("preservation {}", f.name), "projection-preservation", r.is_ok(), json(&r.failures), detail, t);
        let t = Instant::now();
        match filter_quotient(&c.category, &c.subterminals, &filter) {
            Ok(q) => {
                let g = germ_mono_characterization(&c.category, &c.subterminals, &filter, &q);
                sink.bool(format!("germ-mono {}", f.name), "germ-mono", g.is_ok(), g.counterexamples.clone(), format!("{} arrows compared", g.rows.len()), t);
            }
            Err(e) => sink.bool(format!("germ-mono {}", f.name), "germ-mono", false, vec![e.to_string()], e.to_string(), t),
        }
    }
    for r in &w.random_filters {
        let t = Instant::now();
        let (valid, total) = random_filter_counts(flags.seed, r.count, r.max_elements);
        sink.bool(format!("random-filters {}", r.name), "filter-laws", true, vec![], format!("seed {}: {valid} of {total} subsets are filters", flags.seed), t);
    }
}

/// A random partial order on `n` elements: a random relation on a fixed
/// linear order, closed transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> FinitePoset {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(0.4);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    FinitePoset::new((0..n).map(|i| format!("p{i}")).collect(), leq)
}

/// Seeded random subsets of random posets, as `(poset, subset)`.
pub fn random_filter_cases(seed: u64, count: usize, max_elements: usize) -> Vec<(FinitePoset, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_elements.max(1));
            let p = random_poset(&mut rng, n);
            let subset = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            (p, subset)
        })
        .collect()
}

fn random_filter_counts(seed: u64, count: usize, max_elements: usize) -> (usize, usize) {
    let cases = random_filter_cases(seed, count, max_elements);
    let valid = cases.iter().filter(|(p, s)| validate_filter(p, s).is_valid()).count();
    (valid, cases.len())
}

fn product_suite(w: &Workspace, sink: &mut Sink) {
    for p in &w.products {
        let t = Instant::now();
        let base = &w.categories[p.base].category;
        let fp = match finite_filter_product(base, p.index, &p.members) {
            Ok(fp) => fp,
            Err(e) => {
                sink.bool(format!("product {}", p.name), "filter-product", false, vec![e.to_string()], e.to_string(), t);
                continue;
            }
        };
        let q = &fp.quotient.category;
        sink.bool(
            format!("product {}", p.name),
            "filter-product",
            true,
            vec![],
            format!("{} objects, {} arrows from a power with {} arrows", q.object_count(), q.arrow_count(), fp.power.arrow_count()),
            t,
        );
        if let Some(e) = p.equivalent {
            let t = Instant::now();
            let target = &w.categories[e];
            let found = find_equivalence(q, &target.category).is_some();
            let witness = if found { vec![] } else { vec![format!("no equivalence onto {}", target.name)] };
            sink.bool(format!("collapse {}", p.name), "principal-collapse", found, witness, format!("equivalent to {}", target.name), t);
        }
    }
    for s in &w.sequences {
        let t = Instant::now();
        let part = internal_naturals(&s.items);
        let unsure = part.undecidable.iter().filter(|u| **u).count();
        let status = if unsure > 0 { Status::Undecidable } else { Status::Pass };
        let classes: Vec<String> = part.classes.iter().map(|c| c.iter().map(|&i| s.items[i].to_string()).collect::<Vec<_>>().join(" ~ ")).collect();
        sink.push(format!("germ-classes {}", s.name), "germ-classes", status, classes, format!("{} classes, {unsure} undecidable", part.class_count()), t);
    }
}

fn model_suite(w: &Workspace, sink: &mut Sink, flags: &Flags) {
    for m in &w.models {
        let t = Instant::now();
        let cat = &w.categories[m.category];
        let c = &cat.category;
        let model = ModelStructure::from_specs(c, &m.cofibrations, &m.fibrations, &m.weak).expect("resolved classes");
        let r = verify_model_structure(c, &model);
        let mut witnesses = json(&r.two_of_three);
        witnesses.extend(json(&r.trivial_cofibrations.lifting_failures));
        witnesses.extend(json(&r.trivial_fibrations.lifting_failures));
        witnesses.extend(r.trivial_cofibrations.unfactored.iter().chain(&r.trivial_fibrations.unfactored).take(5).map(|a| format!("unfactored {a}")));
        let rp = right_properness_failures(c, &model);
        sink.bool(format!("model {}", m.name), "model-structure", r.is_ok(), witnesses, format!("{} right-properness failures", rp.len()), t);
        let Some(f) = m.filter else { continue };
        let t = Instant::now();
        let (filter, desc) = match filter_of(w, f, flags) {
            Ok(x) => x,
            Err(e) => {
                sink.bool(format!("model-filter {}", m.name), "filter-laws", false, vec![e.clone()], e, t);
                continue;
            }
        };
        let mf = validate_model_filter(c, &model, &cat.subterminals, &filter);
        let mut ws: Vec<String> = mf.non_fibrant.iter().map(|u| format!("{u} is not fibrant")).collect();
        ws.extend(json(&mf.unstable));
        ws.extend(mf.error.clone());
        sink.bool(format!("model-filter {}", m.name), "model-filter", mf.is_ok(), ws, desc.clone(), t);
        let t = Instant::now();
        match transfer_model_structure(c, &model, &cat.subterminals, &filter) {
            Ok(tm) => {
                let mut ws = json(&tm.report.two_of_three);
                ws.extend(json(&tm.report.trivial_cofibrations.lifting_failures));
                ws.extend(json(&tm.report.trivial_fibrations.lifting_failures));
                ws.extend(tm.not_preserved.iter().take(5).map(|(c, a)| format!("{a} in {c} not preserved")));
                let q = &tm.quotient.category;
                sink.bool(
                    format!("transfer {}", m.name),
                    "transfer",
                    tm.is_ok(),
                    ws,
                    format!("{desc}: quotient with {} objects, {} arrows", q.object_count(), q.arrow_count()),
                    t,
                );
            }
            Err(TransferError::NotModelFilter(r)) => {
                sink.bool(format!("transfer {}", m.name), "transfer", false, json(&r.unstable), "not a model filter".into(), t)
            }
            Err(e) => sink.bool(format!("transfer {}", m.name), "transfer", false, vec![e.to_string()], e.to_string(), t),
        }
    }
}

fn build_tuple(w: &Workspace, s: &super::workspace::ShapesDef) -> ShapesTuple {
    let _ = w;
    let base = ShapesTuple::interval_fragment();
    let model = ModelStructure::from_specs(&base.m, &s.cofibrations, &s.fibrations, &s.weak).expect("classes on the built-in category");
    let mut t = ShapesTuple::interval_fragment_with(model);
    if let Some(iv) = t.interval.as_mut() {
        iv.axioms.extend(s.axioms.iter().cloned());
    }
    t
}

fn shapes_validate(w: &Workspace, s: &super::workspace::ShapesDef, sink: &mut Sink) {
    let t0 = Instant::now();
    let t = build_tuple(w, s);
    let r = validate_shapes_tuple(&t);
    sink.bool(format!("shapes {}", s.name), "shapes-tuple", r.is_ok(), json(&r.failures), r.info.join("; "), t0);
}

fn shapes_suite(w: &Workspace, sink: &mut Sink, flags: &Flags) -> Result<(), String> {
    for s in &w.shapes {
        shapes_validate(w, s, sink);
        let t0 = Instant::now();
        let t = build_tuple(w, s);
        if let Some(iv) = &t.interval {
            let r = check_strict_interval(&t.theory, iv);
            let mut ws = r.errors.clone();
            ws.extend(json(&r.failed));
            if !r.distinct {
                ws.push("the endpoints coincide".into());
            }
            sink.bool(format!("interval {}", s.name), "strict-interval", r.is_ok(), ws, format!("{} axioms", iv.axioms.len()), t0);
        }
        let name = match &flags.filter {
            Some(spec) => Some(parse_filter_flag(spec)?),
            None => s.filter.clone(),
        };
        let Some(name) = name else { continue };
        let t0 = Instant::now();
        let Some(filters) = ShapesFilters::principal(&t, &name) else {
            return Err(format!("`{name}` is not a subterminal of the tuple's categories"));
        };
        match quotient_shapes_tuple(&t, &filters) {
            Ok(q) => {
                let mut ws = json(&q.shapes.failures);
                ws.extend(q.projection_fiber_failures.iter().take(5).cloned());
                if !q.mono_equivalence {
                    ws.push("Mono of the quotient is not the quotient of Mono".into());
                }
                if !q.induced_square {
                    ws.push("the induced square does not commute".into());
                }
                if let Some(iv) = &q.interval {
                    ws.extend(json(&iv.failed));
                    if !iv.distinct {
                        ws.push("the quotient endpoints coincide".into());
                    }
                }
                let detail = format!("↑{name}: M has {} objects, {} arrows", q.tuple.m.object_count(), q.tuple.m.arrow_count());
                sink.bool(format!("quotient {}", s.name), "shapes-quotient", q.is_ok(), ws, detail, t0);
            }
            Err(e) => sink.bool(format!("quotient {}", s.name), "shapes-quotient", false, vec![e.to_string()], e.to_string(), t0),
        }
    }
    Ok(())
}

fn unique_context(u: &super::workspace::UniqueDef) -> Context {
    if u.index == 1 {
        Context::plain(u.level)
    } else {
        Context::principal(u.index, u.generator.clone(), u.level)
    }
}

fn unique_base(u: &super::workspace::UniqueDef, sink: &mut Sink) {
    let t = Instant::now();
    let ctx = unique_context(u);
    let mut ws = Vec::new();
    for sub in ctx.subterminals() {
        if !ctx.generator.iter().all(|&i| sub[i]) {
            continue;
        }
        let a = ctx.times(&simplex(1, ctx.level), &sub);
        let r = unique_arrow_check(&ctx, &sub, &a, false);
        if !r.passes() {
            ws.push(format!("U = {sub:?}: condition {} fails", r.first_failure().unwrap()));
        }
    }
    sink.bool(format!("interval {}", u.name), "unique-arrow", ws.is_empty(), ws, format!("level {}", u.level), t);
}

fn sset_suite(w: &Workspace, sink: &mut Sink, flags: &Flags) -> Result<(), ResourceError> {
    if let Some(w) = flags.window.filter(|&w| w > MAX_WINDOW) {
        return Err(ResourceError(format!("window {w} exceeds {MAX_WINDOW}")));
    }
    for f in &w.families {
        for (family, expect) in &f.items {
            let t = Instant::now();
            let verdict = frechet_externally_discrete(family);
            let matches = std::mem::discriminant(&verdict) == std::mem::discriminant(expect);
            let status = match (&verdict, matches) {
                (_, false) => Status::Fail,
                (Discreteness::Undecidable(_), true) => Status::Undecidable,
                _ => Status::Pass,
            };
            let detail = match &verdict {
                Discreteness::Discrete => "externally discrete".to_string(),
                Discreteness::NotDiscrete => "not externally discrete".to_string(),
                Discreteness::Undecidable(why) => format!("undecidable: {why}"),
            };
            let ws = if matches { vec![] } else { vec![format!("expected {expect:?}, got {verdict:?}")] };
            sink.push(format!("discreteness {}", family), "external-discreteness", status, ws, detail, t);
        }
    }
    for d in &w.dns {
        let t = Instant::now();
        let window = flags.window.or(d.window).unwrap_or(DEFAULT_WINDOW);
        if window > MAX_WINDOW {
            return Err(ResourceError(format!("window {window} exceeds {MAX_WINDOW}")));
        }
        let report = match dn_sequence(&d.family, window) {
            Ok(r) => r,
            Err(e @ FamilyError::Bound { .. }) => return Err(ResourceError(e.to_string())),
            Err(e) => {
                sink.push(format!("dn {}", d.name), "dn-divergence", Status::Undecidable, vec![e.to_string()], e.to_string(), t);
                continue;
            }
        };
        let values: Vec<String> = report.values().iter().map(|v| v.to_string()).collect();
        let grows = report.diverges();
        let late_failures: Vec<u64> = report.factorization_failures().into_iter().filter(|&n| report.onset.is_none_or(|o| n >= o)).collect();
        let ok = (grows == (d.expect == Growth::Diverges)) && late_failures.is_empty();
        let mut ws = Vec::new();
        if grows != (d.expect == Growth::Diverges) {
            ws.push(format!("divergence verdict {grows} with bound {}", report.bound));
        }
        ws.extend(late_failures.iter().map(|n| format!("a map S^(d-1) -> R_{n} does not factor through the point")));
        let detail = format!(
            "d = [{}]; bound {}, onset {:?}, blocked {:?}, early factorization failures {:?}",
            values.join(", "),
            report.bound,
            report.onset,
            report.blocked(),
            report.factorization_failures()
        );
        sink.bool(format!("dn {}", d.name), "dn-divergence", ok, ws, detail, t);
    }
    for u in &w.unique {
        unique_base(u, sink);
        let t = Instant::now();
        let cells = match flags.max_size {
            Some(k) => k.min(u.max_cells),
            None => u.max_cells,
        };
        if cells > MAX_CELLS {
            return Err(ResourceError(format!("candidate size {cells} exceeds {MAX_CELLS}")));
        }
        let ctx = unique_context(u);
        let pool = candidates(cells, cells, 3.min(u.level), u.level);
        let others = [crate::sset::empty(u.level), point(u.level), simplex(1, u.level), sphere(1, u.level)];
        let mut sub = vec![false; ctx.index];
        sub[ctx.generator[0]] = true;
        let bad = unique_arrow_counterexamples(&ctx, &sub, &pool, &others);
        let ws = bad.iter().take(3).map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" × ")).collect();
        sink.bool(format!("uniqueness {}", u.name), "unique-arrow", bad.is_empty(), ws, format!("{} candidates with at most {cells} cells", pool.len()), t);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Resource(#[from] ResourceError),
    #[error("{0}")]
    Reference(String),
}

/// Run one command on a resolved workspace; records come out in suite order.
pub fn run(command: Command, document: &str, w: &Workspace, flags: &Flags) -> Result<Vec<Record>, RunError> {
    let suites: &[&'static str] = match command {
        Command::Validate => &["validate"],
        Command::Quotient => &["quotient"],
        Command::Product => &["product"],
        Command::ModelCheck => &["model-check"],
        Command::ShapesCheck => &["shapes-check"],
        Command::SsetDemo => &["sset-demo"],
        Command::Report => &["validate", "quotient", "product", "model-check", "shapes-check", "sset-demo"],
    };
    if let Some(spec) = &flags.filter {
        let name = parse_filter_flag(spec).map_err(RunError::Reference)?;
        if suites.iter().any(|s| matches!(*s, "validate" | "quotient" | "model-check")) {
            for f in &w.filters {
                let c = &w.categories[f.category];
                if c.subterminals.find(&name).is_none() {
                    return Err(RunError::Reference(format!("`{name}` is not a subterminal of `{}`", c.name)));
                }
            }
        }
    }
    let mut out = Vec::new();
    for &suite in suites {
        let mut sink = Sink { document, suite, timing: flags.timing, records: vec![] };
        match suite {
            "validate" => validate_suite(w, &mut sink, flags),
            "quotient" => quotient_suite(w, &mut sink, flags),
            "product" => product_suite(w, &mut sink),
            "model-check" => model_suite(w, &mut sink, flags),
            "shapes-check" => shapes_suite(w, &mut sink, flags).map_err(RunError::Reference)?,
            _ => sset_suite(w, &mut sink, flags)?,
        }
        out.extend(sink.records);
    }
    Ok(out)
}

/// Run several documents concurrently; each keeps its own buffer.
pub fn run_all(command: Command, docs: &[(String, Workspace)], flags: &Flags) -> Vec<Result<Vec<Record>, RunError>> {
    docs.par_iter().map(|(name, w)| run(command, name, w, flags)).collect()
}

pub fn exit_code(results: &[Result<Vec<Record>, RunError>]) -> i32 {
    if results.iter().any(|r| matches!(r, Err(RunError::Resource(_)))) {
        return 3;
    }
    if results.iter().any(|r| matches!(r, Err(RunError::Reference(_)))) {
        return 2;
    }
    let failed = results.iter().flatten().flatten().any(|r| r.status == Status::Fail);
    i32::from(failed)
}

pub fn render_text(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!("[{}] {} {}: {}", r.status, r.suite, r.check, r.detail));
        if let Some(ms) = r.millis {
            out.push_str(&format!(" ({ms} ms)"));
        }
        out.push('\n');
        for w in &r.witnesses {
            out.push_str(&format!("    {w}\n"));
        }
    }
    let failed = records.iter().filter(|r| r.status == Status::Fail).count();
    out.push_str(&format!("{} checks, {failed} failed\n", records.len()));
    out
}

pub fn render_records(records: &[Record]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("record") + "\n").collect()
}
