use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::category::{ArrowInfo, FiniteCategory};

/// A category as written by hand: names everywhere, nothing checked yet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, dom, cod)`
    pub arrows: Vec<(String, String, String)>,
    /// `(object, identity arrow)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)`
    pub compositions: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    DuplicateObject(String),
    DuplicateArrow(String),
    UnknownObject { arrow: String, object: String },
    UnknownArrow(String),
    MissingIdentity(String),
    IdentityNotEndo { object: String, arrow: String },
    NotComposable { g: String, f: String },
    ConflictingComposite { g: String, f: String },
    CompositeWrongType { g: String, f: String, h: String },
    MissingComposite { g: String, f: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateObject(o) => write!(out, "duplicate object {o}"),
            DuplicateArrow(a) => write!(out, "duplicate arrow {a}"),
            UnknownObject { arrow, object } => write!(out, "arrow {arrow} references unknown object {object}"),
            UnknownArrow(a) => write!(out, "unknown arrow {a}"),
            MissingIdentity(o) => write!(out, "object {o} has no identity"),
            IdentityNotEndo { object, arrow } => write!(out, "identity {arrow} of {object} is not an endomorphism of it"),
            NotComposable { g, f } => write!(out, "{g} ∘ {f} given but not composable"),
            ConflictingComposite { g, f } => write!(out, "{g} ∘ {f} given twice with different values"),
            CompositeWrongType { g, f, h } => write!(out, "{g} ∘ {f} = {h} has the wrong type"),
            MissingComposite { g, f } => write!(out, "{g} ∘ {f} undefined"),
            LeftIdentity { f } => write!(out, "id ∘ {f} ≠ {f}"),
            RightIdentity { f } => write!(out, "{f} ∘ id ≠ {f}"),
            Associativity { h, g, f } => write!(out, "({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})"),
        }
    }
}

/// Every violated law, in discovery order. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Law checks shared by raw descriptions and materialized tables.
pub(crate) fn check_laws(
    arrows: &[(usize, usize)],
    names: &[String],
    identities: &[usize],
    compose: impl Fn(usize, usize) -> Option<usize>,
    report: &mut ValidationReport,
) {
    let n_obj = identities.len();
    let mut outs = vec![Vec::new(); n_obj];
    for (i, &(d, _)) in arrows.iter().enumerate() {
        outs[d].push(i);
    }
    let nm = |i: usize| names[i].clone();
    // typing and totality
    for f in 0..arrows.len() {
        for &g in &outs[arrows[f].1] {
            match compose(g, f) {
                None => report.violations.push(Violation::MissingComposite { g: nm(g), f: nm(f) }),
                Some(h) if arrows[h] != (arrows[f].0, arrows[g].1) => report.violations.push(Violation::CompositeWrongType { g: nm(g), f: nm(f), h: nm(h) }),
                Some(_) => {}
            }
        }
    }
    if !report.is_valid() {
        return;
    }
    for f in 0..arrows.len() {
        let (d, c) = arrows[f];
        if compose(identities[c], f) != Some(f) {
            report.violations.push(Violation::LeftIdentity { f: nm(f) });
        }
        if compose(f, identities[d]) != Some(f) {
            report.violations.push(Violation::RightIdentity { f: nm(f) });
        }
    }
    for f in 0..arrows.len() {
        for &g in &outs[arrows[f].1] {
            let gf = compose(g, f).unwrap();
            for &h in &outs[arrows[g].1] {
                let hg = compose(h, g).unwrap();
                if compose(hg, f) != compose(h, gf) {
                    report.violations.push(Violation::Associativity { h: nm(h), g: nm(g), f: nm(f) });
                }
            }
        }
    }
}

/// Check a hand-written description; reference errors are reported, never dropped.
pub fn validate_category(raw: &RawCategory) -> ValidationReport {
    resolve(raw).1
}

fn resolve(raw: &RawCategory) -> (Option<Resolved>, ValidationReport) {
    let mut report = ValidationReport::default();
    let mut objs = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if objs.insert(o.clone(), i).is_some() {
            report.violations.push(Violation::DuplicateObject(o.clone()));
        }
    }
    let mut arrs = HashMap::new();
    let mut arrows = Vec::new();
    for (name, d, c) in &raw.arrows {
        if arrs.insert(name.clone(), arrows.len()).is_some() {
            report.violations.push(Violation::DuplicateArrow(name.clone()));
        }
        let mut look = |o: &String| match objs.get(o) {
            Some(&i) => i,
            None => {
                report.violations.push(Violation::UnknownObject { arrow: name.clone(), object: o.clone() });
                usize::MAX
            }
        };
        let (d, c) = (look(d), look(c));
        arrows.push((d, c));
    }
    let mut identities = vec![usize::MAX; raw.objects.len()];
    for (o, a) in &raw.identities {
        match (objs.get(o), arrs.get(a)) {
            (None, _) => report.violations.push(Violation::UnknownObject { arrow: a.clone(), object: o.clone() }),
            (_, None) => report.violations.push(Violation::UnknownArrow(a.clone())),
            (Some(&x), Some(&f)) => {
                if arrows[f] != (x, x) {
                    report.violations.push(Violation::IdentityNotEndo { object: o.clone(), arrow: a.clone() });
                }
                identities[x] = f;
            }
        }
    }
    for (x, &id) in identities.iter().enumerate() {
        if id == usize::MAX {
            report.violations.push(Violation::MissingIdentity(raw.objects[x].clone()));
        }
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (g, f, h) in &raw.compositions {
        let ids: Vec<Option<usize>> = [g, f, h].iter().map(|s| arrs.get(*s).copied()).collect();
        for (s, i) in [g, f, h].iter().zip(&ids) {
            if i.is_none() {
                report.violations.push(Violation::UnknownArrow((*s).clone()));
            }
        }
        if let [Some(gi), Some(fi), Some(hi)] = ids[..] {
            if arrows[fi].1 != arrows[gi].0 {
                report.violations.push(Violation::NotComposable { g: g.clone(), f: f.clone() });
                continue;
            }
            if let Some(prev) = table.insert((gi, fi), hi) {
                if prev != hi {
                    report.violations.push(Violation::ConflictingComposite { g: g.clone(), f: f.clone() });
                }
            }
        }
    }
    if !report.is_valid() {
        return (None, report);
    }
    let names: Vec<String> = raw.arrows.iter().map(|a| a.0.clone()).collect();
    check_laws(&arrows, &names, &identities, |g, f| table.get(&(g, f)).copied(), &mut report);
    let resolved = report.is_valid().then_some(Resolved { arrows, identities, table });
    (resolved, report)
}

struct Resolved {
    arrows: Vec<(usize, usize)>,
    identities: Vec<usize>,
    table: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    /// Build from a hand-written description, or return the full violation report.
    pub fn from_raw(raw: &RawCategory) -> Result<FiniteCategory, ValidationReport> {
        match resolve(raw) {
            (Some(r), _) => {
                let arrows = raw.arrows.iter().zip(&r.arrows).map(|((name, _, _), &(dom, cod))| ArrowInfo { name: name.clone(), dom, cod }).collect();
                Ok(FiniteCategory::from_parts(raw.objects.clone(), arrows, r.identities, |g, f| r.table[&(g, f)]))
            }
            (None, report) => Err(report),
        }
    }

    /// Inverse of [`FiniteCategory::from_raw`], listing every composable pair.
    pub fn to_raw(&self) -> RawCategory {
        use super::category::Category;
        let objects = self.object_names().to_vec();
        let arrows = self.arrows().iter().map(|a| (a.name.clone(), objects[a.dom].clone(), objects[a.cod].clone())).collect();
        let identities = self.objects().map(|x| (objects[x].clone(), self.arrow_name(&self.identity(x)))).collect();
        let mut compositions = Vec::new();
        for f in 0..self.arrow_count() {
            for &g in self.arrows_out(self.cod(&f)) {
                let h = self.compose(&g, &f);
                compositions.push((self.arrow_name(&g), self.arrow_name(&f), self.arrow_name(&h)));
            }
        }
        RawCategory { objects, arrows, identities, compositions }
    }
}
