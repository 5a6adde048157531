use std::collections::HashMap;

use super::doc::{Document, Entry, ParseError, Section};
use crate::filterprod::EventualSequence;
use crate::fincat::builtins::{finset, power, terminal_category, walking_arrow};
use crate::fincat::{subterminal_poset, FiniteCategory, RawCategory, SubterminalPoset};
use crate::model::ClassSpec;
use crate::shapes::Axiom;
use crate::sset::{Discreteness, SymbolicFamily};

#[derive(Clone, Debug)]
pub struct CategoryDef {
    pub name: String,
    pub category: FiniteCategory,
    pub subterminals: SubterminalPoset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterMembers {
    Principal(String),
    Members(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct FilterDef {
    pub name: String,
    pub category: usize,
    pub members: FilterMembers,
}

#[derive(Clone, Debug)]
pub struct ModelDef {
    pub name: String,
    pub category: usize,
    pub cofibrations: ClassSpec,
    pub fibrations: ClassSpec,
    pub weak: ClassSpec,
    pub filter: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ProductDef {
    pub name: String,
    pub base: usize,
    pub index: usize,
    /// Filter members as bitmasks of the index set.
    pub members: Vec<u64>,
    pub equivalent: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SequencesDef {
    pub name: String,
    pub items: Vec<EventualSequence>,
}

#[derive(Clone, Debug)]
pub struct FamiliesDef {
    pub name: String,
    pub items: Vec<(SymbolicFamily, Discreteness)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    Diverges,
    Bounded,
}

#[derive(Clone, Debug)]
pub struct DnDef {
    pub name: String,
    pub family: SymbolicFamily,
    pub expect: Growth,
    pub window: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct ShapesDef {
    pub name: String,
    pub cofibrations: ClassSpec,
    pub fibrations: ClassSpec,
    pub weak: ClassSpec,
    pub filter: Option<String>,
    pub axioms: Vec<Axiom>,
}

#[derive(Clone, Debug)]
pub struct UniqueDef {
    pub name: String,
    pub index: usize,
    /// Zero-based generating coordinates.
    pub generator: Vec<usize>,
    pub level: usize,
    pub max_cells: usize,
}

#[derive(Clone, Debug)]
pub struct RandomFiltersDef {
    pub name: String,
    pub count: usize,
    pub max_elements: usize,
}

/// A document with every reference resolved and every literal parsed.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: Vec<CategoryDef>,
    pub filters: Vec<FilterDef>,
    pub models: Vec<ModelDef>,
    pub products: Vec<ProductDef>,
    pub sequences: Vec<SequencesDef>,
    pub families: Vec<FamiliesDef>,
    pub dns: Vec<DnDef>,
    pub shapes: Vec<ShapesDef>,
    pub unique: Vec<UniqueDef>,
    pub random_filters: Vec<RandomFiltersDef>,
}

fn err(e: &Entry, message: impl Into<String>) -> ParseError {
    ParseError::at(e.span, message)
}

fn required<'a>(s: &'a Section, key: &str) -> Result<&'a Entry, ParseError> {
    s.get(key).ok_or_else(|| ParseError::at(s.span, format!("section `{}` needs `{key}`", s.name)))
}

fn check_keys(s: &Section, allowed: &[&str]) -> Result<(), ParseError> {
    for e in &s.entries {
        if !allowed.contains(&e.key.as_str()) {
            return Err(err(e, format!("unknown key `{}` in a {} section", e.key, s.kind)));
        }
    }
    Ok(())
}

fn number<T: std::str::FromStr>(e: &Entry) -> Result<T, ParseError> {
    e.value.parse().map_err(|_| err(e, format!("expected a number, got `{}`", e.value)))
}

/// `finset(k)`, `walking-arrow`, `terminal` or `power(EXPR, n)`.
pub fn builtin_category(expr: &str) -> Result<FiniteCategory, String> {
    let expr = expr.trim();
    match expr {
        "walking-arrow" => return Ok(walking_arrow()),
        "terminal" => return Ok(terminal_category()),
        _ => {}
    }
    if let Some(k) = expr.strip_prefix("finset(").and_then(|r| r.strip_suffix(')')) {
        let k: usize = k.trim().parse().map_err(|_| format!("bad size in {expr}"))?;
        if k > 3 {
            return Err(format!("finset({k}) exceeds the size bound 3"));
        }
        return Ok(finset(k));
    }
    if let Some(body) = expr.strip_prefix("power(").and_then(|r| r.strip_suffix(')')) {
        let (inner, n) = body.rsplit_once(',').ok_or_else(|| format!("expected power(EXPR, n) in {expr}"))?;
        let n: usize = n.trim().parse().map_err(|_| format!("bad exponent in {expr}"))?;
        if n == 0 || n > 3 {
            return Err(format!("exponent {n} outside 1..=3"));
        }
        return Ok(power(&builtin_category(inner)?, n));
    }
    Err(format!("unknown builtin category `{expr}`"))
}

fn explicit_category(s: &Section) -> Result<FiniteCategory, ParseError> {
    let mut raw = RawCategory::default();
    for e in &s.entries {
        match e.key.as_str() {
            "object" => raw.objects.push(e.value.clone()),
            "arrow" => {
                // f : a -> b
                let (name, ty) = e.value.split_once(':').ok_or_else(|| err(e, "expected `f : a -> b`"))?;
                let (a, b) = ty.split_once("->").ok_or_else(|| err(e, "expected `f : a -> b`"))?;
                raw.arrows.push((name.trim().into(), a.trim().into(), b.trim().into()));
            }
            "identity" => {
                let (obj, arrow) = e.value.split_once(':').ok_or_else(|| err(e, "expected `a : id`"))?;
                raw.identities.push((obj.trim().into(), arrow.trim().into()));
            }
            "compose" => {
                // g . f = h is written `g . f -> h`
                let (lhs, h) = e.value.split_once("->").ok_or_else(|| err(e, "expected `g . f -> h`"))?;
                let (g, f) = lhs.split_once('.').ok_or_else(|| err(e, "expected `g . f -> h`"))?;
                raw.compositions.push((g.trim().into(), f.trim().into(), h.trim().into()));
            }
            _ => return Err(err(e, format!("unknown key `{}` in an explicit category", e.key))),
        }
    }
    // composites with identities are implied
    let ids: HashMap<String, String> = raw.identities.iter().map(|(o, a)| (o.clone(), a.clone())).collect();
    for (f, a, b) in raw.arrows.clone() {
        let (Some(ida), Some(idb)) = (ids.get(&a), ids.get(&b)) else { continue };
        for (g, h) in [(idb.clone(), f.clone()), (f.clone(), ida.clone())] {
            if !raw.compositions.iter().any(|(x, y, _)| (x, y) == (&g, &h)) {
                raw.compositions.push((g, h, f.clone()));
            }
        }
    }
    FiniteCategory::from_raw(&raw).map_err(|report| {
        let first = report.first().map(|v| v.to_string()).unwrap_or_default();
        ParseError::at(s.span, format!("category `{}` is not a category: {first}", s.name))
    })
}

/// `{1,2}` over one-based indices `1..=n`, as a bitmask.
fn subset(e: &Entry, text: &str, n: usize) -> Result<u64, ParseError> {
    let body = text.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| err(e, format!("expected {{i,...}}, got `{text}`")))?;
    let mut mask = 0;
    for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part.parse().map_err(|_| err(e, format!("bad index `{part}`")))?;
        if i == 0 || i > n {
            return Err(err(e, format!("index {i} outside 1..={n}")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

/// `empty` may stand for the object `0` inside a tuple name.
pub fn normalize_object(name: &str) -> String {
    let trimmed = name.trim();
    if trimmed == "empty" {
        return "0".into();
    }
    match trimmed.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(body) => format!("({})", body.split(',').map(|p| normalize_object(p)).collect::<Vec<_>>().join(",")),
        None => trimmed.into(),
    }
}

/// `principal:NAME`
pub fn parse_filter_flag(spec: &str) -> Result<String, String> {
    spec.strip_prefix("principal:").map(normalize_object).ok_or_else(|| format!("unsupported filter spec `{spec}`; expected principal:NAME"))
}

impl Workspace {
    pub fn resolve(doc: &Document) -> Result<Self, ParseError> {
        let mut w = Workspace::default();
        let mut category_index: HashMap<&str, usize> = HashMap::new();
        let mut filter_index: HashMap<&str, usize> = HashMap::new();
        for s in &doc.sections {
            match s.kind.as_str() {
                "category" => {
                    let category = match s.get("builtin") {
                        Some(e) => {
                            check_keys(s, &["builtin"])?;
                            builtin_category(&e.value).map_err(|m| err(e, m))?
                        }
                        None => explicit_category(s)?,
                    };
                    category_index.insert(&s.name, w.categories.len());
                    let subterminals = subterminal_poset(&category);
                    w.categories.push(CategoryDef { name: s.name.clone(), category, subterminals });
                }
                "filter" => {
                    check_keys(s, &["category", "principal", "members"])?;
                    let e = required(s, "category")?;
                    let category = *category_index.get(e.value.as_str()).ok_or_else(|| err(e, format!("unknown category `{}`", e.value)))?;
                    let st = &w.categories[category].subterminals;
                    let known = |e: &Entry, n: &str| {
                        st.find(n).map(|_| n.to_string()).ok_or_else(|| err(e, format!("`{n}` is not a subterminal of `{}`", w.categories[category].name)))
                    };
                    let members = match (s.get("principal"), s.get("members")) {
                        (Some(p), None) => FilterMembers::Principal(known(p, &normalize_object(&p.value))?),
                        (None, Some(m)) => FilterMembers::Members(
                            m.value.split(';').map(str::trim).filter(|x| !x.is_empty()).map(|x| known(m, &normalize_object(x))).collect::<Result<_, _>>()?,
                        ),
                        _ => return Err(ParseError::at(s.span, "a filter needs exactly one of `principal` and `members`")),
                    };
                    filter_index.insert(&s.name, w.filters.len());
                    w.filters.push(FilterDef { name: s.name.clone(), category, members });
                }
                "model" => {
                    check_keys(s, &["category", "cofibrations", "fibrations", "weak", "filter"])?;
                    let e = required(s, "category")?;
                    let category = *category_index.get(e.value.as_str()).ok_or_else(|| err(e, format!("unknown category `{}`", e.value)))?;
                    let class = |k: &str| -> Result<ClassSpec, ParseError> {
                        let e = required(s, k)?;
                        e.value.parse().map_err(|x: crate::model::ClassError| err(e, x.to_string()))
                    };
                    let filter = match s.get("filter") {
                        Some(e) => {
                            let f = *filter_index.get(e.value.as_str()).ok_or_else(|| err(e, format!("unknown filter `{}`", e.value)))?;
                            if w.filters[f].category != category {
                                return Err(err(e, "the filter lives on another category"));
                            }
                            Some(f)
                        }
                        None => None,
                    };
                    w.models.push(ModelDef {
                        name: s.name.clone(),
                        category,
                        cofibrations: class("cofibrations")?,
                        fibrations: class("fibrations")?,
                        weak: class("weak")?,
                        filter,
                    });
                }
                "product" => {
                    check_keys(s, &["base", "index", "principal", "members", "equivalent"])?;
                    let e = required(s, "base")?;
                    let base = *category_index.get(e.value.as_str()).ok_or_else(|| err(e, format!("unknown category `{}`", e.value)))?;
                    let ie = required(s, "index")?;
                    let index: usize = number(ie)?;
                    if index == 0 || index > 3 {
                        return Err(err(ie, "index sets of size 1..=3 only"));
                    }
                    let members = match (s.get("principal"), s.get("members")) {
                        (Some(p), None) => {
                            let gen = subset(p, &p.value, index)?;
                            (0u64..1 << index).filter(|m| m & gen == gen).collect()
                        }
                        (None, Some(m)) => m.value.split(';').map(|x| subset(m, x, index)).collect::<Result<_, _>>()?,
                        _ => return Err(ParseError::at(s.span, "a product needs exactly one of `principal` and `members`")),
                    };
                    let equivalent = match s.get("equivalent") {
                        Some(e) => Some(*category_index.get(e.value.as_str()).ok_or_else(|| err(e, format!("unknown category `{}`", e.value)))?),
                        None => None,
                    };
                    w.products.push(ProductDef { name: s.name.clone(), base, index, members, equivalent });
                }
                "sequences" => {
                    check_keys(s, &["item"])?;
                    let items = s
                        .all("item")
                        .map(|e| e.value.parse().map_err(|x: crate::filterprod::SequenceParseError| err(e, x.to_string())))
                        .collect::<Result<_, _>>()?;
                    w.sequences.push(SequencesDef { name: s.name.clone(), items });
                }
                "families" => {
                    check_keys(s, &["discrete", "not-discrete", "undecidable"])?;
                    let mut items = Vec::new();
                    for e in &s.entries {
                        let f: SymbolicFamily = e.value.parse().map_err(|x: crate::sset::FamilyError| err(e, x.to_string()))?;
                        let expect = match e.key.as_str() {
                            "discrete" => Discreteness::Discrete,
                            "not-discrete" => Discreteness::NotDiscrete,
                            _ => Discreteness::Undecidable(String::new()),
                        };
                        items.push((f, expect));
                    }
                    w.families.push(FamiliesDef { name: s.name.clone(), items });
                }
                "dn" => {
                    check_keys(s, &["family", "expect", "window"])?;
                    let e = required(s, "family")?;
                    let family = e.value.parse().map_err(|x: crate::sset::FamilyError| err(e, x.to_string()))?;
                    let x = required(s, "expect")?;
                    let expect = match x.value.as_str() {
                        "diverges" => Growth::Diverges,
                        "bounded" => Growth::Bounded,
                        other => return Err(err(x, format!("expected diverges or bounded, got `{other}`"))),
                    };
                    let window = s.get("window").map(number).transpose()?;
                    w.dns.push(DnDef { name: s.name.clone(), family, expect, window });
                }
                "shapes" => {
                    check_keys(s, &["tuple", "cofibrations", "fibrations", "weak", "filter", "axiom"])?;
                    let t = required(s, "tuple")?;
                    if t.value != "interval-fragment" {
                        return Err(err(t, format!("unknown tuple `{}`", t.value)));
                    }
                    let class = |k: &str, default: ClassSpec| -> Result<ClassSpec, ParseError> {
                        match s.get(k) {
                            Some(e) => e.value.parse().map_err(|x: crate::model::ClassError| err(e, x.to_string())),
                            None => Ok(default),
                        }
                    };
                    let axioms =
                        s.all("axiom").map(|e| e.value.parse().map_err(|x: crate::shapes::TermError| err(e, x.to_string()))).collect::<Result<_, _>>()?;
                    w.shapes.push(ShapesDef {
                        name: s.name.clone(),
                        cofibrations: class("cofibrations", ClassSpec::Isos)?,
                        fibrations: class("fibrations", ClassSpec::All)?,
                        weak: class("weak", ClassSpec::All)?,
                        filter: s.get("filter").map(|e| normalize_object(&e.value)),
                        axioms,
                    });
                }
                "unique-arrow" => {
                    check_keys(s, &["context", "level", "max-cells"])?;
                    let c = required(s, "context")?;
                    let (index, generator) = if c.value == "plain" {
                        (1, vec![0])
                    } else {
                        // principal N {i,...}
                        let rest = c.value.strip_prefix("principal").ok_or_else(|| err(c, "expected `plain` or `principal N {i,...}`"))?.trim();
                        let (n, set) = rest.split_once(char::is_whitespace).ok_or_else(|| err(c, "expected `principal N {i,...}`"))?;
                        let n: usize = n.parse().map_err(|_| err(c, "bad index size"))?;
                        if n == 0 || n > 3 {
                            return Err(err(c, "index sets of size 1..=3 only"));
                        }
                        let mask = subset(c, set, n)?;
                        (n, (0..n).filter(|i| mask >> i & 1 == 1).collect())
                    };
                    if generator.len() != 1 {
                        return Err(err(c, "the candidate search needs a single generating coordinate"));
                    }
                    let level = s.get("level").map(number).transpose()?.unwrap_or(3);
                    let max_cells = s.get("max-cells").map(number).transpose()?.unwrap_or(6);
                    w.unique.push(UniqueDef { name: s.name.clone(), index, generator, level, max_cells });
                }
                "random-filters" => {
                    check_keys(s, &["count", "max-elements"])?;
                    let count = s.get("count").map(number).transpose()?.unwrap_or(200);
                    let max_elements = s.get("max-elements").map(number).transpose()?.unwrap_or(5);
                    w.random_filters.push(RandomFiltersDef { name: s.name.clone(), count, max_elements });
                }
                other => return Err(ParseError::at(s.span, format!("unknown section kind `{other}`"))),
            }
        }
        Ok(w)
    }
}

pub fn parse_workspace(text: &str) -> Result<(Document, Workspace), ParseError> {
    let doc: Document = text.parse()?;
    let w = Workspace::resolve(&doc)?;
    Ok((doc, w))
}
