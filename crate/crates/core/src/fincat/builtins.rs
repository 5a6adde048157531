//! Built-in categories: skeletal finite-set fragments, finite powers,
//! arrow categories and a few tiny shapes.

use std::borrow::Cow;

use super::category::{ArrowInfo, Category, FiniteCategory, Obj, PowerInfo, Product};
use super::props::is_mono;

/// A function `{0..dom} -> {0..cod}` in the skeletal category of finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FnArrow {
    pub dom: u8,
    pub cod: u8,
    pub map: Vec<u8>,
}

/// Skeletal finite sets of cardinality `≤ max`, arrows computed on demand.
///
/// Products are the lexicographic pairings `(i, j) ↦ i·b + j` whenever
/// `a·b ≤ max`; everything else goes through the generic searches.
#[derive(Clone, Debug)]
pub struct FinSet {
    pub max: usize,
}

impl FinSet {
    pub fn new(max: usize) -> Self {
        FinSet { max }
    }

    pub fn function(dom: usize, cod: usize, map: &[usize]) -> FnArrow {
        FnArrow { dom: dom as u8, cod: cod as u8, map: map.iter().map(|&v| v as u8).collect() }
    }
}

fn all_functions(a: usize, b: usize) -> Vec<FnArrow> {
    let mut out = Vec::new();
    let total = (b as u64).pow(a as u32);
    for mut code in 0..total {
        let mut map = vec![0u8; a];
        for slot in map.iter_mut().rev() {
            *slot = (code % b as u64) as u8;
            code /= b as u64;
        }
        out.push(FnArrow { dom: a as u8, cod: b as u8, map });
    }
    out
}

impl Category for FinSet {
    type Arrow = FnArrow;

    fn object_count(&self) -> usize {
        self.max + 1
    }
    fn object_name(&self, x: Obj) -> String {
        x.to_string()
    }
    fn arrow_name(&self, f: &FnArrow) -> String {
        let body: String = if f.map.is_empty() { "-".into() } else { f.map.iter().map(|v| v.to_string()).collect() };
        format!("{}>{}:{}", f.dom, f.cod, body)
    }
    fn dom(&self, f: &FnArrow) -> Obj {
        f.dom as Obj
    }
    fn cod(&self, f: &FnArrow) -> Obj {
        f.cod as Obj
    }
    fn identity(&self, x: Obj) -> FnArrow {
        FnArrow { dom: x as u8, cod: x as u8, map: (0..x as u8).collect() }
    }
    fn compose(&self, g: &FnArrow, f: &FnArrow) -> FnArrow {
        debug_assert_eq!(f.cod, g.dom);
        FnArrow { dom: f.dom, cod: g.cod, map: f.map.iter().map(|&i| g.map[i as usize]).collect() }
    }
    fn hom(&self, a: Obj, b: Obj) -> Cow<'_, [FnArrow]> {
        Cow::Owned(all_functions(a, b))
    }
    fn product(&self, a: Obj, b: Obj) -> Option<Product<FnArrow>> {
        let n = a * b;
        (n <= self.max).then(|| Product {
            apex: n,
            left: FnArrow { dom: n as u8, cod: a as u8, map: (0..n).map(|k| (k / b) as u8).collect() },
            right: FnArrow { dom: n as u8, cod: b as u8, map: (0..n).map(|k| (k % b) as u8).collect() },
        })
    }
    fn pair(&self, p: &Product<FnArrow>, f: &FnArrow, g: &FnArrow) -> Option<FnArrow> {
        let b = p.right.cod;
        Some(FnArrow { dom: f.dom, cod: p.apex as u8, map: f.map.iter().zip(&g.map).map(|(&i, &j)| i * b + j).collect() })
    }
}

/// `FinSet_{≤k}` as an explicit table, with its chosen products.
pub fn finset(k: usize) -> FiniteCategory {
    let lazy = FinSet::new(k);
    let mut cat = FiniteCategory::materialize(&lazy);
    let table = (0..=k)
        .flat_map(|a| (0..=k).map(move |b| (a, b)))
        .map(|(a, b)| {
            lazy.product(a, b).map(|p| Product {
                apex: p.apex,
                left: cat.find_arrow(&lazy.arrow_name(&p.left)).unwrap(),
                right: cat.find_arrow(&lazy.arrow_name(&p.right)).unwrap(),
            })
        })
        .collect();
    cat.set_chosen_products(table);
    cat
}

fn tuple_name(parts: impl Iterator<Item = String>) -> String {
    format!("({})", parts.collect::<Vec<_>>().join(","))
}

/// The `n`-fold power `C^n` with componentwise composition and products.
pub fn power(base: &FiniteCategory, n: usize) -> FiniteCategory {
    let no = base.object_count();
    let na = base.arrow_count();
    let mut object_parts = Vec::new();
    for code in 0..no.pow(n as u32) {
        object_parts.push(digits(code, no, n));
    }
    let obj_code = |parts: &[Obj]| parts.iter().fold(0, |acc, &p| acc * no + p);
    let mut arrow_parts: Vec<Vec<usize>> = Vec::new();
    let mut arrows = Vec::new();
    for code in 0..na.pow(n as u32) {
        let parts = digits(code, na, n);
        let dom: Vec<Obj> = parts.iter().map(|f| base.arrow_info(*f).dom).collect();
        let cod: Vec<Obj> = parts.iter().map(|f| base.arrow_info(*f).cod).collect();
        arrows.push(ArrowInfo { name: tuple_name(parts.iter().map(|&f| base.arrow_name(&f))), dom: obj_code(&dom), cod: obj_code(&cod) });
        arrow_parts.push(parts);
    }
    let arr_code = |parts: &[usize]| parts.iter().fold(0, |acc, &p| acc * na + p);
    let objects = object_parts.iter().map(|p| tuple_name(p.iter().map(|&o| base.object_name(o)))).collect();
    let identities = object_parts.iter().map(|p| arr_code(&p.iter().map(|&o| base.identity(o)).collect::<Vec<_>>())).collect();
    let mut cat = FiniteCategory::from_parts(objects, arrows, identities, |g, f| {
        let parts: Vec<usize> = arrow_parts[g].iter().zip(&arrow_parts[f]).map(|(gi, fi)| base.compose(gi, fi)).collect();
        arr_code(&parts)
    });
    let mut table = Vec::new();
    for a in &object_parts {
        for b in &object_parts {
            let comps: Option<Vec<Product<usize>>> = a.iter().zip(b).map(|(&x, &y)| base.product(x, y)).collect();
            table.push(comps.map(|ps| Product {
                apex: obj_code(&ps.iter().map(|p| p.apex).collect::<Vec<_>>()),
                left: arr_code(&ps.iter().map(|p| p.left).collect::<Vec<_>>()),
                right: arr_code(&ps.iter().map(|p| p.right).collect::<Vec<_>>()),
            }));
        }
    }
    cat.set_chosen_products(table);
    cat.set_power_info(PowerInfo { base: base.clone(), object_parts, arrow_parts });
    cat
}

fn digits(mut code: usize, base: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = code % base;
        code /= base;
    }
    out
}

/// Object index in `C^n` of the tuple `parts`.
pub fn power_object(base: &FiniteCategory, parts: &[Obj]) -> Obj {
    parts.iter().fold(0, |acc, &p| acc * base.object_count() + p)
}

/// Arrow index in `C^n` of the tuple `parts`.
pub fn power_arrow(base: &FiniteCategory, parts: &[usize]) -> usize {
    parts.iter().fold(0, |acc, &p| acc * base.arrow_count() + p)
}

/// Full subcategory of the arrow category `C^→` on arrows satisfying `keep`.
///
/// Objects are arrows of `C`; a morphism `f -> g` is a commuting square
/// `(top: dom f -> dom g, bottom: cod f -> cod g)`. Object `i` of the
/// result corresponds to `ArrowCategory::base_arrows[i]`.
#[derive(Clone, Debug)]
pub struct ArrowCategory {
    pub category: FiniteCategory,
    pub base_arrows: Vec<usize>,
    /// `(top, bottom)` for each arrow of `category`.
    pub squares: Vec<(usize, usize)>,
}

pub fn arrow_category(base: &FiniteCategory, keep: impl Fn(usize) -> bool) -> ArrowCategory {
    let base_arrows: Vec<usize> = (0..base.arrow_count()).filter(|&f| keep(f)).collect();
    let mut squares = Vec::new();
    let mut arrows = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, &f) in base_arrows.iter().enumerate() {
        for (j, &g) in base_arrows.iter().enumerate() {
            for &top in base.hom(base.dom(&f), base.dom(&g)).iter() {
                for &bottom in base.hom(base.cod(&f), base.cod(&g)).iter() {
                    if base.compose(&g, &top) == base.compose(&bottom, &f) {
                        index.insert((i, j, top, bottom), arrows.len());
                        arrows.push(ArrowInfo { name: format!("<{}|{}>", base.arrow_name(&top), base.arrow_name(&bottom)), dom: i, cod: j });
                        squares.push((top, bottom));
                    }
                }
            }
        }
    }
    let objects = base_arrows.iter().map(|f| format!("[{}]", base.arrow_name(f))).collect();
    let identities = base_arrows.iter().enumerate().map(|(i, &f)| index[&(i, i, base.identity(base.dom(&f)), base.identity(base.cod(&f)))]).collect();
    let category = FiniteCategory::from_parts(objects, arrows.clone(), identities, |g, f| {
        let ((gt, gb), (ft, fb)) = (squares[g], squares[f]);
        index[&(arrows[f].dom, arrows[g].cod, base.compose(&gt, &ft), base.compose(&gb, &fb))]
    });
    ArrowCategory { category, base_arrows, squares }
}

/// `Mono(C)`: the full subcategory of `C^→` on monomorphisms.
pub fn mono_category(base: &FiniteCategory) -> ArrowCategory {
    arrow_category(base, |f| is_mono(base, &f))
}

/// `FinSet^→` restricted to functions `a -> b` with `a ≤ max_dom`, `b ≤ max_cod`.
pub fn finset_arrows(max_dom: usize, max_cod: usize) -> ArrowCategory {
    let base = finset(max_dom.max(max_cod));
    let keep = |f: usize| base.arrow_info(f).dom <= max_dom && base.arrow_info(f).cod <= max_cod;
    arrow_category(&base, keep)
}

pub fn walking_arrow() -> FiniteCategory {
    FiniteCategory::from_parts(
        vec!["0".into(), "1".into()],
        vec![
            ArrowInfo { name: "id0".into(), dom: 0, cod: 0 },
            ArrowInfo { name: "id1".into(), dom: 1, cod: 1 },
            ArrowInfo { name: "a".into(), dom: 0, cod: 1 },
        ],
        vec![0, 1],
        |g, f| if g == 0 || g == 1 { f } else { g },
    )
}

pub fn terminal_category() -> FiniteCategory {
    FiniteCategory::from_parts(vec!["*".into()], vec![ArrowInfo { name: "id*".into(), dom: 0, cod: 0 }], vec![0], |_, _| 0)
}
