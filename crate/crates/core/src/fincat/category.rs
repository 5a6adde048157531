use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use super::limits;
use super::validate::{check_laws, ValidationReport};

/// Objects are always dense indices `0..object_count()`.
pub type Obj = usize;

/// A chosen binary product `apex` with projections `left: apex -> a`, `right: apex -> b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Product<A> {
    pub apex: Obj,
    pub left: A,
    pub right: A,
}

/// A locally finite category with enumerable hom-sets.
///
/// Every algorithm in the crate is written against this trait. Explicit
/// composition tables implement it through [`FiniteCategory`]; large
/// built-ins such as [`super::builtins::FinSet`] compute arrows on demand.
pub trait Category {
    type Arrow: Clone + Eq + Hash + Debug + Send + Sync;

    fn object_count(&self) -> usize;
    fn object_name(&self, x: Obj) -> String;
    fn arrow_name(&self, f: &Self::Arrow) -> String;
    fn dom(&self, f: &Self::Arrow) -> Obj;
    fn cod(&self, f: &Self::Arrow) -> Obj;
    fn identity(&self, x: Obj) -> Self::Arrow;
    /// `g ∘ f`. Callers must only pass composable pairs.
    fn compose(&self, g: &Self::Arrow, f: &Self::Arrow) -> Self::Arrow;
    fn hom(&self, a: Obj, b: Obj) -> Cow<'_, [Self::Arrow]>;

    /// A chosen binary product. The default searches for one.
    fn product(&self, a: Obj, b: Obj) -> Option<Product<Self::Arrow>>
    where
        Self: Sized,
    {
        limits::search_product(self, a, b)
    }

    /// The unique arrow into `p.apex` whose projections are `f` and `g`.
    fn pair(&self, p: &Product<Self::Arrow>, f: &Self::Arrow, g: &Self::Arrow) -> Option<Self::Arrow>
    where
        Self: Sized,
    {
        let src = self.dom(f);
        self.hom(src, p.apex).iter().find(|u| &self.compose(&p.left, u) == f && &self.compose(&p.right, u) == g).cloned()
    }

    fn objects(&self) -> std::ops::Range<Obj> {
        0..self.object_count()
    }

    fn is_identity(&self, f: &Self::Arrow) -> bool {
        self.dom(f) == self.cod(f) && *f == self.identity(self.dom(f))
    }

    /// Every arrow of the category, grouped by (dom, cod) in index order.
    fn all_arrows(&self) -> Vec<Self::Arrow> {
        let mut out = Vec::new();
        for a in self.objects() {
            for b in self.objects() {
                out.extend(self.hom(a, b).iter().cloned());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowInfo {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// Componentwise bookkeeping for categories built as finite powers `C^n`.
#[derive(Clone, Debug)]
pub struct PowerInfo {
    pub base: FiniteCategory,
    pub object_parts: Vec<Vec<Obj>>,
    pub arrow_parts: Vec<Vec<usize>>,
}

/// A category given by an explicit composition table.
///
/// Arrows are dense indices. Composition is stored per arrow `f` as a row
/// indexed by the position of `g` among the arrows leaving `cod f`, so the
/// table holds exactly the composable pairs.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<ArrowInfo>,
    identities: Vec<usize>,
    homs: Vec<Vec<usize>>,
    outs: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    comp: Vec<Vec<usize>>,
    object_index: HashMap<String, Obj>,
    arrow_index: HashMap<String, usize>,
    products: Arc<Vec<OnceLock<Option<Product<usize>>>>>,
    power: Option<Arc<PowerInfo>>,
}

impl FiniteCategory {
    /// Assemble a category from materialized parts.
    ///
    /// `compose(g, f)` is queried for every composable pair. The result is
    /// not law-checked; call [`FiniteCategory::check_laws`] for that.
    pub fn from_parts(objects: Vec<String>, arrows: Vec<ArrowInfo>, identities: Vec<usize>, mut compose: impl FnMut(usize, usize) -> usize) -> Self {
        let n = objects.len();
        let mut homs = vec![Vec::new(); n * n];
        let mut outs = vec![Vec::new(); n];
        let mut out_pos = vec![0; arrows.len()];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.dom * n + a.cod].push(i);
            out_pos[i] = outs[a.dom].len();
            outs[a.dom].push(i);
        }
        let comp = arrows.iter().enumerate().map(|(f, a)| outs[a.cod].iter().map(|&g| compose(g, f)).collect()).collect();
        let object_index = objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let arrow_index = arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
        FiniteCategory { objects, arrows, identities, homs, outs, out_pos, comp, object_index, arrow_index, products: empty_products(n), power: None }
    }

    /// Materialize any category into an explicit table.
    pub fn materialize<C: Category>(c: &C) -> Self {
        let mut arrows = Vec::new();
        let mut index: HashMap<C::Arrow, usize> = HashMap::new();
        let mut raw = Vec::new();
        for a in c.objects() {
            for b in c.objects() {
                for f in c.hom(a, b).iter() {
                    index.insert(f.clone(), arrows.len());
                    arrows.push(ArrowInfo { name: c.arrow_name(f), dom: a, cod: b });
                    raw.push(f.clone());
                }
            }
        }
        let objects = c.objects().map(|x| c.object_name(x)).collect();
        let identities = c.objects().map(|x| index[&c.identity(x)]).collect();
        FiniteCategory::from_parts(objects, arrows, identities, |g, f| index[&c.compose(&raw[g], &raw[f])])
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_info(&self, f: usize) -> &ArrowInfo {
        &self.arrows[f]
    }

    pub fn arrows(&self) -> &[ArrowInfo] {
        &self.arrows
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.object_index.get(name).copied()
    }

    pub fn find_arrow(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn arrows_out(&self, x: Obj) -> &[usize] {
        &self.outs[x]
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        let (gi, fi) = (&self.arrows[g], &self.arrows[f]);
        (fi.cod == gi.dom).then(|| self.comp[f][self.out_pos[g]])
    }

    pub fn power_info(&self) -> Option<&PowerInfo> {
        self.power.as_deref()
    }

    pub(crate) fn set_power_info(&mut self, info: PowerInfo) {
        self.power = Some(Arc::new(info));
    }

    /// Install chosen products computed by a construction that knows them.
    pub(crate) fn set_chosen_products(&mut self, table: Vec<Option<Product<usize>>>) {
        self.products = Arc::new(table.into_iter().map(OnceLock::from).collect());
    }

    /// Copy of this category with the composite `g ∘ f` overwritten by `h`.
    ///
    /// Used to exercise the law checker against broken tables.
    pub fn with_composite_override(&self, g: usize, f: usize, h: usize) -> Self {
        let mut out = self.clone();
        let pos = out.out_pos[g];
        out.comp[f][pos] = h;
        out.products = empty_products(out.objects.len());
        out
    }

    /// Copy with objects and arrows renamed (ids unchanged).
    pub fn renamed(&self, obj: impl Fn(&str) -> String, arr: impl Fn(&str) -> String) -> Self {
        let mut out = self.clone();
        out.objects = self.objects.iter().map(|s| obj(s)).collect();
        for a in &mut out.arrows {
            a.name = arr(&a.name);
        }
        out.object_index = out.objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        out.arrow_index = out.arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
        out
    }

    /// Copy with object and arrow ids permuted: new id `perm[old]`.
    pub fn permuted(&self, obj_perm: &[Obj], arr_perm: &[usize]) -> Self {
        let n = self.objects.len();
        let mut objects = vec![String::new(); n];
        for (old, &new) in obj_perm.iter().enumerate() {
            objects[new] = self.objects[old].clone();
        }
        let mut inv = vec![0; arr_perm.len()];
        let mut arrows = vec![ArrowInfo { name: String::new(), dom: 0, cod: 0 }; arr_perm.len()];
        for (old, &new) in arr_perm.iter().enumerate() {
            inv[new] = old;
            let a = &self.arrows[old];
            arrows[new] = ArrowInfo { name: a.name.clone(), dom: obj_perm[a.dom], cod: obj_perm[a.cod] };
        }
        let mut identities = vec![0; n];
        for (old, &id) in self.identities.iter().enumerate() {
            identities[obj_perm[old]] = arr_perm[id];
        }
        FiniteCategory::from_parts(objects, arrows, identities, |g, f| arr_perm[self.try_compose(inv[g], inv[f]).expect("composable")])
    }

    /// Exhaustively check domain/codomain typing, identity laws and associativity.
    pub fn check_laws(&self) -> ValidationReport {
        let info: Vec<(Obj, Obj)> = self.arrows.iter().map(|a| (a.dom, a.cod)).collect();
        let names: Vec<String> = self.arrows.iter().map(|a| a.name.clone()).collect();
        let mut report = ValidationReport::default();
        check_laws(&info, &names, &self.identities, |g, f| self.try_compose(g, f), &mut report);
        report
    }

    fn chosen_product(&self, a: Obj, b: Obj) -> Option<Product<usize>> {
        self.products[a * self.objects.len() + b].get_or_init(|| limits::search_product(self, a, b)).clone()
    }
}

fn empty_products(n: usize) -> Arc<Vec<OnceLock<Option<Product<usize>>>>> {
    Arc::new((0..n * n).map(|_| OnceLock::new()).collect())
}

impl Category for FiniteCategory {
    type Arrow = usize;

    fn object_count(&self) -> usize {
        self.objects.len()
    }
    fn object_name(&self, x: Obj) -> String {
        self.objects[x].clone()
    }
    fn arrow_name(&self, f: &usize) -> String {
        self.arrows[*f].name.clone()
    }
    fn dom(&self, f: &usize) -> Obj {
        self.arrows[*f].dom
    }
    fn cod(&self, f: &usize) -> Obj {
        self.arrows[*f].cod
    }
    fn identity(&self, x: Obj) -> usize {
        self.identities[x]
    }
    fn compose(&self, g: &usize, f: &usize) -> usize {
        self.try_compose(*g, *f).unwrap_or_else(|| panic!("non-composable pair {} ∘ {}", self.arrows[*g].name, self.arrows[*f].name))
    }
    fn hom(&self, a: Obj, b: Obj) -> Cow<'_, [usize]> {
        Cow::Borrowed(&self.homs[a * self.objects.len() + b])
    }
    fn product(&self, a: Obj, b: Obj) -> Option<Product<usize>> {
        self.chosen_product(a, b)
    }
    fn all_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).collect()
    }
}
