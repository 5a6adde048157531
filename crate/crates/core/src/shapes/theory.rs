use std::collections::HashMap;

use super::fibration::Fibration;
use crate::fincat::builtins::{finset, mono_category, power, power_arrow, power_object};
use crate::fincat::limits::terminal;
use crate::fincat::{ArrowInfo, Category, FiniteCategory, Functor, Obj};

/// `Mono(V)` with its codomain projection to `V`.
#[derive(Clone, Debug)]
pub struct MonoFibration {
    pub fibration: Fibration,
    /// The mono of `V` behind each object.
    pub monos: Vec<usize>,
    object_of: HashMap<usize, Obj>,
    /// `(top, bottom)` for each arrow.
    pub squares: Vec<(usize, usize)>,
}

impl MonoFibration {
    pub fn new(v: &FiniteCategory) -> Self {
        let ac = mono_category(v);
        let projection = Functor { objects: ac.base_arrows.iter().map(|m| v.cod(m)).collect(), arrows: ac.squares.iter().map(|s| s.1).collect() };
        let object_of = ac.base_arrows.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        MonoFibration { fibration: Fibration::new(ac.category, v.clone(), projection), monos: ac.base_arrows, object_of, squares: ac.squares }
    }

    pub fn object_of(&self, mono: usize) -> Option<Obj> {
        self.object_of.get(&mono).copied()
    }

    pub fn square(&self, i: Obj, j: Obj, top: usize, bottom: usize) -> Option<usize> {
        self.fibration.total.hom(i, j).iter().copied().find(|&a| self.squares[a] == (top, bottom))
    }
}

/// `T1 -> Mono(V)` determined by a mono for each object of `T1`: an arrow
/// `g` goes to the square with bottom `m0(P g)` and the unique top making it commute.
pub fn mono_model(theory: &Fibration, mono: &MonoFibration, m0: &Functor, object_monos: &[usize]) -> Result<Functor, String> {
    let (t1, v) = (&theory.total, &mono.fibration.base);
    let objects: Vec<Obj> = object_monos
        .iter()
        .enumerate()
        .map(|(d, &m)| mono.object_of(m).ok_or_else(|| format!("{} is not sent to a mono", t1.object_name(d))))
        .collect::<Result<_, _>>()?;
    let mut arrows = Vec::with_capacity(t1.arrow_count());
    for g in 0..t1.arrow_count() {
        let (d, d2) = (t1.dom(&g), t1.cod(&g));
        let (m, n) = (object_monos[d], object_monos[d2]);
        let bottom = m0.apply(theory.projection.apply(g));
        let target = v.compose(&bottom, &m);
        let top = v
            .hom(v.dom(&m), v.dom(&n))
            .iter()
            .copied()
            .find(|t| v.compose(&n, t) == target)
            .ok_or_else(|| format!("{} does not restrict to the subobjects", t1.arrow_name(&g)))?;
        let a = mono.square(objects[d], objects[d2], top, bottom).ok_or_else(|| format!("no square for {}", t1.arrow_name(&g)))?;
        arrows.push(a);
    }
    Ok(Functor { objects, arrows })
}

/// Subsets of global elements, fibered over a category with a terminal object:
/// objects `(X, φ)` with `φ ⊆ hom(1, X)`, arrows `f : X -> Y` with `f(φ) ⊆ ψ`.
pub fn subsets_of_points(base: &FiniteCategory) -> Fibration {
    let one = terminal(base).expect("terminal object");
    let points: Vec<Vec<usize>> = base.objects().map(|x| base.hom(one, x).into_owned()).collect();
    let point_index = |x: Obj, p: usize| points[x].iter().position(|&q| q == p).unwrap();
    let mut objects = Vec::new();
    let mut parts: Vec<(Obj, u64)> = Vec::new();
    for x in base.objects() {
        for mask in 0..1u64 << points[x].len() {
            let elems: Vec<String> = (0..points[x].len()).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
            objects.push(format!("{}:{{{}}}", base.object_name(x), elems.join(",")));
            parts.push((x, mask));
        }
    }
    let image = |f: usize, mask: u64| -> u64 {
        let (x, y) = (base.dom(&f), base.cod(&f));
        (0..points[x].len()).filter(|i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << point_index(y, base.compose(&f, &points[x][i])))
    };
    let mut arrows = Vec::new();
    let mut under = Vec::new();
    let mut index = HashMap::new();
    for (i, &(x, phi)) in parts.iter().enumerate() {
        for (j, &(y, psi)) in parts.iter().enumerate() {
            for &f in base.hom(x, y).iter() {
                if image(f, phi) & !psi == 0 {
                    index.insert((i, j, f), arrows.len());
                    arrows.push(ArrowInfo { name: format!("{}[{}>{}]", base.arrow_name(&f), objects[i], objects[j]), dom: i, cod: j });
                    under.push(f);
                }
            }
        }
    }
    let identities = (0..parts.len()).map(|i| index[&(i, i, base.identity(parts[i].0))]).collect();
    let total =
        FiniteCategory::from_parts(objects, arrows.clone(), identities, |g, f| index[&(arrows[f].dom, arrows[g].cod, base.compose(&under[g], &under[f]))]);
    let projection = Functor { objects: parts.iter().map(|p| p.0).collect(), arrows: under };
    Fibration::new(total, base.clone(), projection)
}

/// `P^n : C^n -> D^n` for the powers built by [`power`].
pub fn power_functor(f: &Functor, src: &FiniteCategory, tgt: &FiniteCategory) -> Functor {
    let (si, ti) = (src.power_info().expect("power"), tgt.power_info().expect("power"));
    Functor {
        objects: si.object_parts.iter().map(|p| power_object(&ti.base, &p.iter().map(|&o| f.objects[o]).collect::<Vec<_>>())).collect(),
        arrows: si.arrow_parts.iter().map(|p| power_arrow(&ti.base, &p.iter().map(|&a| f.arrows[a]).collect::<Vec<_>>())).collect(),
    }
}

/// The `n`-th power of a fibration.
pub fn power_fibration(p: &Fibration, n: usize) -> Fibration {
    let total = power(&p.total, n);
    let base = power(&p.base, n);
    let projection = power_functor(&p.projection, &total, &base);
    Fibration::new(total, base, projection)
}

/// Subsets of points over `FinSet≤k^n`.
pub fn subset_theory(k: usize, n: usize) -> Fibration {
    power_fibration(&subsets_of_points(&finset(k)), n)
}

/// The inclusion `|φ| -> X` for each object `(X, φ)` of [`subset_theory`]`(k, n)`, in `FinSet≤k^n`.
pub fn subset_inclusions(theory: &Fibration, v: &FiniteCategory) -> Vec<usize> {
    let t1 = &theory.total;
    let info = t1.power_info().expect("power");
    t1.objects()
        .map(|d| {
            let parts: Vec<String> = info.object_parts[d]
                .iter()
                .map(|&o| {
                    let name = info.base.object_name(o);
                    let (size, body) = name.split_once(':').unwrap();
                    let elems: Vec<&str> = body.trim_matches(|c| c == '{' || c == '}').split(',').filter(|s| !s.is_empty()).collect();
                    let digits = if elems.is_empty() { "-".to_string() } else { elems.concat() };
                    format!("{}>{}:{}", elems.len(), size, digits)
                })
                .collect();
            let name = format!("({})", parts.join(","));
            v.find_arrow(&name).unwrap_or_else(|| panic!("missing inclusion {name}"))
        })
        .collect()
}
