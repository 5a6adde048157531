use serde::{Deserialize, Serialize};

use super::complex::{coproduct, discrete, product, simplex, Cell, CellComplex, NormalForm, SMap, SSet};
use super::hom::{copair, hom_set, image, is_isomorphic};
use super::sub::{is_empty_mask, is_subset, subobjects, Mask};

/// A filter product of truncated simplicial sets over a finite index set.
///
/// Filters on a finite set are principal, so maps are tuples of maps on the
/// generating coordinates and everything else is forgotten.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub index: usize,
    pub generator: Vec<usize>,
    pub level: usize,
}

impl Context {
    /// Truncated simplicial sets themselves.
    pub fn plain(level: usize) -> Self {
        Context { index: 1, generator: vec![0], level }
    }

    /// The product over `index` coordinates modulo `↑generator`.
    pub fn principal(index: usize, generator: Vec<usize>, level: usize) -> Self {
        assert!(generator.iter().all(|&i| i < index));
        Context { index, generator, level }
    }

    /// Subterminals as indicator vectors, one representative per class.
    pub fn subterminals(&self) -> Vec<Vec<bool>> {
        (0u32..1 << self.generator.len())
            .map(|bits| {
                let mut u = vec![false; self.index];
                for (k, &i) in self.generator.iter().enumerate() {
                    u[i] = bits >> k & 1 == 1;
                }
                u
            })
            .collect()
    }

    pub fn object(&self, u: &[bool], x: &SSet) -> Vec<SSet> {
        u.iter().map(|&b| if b { x.clone() } else { discrete(0, self.level) }).collect()
    }

    /// `X × U`, coordinatewise.
    pub fn times(&self, x: &SSet, u: &[bool]) -> Vec<SSet> {
        u.iter().map(|&b| product(x, &discrete(usize::from(b), self.level))).collect()
    }

    pub fn homs(&self, a: &[SSet], b: &[SSet]) -> Vec<Vec<SMap>> {
        let per: Vec<Vec<SMap>> = self.generator.iter().map(|&i| hom_set(&a[i], &b[i])).collect();
        per.iter().fold(vec![vec![]], |acc, maps| acc.iter().flat_map(|t| maps.iter().map(move |f| t.iter().cloned().chain([f.clone()]).collect())).collect())
    }

    pub fn isomorphic(&self, a: &[SSet], b: &[SSet]) -> bool {
        self.generator.iter().all(|&i| is_isomorphic(&a[i], &b[i]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueArrowReport {
    /// Conditions (1) to (6) in order.
    pub conditions: [bool; 6],
    pub notes: Vec<String>,
}

impl UniqueArrowReport {
    pub fn passes(&self) -> bool {
        self.conditions.iter().all(|c| *c)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.conditions.iter().position(|c| !c).map(|i| i + 1)
    }
}

/// The six conditions characterizing `Δ¹ × U`, read on truncated objects:
///
/// 1. `A` is 0-truncated (always, levels are sets);
/// 2. `A` is inhabited exactly over `U`;
/// 3. `Hom(U, A)` has two elements;
/// 4. `0 + 1 : U ⊔ U -> A` is not an isomorphism;
/// 5. every sub-object other than the empty one and `A` lies in the image of `0 + 1`;
/// 6. no sub-object `B ⊇ im(0 + 1)` other than `A` gives a factorization
///    `U ⊔ U -> B ↪ A` with a non-invertible first leg.
///
/// With `stop_early`, checking ends at the first failed condition and the
/// remaining entries are false.
pub fn unique_arrow_check(ctx: &Context, u: &[bool], a: &[SSet], stop_early: bool) -> UniqueArrowReport {
    let mut conditions = [false; 6];
    let mut notes = Vec::new();
    let coords = &ctx.generator;
    conditions[0] = true;
    conditions[1] = coords.iter().all(|&i| a[i].is_empty() != u[i]);
    if stop_early && !conditions[1] {
        return UniqueArrowReport { conditions, notes };
    }
    let uo = ctx.object(u, &discrete(1, ctx.level));
    let maps = ctx.homs(&uo, a);
    conditions[2] = maps.len() == 2;
    if !conditions[2] {
        notes.push(format!("Hom(U, A) has {} elements", maps.len()));
        return UniqueArrowReport { conditions, notes };
    }
    let (zero, one) = (&maps[0], &maps[1]);
    let pairs: Vec<(SSet, SMap)> = coords.iter().enumerate().map(|(k, &i)| (coproduct(&uo[i], &uo[i]), copair(&zero[k], &one[k]))).collect();
    let iso = coords.iter().enumerate().all(|(k, &i)| pairs[k].1.is_iso(&a[i]));
    conditions[3] = !iso;
    if stop_early && iso {
        return UniqueArrowReport { conditions, notes };
    }
    let images: Vec<Mask> = coords.iter().enumerate().map(|(k, &i)| image(&pairs[k].1, &a[i])).collect();
    let mono = coords.iter().enumerate().all(|(k, &i)| pairs[k].1.is_mono(&a[i]));
    let full: Vec<Mask> = coords.iter().map(|&i| super::sub::full_mask(&a[i])).collect();
    let subs: Vec<Vec<Mask>> = coords.iter().map(|&i| subobjects(&a[i])).collect();
    let tuples = subs.iter().fold(vec![vec![]], |acc: Vec<Vec<&Mask>>, options| {
        acc.iter().flat_map(|t| options.iter().map(move |m| t.iter().copied().chain([m]).collect())).collect()
    });
    conditions[4] = true;
    conditions[5] = true;
    for b in &tuples {
        let is_all = b.iter().zip(&full).all(|(x, y)| *x == y);
        let is_empty = b.iter().all(|x| is_empty_mask(x));
        if is_all || is_empty {
            continue;
        }
        if !b.iter().zip(&images).all(|(x, y)| is_subset(x, y)) {
            if conditions[4] {
                notes.push("a non-trivial sub-object leaves the image of 0 + 1".into());
            }
            conditions[4] = false;
        }
        let above = b.iter().zip(&images).all(|(x, y)| is_subset(y, x));
        let is_image = b.iter().zip(&images).all(|(x, y)| *x == y);
        if above && !(is_image && mono) {
            if conditions[5] {
                notes.push("0 + 1 factors non-trivially through a sub-object".into());
            }
            conditions[5] = false;
        }
    }
    UniqueArrowReport { conditions, notes }
}

/// Face tuples `(y_0, ..., y_k)` of level `k - 1` with `d_i y_j = d_{j-1} y_i` for `i < j`.
fn compatible_faces(x: &SSet, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k + 1);
    fn go(x: &SSet, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let j = cur.len();
        if j == k + 1 {
            out.push(cur.clone());
            return;
        }
        for y in 0..x.sizes[k - 1] {
            let ok = k < 2 || (0..j).all(|i| x.face(k - 1, i, y) == x.face(k - 1, j - 1, cur[i]));
            if ok {
                cur.push(y);
                go(x, k, cur, out);
                cur.pop();
            }
        }
    }
    go(x, k, &mut cur, &mut out);
    out
}

fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, size: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            go(n, size, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, size, 0, &mut vec![], &mut out);
    out
}

/// Every cell complex with `1..=max_vertices` vertices, at most `max_cells`
/// nondegenerate cells and cells of dimension at most `max_dim`, realized at
/// `level`. Isomorphic complexes may repeat.
pub fn candidates(max_vertices: usize, max_cells: usize, max_dim: usize, level: usize) -> Vec<SSet> {
    let mut out = Vec::new();
    for v in 1..=max_vertices.min(max_cells) {
        let base = CellComplex::new(vec![Cell::vertex(); v]);
        extend(base, 1, max_cells - v, max_dim, level, &mut out);
    }
    out
}

fn extend(c: CellComplex, k: usize, budget: usize, max_dim: usize, level: usize, out: &mut Vec<SSet>) {
    if k > max_dim || budget == 0 {
        out.push(c.realize(level).expect("candidate").0);
        return;
    }
    let (partial, forms): (SSet, Vec<Vec<NormalForm>>) = c.realize(k - 1).expect("partial candidate");
    let tuples = compatible_faces(&partial, k);
    for size in 0..=budget {
        for pick in multisets(tuples.len(), size) {
            let mut next = c.clone();
            for &t in &pick {
                let faces = tuples[t].iter().map(|&y| forms[k - 1][y].clone()).collect();
                next.cells.push(Cell { dim: k, faces });
            }
            extend(next, k + 1, budget - size, max_dim, level, out);
        }
    }
}

/// Candidates passing all six conditions that are not isomorphic to `Δ¹ × U`.
/// `others` supplies the coordinates outside the generator.
pub fn unique_arrow_counterexamples(ctx: &Context, u: &[bool], pool: &[SSet], others: &[SSet]) -> Vec<Vec<SSet>> {
    use rayon::prelude::*;
    let target = ctx.times(&simplex(1, ctx.level), u);
    let free: Vec<usize> = (0..ctx.index).filter(|i| !ctx.generator.contains(i)).collect();
    assert!(ctx.generator.len() == 1, "candidate search varies one coordinate");
    let g = ctx.generator[0];
    pool.par_iter()
        .flat_map_iter(|x| {
            let fill: Vec<Vec<SSet>> = if free.is_empty() { vec![vec![]] } else { others.iter().map(|o| vec![o.clone(); free.len()]).collect() };
            fill.into_iter().map(move |rest| {
                let mut a: Vec<SSet> = Vec::with_capacity(ctx.index);
                let mut it = rest.into_iter();
                for i in 0..ctx.index {
                    a.push(if i == g { x.clone() } else { it.next().unwrap() });
                }
                a
            })
        })
        .filter(|a| unique_arrow_check(ctx, u, a, true).passes() && !ctx.isomorphic(a, &target))
        .collect()
}
