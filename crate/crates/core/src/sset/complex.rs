use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A simplicial set truncated at `level`: finite sets `X_0..X_level` with
/// face maps `d_i : X_m -> X_{m-1}` and degeneracies `s_j : X_m -> X_{m+1}`.
///
/// Simplices are dense indices per level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSet {
    pub level: usize,
    pub sizes: Vec<usize>,
    /// `faces[m][x][i] = d_i x` for `m ≥ 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[m][x][j] = s_j x` for `m < level`.
    degens: Vec<Vec<Vec<usize>>>,
}

/// A simplex in normal form: a nondegenerate cell and a surjection `[m] -> [dim]`.
pub type NormalForm = (usize, Vec<usize>);

/// A nondegenerate cell and its faces in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub dim: usize,
    pub faces: Vec<NormalForm>,
}

impl Cell {
    pub fn vertex() -> Self {
        Cell { dim: 0, faces: vec![] }
    }
}

/// Nondecreasing surjections `[m] -> [k]`.
pub fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    fn go(m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            if *cur.last().unwrap() == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        let left = m + 1 - cur.len();
        for step in 0..=1 {
            let next = last + step;
            if next <= k && k - next <= left - 1 {
                cur.push(next);
                go(m, k, cur, out);
                cur.pop();
            }
        }
    }
    go(m, k, &mut cur, &mut out);
    out
}

/// `σ ∘ δ_i` written as `δ_j ∘ τ`: `None` for `j` when it stays surjective.
fn face_of_surjection(sigma: &[usize], i: usize) -> (Option<usize>, Vec<usize>) {
    let mut tau: Vec<usize> = sigma.to_vec();
    tau.remove(i);
    let k = *sigma.last().unwrap();
    let missing = (0..=k).find(|v| !tau.contains(v));
    match missing {
        None => (None, tau),
        Some(j) => (Some(j), tau.into_iter().map(|v| if v > j { v - 1 } else { v }).collect()),
    }
}

/// Cells realized as a truncated simplicial set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
}

impl CellComplex {
    pub fn new(cells: Vec<Cell>) -> Self {
        CellComplex { cells }
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// Realize up to `level`, with the normal form of every simplex.
    pub fn realize(&self, level: usize) -> Result<(SSet, Vec<Vec<NormalForm>>), String> {
        let mut simplices: Vec<Vec<NormalForm>> = Vec::with_capacity(level + 1);
        let mut index: Vec<HashMap<NormalForm, usize>> = Vec::with_capacity(level + 1);
        for m in 0..=level {
            let mut here = Vec::new();
            for (c, cell) in self.cells.iter().enumerate() {
                for s in surjections(m, cell.dim) {
                    here.push((c, s));
                }
            }
            index.push(here.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect());
            simplices.push(here);
        }
        for (c, cell) in self.cells.iter().enumerate() {
            let want = if cell.dim == 0 { 0 } else { cell.dim + 1 };
            if cell.faces.len() != want {
                return Err(format!("cell {c} of dimension {} has {} faces", cell.dim, cell.faces.len()));
            }
            for f in &cell.faces {
                let ok = f.0 < self.cells.len()
                    && f.1.len() == cell.dim
                    && f.1.last() == Some(&self.cells[f.0].dim)
                    && f.1.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
                    && f.1.first() == Some(&0);
                if !ok {
                    return Err(format!("cell {c} has a malformed face {f:?}"));
                }
            }
        }
        let mut faces = vec![vec![]];
        for m in 1..=level {
            let mut row = Vec::with_capacity(simplices[m].len());
            for (c, sigma) in &simplices[m] {
                let mut fs = Vec::with_capacity(m + 1);
                for i in 0..=m {
                    let nf = match face_of_surjection(sigma, i) {
                        (None, tau) => (*c, tau),
                        (Some(j), tau) => {
                            let (c2, rho) = &self.cells[*c].faces[j];
                            (*c2, tau.iter().map(|&t| rho[t]).collect())
                        }
                    };
                    fs.push(index[m - 1][&nf]);
                }
                row.push(fs);
            }
            faces.push(row);
        }
        let mut degens = Vec::new();
        for m in 0..level {
            let row = simplices[m]
                .iter()
                .map(|(c, sigma)| {
                    (0..=m)
                        .map(|j| {
                            let mut s = sigma.clone();
                            s.insert(j, sigma[j]);
                            index[m + 1][&(*c, s)]
                        })
                        .collect()
                })
                .collect();
            degens.push(row);
        }
        let sizes = simplices.iter().map(Vec::len).collect();
        let x = SSet { level, sizes, faces, degens };
        if let Some(v) = x.identity_violations().first() {
            return Err(v.clone());
        }
        Ok((x, simplices))
    }
}

impl SSet {
    pub fn from_parts(level: usize, sizes: Vec<usize>, faces: Vec<Vec<Vec<usize>>>, degens: Vec<Vec<Vec<usize>>>) -> Self {
        SSet { level, sizes, faces, degens }
    }

    pub fn face(&self, m: usize, i: usize, x: usize) -> usize {
        self.faces[m][x][i]
    }

    pub fn degen(&self, m: usize, j: usize, x: usize) -> usize {
        self.degens[m][x][j]
    }

    pub fn faces_of(&self, m: usize, x: usize) -> &[usize] {
        &self.faces[m][x]
    }

    pub fn is_empty(&self) -> bool {
        self.sizes[0] == 0
    }

    /// `s_0^m v`.
    pub fn total_degeneracy(&self, v: usize, m: usize) -> usize {
        (0..m).fold(v, |x, k| self.degen(k, 0, x))
    }

    pub fn truncate(&self, level: usize) -> SSet {
        assert!(level <= self.level);
        SSet { level, sizes: self.sizes[..=level].to_vec(), faces: self.faces[..=level].to_vec(), degens: self.degens[..level].to_vec() }
    }

    /// Every simplicial identity up to the truncation level.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for m in 0..=self.level {
            for x in 0..self.sizes[m] {
                if m >= 2 {
                    for j in 0..=m {
                        for i in 0..j {
                            let l = self.face(m - 1, i, self.face(m, j, x));
                            let r = self.face(m - 1, j - 1, self.face(m, i, x));
                            if l != r {
                                out.push(format!("d{i} d{j} ≠ d{} d{i} at level {m}, simplex {x}", j - 1));
                            }
                        }
                    }
                }
                if m < self.level {
                    for j in 0..=m {
                        let s = self.degen(m, j, x);
                        for i in 0..=m + 1 {
                            let lhs = self.face(m + 1, i, s);
                            let rhs = if i < j {
                                if m == 0 {
                                    unreachable!()
                                }
                                self.degen(m - 1, j - 1, self.face(m, i, x))
                            } else if i == j || i == j + 1 {
                                x
                            } else {
                                self.degen(m - 1, j, self.face(m, i - 1, x))
                            };
                            if lhs != rhs {
                                out.push(format!("d{i} s{j} at level {m}, simplex {x}"));
                            }
                        }
                        if m + 1 < self.level {
                            for i in 0..=j {
                                let l = self.degen(m + 1, i, s);
                                let r = self.degen(m + 1, j + 1, self.degen(m, i, x));
                                if l != r {
                                    out.push(format!("s{i} s{j} ≠ s{} s{i} at level {m}, simplex {x}", j + 1));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Simplices not in the image of any degeneracy, per level.
    pub fn nondegenerate(&self) -> Vec<Vec<usize>> {
        let mut out = vec![(0..self.sizes[0]).collect::<Vec<_>>()];
        for m in 1..=self.level {
            let mut hit = vec![false; self.sizes[m]];
            for row in &self.degens[m - 1] {
                for &s in row {
                    hit[s] = true;
                }
            }
            out.push((0..self.sizes[m]).filter(|&x| !hit[x]).collect());
        }
        out
    }

    /// For each degenerate simplex, some `(j, y)` with `x = s_j y`.
    pub fn degeneracy_witness(&self) -> Vec<Vec<Option<(usize, usize)>>> {
        let mut out = vec![vec![None; self.sizes[0]]];
        for m in 1..=self.level {
            let mut w = vec![None; self.sizes[m]];
            for (y, row) in self.degens[m - 1].iter().enumerate() {
                for (j, &s) in row.iter().enumerate() {
                    w[s].get_or_insert((j, y));
                }
            }
            out.push(w);
        }
        out
    }

    /// The largest `m` such that `X_0 -> X_k` is a bijection for every `k ≤ m`,
    /// or `None` when that holds up to the truncation level.
    pub fn discrete_up_to(&self) -> Option<usize> {
        for m in 1..=self.level {
            let image: std::collections::HashSet<usize> = (0..self.sizes[0]).map(|v| self.total_degeneracy(v, m)).collect();
            if image.len() != self.sizes[m] || self.sizes[m] != self.sizes[0] {
                return Some(m - 1);
            }
        }
        None
    }

    pub fn is_levelwise_discrete(&self) -> bool {
        self.discrete_up_to().is_none()
    }
}

impl fmt::Display for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "sSet≤{} ({})", self.level, sizes.join(", "))
    }
}

/// Cells of `Δ[n]`: the nonempty subsets of `[n]` with at most `max_size` elements.
pub fn simplex_cells(n: usize, max_size: usize) -> CellComplex {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..=n).map(|i| vec![i]).collect();
    while !layer.is_empty() && layer[0].len() <= max_size {
        let next = layer.iter().flat_map(|s| (s.last().unwrap() + 1..=n).map(move |i| [s.as_slice(), &[i]].concat())).collect();
        subsets.append(&mut layer);
        layer = next;
    }
    let index: HashMap<Vec<usize>, usize> = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let cells = subsets
        .iter()
        .map(|s| {
            let dim = s.len() - 1;
            let faces = if dim == 0 {
                vec![]
            } else {
                (0..=dim)
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        (index[&t], (0..dim).collect())
                    })
                    .collect()
            };
            Cell { dim, faces }
        })
        .collect();
    CellComplex { cells }
}

pub fn simplex(n: usize, level: usize) -> SSet {
    simplex_cells(n, level + 1).realize(level).expect("simplex").0
}

/// `∂Δ[n]`; empty for `n = 0`.
pub fn boundary(n: usize, level: usize) -> SSet {
    simplex_cells(n, n.min(level + 1)).realize(level).expect("boundary").0
}

/// `S^n = Δ[n] / ∂Δ[n]`: one vertex and one nondegenerate `n`-cell, or two points for `n = 0`.
pub fn sphere_cells(n: usize) -> CellComplex {
    if n == 0 {
        return CellComplex::new(vec![Cell::vertex(), Cell::vertex()]);
    }
    let top = Cell { dim: n, faces: vec![(0, vec![0; n]); n + 1] };
    CellComplex::new(vec![Cell::vertex(), top])
}

pub fn sphere(n: usize, level: usize) -> SSet {
    sphere_cells(n).realize(level).expect("sphere").0
}

/// The constant simplicial set on `k` points.
pub fn discrete(k: usize, level: usize) -> SSet {
    CellComplex::new(vec![Cell::vertex(); k]).realize(level).expect("discrete").0
}

pub fn point(level: usize) -> SSet {
    discrete(1, level)
}

pub fn empty(level: usize) -> SSet {
    discrete(0, level)
}

/// Levelwise product; simplex `(a, b)` has index `a * |Y_m| + b`.
pub fn product(x: &SSet, y: &SSet) -> SSet {
    assert_eq!(x.level, y.level, "product needs equal truncation");
    let level = x.level;
    let sizes: Vec<usize> = (0..=level).map(|m| x.sizes[m] * y.sizes[m]).collect();
    let pair = |m: usize, a: usize, b: usize| a * y.sizes[m] + b;
    let mut faces = vec![vec![]];
    for m in 1..=level {
        let mut row = Vec::with_capacity(sizes[m]);
        for a in 0..x.sizes[m] {
            for b in 0..y.sizes[m] {
                row.push((0..=m).map(|i| pair(m - 1, x.face(m, i, a), y.face(m, i, b))).collect());
            }
        }
        faces.push(row);
    }
    let mut degens = Vec::new();
    for m in 0..level {
        let mut row = Vec::with_capacity(sizes[m]);
        for a in 0..x.sizes[m] {
            for b in 0..y.sizes[m] {
                row.push((0..=m).map(|j| pair(m + 1, x.degen(m, j, a), y.degen(m, j, b))).collect());
            }
        }
        degens.push(row);
    }
    SSet { level, sizes, faces, degens }
}

/// Product projections as levelwise maps.
pub fn product_projections(x: &SSet, y: &SSet) -> (SMap, SMap) {
    let left = (0..=x.level).map(|m| (0..x.sizes[m] * y.sizes[m]).map(|p| p / y.sizes[m]).collect()).collect();
    let right = (0..=x.level).map(|m| (0..x.sizes[m] * y.sizes[m]).map(|p| p % y.sizes[m]).collect()).collect();
    (SMap { levels: left }, SMap { levels: right })
}

/// Disjoint union; `Y`'s simplices follow `X`'s at every level.
pub fn coproduct(x: &SSet, y: &SSet) -> SSet {
    assert_eq!(x.level, y.level, "coproduct needs equal truncation");
    let level = x.level;
    let sizes: Vec<usize> = (0..=level).map(|m| x.sizes[m] + y.sizes[m]).collect();
    let mut faces = vec![vec![]];
    for m in 1..=level {
        let mut row: Vec<Vec<usize>> = x.faces[m].clone();
        row.extend(y.faces[m].iter().map(|f| f.iter().map(|&v| v + x.sizes[m - 1]).collect()));
        faces.push(row);
    }
    let mut degens = Vec::new();
    for m in 0..level {
        let mut row: Vec<Vec<usize>> = x.degens[m].clone();
        row.extend(y.degens[m].iter().map(|f| f.iter().map(|&v| v + x.sizes[m + 1]).collect()));
        degens.push(row);
    }
    SSet { level, sizes, faces, degens }
}

/// `Δ[1]^n`, with `Δ[1]^0` the point.
pub fn interval_power(n: usize, level: usize) -> SSet {
    let i = simplex(1, level);
    (0..n).fold(point(level), |acc, _| product(&acc, &i))
}

/// A levelwise map of truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SMap {
    pub levels: Vec<Vec<usize>>,
}

impl SMap {
    pub fn apply(&self, m: usize, x: usize) -> usize {
        self.levels[m][x]
    }

    /// `self ∘ g`
    pub fn after(&self, g: &SMap) -> SMap {
        SMap { levels: g.levels.iter().enumerate().map(|(m, row)| row.iter().map(|&x| self.levels[m][x]).collect()).collect() }
    }

    pub fn identity(x: &SSet) -> SMap {
        SMap { levels: x.sizes.iter().map(|&n| (0..n).collect()).collect() }
    }

    pub fn commutes(&self, x: &SSet, y: &SSet) -> bool {
        (0..=x.level).all(|m| {
            (0..x.sizes[m]).all(|s| {
                let fs = self.levels[m][s];
                (m == 0 || (0..=m).all(|i| self.levels[m - 1][x.face(m, i, s)] == y.face(m, i, fs)))
                    && (m == x.level || (0..=m).all(|j| self.levels[m + 1][x.degen(m, j, s)] == y.degen(m, j, fs)))
            })
        })
    }

    pub fn is_iso(&self, y: &SSet) -> bool {
        self.levels.iter().enumerate().all(|(m, row)| {
            let mut seen = vec![false; y.sizes[m]];
            row.len() == y.sizes[m] && row.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn is_mono(&self, y: &SSet) -> bool {
        self.levels.iter().enumerate().all(|(m, row)| {
            let mut seen = vec![false; y.sizes[m]];
            row.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    /// Every simplex goes to a degeneracy of one vertex.
    pub fn factors_through_point(&self, x: &SSet, y: &SSet) -> bool {
        if x.is_empty() {
            return !y.is_empty();
        }
        let v = self.levels[0][0];
        (0..=x.level).all(|m| self.levels[m].iter().all(|&s| s == y.total_degeneracy(v, m)))
    }
}
