use std::collections::HashMap;

use super::complex::{SMap, SSet};

/// All simplicial maps `X -> Y`.
///
/// Nondegenerate simplices are assigned level by level among the targets with
/// matching faces; degenerate ones follow from their degeneracy witness.
pub fn hom_set(x: &SSet, y: &SSet) -> Vec<SMap> {
    let mut out = Vec::new();
    hom_search(x, y, &mut |f| {
        out.push(f.clone());
        true
    });
    out
}

pub fn hom_count(x: &SSet, y: &SSet) -> usize {
    let mut n = 0;
    hom_search(x, y, &mut |_| {
        n += 1;
        true
    });
    n
}

/// Some map satisfying `keep`, if any.
pub fn find_hom(x: &SSet, y: &SSet, keep: impl Fn(&SMap) -> bool) -> Option<SMap> {
    let mut found = None;
    hom_search(x, y, &mut |f| {
        if keep(f) {
            found = Some(f.clone());
            false
        } else {
            true
        }
    });
    found
}

pub fn is_isomorphic(x: &SSet, y: &SSet) -> bool {
    x.level == y.level && x.sizes == y.sizes && find_hom(x, y, |f| f.is_iso(y)).is_some()
}

/// Visits maps until `visit` returns false.
pub fn hom_search(x: &SSet, y: &SSet, visit: &mut dyn FnMut(&SMap) -> bool) {
    assert_eq!(x.level, y.level, "hom search needs equal truncation");
    let nondeg = x.nondegenerate();
    let witness = x.degeneracy_witness();
    let by_faces: Vec<HashMap<&[usize], Vec<usize>>> = (0..=y.level)
        .map(|m| {
            let mut h: HashMap<&[usize], Vec<usize>> = HashMap::new();
            if m > 0 {
                for t in 0..y.sizes[m] {
                    h.entry(y.faces_of(m, t)).or_default().push(t);
                }
            }
            h
        })
        .collect();
    let mut f = SMap { levels: x.sizes.iter().map(|&n| vec![usize::MAX; n]).collect() };
    let ctx = Search { x, y, nondeg: &nondeg, witness: &witness, by_faces: &by_faces };
    ctx.go(0, 0, &mut f, visit);
}

struct Search<'a> {
    x: &'a SSet,
    y: &'a SSet,
    nondeg: &'a [Vec<usize>],
    witness: &'a [Vec<Option<(usize, usize)>>],
    by_faces: &'a [HashMap<&'a [usize], Vec<usize>>],
}

impl Search<'_> {
    fn go(&self, m: usize, idx: usize, f: &mut SMap, visit: &mut dyn FnMut(&SMap) -> bool) -> bool {
        if m > self.x.level {
            return !f.commutes(self.x, self.y) || visit(f);
        }
        if idx == 0 && m > 0 {
            for s in 0..self.x.sizes[m] {
                if let Some((j, prev)) = self.witness[m][s] {
                    f.levels[m][s] = self.y.degen(m - 1, j, f.levels[m - 1][prev]);
                }
            }
        }
        if idx == self.nondeg[m].len() {
            return self.go(m + 1, 0, f, visit);
        }
        let s = self.nondeg[m][idx];
        let options: Vec<usize> = if m == 0 {
            (0..self.y.sizes[0]).collect()
        } else {
            let want: Vec<usize> = self.x.faces_of(m, s).iter().map(|&t| f.levels[m - 1][t]).collect();
            self.by_faces[m].get(want.as_slice()).cloned().unwrap_or_default()
        };
        for t in options {
            f.levels[m][s] = t;
            if !self.go(m, idx + 1, f, visit) {
                return false;
            }
        }
        true
    }
}

/// Image of a map as a levelwise membership mask.
pub fn image(f: &SMap, y: &SSet) -> Vec<Vec<bool>> {
    let mut mask: Vec<Vec<bool>> = y.sizes.iter().map(|&n| vec![false; n]).collect();
    for (m, row) in f.levels.iter().enumerate() {
        for &t in row {
            mask[m][t] = true;
        }
    }
    mask
}

/// `[f, g] : X ⊔ Z -> Y`, matching the layout of `coproduct`.
pub fn copair(f: &SMap, g: &SMap) -> SMap {
    SMap { levels: f.levels.iter().zip(&g.levels).map(|(a, b)| a.iter().chain(b).copied().collect()).collect() }
}
