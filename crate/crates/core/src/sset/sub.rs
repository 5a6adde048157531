use super::complex::{SMap, SSet};

/// A levelwise membership mask closed under faces and degeneracies.
pub type Mask = Vec<Vec<bool>>;

pub fn empty_mask(x: &SSet) -> Mask {
    x.sizes.iter().map(|&n| vec![false; n]).collect()
}

pub fn full_mask(x: &SSet) -> Mask {
    x.sizes.iter().map(|&n| vec![true; n]).collect()
}

/// The smallest sub-object containing `seeds`.
pub fn generated(x: &SSet, seeds: &Mask) -> Mask {
    let mut mask = seeds.clone();
    for m in (1..=x.level).rev() {
        for s in 0..x.sizes[m] {
            if mask[m][s] {
                for &t in x.faces_of(m, s) {
                    mask[m - 1][t] = true;
                }
            }
        }
    }
    for m in 0..x.level {
        for s in 0..x.sizes[m] {
            if mask[m][s] {
                for j in 0..=m {
                    mask[m + 1][x.degen(m, j, s)] = true;
                }
            }
        }
    }
    mask
}

pub fn is_subset(a: &Mask, b: &Mask) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(p, q)| !p || *q)
}

pub fn is_empty_mask(a: &Mask) -> bool {
    a.iter().flatten().all(|p| !p)
}

/// All sub-objects, one per set of nondegenerate simplices closed under generation.
pub fn subobjects(x: &SSet) -> Vec<Mask> {
    let cells: Vec<(usize, usize)> = x.nondegenerate().iter().enumerate().flat_map(|(m, v)| v.iter().map(move |&s| (m, s))).collect();
    assert!(cells.len() <= 20, "too many nondegenerate simplices for subobject enumeration");
    let mut out = Vec::new();
    for bits in 0u32..1 << cells.len() {
        let mut seeds = empty_mask(x);
        for (k, &(m, s)) in cells.iter().enumerate() {
            if bits >> k & 1 == 1 {
                seeds[m][s] = true;
            }
        }
        let closed = generated(x, &seeds);
        let same = cells.iter().enumerate().all(|(k, &(m, s))| closed[m][s] == (bits >> k & 1 == 1));
        if same {
            out.push(closed);
        }
    }
    out
}

/// The sub-object as a simplicial set, with its inclusion.
pub fn restrict(x: &SSet, mask: &Mask) -> (SSet, SMap) {
    let keep: Vec<Vec<usize>> = mask.iter().map(|row| row.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect()).collect();
    let mut pos: Vec<Vec<usize>> = x.sizes.iter().map(|&n| vec![usize::MAX; n]).collect();
    for (m, row) in keep.iter().enumerate() {
        for (i, &s) in row.iter().enumerate() {
            pos[m][s] = i;
        }
    }
    let faces = (0..=x.level)
        .map(|m| if m == 0 { vec![] } else { keep[m].iter().map(|&s| x.faces_of(m, s).iter().map(|&t| pos[m - 1][t]).collect()).collect() })
        .collect();
    let degens = (0..x.level).map(|m| keep[m].iter().map(|&s| (0..=m).map(|j| pos[m + 1][x.degen(m, j, s)]).collect()).collect()).collect();
    let sizes = keep.iter().map(Vec::len).collect();
    (SSet::from_parts(x.level, sizes, faces, degens), SMap { levels: keep })
}

/// `X / A`: the nonempty sub-object `A` collapsed to one vertex.
pub fn collapse(x: &SSet, a: &Mask) -> SSet {
    assert!(a[0].iter().any(|b| *b), "collapsing an empty sub-object");
    // index 0 is the collapsed point at every level
    let q: Vec<Vec<usize>> = a
        .iter()
        .map(|row| {
            let mut next = 1;
            row.iter()
                .map(|&inside| {
                    if inside {
                        0
                    } else {
                        next += 1;
                        next - 1
                    }
                })
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = a.iter().map(|row| 1 + row.iter().filter(|b| !**b).count()).collect();
    let reps: Vec<Vec<usize>> = (0..=x.level)
        .map(|m| {
            let mut r = vec![usize::MAX; sizes[m]];
            for s in 0..x.sizes[m] {
                if r[q[m][s]] == usize::MAX {
                    r[q[m][s]] = s;
                }
            }
            r
        })
        .collect();
    let faces = (0..=x.level)
        .map(|m| if m == 0 { vec![] } else { reps[m].iter().map(|&s| x.faces_of(m, s).iter().map(|&t| q[m - 1][t]).collect()).collect() })
        .collect();
    let degens = (0..x.level).map(|m| reps[m].iter().map(|&s| (0..=m).map(|j| q[m + 1][x.degen(m, j, s)]).collect()).collect()).collect();
    SSet::from_parts(x.level, sizes, faces, degens)
}
