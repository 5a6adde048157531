use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::class::MorphismClass;
use crate::fincat::{Category, FiniteCategory};

/// A square `p ∘ top = bottom ∘ i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub top: usize,
    pub bottom: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("square does not typecheck")]
    IllTyped,
    #[error("square does not commute")]
    NotCommuting,
}

/// A diagonal `d` with `d ∘ i = top` and `p ∘ d = bottom`.
pub fn has_lift(c: &FiniteCategory, i: usize, p: usize, sq: Square) -> Result<Option<usize>, LiftError> {
    let typed = c.dom(&sq.top) == c.dom(&i) && c.cod(&sq.top) == c.dom(&p) && c.dom(&sq.bottom) == c.cod(&i) && c.cod(&sq.bottom) == c.cod(&p);
    if !typed {
        return Err(LiftError::IllTyped);
    }
    if c.compose(&p, &sq.top) != c.compose(&sq.bottom, &i) {
        return Err(LiftError::NotCommuting);
    }
    Ok(c.hom(c.cod(&i), c.dom(&p)).iter().find(|d| c.compose(d, &i) == sq.top && c.compose(&p, d) == sq.bottom).copied())
}

/// A commuting square between `i` and `p` with no diagonal, if any.
pub fn lifting_failure(c: &FiniteCategory, i: usize, p: usize) -> Option<Square> {
    let (a, b, x, y) = (c.dom(&i), c.cod(&i), c.dom(&p), c.cod(&p));
    let solved: HashSet<(usize, usize)> = c.hom(b, x).iter().map(|d| (c.compose(d, &i), c.compose(&p, d))).collect();
    for &top in c.hom(a, x).iter() {
        let pt = c.compose(&p, &top);
        for &bottom in c.hom(b, y).iter() {
            if c.compose(&bottom, &i) == pt && !solved.contains(&(top, bottom)) {
                return Some(Square { top, bottom });
            }
        }
    }
    None
}

/// `i ⧄ p`: every commuting square has a diagonal.
pub fn lifts(c: &FiniteCategory, i: usize, p: usize) -> bool {
    lifting_failure(c, i, p).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingWitness {
    pub left: String,
    pub right: String,
    pub top: String,
    pub bottom: String,
}

/// Outcome of checking that `(L, R)` is a weak factorization system.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WfsReport {
    /// Arrows with no factorization `r ∘ l` inside the category.
    pub unfactored: Vec<String>,
    pub lifting_failures: Vec<LiftingWitness>,
    /// Arrows lifting against all of `R` but not in `L`.
    pub left_not_closed: Vec<String>,
    /// Arrows lifting against all of `L` but not in `R`.
    pub right_not_closed: Vec<String>,
}

impl WfsReport {
    pub fn is_ok(&self) -> bool {
        self.unfactored.is_empty() && self.lifting_failures.is_empty() && self.left_not_closed.is_empty() && self.right_not_closed.is_empty()
    }
}

pub fn factor(c: &FiniteCategory, f: usize, l: &MorphismClass, r: &MorphismClass) -> Option<(usize, usize)> {
    let (a, b) = (c.dom(&f), c.cod(&f));
    c.objects().find_map(|m| {
        c.hom(a, m)
            .iter()
            .filter(|x| l.contains(**x))
            .find_map(|&left| c.hom(m, b).iter().find(|&&right| r.contains(right) && c.compose(&right, &left) == f).map(|&right| (left, right)))
    })
}

pub fn verify_wfs(c: &FiniteCategory, l: &MorphismClass, r: &MorphismClass) -> WfsReport {
    let n = c.arrow_count();
    let ls = l.arrows();
    let rs = r.arrows();
    let mut report =
        WfsReport { unfactored: (0..n).into_par_iter().filter(|&f| factor(c, f, l, r).is_none()).map(|f| c.arrow_name(&f)).collect(), ..Default::default() };
    // llp[f]: f lifts against every arrow of R; rlp[f]: every arrow of L lifts against f.
    let llp: Vec<bool> = (0..n).into_par_iter().map(|f| rs.iter().all(|&p| lifts(c, f, p))).collect();
    let rlp: Vec<bool> = (0..n).into_par_iter().map(|f| ls.iter().all(|&i| lifts(c, i, f))).collect();
    for &i in &ls {
        if llp[i] {
            continue;
        }
        for &p in &rs {
            if let Some(sq) = lifting_failure(c, i, p) {
                report.lifting_failures.push(LiftingWitness {
                    left: c.arrow_name(&i),
                    right: c.arrow_name(&p),
                    top: c.arrow_name(&sq.top),
                    bottom: c.arrow_name(&sq.bottom),
                });
                break;
            }
        }
    }
    report.left_not_closed = (0..n).filter(|&f| llp[f] && !l.contains(f)).map(|f| c.arrow_name(&f)).collect();
    report.right_not_closed = (0..n).filter(|&f| rlp[f] && !r.contains(f)).map(|f| c.arrow_name(&f)).collect();
    report
}
