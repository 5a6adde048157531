use serde::{Deserialize, Serialize};

/// A finite poset stored as its order relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitePoset {
    pub names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Build from a relation; the caller guarantees it is a partial order
    /// (see [`FinitePoset::is_partial_order`]).
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Self {
        FinitePoset { names, leq }
    }

    pub fn from_fn(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let leq = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        FinitePoset { names, leq }
    }

    /// Subsets of `{0..n}` under inclusion, element `s` encoded as a bitmask.
    pub fn powerset(n: usize) -> Self {
        let names = (0..1usize << n).map(|s| subset_name(s as u64, n)).collect();
        FinitePoset::from_fn(names, |a, b| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| self.leq[a][a])
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq[a][b] && self.leq[b][a])))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(self.leq[a][b] && self.leq[b][c]) || self.leq[a][c])))
    }

    /// Greatest lower bound, if one exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&z| self.leq(z, a) && self.leq(z, b)).collect();
        lower.iter().copied().find(|&z| lower.iter().all(|&w| self.leq(w, z)))
    }

    /// Least upper bound, if one exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&z| self.leq(a, z) && self.leq(b, z)).collect();
        upper.iter().copied().find(|&z| upper.iter().all(|&w| self.leq(z, w)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.leq(x, t)))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
    }

    /// `{ y : x ≤ y }`
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(x, y)).collect()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// `{1,3}`-style name of a subset of `{1..n}` (one-based, matching index-set notation).
pub fn subset_name(s: u64, n: usize) -> String {
    let parts: Vec<String> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
