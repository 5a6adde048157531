use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::complex::{boundary, discrete, simplex, sphere, SSet};
use super::hom::find_hom;
use crate::filterprod::{EventualSequence, Generator};

/// Largest constructor parameter a family may be evaluated at.
pub const MAX_PARAMETER: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Constructor {
    /// `k ↦ S^k`
    Sphere,
    /// `k ↦ Δ[k]`
    Simplex,
    /// `k ↦ ∂Δ[k]`
    Boundary,
    /// `k ↦` the constant simplicial set on `k` points
    Discrete,
}

impl Constructor {
    pub fn name(self) -> &'static str {
        match self {
            Constructor::Sphere => "sphere",
            Constructor::Simplex => "simplex",
            Constructor::Boundary => "boundary",
            Constructor::Discrete => "discrete",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [Constructor::Sphere, Constructor::Simplex, Constructor::Boundary, Constructor::Discrete].into_iter().find(|c| c.name() == name)
    }

    pub fn build(self, k: usize, level: usize) -> SSet {
        match self {
            Constructor::Sphere => sphere(k, level),
            Constructor::Simplex => simplex(k, level),
            Constructor::Boundary => boundary(k, level),
            Constructor::Discrete => discrete(k, level),
        }
    }

    /// Top dimension of a nondegenerate simplex.
    pub fn dimension(self, k: usize) -> usize {
        match self {
            Constructor::Sphere | Constructor::Simplex => k,
            Constructor::Boundary => k.saturating_sub(1),
            Constructor::Discrete => 0,
        }
    }

    /// The largest `m` with `X_0 ≅ X_j` for all `j ≤ m`; `None` when discrete.
    pub fn discrete_up_to(self, k: usize) -> Option<usize> {
        match (self, k) {
            (Constructor::Discrete, _) | (Constructor::Sphere, 0) | (Constructor::Simplex, 0) | (Constructor::Boundary, 0 | 1) => None,
            (Constructor::Sphere, k) => Some(k - 1),
            _ => Some(0),
        }
    }

    /// Whether `discrete_up_to(k)` tends to infinity with `k`.
    fn grows(self) -> bool {
        matches!(self, Constructor::Sphere | Constructor::Discrete)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("bad family literal `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("index {n} has no known value")]
    Opaque { n: u64 },
    #[error("parameter {k} at index {n} exceeds the bound {MAX_PARAMETER}")]
    Bound { n: u64, k: u64 },
}

/// A sequence of simplicial sets `n ↦ ctor(a_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolicFamily {
    pub constructor: Constructor,
    pub sequence: EventualSequence,
}

impl SymbolicFamily {
    pub fn new(constructor: Constructor, generator: Generator) -> Self {
        SymbolicFamily { constructor, sequence: EventualSequence::new(generator).with_constructor(constructor.name()) }
    }

    pub fn except(mut self, n: u64, v: u64) -> Self {
        self.sequence = self.sequence.except(n, v);
        self
    }

    pub fn parameter(&self, n: u64) -> Result<usize, FamilyError> {
        let k = self.sequence.value(n).ok_or(FamilyError::Opaque { n })?;
        if k > MAX_PARAMETER {
            return Err(FamilyError::Bound { n, k });
        }
        Ok(k as usize)
    }

    pub fn member(&self, n: u64, level: usize) -> Result<SSet, FamilyError> {
        Ok(self.constructor.build(self.parameter(n)?, level))
    }
}

impl fmt::Display for SymbolicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.sequence.to_string();
        write!(f, "family {}", s.strip_prefix("seq ").unwrap_or(&s))
    }
}

impl FromStr for SymbolicFamily {
    type Err = FamilyError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| FamilyError::Parse { input: input.to_string(), reason };
        let rest = input.trim().strip_prefix("family").ok_or_else(|| err("expected `family`".into()))?;
        let sequence: EventualSequence = format!("seq{rest}").parse().map_err(|e: crate::filterprod::SequenceParseError| err(e.reason))?;
        let name = sequence.tail.constructor.clone().ok_or_else(|| err("the tail needs a constructor".into()))?;
        let constructor = Constructor::parse(&name).ok_or_else(|| err(format!("unknown constructor {name}")))?;
        Ok(SymbolicFamily { constructor, sequence })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Discreteness {
    Discrete,
    NotDiscrete,
    Undecidable(String),
}

/// External discreteness in the Fréchet product.
///
/// The family is externally discrete iff for every level `m` the indices `n`
/// with `X_n` discrete up to `m` form a cofinite set. Exceptions are finite,
/// so only the tail matters.
pub fn frechet_externally_discrete(f: &SymbolicFamily) -> Discreteness {
    let c = f.constructor;
    let yes = |b: bool| if b { Discreteness::Discrete } else { Discreteness::NotDiscrete };
    match &f.sequence.tail.generator {
        Generator::Constant(k) if *k > MAX_PARAMETER => Discreteness::Undecidable(format!("parameter {k} out of range")),
        Generator::Constant(k) => yes(c.discrete_up_to(*k as usize).is_none()),
        Generator::Identity { .. } | Generator::FloorHalf { .. } => yes(c.grows()),
        Generator::Parity => yes(c.discrete_up_to(0).is_none() && c.discrete_up_to(1).is_none()),
        Generator::Opaque(name) => Discreteness::Undecidable(format!("opaque tail {name}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DnRow {
    pub n: u64,
    pub parameter: usize,
    pub discrete: bool,
    pub d: usize,
    /// `None` when `d = 0`, so that `S^{d-1}` does not exist.
    pub factors_through_point: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DnReport {
    pub rows: Vec<DnRow>,
    pub bound: usize,
    /// Least `N'` with `d_n ≥ bound` for every `N' ≤ n ≤ N`.
    pub onset: Option<u64>,
}

impl DnReport {
    pub fn diverges(&self) -> bool {
        self.onset.is_some()
    }

    pub fn values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.d).collect()
    }

    pub fn blocked(&self) -> Vec<u64> {
        self.rows.iter().filter(|r| r.d == 0).map(|r| r.n).collect()
    }

    pub fn factorization_failures(&self) -> Vec<u64> {
        self.rows.iter().filter(|r| r.factors_through_point == Some(false)).map(|r| r.n).collect()
    }
}

/// `d_n` for `n ≤ window`: `n` when `R_n` is discrete, otherwise the largest
/// `m` with `R_{n0} ≅ R_{nj}` for all `j ≤ m`. Levels are built until
/// discreteness fails or the top dimension of `R_n` is reached.
pub fn dn_sequence(f: &SymbolicFamily, window: u64) -> Result<DnReport, FamilyError> {
    let rows: Result<Vec<DnRow>, FamilyError> = (0..=window)
        .into_par_iter()
        .map(|n| {
            let k = f.parameter(n)?;
            let dim = f.constructor.dimension(k);
            let mut level = 1;
            let (discrete, d) = loop {
                match f.constructor.build(k, level).discrete_up_to() {
                    Some(m) => break (false, m),
                    None if level >= dim => break (true, n as usize),
                    None => level = (level * 2).min(dim),
                }
            };
            // maps out of a skeletal source are determined at its top level
            let factors_through_point = (d >= 1).then(|| {
                let level = (d - 1).max(1);
                let s = sphere(d - 1, level);
                let r = f.constructor.build(k, level);
                find_hom(&s, &r, |g| !g.factors_through_point(&s, &r)).is_none()
            });
            Ok(DnRow { n, parameter: k, discrete, d, factors_through_point })
        })
        .collect();
    let rows = rows?;
    let bound = (window as usize / 4).max(1);
    let onset = (0..=window).find(|&start| rows[start as usize..].iter().all(|r| r.d >= bound));
    Ok(DnReport { rows, bound, onset })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        for text in ["family tail=sphere(id)", "family tail=simplex(const(1)) except {0:0, 3:2}", "family tail=discrete(parity)"] {
            let f: SymbolicFamily = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
        let f: SymbolicFamily = "family tail=sphere(identity) except {2:5}".parse().unwrap();
        assert_eq!(f, SymbolicFamily::new(Constructor::Sphere, Generator::Identity { shift: 0 }).except(2, 5));
        assert!("family tail=id".parse::<SymbolicFamily>().is_err());
        assert!("family tail=torus(id)".parse::<SymbolicFamily>().is_err());
    }
}
