use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{is_iso, is_mono, Category, FiniteCategory};

/// How a class of arrows is specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassSpec {
    Isos,
    All,
    Identities,
    Monos,
    Explicit(Vec<String>),
    /// Arrows of a power category whose `i`-th component (one-based) is an isomorphism.
    ComponentIso(usize),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("component {0} out of range")]
    BadComponent(usize),
    #[error("component classes need a power category")]
    NotAPower,
    #[error("bad class spec `{0}`")]
    Syntax(String),
}

/// A class of arrows of a fixed category, stored as a membership vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismClass {
    pub name: String,
    pub members: Vec<bool>,
}

impl MorphismClass {
    pub fn from_fn(name: &str, c: &FiniteCategory, pred: impl Fn(usize) -> bool) -> Self {
        MorphismClass { name: name.to_string(), members: (0..c.arrow_count()).map(pred).collect() }
    }

    pub fn from_spec(name: &str, c: &FiniteCategory, spec: &ClassSpec) -> Result<Self, ClassError> {
        Ok(match spec {
            ClassSpec::Isos => Self::from_fn(name, c, |f| is_iso(c, &f)),
            ClassSpec::All => Self::from_fn(name, c, |_| true),
            ClassSpec::Identities => Self::from_fn(name, c, |f| c.is_identity(&f)),
            ClassSpec::Monos => Self::from_fn(name, c, |f| is_mono(c, &f)),
            ClassSpec::Explicit(names) => {
                let mut members = vec![false; c.arrow_count()];
                for n in names {
                    let f = c.find_arrow(n).ok_or_else(|| ClassError::UnknownArrow(n.clone()))?;
                    members[f] = true;
                }
                MorphismClass { name: name.to_string(), members }
            }
            ClassSpec::ComponentIso(i) => {
                let info = c.power_info().ok_or(ClassError::NotAPower)?;
                let n = info.object_parts.first().map_or(0, Vec::len);
                if *i == 0 || *i > n {
                    return Err(ClassError::BadComponent(*i));
                }
                Self::from_fn(name, c, |f| is_iso(&info.base, &info.arrow_parts[f][i - 1]))
            }
        })
    }

    pub fn contains(&self, f: usize) -> bool {
        self.members[f]
    }

    pub fn arrows(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&f| self.members[f]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|m| **m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn intersect(&self, other: &MorphismClass) -> MorphismClass {
        MorphismClass { name: format!("{}∩{}", self.name, other.name), members: self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect() }
    }

    pub fn names(&self, c: &FiniteCategory) -> Vec<String> {
        self.arrows().iter().map(|f| c.arrow_name(f)).collect()
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Isos => write!(f, "isos"),
            ClassSpec::All => write!(f, "all"),
            ClassSpec::Identities => write!(f, "identities"),
            ClassSpec::Monos => write!(f, "monos"),
            ClassSpec::Explicit(names) => write!(f, "explicit {{{}}}", names.join(" ")),
            ClassSpec::ComponentIso(i) => write!(f, "component-iso {i}"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "isos" => ClassSpec::Isos,
            "all" => ClassSpec::All,
            "identities" => ClassSpec::Identities,
            "monos" => ClassSpec::Monos,
            _ => {
                if let Some(rest) = s.strip_prefix("component-iso") {
                    ClassSpec::ComponentIso(rest.trim().parse().map_err(|_| ClassError::Syntax(s.into()))?)
                } else if let Some(rest) = s.strip_prefix("explicit") {
                    let body = rest.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| ClassError::Syntax(s.into()))?;
                    ClassSpec::Explicit(body.split_whitespace().map(String::from).collect())
                } else {
                    return Err(ClassError::Syntax(s.into()));
                }
            }
        })
    }
}
