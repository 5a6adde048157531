use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fincat::FinitePoset;

/// A filter on a finite poset, stored as the sorted set of its elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filter {
    members: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FilterViolation {
    Empty,
    UnknownElement(usize),
    /// `member ∈ Φ`, `member ≤ above`, but `above ∉ Φ`.
    NotUpClosed {
        member: String,
        above: String,
    },
    /// No element of `Φ` lies below both.
    NoLowerBound {
        a: String,
        b: String,
    },
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterViolation::Empty => write!(f, "filter is empty"),
            FilterViolation::UnknownElement(e) => write!(f, "element {e} is not in the poset"),
            FilterViolation::NotUpClosed { member, above } => {
                write!(f, "not upwards closed: {member} is in the filter but {above} is not")
            }
            FilterViolation::NoLowerBound { a, b } => {
                write!(f, "no element of the filter lies below both {a} and {b}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub violations: Vec<FilterViolation>,
}

impl FilterReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check non-emptiness, upward closure and downward directedness of `members`.
pub fn validate_filter(poset: &FinitePoset, members: &[usize]) -> FilterReport {
    let mut report = FilterReport::default();
    let n = poset.len();
    if members.is_empty() {
        report.violations.push(FilterViolation::Empty);
        return report;
    }
    let mut set = BTreeSet::new();
    for &m in members {
        if m >= n {
            report.violations.push(FilterViolation::UnknownElement(m));
        } else {
            set.insert(m);
        }
    }
    if !report.is_valid() {
        return report;
    }
    for &m in &set {
        for above in poset.up_set(m) {
            if !set.contains(&above) {
                report.violations.push(FilterViolation::NotUpClosed { member: poset.names[m].clone(), above: poset.names[above].clone() });
            }
        }
    }
    for &a in &set {
        for &b in set.range(a..) {
            if !set.iter().any(|&z| poset.leq(z, a) && poset.leq(z, b)) {
                report.violations.push(FilterViolation::NoLowerBound { a: poset.names[a].clone(), b: poset.names[b].clone() });
            }
        }
    }
    report
}

impl Filter {
    pub fn new(poset: &FinitePoset, members: &[usize]) -> Result<Filter, FilterReport> {
        let report = validate_filter(poset, members);
        if report.is_valid() {
            Ok(Filter { members: members.iter().copied().collect() })
        } else {
            Err(report)
        }
    }

    /// `↑x`
    pub fn principal(poset: &FinitePoset, x: usize) -> Filter {
        Filter { members: poset.up_set(x).into_iter().collect() }
    }

    /// `{⊤}`; `None` if the poset has no top.
    pub fn trivial(poset: &FinitePoset) -> Option<Filter> {
        poset.top().map(|t| Filter { members: BTreeSet::from([t]) })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Some member below both `a` and `b`, preferring the meet.
    pub fn lower_bound(&self, poset: &FinitePoset, a: usize, b: usize) -> Option<usize> {
        if let Some(m) = poset.meet(a, b).filter(|m| self.contains(*m)) {
            return Some(m);
        }
        self.members().find(|&z| poset.leq(z, a) && poset.leq(z, b))
    }

    pub fn names(&self, poset: &FinitePoset) -> Vec<String> {
        self.members().map(|m| poset.names[m].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinitePoset {
        FinitePoset::from_fn(vec!["a".into(), "b".into(), "c".into()], |i, j| i <= j)
    }

    #[test]
    fn top_alone_is_a_filter() {
        let p = chain3();
        assert!(validate_filter(&p, &[2]).is_valid());
        assert_eq!(Filter::trivial(&p).unwrap().members().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn principal_filters_are_valid() {
        let p = FinitePoset::powerset(3);
        for x in 0..p.len() {
            let f = Filter::principal(&p, x);
            assert!(validate_filter(&p, &f.members().collect::<Vec<_>>()).is_valid());
        }
    }

    #[test]
    fn missing_top_is_reported() {
        let p = chain3();
        let r = validate_filter(&p, &[1]);
        assert_eq!(r.violations, vec![FilterViolation::NotUpClosed { member: "b".into(), above: "c".into() }]);
    }

    #[test]
    fn undirected_sets_are_rejected() {
        let p = FinitePoset::powerset(2);
        let r = validate_filter(&p, &[1, 2, 3]);
        assert!(r.violations.contains(&FilterViolation::NoLowerBound { a: "{1}".into(), b: "{2}".into() }));
        assert_eq!(validate_filter(&p, &[]).violations, vec![FilterViolation::Empty]);
        assert_eq!(validate_filter(&p, &[9]).violations, vec![FilterViolation::UnknownElement(9)]);
    }
}
