use thiserror::Error;

use crate::filtquot::{filter_quotient, Filter, FilterQuotient, FilterReport, QuotientError};
use crate::fincat::builtins::{power, power_object};
use crate::fincat::limits::{initial, terminal};
use crate::fincat::{is_iso, subterminal_poset, Category, FiniteCategory, FinitePoset, Obj, SubterminalPoset};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProductError {
    #[error("no initial object")]
    NoInitial,
    #[error("initial object is not strict: {0} is not an isomorphism")]
    NotStrict(String),
    #[error("no terminal object")]
    NoTerminal,
    #[error("invalid filter on the index set: {0:?}")]
    InvalidFilter(FilterReport),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// A strict initial object: every arrow into it is an isomorphism.
pub fn strict_initial(c: &FiniteCategory) -> Result<Obj, ProductError> {
    let z = initial(c).ok_or(ProductError::NoInitial)?;
    for x in c.objects() {
        if let Some(f) = c.hom(x, z).iter().find(|f| !is_iso(c, f)) {
            return Err(ProductError::NotStrict(c.arrow_name(f)));
        }
    }
    Ok(z)
}

/// `∏_Φ C` for a filter `Φ` of subsets of a finite index set.
#[derive(Clone, Debug)]
pub struct FilterProduct {
    pub index_size: usize,
    /// `∏_I C`.
    pub power: FiniteCategory,
    pub subterminals: SubterminalPoset,
    /// `Φ` transported to the subterminals of `∏_I C`.
    pub filter: Filter,
    /// `(S, U_S)` for each `S ∈ Φ`.
    pub members: Vec<(u64, Obj)>,
    pub quotient: FilterQuotient,
}

/// `U_S`: terminal on `S`, strict initial off `S`.
pub fn indicator(c: &FiniteCategory, n: usize, s: u64, one: Obj, zero: Obj) -> Obj {
    let parts: Vec<Obj> = (0..n).map(|i| if s >> i & 1 == 1 { one } else { zero }).collect();
    power_object(c, &parts)
}

pub fn finite_filter_product(c: &FiniteCategory, n: usize, phi: &[u64]) -> Result<FilterProduct, ProductError> {
    let zero = strict_initial(c)?;
    let one = terminal(c).ok_or(ProductError::NoTerminal)?;
    let subsets = FinitePoset::powerset(n);
    let phi_idx: Vec<usize> = phi.iter().map(|&s| s as usize).collect();
    Filter::new(&subsets, &phi_idx).map_err(ProductError::InvalidFilter)?;
    let power = power(c, n);
    let subterminals = subterminal_poset(&power);
    let members: Vec<(u64, Obj)> = phi.iter().map(|&s| (s, indicator(c, n, s, one, zero))).collect();
    let mut elements: Vec<usize> = Vec::new();
    for &(_, u) in &members {
        let e = subterminals.element_of(u).expect("U_S is subterminal");
        for above in subterminals.poset.up_set(e) {
            if !elements.contains(&above) {
                elements.push(above);
            }
        }
    }
    let filter = Filter::new(&subterminals.poset, &elements).map_err(ProductError::InvalidFilter)?;
    let quotient = filter_quotient(&power, &subterminals, &filter)?;
    Ok(FilterProduct { index_size: n, power, subterminals, filter, members, quotient })
}

/// Whether `S ↦ U_S` is an order isomorphism from subsets of `{1..n}` onto
/// its image in the subterminals of `∏_I C`.
pub fn indicators_match_powerset(c: &FiniteCategory, n: usize) -> Result<bool, ProductError> {
    let zero = strict_initial(c)?;
    let one = terminal(c).ok_or(ProductError::NoTerminal)?;
    let p = power(c, n);
    let st = subterminal_poset(&p);
    let subsets = FinitePoset::powerset(n);
    let els: Option<Vec<usize>> = (0..1u64 << n).map(|s| st.element_of(indicator(c, n, s, one, zero))).collect();
    let Some(els) = els else { return Ok(false) };
    let mut distinct = els.clone();
    distinct.sort();
    distinct.dedup();
    Ok(distinct.len() == els.len() && (0..els.len()).all(|a| (0..els.len()).all(|b| subsets.leq(a, b) == st.poset.leq(els[a], els[b]))))
}
