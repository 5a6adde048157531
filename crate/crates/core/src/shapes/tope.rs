use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fibration::{Fiber, Fibration};
use crate::fincat::{Category, Functor, Obj};

/// A proposition in some fiber: lattice operations, pullback along a base
/// arrow, and named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Term {
    Top(String),
    Bot(String),
    Atom(String),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Pull(String, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("unknown atom {0}")]
    UnknownAtom(String),
    #[error("{0} lives over {1} but {2} is needed")]
    Sort(String, String, String),
    #[error("no cartesian lift of {0} at {1}")]
    NoLift(String, String),
    #[error("no {0} in the fiber over {1}")]
    NoLatticeOp(String, String),
}

fn split_args(s: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl FromStr for Term {
    type Err = TermError;
    fn from_str(s: &str) -> Result<Self, TermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(TermError::Parse("empty term".into()));
        }
        for op in ["meet", "join", "pull", "top", "bot"] {
            let Some(rest) = s.strip_prefix(op).and_then(|r| r.trim_start().strip_prefix('(')) else { continue };
            let inner = rest.strip_suffix(')').ok_or_else(|| TermError::Parse(format!("unclosed {op} in {s}")))?;
            let args = split_args(inner);
            let want = if op == "top" || op == "bot" { 1 } else { 2 };
            if args.len() != want || args.iter().any(|a| a.is_empty()) {
                return Err(TermError::Parse(format!("{op} takes {want} argument(s): {s}")));
            }
            return Ok(match op {
                "top" => Term::Top(args[0].into()),
                "bot" => Term::Bot(args[0].into()),
                "pull" => Term::Pull(args[0].into(), Box::new(args[1].parse()?)),
                "meet" => Term::Meet(Box::new(args[0].parse()?), Box::new(args[1].parse()?)),
                _ => Term::Join(Box::new(args[0].parse()?), Box::new(args[1].parse()?)),
            });
        }
        if s.contains(' ') {
            return Err(TermError::Parse(format!("unexpected space in {s}")));
        }
        Ok(Term::Atom(s.into()))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Top(x) => write!(f, "top({x})"),
            Term::Bot(x) => write!(f, "bot({x})"),
            Term::Atom(a) => write!(f, "{a}"),
            Term::Meet(a, b) => write!(f, "meet({a}, {b})"),
            Term::Join(a, b) => write!(f, "join({a}, {b})"),
            Term::Pull(g, t) => write!(f, "pull({g}, {t})"),
        }
    }
}

impl FromStr for Axiom {
    type Err = TermError;
    fn from_str(s: &str) -> Result<Self, TermError> {
        let (name, body) = s.split_once(':').ok_or_else(|| TermError::Parse(format!("axiom needs a name: {s}")))?;
        let (lhs, rhs) = body.split_once('=').ok_or_else(|| TermError::Parse(format!("axiom needs '=': {s}")))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(TermError::Parse(format!("bad axiom name in {s}")));
        }
        Ok(Axiom { name: name.into(), lhs: lhs.parse()?, rhs: rhs.parse()? })
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

/// An interval object with endpoints, named propositions and axioms, all
/// given by object and arrow names of a fibration.
///
/// In terms, the base object aliases `I` and `1` and the arrow aliases
/// `0`, `1` and `!` stand for the interval, the point, the endpoints and
/// the map to the point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalData {
    pub interval: String,
    pub point: String,
    pub zero: String,
    pub one: String,
    pub bang: String,
    pub atoms: BTreeMap<String, String>,
    pub axioms: Vec<Axiom>,
}

impl IntervalData {
    /// The same data seen through functors on base and total categories.
    pub fn transport(&self, src: &Fibration, tgt: &Fibration, base: &Functor, total: &Functor) -> Result<Self, TermError> {
        let obj = |n: &str| -> Result<String, TermError> {
            let x = src.base.find_object(n).ok_or_else(|| TermError::UnknownObject(n.into()))?;
            Ok(tgt.base.object_name(base.objects[x]))
        };
        let arr = |n: &str| -> Result<String, TermError> {
            let a = src.base.find_arrow(n).ok_or_else(|| TermError::UnknownArrow(n.into()))?;
            Ok(tgt.base.arrow_name(&base.apply(a)))
        };
        let mut atoms = BTreeMap::new();
        for (k, v) in &self.atoms {
            let d = src.total.find_object(v).ok_or_else(|| TermError::UnknownAtom(v.clone()))?;
            atoms.insert(k.clone(), tgt.total.object_name(total.objects[d]));
        }
        Ok(IntervalData {
            interval: obj(&self.interval)?,
            point: obj(&self.point)?,
            zero: arr(&self.zero)?,
            one: arr(&self.one)?,
            bang: arr(&self.bang)?,
            atoms,
            axioms: self.axioms.clone(),
        })
    }
}

impl fmt::Display for IntervalData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "interval {}", self.interval)?;
        writeln!(f, "point {}", self.point)?;
        writeln!(f, "zero {}", self.zero)?;
        writeln!(f, "one {}", self.one)?;
        writeln!(f, "bang {}", self.bang)?;
        for (k, v) in &self.atoms {
            writeln!(f, "atom {k} {v}")?;
        }
        for a in &self.axioms {
            writeln!(f, "axiom {a}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalData {
    type Err = TermError;
    fn from_str(s: &str) -> Result<Self, TermError> {
        let mut fields: BTreeMap<&str, String> = BTreeMap::new();
        let (mut atoms, mut axioms) = (BTreeMap::new(), Vec::new());
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (key, rest) = line.split_once(char::is_whitespace).ok_or_else(|| TermError::Parse(format!("bad line: {line}")))?;
            let rest = rest.trim();
            match key {
                "interval" | "point" | "zero" | "one" | "bang" => {
                    if fields.insert(key, rest.to_string()).is_some() {
                        return Err(TermError::Parse(format!("duplicate {key}")));
                    }
                }
                "atom" => {
                    let (name, obj) = rest.split_once(char::is_whitespace).ok_or_else(|| TermError::Parse(format!("bad atom: {line}")))?;
                    atoms.insert(name.to_string(), obj.trim().to_string());
                }
                "axiom" => axioms.push(rest.parse()?),
                _ => return Err(TermError::Parse(format!("unknown key {key}"))),
            }
        }
        let mut take = |k: &str| fields.remove(k).ok_or_else(|| TermError::Parse(format!("missing {k}")));
        Ok(IntervalData { interval: take("interval")?, point: take("point")?, zero: take("zero")?, one: take("one")?, bang: take("bang")?, atoms, axioms })
    }
}

/// Evaluates terms in the fibers of a fibration.
pub struct Evaluator<'a> {
    pub fibration: &'a Fibration,
    pub fibers: Vec<Fiber>,
    data: &'a IntervalData,
}

impl<'a> Evaluator<'a> {
    pub fn new(fibration: &'a Fibration, data: &'a IntervalData) -> Self {
        Evaluator { fibration, fibers: fibration.fibers(), data }
    }

    pub fn object(&self, name: &str) -> Result<Obj, TermError> {
        let name = match name {
            "I" => &self.data.interval,
            "1" => &self.data.point,
            n => n,
        };
        self.fibration.base.find_object(name).ok_or_else(|| TermError::UnknownObject(name.into()))
    }

    pub fn arrow(&self, name: &str) -> Result<usize, TermError> {
        let name = match name {
            "0" => &self.data.zero,
            "1" => &self.data.one,
            "!" => &self.data.bang,
            n => n,
        };
        self.fibration.base.find_arrow(name).ok_or_else(|| TermError::UnknownArrow(name.into()))
    }

    fn extreme(&self, x: Obj, top: bool) -> Result<(Obj, usize), TermError> {
        let order = &self.fibers[x].order;
        let e = if top { order.top() } else { order.bottom() };
        let what = if top { "top" } else { "bottom" };
        e.map(|e| (x, e)).ok_or_else(|| TermError::NoLatticeOp(what.into(), self.fibration.base.object_name(x)))
    }

    /// The base object and fiber element a term denotes.
    pub fn eval(&self, t: &Term) -> Result<(Obj, usize), TermError> {
        let (p, base) = (self.fibration, &self.fibration.base);
        match t {
            Term::Top(x) => self.extreme(self.object(x)?, true),
            Term::Bot(x) => self.extreme(self.object(x)?, false),
            Term::Atom(a) => {
                let name = self.data.atoms.get(a).map(String::as_str).unwrap_or(a);
                let d = p.total.find_object(name).ok_or_else(|| TermError::UnknownAtom(a.clone()))?;
                let x = p.projection.objects[d];
                Ok((x, self.fibers[x].element(d).expect("object lies in its fiber")))
            }
            Term::Meet(a, b) | Term::Join(a, b) => {
                let ((x, i), (y, j)) = (self.eval(a)?, self.eval(b)?);
                if x != y {
                    return Err(TermError::Sort(b.to_string(), base.object_name(y), base.object_name(x)));
                }
                let order = &self.fibers[x].order;
                let (op, r) = match t {
                    Term::Meet(..) => ("meet", order.meet(i, j)),
                    _ => ("join", order.join(i, j)),
                };
                r.map(|r| (x, r)).ok_or_else(|| TermError::NoLatticeOp(op.into(), base.object_name(x)))
            }
            Term::Pull(g, s) => {
                let f = self.arrow(g)?;
                let (y, j) = self.eval(s)?;
                if base.cod(&f) != y {
                    return Err(TermError::Sort(s.to_string(), base.object_name(y), base.object_name(base.cod(&f))));
                }
                let e = self.fibers[y].reps[j];
                let x = base.dom(&f);
                p.pull(f, e, &self.fibers).map(|i| (x, i)).ok_or_else(|| TermError::NoLift(base.arrow_name(&f), p.total.object_name(e)))
            }
        }
    }

    pub fn describe(&self, v: (Obj, usize)) -> String {
        self.fibers[v.0].order.names[v.1].clone()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalReport {
    pub errors: Vec<String>,
    pub failed: Vec<AxiomFailure>,
    /// The endpoints are different arrows.
    pub distinct: bool,
}

impl IntervalReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty() && self.failed.is_empty() && self.distinct
    }
}

/// Typing of the endpoints, every axiom, and distinctness of `0` and `1`.
pub fn check_strict_interval(p: &Fibration, data: &IntervalData) -> IntervalReport {
    let ev = Evaluator::new(p, data);
    let mut report = IntervalReport::default();
    let base = &p.base;
    let typed = (|| -> Result<(usize, usize), TermError> {
        let (i, pt) = (ev.object("I")?, ev.object("1")?);
        let (z, o, b) = (ev.arrow("0")?, ev.arrow("1")?, ev.arrow("!")?);
        for (name, a, d, c) in [("0", z, pt, i), ("1", o, pt, i), ("!", b, i, pt)] {
            if base.dom(&a) != d || base.cod(&a) != c {
                return Err(TermError::Sort(name.into(), base.object_name(base.dom(&a)), base.object_name(d)));
            }
        }
        Ok((z, o))
    })();
    match typed {
        Ok((z, o)) => report.distinct = z != o,
        Err(e) => report.errors.push(e.to_string()),
    }
    for ax in &data.axioms {
        match (ev.eval(&ax.lhs), ev.eval(&ax.rhs)) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => report.failed.push(AxiomFailure { axiom: ax.name.clone(), lhs: ev.describe(l), rhs: ev.describe(r) }),
            (Err(e), _) | (_, Err(e)) => report.errors.push(format!("{}: {e}", ax.name)),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_round_trip() {
        for s in ["top(1)", "meet(is0, is1)", "pull(!, bot(1))", "join(pull(0, is0), (2:{0},2:{1}))"] {
            let t: Term = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("meet(a)".parse::<Term>().is_err());
        assert!("pull(0, a".parse::<Term>().is_err());
        let a: Axiom = "x: meet(a, b) = bot(I)".parse().unwrap();
        assert_eq!(a.to_string().parse::<Axiom>().unwrap(), a);
    }
}
