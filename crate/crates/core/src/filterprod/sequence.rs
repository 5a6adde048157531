use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tail generators with decidable cofinite agreement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Constant(u64),
    /// `n ↦ n + shift`
    Identity {
        shift: u64,
    },
    /// `n ↦ ⌊n/2⌋ + shift`
    FloorHalf {
        shift: u64,
    },
    /// `n ↦ n mod 2`
    Parity,
    /// A named sequence with no known values; only equal to itself.
    Opaque(String),
}

impl Generator {
    pub fn value(&self, n: u64) -> Option<u64> {
        match self {
            Generator::Constant(c) => Some(*c),
            Generator::Identity { shift } => Some(n + shift),
            Generator::FloorHalf { shift } => Some(n / 2 + shift),
            Generator::Parity => Some(n % 2),
            Generator::Opaque(_) => None,
        }
    }

    fn is_unbounded(&self) -> bool {
        matches!(self, Generator::Identity { .. } | Generator::FloorHalf { .. })
    }
}

/// Whether two generators agree on a cofinite set.
///
/// Distinct known generators agree on at most finitely many points:
/// bounded against unbounded eventually separates, two distinct lines
/// `n + s`, `n + t` never meet, `n + s` and `⌊n/2⌋ + t` meet at most twice,
/// and parity takes both values infinitely often.
pub fn generators_verdict(a: &Generator, b: &Generator) -> Verdict {
    use Generator::*;
    match (a, b) {
        (Opaque(x), Opaque(y)) if x == y => Verdict::Equal,
        (Opaque(_), _) | (_, Opaque(_)) => Verdict::Undecidable(format!("no decision procedure for {a} against {b}")),
        _ if a == b => Verdict::Equal,
        (Constant(_), Constant(_)) | (Identity { .. }, Identity { .. }) | (FloorHalf { .. }, FloorHalf { .. }) => Verdict::NotEqual,
        _ if a.is_unbounded() != b.is_unbounded() => Verdict::NotEqual,
        (Identity { .. }, FloorHalf { .. }) | (FloorHalf { .. }, Identity { .. }) => Verdict::NotEqual,
        (Parity, Constant(_)) | (Constant(_), Parity) => Verdict::NotEqual,
        _ => Verdict::Undecidable(format!("no decision procedure for {a} against {b}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tail {
    pub generator: Generator,
    /// An object constructor applied to the generated index, e.g. `sphere`.
    pub constructor: Option<String>,
}

/// A sequence given by finitely many exceptions over a tail generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EventualSequence {
    pub tail: Tail,
    pub exceptions: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Equal,
    NotEqual,
    Undecidable(String),
}

impl EventualSequence {
    pub fn new(generator: Generator) -> Self {
        EventualSequence { tail: Tail { generator, constructor: None }, exceptions: BTreeMap::new() }
    }

    pub fn constant(c: u64) -> Self {
        Self::new(Generator::Constant(c))
    }

    pub fn identity() -> Self {
        Self::new(Generator::Identity { shift: 0 })
    }

    pub fn with_constructor(mut self, name: &str) -> Self {
        self.tail.constructor = Some(name.to_string());
        self
    }

    pub fn except(mut self, n: u64, v: u64) -> Self {
        self.exceptions.insert(n, v);
        self
    }

    /// The index at position `n`, `None` for opaque tails.
    pub fn value(&self, n: u64) -> Option<u64> {
        self.exceptions.get(&n).copied().or_else(|| self.tail.generator.value(n))
    }

    /// Least `N` with `s(n) = t(n)` for every `n ≥ N`, when the germs are equal.
    pub fn eventually_agree_from(&self, other: &Self) -> Option<u64> {
        if frechet_germ_eq(self, other) != Verdict::Equal {
            return None;
        }
        let mut last = None;
        for &k in self.exceptions.keys().chain(other.exceptions.keys()) {
            if self.value(k) != other.value(k) {
                last = last.max(Some(k));
            }
        }
        Some(last.map_or(0, |k| k + 1))
    }
}

/// Fréchet germ equality: the disagreement set is finite.
///
/// Exceptions change finitely many positions, so only the tails matter;
/// sequences over different constructors live in different universes and
/// are reported as undecidable.
pub fn frechet_germ_eq(s: &EventualSequence, t: &EventualSequence) -> Verdict {
    if s.tail.constructor != t.tail.constructor {
        return Verdict::Undecidable("sequences over different constructors".into());
    }
    generators_verdict(&s.tail.generator, &t.tail.generator)
}

/// Germ classes of a sample of sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    /// Indices into the sample, each class sorted, classes ordered by the
    /// canonical encoding of their first member.
    pub classes: Vec<Vec<usize>>,
    /// Classes isolated because a comparison was undecidable.
    pub undecidable: Vec<bool>,
}

impl Partition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

pub fn internal_naturals(sample: &[EventualSequence]) -> Partition {
    let mut order: Vec<usize> = (0..sample.len()).collect();
    order.sort_by(|&a, &b| sample[a].to_string().cmp(&sample[b].to_string()).then(a.cmp(&b)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut undecidable: Vec<bool> = Vec::new();
    'next: for &i in &order {
        let mut unsure = false;
        for (k, class) in classes.iter_mut().enumerate() {
            if undecidable[k] {
                continue;
            }
            match frechet_germ_eq(&sample[class[0]], &sample[i]) {
                Verdict::Equal => {
                    class.push(i);
                    continue 'next;
                }
                Verdict::NotEqual => {}
                Verdict::Undecidable(_) => unsure = true,
            }
        }
        classes.push(vec![i]);
        undecidable.push(unsure);
    }
    for class in &mut classes {
        class.sort();
    }
    Partition { classes, undecidable }
}

/// `k` pairwise inequivalent germs `n ↦ n + i`, none of them standard.
pub fn inequivalent_family(k: u64) -> Vec<EventualSequence> {
    (0..k).map(|i| EventualSequence::new(Generator::Identity { shift: i })).collect()
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Constant(c) => write!(f, "const({c})"),
            Generator::Identity { shift: 0 } => write!(f, "id"),
            Generator::Identity { shift } => write!(f, "id+{shift}"),
            Generator::FloorHalf { shift: 0 } => write!(f, "half"),
            Generator::FloorHalf { shift } => write!(f, "half+{shift}"),
            Generator::Parity => write!(f, "parity"),
            Generator::Opaque(name) => write!(f, "opaque({name})"),
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.constructor {
            Some(c) => write!(f, "{c}({})", self.generator),
            None => write!(f, "{}", self.generator),
        }
    }
}

impl fmt::Display for EventualSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seq tail={}", self.tail)?;
        if !self.exceptions.is_empty() {
            let parts: Vec<String> = self.exceptions.iter().map(|(n, v)| format!("{n}:{v}")).collect();
            write!(f, " except {{{}}}", parts.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("bad sequence literal `{input}`: {reason}")]
pub struct SequenceParseError {
    pub input: String,
    pub reason: String,
}

fn parse_generator(s: &str) -> Result<Generator, String> {
    let s = s.trim();
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("not a number: {t}"));
    let shifted = |rest: &str| {
        if rest.is_empty() {
            Ok(0)
        } else {
            rest.strip_prefix('+').ok_or("expected +k").and_then(|r| num(r).map_err(|_| "bad shift")).map_err(String::from)
        }
    };
    if let Some(rest) = s.strip_prefix("const(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Generator::Constant(num(rest)?));
    }
    if let Some(rest) = s.strip_prefix("opaque(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Generator::Opaque(rest.trim().to_string()));
    }
    if s == "parity" {
        return Ok(Generator::Parity);
    }
    if s == "identity" {
        return Ok(Generator::Identity { shift: 0 });
    }
    if let Some(rest) = s.strip_prefix("half") {
        return Ok(Generator::FloorHalf { shift: shifted(rest)? });
    }
    if let Some(rest) = s.strip_prefix("id") {
        return Ok(Generator::Identity { shift: shifted(rest)? });
    }
    Err(format!("unknown generator {s}"))
}

/// `gen` or `ctor(gen)`.
pub fn parse_tail(s: &str) -> Result<Tail, String> {
    let s = s.trim();
    if let Ok(generator) = parse_generator(s) {
        return Ok(Tail { generator, constructor: None });
    }
    let open = s.find('(').ok_or_else(|| format!("unknown tail {s}"))?;
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(|| format!("unbalanced tail {s}"))?;
    let name = &s[..open];
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(format!("bad constructor {name}"));
    }
    Ok(Tail { generator: parse_generator(inner)?, constructor: Some(name.to_string()) })
}

/// `{n:v, ...}`
pub fn parse_exceptions(s: &str) -> Result<BTreeMap<u64, u64>, String> {
    let body = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or("expected {...}")?;
    let mut out = BTreeMap::new();
    for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (n, v) = item.split_once(':').ok_or_else(|| format!("expected n:v, got {item}"))?;
        let n = n.trim().parse().map_err(|_| format!("bad index {n}"))?;
        let v = v.trim().parse().map_err(|_| format!("bad value {v}"))?;
        if out.insert(n, v).is_some() {
            return Err(format!("duplicate index {n}"));
        }
    }
    Ok(out)
}

impl FromStr for EventualSequence {
    type Err = SequenceParseError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| SequenceParseError { input: input.to_string(), reason };
        let rest = input.trim().strip_prefix("seq").ok_or_else(|| err("expected `seq`".into()))?;
        let rest = rest.trim_start().strip_prefix("tail=").ok_or_else(|| err("expected `tail=`".into()))?;
        let (tail, exceptions) = match rest.find(" except") {
            Some(i) => (&rest[..i], parse_exceptions(rest[i + " except".len()..].trim()).map_err(err)?),
            None => (rest, BTreeMap::new()),
        };
        Ok(EventualSequence { tail: parse_tail(tail).map_err(err)?, exceptions })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        for text in ["seq tail=id", "seq tail=const(3) except {0:1, 4:7}", "seq tail=sphere(half+1)", "seq tail=opaque(busy) except {2:2}", "seq tail=parity"] {
            let s: EventualSequence = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert!("seq tail=nope".parse::<EventualSequence>().is_err());
        assert!("seq tail=id except {1:2, 1:3}".parse::<EventualSequence>().is_err());
    }

    #[test]
    fn verdict_examples() {
        let id = EventualSequence::identity();
        let early = (0..5).fold(EventualSequence::identity(), |s, n| s.except(n, 7));
        assert_eq!(frechet_germ_eq(&id, &early), Verdict::Equal);
        assert_eq!(id.eventually_agree_from(&early), Some(5));
        assert_eq!(frechet_germ_eq(&id, &EventualSequence::constant(4)), Verdict::NotEqual);
        let a = EventualSequence::constant(2).except(0, 9);
        let b = EventualSequence::constant(2).except(3, 1);
        assert_eq!(frechet_germ_eq(&a, &b), Verdict::Equal);
        let opaque = EventualSequence::new(Generator::Opaque("x".into()));
        assert!(matches!(frechet_germ_eq(&opaque, &id), Verdict::Undecidable(_)));
    }

    #[test]
    fn partition_examples() {
        let p = internal_naturals(&[EventualSequence::constant(0), EventualSequence::constant(1), EventualSequence::identity()]);
        assert_eq!(p.class_count(), 3);
        let shifted = (0..5).fold(EventualSequence::identity(), |s, n| s.except(n, n + 10));
        assert_eq!(internal_naturals(&[EventualSequence::identity(), shifted]).class_count(), 1);
        let consts: Vec<_> = (0..6).map(EventualSequence::constant).collect();
        assert_eq!(internal_naturals(&consts).class_count(), 6);
        let opaque = EventualSequence::new(Generator::Opaque("x".into()));
        let p = internal_naturals(&[EventualSequence::identity(), opaque]);
        assert_eq!(p.undecidable.iter().filter(|u| **u).count(), 1);
    }
}
