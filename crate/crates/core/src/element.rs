//! Element values shared by every semigroup in the crate.
//!
//! An [`Element`] carries its own canonical serialization through `Display`,
//! and the derived `Ord` is the canonical order used for printing
//! polynomials and sorting decompositions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An index paired with its display name. Used for Cayley-table elements and
/// for the labels of a direct-limit index set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Named {
    pub id: u32,
    pub name: Arc<str>,
}

impl Named {
    pub fn new(id: u32, name: impl Into<Arc<str>>) -> Self {
        Named {
            id,
            name: name.into(),
        }
    }

    /// A label whose name is its decimal id.
    pub fn numeric(id: u32) -> Self {
        Named::new(id, id.to_string())
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A commutative monomial `X^alpha`, stored as variable index -> nonzero exponent.
///
/// Exponents may be negative (Laurent monomials); which exponents are legal
/// is decided by the semigroup the monomial is used in.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<u32, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: u32) -> Self {
        Monomial::from_exponents([(index, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in exps {
            *m.entry(v).or_insert(0) += e;
        }
        m.retain(|_, e| *e != 0);
        Monomial(m)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn exponent(&self, var: u32) -> i64 {
        self.0.get(&var).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.0.values().all(|e| *e > 0)
    }

    /// Sum of exponents.
    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }

    /// Sum of absolute exponents.
    pub fn abs_degree(&self) -> i64 {
        self.0.values().map(|e| e.abs()).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exponents().chain(other.exponents()))
    }

    pub fn parse(s: &str) -> Result<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut exps = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (v.trim(), e)
                }
                None => (factor, 1),
            };
            let idx = var
                .strip_prefix('x')
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or_else(|| Error::Parse(format!("bad variable `{var}` (expected x<n>)")))?;
            exps.push((idx, exp));
        }
        Ok(Monomial::from_exponents(exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A value inhabiting one concrete semigroup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Element of a Cayley table.
    Table(Named),
    /// Natural number (positive for `nat-plus`).
    Nat(u64),
    /// Monomial or Laurent monomial.
    Monomial(Monomial),
    /// Word over named letters; empty word is the unit.
    Word(Vec<String>),
    /// Composition, entries >= 1.
    Composition(Vec<u32>),
    /// Bicomposition, pairs with at most one zero coordinate.
    Bicomposition(Vec<(u32, u32)>),
    /// Word whose letters are nonempty monomials.
    MonoWord(Vec<Monomial>),
    /// Element of a disjoint direct limit, tagged by its index label.
    Pair(Named, Box<Element>),
}

/// Variant discriminant of an [`Element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKind {
    Table,
    Nat,
    Monomial,
    Word,
    Composition,
    Bicomposition,
    MonoWord,
    Pair,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElementKind::Table => "table element",
            ElementKind::Nat => "natural",
            ElementKind::Monomial => "monomial",
            ElementKind::Word => "word",
            ElementKind::Composition => "composition",
            ElementKind::Bicomposition => "bicomposition",
            ElementKind::MonoWord => "word of monomials",
            ElementKind::Pair => "ddl pair",
        };
        f.write_str(s)
    }
}

impl Element {
    pub fn kind(&self) -> ElementKind {
        match self {
            Element::Table(_) => ElementKind::Table,
            Element::Nat(_) => ElementKind::Nat,
            Element::Monomial(_) => ElementKind::Monomial,
            Element::Word(_) => ElementKind::Word,
            Element::Composition(_) => ElementKind::Composition,
            Element::Bicomposition(_) => ElementKind::Bicomposition,
            Element::MonoWord(_) => ElementKind::MonoWord,
            Element::Pair(..) => ElementKind::Pair,
        }
    }

    pub fn word<S: AsRef<str>>(letters: &[S]) -> Element {
        Element::Word(letters.iter().map(|l| l.as_ref().to_string()).collect())
    }

    pub fn pair(label: Named, inner: Element) -> Element {
        Element::Pair(label, Box::new(inner))
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Element::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self {
            Element::Monomial(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Named, &Element)> {
        match self {
            Element::Pair(l, e) => Some((l, e)),
            _ => None,
        }
    }

    /// Length of a word-like element; `None` for scalars.
    pub fn word_len(&self) -> Option<usize> {
        match self {
            Element::Word(w) => Some(w.len()),
            Element::Composition(c) => Some(c.len()),
            Element::Bicomposition(c) => Some(c.len()),
            Element::MonoWord(c) => Some(c.len()),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Table(n) => write!(f, "{n}"),
            Element::Nat(n) => write!(f, "{n}"),
            Element::Monomial(m) => write!(f, "{m}"),
            Element::Word(w) => {
                if w.is_empty() {
                    f.write_str("1")
                } else {
                    f.write_str(&w.join(" "))
                }
            }
            Element::Composition(c) => {
                let parts: Vec<String> = c.iter().map(|s| s.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::Bicomposition(c) => {
                let parts: Vec<String> = c.iter().map(|(a, b)| format!("{a}/{b}")).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::MonoWord(w) => {
                if w.is_empty() {
                    return f.write_str("1");
                }
                for m in w {
                    write!(f, "[{m}]")?;
                }
                Ok(())
            }
            Element::Pair(l, e) => write!(f, "({l}|{e})"),
        }
    }
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
        .trim()
}

/// Parses `2,3` or `(2,3)`; `()` and the empty string give the empty composition.
pub fn parse_composition(s: &str) -> Result<Vec<u32>> {
    let body = strip_parens(s);
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|p| {
            let p = p.trim();
            match p.parse::<u32>() {
                Ok(v) if v >= 1 => Ok(v),
                Ok(_) => Err(Error::Parse(format!("composition entry `{p}` must be >= 1"))),
                Err(_) => Err(Error::Parse(format!("bad composition entry `{p}`"))),
            }
        })
        .collect()
}

/// Parses `2/1,3/0` or `(2/1,3/0)`.
pub fn parse_bicomposition(s: &str) -> Result<Vec<(u32, u32)>> {
    let body = strip_parens(s);
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|p| {
            let p = p.trim();
            let (a, b) = p
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("bicomposition entry `{p}` needs a/b")))?;
            let a: u32 = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad entry `{p}`")))?;
            let b: u32 = b
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad entry `{p}`")))?;
            if a == 0 && b == 0 {
                return Err(Error::Parse(format!("bicomposition entry `{p}` is (0,0)")));
            }
            Ok((a, b))
        })
        .collect()
}

/// Parses space-separated letters; `1` or the empty string is the empty word.
pub fn parse_word(s: &str) -> Vec<String> {
    let s = s.trim();
    if s == "1" {
        return Vec::new();
    }
    s.split_whitespace().map(str::to_string).collect()
}

/// Parses `[x1^2][x1]`; `1` or the empty string is the empty word.
pub fn parse_monoword(s: &str) -> Result<Vec<Monomial>> {
    let mut rest = s.trim();
    if rest.is_empty() || rest == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('[')
            .ok_or_else(|| Error::Parse(format!("expected `[` in `{s}`")))?;
        let close = inner
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unclosed `[` in `{s}`")))?;
        let m = Monomial::parse(&inner[..close])?;
        if m.is_one() || !m.all_positive() {
            return Err(Error::Parse(format!(
                "letter `[{}]` must be a nonempty monomial with positive exponents",
                &inner[..close]
            )));
        }
        out.push(m);
        rest = inner[close + 1..].trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_display_is_sorted() {
        let m = Monomial::from_exponents([(3, 1), (1, 2)]);
        assert_eq!(m.to_string(), "x1^2*x3");
        assert_eq!(Monomial::parse("x3*x1^2").unwrap(), m);
        assert_eq!(Monomial::parse("x1^-1").unwrap().to_string(), "x1^-1");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(Element::Composition(vec![2, 3]).to_string(), "(2,3)");
        assert_eq!(
            Element::Bicomposition(vec![(2, 1), (3, 0)]).to_string(),
            "(2/1,3/0)"
        );
        assert_eq!(Element::word(&["x0", "x1"]).to_string(), "x0 x1");
        let w = Element::MonoWord(vec![Monomial::from_exponents([(1, 2)]), Monomial::var(1)]);
        assert_eq!(w.to_string(), "[x1^2][x1]");
        assert_eq!(
            Element::pair(Named::numeric(1), Element::Nat(3)).to_string(),
            "(1|3)"
        );
    }

    #[test]
    fn parsers_reject_bad_entries() {
        assert!(parse_composition("2,0").is_err());
        assert!(parse_bicomposition("0/0").is_err());
        assert_eq!(parse_bicomposition("2/0").unwrap(), vec![(2, 0)]);
        assert!(parse_monoword("[1]").is_err());
        assert_eq!(parse_monoword("[x1^2][x1]").unwrap().len(), 2);
        assert_eq!(parse_composition("()").unwrap(), Vec::<u32>::new());
        assert!(parse_word("1").is_empty());
    }
}
