use std::path::Path;
use std::sync::Arc;

use super::{Capabilities, FdStatus, FiniteTable, Semigroup, SemigroupHandle};
use crate::element::{Element, Monomial};
use crate::error::{Error, Result};

/// Number of variables spanned by the graded balls of the monomial semigroups.
pub const BALL_VARS: u32 = 2;

/// `(N+, +)` or `(N, +)`. Graded by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NatSemigroup {
    with_zero: bool,
}

impl NatSemigroup {
    pub fn positive() -> Self {
        NatSemigroup { with_zero: false }
    }

    pub fn with_zero() -> Self {
        NatSemigroup { with_zero: true }
    }

    fn min(&self) -> u64 {
        if self.with_zero {
            0
        } else {
            1
        }
    }
}

impl Semigroup for NatSemigroup {
    fn name(&self) -> &str {
        if self.with_zero {
            "nat-monoid"
        } else {
            "nat-plus"
        }
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Nat(n) if *n >= self.min())
    }

    fn law(&self, a: &Element, b: &Element) -> Element {
        Element::Nat(a.as_nat().unwrap() + b.as_nat().unwrap())
    }

    fn neutral(&self) -> Option<Element> {
        self.with_zero.then_some(Element::Nat(0))
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            finite_decomposition: FdStatus::Yes,
            decomposer: true,
            units_oracle: true,
        }
    }

    fn factor_pairs(&self, t: &Element) -> Option<Vec<(Element, Element)>> {
        let t = t.as_nat()?;
        let lo = self.min();
        if t < 2 * lo {
            return Some(Vec::new());
        }
        Some(
            (lo..=t - lo)
                .map(|a| (Element::Nat(a), Element::Nat(t - a)))
                .collect(),
        )
    }

    fn ball(&self, radius: usize) -> Vec<Element> {
        (self.min()..=radius as u64).map(Element::Nat).collect()
    }

    fn units_oracle(&self) -> Option<Vec<Element>> {
        Some(self.neutral().into_iter().collect())
    }

    fn strip_units(&self) -> Option<SemigroupHandle> {
        Some(Arc::new(NatSemigroup::positive()))
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let n: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("expected a natural number, got `{s}`")))?;
        let e = Element::Nat(n);
        super::ensure_member(self, &e)?;
        Ok(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonKind {
    /// Nonempty monomials, exponents >= 0.
    Plus,
    /// All monomials including 1.
    Full,
    /// Laurent monomials, integer exponents.
    Laurent,
}

/// Commutative monomials under multiplication. Graded by total degree
/// (absolute degree for Laurent monomials); balls span `x1..x{BALL_VARS}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonSemigroup {
    pub kind: MonKind,
}

impl MonSemigroup {
    fn exponent_vectors(radius: i64, laurent: bool) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..BALL_VARS {
            let mut next = Vec::new();
            for v in &out {
                let used: i64 = v.iter().map(|e: &i64| e.abs()).sum();
                let left = radius - used;
                let lo = if laurent { -left } else { 0 };
                for e in lo..=left {
                    let mut w = v.clone();
                    w.push(e);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

impl Semigroup for MonSemigroup {
    fn name(&self) -> &str {
        match self.kind {
            MonKind::Plus => "mon-plus",
            MonKind::Full => "mon",
            MonKind::Laurent => "mon-laurent",
        }
    }

    fn contains(&self, x: &Element) -> bool {
        match (x, self.kind) {
            (Element::Monomial(m), MonKind::Plus) => !m.is_one() && m.all_positive(),
            (Element::Monomial(m), MonKind::Full) => m.all_positive(),
            (Element::Monomial(_), MonKind::Laurent) => true,
            _ => false,
        }
    }

    fn law(&self, a: &Element, b: &Element) -> Element {
        Element::Monomial(a.as_monomial().unwrap().mul(b.as_monomial().unwrap()))
    }

    fn neutral(&self) -> Option<Element> {
        match self.kind {
            MonKind::Plus => None,
            _ => Some(Element::Monomial(Monomial::one())),
        }
    }

    fn capabilities(&self) -> Capabilities {
        match self.kind {
            MonKind::Laurent => Capabilities {
                finite_decomposition: FdStatus::No,
                decomposer: false,
                units_oracle: false,
            },
            _ => Capabilities {
                finite_decomposition: FdStatus::Yes,
                decomposer: true,
                units_oracle: true,
            },
        }
    }

    fn factor_pairs(&self, t: &Element) -> Option<Vec<(Element, Element)>> {
        if self.kind == MonKind::Laurent {
            return None;
        }
        let t = t.as_monomial()?;
        let vars: Vec<(u32, i64)> = t.exponents().collect();
        let mut splits: Vec<Vec<(u32, i64)>> = vec![Vec::new()];
        for (v, e) in &vars {
            let mut next = Vec::new();
            for s in &splits {
                for k in 0..=*e {
                    let mut s2 = s.clone();
                    s2.push((*v, k));
                    next.push(s2);
                }
            }
            splits = next;
        }
        let mut out = Vec::new();
        for left in splits {
            let a = Monomial::from_exponents(left.iter().copied());
            let b = Monomial::from_exponents(
                vars.iter()
                    .zip(&left)
                    .map(|((v, e), (_, k))| (*v, e - k)),
            );
            if self.kind == MonKind::Plus && (a.is_one() || b.is_one()) {
                continue;
            }
            out.push((Element::Monomial(a), Element::Monomial(b)));
        }
        Some(out)
    }

    fn ball(&self, radius: usize) -> Vec<Element> {
        let laurent = self.kind == MonKind::Laurent;
        let mut out: Vec<Element> = MonSemigroup::exponent_vectors(radius as i64, laurent)
            .into_iter()
            .map(|v| {
                Element::Monomial(Monomial::from_exponents(
                    v.into_iter().enumerate().map(|(i, e)| (i as u32 + 1, e)),
                ))
            })
            .filter(|e| self.contains(e))
            .collect();
        out.sort();
        out
    }

    fn units_oracle(&self) -> Option<Vec<Element>> {
        match self.kind {
            MonKind::Laurent => None,
            _ => Some(self.neutral().into_iter().collect()),
        }
    }

    fn strip_units(&self) -> Option<SemigroupHandle> {
        match self.kind {
            MonKind::Laurent => None,
            _ => Some(Arc::new(MonSemigroup { kind: MonKind::Plus })),
        }
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let e = Element::Monomial(Monomial::parse(s)?);
        super::ensure_member(self, &e)?;
        Ok(e)
    }
}

/// The additive semigroup `[lower, +inf)` of naturals. Graded by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lower: u64,
    name: String,
}

impl Interval {
    pub fn new(lower: u64) -> Self {
        Interval {
            lower,
            name: format!("interval-{lower}"),
        }
    }
}

impl Semigroup for Interval {
    fn name(&self) -> &str {
        &self.name
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Nat(n) if *n >= self.lower)
    }

    fn law(&self, a: &Element, b: &Element) -> Element {
        Element::Nat(a.as_nat().unwrap() + b.as_nat().unwrap())
    }

    fn neutral(&self) -> Option<Element> {
        (self.lower == 0).then_some(Element::Nat(0))
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            finite_decomposition: FdStatus::Yes,
            decomposer: true,
            units_oracle: true,
        }
    }

    fn factor_pairs(&self, t: &Element) -> Option<Vec<(Element, Element)>> {
        let t = t.as_nat()?;
        let lo = self.lower;
        if t < 2 * lo {
            return Some(Vec::new());
        }
        Some(
            (lo..=t - lo)
                .map(|a| (Element::Nat(a), Element::Nat(t - a)))
                .collect(),
        )
    }

    fn ball(&self, radius: usize) -> Vec<Element> {
        (self.lower..=radius as u64).map(Element::Nat).collect()
    }

    fn units_oracle(&self) -> Option<Vec<Element>> {
        Some(self.neutral().into_iter().collect())
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let n: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("expected a natural number, got `{s}`")))?;
        let e = Element::Nat(n);
        super::ensure_member(self, &e)?;
        Ok(e)
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

pub(crate) fn zmul(n: usize) -> Result<FiniteTable> {
    FiniteTable::from_law(format!("zmul-{n}"), numbered(n), |a, b| (a * b) % n)
}

pub(crate) fn zadd(n: usize) -> Result<FiniteTable> {
    FiniteTable::from_law(format!("zadd-{n}"), numbered(n), |a, b| (a + b) % n)
}

pub(crate) fn min_chain(n: usize) -> Result<FiniteTable> {
    FiniteTable::from_law(format!("min-chain-{n}"), numbered(n), |a, b| a.min(b))
}

pub(crate) fn left_zero(n: usize) -> Result<FiniteTable> {
    FiniteTable::from_law(format!("left-zero-{n}"), numbered(n), |a, _| a)
}

/// Full transformation monoid on `n` points. A map is named by its image
/// string (`012` is the identity on 3 points); `f*g` applies `f` first.
pub(crate) fn transformations(n: usize) -> Result<FiniteTable> {
    let size = n.pow(n as u32);
    let decode = |k: usize| -> Vec<usize> {
        let mut v = vec![0; n];
        let mut k = k;
        for i in (0..n).rev() {
            v[i] = k % n;
            k /= n;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &d| acc * n + d);
    let names = (0..size)
        .map(|k| decode(k).iter().map(|d| d.to_string()).collect())
        .collect();
    FiniteTable::from_law(format!("t{n}"), names, |a, b| {
        let (f, g) = (decode(a), decode(b));
        let h: Vec<usize> = (0..n).map(|i| g[f[i]]).collect();
        encode(&h)
    })
}

/// Looks up a semigroup by registry name.
///
/// Registry: `nat-plus`, `nat-monoid`, `mon-plus`, `mon`, `mon-laurent`,
/// `zmul-<n>`, `zadd-<n>`, `t<n>` (n <= 4), `min-chain-<n>`,
/// `left-zero-<n>`, `table:<path>`.
pub fn builtin(name: &str) -> Result<SemigroupHandle> {
    let unknown = || Error::UnknownSemigroup(name.to_string());
    let handle: SemigroupHandle = match name {
        "nat-plus" => Arc::new(NatSemigroup::positive()),
        "nat-monoid" => Arc::new(NatSemigroup::with_zero()),
        "mon-plus" => Arc::new(MonSemigroup { kind: MonKind::Plus }),
        "mon" => Arc::new(MonSemigroup { kind: MonKind::Full }),
        "mon-laurent" => Arc::new(MonSemigroup {
            kind: MonKind::Laurent,
        }),
        _ => {
            if let Some(path) = name.strip_prefix("table:") {
                Arc::new(FiniteTable::load(Path::new(path))?)
            } else if let Some(n) = parse_suffix(name, "zmul-") {
                Arc::new(zmul(n.max(1)).map_err(|_| unknown())?)
            } else if let Some(n) = parse_suffix(name, "zadd-") {
                Arc::new(zadd(n.max(1)).map_err(|_| unknown())?)
            } else if let Some(n) = parse_suffix(name, "min-chain-") {
                Arc::new(min_chain(n.max(1)).map_err(|_| unknown())?)
            } else if let Some(n) = parse_suffix(name, "left-zero-") {
                Arc::new(left_zero(n.max(1)).map_err(|_| unknown())?)
            } else if let Some(n) = parse_suffix(name, "t").filter(|n| (1..=4).contains(n)) {
                Arc::new(transformations(n)?)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(handle)
}
