//! The semigroup abstraction, built-in semigroups, decomposition enumeration
//! and invertibility via the cyclic-power argument.

mod builtin;
mod sub;
mod table;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::report::CheckReport;

pub use builtin::{builtin, Interval, MonKind, MonSemigroup, NatSemigroup, BALL_VARS};
pub use sub::Subsemigroup;
pub use table::FiniteTable;

pub type SemigroupHandle = Arc<dyn Semigroup>;

/// Whether a semigroup is known to satisfy the finite decomposition property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub finite_decomposition: FdStatus,
    pub decomposer: bool,
    pub units_oracle: bool,
}

/// A semigroup: a carrier, an associative law and optional extra capabilities.
///
/// `law` is only called on carrier elements; the checked entry points are the
/// free functions [`mul`], [`decompose`], [`is_invertible`] and [`units`].
pub trait Semigroup: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn contains(&self, x: &Element) -> bool;

    fn law(&self, a: &Element, b: &Element) -> Element;

    fn neutral(&self) -> Option<Element>;

    fn capabilities(&self) -> Capabilities;

    /// Every ordered pair `(t1, t2)` with `t1 * t2 = t`, in any order.
    /// `None` when the semigroup has no decomposer.
    fn factor_pairs(&self, _t: &Element) -> Option<Vec<(Element, Element)>> {
        None
    }

    /// The whole carrier in canonical order, when finite.
    fn elements(&self) -> Option<Vec<Element>> {
        None
    }

    /// The graded ball of the given radius (the whole carrier when finite).
    /// Every factor of an element of the ball lies in the ball.
    fn ball(&self, radius: usize) -> Vec<Element>;

    /// The group of units, for infinite semigroups that know it.
    fn units_oracle(&self) -> Option<Vec<Element>> {
        None
    }

    /// The sub-semigroup `S \ S^x`, for infinite semigroups that know it.
    fn strip_units(&self) -> Option<SemigroupHandle> {
        None
    }

    fn parse_element(&self, s: &str) -> Result<Element>;
}

fn not_in_carrier(s: &dyn Semigroup, x: &Element) -> Error {
    Error::ElementNotInCarrier {
        semigroup: s.name().to_string(),
        element: x.to_string(),
    }
}

pub(crate) fn ensure_member(s: &dyn Semigroup, x: &Element) -> Result<()> {
    if s.contains(x) {
        Ok(())
    } else {
        Err(not_in_carrier(s, x))
    }
}

/// Checked product `a * b`.
pub fn mul(s: &dyn Semigroup, a: &Element, b: &Element) -> Result<Element> {
    ensure_member(s, a)?;
    ensure_member(s, b)?;
    Ok(s.law(a, b))
}

/// All ordered factorizations of `t`, sorted canonically and without duplicates.
pub fn decompose(s: &dyn Semigroup, t: &Element) -> Result<Vec<(Element, Element)>> {
    ensure_member(s, t)?;
    let mut pairs = s
        .factor_pairs(t)
        .ok_or_else(|| Error::NonFiniteDecomposition {
            semigroup: s.name().to_string(),
        })?;
    pairs.sort();
    pairs.dedup();
    Ok(pairs)
}

/// `x^p` for `p >= 1`.
pub fn power(s: &dyn Semigroup, x: &Element, p: usize) -> Element {
    assert!(p >= 1);
    let mut acc = x.clone();
    for _ in 1..p {
        acc = s.law(&acc, x);
    }
    acc
}

/// Cross-checks `decompose` against a brute-force scan of the ball.
///
/// Reports missing pairs (a product in the ball not listed by the
/// decomposer), spurious pairs (listed but not multiplying back) and
/// pairs escaping the ball.
pub fn verify_decomposer(s: &dyn Semigroup, bound: usize) -> Result<CheckReport> {
    if !s.capabilities().decomposer {
        return Err(Error::NonFiniteDecomposition {
            semigroup: s.name().to_string(),
        });
    }
    let finite = s.elements().is_some();
    let ball = s.ball(bound);
    let mut report = CheckReport::new(
        format!("decomposer[{}]", s.name()),
        (!finite).then_some(bound),
    );
    let in_ball: BTreeSet<&Element> = ball.iter().collect();

    let mut cache: HashMap<Element, Vec<(Element, Element)>> = HashMap::new();
    let mut brute: HashMap<Element, Vec<(Element, Element)>> = HashMap::new();
    for a in &ball {
        for b in &ball {
            let t = s.law(a, b);
            if !cache.contains_key(&t) {
                let d = decompose(s, &t)?;
                cache.insert(t.clone(), d);
            }
            let listed = cache[&t].binary_search(&(a.clone(), b.clone())).is_ok();
            report.check(listed, || format!("missing pair ({a}, {b}) of {t}"));
            if in_ball.contains(&t) {
                brute.entry(t).or_default().push((a.clone(), b.clone()));
            }
        }
    }

    for t in &ball {
        let listed = match cache.get(t) {
            Some(d) => d.clone(),
            None => decompose(s, t)?,
        };
        for (x, y) in &listed {
            let ok = s.contains(x) && s.contains(y) && s.law(x, y) == *t;
            report.check(ok, || format!("spurious pair ({x}, {y}) listed for {t}"));
            report.check(in_ball.contains(x) && in_ball.contains(y), || {
                format!("pair ({x}, {y}) of {t} escapes the ball")
            });
        }
        let mut found = brute.remove(t).unwrap_or_default();
        found.sort();
        report.check(found == listed, || {
            format!(
                "decompose({t}) lists {} pairs, brute force finds {}",
                listed.len(),
                found.len()
            )
        });
    }
    Ok(report)
}

/// Tests invertibility by the cyclic-power argument.
///
/// Looks for a right inverse among the factorizations of the neutral; if one
/// exists, iterates powers of `u` until `u^p` is the neutral and returns
/// `u^(p-1)` as the two-sided inverse. The pairs `(u^n, v^n)` all factor the
/// neutral, so `p` never exceeds the number of factorizations of the neutral.
pub fn is_invertible(s: &dyn Semigroup, u: &Element) -> Result<Option<Element>> {
    ensure_member(s, u)?;
    let e = s.neutral().ok_or_else(|| Error::NoNeutral {
        semigroup: s.name().to_string(),
    })?;
    let caps = s.capabilities();
    if caps.finite_decomposition != FdStatus::Yes || !caps.decomposer {
        return Err(Error::NonFiniteDecomposition {
            semigroup: s.name().to_string(),
        });
    }
    let factorizations = decompose(s, &e)?;
    if !factorizations.iter().any(|(x, _)| x == u) {
        return Ok(None);
    }
    let mut acc = u.clone();
    for p in 1..=factorizations.len() {
        if acc == e {
            let inverse = if p == 1 { e } else { power(s, u, p - 1) };
            return Ok(Some(inverse));
        }
        acc = s.law(&acc, u);
    }
    Err(Error::FalsifiedClaim {
        claim: "right invertible implies cyclic".into(),
        witness: format!(
            "{u} has a right inverse but no power up to {} is neutral",
            factorizations.len()
        ),
    })
}

/// The group of units `S^x`.
pub fn units(s: &dyn Semigroup) -> Result<Vec<Element>> {
    if let Some(elems) = s.elements() {
        if s.neutral().is_none() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for x in elems {
            if is_invertible(s, &x)?.is_some() {
                out.push(x);
            }
        }
        return Ok(out);
    }
    s.units_oracle()
        .ok_or_else(|| Error::NeitherFiniteNorOracle {
            semigroup: s.name().to_string(),
        })
}

/// Exhaustive associativity over `elems`.
pub fn check_associativity(s: &dyn Semigroup, elems: &[Element]) -> CheckReport {
    let mut report = CheckReport::new(format!("associativity[{}]", s.name()), None);
    for a in elems {
        for b in elems {
            let ab = s.law(a, b);
            for c in elems {
                let left = s.law(&ab, c);
                let right = s.law(a, &s.law(b, c));
                report.check(left == right, || {
                    format!("({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")
                });
            }
        }
    }
    report
}

/// Checks that the declared neutral (if any) is two-sided on `elems`.
pub fn check_neutral(s: &dyn Semigroup, elems: &[Element]) -> CheckReport {
    let mut report = CheckReport::new(format!("neutral[{}]", s.name()), None);
    if let Some(e) = s.neutral() {
        report.check(s.contains(&e), || format!("neutral {e} not in carrier"));
        for x in elems {
            let l = s.law(&e, x);
            let r = s.law(x, &e);
            report.check(l == *x && r == *x, || format!("e*{x} = {l}, {x}*e = {r}"));
        }
    }
    report
}

/// Scans `elems` for a two-sided neutral.
pub fn find_neutral(s: &dyn Semigroup, elems: &[Element]) -> Option<Element> {
    elems
        .iter()
        .find(|e| elems.iter().all(|x| s.law(e, x) == *x && s.law(x, e) == *x))
        .cloned()
}
