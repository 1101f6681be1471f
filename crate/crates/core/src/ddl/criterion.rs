//! Bounded checks of the three conditions under which a disjoint direct limit
//! has finite decompositions:
//!
//! 1. for every `y` in `S_a`, only finitely many `b <= a` have a nonempty
//!    fiber `phi_ab^-1(y)`;
//! 2. every component has finite decompositions;
//! 3. every fiber of every transition morphism is finite.
//!
//! Finite systems are decided exhaustively. Otherwise each quantity is
//! measured on the ball of radius `bound` and again on radius `2 * bound`;
//! growth is treated as evidence of an infinite set and turned into a
//! witness. The witness follows the classical argument: if `phi_ab(x) = y`
//! then `y * x = y^2` in the limit, so distinct such `x` give distinct
//! decompositions of `y^2`. A witness is only reported once it carries at
//! least `bound` verified decompositions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{ddl_mul, DdlSystem, Label};
use crate::element::Element;
use crate::error::Result;
use crate::semigroup::{verify_decomposer, FdStatus, SemigroupHandle};

/// Radii tried, as multiples of the bound, when growing a witness.
const WITNESS_RADII: [usize; 4] = [2, 4, 8, 16];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    /// Finitely many nonempty fibers over each element.
    NonEmptyFibers,
    /// Finite decompositions in each component.
    Components,
    /// Finite fibers.
    Fibers,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::NonEmptyFibers, Condition::Components, Condition::Fibers];

    pub fn roman(self) -> &'static str {
        match self {
            Condition::NonEmptyFibers => "i",
            Condition::Components => "ii",
            Condition::Fibers => "iii",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::NonEmptyFibers => "finitely many nonempty fibers",
            Condition::Components => "components have finite decompositions",
            Condition::Fibers => "fibers are finite",
        }
    }
}

/// An element of the limit with many distinct decompositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub element: Element,
    pub decompositions: Vec<(Element, Element)>,
    pub explanation: String,
}

impl Witness {
    /// Recomputes every product and checks the pairs are distinct.
    pub fn verify(&self, sys: &DdlSystem) -> bool {
        let distinct: BTreeSet<&(Element, Element)> = self.decompositions.iter().collect();
        distinct.len() == self.decompositions.len()
            && self
                .decompositions
                .iter()
                .all(|(a, b)| ddl_mul(sys, a, b).ok().as_ref() == Some(&self.element))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Decided on the whole (finite) system.
    Exhaustive,
    /// No violation up to the given bound.
    VerifiedToBound(usize),
    Violated(Witness),
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub system: String,
    pub bound: usize,
    pub verdicts: Vec<(Condition, Verdict)>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| !v.is_violated())
    }

    pub fn verdict(&self, c: Condition) -> &Verdict {
        &self.verdicts.iter().find(|(k, _)| *k == c).expect("all conditions present").1
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "criterion[{}] bound {}", self.system, self.bound)?;
        for (c, v) in &self.verdicts {
            write!(f, "  ({}) {}: ", c.roman(), c.describe())?;
            match v {
                Verdict::Exhaustive => writeln!(f, "holds (exhaustive)")?,
                Verdict::VerifiedToBound(n) => writeln!(f, "verified to bound {n}")?,
                Verdict::Violated(w) => {
                    writeln!(f, "VIOLATED: {}", w.explanation)?;
                    let shown: Vec<String> =
                        w.decompositions.iter().take(4).map(|(a, b)| format!("{a}*{b}")).collect();
                    writeln!(
                        f,
                        "    {} = {} ... ({} distinct decompositions)",
                        w.element,
                        shown.join(" = "),
                        w.decompositions.len()
                    )?;
                }
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

pub fn fd_criterion_check(sys: &DdlSystem, bound: usize) -> Result<CriterionReport> {
    let mut notes = Vec::new();
    let verdicts = if sys.is_finite() {
        vec![
            (Condition::NonEmptyFibers, Verdict::Exhaustive),
            (Condition::Components, finite_components(sys)?),
            (Condition::Fibers, Verdict::Exhaustive),
        ]
    } else {
        vec![
            (Condition::NonEmptyFibers, nonempty_fibers(sys, bound)?),
            (Condition::Components, components(sys, bound, &mut notes)?),
            (Condition::Fibers, fibers(sys, bound)?),
        ]
    };
    Ok(CriterionReport {
        system: sys.name().to_string(),
        bound,
        verdicts,
        notes,
    })
}

fn finite_components(sys: &DdlSystem) -> Result<Verdict> {
    for l in sys.index().labels(0) {
        let c = sys.component(&l)?;
        let r = verify_decomposer(&*c, 0)?;
        if !r.passed() {
            return Ok(Verdict::Violated(Witness {
                element: Element::pair(l.clone(), c.ball(0).into_iter().next().unwrap_or(Element::Nat(0))),
                decompositions: Vec::new(),
                explanation: format!("decomposer of S_{l} is wrong: {}", r.failures.join("; ")),
            }));
        }
    }
    Ok(Verdict::Exhaustive)
}

fn labels_below(sys: &DdlSystem, a: &Label, radius: usize) -> Vec<Label> {
    let idx = sys.index();
    idx.labels(radius).into_iter().filter(|b| idx.leq(b, a)).collect()
}

/// `y * x` for the given preimages `x` in `S_b`, as decompositions of `y^2`.
fn square_witness(
    sys: &DdlSystem,
    a: &Label,
    y: &Element,
    preimages: &[(Label, Element)],
    explanation: String,
) -> Result<Witness> {
    let c = sys.component(a)?;
    let yl = Element::pair(a.clone(), y.clone());
    Ok(Witness {
        element: Element::pair(a.clone(), c.law(y, y)),
        decompositions: preimages
            .iter()
            .map(|(b, x)| (yl.clone(), Element::pair(b.clone(), x.clone())))
            .collect(),
        explanation,
    })
}

fn nonempty_fibers(sys: &DdlSystem, bound: usize) -> Result<Verdict> {
    // One preimage from each nonempty fiber over y.
    let reps = |a: &Label, y: &Element, r: usize| -> Result<Vec<(Label, Element)>> {
        let mut out = Vec::new();
        for b in labels_below(sys, a, r) {
            if let Some(x) = sys.fiber(a, &b, y, r)?.into_iter().next() {
                out.push((b, x));
            }
        }
        Ok(out)
    };
    for a in sys.index().labels(bound) {
        for y in sys.component(&a)?.ball(bound) {
            let small = reps(&a, &y, bound)?.len();
            if reps(&a, &y, 2 * bound)?.len() <= small {
                continue;
            }
            for k in WITNESS_RADII {
                let found = reps(&a, &y, k * bound)?;
                if found.len() >= bound.max(1) {
                    let w = square_witness(
                        sys,
                        &a,
                        &y,
                        &found,
                        format!("{} labels b <= {a} have phi_{a}b^-1({y}) nonempty, still growing", found.len()),
                    )?;
                    if w.verify(sys) {
                        return Ok(Verdict::Violated(w));
                    }
                }
            }
        }
    }
    Ok(Verdict::VerifiedToBound(bound))
}

fn fibers(sys: &DdlSystem, bound: usize) -> Result<Verdict> {
    for a in sys.index().labels(bound) {
        let below: Vec<Label> = labels_below(sys, &a, bound).into_iter().filter(|b| *b != a).collect();
        for y in sys.component(&a)?.ball(bound) {
            for b in &below {
                let small = sys.fiber(&a, b, &y, bound)?.len();
                if sys.fiber(&a, b, &y, 2 * bound)?.len() <= small {
                    continue;
                }
                for k in WITNESS_RADII {
                    let found = sys.fiber(&a, b, &y, k * bound)?;
                    if found.len() >= bound.max(1) {
                        let pre: Vec<(Label, Element)> = found.into_iter().map(|x| (b.clone(), x)).collect();
                        let w = square_witness(
                            sys,
                            &a,
                            &y,
                            &pre,
                            format!("phi_{a}{b}^-1({y}) has {} elements, still growing", pre.len()),
                        )?;
                        if w.verify(sys) {
                            return Ok(Verdict::Violated(w));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::VerifiedToBound(bound))
}

fn components(sys: &DdlSystem, bound: usize, notes: &mut Vec<String>) -> Result<Verdict> {
    let mut seen = BTreeSet::new();
    for a in sys.index().labels(bound) {
        let c = sys.component(&a)?;
        let caps = c.capabilities();
        if caps.decomposer && caps.finite_decomposition != FdStatus::No {
            let r = verify_decomposer(&*c, bound)?;
            if !r.passed() {
                return Ok(Verdict::Violated(Witness {
                    element: Element::pair(a.clone(), c.ball(0).into_iter().next().unwrap_or(Element::Nat(0))),
                    decompositions: Vec::new(),
                    explanation: format!("decomposer of S_{a} is wrong: {}", r.failures.join("; ")),
                }));
            }
            continue;
        }
        if let Some(w) = component_witness(sys, &a, &c, bound) {
            return Ok(Verdict::Violated(w));
        }
        if seen.insert(c.name().to_string()) {
            notes.push(format!("S_{a} = {} has no decomposer; brute force found no growth", c.name()));
        }
    }
    Ok(Verdict::VerifiedToBound(bound))
}

/// Tallies products of ball pairs at two radii and looks for an element of
/// the small ball whose decomposition count keeps growing.
fn component_witness(sys: &DdlSystem, a: &Label, c: &SemigroupHandle, bound: usize) -> Option<Witness> {
    let small: BTreeSet<Element> = c.ball(bound).into_iter().collect();
    let tally = |r: usize| {
        let ball = c.ball(r);
        let mut t: BTreeMap<Element, Vec<(Element, Element)>> = BTreeMap::new();
        for x in &ball {
            for y in &ball {
                let p = c.law(x, y);
                if small.contains(&p) {
                    t.entry(p).or_default().push((x.clone(), y.clone()));
                }
            }
        }
        t
    };
    let lo = tally(bound);
    let hi = tally(2 * bound);
    let (y, pairs) = hi
        .into_iter()
        .filter(|(y, p)| p.len() > lo.get(y).map_or(0, Vec::len) && p.len() >= bound.max(1))
        .max_by_key(|(_, p)| p.len())?;
    let w = Witness {
        element: Element::pair(a.clone(), y.clone()),
        decompositions: pairs
            .into_iter()
            .map(|(x, z)| (Element::pair(a.clone(), x), Element::pair(a.clone(), z)))
            .collect(),
        explanation: format!("{y} has a growing number of decompositions in S_{a} = {}", c.name()),
    };
    w.verify(sys).then_some(w)
}

/// Every pair of the ball of the given radius multiplying to `z`.
pub fn brute_force_decompositions(sys: &DdlSystem, z: &Element, radius: usize) -> Result<Vec<(Element, Element)>> {
    sys.split(z)?;
    let ball = sys.ball(radius);
    let mut out = Vec::new();
    for x in &ball {
        for y in &ball {
            if ddl_mul(sys, x, y)? == *z {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}
