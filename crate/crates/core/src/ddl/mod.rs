//! Disjoint direct limits.
//!
//! Given an upper semilattice `I`, a family of semigroups `S_a` and
//! transition morphisms `phi_ab: S_b -> S_a` for `b <= a`, the limit lives on
//! the tagged union of the `S_a` with
//!
//! ```text
//! x * y = phi_{g,l(x)}(x) ._g phi_{g,l(y)}(y),   g = l(x) v l(y)
//! ```
//!
//! where `l(x)` is the label of `x`. Disjointness is structural: every
//! element is an [`Element::Pair`] carrying its label.
//!
//! This mirrors the classical direct limit of semigroups, except that the
//! components are kept apart instead of being glued along the morphisms.

mod criterion;
mod file;
mod fixtures;
mod index;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::semigroup::{find_neutral, Capabilities, FdStatus, Semigroup, SemigroupHandle};

pub use criterion::{brute_force_decompositions, fd_criterion_check, Condition, CriterionReport, Verdict, Witness};
pub use file::{load_ddl, parse_ddl};
pub use fixtures::{
    defect_infinite_fiber, defect_infinite_interval, defect_non_fd_component, fig1_system, finite_group_chain,
    non_morphic_chain,
};
pub use index::{FiniteSemilattice, IndexSemilattice, Label, ReversedNaturals};

type ComponentFn = dyn Fn(&Label) -> Option<SemigroupHandle> + Send + Sync;
type MorphismFn = dyn Fn(&Label, &Label, &Element) -> Option<Element> + Send + Sync;
type FiberFn = dyn Fn(&Label, &Label, &Element, usize) -> Vec<Element> + Send + Sync;

/// An inductive system of disjoint semigroups over an upper semilattice.
pub struct DdlSystem {
    name: String,
    index: Arc<dyn IndexSemilattice>,
    component: Box<ComponentFn>,
    morphism: Box<MorphismFn>,
    fibers: Option<Box<FiberFn>>,
}

impl fmt::Debug for DdlSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DdlSystem")
            .field("name", &self.name)
            .field("index", &self.index)
            .field("fibers", &self.fibers.is_some())
            .finish()
    }
}

impl DdlSystem {
    /// `morphism(a, b, x)` evaluates `phi_ab(x)` for `b <= a`.
    pub fn new(
        name: impl Into<String>,
        index: Arc<dyn IndexSemilattice>,
        component: impl Fn(&Label) -> Option<SemigroupHandle> + Send + Sync + 'static,
        morphism: impl Fn(&Label, &Label, &Element) -> Option<Element> + Send + Sync + 'static,
    ) -> Self {
        DdlSystem {
            name: name.into(),
            index,
            component: Box::new(component),
            morphism: Box::new(morphism),
            fibers: None,
        }
    }

    /// `fibers(a, b, y, radius)` lists the preimages of `y` under `phi_ab`
    /// lying in the ball of the given radius of `S_b`.
    pub fn with_fibers(
        mut self,
        fibers: impl Fn(&Label, &Label, &Element, usize) -> Vec<Element> + Send + Sync + 'static,
    ) -> Self {
        self.fibers = Some(Box::new(fibers));
        self
    }

    /// A system over a finite semilattice with finite components and
    /// tabulated morphisms keyed by `(target, source)` label ids. Identity
    /// morphisms are implied.
    pub fn finite(
        name: impl Into<String>,
        index: FiniteSemilattice,
        components: Vec<SemigroupHandle>,
        morphisms: BTreeMap<(u32, u32), BTreeMap<Element, Element>>,
    ) -> Result<Self> {
        if components.len() != index.len() {
            return Err(Error::MalformedDdl {
                line: 0,
                message: format!("{} labels but {} components", index.len(), components.len()),
            });
        }
        for c in &components {
            if c.elements().is_none() {
                return Err(Error::MalformedDdl {
                    line: 0,
                    message: format!("component `{}` is not finite", c.name()),
                });
            }
        }
        let idx = index.clone();
        Ok(DdlSystem::new(
            name,
            Arc::new(index),
            move |l| idx.index_of(l).map(|i| components[i].clone()),
            move |a, b, x| {
                if a == b {
                    return Some(x.clone());
                }
                morphisms.get(&(a.id, b.id))?.get(x).cloned()
            },
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> &dyn IndexSemilattice {
        &*self.index
    }

    pub fn component(&self, label: &Label) -> Result<SemigroupHandle> {
        (self.component)(label).ok_or_else(|| Error::Parse(format!("unknown label `{label}`")))
    }

    pub fn has_fiber_enumerator(&self) -> bool {
        self.fibers.is_some()
    }

    /// Whether the index and every component are finite.
    pub fn is_finite(&self) -> bool {
        self.index.is_finite()
            && self
                .index
                .labels(0)
                .iter()
                .all(|l| self.component(l).map(|c| c.elements().is_some()).unwrap_or(false))
    }

    /// `phi_{to,from}(x)`.
    pub fn phi(&self, to: &Label, from: &Label, x: &Element) -> Result<Element> {
        (self.morphism)(to, from, x).ok_or_else(|| Error::MissingMorphism {
            to: to.to_string(),
            from: from.to_string(),
        })
    }

    /// Preimages of `y` under `phi_{to,from}` within the given radius.
    pub fn fiber(&self, to: &Label, from: &Label, y: &Element, radius: usize) -> Result<Vec<Element>> {
        if let Some(f) = &self.fibers {
            return Ok(f(to, from, y, radius));
        }
        let src = self.component(from)?;
        if src.elements().is_none() {
            return Err(Error::MissingFiberEnumerator(self.name.clone()));
        }
        let mut out = Vec::new();
        for x in src.ball(radius) {
            if self.phi(to, from, &x)? == *y {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Checks `x` is a well-formed element and returns its label and value.
    pub fn split<'a>(&self, x: &'a Element) -> Result<(&'a Label, &'a Element)> {
        let (l, v) = x.as_pair().ok_or_else(|| Error::ElementNotInCarrier {
            semigroup: self.name.clone(),
            element: x.to_string(),
        })?;
        if !self.index.contains(l) || !self.component(l)?.contains(v) {
            return Err(Error::ElementNotInCarrier {
                semigroup: self.name.clone(),
                element: x.to_string(),
            });
        }
        Ok((l, v))
    }

    /// Ball of the limit: labels of the radius, each with its component ball.
    pub fn ball(&self, radius: usize) -> Vec<Element> {
        let mut out = Vec::new();
        for l in self.index.labels(radius) {
            if let Ok(c) = self.component(&l) {
                out.extend(c.ball(radius).into_iter().map(|v| Element::pair(l.clone(), v)));
            }
        }
        out
    }

    /// `(a0 | e_a0)` when the index has a minimum whose component has a neutral.
    pub fn monoid_neutral(&self) -> Option<Element> {
        let m = self.index.minimum()?;
        let e = self.component(&m).ok()?.neutral()?;
        Some(Element::pair(m, e))
    }

    /// Parses `(label|element)`.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let body = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `(label|element)`, got `{s}`")))?;
        let (l, v) = body
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("expected `(label|element)`, got `{s}`")))?;
        let label = self.index.parse_label(l)?;
        let value = self.component(&label)?.parse_element(v)?;
        Ok(Element::pair(label, value))
    }
}

/// The limit law.
pub fn ddl_mul(sys: &DdlSystem, x: &Element, y: &Element) -> Result<Element> {
    let (a, xv) = sys.split(x)?;
    let (b, yv) = sys.split(y)?;
    let g = sys.index.join(a, b);
    let comp = sys.component(&g)?;
    let px = sys.phi(&g, a, xv)?;
    let py = sys.phi(&g, b, yv)?;
    Ok(Element::pair(g, comp.law(&px, &py)))
}

/// Beyond this many ball elements, associativity is sampled.
const EXHAUSTIVE_TRIPLES_MAX_BALL: usize = 48;
const SAMPLED_TRIPLES: usize = 100_000;

pub fn validate_system(sys: &DdlSystem, bound: usize) -> CheckReport {
    validate_system_seeded(sys, bound, 0)
}

/// Checks the semilattice laws, `phi_aa = Id`, `phi_ab o phi_bc = phi_ac`,
/// that each `phi_ab` is a morphism, associativity of the limit law, and the
/// monoid case when the index has a minimum.
pub fn validate_system_seeded(sys: &DdlSystem, bound: usize, seed: u64) -> CheckReport {
    let finite = sys.is_finite();
    let mut report = CheckReport::new(format!("ddl[{}]", sys.name), (!finite).then_some(bound));
    let idx = sys.index();
    let labels = idx.labels(bound);

    for a in &labels {
        for b in &labels {
            let ab = idx.join(a, b);
            report.check(ab == idx.join(b, a), || format!("join not commutative at {a},{b}"));
            report.check(idx.leq(a, &ab) && idx.leq(b, &ab), || format!("{a} v {b} = {ab} is not an upper bound"));
            report.check(idx.leq(a, b) == (ab == *b), || format!("order and join disagree at {a},{b}"));
            for c in &labels {
                let l = idx.join(&ab, c);
                let r = idx.join(a, &idx.join(b, c));
                report.check(l == r, || format!("join not associative at {a},{b},{c}"));
            }
        }
        report.check(idx.join(a, a) == *a, || format!("join not idempotent at {a}"));
    }

    let mut balls: BTreeMap<Label, Vec<Element>> = BTreeMap::new();
    for l in &labels {
        match sys.component(l) {
            Ok(c) => {
                balls.insert(l.clone(), c.ball(bound));
            }
            Err(e) => report.fail(format!("label {l}: {e}")),
        }
    }

    for a in &labels {
        let Ok(ca) = sys.component(a) else { continue };
        for x in &balls[a] {
            let ok = sys.phi(a, a, x).map(|y| y == *x).unwrap_or(false);
            report.check(ok, || format!("phi_{a}{a}({x}) is not {x}"));
        }
        for b in labels.iter().filter(|b| idx.leq(b, a) && *b != a) {
            for x in &balls[b] {
                match sys.phi(a, b, x) {
                    Ok(y) => report.check(ca.contains(&y), || format!("phi_{a}{b}({x}) = {y} leaves S_{a}")),
                    Err(e) => report.fail(e.to_string()),
                }
            }
            let cb = sys.component(b).expect("ball present");
            for x in &balls[b] {
                for y in &balls[b] {
                    let lhs = sys.phi(a, b, &cb.law(x, y));
                    let rhs = sys
                        .phi(a, b, x)
                        .and_then(|px| sys.phi(a, b, y).map(|py| ca.law(&px, &py)));
                    if let (Ok(l), Ok(r)) = (&lhs, &rhs) {
                        report.check(l == r, || {
                            format!("phi_{a}{b} not a morphism: phi({x}*{y}) = {l} but phi({x})*phi({y}) = {r}")
                        });
                    }
                }
            }
            for c in labels.iter().filter(|c| idx.leq(c, b) && *c != b) {
                for x in &balls[c] {
                    let direct = sys.phi(a, c, x);
                    let composed = sys.phi(b, c, x).and_then(|y| sys.phi(a, b, &y));
                    match (direct, composed) {
                        (Ok(d), Ok(k)) => report.check(d == k, || {
                            format!("phi_{a}{b}(phi_{b}{c}({x})) = {k} but phi_{a}{c}({x}) = {d}")
                        }),
                        (Err(e), _) | (_, Err(e)) => report.fail(e.to_string()),
                    }
                }
            }
        }
    }

    let ball = sys.ball(bound);
    let assoc = |x: &Element, y: &Element, z: &Element, report: &mut CheckReport| {
        let l = ddl_mul(sys, x, y).and_then(|xy| ddl_mul(sys, &xy, z));
        let r = ddl_mul(sys, y, z).and_then(|yz| ddl_mul(sys, x, &yz));
        match (l, r) {
            (Ok(l), Ok(r)) => report.check(l == r, || format!("({x}*{y})*{z} = {l} but {x}*({y}*{z}) = {r}")),
            (Err(e), _) | (_, Err(e)) => report.fail(e.to_string()),
        }
    };
    if ball.len() <= EXHAUSTIVE_TRIPLES_MAX_BALL {
        for x in &ball {
            for y in &ball {
                for z in &ball {
                    assoc(x, y, z, &mut report);
                }
            }
        }
    } else if !ball.is_empty() {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..SAMPLED_TRIPLES {
            let x = &ball[rng.gen_range(0..ball.len())];
            let y = &ball[rng.gen_range(0..ball.len())];
            let z = &ball[rng.gen_range(0..ball.len())];
            assoc(x, y, z, &mut report);
        }
        report.note(format!("associativity sampled on {SAMPLED_TRIPLES} triples, seed {seed}"));
    }

    if let Some(e) = sys.monoid_neutral() {
        let preserves = labels.iter().all(|a| {
            let Ok(ca) = sys.component(a) else { return false };
            let (m, _) = sys.split(&e).expect("neutral is well formed");
            ca.neutral().is_some_and(|ea| {
                sys.phi(a, m, e.as_pair().unwrap().1).map(|y| y == ea).unwrap_or(false)
            })
        });
        if preserves {
            for x in &ball {
                let l = ddl_mul(sys, &e, x);
                let r = ddl_mul(sys, x, &e);
                report.check(l.as_ref() == Ok(x) && r.as_ref() == Ok(x), || {
                    format!("{e} is not neutral on {x}")
                });
            }
        } else {
            report.note("minimum exists but morphisms do not preserve neutrals; monoid case skipped");
        }
    }
    report
}

impl Semigroup for DdlSystem {
    fn name(&self) -> &str {
        &self.name
    }

    fn contains(&self, x: &Element) -> bool {
        self.split(x).is_ok()
    }

    fn law(&self, a: &Element, b: &Element) -> Element {
        ddl_mul(self, a, b).expect("limit law defined on carrier")
    }

    fn neutral(&self) -> Option<Element> {
        let elems = self.elements()?;
        find_neutral(self, &elems)
    }

    fn capabilities(&self) -> Capabilities {
        let finite = self.is_finite();
        Capabilities {
            finite_decomposition: if finite { FdStatus::Yes } else { FdStatus::Unknown },
            decomposer: finite,
            units_oracle: false,
        }
    }

    fn factor_pairs(&self, t: &Element) -> Option<Vec<(Element, Element)>> {
        let elems = self.elements()?;
        let mut out = Vec::new();
        for a in &elems {
            for b in &elems {
                if ddl_mul(self, a, b).ok().as_ref() == Some(t) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        Some(out)
    }

    fn elements(&self) -> Option<Vec<Element>> {
        if !self.is_finite() {
            return None;
        }
        let set: BTreeSet<Element> = self.ball(0).into_iter().collect();
        Some(set.into_iter().collect())
    }

    fn ball(&self, radius: usize) -> Vec<Element> {
        DdlSystem::ball(self, radius)
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        DdlSystem::parse_element(self, s)
    }
}
