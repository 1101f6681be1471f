//! Peeling a finite decomposition semigroup into groups.
//!
//! Starting from `T_0 = T`, while the current tail `T_n` has a neutral
//! `e_n`, its group of units `G_n` is removed: `T_{n+1} = T_n \ G_n`. Units
//! are always recomputed inside the tail. What is left when no neutral
//! remains is the terminal tail. Layers are numbered from 0.
//!
//! For a layer `n` and any `x`, `e_n x e_n = e_n x = x e_n` lies in `T_n`,
//! and `x -> e_i x e_i` maps `G_j` into `G_i` for `j <= i`. When the terminal
//! tail is empty these maps make the layers a disjoint direct limit over the
//! chain `0 < 1 < ... < N` whose law is the original one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::ddl::{ddl_mul, DdlSystem, FiniteSemilattice};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::semigroup::{
    check_associativity, is_invertible, power, units, FiniteTable, Semigroup, SemigroupHandle, Subsemigroup,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub index: usize,
    pub neutral: Element,
    /// In canonical order.
    pub group: Vec<Element>,
}

#[derive(Debug, Clone)]
pub enum Terminal {
    /// In canonical order; empty when peeling exhausts the carrier.
    Finite(Vec<Element>),
    /// An infinite tail without neutral, as described by its oracle.
    Infinite(SemigroupHandle),
}

impl Terminal {
    pub fn is_empty(&self) -> bool {
        matches!(self, Terminal::Finite(v) if v.is_empty())
    }
}

#[derive(Debug, Clone)]
pub struct PeelingResult {
    pub semigroup: SemigroupHandle,
    pub layers: Vec<Layer>,
    pub terminal: Terminal,
    /// `T_0, ..., T_{N+1}`; the last one is the terminal tail.
    pub tails: Vec<SemigroupHandle>,
}

impl PeelingResult {
    /// The layer containing `x`, or `None` for the terminal tail.
    pub fn layer_of(&self, x: &Element) -> Option<usize> {
        self.layers.iter().position(|l| l.group.binary_search(x).is_ok())
    }

    fn layer(&self, n: usize) -> Result<&Layer> {
        self.layers
            .get(n)
            .ok_or_else(|| Error::Domain(format!("layer {n} does not exist ({} layers)", self.layers.len())))
    }
}

impl fmt::Display for PeelingResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "peel {}: {} layer(s)", self.semigroup.name(), self.layers.len())?;
        for l in &self.layers {
            let g: Vec<String> = l.group.iter().map(ToString::to_string).collect();
            writeln!(f, "  G{} e={} {{{}}}", l.index, l.neutral, g.join(", "))?;
        }
        match &self.terminal {
            Terminal::Finite(t) => {
                let t: Vec<String> = t.iter().map(ToString::to_string).collect();
                writeln!(f, "  terminal {{{}}}", t.join(", "))
            }
            Terminal::Infinite(s) => writeln!(f, "  terminal {} (infinite, no neutral)", s.name()),
        }
    }
}

pub fn peel(s: &SemigroupHandle) -> Result<PeelingResult> {
    if s.elements().is_some() {
        peel_finite(s)
    } else {
        peel_oracle(s)
    }
}

fn peel_finite(s: &SemigroupHandle) -> Result<PeelingResult> {
    let mut tail: SemigroupHandle =
        Arc::new(Subsemigroup::new(format!("{}/T0", s.name()), s.clone(), s.elements().expect("finite"))?);
    let mut tails = vec![tail.clone()];
    let mut layers = Vec::new();
    while let Some(e) = tail.neutral() {
        let group = units(&*tail)?;
        let gone: BTreeSet<&Element> = group.iter().collect();
        let rest: Vec<Element> =
            tail.elements().expect("finite").into_iter().filter(|x| !gone.contains(x)).collect();
        layers.push(Layer {
            index: layers.len(),
            neutral: e,
            group,
        });
        tail = Arc::new(Subsemigroup::new(format!("{}/T{}", s.name(), layers.len()), s.clone(), rest)?);
        tails.push(tail.clone());
    }
    Ok(PeelingResult {
        semigroup: s.clone(),
        layers,
        terminal: Terminal::Finite(tail.elements().expect("finite")),
        tails,
    })
}

fn peel_oracle(s: &SemigroupHandle) -> Result<PeelingResult> {
    let missing = |t: &SemigroupHandle, op: &str| Error::CapabilityMissing {
        semigroup: t.name().to_string(),
        operation: op.into(),
    };
    let mut tail = s.clone();
    let mut tails = vec![tail.clone()];
    let mut layers = Vec::new();
    while let Some(e) = tail.neutral() {
        let mut group = tail.units_oracle().ok_or_else(|| missing(&tail, "units oracle"))?;
        group.sort();
        let next = tail.strip_units().ok_or_else(|| missing(&tail, "unit stripping"))?;
        layers.push(Layer {
            index: layers.len(),
            neutral: e,
            group,
        });
        tail = next;
        tails.push(tail.clone());
    }
    Ok(PeelingResult {
        semigroup: s.clone(),
        layers,
        terminal: Terminal::Infinite(tail),
        tails,
    })
}

fn falsified(claim: &str, witness: String) -> Error {
    Error::FalsifiedClaim {
        claim: claim.into(),
        witness,
    }
}

/// `e_n x e_n`, checking it equals `e_n x` and `x e_n` and lies in `T_n`.
pub fn projection(result: &PeelingResult, n: usize, x: &Element) -> Result<Element> {
    let s = &result.semigroup;
    crate::semigroup::ensure_member(&**s, x)?;
    let e = &result.layer(n)?.neutral;
    let ex = s.law(e, x);
    let xe = s.law(x, e);
    let exe = s.law(&ex, e);
    if ex != exe || xe != exe {
        return Err(falsified(
            "e x e = e x = x e",
            format!("e{n} = {e}, x = {x}: e x e = {exe}, e x = {ex}, x e = {xe}"),
        ));
    }
    if !result.tails[n].contains(&exe) {
        return Err(falsified("e x e lies in the tail", format!("e{n} {x} e{n} = {exe} is not in T{n}")));
    }
    Ok(exe)
}

/// The transition `G_j -> G_i`, `j <= i`, given by projection.
pub fn layer_morphism(result: &PeelingResult, i: usize, j: usize, x: &Element) -> Result<Element> {
    if j > i {
        return Err(Error::Domain(format!("layer morphism needs j <= i, got i = {i}, j = {j}")));
    }
    if result.layer_of(x) != Some(j) {
        return Err(Error::Domain(format!("{x} is not in G{j}")));
    }
    let y = projection(result, i, x)?;
    if result.layer_of(&y) != Some(i) {
        return Err(falsified("projection lands in the group layer", format!("e{i} {x} e{i} = {y} is not in G{i}")));
    }
    Ok(y)
}

/// Exhaustive check of every claim about the peeling of a finite semigroup.
pub fn verify_structure_theorem(s: &SemigroupHandle) -> Result<CheckReport> {
    let elems = s.elements().ok_or_else(|| Error::CapabilityMissing {
        semigroup: s.name().to_string(),
        operation: "exhaustive structure check".into(),
    })?;
    let result = peel(s)?;
    let mut r = CheckReport::new(format!("structure[{}]", s.name()), None);
    let law = |a: &Element, b: &Element| s.law(a, b);

    r.check(result.layers.len() <= elems.len(), || "peeling took more steps than elements".into());
    let Terminal::Finite(terminal) = &result.terminal else {
        unreachable!("finite semigroups peel to a finite terminal")
    };

    // partition
    let mut seen: BTreeMap<&Element, usize> = BTreeMap::new();
    for x in result.layers.iter().flat_map(|l| &l.group).chain(terminal) {
        *seen.entry(x).or_default() += 1;
    }
    for x in &elems {
        let k = seen.get(x).copied().unwrap_or(0);
        r.check(k == 1, || format!("{x} appears {k} times among layers and terminal"));
    }
    r.check(seen.len() == elems.len(), || "layers contain foreign elements".into());

    for (m, tail) in result.tails.iter().enumerate() {
        let t = tail.elements().expect("finite");
        let set: BTreeSet<&Element> = t.iter().collect();
        for a in &t {
            for b in &t {
                let p = law(a, b);
                r.check(set.contains(&p), || format!("T{m} not closed: {a}*{b} = {p}"));
            }
        }
    }
    let last = result.tails.last().expect("at least T0");
    r.check(last.neutral().is_none(), || {
        format!("terminal has neutral {}", last.neutral().unwrap())
    });

    for layer in &result.layers {
        let n = layer.index;
        let e = &layer.neutral;
        let g: BTreeSet<&Element> = layer.group.iter().collect();
        for a in &layer.group {
            r.check(law(e, a) == *a && law(a, e) == *a, || format!("e{n} = {e} not neutral on {a}"));
            let inv = layer.group.iter().find(|b| law(a, b) == *e && law(b, a) == *e);
            r.check(inv.is_some(), || format!("{a} has no inverse in G{n}"));
            for b in &layer.group {
                let p = law(a, b);
                r.check(g.contains(&p), || format!("G{n} not closed: {a}*{b} = {p}"));
            }
        }
        r.absorb(units_are_cyclic(&*result.tails[n], &layer.group, n));
        for x in &elems {
            if let Err(err) = projection(&result, n, x) {
                r.fail(err.to_string());
            }
        }
    }

    // transitions and the limit law on group layers
    let layers = &result.layers;
    for i in 0..layers.len() {
        for j in 0..=i {
            for x in &layers[j].group {
                match layer_morphism(&result, i, j, x) {
                    Ok(y) => {
                        if i == j {
                            r.check(y == *x, || format!("G{i} -> G{i} moves {x} to {y}"));
                        }
                        for k in j..=i {
                            let via = layer_morphism(&result, k, j, x).and_then(|z| layer_morphism(&result, i, k, &z));
                            r.check(via.as_ref() == Ok(&y), || format!("transitions G{j} -> G{k} -> G{i} disagree on {x}"));
                        }
                    }
                    Err(err) => r.fail(err.to_string()),
                }
                for x2 in &layers[j].group {
                    let lhs = projection(&result, i, &law(x, x2));
                    let rhs = projection(&result, i, x).and_then(|a| projection(&result, i, x2).map(|b| law(&a, &b)));
                    r.check(lhs.is_ok() && lhs == rhs, || format!("G{j} -> G{i} not a morphism at {x}, {x2}"));
                }
            }
            for x in &layers[i].group {
                for y in &layers[j].group {
                    for (a, b) in [(x, y), (y, x)] {
                        let p = law(a, b);
                        let via = projection(&result, i, a).and_then(|pa| projection(&result, i, b).map(|pb| law(&pa, &pb)));
                        r.check(via.as_ref() == Ok(&p), || format!("{a}*{b} = {p} differs from the projected product"));
                        r.check(result.layer_of(&p) == Some(i), || format!("{a}*{b} = {p} is not in G{i}"));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Right-, left- and power-invertibility all describe the group layer.
fn units_are_cyclic(tail: &dyn Semigroup, group: &[Element], n: usize) -> CheckReport {
    let mut r = CheckReport::new(format!("invertibility[T{n}]"), None);
    let Some(e) = tail.neutral() else {
        r.fail(format!("T{n} has no neutral"));
        return r;
    };
    let elems = tail.elements().expect("finite");
    let g: BTreeSet<&Element> = group.iter().collect();
    for u in &elems {
        let right = elems.iter().any(|v| tail.law(u, v) == e);
        let left = elems.iter().any(|v| tail.law(v, u) == e);
        let cyclic = (1..=elems.len()).any(|p| power(tail, u, p) == e);
        let lemma = matches!(is_invertible(tail, u), Ok(Some(_)));
        let unit = g.contains(u);
        r.check(right == unit && left == unit && cyclic == unit && lemma == unit, || {
            format!("{u} in T{n}: right {right}, left {left}, power {cyclic}, inverse search {lemma}, unit {unit}")
        });
    }
    r
}

/// The disjoint direct limit of the group layers over `0 < ... < N`, with
/// a check that its law is the original one, table for table.
pub fn rebuild_as_ddl(result: &PeelingResult) -> Result<(DdlSystem, CheckReport)> {
    let terminal = match &result.terminal {
        Terminal::Finite(t) => t,
        Terminal::Infinite(s) => {
            return Err(Error::CapabilityMissing {
                semigroup: s.name().to_string(),
                operation: "rebuild of an infinite terminal".into(),
            })
        }
    };
    if !terminal.is_empty() {
        return Err(Error::NonEmptyTerminal { size: terminal.len() });
    }
    let s = &result.semigroup;
    let n = result.layers.len();
    let mut comps: Vec<SemigroupHandle> = Vec::with_capacity(n);
    for l in &result.layers {
        comps.push(Arc::new(Subsemigroup::new(format!("G{}", l.index), s.clone(), l.group.clone())?));
    }
    let mut morphisms = BTreeMap::new();
    for i in 0..n {
        for j in 0..i {
            let mut t = BTreeMap::new();
            for x in &result.layers[j].group {
                t.insert(x.clone(), layer_morphism(result, i, j, x)?);
            }
            morphisms.insert((i as u32, j as u32), t);
        }
    }
    let index = FiniteSemilattice::chain(n);
    let sys = DdlSystem::finite(format!("{}/ddl", s.name()), index.clone(), comps, morphisms)?;

    let mut r = CheckReport::new(format!("rebuild[{}]", s.name()), None);
    let original = FiniteTable::from_semigroup(&**s)?;
    let elems = s.elements().expect("finite");
    let tag = |x: &Element| Element::pair(index.label(result.layer_of(x).expect("terminal is empty")), x.clone());
    let mut table = Vec::with_capacity(elems.len());
    for a in &elems {
        let mut row = Vec::with_capacity(elems.len());
        for b in &elems {
            let p = ddl_mul(&sys, &tag(a), &tag(b))?;
            let (_, v) = p.as_pair().expect("limit elements are pairs");
            let k = original.index_of(v).ok_or_else(|| falsified("rebuild is closed", format!("{a}*{b} = {v}")))?;
            row.push(k as u32);
        }
        table.push(row);
    }
    let names = elems.iter().map(ToString::to_string).collect();
    let rebuilt = FiniteTable::new(s.name(), names, table)?;
    let (want, got) = (original.to_text(), rebuilt.to_text());
    for (k, (w, g)) in want.lines().zip(got.lines()).enumerate() {
        r.check(w == g, || format!("table line {}: expected `{w}`, rebuilt `{g}`", k + 1));
    }
    r.check(want == got, || "rebuilt table text differs".into());
    r.absorb(check_associativity(&sys, &sys.elements().expect("finite")));
    Ok((sys, r))
}
