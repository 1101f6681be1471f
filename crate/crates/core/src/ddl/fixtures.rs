//! Reference systems: the reversed-naturals example, one defect per
//! condition of the criterion, and small finite chains.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{DdlSystem, FiniteSemilattice, ReversedNaturals};
use crate::element::{Element, Monomial};
use crate::semigroup::{builtin, Interval, SemigroupHandle};

/// `S_k = [k, +inf)` under addition for every natural `k`, with
/// `phi_lk(y) = y` whenever `l <= k` as integers.
///
/// The index order is the REVERSE of the integer order: `a <= b` in the
/// semilattice iff `b <= a` as integers, so the join is the integer
/// minimum and the limit law reads `(k1|y1) * (k2|y2) = (min(k1,k2)|y1+y2)`.
/// Every initial interval `{b : b <= a}` is infinite, yet the limit still has
/// finite decompositions.
pub fn fig1_system() -> DdlSystem {
    DdlSystem::new(
        "fig1",
        Arc::new(ReversedNaturals),
        |k| Some(Arc::new(Interval::new(k.id as u64)) as SemigroupHandle),
        |to, from, x| (to.id <= from.id).then(|| x.clone()),
    )
    .with_fibers(|to, from, y, radius| match y.as_nat() {
        Some(v) if to.id <= from.id && v >= from.id as u64 && v <= radius as u64 => vec![y.clone()],
        _ => Vec::new(),
    })
}

/// Copies of `(N+, +)` over the reversed naturals with identity transitions:
/// every `y` has a nonempty fiber at each of the infinitely many labels
/// below it.
pub fn defect_infinite_interval() -> DdlSystem {
    let nat = builtin("nat-plus").expect("builtin");
    DdlSystem::new(
        "defect-infinite-interval",
        Arc::new(ReversedNaturals),
        move |_| Some(nat.clone()),
        |to, from, x| (to.id <= from.id).then(|| x.clone()),
    )
    .with_fibers(|to, from, y, radius| match y.as_nat() {
        Some(v) if to.id <= from.id && v <= radius as u64 => vec![y.clone()],
        _ => Vec::new(),
    })
}

/// `N+ -> Z[x1^+-1, x2^+-1]` over the chain `0 < 1`, by `n -> x1^n`. The
/// Laurent monomials do not have finite decompositions.
pub fn defect_non_fd_component() -> DdlSystem {
    let index = FiniteSemilattice::chain(2);
    let comps = [builtin("nat-plus").expect("builtin"), builtin("mon-laurent").expect("builtin")];
    DdlSystem::new(
        "defect-non-fd-component",
        Arc::new(index),
        move |l| comps.get(l.id as usize).cloned(),
        |to, from, x| match (to.id, from.id) {
            (a, b) if a == b => Some(x.clone()),
            (1, 0) => Some(Element::Monomial(Monomial::from_exponents([(1, x.as_nat()? as i64)]))),
            _ => None,
        },
    )
    .with_fibers(|to, from, y, radius| match (to.id, from.id) {
        (a, b) if a == b => vec![y.clone()],
        (1, 0) => {
            let m = y.as_monomial();
            let n = m.map_or(0, |m| m.exponent(1));
            let pure = m.is_some_and(|m| m.exponents().all(|(v, _)| v == 1));
            if pure && n >= 1 && n as usize <= radius {
                vec![Element::Nat(n as u64)]
            } else {
                Vec::new()
            }
        }
        _ => Vec::new(),
    })
}

/// `N+ -> {0}` over the chain `0 < 1`: the constant map has one infinite
/// fiber.
pub fn defect_infinite_fiber() -> DdlSystem {
    let index = FiniteSemilattice::chain(2);
    let comps = [builtin("nat-plus").expect("builtin"), builtin("zmul-1").expect("builtin")];
    let zero = comps[1].parse_element("0").expect("element");
    let target = zero.clone();
    DdlSystem::new(
        "defect-infinite-fiber",
        Arc::new(index),
        move |l| comps.get(l.id as usize).cloned(),
        move |to, from, x| match (to.id, from.id) {
            (a, b) if a == b => Some(x.clone()),
            (1, 0) => Some(zero.clone()),
            _ => None,
        },
    )
    .with_fibers(move |to, from, y, radius| match (to.id, from.id) {
        (a, b) if a == b => vec![y.clone()],
        (1, 0) if *y == target => (1..=radius as u64).map(Element::Nat).collect(),
        _ => Vec::new(),
    })
}

fn tabulate(
    src: &SemigroupHandle,
    dst: &SemigroupHandle,
    f: impl Fn(usize) -> usize,
) -> BTreeMap<Element, Element> {
    src.elements()
        .expect("finite")
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, dst.parse_element(&f(i).to_string()).expect("element")))
        .collect()
}

fn chain_system(name: &str, comps: Vec<SemigroupHandle>, maps: Vec<(u32, u32, BTreeMap<Element, Element>)>) -> DdlSystem {
    let index = FiniteSemilattice::chain(comps.len());
    let morphisms = maps.into_iter().map(|(a, b, m)| ((a, b), m)).collect();
    DdlSystem::finite(name, index, comps, morphisms).expect("well-formed fixture")
}

/// `Z/2 -> Z/4 -> Z/2` over the chain `0 < 1 < 2`, by `x -> 2x` then
/// `x -> x mod 2`. All transitions preserve `0`, so `(0|0)` is neutral.
pub fn finite_group_chain() -> DdlSystem {
    let z2 = builtin("zadd-2").expect("builtin");
    let z4 = builtin("zadd-4").expect("builtin");
    let m10 = tabulate(&z2, &z4, |x| 2 * x);
    let m21 = tabulate(&z4, &z2, |x| x % 2);
    let m20 = tabulate(&z2, &z2, |_| 0);
    chain_system("group-chain", vec![z2.clone(), z4, z2], vec![(1, 0, m10), (2, 1, m21), (2, 0, m20)])
}

/// `Z/2 -> Z/4` by `x -> x`, which is not additive.
pub fn non_morphic_chain() -> DdlSystem {
    let z2 = builtin("zadd-2").expect("builtin");
    let z4 = builtin("zadd-4").expect("builtin");
    let m10 = tabulate(&z2, &z4, |x| x);
    chain_system("non-morphic", vec![z2, z4], vec![(1, 0, m10)])
}

