//! The acceptance suite: seven criteria, each timed against its limit and
//! reported on one PASS/FAIL line.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fdsg::algebra::{duality_check, integer, Polynomial};
use fdsg::analytic::{chen_check, li, stuffle_check, zeta};
use fdsg::ddl::{
    brute_force_decompositions, ddl_mul, defect_infinite_fiber, defect_infinite_interval, defect_non_fd_component,
    fd_criterion_check, fig1_system, validate_system, Condition, FiniteSemilattice, Verdict,
};
use fdsg::qshuffle::{term_count, Product};
use fdsg::semigroup::decompose;
use fdsg::structure::{peel, rebuild_as_ddl, verify_structure_theorem};
use fdsg::{builtin, DdlSystem, Element, Error, FiniteTable, Semigroup, SemigroupHandle};

use common::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn duality() -> Outcome {
    let mut cases = 0usize;
    let mut sweep = |s: &SemigroupHandle, elems: &[Element]| -> Result<(), String> {
        let law: Box<dyn Fn(&Element, &Element) -> Element> = match s.name() {
            "nat-plus" => Box::new(|p, q| Element::Nat(p.as_nat().unwrap() + q.as_nat().unwrap())),
            name => {
                let named = named_law(name);
                Box::new(move |p, q| s.parse_element(&named(&p.to_string(), &q.to_string())).unwrap())
            }
        };
        for p in elems {
            for q in elems {
                let pq = law(p, q);
                for r in elems {
                    let out = duality_check(
                        &**s,
                        &Polynomial::basis(p.clone()),
                        &Polynomial::basis(q.clone()),
                        &Polynomial::basis(r.clone()),
                    )
                    .map_err(|e| e.to_string())?;
                    let want = if pq == *r { 1 } else { 0 };
                    ensure(out.holds() && out.product_side == integer(want), || {
                        format!("{}: <{p}.{q}|{r}> = {}, <{p}(x){q}|D{r}> = {}, expected {want}", s.name(), out.product_side, out.coproduct_side)
                    })?;
                    cases += 1;
                }
            }
        }
        Ok(())
    };
    let nat = builtin("nat-plus").unwrap();
    sweep(&nat, &(1..=8).map(Element::Nat).collect::<Vec<_>>())?;
    for n in 1..=12 {
        let s = builtin(&format!("zmul-{n}")).unwrap();
        sweep(&s, &s.elements().unwrap())?;
    }
    let t3 = builtin("t3").unwrap();
    sweep(&t3, &t3.elements().unwrap())?;
    Ok(format!("{cases} basis triples, exact"))
}

fn quasi_shuffle_laws() -> Outcome {
    let mut cases = 0usize;
    for p in Product::ALL {
        let words = p.words_up_to(6);
        let len = |w: &Element| w.word_len().unwrap();
        for u in &words {
            for v in words.iter().filter(|v| len(u) + len(v) <= 6) {
                let uv = p.apply(u, v).map_err(|e| e.to_string())?;
                ensure(uv == p.apply(v, u).unwrap(), || format!("{}: {u} * {v} is not commutative", p.name()))?;
                if p == Product::Shuffle {
                    let want = binomial((len(u) + len(v)) as u64, len(u) as u64);
                    ensure(term_count(&uv) == want, || format!("{u} sh {v} has {} terms, want {want}", term_count(&uv)))?;
                }
                if len(u) + len(v) <= 5 {
                    ensure(counts(&uv) == oracle_product(p, u, v), || {
                        format!("{}: {u} * {v} = {uv} disagrees with the surjection oracle", p.name())
                    })?;
                }
                let (pu, pv) = (Polynomial::basis(u.clone()), Polynomial::basis(v.clone()));
                for w in words.iter().filter(|w| len(u) + len(v) + len(w) <= 6) {
                    let pw = Polynomial::basis(w.clone());
                    let left = p.apply_poly(&uv, &pw).unwrap();
                    let right = p.apply_poly(&pu, &p.apply_poly(&pv, &pw).unwrap()).unwrap();
                    ensure(left == right, || format!("{}: ({u} * {v}) * {w} != {u} * ({v} * {w})", p.name()))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} triples over four products"))
}

fn analytic_words(max_len: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        for bits in 0..1u32 << (n - 1) {
            let mut w: Vec<String> = (0..n - 1).map(|k| if bits >> k & 1 == 1 { "x1" } else { "x0" }.to_string()).collect();
            w.push("x1".into());
            out.push(w);
        }
    }
    out
}

fn chen() -> Outcome {
    let (z, n, tol) = (0.5, 2000, 1e-8);
    for (w, closed) in [
        (vec!["x1"], -(1.0f64 - z).ln()),
        (vec!["x0", "x1"], dilog_half()),
        (vec!["x1", "x1"], (1.0f64 - z).ln().powi(2) / 2.0),
    ] {
        let series = li(&w, z, n).map_err(|e| e.to_string())?;
        let quad = li_quadrature(&w, z, 1e-13);
        ensure((series.value - quad).abs() <= 1e-9 && (closed - quad).abs() <= 1e-9, || {
            format!("Li{w:?}(1/2): series {}, quadrature {quad}, closed form {closed}", series.value)
        })?;
    }
    let words = analytic_words(4);
    let mut cases = 0;
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= 5) {
            let c = chen_check(u, v, z, n, tol).map_err(|e| e.to_string())?;
            ensure(c.passed(), || c.to_string())?;
            cases += 1;
        }
    }
    Ok(format!("{cases} pairs at z = {z}, N = {n}"))
}

fn compositions(weight: u32) -> Vec<Vec<u32>> {
    if weight == 0 {
        return vec![Vec::new()];
    }
    (1..=weight)
        .flat_map(|first| {
            compositions(weight - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn mzv_stuffle() -> Outcome {
    let n = 10_000;
    let c = stuffle_check(&[2], &[2], n, 1e-3).map_err(|e| e.to_string())?;
    ensure(c.passed(), || c.to_string())?;
    let oracle = zeta2_squared();
    ensure((c.lhs.value - oracle).abs() <= 1e-3 && (c.rhs.value - oracle).abs() <= 1e-3, || {
        format!("zeta(2)^2 ~ {} and 2 zeta(2,2) + zeta(4) ~ {}, closed form {oracle}", c.lhs.value, c.rhs.value)
    })?;
    for (s, want) in [(vec![2], zeta2()), (vec![4], zeta4()), (vec![2, 2], zeta22())] {
        let e = zeta(&s, n).map_err(|e| e.to_string())?;
        ensure((e.value - want).abs() <= e.error_bound + 1e-12, || format!("zeta{s:?} = {e}, closed form {want}"))?;
    }
    let convergent: Vec<Vec<u32>> = (2..=4).flat_map(compositions).filter(|s| s[0] >= 2).collect();
    let mut cases = 0;
    for s in &convergent {
        for t in convergent.iter().filter(|t| s.iter().chain(t.iter()).sum::<u32>() <= 6) {
            let c = stuffle_check(s, t, n, 1e-10).map_err(|e| e.to_string())?;
            ensure(c.passed(), || c.to_string())?;
            cases += 1;
        }
    }
    Ok(format!("{cases} convergent pairs, N = {n}"))
}

fn ddl_criterion() -> Outcome {
    let bound = 12;
    let fig1 = fig1_system();
    let v = validate_system(&fig1, bound);
    ensure(v.passed(), || v.to_string())?;
    let r = fd_criterion_check(&fig1, bound).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_string())?;

    // (g|z) = (a|x)(b|y) iff min(a, b) = g and x + y = z, with a <= x, b <= y.
    let expected = |g: u64, z: u64| -> usize {
        (0..=z)
            .filter(|&x| x >= g && z - x >= g)
            .map(|x| ((x - g + 1) + (z - x - g + 1) - 1) as usize)
            .sum()
    };
    let tally = |radius: usize| -> BTreeMap<Element, usize> {
        let ball = fig1.ball(radius);
        let mut m = BTreeMap::new();
        for a in &ball {
            for b in &ball {
                *m.entry(ddl_mul(&fig1, a, b).unwrap()).or_insert(0) += 1;
            }
        }
        m
    };
    let (small, large) = (tally(bound), tally(bound + 1));
    let elems = fig1.ball(bound);
    for z in &elems {
        let (g, v) = fig1.split(z).unwrap();
        let (g, v) = (g.id as u64, v.as_nat().unwrap());
        let got = small.get(z).copied().unwrap_or(0);
        ensure(got == expected(g, v) && large.get(z).copied().unwrap_or(0) == got, || {
            format!("{z}: {got} decompositions at radius {bound}, expected {}", expected(g, v))
        })?;
    }
    let probe = fig1.parse_element("(0|4)").unwrap();
    ensure(brute_force_decompositions(&fig1, &probe, bound).unwrap().len() == expected(0, 4), || "(0|4) count".into())?;

    for (sys, cond) in [
        (defect_infinite_interval(), Condition::NonEmptyFibers),
        (defect_non_fd_component(), Condition::Components),
        (defect_infinite_fiber(), Condition::Fibers),
    ] {
        let r = fd_criterion_check(&sys, bound).map_err(|e| e.to_string())?;
        let Verdict::Violated(w) = r.verdict(cond) else {
            return Err(format!("{}: condition ({}) not detected\n{r}", sys.name(), cond.roman()));
        };
        ensure(w.verify(&sys) && w.decompositions.len() >= bound, || {
            format!("{}: witness {} with {} decompositions", sys.name(), w.element, w.decompositions.len())
        })?;
        for (a, b) in &w.decompositions {
            ensure(ddl_mul(&sys, a, b).unwrap() == w.element, || format!("{a}*{b} != {}", w.element))?;
        }
    }
    Ok(format!("{} elements of fig1 counted, 3 defects witnessed", elems.len()))
}

fn structure_theorem() -> Outcome {
    let mut names: Vec<String> = (1..=12).map(|n| format!("zmul-{n}")).collect();
    names.extend((1..=6).map(|n| format!("min-chain-{n}")));
    names.extend((1..=3).map(|n| format!("left-zero-{n}")));
    names.push("t3".into());
    let mut cases = 0;
    for name in &names {
        let s = builtin(name).unwrap();
        let r = verify_structure_theorem(&s).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
        cases += r.cases;
        let peeled = peel(&s).unwrap();
        let layer0 = |want: Vec<String>| -> Result<(), String> {
            let got: Vec<String> = peeled.layers.first().map(|l| l.group.iter().map(ToString::to_string).collect()).unwrap_or_default();
            ensure(got == want, || format!("{name}: units {got:?}, expected {want:?}"))
        };
        if let Some(n) = name.strip_prefix("zmul-") {
            let n: u64 = n.parse().unwrap();
            layer0((0..n).filter(|&a| gcd(a, n) == 1 || n == 1).map(|a| a.to_string()).collect())?;
        } else if let Some(n) = name.strip_prefix("min-chain-") {
            let n: usize = n.parse().unwrap();
            ensure(peeled.layers.len() == n && peeled.terminal.is_empty(), || format!("{name}: {peeled}"))?;
        } else if let Some(n) = name.strip_prefix("left-zero-") {
            // Only the one-point band has a neutral.
            let want = usize::from(n == "1");
            ensure(peeled.layers.len() == want, || format!("{name}: {peeled}"))?;
        } else {
            let perms: Vec<String> = ["012", "021", "102", "120", "201", "210"].map(String::from).to_vec();
            layer0(perms)?;
        }
    }
    Ok(format!("{} semigroups, {cases} checks", names.len()))
}

fn table_text_via(sys: &DdlSystem, original: &FiniteTable, tag: impl Fn(&Element) -> Element) -> String {
    let elems: Vec<Element> = (0..original.len()).map(|i| original.element(i)).collect();
    let table: Vec<Vec<u32>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let p = ddl_mul(sys, &tag(a), &tag(b)).unwrap();
                    original.index_of(p.as_pair().unwrap().1).unwrap() as u32
                })
                .collect()
        })
        .collect();
    let names = elems.iter().map(ToString::to_string).collect();
    FiniteTable::new(original.name(), names, table).unwrap().to_text()
}

fn ddl_round_trip() -> Outcome {
    let table = |name: &str| FiniteTable::from_semigroup(&*builtin(name).unwrap()).unwrap();
    let mut targets: Vec<FiniteTable> = (1..=6).map(|n| table(&format!("min-chain-{n}"))).collect();
    targets.extend((1..=8).map(|n| table(&format!("zadd-{n}"))));
    let z2 = table("zadd-2");
    targets.push(z2.direct_product(&z2).unwrap());
    targets.push(z2.direct_product(&table("zadd-4")).unwrap());
    targets.push(z2.direct_product(&z2).unwrap().direct_product(&z2).unwrap());
    for t in &targets {
        let want = t.to_text();
        let s: SemigroupHandle = Arc::new(t.clone());
        let peeled = peel(&s).map_err(|e| e.to_string())?;
        let (sys, report) = rebuild_as_ddl(&peeled).map_err(|e| format!("{}: {e}", t.name()))?;
        ensure(report.passed(), || report.to_string())?;
        let chain = FiniteSemilattice::chain(peeled.layers.len());
        let got = table_text_via(&sys, t, |x| Element::pair(chain.label(peeled.layer_of(x).unwrap()), x.clone()));
        ensure(got == want, || format!("{}: rebuilt table\n{got}\nexpected\n{want}", t.name()))?;
    }
    let mut refusals = 0;
    for name in ["zmul-4", "zmul-12", "left-zero-3", "t3"] {
        let peeled = peel(&builtin(name).unwrap()).unwrap();
        let size = match &peeled.terminal {
            fdsg::structure::Terminal::Finite(t) => t.len(),
            _ => unreachable!(),
        };
        match rebuild_as_ddl(&peeled) {
            Err(Error::NonEmptyTerminal { size: s }) if s == size && s > 0 => refusals += 1,
            other => return Err(format!("{name}: expected NonEmptyTerminal, got {:?}", other.map(|(_, r)| r))),
        }
    }
    Ok(format!("{} tables reproduced, {refusals} refusals", targets.len()))
}

#[test]
fn acceptance_suite() {
    let criteria: [(&str, fn() -> Outcome, u64); 7] = [
        ("1 duality identity", duality, 10),
        ("2 quasi-shuffle laws", quasi_shuffle_laws, 60),
        ("3 Chen shuffle identity", chen, 30),
        ("4 stuffle MZV identity", mzv_stuffle, 30),
        ("5 DDL criterion", ddl_criterion, 10),
        ("6 structure theorem", structure_theorem, 60),
        ("7 DDL round trip", ddl_round_trip, 10),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        match (&outcome, in_time) {
            (Ok(detail), true) => println!("PASS criterion {name}: {detail} ({:.2}s, limit {limit}s)", took.as_secs_f64()),
            (Ok(detail), false) => {
                println!("FAIL criterion {name}: {detail} but took {:.2}s, limit {limit}s", took.as_secs_f64());
                failed.push(name);
            }
            (Err(why), _) => {
                println!("FAIL criterion {name}: {why} ({:.2}s)", took.as_secs_f64());
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn decompositions_match_independent_law() {
    for name in ["zmul-12", "t3", "min-chain-4", "left-zero-3", "zadd-6"] {
        let s = builtin(name).unwrap();
        let law = named_law(name);
        let elems = s.elements().unwrap();
        for t in &elems {
            let mut want: Vec<(Element, Element)> = Vec::new();
            for a in &elems {
                for b in &elems {
                    if law(&a.to_string(), &b.to_string()) == t.to_string() {
                        want.push((a.clone(), b.clone()));
                    }
                }
            }
            want.sort();
            assert_eq!(decompose(&*s, t).unwrap(), want, "{name} at {t}");
        }
    }
}
