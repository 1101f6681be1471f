//! The invariant suite of every module, run at one bound.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{
    coproduct, coproduct_left_iterated, coproduct_right_iterated, duality_check, Polynomial,
};
use crate::analytic::{chen_check, composition_to_word, li_composition, stuffle_check};
use crate::ddl::{
    fd_criterion_check, load_ddl, validate_system_seeded, Condition, DdlSystem, Verdict,
};
use crate::element::Element;
use crate::error::Error;
use crate::qshuffle::{term_count, Product};
use crate::report::CheckReport;
use crate::semigroup::{
    builtin, check_associativity, check_neutral, decompose, is_invertible, units, verify_decomposer, FiniteTable,
    Semigroup, SemigroupHandle,
};
use crate::structure::{peel, rebuild_as_ddl, verify_structure_theorem};

pub const DEFAULT_BOUND: usize = 8;

/// Fixtures shipped with the crate.
pub fn shipped_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[derive(Debug, Clone)]
pub struct ModuleReport {
    pub module: &'static str,
    pub reports: Vec<CheckReport>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub bound: usize,
    pub seed: u64,
    pub modules: Vec<ModuleReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.modules.iter().all(ModuleReport::passed)
    }

    pub fn cases(&self) -> usize {
        self.modules.iter().flat_map(|m| &m.reports).map(|r| r.cases).sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check bound {} seed {}", self.bound, self.seed)?;
        for m in &self.modules {
            for r in &m.reports {
                let text = r.to_string();
                let mut lines = text.lines();
                if let Some(head) = lines.next() {
                    writeln!(f, "{}: {head}", m.module)?;
                }
                for l in lines {
                    writeln!(f, "{}:{l}", m.module)?;
                }
            }
        }
        let total = self.cases();
        write!(f, "{} ({total} cases)", if self.passed() { "PASS" } else { "FAIL" })?;
        if total == 0 {
            write!(f, " [warning: 0 cases]")?;
        }
        Ok(())
    }
}

struct Fixtures {
    tables: Vec<SemigroupHandle>,
    systems: Vec<DdlSystem>,
    errors: Vec<(&'static str, String)>,
}

fn load_fixtures(dirs: &[&Path]) -> Fixtures {
    let mut fx = Fixtures {
        tables: Vec::new(),
        systems: Vec::new(),
        errors: Vec::new(),
    };
    for dir in dirs {
        let entries = match std::fs::read_dir(dir) {
            Ok(e) => e,
            Err(e) => {
                fx.errors.push(("fixtures", format!("{}: {e}", dir.display())));
                continue;
            }
        };
        let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.sort();
        for p in paths {
            match p.extension().and_then(|e| e.to_str()) {
                Some("table") => match FiniteTable::load(&p) {
                    Ok(t) => fx.tables.push(Arc::new(t)),
                    Err(e) => fx.errors.push(("semigroup", format!("{}: {e}", p.display()))),
                },
                Some("ddl") => match load_ddl(&p) {
                    Ok(s) => fx.systems.push(s),
                    Err(e) => fx.errors.push(("ddl", format!("{}: {e}", p.display()))),
                },
                _ => {}
            }
        }
    }
    fx
}

/// Runs every module's invariants. Finite fixtures are always checked
/// exhaustively; `bound` limits the sweeps over infinite semigroups, word
/// lengths and weights. Bound 0 checks nothing. Shipped fixtures are always
/// included; `extra` adds the `*.table` and `*.ddl` files of a directory.
pub fn check_all(bound: usize, seed: u64, extra: Option<&Path>) -> SuiteReport {
    let names = ["semigroup", "algebra", "qshuffle", "ddl", "structure", "analytic"];
    if bound == 0 {
        return SuiteReport {
            bound,
            seed,
            modules: names
                .into_iter()
                .map(|module| {
                    let mut r = CheckReport::new(module, Some(0));
                    r.note("bound 0: nothing checked");
                    ModuleReport {
                        module,
                        reports: vec![r],
                    }
                })
                .collect(),
        };
    }
    let shipped = shipped_fixture_dir();
    let mut dirs: Vec<&Path> = Vec::new();
    if shipped.is_dir() {
        dirs.push(&shipped);
    }
    if let Some(e) = extra {
        dirs.push(e);
    }
    let fx = load_fixtures(&dirs);

    let mut finite: Vec<SemigroupHandle> = Vec::new();
    for n in 1..=12 {
        finite.push(builtin(&format!("zmul-{n}")).expect("builtin"));
    }
    for n in 1..=6 {
        finite.push(builtin(&format!("min-chain-{n}")).expect("builtin"));
    }
    for name in ["zadd-2", "zadd-4", "zadd-6", "left-zero-2", "left-zero-3", "t2", "t3"] {
        finite.push(builtin(name).expect("builtin"));
    }
    finite.extend(fx.tables.iter().cloned());

    let mut modules = vec![
        ModuleReport {
            module: "semigroup",
            reports: semigroup_checks(&finite, bound, seed),
        },
        ModuleReport {
            module: "algebra",
            reports: algebra_checks(&finite, bound),
        },
        ModuleReport {
            module: "qshuffle",
            reports: qshuffle_checks(bound, seed),
        },
        ModuleReport {
            module: "ddl",
            reports: ddl_checks(&fx.systems, bound, seed),
        },
        ModuleReport {
            module: "structure",
            reports: structure_checks(&finite),
        },
        ModuleReport {
            module: "analytic",
            reports: analytic_checks(bound),
        },
    ];
    for (module, err) in fx.errors {
        let m = modules
            .iter_mut()
            .find(|m| m.module == module)
            .expect("known module");
        let mut r = CheckReport::new("fixture loading", None);
        r.fail(err);
        m.reports.push(r);
    }
    SuiteReport { bound, seed, modules }
}

fn semigroup_checks(finite: &[SemigroupHandle], bound: usize, seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(seed);
    for name in ["nat-plus", "nat-monoid", "mon-plus", "mon"] {
        let s = builtin(name).expect("builtin");
        let mut r = match verify_decomposer(&*s, bound) {
            Ok(r) => r,
            Err(e) => {
                let mut r = CheckReport::new(name, Some(bound));
                r.fail(e.to_string());
                r
            }
        };
        let ball = s.ball(bound);
        if !ball.is_empty() {
            for _ in 0..1000 {
                let [a, b, c] = [0; 3].map(|_| &ball[rng.gen_range(0..ball.len())]);
                let l = s.law(&s.law(a, b), c);
                let rr = s.law(a, &s.law(b, c));
                r.check(l == rr, || format!("({a}*{b})*{c} = {l} but {a}*({b}*{c}) = {rr}"));
            }
            r.note(format!("associativity sampled on 1000 triples, seed {seed}"));
        }
        out.push(r);
    }
    let laurent = builtin("mon-laurent").expect("builtin");
    let mut r = CheckReport::new("mon-laurent", None);
    let one = laurent.neutral().expect("monoid");
    r.check(matches!(decompose(&*laurent, &one), Err(Error::NonFiniteDecomposition { .. })), || {
        "decomposing in the Laurent monoid did not fail".into()
    });
    out.push(r);

    for s in finite {
        let elems = s.elements().expect("finite");
        let mut r = CheckReport::new(s.name(), None);
        r.absorb(check_associativity(&**s, &elems));
        match verify_decomposer(&**s, 0) {
            Ok(v) => r.absorb(v),
            Err(e) => r.fail(e.to_string()),
        }
        if s.neutral().is_some() {
            r.absorb(check_neutral(&**s, &elems));
            match units(&**s) {
                Ok(u) => {
                    let set: BTreeSet<&Element> = u.iter().collect();
                    for a in &u {
                        let inv = is_invertible(&**s, a).ok().flatten();
                        r.check(inv.as_ref().is_some_and(|i| set.contains(i)), || {
                            format!("inverse of unit {a} is not a unit")
                        });
                        for b in &u {
                            let p = s.law(a, b);
                            r.check(set.contains(&p), || format!("units not closed: {a}*{b} = {p}"));
                        }
                    }
                }
                Err(e) => r.fail(e.to_string()),
            }
        }
        out.push(r);
    }
    out
}

fn algebra_checks(finite: &[SemigroupHandle], bound: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let nat = builtin("nat-plus").expect("builtin");
    let mut r = CheckReport::new("nat-plus", Some(bound));
    let basis: Vec<Polynomial> = (1..=bound as u64).map(|n| Polynomial::basis(Element::Nat(n))).collect();
    duality_sweep(&*nat, &basis, &mut r);
    for m in 1..=bound as u64 {
        coassociativity(&*nat, &Element::Nat(m), &mut r);
    }
    out.push(r);
    for s in finite.iter().filter(|s| s.elements().expect("finite").len() <= 12) {
        let mut r = CheckReport::new(s.name(), None);
        let elems = s.elements().expect("finite");
        let basis: Vec<Polynomial> = elems.iter().cloned().map(Polynomial::basis).collect();
        duality_sweep(&**s, &basis, &mut r);
        for m in &elems {
            coassociativity(&**s, m, &mut r);
        }
        out.push(r);
    }
    out
}

fn duality_sweep(s: &dyn Semigroup, basis: &[Polynomial], r: &mut CheckReport) {
    for p in basis {
        for q in basis {
            for t in basis {
                match duality_check(s, p, q, t) {
                    Ok(o) => r.check(o.holds(), || {
                        format!(
                            "<{p}.{q}|{t}> = {} but <{p}(x){q}|Delta({t})> = {}",
                            o.product_side, o.coproduct_side
                        )
                    }),
                    Err(e) => r.fail(e.to_string()),
                }
            }
        }
    }
}

fn coassociativity(s: &dyn Semigroup, m: &Element, r: &mut CheckReport) {
    match (coproduct_left_iterated(s, m), coproduct_right_iterated(s, m)) {
        (Ok(a), Ok(b)) => r.check(a == b, || format!("coproduct not coassociative at {m}")),
        (Err(e), _) | (_, Err(e)) => r.fail(e.to_string()),
    }
    if let Err(e) = coproduct(s, &Polynomial::basis(m.clone())) {
        r.fail(e.to_string());
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn qshuffle_checks(bound: usize, seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(seed);
    let max_len = bound.min(6);
    for p in Product::ALL {
        let mut r = CheckReport::new(p.name(), Some(max_len));
        let words = p.words_up_to(max_len);
        let len = |w: &Element| w.word_len().expect("word");
        for u in &words {
            for v in words.iter().filter(|v| len(u) + len(v) <= max_len) {
                let uv = p.apply(u, v);
                let vu = p.apply(v, u);
                r.check(uv.is_ok() && uv == vu, || format!("{u} * {v} is not commutative"));
                if p == Product::Shuffle {
                    let n = uv.as_ref().map(term_count).unwrap_or(0);
                    let want = binomial(len(u) + len(v), len(u));
                    r.check(n == want, || format!("{u} sh {v} has {n} terms, expected {want}"));
                }
            }
        }
        // associativity on shorter triples
        let short: Vec<&Element> = words.iter().filter(|w| 3 * len(w) <= max_len + 2).collect();
        for a in &short {
            for b in &short {
                for c in short.iter().filter(|c| len(a) + len(b) + len(c) <= max_len) {
                    let ab = p.apply(a, b).and_then(|ab| p.apply_poly(&ab, &Polynomial::basis((*c).clone())));
                    let bc = p.apply(b, c).and_then(|bc| p.apply_poly(&Polynomial::basis((*a).clone()), &bc));
                    r.check(ab.is_ok() && ab == bc, || format!("({a} * {b}) * {c} differs from {a} * ({b} * {c})"));
                }
            }
        }
        // random longer pairs
        if bound > max_len {
            let n = p.sample_letters().len();
            for _ in 0..50 {
                let word = |rng: &mut StdRng| {
                    let k = rng.gen_range(1..=bound.min(5));
                    let idx: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
                    p.word_from_letters(&idx)
                };
                let (u, v) = (word(&mut rng), word(&mut rng));
                let uv = p.apply(&u, &v);
                r.check(uv.is_ok() && uv == p.apply(&v, &u), || format!("{u} * {v} is not commutative"));
            }
            r.note(format!("50 random pairs up to length {}, seed {seed}", bound.min(5)));
        }
        out.push(r);
    }
    out
}

fn ddl_checks(systems: &[DdlSystem], bound: usize, seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let fig1 = crate::ddl::fig1_system();
    let chain = crate::ddl::finite_group_chain();
    for sys in [&fig1, &chain].into_iter().chain(systems) {
        let mut r = validate_system_seeded(sys, bound, seed);
        match fd_criterion_check(sys, bound) {
            Ok(c) => {
                for (cond, v) in &c.verdicts {
                    r.check(!v.is_violated(), || format!("condition ({}) violated: {c}", cond.roman()));
                }
            }
            Err(e) => r.fail(e.to_string()),
        }
        out.push(r);
    }
    let mut r = CheckReport::new("defects", Some(bound));
    for (sys, cond) in [
        (crate::ddl::defect_infinite_interval(), Condition::NonEmptyFibers),
        (crate::ddl::defect_non_fd_component(), Condition::Components),
        (crate::ddl::defect_infinite_fiber(), Condition::Fibers),
    ] {
        match fd_criterion_check(&sys, bound) {
            Ok(c) => match c.verdict(cond) {
                Verdict::Violated(w) => r.check(w.verify(&sys) && w.decompositions.len() >= bound, || {
                    format!("{}: witness for ({}) has {} decompositions", sys.name(), cond.roman(), w.decompositions.len())
                }),
                v => r.fail(format!("{}: ({}) not detected, verdict {v:?}", sys.name(), cond.roman())),
            },
            Err(e) => r.fail(e.to_string()),
        }
    }
    out.push(r);
    out
}

fn structure_checks(finite: &[SemigroupHandle]) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for s in finite {
        let mut r = match verify_structure_theorem(s) {
            Ok(r) => r,
            Err(e) => {
                let mut r = CheckReport::new(format!("structure[{}]", s.name()), None);
                r.fail(e.to_string());
                r
            }
        };
        match peel(s) {
            Ok(p) => match rebuild_as_ddl(&p) {
                Ok((_, rebuilt)) => r.absorb(rebuilt),
                Err(Error::NonEmptyTerminal { .. }) => {
                    r.check(!p.terminal.is_empty(), || "refused to rebuild with an empty terminal".into())
                }
                Err(e) => r.fail(e.to_string()),
            },
            Err(e) => r.fail(e.to_string()),
        }
        out.push(r);
    }
    out
}

fn compositions_of(weight: u32) -> Vec<Vec<u32>> {
    if weight == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=weight {
        for mut rest in compositions_of(weight - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn analytic_checks(bound: usize) -> Vec<CheckReport> {
    let mut chen = CheckReport::new("chen", Some(bound.min(5)));
    let words: Vec<Vec<String>> = (1..=bound.min(5) as u32)
        .flat_map(compositions_of)
        .map(|c| composition_to_word(&c).expect("composition"))
        .collect();
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= bound.min(5)) {
            match chen_check(u, v, 0.5, 2000, 1e-8) {
                Ok(c) => chen.check(c.passed(), || c.to_string()),
                Err(e) => chen.fail(e.to_string()),
            }
        }
    }
    let mut st = CheckReport::new("stuffle", Some(bound.min(6)));
    let convergent: Vec<Vec<u32>> = (2..=bound.min(6) as u32)
        .flat_map(compositions_of)
        .filter(|c| c[0] >= 2)
        .collect();
    let weight = |c: &[u32]| c.iter().sum::<u32>();
    for s in &convergent {
        for t in convergent.iter().filter(|t| weight(s) + weight(t) <= bound.min(6) as u32) {
            match stuffle_check(s, t, 10_000, 1e-10) {
                Ok(c) => st.check(c.passed(), || c.to_string()),
                Err(e) => st.fail(e.to_string()),
            }
        }
    }
    let mut tail = CheckReport::new("truncation", Some(bound));
    for c in (1..=bound.min(4) as u32).flat_map(compositions_of) {
        for z in [0.25, 0.5, 0.75] {
            let (Ok(a), Ok(b)) = (li_composition(&c, z, 40), li_composition(&c, z, 80)) else {
                tail.fail(format!("li{c:?} failed at z = {z}"));
                continue;
            };
            tail.check(a.value <= b.value && b.value - a.value <= a.error_bound, || {
                format!("li{c:?}({z}): N=40 gives {a}, N=80 gives {b}")
            });
        }
    }
    vec![chen, st, tail]
}
