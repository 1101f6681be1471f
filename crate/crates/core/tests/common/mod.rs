//! Oracles shared by the integration tests. Nothing here calls into the
//! recursive implementations it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use fdsg::element::Monomial;
use fdsg::algebra::Polynomial;
use fdsg::qshuffle::Product;
use fdsg::Element;
use num_traits::ToPrimitive;

/// `u * v` as a sum over surjective order-preserving placements.
///
/// A term of length `n` is a pair of strictly increasing maps from the
/// positions of `u` and of `v` into `0..n` whose images cover `0..n`. A
/// position hit by both takes the merged letter; without `merge` the images
/// must be disjoint.
pub fn surjection_oracle<L: Clone + Ord>(
    u: &[L],
    v: &[L],
    merge: Option<&dyn Fn(&L, &L) -> L>,
) -> BTreeMap<Vec<L>, u64> {
    let (p, q) = (u.len(), v.len());
    let mut out = BTreeMap::new();
    let lo = if merge.is_some() { p.max(q) } else { p + q };
    for n in lo..=p + q {
        let full = (1u32 << n) - 1;
        for mu in 0..=full {
            if mu.count_ones() as usize != p {
                continue;
            }
            for mv in 0..=full {
                if mv.count_ones() as usize != q || mu | mv != full {
                    continue;
                }
                if merge.is_none() && mu & mv != 0 {
                    continue;
                }
                let (mut i, mut j) = (0, 0);
                let mut word = Vec::with_capacity(n);
                for k in 0..n {
                    let (a, b) = (mu >> k & 1 == 1, mv >> k & 1 == 1);
                    let letter = match (a, b) {
                        (true, true) => merge.unwrap()(&u[i], &v[j]),
                        (true, false) => u[i].clone(),
                        _ => v[j].clone(),
                    };
                    i += a as usize;
                    j += b as usize;
                    word.push(letter);
                }
                *out.entry(word).or_insert(0) += 1;
            }
        }
    }
    out
}

fn rewrap<L>(terms: BTreeMap<Vec<L>, u64>, wrap: impl Fn(Vec<L>) -> Element) -> BTreeMap<Element, u64> {
    terms.into_iter().map(|(w, c)| (wrap(w), c)).collect()
}

/// The oracle for one of the four products on basis words.
pub fn oracle_product(p: Product, u: &Element, v: &Element) -> BTreeMap<Element, u64> {
    match (p, u, v) {
        (Product::Shuffle, Element::Word(a), Element::Word(b)) => rewrap(surjection_oracle(a, b, None), Element::Word),
        (Product::Stuffle, Element::Composition(a), Element::Composition(b)) => {
            rewrap(surjection_oracle(a, b, Some(&|x: &u32, y: &u32| x + y)), Element::Composition)
        }
        (Product::Diamond, Element::Bicomposition(a), Element::Bicomposition(b)) => rewrap(
            surjection_oracle(a, b, Some(&|x: &(u32, u32), y: &(u32, u32)| (x.0 + y.0, x.1 + y.1))),
            Element::Bicomposition,
        ),
        (Product::Ldiag, Element::MonoWord(a), Element::MonoWord(b)) => {
            rewrap(surjection_oracle(a, b, Some(&|x: &Monomial, y: &Monomial| x.mul(y))), Element::MonoWord)
        }
        _ => panic!("{} on mismatched words {u}, {v}", p.name()),
    }
}

/// Integer coefficients of a polynomial; panics on anything else.
pub fn counts(poly: &Polynomial) -> BTreeMap<Element, u64> {
    poly.iter()
        .map(|(e, c)| {
            assert!(c.is_integer(), "{c} is not an integer");
            (e.clone(), c.to_integer().to_u64().expect("nonnegative"))
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, eps, 40)
}

/// `Li_w(z)` as the iterated integral: `x0` integrates against `dt/t`,
/// `x1` against `dt/(1-t)`, the first letter outermost.
pub fn li_quadrature(w: &[&str], z: f64, eps: f64) -> f64 {
    if w.is_empty() {
        return 1.0;
    }
    let inner = |t: f64| li_quadrature(&w[1..], t, eps);
    match w[0] {
        "x1" => simpson(&|t| inner(t) / (1.0 - t), 0.0, z, eps),
        "x0" => {
            assert!(w.len() > 1, "a trailing x0 diverges");
            // The integrand tends to the inner derivative at 0.
            let h = 1e-9;
            simpson(&|t| if t == 0.0 { inner(h) / h } else { inner(t) / t }, 0.0, z, eps)
        }
        l => panic!("letter {l}"),
    }
}

pub fn zeta2() -> f64 {
    PI * PI / 6.0
}

/// `zeta(2)^2`, also `2 zeta(2,2) + zeta(4)`.
pub fn zeta2_squared() -> f64 {
    PI.powi(4) / 36.0
}

pub fn zeta4() -> f64 {
    PI.powi(4) / 90.0
}

pub fn zeta22() -> f64 {
    PI.powi(4) / 120.0
}

/// `Li_2(1/2)`.
pub fn dilog_half() -> f64 {
    PI * PI / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0
}

/// The law of a finite builtin, recomputed from element names.
pub fn named_law(semigroup: &str) -> Box<dyn Fn(&str, &str) -> String> {
    let num = |s: &str| s.parse::<usize>().unwrap();
    if let Some(n) = semigroup.strip_prefix("zmul-") {
        let n: usize = n.parse().unwrap();
        Box::new(move |a, b| (num(a) * num(b) % n).to_string())
    } else if let Some(n) = semigroup.strip_prefix("zadd-") {
        let n: usize = n.parse().unwrap();
        Box::new(move |a, b| ((num(a) + num(b)) % n).to_string())
    } else if semigroup.starts_with("min-chain-") {
        Box::new(move |a, b| num(a).min(num(b)).to_string())
    } else if semigroup.starts_with("left-zero-") {
        Box::new(|a, _| a.to_string())
    } else if semigroup.starts_with('t') {
        // f first, then g.
        Box::new(|f, g| {
            let g: Vec<char> = g.chars().collect();
            f.chars().map(|c| g[c.to_digit(10).unwrap() as usize]).collect()
        })
    } else {
        panic!("no oracle for {semigroup}")
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
