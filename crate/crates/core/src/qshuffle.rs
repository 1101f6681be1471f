//! The quasi-shuffle product on words over a letter alphabet.
//!
//! ```text
//! 1 * w = w * 1 = w
//! au * bv = a(u * bv) + b(au * v) + (a.b)(u * v)
//! ```
//!
//! The third term is present only when the alphabet carries a letter
//! semigroup. Four instances are provided: [`shuffle`] (no merge),
//! [`stuffle`] (positive integers under addition), [`diamond`] (pairs under
//! componentwise addition) and [`ldiag_up`] (nonempty monomials under
//! multiplication).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::algebra::{Coeff, Polynomial};
use crate::element::{parse_bicomposition, parse_composition, parse_monoword, parse_word, Element, Monomial};
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// How letters combine in the third term of the recursion.
pub enum LetterAlgebra<'a, L> {
    /// No merge term: the plain shuffle.
    Free,
    /// Letters merge under the given associative, commutative law.
    Merge(&'a dyn Fn(&L, &L) -> L),
}

impl<L: Clone + PartialEq + fmt::Debug> LetterAlgebra<'_, L> {
    /// Samples associativity and commutativity of the letter law.
    pub fn check_laws(&self, samples: &[L]) -> CheckReport {
        let mut report = CheckReport::new("letter-law", None);
        let LetterAlgebra::Merge(f) = self else {
            report.note("free alphabet: nothing to check");
            return report;
        };
        for a in samples {
            for b in samples {
                let ab = f(a, b);
                report.check(ab == f(b, a), || format!("{a:?}.{b:?} is not commutative"));
                for c in samples {
                    let l = f(&ab, c);
                    let r = f(a, &f(b, c));
                    report.check(l == r, || format!("({a:?}.{b:?}).{c:?} = {l:?} but {r:?}"));
                }
            }
        }
        report
    }
}

type Terms<L> = BTreeMap<Vec<L>, BigUint>;

fn prepend<L: Clone + Ord>(out: &mut Terms<L>, letter: &L, from: &Terms<L>) {
    for (w, c) in from {
        let mut word = Vec::with_capacity(w.len() + 1);
        word.push(letter.clone());
        word.extend_from_slice(w);
        *out.entry(word).or_default() += c;
    }
}

/// Expands `u * v` by the recursion, sharing every `(suffix of u, suffix of v)`
/// subresult. Coefficients are nonnegative integers.
pub fn quasi_shuffle<L: Clone + Ord>(u: &[L], v: &[L], letters: &LetterAlgebra<'_, L>) -> Terms<L> {
    let (p, q) = (u.len(), v.len());
    let single = |w: &[L]| -> Terms<L> { BTreeMap::from([(w.to_vec(), BigUint::one())]) };

    // row[j] holds u[i..] * v[j..] for the current i; below holds row i+1.
    let mut below: Vec<Terms<L>> = (0..=q).map(|j| single(&v[j..])).collect();
    for i in (0..p).rev() {
        let mut row: Vec<Terms<L>> = vec![BTreeMap::new(); q + 1];
        row[q] = single(&u[i..]);
        for j in (0..q).rev() {
            let mut acc = Terms::new();
            prepend(&mut acc, &u[i], &below[j]);
            prepend(&mut acc, &v[j], &row[j + 1]);
            if let LetterAlgebra::Merge(f) = letters {
                prepend(&mut acc, &f(&u[i], &v[j]), &below[j + 1]);
            }
            row[j] = acc;
        }
        below = row;
    }
    below.swap_remove(0)
}

fn to_polynomial<L>(terms: Terms<L>, wrap: impl Fn(Vec<L>) -> Element) -> Polynomial {
    terms
        .into_iter()
        .map(|(w, c)| (wrap(w), BigRational::from_integer(BigInt::from(c))))
        .collect()
}

pub fn shuffle<S: AsRef<str>>(u: &[S], v: &[S]) -> Polynomial {
    let u: Vec<String> = u.iter().map(|s| s.as_ref().to_string()).collect();
    let v: Vec<String> = v.iter().map(|s| s.as_ref().to_string()).collect();
    to_polynomial(quasi_shuffle(&u, &v, &LetterAlgebra::Free), Element::Word)
}

fn add_u32(a: &u32, b: &u32) -> u32 {
    a + b
}

fn add_pair(a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
    (a.0 + b.0, a.1 + b.1)
}

fn mul_monomial(a: &Monomial, b: &Monomial) -> Monomial {
    a.mul(b)
}

pub fn stuffle(s: &[u32], t: &[u32]) -> Result<Polynomial> {
    if let Some(bad) = s.iter().chain(t).find(|&&x| x == 0) {
        return Err(Error::LetterDomain(format!(
            "composition entry {bad} is not positive"
        )));
    }
    Ok(to_polynomial(
        quasi_shuffle(s, t, &LetterAlgebra::Merge(&add_u32)),
        Element::Composition,
    ))
}

pub fn diamond(a: &[(u32, u32)], b: &[(u32, u32)]) -> Result<Polynomial> {
    if a.iter().chain(b).any(|&p| p == (0, 0)) {
        return Err(Error::LetterDomain("bicomposition pair (0/0)".into()));
    }
    Ok(to_polynomial(
        quasi_shuffle(a, b, &LetterAlgebra::Merge(&add_pair)),
        Element::Bicomposition,
    ))
}

pub fn ldiag_up(w1: &[Monomial], w2: &[Monomial]) -> Result<Polynomial> {
    if let Some(bad) = w1.iter().chain(w2).find(|m| m.is_one() || !m.all_positive()) {
        return Err(Error::LetterDomain(format!(
            "letter [{bad}] is not a nonempty monomial"
        )));
    }
    Ok(to_polynomial(
        quasi_shuffle(w1, w2, &LetterAlgebra::Merge(&mul_monomial)),
        Element::MonoWord,
    ))
}

/// The four products, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Product {
    Shuffle,
    Stuffle,
    Diamond,
    Ldiag,
}

impl Product {
    pub const ALL: [Product; 4] = [Product::Shuffle, Product::Stuffle, Product::Diamond, Product::Ldiag];

    pub fn name(self) -> &'static str {
        match self {
            Product::Shuffle => "shuffle",
            Product::Stuffle => "stuffle",
            Product::Diamond => "diamond",
            Product::Ldiag => "ldiag",
        }
    }

    /// Parses a word in this product's CLI syntax.
    pub fn parse_word(self, s: &str) -> Result<Element> {
        Ok(match self {
            Product::Shuffle => Element::Word(parse_word(s)),
            Product::Stuffle => Element::Composition(parse_composition(s)?),
            Product::Diamond => Element::Bicomposition(parse_bicomposition(s)?),
            Product::Ldiag => Element::MonoWord(parse_monoword(s)?),
        })
    }

    /// A small alphabet for exhaustive sweeps: `x0, x1`; `1, 2`;
    /// `1/0, 0/1, 1/1`; `x1, x2`.
    pub fn sample_letters(self) -> Vec<Element> {
        match self {
            Product::Shuffle => ["x0", "x1"].map(|l| Element::Word(vec![l.into()])).to_vec(),
            Product::Stuffle => [1, 2].map(|k| Element::Composition(vec![k])).to_vec(),
            Product::Diamond => [(1, 0), (0, 1), (1, 1)].map(|p| Element::Bicomposition(vec![p])).to_vec(),
            Product::Ldiag => [1, 2].map(|v| Element::MonoWord(vec![Monomial::var(v)])).to_vec(),
        }
    }

    /// The word spelled by indices into [`Product::sample_letters`].
    pub fn word_from_letters(self, idx: &[usize]) -> Element {
        let letters = self.sample_letters();
        idx.iter().fold(self.empty_word(), |w, &i| concat(&w, &letters[i]))
    }

    /// Every word of length at most `max_len` over [`Product::sample_letters`],
    /// shortest first.
    pub fn words_up_to(self, max_len: usize) -> Vec<Element> {
        let letters = self.sample_letters();
        let mut layer = vec![self.empty_word()];
        let mut out = layer.clone();
        for _ in 0..max_len {
            let next: Vec<Element> = layer.iter().flat_map(|w| letters.iter().map(move |l| concat(w, l))).collect();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn empty_word(self) -> Element {
        match self {
            Product::Shuffle => Element::Word(Vec::new()),
            Product::Stuffle => Element::Composition(Vec::new()),
            Product::Diamond => Element::Bicomposition(Vec::new()),
            Product::Ldiag => Element::MonoWord(Vec::new()),
        }
    }

    /// `u * v` on basis words.
    pub fn apply(self, u: &Element, v: &Element) -> Result<Polynomial> {
        match (self, u, v) {
            (Product::Shuffle, Element::Word(a), Element::Word(b)) => Ok(shuffle(a, b)),
            (Product::Stuffle, Element::Composition(a), Element::Composition(b)) => stuffle(a, b),
            (Product::Diamond, Element::Bicomposition(a), Element::Bicomposition(b)) => diamond(a, b),
            (Product::Ldiag, Element::MonoWord(a), Element::MonoWord(b)) => ldiag_up(a, b),
            _ => Err(Error::LetterDomain(format!(
                "{} expects two words of its own alphabet, got {} and {}",
                self.name(),
                u.kind(),
                v.kind()
            ))),
        }
    }

    /// Bilinear extension to polynomials.
    pub fn apply_poly(self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (a, ca) in p.iter() {
            for (b, cb) in q.iter() {
                let c: Coeff = ca * cb;
                for (w, k) in self.apply(a, b)?.iter() {
                    out.add_term(w.clone(), k * &c);
                }
            }
        }
        Ok(out)
    }
}

impl FromStr for Product {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Product::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown product `{s}` (shuffle|stuffle|diamond|ldiag)")))
    }
}

fn concat(a: &Element, b: &Element) -> Element {
    fn join<T: Clone>(x: &[T], y: &[T]) -> Vec<T> {
        x.iter().chain(y).cloned().collect()
    }
    match (a, b) {
        (Element::Word(x), Element::Word(y)) => Element::Word(join(x, y)),
        (Element::Composition(x), Element::Composition(y)) => Element::Composition(join(x, y)),
        (Element::Bicomposition(x), Element::Bicomposition(y)) => Element::Bicomposition(join(x, y)),
        (Element::MonoWord(x), Element::MonoWord(y)) => Element::MonoWord(join(x, y)),
        _ => panic!("concatenating words of different kinds"),
    }
}

/// Sum of coefficients as an integer; for tests on small inputs.
pub fn term_count(p: &Polynomial) -> u64 {
    p.coefficient_sum().to_integer().to_u64().unwrap_or(u64::MAX)
}
