//! The algebra `k[M]` of a semigroup with exact rational coefficients.
//!
//! The scalar product makes basis elements orthonormal; the tensor pairing
//! is componentwise, `<P (x) Q | p (x) q> = <P|p><Q|q>`, extended bilinearly.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::element::{Element, ElementKind};
use crate::error::{Error, Result};
use crate::semigroup::{decompose, Semigroup};

pub type Coeff = BigRational;

pub fn rational(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Coeff, body: &dyn fmt::Display) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    let abs = c.abs();
    if abs.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{abs}*{body}")
    }
}

/// A finite rational combination of semigroup elements. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Element, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn basis(e: Element) -> Self {
        Polynomial::term(e, Coeff::one())
    }

    pub fn term(e: Element, c: Coeff) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Element, Coeff)>) -> Self {
        let mut p = Polynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Element, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Coefficient `<P|m>`; also the value of `P` read as a function on `M`.
    pub fn coeff(&self, e: &Element) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        Polynomial::from_terms(self.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Coeff {
        self.terms.values().fold(Coeff::zero(), |a, b| a + b)
    }

    fn kinds(&self) -> BTreeSet<ElementKind> {
        self.terms.keys().map(Element::kind).collect()
    }

    /// Parses `3/2*<elem> + <elem> - 2*<elem>`. A binary `-` must be
    /// surrounded by spaces (Laurent exponents use `^-`); `+` need not be.
    /// The empty string is the zero polynomial.
    pub fn parse(s: &str, parse_element: impl Fn(&str) -> Result<Element>) -> Result<Polynomial> {
        let mut p = Polynomial::zero();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Ok(p);
        }
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            if r.starts_with(' ') || r.starts_with(char::is_alphanumeric) || r.starts_with(['(', '[']) {
                negative = true;
                rest = r.trim_start();
            }
        }
        loop {
            let next = ["+", " - "]
                .iter()
                .filter_map(|sep| rest.find(sep).map(|i| (i, *sep)))
                .min();
            let (body, tail) = match next {
                Some((i, sep)) => (&rest[..i], Some((&rest[i + sep.len()..], sep == " - "))),
                None => (rest, None),
            };
            let (c, e) = parse_term(body.trim(), &parse_element)?;
            p.add_term(e, if negative { -c } else { c });
            match tail {
                Some((t, neg)) => {
                    rest = t.trim_start();
                    negative = neg;
                }
                None => break,
            }
        }
        Ok(p)
    }
}

fn parse_rational(s: &str) -> Option<Coeff> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) || !d.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

fn parse_term(body: &str, parse_element: &dyn Fn(&str) -> Result<Element>) -> Result<(Coeff, Element)> {
    if body.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    if let Some((head, tail)) = body.split_once('*') {
        if let Some(c) = parse_rational(head.trim()) {
            return Ok((c, parse_element(tail.trim())?));
        }
    }
    Ok((Coeff::one(), parse_element(body)?))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            fmt_coeff_term(f, i == 0, c, e)?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl FromIterator<(Element, Coeff)> for Polynomial {
    fn from_iter<T: IntoIterator<Item = (Element, Coeff)>>(iter: T) -> Self {
        Polynomial::from_terms(iter)
    }
}

/// A finite rational combination of pairs `p (x) q`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorPolynomial {
    terms: BTreeMap<(Element, Element), Coeff>,
}

impl TensorPolynomial {
    pub fn add_term(&mut self, p: Element, q: Element, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let key = (p, q);
        let v = self.terms.entry(key.clone()).or_insert_with(Coeff::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, p: &Element, q: &Element) -> Coeff {
        self.terms
            .get(&(p.clone(), q.clone()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Element, Element), &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `<P (x) Q | self>`.
    pub fn pair_with(&self, p: &Polynomial, q: &Polynomial) -> Coeff {
        self.terms
            .iter()
            .fold(Coeff::zero(), |acc, ((a, b), c)| acc + c * p.coeff(a) * q.coeff(b))
    }
}

impl fmt::Display for TensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let body = format!("({a},{b})");
            fmt_coeff_term(f, i == 0, c, &body)?;
        }
        Ok(())
    }
}

fn ensure_over(s: &dyn Semigroup, p: &Polynomial) -> Result<()> {
    match p.support().find(|e| !s.contains(e)) {
        Some(e) => Err(Error::MixedSemigroup(format!(
            "`{e}` is not an element of `{}`",
            s.name()
        ))),
        None => Ok(()),
    }
}

/// Bilinear extension of the semigroup law.
pub fn poly_mul(s: &dyn Semigroup, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    ensure_over(s, p)?;
    ensure_over(s, q)?;
    let mut out = Polynomial::zero();
    for (a, ca) in p.iter() {
        for (b, cb) in q.iter() {
            out.add_term(s.law(a, b), ca * cb);
        }
    }
    Ok(out)
}

/// `<P|Q> = sum_m <P|m><Q|m>`.
pub fn scalar_product(p: &Polynomial, q: &Polynomial) -> Result<Coeff> {
    let kinds: BTreeSet<ElementKind> = p.kinds().union(&q.kinds()).copied().collect();
    if kinds.len() > 1 {
        return Err(Error::MixedSemigroup(format!(
            "operands mix {}",
            kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" and ")
        )));
    }
    Ok(p.iter()
        .fold(Coeff::zero(), |acc, (e, c)| acc + c * q.coeff(e)))
}

/// `Delta(m) = sum_{pq = m} p (x) q`, extended linearly.
pub fn coproduct(s: &dyn Semigroup, p: &Polynomial) -> Result<TensorPolynomial> {
    if !s.capabilities().decomposer {
        return Err(Error::NonFiniteDecomposition {
            semigroup: s.name().to_string(),
        });
    }
    ensure_over(s, p)?;
    let mut out = TensorPolynomial::default();
    for (m, c) in p.iter() {
        for (a, b) in decompose(s, m)? {
            out.add_term(a, b, c.clone());
        }
    }
    Ok(out)
}

/// Both sides of `<P.Q|R> = <P (x) Q|Delta(R)>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityOutcome {
    pub product_side: Coeff,
    pub coproduct_side: Coeff,
}

impl DualityOutcome {
    pub fn holds(&self) -> bool {
        self.product_side == self.coproduct_side
    }
}

pub fn duality_check(
    s: &dyn Semigroup,
    p: &Polynomial,
    q: &Polynomial,
    r: &Polynomial,
) -> Result<DualityOutcome> {
    let delta = coproduct(s, r)?;
    let pq = poly_mul(s, p, q)?;
    Ok(DualityOutcome {
        product_side: scalar_product(&pq, r)?,
        coproduct_side: delta.pair_with(p, q),
    })
}

/// `(f * g)(m) = sum_{m1 m2 = m} f(m1) g(m2)` at a single point.
///
/// Works for arbitrary functions; only `decompose(m)` is consulted.
pub fn convolve_at(
    s: &dyn Semigroup,
    f: &dyn Fn(&Element) -> Coeff,
    g: &dyn Fn(&Element) -> Coeff,
    m: &Element,
) -> Result<Coeff> {
    Ok(decompose(s, m)?
        .iter()
        .fold(Coeff::zero(), |acc, (a, b)| acc + f(a) * g(b)))
}

/// Convolution of finitely supported functions, evaluated pointwise on
/// every product of the two supports.
pub fn convolve(s: &dyn Semigroup, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if !s.capabilities().decomposer {
        return Err(Error::NonFiniteDecomposition {
            semigroup: s.name().to_string(),
        });
    }
    ensure_over(s, f)?;
    ensure_over(s, g)?;
    let points: BTreeSet<Element> = f
        .support()
        .flat_map(|a| g.support().map(move |b| s.law(a, b)))
        .collect();
    let fe = |e: &Element| f.coeff(e);
    let ge = |e: &Element| g.coeff(e);
    let mut out = Polynomial::zero();
    for m in points {
        let v = convolve_at(s, &fe, &ge, &m)?;
        out.add_term(m, v);
    }
    Ok(out)
}

pub type Tensor3 = BTreeMap<(Element, Element, Element), Coeff>;

/// `(Delta (x) id) Delta(m)`.
pub fn coproduct_left_iterated(s: &dyn Semigroup, m: &Element) -> Result<Tensor3> {
    let mut out = Tensor3::new();
    for (ab, c) in decompose(s, m)? {
        for (a, b) in decompose(s, &ab)? {
            *out.entry((a, b, c.clone())).or_insert_with(Coeff::zero) += Coeff::one();
        }
    }
    Ok(out)
}

/// `(id (x) Delta) Delta(m)`.
pub fn coproduct_right_iterated(s: &dyn Semigroup, m: &Element) -> Result<Tensor3> {
    let mut out = Tensor3::new();
    for (a, bc) in decompose(s, m)? {
        for (b, c) in decompose(s, &bc)? {
            *out.entry((a.clone(), b, c)).or_insert_with(Coeff::zero) += Coeff::one();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::builtin;

    fn nat_poly(terms: &[(u64, i64, i64)]) -> Polynomial {
        terms
            .iter()
            .map(|&(e, n, d)| (Element::Nat(e), rational(n, d)))
            .collect()
    }

    #[test]
    fn poly_mul_examples() {
        let np = builtin("nat-plus").unwrap();
        let p = nat_poly(&[(2, 1, 1), (3, 1, 1)]);
        let q = nat_poly(&[(2, 1, 1)]);
        assert_eq!(poly_mul(&*np, &p, &q).unwrap(), nat_poly(&[(4, 1, 1), (5, 1, 1)]));

        let half = nat_poly(&[(2, 1, 2)]);
        assert_eq!(poly_mul(&*np, &half, &q).unwrap(), nat_poly(&[(4, 1, 2)]));

        let z4 = builtin("zmul-4").unwrap();
        let two = Polynomial::basis(z4.parse_element("2").unwrap());
        let zero = Polynomial::basis(z4.parse_element("0").unwrap());
        assert_eq!(poly_mul(&*z4, &two, &two).unwrap(), zero);

        let mon = Polynomial::basis(Element::Monomial(crate::Monomial::var(1)));
        assert!(matches!(
            poly_mul(&*np, &p, &mon),
            Err(Error::MixedSemigroup(_))
        ));
    }

    #[test]
    fn scalar_product_examples() {
        let p = nat_poly(&[(2, 1, 1), (3, 2, 1)]);
        let q = nat_poly(&[(3, 5, 1)]);
        assert_eq!(scalar_product(&p, &q).unwrap(), integer(10));
        assert_eq!(scalar_product(&p, &nat_poly(&[(7, 1, 1)])).unwrap(), integer(0));
        assert_eq!(scalar_product(&p, &p).unwrap(), integer(5));
        let w = Polynomial::basis(Element::word(&["a"]));
        assert!(matches!(scalar_product(&p, &w), Err(Error::MixedSemigroup(_))));
    }

    #[test]
    fn coproduct_examples() {
        let np = builtin("nat-plus").unwrap();
        let d3 = coproduct(&*np, &nat_poly(&[(3, 1, 1)])).unwrap();
        assert_eq!(d3.to_string(), "(1,2) + (2,1)");
        let d2 = coproduct(&*np, &nat_poly(&[(2, 1, 1)])).unwrap();
        assert_eq!(d2.to_string(), "(1,1)");
        assert_eq!(d2.coeff(&Element::Nat(1), &Element::Nat(1)), integer(1));

        let l = builtin("mon-laurent").unwrap();
        let x1 = Polynomial::basis(l.parse_element("x1").unwrap());
        assert!(matches!(
            coproduct(&*l, &x1),
            Err(Error::NonFiniteDecomposition { .. })
        ));
    }

    #[test]
    fn duality_examples() {
        let np = builtin("nat-plus").unwrap();
        let out = duality_check(
            &*np,
            &nat_poly(&[(1, 1, 1)]),
            &nat_poly(&[(2, 1, 1)]),
            &nat_poly(&[(3, 1, 1)]),
        )
        .unwrap();
        assert!(out.holds());
        assert_eq!(out.product_side, integer(1));

        let off = duality_check(
            &*np,
            &nat_poly(&[(1, 1, 1)]),
            &nat_poly(&[(2, 1, 1)]),
            &nat_poly(&[(7, 1, 1)]),
        )
        .unwrap();
        assert!(off.holds());
        assert_eq!(off.product_side, integer(0));

        let l = builtin("mon-laurent").unwrap();
        let one = Polynomial::basis(l.parse_element("1").unwrap());
        assert!(duality_check(&*l, &one, &one, &one).is_err());
    }

    #[test]
    fn convolution_examples() {
        let np = builtin("nat-plus").unwrap();
        let ind1 = nat_poly(&[(1, 1, 1)]);
        assert_eq!(convolve(&*np, &ind1, &ind1).unwrap(), nat_poly(&[(2, 1, 1)]));

        let nm = builtin("nat-monoid").unwrap();
        let unit = nat_poly(&[(0, 1, 1)]);
        let g = nat_poly(&[(0, 3, 1), (4, -1, 2), (5, 2, 3)]);
        assert_eq!(convolve(&*nm, &unit, &g).unwrap(), g);
        assert_eq!(convolve(&*nm, &g, &unit).unwrap(), g);
        assert_eq!(convolve(&*nm, &g, &g).unwrap(), poly_mul(&*nm, &g, &g).unwrap());

        let l = builtin("mon-laurent").unwrap();
        let one = Polynomial::basis(l.parse_element("1").unwrap());
        assert!(convolve(&*l, &one, &one).is_err());
    }

    #[test]
    fn convolve_at_accepts_infinite_support() {
        // f = g = 1 everywhere on N+: (f*g)(n) = n - 1
        let np = builtin("nat-plus").unwrap();
        let one = |_: &Element| integer(1);
        assert_eq!(convolve_at(&*np, &one, &one, &Element::Nat(6)).unwrap(), integer(5));
    }

    #[test]
    fn display_and_parse() {
        let np = builtin("nat-plus").unwrap();
        let parse = |s: &str| Polynomial::parse(s, |e| np.parse_element(e));
        let p = parse("3/2*2 + 5 - 2*7").unwrap();
        assert_eq!(p.to_string(), "3/2*2 + 5 - 2*7");
        assert_eq!(parse("-4 + 4").unwrap(), Polynomial::zero());
        assert_eq!(Polynomial::zero().to_string(), "0");

        let mon = builtin("mon-laurent").unwrap();
        let q = Polynomial::parse("2*x1^-1*x2 - x1", |e| mon.parse_element(e)).unwrap();
        assert_eq!(q.to_string(), "2*x1^-1*x2 - x1");
        assert!(parse("3/0*2").is_err());
    }
}
