//! Numerical polylogarithms and multiple zeta values.
//!
//! A word `x0^(s1-1) x1 ... x0^(sk-1) x1` stands for the composition
//! `(s1, ..., sk)` and
//!
//! ```text
//! Li_s(z) = sum over n1 > n2 > ... > nk >= 1 of z^n1 / (n1^s1 ... nk^sk)
//! ```
//!
//! so the first letter block drives the outermost index. Sums are truncated
//! at `n1 <= N` and every value comes with a rigorous bound on the
//! truncation error. Both rest on
//!
//! ```text
//! sum over n > m2 > ... > mk >= 1 of 1/(m2^s2 ... mk^sk)
//!     <= H_(n-1)^(k-1) / (k-1)!  <=  (1 + ln n)^(k-1) / (k-1)!
//! ```

use std::fmt;

use num_traits::ToPrimitive;

use crate::algebra::Polynomial;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::qshuffle::{shuffle, stuffle};

/// A truncated value and a bound on `|exact - value|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, error_bound: 0.0 }
    }

    pub fn mul(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value * other.value,
            error_bound: self.value.abs() * other.error_bound
                + other.value.abs() * self.error_bound
                + self.error_bound * other.error_bound,
        }
    }
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12} (+/- {:.3e})", self.value, self.error_bound)
    }
}

pub fn word_to_composition<S: AsRef<str>>(w: &[S]) -> Result<Vec<u32>> {
    let text = || w.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ");
    if w.last().map(AsRef::as_ref) != Some("x1") {
        return Err(Error::NotAnalytic(text()));
    }
    let mut out = Vec::new();
    let mut zeros = 0;
    for l in w {
        match l.as_ref() {
            "x0" => zeros += 1,
            "x1" => {
                out.push(zeros + 1);
                zeros = 0;
            }
            other => return Err(Error::Parse(format!("letter `{other}` is neither x0 nor x1 in `{}`", text()))),
        }
    }
    Ok(out)
}

pub fn composition_to_word(s: &[u32]) -> Result<Vec<String>> {
    if s.is_empty() || s.contains(&0) {
        return Err(Error::Domain(format!("composition {s:?} must be nonempty with positive entries")));
    }
    let mut w = Vec::new();
    for &k in s {
        w.extend(std::iter::repeat_n("x0".to_string(), k as usize - 1));
        w.push("x1".to_string());
    }
    Ok(w)
}

/// `(1 + ln n)^m / (m! n^s)`.
fn inner_bound(n: f64, m: usize, s: f64) -> f64 {
    let fact: f64 = (1..=m).map(|i| i as f64).product();
    (1.0 + n.ln()).powi(m as i32) / (fact * n.powf(s))
}

/// Largest `inner_bound(n)` over integers `n > big_n`. The function grows
/// until `n = exp(m/s - 1)` and decreases afterwards.
fn inner_bound_sup(big_n: usize, m: usize, s: f64) -> f64 {
    let peak = (m as f64 / s - 1.0).exp();
    let mut best = inner_bound((big_n + 1) as f64, m, s);
    for c in [peak.floor(), peak.ceil()] {
        if c > big_n as f64 {
            best = best.max(inner_bound(c, m, s));
        }
    }
    best
}

/// `T[n] = n^-s1 * sum over n > m2 > ... of ...`, for `n` in `1..=N`.
fn nested_terms(s: &[u32], big_n: usize) -> Vec<f64> {
    let k = s.len();
    let mut t: Vec<f64> = (0..=big_n).map(|n| if n == 0 { 0.0 } else { (n as f64).powi(-(s[k - 1] as i32)) }).collect();
    for &sj in s[..k - 1].iter().rev() {
        let mut acc = 0.0;
        let mut next = vec![0.0; big_n + 1];
        for n in 1..=big_n {
            next[n] = acc * (n as f64).powi(-(sj as i32));
            acc += t[n];
        }
        t = next;
    }
    t
}

fn check_truncation(s: &[u32], big_n: usize) -> Result<()> {
    if big_n < s.len() {
        return Err(Error::Domain(format!("truncation {big_n} is below the depth {}", s.len())));
    }
    Ok(())
}

/// `Li_s(z)` for `0 < z < 1`, summing `n1 <= N`.
pub fn li_composition(s: &[u32], z: f64, big_n: usize) -> Result<Estimate> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("z = {z} must lie in (0, 1)")));
    }
    if s.is_empty() || s.contains(&0) {
        return Err(Error::Domain(format!("composition {s:?} must be nonempty with positive entries")));
    }
    check_truncation(s, big_n)?;
    let t = nested_terms(s, big_n);
    let mut value = 0.0;
    let mut zn = 1.0;
    for tn in t.iter().skip(1) {
        zn *= z;
        value += zn * tn;
    }
    let factor = inner_bound_sup(big_n, s.len() - 1, s[0] as f64);
    let error_bound = factor * z.powi(big_n as i32 + 1) / (1.0 - z);
    Ok(Estimate { value, error_bound })
}

/// `Li_w(z)` for a word over `{x0, x1}` ending in `x1`.
pub fn li<S: AsRef<str>>(w: &[S], z: f64, big_n: usize) -> Result<Estimate> {
    li_composition(&word_to_composition(w)?, z, big_n)
}

/// `Li_{x0^n}(z) = ln(z)^n / n!`.
pub fn li_log_power(n: u32, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("z = {z} must lie in (0, 1)")));
    }
    let fact: f64 = (1..=n).map(f64::from).product();
    Ok(z.ln().powi(n as i32) / fact)
}

/// `zeta(s)` for `s1 >= 2`, summing `n1 <= N`.
pub fn zeta(s: &[u32], big_n: usize) -> Result<Estimate> {
    if s.is_empty() || s.contains(&0) {
        return Err(Error::Domain(format!("composition {s:?} must be nonempty with positive entries")));
    }
    if s[0] < 2 {
        return Err(Error::DivergentIndex(Element::Composition(s.to_vec()).to_string()));
    }
    check_truncation(s, big_n)?;
    let t = nested_terms(s, big_n);
    let value = t.iter().sum();
    Ok(Estimate {
        value,
        error_bound: zeta_tail(big_n, s.len() - 1, s[0]),
    })
}

/// Bounds `sum over n > N of (1 + ln n)^m / (m! n^s)` by summing explicitly
/// up to where the summand starts decreasing, then by the integral
/// `int_L^inf (1+u)^m e^(-a u) du = e^(-aL) sum_j m!/(m-j)! (1+L)^(m-j) / a^(j+1)`
/// with `a = s - 1`, `L = ln(start)`.
fn zeta_tail(big_n: usize, m: usize, s: u32) -> f64 {
    let sf = s as f64;
    let peak = (m as f64 / sf - 1.0).exp().ceil() as usize;
    let start = big_n.max(peak);
    let explicit: f64 = (big_n + 1..=start).map(|n| inner_bound(n as f64, m, sf)).sum();
    let a = sf - 1.0;
    let l = (start as f64).ln();
    let mut integral = 0.0;
    let mut falling = 1.0;
    for j in 0..=m {
        integral += falling * (1.0 + l).powi((m - j) as i32) / a.powi(j as i32 + 1);
        falling *= (m - j) as f64;
    }
    let fact: f64 = (1..=m).map(|i| i as f64).product();
    explicit + (-a * l).exp() * integral / fact
}

/// Both sides of a product identity, with their truncation budgets.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub identity: String,
    pub lhs: Estimate,
    pub rhs: Estimate,
    /// `(term, coefficient, estimate)` for every term of the right-hand side.
    pub terms: Vec<(String, f64, Estimate)>,
    pub tolerance: f64,
}

impl IdentityCheck {
    pub fn difference(&self) -> f64 {
        (self.lhs.value - self.rhs.value).abs()
    }

    pub fn budget(&self) -> f64 {
        self.tolerance + self.lhs.error_bound + self.rhs.error_bound
    }

    pub fn passed(&self) -> bool {
        self.difference() <= self.budget()
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", if self.passed() { "PASS" } else { "FAIL" }, self.identity)?;
        writeln!(f, "  lhs {}", self.lhs)?;
        writeln!(f, "  rhs {}", self.rhs)?;
        for (t, c, e) in &self.terms {
            writeln!(f, "    {c} * {t}: {e}")?;
        }
        write!(f, "  |lhs - rhs| = {:.3e}, budget {:.3e}", self.difference(), self.budget())
    }
}

fn expand(p: &Polynomial, eval: impl Fn(&Element) -> Result<Estimate>) -> Result<(Estimate, Vec<(String, f64, Estimate)>)> {
    let mut total = Estimate::exact(0.0);
    let mut terms = Vec::new();
    for (t, c) in p.iter() {
        let c = c.to_f64().expect("finite coefficient");
        let e = eval(t)?;
        total.value += c * e.value;
        total.error_bound += c.abs() * e.error_bound;
        terms.push((t.to_string(), c, e));
    }
    Ok((total, terms))
}

fn li_or_one<S: AsRef<str>>(w: &[S], z: f64, big_n: usize) -> Result<Estimate> {
    if w.is_empty() {
        Ok(Estimate::exact(1.0))
    } else {
        li(w, z, big_n)
    }
}

/// `Li_u(z) Li_v(z)` against `Li_{u sh v}(z)`. The empty word evaluates to 1.
pub fn chen_check<S: AsRef<str>>(u: &[S], v: &[S], z: f64, big_n: usize, tol: f64) -> Result<IdentityCheck> {
    let lhs = li_or_one(u, z, big_n)?.mul(li_or_one(v, z, big_n)?);
    let (rhs, terms) = expand(&shuffle(u, v), |t| {
        let Element::Word(w) = t else { unreachable!("shuffle yields words") };
        assert!(w.is_empty() || w.last().map(String::as_str) == Some("x1"), "shuffle term {t} must end in x1");
        li_or_one(w, z, big_n)
    })?;
    let show = |w: &[S]| Element::word(w).to_string();
    Ok(IdentityCheck {
        identity: format!("Li[{}] Li[{}] = Li[{} sh {}] at z = {z}", show(u), show(v), show(u), show(v)),
        lhs,
        rhs,
        terms,
        tolerance: tol,
    })
}

/// `zeta(s) zeta(t)` against `zeta(s st t)`.
pub fn stuffle_check(s: &[u32], t: &[u32], big_n: usize, tol: f64) -> Result<IdentityCheck> {
    let lhs = zeta(s, big_n)?.mul(zeta(t, big_n)?);
    let (rhs, terms) = expand(&stuffle(s, t)?, |term| {
        let Element::Composition(c) = term else { unreachable!("stuffle yields compositions") };
        assert!(c[0] >= s[0].min(t[0]), "stuffle term {term} starts below both operands");
        zeta(c, big_n)
    })?;
    let show = |c: &[u32]| Element::Composition(c.to_vec()).to_string();
    Ok(IdentityCheck {
        identity: format!("zeta{} zeta{} = zeta[{} st {}]", show(s), show(t), show(s), show(t)),
        lhs,
        rhs,
        terms,
        tolerance: tol,
    })
}
