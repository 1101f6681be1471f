use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::element::Named;
use crate::error::{Error, Result};

pub type Label = Named;

/// An upper semilattice of index labels.
pub trait IndexSemilattice: Send + Sync + fmt::Debug {
    fn leq(&self, a: &Label, b: &Label) -> bool;

    fn join(&self, a: &Label, b: &Label) -> Label;

    /// All labels when finite; otherwise the labels of the given radius.
    fn labels(&self, radius: usize) -> Vec<Label>;

    fn is_finite(&self) -> bool;

    fn minimum(&self) -> Option<Label>;

    fn contains(&self, l: &Label) -> bool;

    fn parse_label(&self, s: &str) -> Result<Label>;
}

/// A finite semilattice given by its join table; `a <= b` iff `a v b = b`.
#[derive(Debug, Clone)]
pub struct FiniteSemilattice {
    names: Vec<Arc<str>>,
    join: Vec<Vec<u32>>,
}

impl FiniteSemilattice {
    /// Validates that `join` is associative, commutative and idempotent.
    pub fn from_join_table(names: Vec<String>, join: Vec<Vec<u32>>) -> Result<Self> {
        let n = names.len();
        let bad = |m: String| Error::MalformedDdl { line: 0, message: m };
        if n == 0 || join.len() != n || join.iter().any(|r| r.len() != n) {
            return Err(bad(format!("join table must be {n}x{n} and nonempty")));
        }
        if join.iter().flatten().any(|&v| v as usize >= n) {
            return Err(bad("join entry out of range".into()));
        }
        for a in 0..n {
            if join[a][a] as usize != a {
                return Err(bad(format!("join not idempotent at `{}`", names[a])));
            }
            for b in 0..n {
                if join[a][b] != join[b][a] {
                    return Err(bad(format!("join not commutative at `{}`,`{}`", names[a], names[b])));
                }
                for c in 0..n {
                    if join[join[a][b] as usize][c] != join[a][join[b][c] as usize] {
                        return Err(bad(format!(
                            "join not associative at `{}`,`{}`,`{}`",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteSemilattice {
            names: names.into_iter().map(Arc::from).collect(),
            join,
        })
    }

    /// Builds the semilattice from order pairs `(lower, upper)`, taking the
    /// reflexive-transitive closure and computing least upper bounds.
    pub fn from_order(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let bad = |m: String| Error::MalformedDdl { line: 0, message: m };
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(bad(format!("order is not antisymmetric: `{}` and `{}`", names[i], names[j])));
                }
            }
        }
        let mut join = vec![vec![0u32; n]; n];
        for a in 0..n {
            for b in 0..n {
                let uppers: Vec<usize> = (0..n).filter(|&c| le[a][c] && le[b][c]).collect();
                let least = uppers
                    .iter()
                    .copied()
                    .find(|&c| uppers.iter().all(|&d| le[c][d]))
                    .ok_or_else(|| bad(format!("`{}` and `{}` have no join", names[a], names[b])))?;
                join[a][b] = least as u32;
            }
        }
        FiniteSemilattice::from_join_table(names, join)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let join = (0..n)
            .map(|a| (0..n).map(|b| a.max(b) as u32).collect())
            .collect();
        FiniteSemilattice::from_join_table(names, join).expect("chain is a semilattice")
    }

    pub fn label(&self, i: usize) -> Label {
        Named {
            id: i as u32,
            name: self.names[i].clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        let i = l.id as usize;
        (i < self.names.len() && self.names[i] == l.name).then_some(i)
    }
}

impl IndexSemilattice for FiniteSemilattice {
    fn leq(&self, a: &Label, b: &Label) -> bool {
        self.join[a.id as usize][b.id as usize] == b.id
    }

    fn join(&self, a: &Label, b: &Label) -> Label {
        self.label(self.join[a.id as usize][b.id as usize] as usize)
    }

    fn labels(&self, _radius: usize) -> Vec<Label> {
        (0..self.names.len()).map(|i| self.label(i)).collect()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn minimum(&self) -> Option<Label> {
        let all = self.labels(0);
        all.iter().find(|m| all.iter().all(|x| self.leq(m, x))).cloned()
    }

    fn contains(&self, l: &Label) -> bool {
        self.index_of(l).is_some()
    }

    fn parse_label(&self, s: &str) -> Result<Label> {
        let s = s.trim();
        let lookup: HashMap<&str, usize> = self.names.iter().enumerate().map(|(i, n)| (&**n, i)).collect();
        lookup
            .get(s)
            .map(|&i| self.label(i))
            .ok_or_else(|| Error::Parse(format!("unknown label `{s}`")))
    }
}

/// The naturals ordered by `a <= b` iff `min(a, b) = b`, i.e. the reverse of
/// the usual order. The join is the integer minimum, and every initial
/// interval `[<-, a] = [a, +inf)` is infinite.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReversedNaturals;

impl IndexSemilattice for ReversedNaturals {
    fn leq(&self, a: &Label, b: &Label) -> bool {
        a.id >= b.id
    }

    fn join(&self, a: &Label, b: &Label) -> Label {
        Named::numeric(a.id.min(b.id))
    }

    fn labels(&self, radius: usize) -> Vec<Label> {
        (0..=radius as u32).map(Named::numeric).collect()
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn minimum(&self) -> Option<Label> {
        None
    }

    fn contains(&self, l: &Label) -> bool {
        *l.name == *l.id.to_string()
    }

    fn parse_label(&self, s: &str) -> Result<Label> {
        s.trim()
            .parse::<u32>()
            .map(Named::numeric)
            .map_err(|_| Error::Parse(format!("expected a natural label, got `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversed_naturals_join_is_min() {
        let r = ReversedNaturals;
        let (a, b) = (Named::numeric(3), Named::numeric(5));
        assert_eq!(r.join(&a, &b), a);
        assert!(r.leq(&b, &a));
        assert!(!r.leq(&a, &b));
    }

    #[test]
    fn order_to_join() {
        // diamond lattice: bot < l, r < top
        let names = ["bot", "l", "r", "top"].map(String::from).to_vec();
        let s = FiniteSemilattice::from_order(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let l = s.parse_label("l").unwrap();
        let r = s.parse_label("r").unwrap();
        assert_eq!(&*s.join(&l, &r).name, "top");
        assert_eq!(&*s.minimum().unwrap().name, "bot");

        let names = ["a", "b"].map(String::from).to_vec();
        assert!(FiniteSemilattice::from_order(names, &[]).is_err());
    }

    #[test]
    fn chain_min() {
        let c = FiniteSemilattice::chain(3);
        assert_eq!(c.minimum().unwrap(), c.label(0));
        assert!(c.leq(&c.label(1), &c.label(2)));
    }
}
