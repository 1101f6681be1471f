use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use super::{Capabilities, FdStatus, Semigroup};
use crate::element::{Element, Named};
use crate::error::{Error, Result};

/// A finite semigroup given by its Cayley table.
///
/// Entry `(i, j)` of the table is the index of `e_i * e_j`. Construction
/// rejects out-of-range entries and non-associative tables.
#[derive(Debug, Clone)]
pub struct FiniteTable {
    name: String,
    names: Vec<Arc<str>>,
    table: Vec<Vec<u32>>,
    index: HashMap<Arc<str>, u32>,
    neutral: Option<u32>,
}

impl FiniteTable {
    pub fn new(name: impl Into<String>, names: Vec<String>, table: Vec<Vec<u32>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedTable {
                line: 0,
                message: "empty carrier".into(),
            });
        }
        let names: Vec<Arc<str>> = names.into_iter().map(Arc::from).collect();
        let mut index = HashMap::new();
        for (i, nm) in names.iter().enumerate() {
            if index.insert(nm.clone(), i as u32).is_some() {
                return Err(Error::MalformedTable {
                    line: 0,
                    message: format!("duplicate element name `{nm}`"),
                });
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable {
                line: 0,
                message: format!("table must be {n}x{n}"),
            });
        }
        if let Some(bad) = table.iter().flatten().find(|&&v| v as usize >= n) {
            return Err(Error::MalformedTable {
                line: 0,
                message: format!("entry {bad} out of range"),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i][j] as usize;
                for k in 0..n {
                    let left = table[ij][k];
                    let right = table[i][table[j][k] as usize];
                    if left != right {
                        return Err(Error::NonAssociative {
                            a: names[i].to_string(),
                            b: names[j].to_string(),
                            c: names[k].to_string(),
                            left: names[left as usize].to_string(),
                            right: names[right as usize].to_string(),
                        });
                    }
                }
            }
        }
        let neutral = (0..n).find(|&e| (0..n).all(|x| table[e][x] as usize == x && table[x][e] as usize == x));
        Ok(FiniteTable {
            name: name.into(),
            names,
            table,
            index,
            neutral: neutral.map(|e| e as u32),
        })
    }

    /// Tabulates `law` over indices `0..names.len()`.
    pub fn from_law(
        name: impl Into<String>,
        names: Vec<String>,
        law: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = names.len();
        let table = (0..n)
            .map(|i| (0..n).map(|j| law(i, j) as u32).collect())
            .collect();
        FiniteTable::new(name, names, table)
    }

    /// Parses the text table format: `#` comments, a header line of element
    /// names, then one row of product names per element.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(Error::MalformedTable {
            line: 0,
            message: "missing header line".into(),
        })?;
        let names: Vec<String> = header.split_whitespace().map(str::to_string).collect();
        let lookup: HashMap<&str, u32> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u32))
            .collect();
        if lookup.len() != names.len() {
            return Err(Error::MalformedTable {
                line: 1,
                message: "duplicate element names in header".into(),
            });
        }
        let mut table = Vec::with_capacity(names.len());
        for (lineno, line) in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    lookup.get(tok).copied().ok_or_else(|| Error::MalformedTable {
                        line: lineno,
                        message: format!("unknown element `{tok}`"),
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            if row.len() != names.len() {
                return Err(Error::MalformedTable {
                    line: lineno,
                    message: format!("expected {} entries, found {}", names.len(), row.len()),
                });
            }
            table.push(row);
        }
        if table.len() != names.len() {
            return Err(Error::MalformedTable {
                line: 0,
                message: format!("expected {} rows, found {}", names.len(), table.len()),
            });
        }
        FiniteTable::new(name, names, table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        FiniteTable::parse(format!("table:{}", path.display()), &text)
    }

    /// Renders the table in the text format accepted by [`FiniteTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.names.iter().map(|n| &**n).collect();
        writeln!(out, "{}", header.join(" ")).unwrap();
        for row in &self.table {
            let cells: Vec<&str> = row.iter().map(|&k| &*self.names[k as usize]).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn element(&self, i: usize) -> Element {
        Element::Table(Named {
            id: i as u32,
            name: self.names[i].clone(),
        })
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        match x {
            Element::Table(n) if (n.id as usize) < self.names.len() && self.names[n.id as usize] == n.name => {
                Some(n.id as usize)
            }
            _ => None,
        }
    }

    pub fn product_index(&self, i: usize, j: usize) -> usize {
        self.table[i][j] as usize
    }

    /// Direct product, element names `a:b`.
    pub fn direct_product(&self, other: &FiniteTable) -> Result<FiniteTable> {
        let m = other.len();
        let names = (0..self.len() * m)
            .map(|k| format!("{}:{}", self.names[k / m], other.names[k % m]))
            .collect();
        FiniteTable::from_law(format!("{}x{}", self.name, other.name), names, |x, y| {
            self.product_index(x / m, y / m) * m + other.product_index(x % m, y % m)
        })
    }

    /// Builds a table from any finite semigroup handle, preserving element
    /// display names.
    pub fn from_semigroup(s: &dyn Semigroup) -> Result<FiniteTable> {
        let elems = s.elements().ok_or_else(|| Error::CapabilityMissing {
            semigroup: s.name().to_string(),
            operation: "tabulation".into(),
        })?;
        let pos: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let names = elems.iter().map(|e| e.to_string()).collect();
        let mut table = Vec::with_capacity(elems.len());
        for a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for b in &elems {
                let p = s.law(a, b);
                let k = pos.get(&p).ok_or_else(|| Error::FalsifiedClaim {
                    claim: "closure".into(),
                    witness: format!("{a}*{b} = {p} leaves the carrier"),
                })?;
                row.push(*k as u32);
            }
            table.push(row);
        }
        FiniteTable::new(s.name(), names, table)
    }
}

impl Semigroup for FiniteTable {
    fn name(&self) -> &str {
        &self.name
    }

    fn contains(&self, x: &Element) -> bool {
        self.index_of(x).is_some()
    }

    fn law(&self, a: &Element, b: &Element) -> Element {
        let i = self.index_of(a).expect("left operand in carrier");
        let j = self.index_of(b).expect("right operand in carrier");
        self.element(self.product_index(i, j))
    }

    fn neutral(&self) -> Option<Element> {
        self.neutral.map(|e| self.element(e as usize))
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            finite_decomposition: FdStatus::Yes,
            decomposer: true,
            units_oracle: false,
        }
    }

    fn factor_pairs(&self, t: &Element) -> Option<Vec<(Element, Element)>> {
        let k = self.index_of(t)?;
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.product_index(i, j) == k {
                    out.push((self.element(i), self.element(j)));
                }
            }
        }
        Some(out)
    }

    fn elements(&self) -> Option<Vec<Element>> {
        Some((0..self.len()).map(|i| self.element(i)).collect())
    }

    fn ball(&self, _radius: usize) -> Vec<Element> {
        self.elements().unwrap_or_default()
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        self.index
            .get(s)
            .map(|&i| self.element(i as usize))
            .ok_or_else(|| Error::ElementNotInCarrier {
                semigroup: self.name.clone(),
                element: s.to_string(),
            })
    }
}
