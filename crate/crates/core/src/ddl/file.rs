//! Text descriptions of finite systems.
//!
//! ```text
//! # labels with their component semigroups
//! label a zadd-2
//! label b table:z4.table
//! # order pairs `lower upper`; joins are computed from the order
//! order a b
//! # or give the full join table instead
//! # join a b b
//! # transition tables, source label first
//! morphism a b 0->0 1->2
//! ```
//!
//! Missing transitions between comparable labels are filled in by
//! composing tabulated ones. `table:` paths are relative to the file.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use super::{DdlSystem, FiniteSemilattice};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{builtin, SemigroupHandle};

type Table = BTreeMap<Element, Element>;

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedDdl {
        line,
        message: message.into(),
    }
}

/// Parses a description; `base` resolves relative `table:` paths.
pub fn parse_ddl(name: &str, text: &str, base: Option<&Path>) -> Result<DdlSystem> {
    let mut names: Vec<String> = Vec::new();
    let mut comps: Vec<SemigroupHandle> = Vec::new();
    let mut order = Vec::new();
    let mut joins = Vec::new();
    let mut maps: Vec<(usize, usize, usize, Vec<(String, String)>)> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let label = |w: &str| ids.get(w).copied().ok_or_else(|| bad(line, format!("unknown label `{w}`")));
        match words[0] {
            "label" => {
                let [_, l, spec] = words[..] else {
                    return Err(bad(line, "expected `label <name> <semigroup>`"));
                };
                if ids.contains_key(l) {
                    return Err(bad(line, format!("label `{l}` declared twice")));
                }
                let spec = match (spec.strip_prefix("table:"), base) {
                    (Some(p), Some(dir)) if Path::new(p).is_relative() => {
                        format!("table:{}", dir.join(p).display())
                    }
                    _ => spec.to_string(),
                };
                let handle = builtin(&spec).map_err(|e| bad(line, e.to_string()))?;
                if handle.elements().is_none() {
                    return Err(bad(line, format!("component `{spec}` is not finite")));
                }
                ids.insert(l.to_string(), names.len());
                names.push(l.to_string());
                comps.push(handle);
            }
            "order" => {
                let [_, a, b] = words[..] else {
                    return Err(bad(line, "expected `order <lower> <upper>`"));
                };
                order.push((label(a)?, label(b)?));
            }
            "join" => {
                let [_, a, b, c] = words[..] else {
                    return Err(bad(line, "expected `join <a> <b> <a v b>`"));
                };
                joins.push((label(a)?, label(b)?, label(c)?));
            }
            "morphism" => {
                if words.len() < 3 {
                    return Err(bad(line, "expected `morphism <from> <to> x->y ...`"));
                }
                let (from, to) = (label(words[1])?, label(words[2])?);
                let mut pairs = Vec::new();
                for w in &words[3..] {
                    let (x, y) = w.split_once("->").ok_or_else(|| bad(line, format!("expected `x->y`, got `{w}`")))?;
                    pairs.push((x.to_string(), y.to_string()));
                }
                maps.push((line, from, to, pairs));
            }
            other => return Err(bad(line, format!("unknown directive `{other}`"))),
        }
    }
    if names.is_empty() {
        return Err(bad(0, "no labels"));
    }

    let index = if joins.is_empty() {
        FiniteSemilattice::from_order(names.clone(), &order)?
    } else {
        let n = names.len();
        let mut table = vec![vec![None; n]; n];
        for &(a, b, c) in &joins {
            table[a][b] = Some(c as u32);
            table[b][a] = Some(c as u32);
        }
        for (a, row) in table.iter_mut().enumerate() {
            row[a].get_or_insert(a as u32);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(a, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(b, c)| c.ok_or_else(|| bad(0, format!("join of `{}` and `{}` missing", names[a], names[b]))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let s = FiniteSemilattice::from_join_table(names.clone(), table)?;
        for &(a, b) in &order {
            if !crate::ddl::IndexSemilattice::leq(&s, &s.label(a), &s.label(b)) {
                return Err(bad(0, format!("order `{} {}` contradicts the join table", names[a], names[b])));
            }
        }
        s
    };

    let mut morphisms: BTreeMap<(u32, u32), Table> = BTreeMap::new();
    for (line, from, to, pairs) in maps {
        let mut t = Table::new();
        for (x, y) in pairs {
            let x = comps[from].parse_element(&x).map_err(|e| bad(line, e.to_string()))?;
            let y = comps[to].parse_element(&y).map_err(|e| bad(line, e.to_string()))?;
            if t.insert(x.clone(), y).is_some() {
                return Err(bad(line, format!("`{x}` mapped twice")));
            }
        }
        let total = comps[from].elements().expect("finite").len();
        if t.len() != total {
            return Err(bad(line, format!("morphism covers {} of {total} elements", t.len())));
        }
        if morphisms.insert((to as u32, from as u32), t).is_some() {
            return Err(bad(line, "morphism given twice"));
        }
    }
    complete_by_composition(&index, &mut morphisms);
    DdlSystem::finite(name, index, comps, morphisms)
}

fn complete_by_composition(index: &FiniteSemilattice, morphisms: &mut BTreeMap<(u32, u32), Table>) {
    let n = index.len() as u32;
    loop {
        let mut added = false;
        for a in 0..n {
            for c in 0..n {
                if a == c || morphisms.contains_key(&(a, c)) {
                    continue;
                }
                let via = (0..n).find_map(|b| {
                    let outer = morphisms.get(&(a, b))?;
                    let inner = morphisms.get(&(b, c))?;
                    inner
                        .iter()
                        .map(|(x, y)| Some((x.clone(), outer.get(y)?.clone())))
                        .collect::<Option<Table>>()
                });
                if let Some(t) = via {
                    morphisms.insert((a, c), t);
                    added = true;
                }
            }
        }
        if !added {
            return;
        }
    }
}

/// Reads a description file; the system is named after the file stem.
pub fn load_ddl(path: &Path) -> Result<DdlSystem> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("ddl");
    parse_ddl(name, &text, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddl::{ddl_mul, validate_system};

    const CHAIN: &str = "\
label a zadd-2
label b zadd-4
label c zadd-2
order a b
order b c
morphism a b 0->0 1->2
morphism b c 0->0 1->1 2->0 3->1
";

    #[test]
    fn chain_file_matches_fixture() {
        let sys = parse_ddl("chain", CHAIN, None).unwrap();
        assert!(validate_system(&sys, 0).passed());
        let x = sys.parse_element("(a|1)").unwrap();
        let y = sys.parse_element("(c|1)").unwrap();
        // a -> c is the composite, which sends 1 to 0
        assert_eq!(ddl_mul(&sys, &x, &y).unwrap(), sys.parse_element("(c|1)").unwrap());
        assert_eq!(ddl_mul(&sys, &x, &x).unwrap(), sys.parse_element("(a|0)").unwrap());
    }

    #[test]
    fn join_table_form() {
        let text = "label p zmul-2\nlabel q zmul-2\njoin p q q\nmorphism p q 0->0 1->1\n";
        let sys = parse_ddl("j", text, None).unwrap();
        assert!(validate_system(&sys, 0).passed());
    }

    #[test]
    fn malformed_lines_are_located() {
        for (text, line) in [
            ("label a zadd-2\nfrobnicate\n", 2),
            ("label a zadd-2\norder a z\n", 2),
            ("label a zadd-2\nlabel b zadd-2\norder a b\nmorphism a b 0->0\n", 4),
            ("label a nat-plus\n", 1),
        ] {
            match parse_ddl("bad", text, None) {
                Err(Error::MalformedDdl { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
