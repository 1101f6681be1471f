use std::collections::BTreeSet;

use super::{find_neutral, Capabilities, FdStatus, Semigroup, SemigroupHandle};
use crate::element::Element;
use crate::error::{Error, Result};

/// A finite subset of a semigroup, closed under the parent law.
#[derive(Debug, Clone)]
pub struct Subsemigroup {
    name: String,
    parent: SemigroupHandle,
    members: Vec<Element>,
    set: BTreeSet<Element>,
    neutral: Option<Element>,
}

impl Subsemigroup {
    /// Fails with a closure witness when `members` is not closed.
    pub fn new(
        name: impl Into<String>,
        parent: SemigroupHandle,
        members: impl IntoIterator<Item = Element>,
    ) -> Result<Self> {
        let set: BTreeSet<Element> = members.into_iter().collect();
        let members: Vec<Element> = set.iter().cloned().collect();
        let name = name.into();
        for a in &members {
            if !parent.contains(a) {
                return Err(Error::ElementNotInCarrier {
                    semigroup: parent.name().to_string(),
                    element: a.to_string(),
                });
            }
        }
        for a in &members {
            for b in &members {
                let p = parent.law(a, b);
                if !set.contains(&p) {
                    return Err(Error::FalsifiedClaim {
                        claim: format!("`{name}` is closed"),
                        witness: format!("{a}*{b} = {p}"),
                    });
                }
            }
        }
        let neutral = find_neutral(&*parent, &members);
        Ok(Subsemigroup {
            name,
            parent,
            members,
            set,
            neutral,
        })
    }

    pub fn parent(&self) -> &SemigroupHandle {
        &self.parent
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Semigroup for Subsemigroup {
    fn name(&self) -> &str {
        &self.name
    }

    fn contains(&self, x: &Element) -> bool {
        self.set.contains(x)
    }

    fn law(&self, a: &Element, b: &Element) -> Element {
        self.parent.law(a, b)
    }

    fn neutral(&self) -> Option<Element> {
        self.neutral.clone()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            finite_decomposition: FdStatus::Yes,
            decomposer: true,
            units_oracle: false,
        }
    }

    fn factor_pairs(&self, t: &Element) -> Option<Vec<(Element, Element)>> {
        let mut out = Vec::new();
        for a in &self.members {
            for b in &self.members {
                if self.parent.law(a, b) == *t {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        Some(out)
    }

    fn elements(&self) -> Option<Vec<Element>> {
        Some(self.members.clone())
    }

    fn ball(&self, _radius: usize) -> Vec<Element> {
        self.members.clone()
    }

    fn parse_element(&self, s: &str) -> Result<Element> {
        let e = self.parent.parse_element(s)?;
        super::ensure_member(self, &e)?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{builtin, units};

    #[test]
    fn ideal_of_zmul4() {
        let z4 = builtin("zmul-4").unwrap();
        let evens: Vec<Element> = ["0", "2"].iter().map(|s| z4.parse_element(s).unwrap()).collect();
        let sub = Subsemigroup::new("evens", z4.clone(), evens).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(sub.neutral().is_none());
        assert!(units(&sub).unwrap().is_empty());
    }

    #[test]
    fn rejects_unclosed_subset() {
        let z4 = builtin("zadd-4").unwrap();
        let one = z4.parse_element("1").unwrap();
        assert!(matches!(
            Subsemigroup::new("bad", z4, [one]),
            Err(Error::FalsifiedClaim { .. })
        ));
    }
}
