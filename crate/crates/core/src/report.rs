use std::fmt;

/// Outcome of a bounded or exhaustive verification sweep.
///
/// A report never claims more than it checked: `cases` counts the
/// individual assertions made and `bound` names the radius of the sweep
/// (`None` when the sweep was exhaustive over finite data).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub bound: Option<usize>,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

/// Failures kept per report; the count of cases keeps growing past this.
const MAX_FAILURES: usize = 20;

impl CheckReport {
    pub fn new(name: impl Into<String>, bound: Option<usize>) -> Self {
        CheckReport {
            name: name.into(),
            bound,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one case; `witness` is evaluated only on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(witness());
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.cases += 1;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(witness.into());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.cases += other.cases;
        for f in other.failures {
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
        self.notes
            .extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.name)));
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let scope = match self.bound {
            Some(b) => format!("bound {b}"),
            None => "exhaustive".to_string(),
        };
        write!(f, "{verdict} {} ({scope}, {} cases)", self.name, self.cases)?;
        if self.cases == 0 {
            write!(f, " [warning: 0 cases]")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        for w in &self.failures {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}
