//! Validation outcomes. Violated axioms are data, not failures: a validator
//! always returns, listing each broken law with a witness.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Short identifier of the broken law, e.g. `inv-src-rng-swap`.
    pub axiom: String,
    /// The witnessing element(s), rendered as text.
    pub witness: String,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, axiom: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation::new(axiom, witness));
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// True when some violation carries the given axiom tag.
    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}
