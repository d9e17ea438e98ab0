//! Verification reports: one line per checked object plus a summary.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub object: String,
    /// `None` on success; otherwise the nonzero residue or failure message.
    pub residue: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residue.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn ok(&mut self, object: impl Into<String>) {
        self.record(object, None);
    }

    pub fn fail(&mut self, object: impl Into<String>, residue: impl Into<String>) {
        self.record(object, Some(residue.into()));
    }

    pub fn record(&mut self, object: impl Into<String>, residue: Option<String>) {
        self.checks.push(Check {
            object: object.into(),
            residue,
        });
    }

    /// Appends another report's checks, prefixing nothing.
    pub fn absorb(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn failed_count(&self) -> usize {
        self.failures().count()
    }

    pub fn summary(&self) -> String {
        let failed = self.failed_count();
        format!(
            "summary {}: checked={} passed={} failed={}",
            self.title,
            self.checks.len(),
            self.checks.len() - failed,
            failed
        )
    }

    /// Tab-separated rows `status<TAB>object<TAB>residue`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let (status, residue) = match &c.residue {
                None => ("OK", ""),
                Some(r) => ("FAIL", r.as_str()),
            };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", self.title, status, c.object, residue));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.residue {
                None => writeln!(f, "OK {}", c.object)?,
                Some(r) => writeln!(f, "FAIL {} residue={}", c.object, r)?,
            }
        }
        write!(f, "{}", self.summary())
    }
}
