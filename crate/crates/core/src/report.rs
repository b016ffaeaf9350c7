//! Line-oriented check reports shared by every checker.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Checked only on a bounded approximation.
    Approx,
    /// Not applicable to the input.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Approx => "APPROX",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, detail: Option<String>) {
        self.entries.push(Entry {
            name: name.into(),
            status,
            detail,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Status::Pass, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Fail, Some(witness.into()));
    }

    /// Records a pass when `witness` is `None`, a failure otherwise.
    pub fn check(&mut self, name: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// No entry failed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "# {}", self.title)?;
        }
        for e in &self.entries {
            write!(f, "{} {}", e.status, e.name)?;
            if let Some(d) = &e.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
