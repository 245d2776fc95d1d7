//! Machine-parsable check report lines: `CHECK <name> k=<k> [params] PASS|FAIL`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub k: usize,
    pub params: Vec<(String, String)>,
    pub pass: bool,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, k: usize, pass: bool) -> Self {
        CheckLine {
            name: name.into(),
            k,
            params: Vec::new(),
            pass,
        }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} k={}", self.name, self.k)?;
        for (key, value) in &self.params {
            write!(f, " {key}={value}")?;
        }
        f.write_str(if self.pass { " PASS" } else { " FAIL" })
    }
}
