//! Finite monoids given by a multiplication table.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A finite monoid `{t₁, …, tₙ}`; `table[i][j]` is the index of `tᵢ·tⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteMonoid {
    /// Checks the table shape, associativity over all `n³` triples and the
    /// identity laws.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::usage("a monoid needs at least one element"));
        }
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::usage(format!("duplicate monoid element `{e}`")));
            }
        }
        if identity >= n {
            return Err(Error::usage("identity index out of range"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::usage(format!("multiplication table must be {n}×{n}")));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::usage("multiplication table entry out of range"));
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::Precondition(format!(
                    "`{}` is not a two-sided identity (fails at `{}`)",
                    elements[identity], elements[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Precondition(format!(
                            "table is not associative: ({0}{1}){2} ≠ {0}({1}{2})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteMonoid {
            elements,
            table,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Parse the `.mon` format:
    ///
    /// ```text
    /// elements: 1,g
    /// identity: 1
    /// 1,g
    /// g,1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut elements: Option<Vec<String>> = None;
        let mut identity: Option<(usize, String)> = None;
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("elements:") {
                elements = Some(split(rest));
            } else if let Some(rest) = line.strip_prefix("identity:") {
                identity = Some((line_no, rest.trim().to_string()));
            } else {
                rows.push((line_no, split(line)));
            }
        }
        let elements = elements.ok_or_else(|| Error::Parse {
            source_name: None,
            line: None,
            message: "missing `elements:` line".into(),
        })?;
        let (id_line, id_name) = identity.ok_or_else(|| Error::Parse {
            source_name: None,
            line: None,
            message: "missing `identity:` line".into(),
        })?;
        let lookup = |line: usize, name: &str| {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::parse(line, format!("unknown monoid element `{name}`")))
        };
        let identity = lookup(id_line, &id_name)?;
        if rows.len() != elements.len() {
            return Err(Error::Parse {
                source_name: None,
                line: rows.last().map(|r| r.0),
                message: format!("expected {} table rows, found {}", elements.len(), rows.len()),
            });
        }
        let mut table = Vec::with_capacity(rows.len());
        for (line, row) in &rows {
            if row.len() != elements.len() {
                return Err(Error::parse(
                    *line,
                    format!("expected {} entries, found {}", elements.len(), row.len()),
                ));
            }
            table.push(row.iter().map(|n| lookup(*line, n)).collect::<Result<Vec<_>>>()?);
        }
        FiniteMonoid::new(elements, table, identity)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "elements: {}", self.elements.join(","));
        let _ = writeln!(out, "identity: {}", self.elements[self.identity]);
        for row in &self.table {
            let names: Vec<&str> = row.iter().map(|&v| self.elements[v].as_str()).collect();
            let _ = writeln!(out, "{}", names.join(","));
        }
        out
    }
}

fn split(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}
