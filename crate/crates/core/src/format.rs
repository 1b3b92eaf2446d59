//! Text formats.
//!
//! Automata are written as
//!
//! ```text
//! states: σ,e
//! alphabet: 0,1
//! σ , 0 -> e , 1
//! σ , 1 -> σ , 0
//! e , 0 -> e , 0
//! e , 1 -> e , 1
//! ```
//!
//! with one transition per `(state, symbol)` pair. An optional
//! `initial: name` line turns the document into an initial transducer, and
//! lines starting with `@` carry construction annotations that plain
//! automaton readers skip.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::automaton::{Automaton, AutomatonDraft, DraftTransition};
use crate::error::{Error, Result};

/// Annotation attached to one symbol of a constructed automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolAnnotation {
    pub name: String,
    pub kind: String,
    pub payload: Vec<String>,
}

/// Annotation attached to one state of a constructed automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateAnnotation {
    pub name: String,
    pub role: String,
    pub payload: Vec<String>,
}

/// The `@` sidecar block written after a constructed automaton.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Annotations {
    pub construction: Option<String>,
    pub generators: Vec<String>,
    pub symbols: Vec<SymbolAnnotation>,
    pub states: Vec<StateAnnotation>,
    pub notes: BTreeMap<String, String>,
}

impl Annotations {
    pub fn is_empty(&self) -> bool {
        self == &Annotations::default()
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes.get(key).map(String::as_str)
    }

    /// Names of states annotated with `role`, in annotation order.
    pub fn states_with_role(&self, role: &str) -> Vec<&str> {
        self.states
            .iter()
            .filter(|s| s.role == role)
            .map(|s| s.name.as_str())
            .collect()
    }

    pub fn symbols_of_kind(&self, kind: &str) -> Vec<&str> {
        self.symbols
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.name.as_str())
            .collect()
    }

    fn write(&self, out: &mut String) {
        if let Some(c) = &self.construction {
            let _ = writeln!(out, "@construction: {c}");
        }
        if !self.generators.is_empty() {
            let _ = writeln!(out, "@generators: {}", self.generators.join(","));
        }
        for s in &self.symbols {
            let _ = writeln!(out, "{}", spaced("@symbol:", &s.name, &s.kind, &s.payload));
        }
        for s in &self.states {
            let _ = writeln!(out, "{}", spaced("@state:", &s.name, &s.role, &s.payload));
        }
        for (k, v) in &self.notes {
            let _ = writeln!(out, "@note: {k} {v}");
        }
    }

    fn parse_line(&mut self, line_no: usize, body: &str) -> Result<()> {
        let (key, rest) = body
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, format!("malformed annotation `@{body}`")))?;
        let rest = rest.trim();
        let mut fields = rest.split_whitespace().map(str::to_string);
        match key.trim() {
            "construction" => self.construction = Some(rest.to_string()),
            "generators" => self.generators = split_names(rest),
            "symbol" | "state" => {
                let name = fields.next();
                let tag = fields.next();
                let (Some(name), Some(tag)) = (name, tag) else {
                    return Err(Error::parse(line_no, format!("annotation `@{body}` needs a name and a tag")));
                };
                let payload = fields.collect();
                if key.trim() == "symbol" {
                    self.symbols.push(SymbolAnnotation { name, kind: tag, payload });
                } else {
                    self.states.push(StateAnnotation { name, role: tag, payload });
                }
            }
            "note" => {
                let (k, v) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                self.notes.insert(k.to_string(), v.trim().to_string());
            }
            other => {
                return Err(Error::parse(line_no, format!("unknown annotation `@{other}`")));
            }
        }
        Ok(())
    }
}

fn spaced(prefix: &str, name: &str, tag: &str, payload: &[String]) -> String {
    let mut s = format!("{prefix} {name} {tag}");
    for p in payload {
        s.push(' ');
        s.push_str(p);
    }
    s
}

/// A parsed automaton document before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub draft: AutomatonDraft,
    pub initial: Option<String>,
    pub annotations: Annotations,
}

fn split_names(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut saw_states = false;
    let mut saw_alphabet = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(body) = line.strip_prefix('@') {
            doc.annotations.parse_line(line_no, body)?;
        } else if let Some(rest) = line.strip_prefix("states:") {
            if saw_states {
                return Err(Error::parse(line_no, "second `states:` section"));
            }
            saw_states = true;
            doc.draft.states = split_names(rest);
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            if saw_alphabet {
                return Err(Error::parse(line_no, "second `alphabet:` section"));
            }
            saw_alphabet = true;
            doc.draft.alphabet = split_names(rest);
        } else if let Some(rest) = line.strip_prefix("initial:") {
            doc.initial = Some(rest.trim().to_string());
        } else if let Some((lhs, rhs)) = line.split_once("->") {
            let pair = |side: &str| -> Result<(String, String)> {
                let (a, b) = side.split_once(',').ok_or_else(|| {
                    Error::parse(line_no, format!("expected `state , symbol`, found `{}`", side.trim()))
                })?;
                let (a, b) = (a.trim(), b.trim());
                if a.is_empty() || b.is_empty() || b.contains(',') {
                    return Err(Error::parse(line_no, format!("malformed pair `{}`", side.trim())));
                }
                Ok((a.to_string(), b.to_string()))
            };
            let (from, input) = pair(lhs)?;
            let (to, output) = pair(rhs)?;
            doc.draft.transitions.push(DraftTransition {
                from,
                input,
                to,
                output,
                line: Some(line_no),
            });
        } else {
            return Err(Error::parse(line_no, format!("unrecognised line `{line}`")));
        }
    }
    if !saw_states {
        return Err(Error::Parse {
            source_name: None,
            line: None,
            message: "missing `states:` section".into(),
        });
    }
    if !saw_alphabet {
        return Err(Error::Parse {
            source_name: None,
            line: None,
            message: "missing `alphabet:` section".into(),
        });
    }
    Ok(doc)
}

/// Parse and validate an automaton, ignoring `initial:` and annotations.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    parse_document(text)?.draft.build()
}

pub fn write_automaton(aut: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", aut.states().join(","));
    let _ = writeln!(out, "alphabet: {}", aut.alphabet().join(","));
    for q in 0..aut.num_states() {
        for x in 0..aut.num_symbols() {
            let (r, y) = aut.delta(q, x);
            let _ = writeln!(
                out,
                "{} , {} -> {} , {}",
                aut.states()[q],
                aut.alphabet()[x],
                aut.states()[r],
                aut.alphabet()[y]
            );
        }
    }
    out
}

/// An automaton followed by its sidecar annotation block.
pub fn write_annotated(aut: &Automaton, annotations: &Annotations) -> String {
    let mut out = write_automaton(aut);
    annotations.write(&mut out);
    out
}

/// An automaton with a designated initial state.
pub fn write_initial(aut: &Automaton, initial: usize) -> String {
    let mut out = write_automaton(aut);
    let _ = writeln!(out, "initial: {}", aut.states()[initial]);
    out
}
