//! Synchronous Mealy automata and their action on finite strings.
//!
//! An [`Automaton`] is a triple of states, symbols and a total transition
//! function `(state, symbol) -> (state, symbol)`. Each state transduces
//! strings letter by letter; a [`Word`] of states acts by threading the output
//! of one state into the next. All of this happens on indices; names are only
//! consulted at the edges (parsing and printing).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Diagnostic, DiagnosticKind, Error, Result};
use crate::Limits;

/// A deterministic, letter-to-letter transducer without initial or final
/// states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automaton {
    states: Vec<String>,
    alphabet: Vec<String>,
    // table[q * |alphabet| + x] = (next state, output symbol)
    table: Vec<(usize, usize)>,
}

impl Automaton {
    /// Build an automaton from a row-major transition table.
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        table: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let mut diags = name_diagnostics(&states, &alphabet);
        let expected = states.len() * alphabet.len();
        if table.len() != expected {
            diags.push(Diagnostic {
                kind: DiagnosticKind::Totality,
                location: "transition table".into(),
                message: format!("expected {expected} entries, found {}", table.len()),
            });
        }
        for (i, &(r, y)) in table.iter().enumerate() {
            if r >= states.len() || y >= alphabet.len() {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::UnknownName,
                    location: format!("entry {i}"),
                    message: format!("target ({r}, {y}) out of range"),
                });
            }
        }
        if !diags.is_empty() {
            return Err(Error::Invalid(diags));
        }
        Ok(Automaton {
            states,
            alphabet,
            table,
        })
    }

    /// Build an automaton by evaluating `delta` on every `(state, symbol)` pair.
    pub fn from_fn<F>(states: Vec<String>, alphabet: Vec<String>, mut delta: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> (usize, usize),
    {
        let k = alphabet.len();
        let table = (0..states.len() * k)
            .map(|i| delta(i / k.max(1), i % k.max(1)))
            .collect();
        Automaton::new(states, alphabet, table)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// Look up a state by name, failing with a usage error.
    pub fn require_state(&self, name: &str) -> Result<usize> {
        self.state_index(name)
            .ok_or_else(|| Error::usage(format!("unknown state `{name}`")))
    }

    /// `δ(q, x)` for in-range indices. Panics otherwise; see [`Automaton::step`].
    #[inline]
    pub fn delta(&self, q: usize, x: usize) -> (usize, usize) {
        self.table[q * self.alphabet.len() + x]
    }

    /// `δ(q, x)`, with range checking.
    pub fn step(&self, q: usize, x: usize) -> Result<(usize, usize)> {
        if q >= self.num_states() {
            return Err(Error::usage(format!("state index {q} out of range")));
        }
        if x >= self.num_symbols() {
            return Err(Error::usage(format!("symbol index {x} out of range")));
        }
        Ok(self.delta(q, x))
    }

    /// Run a single state over `input`.
    pub fn transduce(&self, q: usize, input: &[usize]) -> Vec<usize> {
        let mut state = q;
        input
            .iter()
            .map(|&x| {
                let (next, y) = self.delta(state, x);
                state = next;
                y
            })
            .collect()
    }

    /// Action of a word: `(..((α·w₁)·w₂)..)·wₙ`.
    pub fn act(&self, word: &Word, input: &[usize]) -> Result<Vec<usize>> {
        self.check_word(word)?;
        self.check_symbols(input)?;
        let mut current = input.to_vec();
        for &q in word.states() {
            current = self.transduce(q, &current);
        }
        Ok(current)
    }

    /// The action of `word` on every string of length `depth`, listed in
    /// lexicographic order of the input.
    pub fn act_on_level(&self, word: &Word, depth: usize, limits: &Limits) -> Result<LevelAction> {
        self.check_word(word)?;
        let k = self.num_symbols();
        let count = level_size(k, depth, limits.max_level_entries)?;
        let mut outputs = Vec::with_capacity(count);
        let mut input = vec![0usize; depth];
        for _ in 0..count {
            outputs.push(self.act(word, &input)?);
            // odometer increment, last position least significant
            for pos in (0..depth).rev() {
                input[pos] += 1;
                if input[pos] < k {
                    break;
                }
                input[pos] = 0;
            }
        }
        Ok(LevelAction {
            depth,
            symbols: k,
            outputs,
        })
    }

    pub(crate) fn check_word(&self, word: &Word) -> Result<()> {
        match word.states().iter().find(|&&q| q >= self.num_states()) {
            Some(q) => Err(Error::usage(format!("state index {q} out of range"))),
            None => Ok(()),
        }
    }

    pub(crate) fn check_symbols(&self, input: &[usize]) -> Result<()> {
        match input.iter().find(|&&x| x >= self.num_symbols()) {
            Some(x) => Err(Error::usage(format!("symbol index {x} out of range"))),
            None => Ok(()),
        }
    }

    /// Parse a string over the alphabet.
    ///
    /// Comma separated input is split on commas; otherwise symbols are read by
    /// greedy longest match against the alphabet, so `"11"` and `"1,1"` are the
    /// same string over `{0, 1}`.
    pub fn parse_symbols(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains(',') {
            return text
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    self.symbol_index(tok)
                        .ok_or_else(|| Error::usage(format!("foreign symbol `{tok}`")))
                })
                .collect();
        }
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .alphabet
                .iter()
                .enumerate()
                .filter(|(_, name)| rest.starts_with(name.as_str()))
                .max_by_key(|(_, name)| name.len());
            match best {
                Some((idx, name)) => {
                    out.push(idx);
                    rest = &rest[name.len()..];
                }
                None => {
                    return Err(Error::usage(format!(
                        "foreign symbol at `{rest}` in input `{text}`"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Concatenate symbol names.
    pub fn format_symbols(&self, symbols: &[usize]) -> String {
        symbols.iter().map(|&x| self.alphabet[x].as_str()).collect()
    }

    pub fn format_word(&self, word: &Word) -> String {
        word.states()
            .iter()
            .map(|&q| self.states[q].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Number of strings on a tree level, subject to the `depth * |B|^depth`
/// entry bound.
pub(crate) fn level_size(symbols: usize, depth: usize, limit: u128) -> Result<usize> {
    let mut count: u128 = 1;
    for _ in 0..depth {
        count = count.saturating_mul(symbols as u128);
    }
    let entries = count.saturating_mul(depth as u128);
    if entries > limit {
        return Err(Error::Capacity {
            what: "level action table",
            requested: entries,
            limit,
        });
    }
    Ok(count as usize)
}

/// The action of a word on one level `Bⁿ` of the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAction {
    pub depth: usize,
    pub symbols: usize,
    /// `outputs[i]` is the image of the `i`-th string of length `depth` in
    /// lexicographic order.
    pub outputs: Vec<Vec<usize>>,
}

impl LevelAction {
    /// The `i`-th input string in lexicographic order.
    pub fn input(&self, mut i: usize) -> Vec<usize> {
        let mut v = vec![0; self.depth];
        for pos in (0..self.depth).rev() {
            v[pos] = i % self.symbols;
            i /= self.symbols;
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Vec<usize>)> {
        self.outputs
            .iter()
            .enumerate()
            .map(|(i, out)| (self.input(i), out))
    }
}

/// A nonempty sequence of state indices, an element of `Q⁺`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(aut: &Automaton, states: Vec<usize>) -> Result<Self> {
        let w = Word::from_indices(states)?;
        aut.check_word(&w)?;
        Ok(w)
    }

    /// A word without range checking against any automaton.
    pub fn from_indices(states: Vec<usize>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::usage("words must be nonempty"));
        }
        Ok(Word(states))
    }

    pub fn single(q: usize) -> Self {
        Word(vec![q])
    }

    /// Parse comma separated state names.
    pub fn parse(aut: &Automaton, text: &str) -> Result<Self> {
        let states = text
            .split(',')
            .map(|tok| tok.trim())
            .filter(|tok| !tok.is_empty())
            .map(|tok| aut.require_state(tok))
            .collect::<Result<Vec<_>>>()?;
        Word::from_indices(states)
    }

    pub fn states(&self) -> &[usize] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, q: usize) -> Word {
        let mut v = self.0.clone();
        v.push(q);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A name-level transition as written in a file, possibly ill-formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DraftTransition {
    pub from: String,
    pub input: String,
    pub to: String,
    pub output: String,
    pub line: Option<usize>,
}

/// An automaton description that has not been validated yet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AutomatonDraft {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<DraftTransition>,
}

impl AutomatonDraft {
    /// Every invariant violation, one diagnostic each. Empty iff
    /// [`AutomatonDraft::build`] succeeds.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = name_diagnostics(&self.states, &self.alphabet);
        let state_ix = first_index(&self.states);
        let sym_ix = first_index(&self.alphabet);
        let mut seen: HashMap<(usize, usize), Option<usize>> = HashMap::new();

        for t in &self.transitions {
            let loc = match t.line {
                Some(l) => format!("line {l}"),
                None => format!("transition {} , {}", t.from, t.input),
            };
            let mut ok = true;
            for (name, is_state) in [
                (&t.from, true),
                (&t.input, false),
                (&t.to, true),
                (&t.output, false),
            ] {
                let known = if is_state {
                    state_ix.contains_key(name.as_str())
                } else {
                    sym_ix.contains_key(name.as_str())
                };
                if !known {
                    ok = false;
                    diags.push(Diagnostic {
                        kind: DiagnosticKind::UnknownName,
                        location: loc.clone(),
                        message: format!(
                            "undeclared {} `{name}`",
                            if is_state { "state" } else { "symbol" }
                        ),
                    });
                }
            }
            if !ok {
                continue;
            }
            let key = (state_ix[t.from.as_str()], sym_ix[t.input.as_str()]);
            if let Some(prev) = seen.insert(key, t.line) {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::DuplicateTransition,
                    location: loc,
                    message: match prev {
                        Some(l) => format!("({} , {}) already defined on line {l}", t.from, t.input),
                        None => format!("({} , {}) defined twice", t.from, t.input),
                    },
                });
            }
        }

        for (qi, q) in self.states.iter().enumerate() {
            if state_ix.get(q.as_str()) != Some(&qi) {
                continue;
            }
            for (xi, x) in self.alphabet.iter().enumerate() {
                if sym_ix.get(x.as_str()) != Some(&xi) {
                    continue;
                }
                if !seen.contains_key(&(qi, xi)) {
                    diags.push(Diagnostic {
                        kind: DiagnosticKind::Totality,
                        location: format!("({q} , {x})"),
                        message: "no transition defined".into(),
                    });
                }
            }
        }
        diags
    }

    pub fn build(&self) -> Result<Automaton> {
        let diags = self.validate();
        if !diags.is_empty() {
            return Err(Error::Invalid(diags));
        }
        let state_ix = first_index(&self.states);
        let sym_ix = first_index(&self.alphabet);
        let k = self.alphabet.len();
        let mut table = vec![(0, 0); self.states.len() * k];
        for t in &self.transitions {
            let q = state_ix[t.from.as_str()];
            let x = sym_ix[t.input.as_str()];
            table[q * k + x] = (state_ix[t.to.as_str()], sym_ix[t.output.as_str()]);
        }
        Automaton::new(self.states.clone(), self.alphabet.clone(), table)
    }
}

impl From<&Automaton> for AutomatonDraft {
    fn from(aut: &Automaton) -> Self {
        let mut transitions = Vec::new();
        for q in 0..aut.num_states() {
            for x in 0..aut.num_symbols() {
                let (r, y) = aut.delta(q, x);
                transitions.push(DraftTransition {
                    from: aut.states[q].clone(),
                    input: aut.alphabet[x].clone(),
                    to: aut.states[r].clone(),
                    output: aut.alphabet[y].clone(),
                    line: None,
                });
            }
        }
        AutomatonDraft {
            states: aut.states.clone(),
            alphabet: aut.alphabet.clone(),
            transitions,
        }
    }
}

fn first_index(names: &[String]) -> BTreeMap<&str, usize> {
    let mut map = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        map.entry(n.as_str()).or_insert(i);
    }
    map
}

fn name_diagnostics(states: &[String], alphabet: &[String]) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if states.is_empty() {
        diags.push(Diagnostic {
            kind: DiagnosticKind::Empty,
            location: "states".into(),
            message: "an automaton needs at least one state".into(),
        });
    }
    if alphabet.is_empty() {
        diags.push(Diagnostic {
            kind: DiagnosticKind::Empty,
            location: "alphabet".into(),
            message: "an automaton needs at least one symbol".into(),
        });
    }
    for (what, names) in [("state", states), ("symbol", alphabet)] {
        let mut seen = HashSet::new();
        for n in names {
            if !seen.insert(n.as_str()) {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::NameCollision,
                    location: format!("{what} `{n}`"),
                    message: format!("{what} name declared more than once"),
                });
            }
            if n.is_empty() || n.contains(',') || n.contains(char::is_whitespace) || n.contains("->") {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::UnknownName,
                    location: format!("{what} `{n}`"),
                    message: "names must be nonempty and free of commas, whitespace and `->`".into(),
                });
            }
        }
    }
    diags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::adding_machine;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn adding_machine_steps() {
        let a = adding_machine();
        let sigma = a.state_index("σ").unwrap();
        let e = a.state_index("e").unwrap();
        assert_eq!(a.step(sigma, 1).unwrap(), (sigma, 0));
        assert_eq!(a.step(sigma, 0).unwrap(), (e, 1));
        assert_eq!(a.step(e, 0).unwrap(), (e, 0));
        assert!(matches!(a.step(7, 0), Err(Error::Usage(_))));
        assert!(matches!(a.step(0, 2), Err(Error::Usage(_))));
    }

    #[test]
    fn adding_machine_increments() {
        let a = adding_machine();
        let w = Word::parse(&a, "σ").unwrap();
        let input = a.parse_symbols("11").unwrap();
        assert_eq!(a.format_symbols(&a.act(&w, &input).unwrap()), "00");
        let id = Word::parse(&a, "e").unwrap();
        for s in ["", "0", "1011", "111000"] {
            let input = a.parse_symbols(s).unwrap();
            assert_eq!(a.act(&id, &input).unwrap(), input);
        }
    }

    #[test]
    fn foreign_symbols_rejected() {
        let a = adding_machine();
        assert!(matches!(a.parse_symbols("102"), Err(Error::Usage(_))));
        let w = Word::parse(&a, "σ").unwrap();
        assert!(matches!(a.act(&w, &[0, 5]), Err(Error::Usage(_))));
    }

    #[test]
    fn level_tables() {
        let a = adding_machine();
        let limits = Limits::default();
        let w = Word::parse(&a, "σ").unwrap();
        let zero = a.act_on_level(&w, 0, &limits).unwrap();
        assert_eq!(zero.outputs, vec![Vec::<usize>::new()]);

        let two = a.act_on_level(&w, 2, &limits).unwrap();
        let pairs: Vec<(String, String)> = two
            .iter()
            .map(|(i, o)| (a.format_symbols(&i), a.format_symbols(o)))
            .collect();
        let expect = [("00", "10"), ("01", "11"), ("10", "01"), ("11", "00")];
        assert_eq!(pairs.len(), 4);
        for (i, o) in expect {
            assert!(pairs.contains(&(i.to_string(), o.to_string())), "{i} -> {o}");
        }

        let id = Word::parse(&a, "e,e").unwrap();
        let t = a.act_on_level(&id, 2, &limits).unwrap();
        assert!(t.iter().all(|(i, o)| &i == o));
    }

    #[test]
    fn level_capacity() {
        let a = adding_machine();
        let w = Word::parse(&a, "σ").unwrap();
        let limits = Limits {
            max_level_entries: 100,
            ..Limits::default()
        };
        assert!(a.act_on_level(&w, 4, &limits).is_ok());
        assert!(matches!(
            a.act_on_level(&w, 5, &limits),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn draft_validation() {
        let full = AutomatonDraft::from(&adding_machine());
        assert!(full.validate().is_empty());

        let mut missing = full.clone();
        missing.transitions.pop();
        let d = missing.validate();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::Totality);

        let mut dup = full.clone();
        dup.states.push("e".into());
        let d = dup.validate();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::NameCollision);

        let mut twice = full.clone();
        let t = twice.transitions[0].clone();
        twice.transitions.push(t);
        let d = twice.validate();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::DuplicateTransition);

        let mut unknown = full;
        unknown.transitions[0].to = "zz".into();
        let d = unknown.validate();
        assert!(d.iter().any(|d| d.kind == DiagnosticKind::UnknownName));
    }

    #[test]
    fn new_rejects_bad_tables() {
        assert!(Automaton::new(names(&["a"]), names(&["x"]), vec![(1, 0)]).is_err());
        assert!(Automaton::new(names(&["a"]), names(&["x"]), vec![]).is_err());
        assert!(Automaton::new(names(&["a", "a"]), names(&["x"]), vec![(0, 0), (0, 0)]).is_err());
        assert!(Automaton::new(names(&["a"]), names(&["x"]), vec![(0, 0)]).is_ok());
    }

    #[test]
    fn greedy_tokenization() {
        let a = Automaton::from_fn(names(&["q"]), names(&["a", "a°", "$"]), |q, x| (q, x)).unwrap();
        assert_eq!(a.parse_symbols("a°a$").unwrap(), vec![1, 0, 2]);
        assert_eq!(a.parse_symbols("a, a°").unwrap(), vec![0, 1]);
    }
}
