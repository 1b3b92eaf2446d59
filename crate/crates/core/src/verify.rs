//! Property suites over constructed automata.
//!
//! Each suite returns a [`Report`] with one line per check; the command line
//! tool prints it and exits nonzero when any check fails.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use crate::automaton::{Automaton, Word};
use crate::constructions::{
    reindex_tuple, wreath_initial_symbol, wreath_subsemigroup, ConstructionOutput, Phase,
    StateRole,
};
use crate::element::{compose, restrict, Element};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::oracles::{check_xw_yw, wreath_value};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported for information, never fails the suite.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
            }
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "{}: {verdict}", self.suite)
    }
}

/// Every word of length `1..=max_len` over `gens` with its element, built by
/// extending prefixes.
pub fn words_with_elements(
    aut: &Automaton,
    gens: &[usize],
    max_len: usize,
) -> Result<Vec<(Word, Element)>> {
    let singles: Vec<Element> = gens.iter().map(|&q| Element::of_state(aut, q)).collect();
    let mut level: Vec<(Word, Element)> = gens
        .iter()
        .zip(&singles)
        .map(|(&q, e)| (Word::single(q), e.clone()))
        .collect();
    let mut all = level.clone();
    for _ in 1..max_len {
        let mut next = Vec::with_capacity(level.len() * gens.len());
        for (w, e) in &level {
            for (&q, g) in gens.iter().zip(&singles) {
                next.push((w.push(q), compose(e, g)?));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

/// Whether two labellings of the same items induce the same equivalence.
/// Returns the class counts `(left, right, joint)`; the partitions agree iff
/// all three are equal.
pub fn partition_counts<A: Hash + Eq, B: Hash + Eq>(pairs: &[(A, B)]) -> (usize, usize, usize) {
    let a: HashSet<&A> = pairs.iter().map(|p| &p.0).collect();
    let b: HashSet<&B> = pairs.iter().map(|p| &p.1).collect();
    let ab: HashSet<(&A, &B)> = pairs.iter().map(|p| (&p.0, &p.1)).collect();
    (a.len(), b.len(), ab.len())
}

fn same_partition(counts: (usize, usize, usize)) -> bool {
    counts.0 == counts.1 && counts.1 == counts.2
}

/// `l` is idempotent and fixes every state in `scope` by left
/// multiplication. For a plain automaton `scope` is all states; for a free
/// product it is the states of `l`'s own factor.
pub fn left_identity(aut: &Automaton, l: usize, scope: &[usize]) -> Result<Report> {
    let mut r = Report::new("left-identity");
    aut.check_word(&Word::single(l))?;
    let name = &aut.states()[l];
    let el = Element::of_state(aut, l);
    let mut bad = Vec::new();
    for &q in scope {
        let eq = Element::of_state(aut, q);
        if compose(&el, &eq)? != eq {
            bad.push(aut.states()[q].clone());
        }
    }
    r.check(
        format!("{name}·q = q for {} states", scope.len()),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("fails for {}", bad.join(" ")) },
    );
    r.check(format!("{name}·{name} = {name}"), compose(&el, &el)? == el, "");
    Ok(r)
}

/// States sharing `l`'s factor in a free-product construction.
pub fn factor_of(out: &ConstructionOutput, l: usize) -> Vec<usize> {
    let left = matches!(out.roles[l], StateRole::Left(_));
    let right = matches!(out.roles[l], StateRole::Right(_));
    if !left && !right {
        return (0..out.automaton.num_states()).collect();
    }
    out.states_where(|role| {
        (left && matches!(role, StateRole::Left(_))) || (right && matches!(role, StateRole::Right(_)))
    })
}

/// Every state fixes every symbol in `marked` and stays put.
pub fn marked_absorption(aut: &Automaton, marked: &[usize]) -> Report {
    let mut r = Report::new("marked-absorption");
    let mut bad = Vec::new();
    for q in 0..aut.num_states() {
        for &x in marked {
            if aut.delta(q, x) != (q, x) {
                bad.push(format!("({} , {})", aut.states()[q], aut.alphabet()[x]));
            }
        }
    }
    r.check(
        format!("{} states × {} marked symbols", aut.num_states(), marked.len()),
        bad.is_empty(),
        bad.join(" "),
    );
    r
}

/// Marked symbols of a free-product construction.
pub fn marked_symbols(out: &ConstructionOutput) -> Vec<usize> {
    out.tagged_alphabet
        .iter()
        .enumerate()
        .filter(|(_, t)| t.kind.is_marked())
        .map(|(i, _)| i)
        .collect()
}

/// Words over one factor's states are equal in the construction iff they are
/// equal in that factor.
pub fn factor_embedding(
    out: &ConstructionOutput,
    left: &Automaton,
    right: &Automaton,
    max_len: usize,
) -> Result<Report> {
    let mut r = Report::new("factor-embedding");
    for (side, factor) in [("left", left), ("right", right)] {
        let pairs: Vec<(usize, usize)> = out
            .roles
            .iter()
            .enumerate()
            .filter_map(|(q, role)| match (side, role) {
                ("left", StateRole::Left(i)) | ("right", StateRole::Right(i)) => Some((q, *i)),
                _ => None,
            })
            .collect();
        if pairs.iter().any(|&(_, i)| i >= factor.num_states()) || pairs.len() != factor.num_states() {
            return Err(Error::usage(format!(
                "{side} factor does not match the construction's {side} states"
            )));
        }
        let in_out = words_with_elements(
            &out.automaton,
            &pairs.iter().map(|p| p.0).collect::<Vec<_>>(),
            max_len,
        )?;
        let in_factor = words_with_elements(factor, &pairs.iter().map(|p| p.1).collect::<Vec<_>>(), max_len)?;
        let joint: Vec<(Element, Element)> = in_out
            .into_iter()
            .zip(in_factor)
            .map(|((_, a), (_, b))| (a, b))
            .collect();
        let counts = partition_counts(&joint);
        r.check(
            format!("{side} factor words ≤ {max_len}"),
            same_partition(counts),
            format!(
                "{} words, {} classes in construction, {} in factor",
                joint.len(),
                counts.0,
                counts.1
            ),
        );
    }
    Ok(r)
}

/// `x_w` and `y_w` against their case formulas for every word over the factor
/// states of length at most `2·max_k + 1`.
pub fn xw_yw(out: &ConstructionOutput, max_k: usize) -> Result<Report> {
    let mut r = Report::new("xw-yw");
    let gens: Vec<usize> = out
        .designated_generators
        .iter()
        .copied()
        .filter(|&q| matches!(out.roles[q], StateRole::Left(_) | StateRole::Right(_)))
        .collect();
    if gens.is_empty() {
        return Err(Error::usage("no factor states to build words from"));
    }
    let max_len = 2 * max_k + 1;
    let mut level: Vec<Word> = gens.iter().map(|&q| Word::single(q)).collect();
    for len in 1..=max_len {
        let mut failures = Vec::new();
        for w in &level {
            let rep = check_xw_yw(out, w, max_k)?;
            if !rep.passed() {
                failures.push(out.automaton.format_word(w));
            }
        }
        r.check(
            format!("words of length {len}"),
            failures.is_empty(),
            if failures.is_empty() {
                format!("{} words", level.len())
            } else {
                format!("mismatch for {}", failures.join(" | "))
            },
        );
        if len < max_len {
            level = level
                .iter()
                .flat_map(|w| gens.iter().map(move |&q| w.push(q)))
                .collect();
        }
    }
    Ok(r)
}

/// Equality in the wreath subsemigroup automaton against wreath arithmetic,
/// plus the single-state action laws of the construction.
pub fn wreath_oracle(
    base: &Automaton,
    monoid: &FiniteMonoid,
    max_len: usize,
    limits: &Limits,
) -> Result<Report> {
    let mut r = Report::new("wreath-oracle");
    let out = wreath_subsemigroup(base, monoid, limits)?;
    let aut = &out.automaton;
    let words = words_with_elements(aut, &out.designated_generators, max_len)?;
    let joint = words
        .iter()
        .map(|(w, e)| Ok((e.clone(), wreath_value(&out, base, w)?)))
        .collect::<Result<Vec<_>>>()?;
    let counts = partition_counts(&joint);
    r.check(
        format!("equality of generator words ≤ {max_len}"),
        same_partition(counts),
        format!(
            "{} words, {} automaton classes, {} wreath classes",
            joint.len(),
            counts.0,
            counts.1
        ),
    );

    let n = monoid.len();
    let tuple_syms: Vec<usize> = (0..aut.num_symbols())
        .filter(|&x| !aut.alphabet()[x].starts_with("b:"))
        .collect();
    let b_sym = |b: usize| tuple_syms.len() + b;
    let tops = out.states_where(|role| matches!(role, StateRole::Top(_)));
    let strings = strings_up_to(&tuple_syms, 3);

    // bα·t = (bt)α
    let mut bad = 0usize;
    let mut total = 0usize;
    for &tq in &tops {
        let StateRole::Top(t) = out.roles[tq] else { unreachable!() };
        for b in 0..n {
            for alpha in &strings {
                let mut input = vec![b_sym(b)];
                input.extend(alpha);
                let mut expect = vec![b_sym(monoid.mul(b, t))];
                expect.extend(alpha);
                total += 1;
                if aut.act(&Word::single(tq), &input)? != expect {
                    bad += 1;
                }
            }
        }
    }
    r.check("bα·t = (bt)α", bad == 0, format!("{total} cases, {bad} mismatches"));

    // bα·s = b(α·sᵇ)
    let (mut bad, mut total) = (0usize, 0usize);
    for q in out.states_where(|role| matches!(role, StateRole::Tuple(t) if t.phase == Phase::Pre)) {
        let StateRole::Tuple(s) = &out.roles[q] else { unreachable!() };
        for b in 0..n {
            let sb = reindex_tuple(s, b, monoid);
            let post = out
                .roles
                .iter()
                .position(|role| *role == StateRole::Tuple(crate::constructions::TupleState {
                    entries: sb.entries.clone(),
                    phase: Phase::Post,
                }))
                .expect("every tuple has a post copy");
            for alpha in &strings {
                let mut input = vec![b_sym(b)];
                input.extend(alpha);
                let mut expect = vec![b_sym(b)];
                expect.extend(aut.transduce(post, alpha));
                // the post copy must itself act componentwise
                let componentwise = componentwise_act(base, &sb.entries, aut, alpha);
                total += 1;
                if aut.act(&Word::single(q), &input)? != expect || expect[1..] != componentwise[..] {
                    bad += 1;
                }
            }
        }
    }
    r.check("bα·s = b(α·sᵇ)", bad == 0, format!("{total} cases, {bad} mismatches"));

    // pre tuples fix Aⁿ symbols; T states fall to the identity after one b
    let pre = out.states_where(|role| matches!(role, StateRole::Tuple(t) if t.phase == Phase::Pre));
    let fixes = pre
        .iter()
        .all(|&q| tuple_syms.iter().all(|&x| aut.delta(q, x) == (q, x)));
    r.check("phase-pre tuples fix tuple symbols", fixes, "");
    let after_b = tops.iter().all(|&tq| {
        (0..n).all(|b| Element::of_state(aut, aut.delta(tq, b_sym(b)).0).is_identity())
    });
    r.check("T states act as the identity after a monoid symbol", after_b, "");
    Ok(r)
}

fn strings_up_to(symbols: &[usize], max_len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|s: &Vec<usize>| {
                symbols.iter().map(move |&x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

/// Act on a string of tuple symbols by running `states[i]` of `base` on the
/// `i`-th components.
fn componentwise_act(base: &Automaton, states: &[usize], aut: &Automaton, alpha: &[usize]) -> Vec<usize> {
    let n = states.len();
    let parse = |x: usize| -> Vec<usize> {
        let name = &aut.alphabet()[x];
        name.trim_start_matches('(')
            .trim_end_matches(')')
            .split(';')
            .map(|c| base.symbol_index(c).expect("tuple components are base symbols"))
            .collect()
    };
    let columns: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let col: Vec<usize> = alpha.iter().map(|&x| parse(x)[i]).collect();
            base.transduce(states[i], &col)
        })
        .collect();
    (0..alpha.len())
        .map(|pos| {
            let parts: Vec<&str> = (0..n).map(|i| base.alphabet()[columns[i][pos]].as_str()).collect();
            aut.symbol_index(&format!("({})", parts.join(";")))
                .expect("tuple symbol exists")
        })
        .collect()
}

/// Restricted equality on `B·(Aⁿ)*` in the initial-symbol automaton against
/// wreath arithmetic. Unrestricted equality is reported, not asserted.
pub fn initial_symbol_oracle(
    base: &Automaton,
    monoid: &FiniteMonoid,
    max_len: usize,
    limits: &Limits,
) -> Result<Report> {
    let mut r = Report::new("initial-symbol-oracle");
    let built = wreath_initial_symbol(base, monoid, limits)?;
    let out = &built.output;
    let words = words_with_elements(&out.automaton, &out.designated_generators, max_len)?;
    let mut restricted = Vec::with_capacity(words.len());
    let mut unrestricted = Vec::with_capacity(words.len());
    for (w, e) in &words {
        let value = wreath_value(out, base, w)?;
        restricted.push((restrict(e, &built.initial_symbols, &built.later_symbols)?, value.clone()));
        unrestricted.push((e.clone(), value));
    }
    let counts = partition_counts(&restricted);
    r.check(
        format!("restricted equality of generator words ≤ {max_len}"),
        same_partition(counts),
        format!(
            "{} words, {} restricted classes, {} wreath classes",
            restricted.len(),
            counts.0,
            counts.1
        ),
    );
    let (u, _, joint) = partition_counts(&unrestricted);
    // joint == u: each automaton class lies inside one wreath class
    let relation = if joint == u && joint == counts.1 {
        "same as the wreath product"
    } else if joint == u {
        "finer than the wreath product"
    } else if joint == counts.1 {
        "coarser than the wreath product"
    } else {
        "incomparable with the wreath product"
    };
    r.info(
        "unrestricted equality",
        format!("{u} classes, {relation}"),
    );
    Ok(r)
}
