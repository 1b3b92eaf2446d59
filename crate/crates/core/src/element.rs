//! Semigroup elements as canonical transducers.
//!
//! The element represented by a word `w` is the initial transducer obtained by
//! composing the states of `w`. Trimming it to the reachable part, merging
//! behaviorally equal states and numbering states in breadth-first order gives
//! a canonical record, so two words are equal in the semigroup exactly when
//! their records are identical.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};
use crate::Limits;

/// An automaton together with a start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialTransducer {
    pub automaton: Automaton,
    pub initial: usize,
}

impl InitialTransducer {
    pub fn new(automaton: Automaton, initial: usize) -> Result<Self> {
        if initial >= automaton.num_states() {
            return Err(Error::usage(format!("initial state {initial} out of range")));
        }
        Ok(InitialTransducer { automaton, initial })
    }

    pub fn minimize(&self) -> Element {
        minimize(self)
    }
}

/// A canonical minimized transducer; state `0` is the initial state.
///
/// Equality of records is equality of actions on `B*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    symbols: usize,
    table: Vec<(u32, u32)>,
}

impl Element {
    /// The identity of `End B*` over `symbols` letters.
    pub fn identity(symbols: usize) -> Self {
        Element {
            symbols,
            table: (0..symbols as u32).map(|x| (0, x)).collect(),
        }
    }

    /// The element represented by a single state.
    pub fn of_state(aut: &Automaton, q: usize) -> Self {
        canonical_total(aut.num_states(), aut.num_symbols(), q, |s, x| aut.delta(s, x))
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn num_states(&self) -> usize {
        self.table.len().checked_div(self.symbols).unwrap_or(1)
    }

    #[inline]
    pub fn delta(&self, q: usize, x: usize) -> (usize, usize) {
        let (r, y) = self.table[q * self.symbols + x];
        (r as usize, y as usize)
    }

    pub fn is_identity(&self) -> bool {
        *self == Element::identity(self.symbols)
    }

    pub fn act(&self, input: &[usize]) -> Vec<usize> {
        let mut q = 0;
        input
            .iter()
            .map(|&x| {
                let (r, y) = self.delta(q, x);
                q = r;
                y
            })
            .collect()
    }

    /// Materialize as an automaton over `alphabet` with states `q0, q1, …`.
    pub fn to_transducer(&self, alphabet: &[String]) -> Result<InitialTransducer> {
        if alphabet.len() != self.symbols {
            return Err(Error::usage(format!(
                "element has {} symbols, alphabet has {}",
                self.symbols,
                alphabet.len()
            )));
        }
        let states = (0..self.num_states()).map(|i| format!("q{i}")).collect();
        let aut = Automaton::from_fn(states, alphabet.to_vec(), |q, x| self.delta(q, x))?;
        InitialTransducer::new(aut, 0)
    }

    /// Serialized form: the automaton text format plus `initial: q0`.
    /// Byte-identical output for equal elements over the same alphabet.
    pub fn to_text(&self, alphabet: &[String]) -> Result<String> {
        let t = self.to_transducer(alphabet)?;
        Ok(crate::format::write_initial(&t.automaton, t.initial))
    }
}

/// Minimal reachable quotient of a (possibly partial) transducer, renumbered
/// breadth-first from `initial`. Returns the state count and the row-major
/// table.
fn canonical_form<F>(n: usize, k: usize, initial: usize, row: F) -> (usize, Vec<Option<(u32, u32)>>)
where
    F: Fn(usize, usize) -> Option<(usize, usize)>,
{
    // reachable part, local numbering in discovery order
    let mut local = vec![usize::MAX; n];
    let mut order = vec![initial];
    local[initial] = 0;
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        for x in 0..k {
            if let Some((r, _)) = row(s, x) {
                if local[r] == usize::MAX {
                    local[r] = order.len();
                    order.push(r);
                }
            }
        }
        i += 1;
    }
    let m = order.len();
    let trans: Vec<Option<(usize, u32)>> = order
        .iter()
        .flat_map(|&s| (0..k).map(move |x| (s, x)))
        .map(|(s, x)| row(s, x).map(|(r, y)| (local[r], y as u32)))
        .collect();

    // initial partition by one-step output function
    let mut block = vec![0u32; m];
    let mut count = {
        let mut ids: HashMap<Vec<Option<u32>>, u32> = HashMap::new();
        for s in 0..m {
            let sig: Vec<Option<u32>> = trans[s * k..(s + 1) * k]
                .iter()
                .map(|t| t.map(|(_, y)| y))
                .collect();
            let next = ids.len() as u32;
            block[s] = *ids.entry(sig).or_insert(next);
        }
        ids.len()
    };

    // refine by successor blocks until the number of blocks stops growing
    loop {
        let mut ids: HashMap<(u32, Vec<Option<u32>>), u32> = HashMap::with_capacity(count * 2);
        let mut next_block = vec![0u32; m];
        for s in 0..m {
            let succ: Vec<Option<u32>> = trans[s * k..(s + 1) * k]
                .iter()
                .map(|t| t.map(|(r, _)| block[r]))
                .collect();
            let next = ids.len() as u32;
            next_block[s] = *ids.entry((block[s], succ)).or_insert(next);
        }
        let new_count = ids.len();
        block = next_block;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // breadth-first renumbering of the quotient
    let mut rep = vec![usize::MAX; count];
    for s in (0..m).rev() {
        rep[block[s] as usize] = s;
    }
    let mut canon = vec![u32::MAX; count];
    let mut queue = VecDeque::from([block[0] as usize]);
    canon[block[0] as usize] = 0;
    let mut seq = Vec::with_capacity(count);
    let mut next_id = 1u32;
    while let Some(b) = queue.pop_front() {
        seq.push(b);
        let s = rep[b];
        for x in 0..k {
            if let Some((r, _)) = trans[s * k + x] {
                let rb = block[r] as usize;
                if canon[rb] == u32::MAX {
                    canon[rb] = next_id;
                    next_id += 1;
                    queue.push_back(rb);
                }
            }
        }
    }
    let table = seq
        .iter()
        .flat_map(|&b| {
            let s = rep[b];
            (0..k).map(move |x| (s, x))
        })
        .map(|(s, x)| trans[s * k + x].map(|(r, y)| (canon[block[r] as usize], y)))
        .collect();
    (seq.len(), table)
}

fn canonical_total<F>(n: usize, k: usize, initial: usize, delta: F) -> Element
where
    F: Fn(usize, usize) -> (usize, usize),
{
    let (_, table) = canonical_form(n, k, initial, |s, x| Some(delta(s, x)));
    Element {
        symbols: k,
        table: table.into_iter().map(|t| t.expect("total")).collect(),
    }
}

/// Moore-style partition refinement followed by breadth-first renumbering.
pub fn minimize(t: &InitialTransducer) -> Element {
    let aut = &t.automaton;
    canonical_total(aut.num_states(), aut.num_symbols(), t.initial, |s, x| aut.delta(s, x))
}

/// The element acting as `α ↦ (α·e1)·e2`.
pub fn compose(e1: &Element, e2: &Element) -> Result<Element> {
    if e1.symbols != e2.symbols {
        return Err(Error::usage(format!(
            "cannot compose elements over {} and {} symbols",
            e1.symbols, e2.symbols
        )));
    }
    let k = e1.symbols;
    // reachable part of the pair product, discovered lazily
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(0usize, 0usize)];
    index.insert((0, 0), 0);
    let mut table = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for x in 0..k {
            let (p2, y) = e1.delta(p, x);
            let (q2, z) = e2.delta(q, y);
            let next = *index.entry((p2, q2)).or_insert_with(|| {
                pairs.push((p2, q2));
                pairs.len() - 1
            });
            table.push((next, z));
        }
        i += 1;
    }
    Ok(canonical_total(pairs.len(), k, 0, |s, x| table[s * k + x]))
}

/// Image of a word under `Q⁺ → End B*`.
pub fn word_to_element(aut: &Automaton, word: &Word) -> Result<Element> {
    aut.check_word(word)?;
    let mut states = word.states().iter();
    let first = states.next().expect("words are nonempty");
    let mut acc = Element::of_state(aut, *first);
    for &q in states {
        acc = compose(&acc, &Element::of_state(aut, q))?;
    }
    Ok(acc)
}

/// Exact equality of two words in the automaton semigroup.
pub fn equal(aut: &Automaton, w: &Word, w2: &Word) -> Result<bool> {
    Ok(word_to_element(aut, w)? == word_to_element(aut, w2)?)
}

/// Number of states reachable in the synchronous product of two elements.
///
/// If the elements differ, some string no longer than this count tells them
/// apart.
pub fn product_state_count(e1: &Element, e2: &Element) -> Result<usize> {
    if e1.symbols != e2.symbols {
        return Err(Error::usage("elements over different alphabets"));
    }
    let mut seen = HashSet::from([(0usize, 0usize)]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((p, q)) = queue.pop_front() {
        for x in 0..e1.symbols {
            let next = (e1.delta(p, x).0, e2.delta(q, x).0);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}

/// One element of `Σ(𝒜)` with its shortest, lexicographically least word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated {
    pub element: Element,
    pub word: Word,
}

/// The distinct elements represented by words of length at most `max_len`,
/// ordered by representative length, then lexicographically.
pub fn enumerate(aut: &Automaton, max_len: usize, limits: &Limits) -> Result<Vec<Enumerated>> {
    enumerate_generated(aut, &(0..aut.num_states()).collect::<Vec<_>>(), max_len, limits)
}

/// As [`enumerate`], restricted to the subsemigroup generated by `generators`.
///
/// Representatives are words over `generators`, compared lexicographically by
/// position in that list.
pub fn enumerate_generated(
    aut: &Automaton,
    generators: &[usize],
    max_len: usize,
    limits: &Limits,
) -> Result<Vec<Enumerated>> {
    if max_len == 0 {
        return Err(Error::usage("max_len must be at least 1"));
    }
    if generators.is_empty() {
        return Err(Error::usage("need at least one generator"));
    }
    let gens: Vec<Element> = generators
        .iter()
        .map(|&q| {
            aut.check_word(&Word::single(q))?;
            Ok(Element::of_state(aut, q))
        })
        .collect::<Result<_>>()?;

    let mut seen: HashSet<Element> = HashSet::new();
    let mut out = Vec::new();
    let record = |candidates: Vec<Enumerated>,
                      seen: &mut HashSet<Element>,
                      out: &mut Vec<Enumerated>|
     -> Result<Vec<Enumerated>> {
        let mut fresh = Vec::new();
        for c in candidates {
            if seen.contains(&c.element) {
                continue;
            }
            if seen.len() >= limits.max_elements {
                return Err(Error::Capacity {
                    what: "enumeration",
                    requested: seen.len() as u128 + 1,
                    limit: limits.max_elements as u128,
                });
            }
            seen.insert(c.element.clone());
            out.push(c.clone());
            fresh.push(c);
        }
        Ok(fresh)
    };

    let first: Vec<Enumerated> = generators
        .iter()
        .zip(&gens)
        .map(|(&q, e)| Enumerated {
            element: e.clone(),
            word: Word::single(q),
        })
        .collect();
    let mut frontier = record(first, &mut seen, &mut out)?;

    for _ in 1..max_len {
        if frontier.is_empty() {
            break;
        }
        let batches: Vec<Vec<Enumerated>> = frontier
            .par_iter()
            .map(|item| {
                generators
                    .iter()
                    .zip(&gens)
                    .map(|(&q, g)| {
                        Ok(Enumerated {
                            element: compose(&item.element, g)?,
                            word: item.word.push(q),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        frontier = record(batches.into_iter().flatten().collect(), &mut seen, &mut out)?;
    }
    Ok(out)
}

/// Cumulative element counts for lengths `1..=max_len`.
pub fn growth(aut: &Automaton, max_len: usize, limits: &Limits) -> Result<Vec<usize>> {
    let elems = enumerate(aut, max_len, limits)?;
    Ok((1..=max_len)
        .map(|len| elems.iter().filter(|e| e.word.len() <= len).count())
        .collect())
}

/// Whether `l` is a left identity of `Σ(𝒜)`: `l·q = q` for every state `q`.
pub fn is_left_identity(aut: &Automaton, l: usize) -> Result<bool> {
    aut.check_word(&Word::single(l))?;
    let el = Element::of_state(aut, l);
    for q in 0..aut.num_states() {
        let eq = Element::of_state(aut, q);
        if compose(&el, &eq)? != eq {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first state acting as the identity of `End B*`, if any.
pub fn identity_state(aut: &Automaton) -> Option<usize> {
    (0..aut.num_states()).find(|&q| Element::of_state(aut, q).is_identity())
}

/// Canonical form of an element restricted to strings in `C·D*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RestrictedElement {
    states: usize,
    table: Vec<Option<(u32, u32)>>,
}

impl RestrictedElement {
    pub fn num_states(&self) -> usize {
        self.states
    }
}

fn check_partition(k: usize, first: &[usize], rest: &[usize]) -> Result<(Vec<bool>, Vec<bool>)> {
    if first.is_empty() {
        return Err(Error::usage("the initial-symbol set C must be nonempty"));
    }
    let mut in_c = vec![false; k];
    let mut in_d = vec![false; k];
    for &x in first {
        if x >= k {
            return Err(Error::usage(format!("symbol index {x} out of range")));
        }
        in_c[x] = true;
    }
    for &x in rest {
        if x >= k {
            return Err(Error::usage(format!("symbol index {x} out of range")));
        }
        if in_c[x] {
            return Err(Error::usage("C and D must be disjoint"));
        }
        in_d[x] = true;
    }
    if (0..k).any(|x| !in_c[x] && !in_d[x]) {
        return Err(Error::usage("C and D must cover the alphabet"));
    }
    Ok((in_c, in_d))
}

/// Restrict `e` to inputs whose first symbol lies in `first` and whose other
/// symbols lie in `rest`. The two sets must partition the alphabet.
pub fn restrict(e: &Element, first: &[usize], rest: &[usize]) -> Result<RestrictedElement> {
    let k = e.symbols;
    let (in_c, in_d) = check_partition(k, first, rest)?;
    let n = e.num_states();
    // state n is a fresh root reading only C; every other state reads only D
    let (states, table) = canonical_form(n + 1, k, n, |s, x| {
        if s == n {
            in_c[x].then(|| e.delta(0, x))
        } else {
            in_d[x].then(|| e.delta(s, x))
        }
    });
    Ok(RestrictedElement { states, table })
}

/// Equality of two words on the strings of `C·D*`.
pub fn restricted_equal(
    aut: &Automaton,
    w: &Word,
    w2: &Word,
    first: &[usize],
    rest: &[usize],
) -> Result<bool> {
    check_partition(aut.num_symbols(), first, rest)?;
    let a = restrict(&word_to_element(aut, w)?, first, rest)?;
    let b = restrict(&word_to_element(aut, w2)?, first, rest)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{adding_machine, c2_swap, trivial};

    fn word(a: &Automaton, s: &str) -> Word {
        Word::parse(a, s).unwrap()
    }

    // compares full level tables up to `depth`, independent of minimization
    fn same_tables(a: &Automaton, w: &Word, e: &Element, depth: usize) -> bool {
        let limits = Limits::default();
        (0..=depth).all(|d| {
            a.act_on_level(w, d, &limits)
                .unwrap()
                .iter()
                .all(|(i, o)| &e.act(&i) == o)
        })
    }

    #[test]
    fn identity_is_neutral() {
        let a = adding_machine();
        let id = Element::identity(2);
        let s = Element::of_state(&a, 0);
        assert_eq!(compose(&id, &s).unwrap(), s);
        assert_eq!(compose(&s, &id).unwrap(), s);
        assert_eq!(Element::of_state(&a, 1), id);
    }

    #[test]
    fn adding_machine_twice() {
        let a = adding_machine();
        let s = Element::of_state(&a, 0);
        let ss = compose(&s, &s).unwrap();
        assert_eq!(a.format_symbols(&ss.act(&[1, 0])), "11");
        // add 2: states {+2, +1, +0}
        assert_eq!(ss.num_states(), 3);
        assert_eq!(word_to_element(&a, &word(&a, "σ,σ")).unwrap(), ss);
        assert!(same_tables(&a, &word(&a, "σ,σ"), &ss, 4));
    }

    #[test]
    fn compose_alphabet_mismatch() {
        let a = adding_machine();
        let t = trivial("e", "x");
        let err = compose(&Element::of_state(&a, 0), &Element::of_state(&t, 0));
        assert!(matches!(err, Err(Error::Usage(_))));
    }

    #[test]
    fn minimize_merges_duplicates() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let aut = Automaton::from_fn(names(&["a", "b"]), names(&["x", "y"]), |q, x| (1 - q, x)).unwrap();
        let e = InitialTransducer::new(aut, 0).unwrap().minimize();
        assert_eq!(e, Element::identity(2));
        assert_eq!(e.num_states(), 1);
    }

    #[test]
    fn minimize_is_idempotent() {
        let a = adding_machine();
        let e = word_to_element(&a, &word(&a, "σ,σ,σ")).unwrap();
        let again = e.to_transducer(a.alphabet()).unwrap().minimize();
        assert_eq!(again, e);
    }

    #[test]
    fn equality_examples() {
        let a = adding_machine();
        assert!(equal(&a, &word(&a, "σ,e"), &word(&a, "e,σ")).unwrap());
        assert!(equal(&a, &word(&a, "σ"), &word(&a, "σ")).unwrap());
        assert!(!equal(&a, &word(&a, "σ"), &word(&a, "σ,σ")).unwrap());
    }

    #[test]
    fn enumerate_adding_machine() {
        let a = adding_machine();
        let limits = Limits::default();
        let elems = enumerate(&a, 3, &limits).unwrap();
        let words: Vec<String> = elems.iter().map(|e| a.format_word(&e.word)).collect();
        assert_eq!(words, ["σ", "e", "σ,σ", "σ,σ,σ"]);
        assert_eq!(growth(&a, 3, &limits).unwrap(), vec![2, 3, 4]);
    }

    #[test]
    fn enumerate_identity_only() {
        let t = trivial("e", "x");
        let limits = Limits::default();
        assert_eq!(enumerate(&t, 5, &limits).unwrap().len(), 1);
        assert_eq!(growth(&t, 4, &limits).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn enumerate_cap() {
        let a = adding_machine();
        let limits = Limits {
            max_elements: 3,
            ..Limits::default()
        };
        assert!(enumerate(&a, 2, &limits).is_ok());
        assert!(matches!(enumerate(&a, 3, &limits), Err(Error::Capacity { .. })));
        assert!(matches!(enumerate(&a, 0, &limits), Err(Error::Usage(_))));
    }

    #[test]
    fn left_identities() {
        let a = adding_machine();
        assert!(is_left_identity(&a, 1).unwrap());
        assert!(!is_left_identity(&a, 0).unwrap());
        let g = c2_swap();
        assert!(is_left_identity(&g, 1).unwrap());
        assert!(!is_left_identity(&g, 0).unwrap());
        assert_eq!(identity_state(&g), Some(1));
    }

    #[test]
    fn restricted_equality() {
        let g = c2_swap();
        let (gw, idw) = (word(&g, "g"), word(&g, "1"));
        // C = {0}, D = {1}: g maps 0 -> 1 so the two differ on C already
        assert!(!restricted_equal(&g, &gw, &idw, &[0], &[1]).unwrap());
        assert!(restricted_equal(&g, &gw, &word(&g, "g,g,g"), &[0], &[1]).unwrap());
        // C = whole alphabet, D = {} compares only the first letter
        assert!(restricted_equal(&g, &word(&g, "g,g"), &idw, &[0, 1], &[]).unwrap());
        assert!(matches!(
            restricted_equal(&g, &gw, &idw, &[], &[0, 1]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            restricted_equal(&g, &gw, &idw, &[0], &[0, 1]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            restricted_equal(&g, &gw, &idw, &[0], &[]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn restriction_sees_only_later_letters() {
        // r behaves as identity after reading x, but flips after y
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let aut = Automaton::from_fn(names(&["r", "id", "flip"]), names(&["x", "y", "z"]), |q, x| {
            match (q, x) {
                (0, 0) => (1, 0),
                (0, 1) => (2, 1),
                (0, _) => (0, 2),
                (2, 2) => (2, 2),
                (2, x) => (2, 1 - x),
                (_, x) => (1, x),
            }
        })
        .unwrap();
        let r = Word::single(0);
        let id = Word::single(1);
        assert!(!equal(&aut, &r, &id).unwrap());
        // strings x{x,y}*: r acts as the identity
        assert!(!restricted_equal(&aut, &r, &id, &[0, 2], &[1]).unwrap());
        assert!(restricted_equal(&aut, &r, &id, &[0], &[1, 2]).unwrap());
        assert!(!restricted_equal(&aut, &r, &id, &[1], &[0, 2]).unwrap());
    }

    #[test]
    fn product_count_bounds() {
        let a = adding_machine();
        let s = Element::of_state(&a, 0);
        let id = Element::identity(2);
        assert_eq!(product_state_count(&s, &id).unwrap(), 2);
        assert_eq!(product_state_count(&s, &s).unwrap(), 2);
    }

    #[test]
    fn serialization_identifies_elements() {
        let a = adding_machine();
        let x = word_to_element(&a, &word(&a, "σ,e")).unwrap();
        let y = word_to_element(&a, &word(&a, "e,σ")).unwrap();
        assert_eq!(x.to_text(a.alphabet()).unwrap(), y.to_text(a.alphabet()).unwrap());
        let z = word_to_element(&a, &word(&a, "σ,σ")).unwrap();
        assert_ne!(x.to_text(a.alphabet()).unwrap(), z.to_text(a.alphabet()).unwrap());
        assert!(x.to_text(a.alphabet()).unwrap().ends_with("initial: q0\n"));
    }
}
