//! Automata realising semigroup constructions.
//!
//! Every constructor returns a [`ConstructionOutput`]: the automaton, a tag per
//! symbol and a role per state recording where it came from, and the states
//! that generate the semigroup of interest.
//!
//! Factor names are kept as they are when they do not clash; otherwise the left
//! factor's states and symbols get an `L.` prefix and the right factor's an
//! `R.` prefix. Marked copies append `°`, tuples are written `(x;y)`, wreath
//! copies of the top monoid are `b:t` (symbols) and `t:t` (states).

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::automaton::Automaton;
use crate::element::{identity_state, is_left_identity};
use crate::error::{Error, Result};
use crate::format::{Annotations, StateAnnotation, SymbolAnnotation};
use crate::monoid::FiniteMonoid;
use crate::Limits;

pub const DOLLAR: &str = "$";
pub const HASH: &str = "#";
pub const MARK: char = '°';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    BaseLeft,
    BaseRight,
    MarkedLeft,
    MarkedRight,
    Dollar,
    Hash,
    DollarMarked,
    HashMarked,
    Tuple,
    MonoidCopy,
}

impl SymbolKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SymbolKind::BaseLeft => "base-left",
            SymbolKind::BaseRight => "base-right",
            SymbolKind::MarkedLeft => "marked-left",
            SymbolKind::MarkedRight => "marked-right",
            SymbolKind::Dollar => "dollar",
            SymbolKind::Hash => "hash",
            SymbolKind::DollarMarked => "dollar-marked",
            SymbolKind::HashMarked => "hash-marked",
            SymbolKind::Tuple => "tuple",
            SymbolKind::MonoidCopy => "monoid-copy",
        }
    }

    pub fn parse(s: &str) -> Option<SymbolKind> {
        use SymbolKind::*;
        [
            BaseLeft,
            BaseRight,
            MarkedLeft,
            MarkedRight,
            Dollar,
            Hash,
            DollarMarked,
            HashMarked,
            Tuple,
            MonoidCopy,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }

    pub fn is_marked(self) -> bool {
        matches!(
            self,
            SymbolKind::MarkedLeft
                | SymbolKind::MarkedRight
                | SymbolKind::DollarMarked
                | SymbolKind::HashMarked
        )
    }

    /// The unmarked kind a marked kind copies.
    pub fn unmarked(self) -> SymbolKind {
        match self {
            SymbolKind::MarkedLeft => SymbolKind::BaseLeft,
            SymbolKind::MarkedRight => SymbolKind::BaseRight,
            SymbolKind::DollarMarked => SymbolKind::Dollar,
            SymbolKind::HashMarked => SymbolKind::Hash,
            other => other,
        }
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a constructed symbol came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolTag {
    pub kind: SymbolKind,
    /// Names of the originating symbols (or monoid element).
    pub payload: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Before the first monoid symbol has been read (`Q₁ⁿ`).
    Pre,
    /// After it (`Q₂ⁿ`).
    Post,
}

/// A tuple of states of the base automaton, indexed by the elements of the
/// top monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleState {
    pub entries: Vec<usize>,
    pub phase: Phase,
}

/// `s ↦ sᵗ` with `(sᵗ)ᵢ = s_{tᵢ·t}`.
pub fn reindex_tuple(s: &TupleState, t: usize, monoid: &FiniteMonoid) -> TupleState {
    TupleState {
        entries: reindex(&s.entries, t, monoid),
        phase: s.phase,
    }
}

pub(crate) fn reindex<T: Clone>(entries: &[T], t: usize, monoid: &FiniteMonoid) -> Vec<T> {
    (0..entries.len())
        .map(|i| entries[monoid.mul(i, t)].clone())
        .collect()
}

/// Where a constructed state came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateRole {
    /// Unchanged state of the input automaton.
    Original(usize),
    /// State of the left factor of a free product.
    Left(usize),
    /// State of the right factor of a free product.
    Right(usize),
    /// Adjoined identity.
    Identity,
    /// Wreath product tuple with its phase.
    Tuple(TupleState),
    /// Direct power or initial-symbol tuple.
    Product(Vec<usize>),
    /// Element of the top monoid.
    Top(usize),
}

impl StateRole {
    fn annotate(&self, base: &[String], right: &[String], monoid: Option<&FiniteMonoid>) -> (String, Vec<String>) {
        let names = |v: &[usize]| v.iter().map(|&q| base[q].clone()).collect::<Vec<_>>();
        match self {
            StateRole::Original(q) => ("original".into(), vec![base[*q].clone()]),
            StateRole::Left(q) => ("left".into(), vec![base[*q].clone()]),
            StateRole::Right(q) => ("right".into(), vec![right[*q].clone()]),
            StateRole::Identity => ("identity".into(), vec![]),
            StateRole::Tuple(t) => (
                match t.phase {
                    Phase::Pre => "tuple-pre".into(),
                    Phase::Post => "tuple-post".into(),
                },
                names(&t.entries),
            ),
            StateRole::Product(v) => ("tuple".into(), names(v)),
            StateRole::Top(t) => (
                "top".into(),
                vec![monoid.map(|m| m.elements()[*t].clone()).unwrap_or_default()],
            ),
        }
    }
}

/// A constructed automaton with its embedding data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutput {
    /// Short name of the construction, e.g. `free-product`.
    pub construction: String,
    pub automaton: Automaton,
    pub tagged_alphabet: Vec<SymbolTag>,
    pub roles: Vec<StateRole>,
    pub designated_generators: Vec<usize>,
    pub notes: BTreeMap<String, String>,
    // state names of the factors, used to render roles
    role_names: Vec<String>,
    right_names: Vec<String>,
    monoid: Option<FiniteMonoid>,
}

impl ConstructionOutput {
    pub fn generator_names(&self) -> Vec<String> {
        self.designated_generators
            .iter()
            .map(|&q| self.automaton.states()[q].clone())
            .collect()
    }

    pub fn monoid(&self) -> Option<&FiniteMonoid> {
        self.monoid.as_ref()
    }

    /// Indices of the symbols with the given kind, in alphabet order.
    pub fn symbols_of_kind(&self, kind: SymbolKind) -> Vec<usize> {
        self.tagged_alphabet
            .iter()
            .enumerate()
            .filter(|(_, t)| t.kind == kind)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn symbol(&self, kind: SymbolKind) -> Option<usize> {
        self.symbols_of_kind(kind).first().copied()
    }

    pub fn states_where(&self, pred: impl Fn(&StateRole) -> bool) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(r))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn annotations(&self) -> Annotations {
        let aut = &self.automaton;
        Annotations {
            construction: Some(self.construction.clone()),
            generators: self.generator_names(),
            symbols: self
                .tagged_alphabet
                .iter()
                .zip(aut.alphabet())
                .map(|(tag, name)| SymbolAnnotation {
                    name: name.clone(),
                    kind: tag.kind.as_str().to_string(),
                    payload: tag.payload.clone(),
                })
                .collect(),
            states: self
                .roles
                .iter()
                .zip(aut.states())
                .map(|(role, name)| {
                    let (role, payload) = role.annotate(&self.role_names, &self.right_names, self.monoid.as_ref());
                    StateAnnotation {
                        name: name.clone(),
                        role,
                        payload,
                    }
                })
                .collect(),
            notes: self.notes.clone(),
        }
    }

    /// Rebuild the embedding data of a free-product style construction from
    /// its annotation block. Wreath and direct-power constructions carry
    /// tuple roles that cannot be resolved without the base automaton and are
    /// rejected.
    pub fn from_annotated(automaton: Automaton, ann: &Annotations) -> Result<Self> {
        let construction = ann
            .construction
            .clone()
            .ok_or_else(|| Error::usage("automaton carries no construction annotations"))?;
        let tagged_alphabet = automaton
            .alphabet()
            .iter()
            .map(|name| {
                let a = ann
                    .symbols
                    .iter()
                    .find(|s| &s.name == name)
                    .ok_or_else(|| Error::usage(format!("symbol `{name}` has no annotation")))?;
                let kind = SymbolKind::parse(&a.kind)
                    .ok_or_else(|| Error::usage(format!("unknown symbol kind `{}`", a.kind)))?;
                Ok(SymbolTag {
                    kind,
                    payload: a.payload.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut roles = Vec::with_capacity(automaton.num_states());
        let mut left_names = Vec::new();
        let mut right_names = Vec::new();
        for name in automaton.states() {
            let a = ann
                .states
                .iter()
                .find(|s| &s.name == name)
                .ok_or_else(|| Error::usage(format!("state `{name}` has no annotation")))?;
            let origin = a.payload.first().cloned().unwrap_or_else(|| name.clone());
            let role = match a.role.as_str() {
                "left" => {
                    left_names.push(origin);
                    StateRole::Left(left_names.len() - 1)
                }
                "original" => {
                    left_names.push(origin);
                    StateRole::Original(left_names.len() - 1)
                }
                "right" => {
                    right_names.push(origin);
                    StateRole::Right(right_names.len() - 1)
                }
                "identity" => StateRole::Identity,
                other => {
                    return Err(Error::usage(format!(
                        "state role `{other}` cannot be reloaded from annotations"
                    )))
                }
            };
            roles.push(role);
        }
        let designated_generators = ann
            .generators
            .iter()
            .map(|g| automaton.require_state(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConstructionOutput {
            construction,
            automaton,
            tagged_alphabet,
            roles,
            designated_generators,
            notes: ann.notes.clone(),
            role_names: left_names,
            right_names,
            monoid: None,
        })
    }

    /// The automaton text format followed by the annotation block.
    pub fn to_text(&self) -> String {
        crate::format::write_annotated(&self.automaton, &self.annotations())
    }
}

fn all_distinct<'a>(names: impl IntoIterator<Item = &'a String>) -> bool {
    let mut seen = HashSet::new();
    names.into_iter().all(|n| seen.insert(n.as_str()))
}

fn prefixed(names: &[String], prefix: &str) -> Vec<String> {
    names.iter().map(|n| format!("{prefix}{n}")).collect()
}

fn marked(name: &str) -> String {
    format!("{name}{MARK}")
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Disjoint names for two factors' states and symbols, plus the shared
/// free-product symbols.
struct FactorNames {
    left_states: Vec<String>,
    right_states: Vec<String>,
    left_symbols: Vec<String>,
    right_symbols: Vec<String>,
}

impl FactorNames {
    fn new(a1: &Automaton, a2: &Automaton) -> Self {
        let specials = [DOLLAR, HASH]
            .iter()
            .flat_map(|s| [s.to_string(), marked(s)])
            .collect::<Vec<_>>();
        let states_ok = all_distinct(a1.states().iter().chain(a2.states()));
        let symbols_ok = |l: &[String], r: &[String]| {
            let marks: Vec<String> = l.iter().chain(r).map(|s| marked(s)).collect();
            all_distinct(l.iter().chain(r).chain(&marks).chain(&specials))
        };
        let (left_symbols, right_symbols) = if symbols_ok(a1.alphabet(), a2.alphabet()) {
            (a1.alphabet().to_vec(), a2.alphabet().to_vec())
        } else {
            (prefixed(a1.alphabet(), "L."), prefixed(a2.alphabet(), "R."))
        };
        let (left_states, right_states) = if states_ok {
            (a1.states().to_vec(), a2.states().to_vec())
        } else {
            (prefixed(a1.states(), "L."), prefixed(a2.states(), "R."))
        };
        FactorNames {
            left_states,
            right_states,
            left_symbols,
            right_symbols,
        }
    }
}

/// Layout of the free-product alphabet `A ∪ B ∪ A° ∪ B° ∪ {$, #, $°, #°}`.
#[derive(Debug, Clone, Copy)]
struct FreeAlphabet {
    left: usize,
    right: usize,
}

impl FreeAlphabet {
    fn a(&self, i: usize) -> usize {
        i
    }
    fn b(&self, j: usize) -> usize {
        self.left + j
    }
    fn a_marked(&self, i: usize) -> usize {
        self.left + self.right + i
    }
    fn b_marked(&self, j: usize) -> usize {
        2 * self.left + self.right + j
    }
    fn dollar(&self) -> usize {
        2 * (self.left + self.right)
    }
    fn hash(&self) -> usize {
        self.dollar() + 1
    }
    fn dollar_marked(&self) -> usize {
        self.dollar() + 2
    }
    fn hash_marked(&self) -> usize {
        self.dollar() + 3
    }
    fn len(&self) -> usize {
        self.dollar() + 4
    }

    fn classify(&self, x: usize) -> FreeSymbol {
        let (l, r) = (self.left, self.right);
        if x < l {
            FreeSymbol::A(x)
        } else if x < l + r {
            FreeSymbol::B(x - l)
        } else if x == self.dollar() {
            FreeSymbol::Dollar
        } else if x == self.hash() {
            FreeSymbol::Hash
        } else {
            FreeSymbol::Marked
        }
    }

    fn names_and_tags(&self, names: &FactorNames) -> (Vec<String>, Vec<SymbolTag>) {
        let mut out = Vec::with_capacity(self.len());
        let tag = |kind, p: &str| SymbolTag {
            kind,
            payload: vec![p.to_string()],
        };
        for n in &names.left_symbols {
            out.push((n.clone(), tag(SymbolKind::BaseLeft, n)));
        }
        for n in &names.right_symbols {
            out.push((n.clone(), tag(SymbolKind::BaseRight, n)));
        }
        for n in &names.left_symbols {
            out.push((marked(n), tag(SymbolKind::MarkedLeft, n)));
        }
        for n in &names.right_symbols {
            out.push((marked(n), tag(SymbolKind::MarkedRight, n)));
        }
        out.push((DOLLAR.into(), tag(SymbolKind::Dollar, DOLLAR)));
        out.push((HASH.into(), tag(SymbolKind::Hash, HASH)));
        out.push((marked(DOLLAR), tag(SymbolKind::DollarMarked, DOLLAR)));
        out.push((marked(HASH), tag(SymbolKind::HashMarked, HASH)));
        out.into_iter().unzip()
    }
}

enum FreeSymbol {
    A(usize),
    B(usize),
    Dollar,
    Hash,
    Marked,
}

/// Automaton for the free product `S ⋆ T` of two automaton semigroups with
/// left identities `l_S` (state `left_identity` of `a1`) and `l_T`.
///
/// States are `Q₁ ⊔ Q₂`. A left state acts as in `a1` on `A`, marks `B` and
/// `#`, and on `$` outputs `$` and hands over to `l_T`; right states mirror
/// this with `$` and `#` swapped. Every state fixes every marked symbol.
pub fn free_product(
    a1: &Automaton,
    left_identity: usize,
    a2: &Automaton,
    right_identity: usize,
) -> Result<ConstructionOutput> {
    for (aut, l, side) in [(a1, left_identity, "left"), (a2, right_identity, "right")] {
        if l >= aut.num_states() {
            return Err(Error::usage(format!("{side} identity index {l} out of range")));
        }
        if !is_left_identity(aut, l)? {
            return Err(Error::Precondition(format!(
                "state `{}` is not a left identity of the {side} factor",
                aut.states()[l]
            )));
        }
    }
    let names = FactorNames::new(a1, a2);
    let layout = FreeAlphabet {
        left: a1.num_symbols(),
        right: a2.num_symbols(),
    };
    let (alphabet, tags) = layout.names_and_tags(&names);
    let n1 = a1.num_states();
    let states: Vec<String> = names
        .left_states
        .iter()
        .chain(&names.right_states)
        .cloned()
        .collect();

    let automaton = Automaton::from_fn(states, alphabet, |q, x| {
        let sym = layout.classify(x);
        if q < n1 {
            match sym {
                FreeSymbol::A(i) => {
                    let (r, y) = a1.delta(q, i);
                    (r, layout.a(y))
                }
                FreeSymbol::B(j) => (q, layout.b_marked(j)),
                FreeSymbol::Hash => (q, layout.hash_marked()),
                FreeSymbol::Dollar => (n1 + right_identity, layout.dollar()),
                FreeSymbol::Marked => (q, x),
            }
        } else {
            let t = q - n1;
            match sym {
                FreeSymbol::B(j) => {
                    let (r, y) = a2.delta(t, j);
                    (n1 + r, layout.b(y))
                }
                FreeSymbol::A(i) => (q, layout.a_marked(i)),
                FreeSymbol::Dollar => (q, layout.dollar_marked()),
                FreeSymbol::Hash => (left_identity, layout.hash()),
                FreeSymbol::Marked => (q, x),
            }
        }
    })?;

    let roles = (0..n1)
        .map(StateRole::Left)
        .chain((0..a2.num_states()).map(StateRole::Right))
        .collect();
    let mut notes = BTreeMap::new();
    notes.insert("left-identity".into(), automaton.states()[left_identity].clone());
    notes.insert(
        "right-identity".into(),
        automaton.states()[n1 + right_identity].clone(),
    );
    Ok(ConstructionOutput {
        construction: "free-product".into(),
        designated_generators: (0..automaton.num_states()).collect(),
        automaton,
        tagged_alphabet: tags,
        roles,
        notes,
        role_names: a1.states().to_vec(),
        right_names: a2.states().to_vec(),
        monoid: None,
    })
}

/// Output of a right-factor state on `$` in the adjoined-identity
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RightDollarOutput {
    /// `δ(t, $) = (t, $°)`, mirroring `δ(s, #) = (s, #°)`.
    #[default]
    DollarMarked,
    /// `δ(t, $) = (t, #°)`.
    HashMarked,
}

/// Automaton for `(S ⋆ T)¹`: the free product of two arbitrary automaton
/// semigroups with an identity adjoined.
///
/// A single identity state `1` replaces the left identities of
/// [`free_product`]: left states move to `1` on `$`, right states on `#`.
pub fn free_product_adjoin_identity(
    a1: &Automaton,
    a2: &Automaton,
    right_dollar: RightDollarOutput,
) -> Result<ConstructionOutput> {
    let names = FactorNames::new(a1, a2);
    let layout = FreeAlphabet {
        left: a1.num_symbols(),
        right: a2.num_symbols(),
    };
    let (alphabet, tags) = layout.names_and_tags(&names);
    let n1 = a1.num_states();
    let n2 = a2.num_states();
    let mut states: Vec<String> = names
        .left_states
        .iter()
        .chain(&names.right_states)
        .cloned()
        .collect();
    let one = n1 + n2;
    states.push(fresh_name("1", &states));

    let automaton = Automaton::from_fn(states, alphabet, |q, x| {
        if q == one {
            return (q, x);
        }
        let sym = layout.classify(x);
        if q < n1 {
            match sym {
                FreeSymbol::A(i) => {
                    let (r, y) = a1.delta(q, i);
                    (r, layout.a(y))
                }
                FreeSymbol::B(j) => (q, layout.b_marked(j)),
                FreeSymbol::Hash => (q, layout.hash_marked()),
                FreeSymbol::Dollar => (one, layout.dollar()),
                FreeSymbol::Marked => (q, x),
            }
        } else {
            let t = q - n1;
            match sym {
                FreeSymbol::B(j) => {
                    let (r, y) = a2.delta(t, j);
                    (n1 + r, layout.b(y))
                }
                FreeSymbol::A(i) => (q, layout.a_marked(i)),
                FreeSymbol::Dollar => match right_dollar {
                    RightDollarOutput::DollarMarked => (q, layout.dollar_marked()),
                    RightDollarOutput::HashMarked => (q, layout.hash_marked()),
                },
                FreeSymbol::Hash => (one, layout.hash()),
                FreeSymbol::Marked => (q, x),
            }
        }
    })?;

    let roles = (0..n1)
        .map(StateRole::Left)
        .chain((0..n2).map(StateRole::Right))
        .chain(std::iter::once(StateRole::Identity))
        .collect();
    let mut notes = BTreeMap::new();
    notes.insert("identity".into(), automaton.states()[one].clone());
    notes.insert(
        "right-dollar".into(),
        match right_dollar {
            RightDollarOutput::DollarMarked => marked(DOLLAR),
            RightDollarOutput::HashMarked => marked(HASH),
        },
    );
    Ok(ConstructionOutput {
        construction: "free-product-identity".into(),
        designated_generators: (0..automaton.num_states()).collect(),
        automaton,
        tagged_alphabet: tags,
        roles,
        notes,
        role_names: a1.states().to_vec(),
        right_names: a2.states().to_vec(),
        monoid: None,
    })
}

/// Mixed-radix tuples over `0..base`, first component most significant.
#[derive(Debug, Clone, Copy)]
struct Radix {
    base: usize,
    arity: usize,
}

impl Radix {
    fn count(&self) -> usize {
        self.base.pow(self.arity as u32)
    }

    fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut v = vec![0; self.arity];
        for slot in v.iter_mut().rev() {
            *slot = code % self.base;
            code /= self.base;
        }
        v
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.base + d)
    }
}

fn tuple_name(parts: &[usize], names: &[String]) -> String {
    let inner: Vec<&str> = parts.iter().map(|&i| names[i].as_str()).collect();
    format!("({})", inner.join(";"))
}

fn check_power(aut: &Automaton, n: usize, extra_states: usize, extra_symbols: usize, limits: &Limits) -> Result<()> {
    let q = (aut.num_states() as u128).checked_pow(n as u32);
    let a = (aut.num_symbols() as u128).checked_pow(n as u32);
    let requested = match (q, a) {
        (Some(q), Some(a)) => (q + extra_states as u128).saturating_mul(a + extra_symbols as u128),
        _ => u128::MAX,
    };
    if requested > limits.max_power_entries {
        return Err(Error::Capacity {
            what: "power automaton",
            requested,
            limit: limits.max_power_entries,
        });
    }
    Ok(())
}

/// Componentwise transition on `Qⁿ × Aⁿ`.
fn power_step(aut: &Automaton, states: &[usize], symbols: &[usize]) -> (Vec<usize>, Vec<usize>) {
    states
        .iter()
        .zip(symbols)
        .map(|(&q, &a)| aut.delta(q, a))
        .unzip()
}

/// The standard automaton for the direct power `Sⁿ`: states `Qⁿ`, alphabet
/// `Aⁿ`, acting componentwise.
pub fn direct_power(aut: &Automaton, n: usize, limits: &Limits) -> Result<ConstructionOutput> {
    if n == 0 {
        return Err(Error::usage("direct power needs n ≥ 1"));
    }
    check_power(aut, n, 0, 0, limits)?;
    let qs = Radix { base: aut.num_states(), arity: n };
    let xs = Radix { base: aut.num_symbols(), arity: n };
    let states = (0..qs.count())
        .map(|c| tuple_name(&qs.decode(c), aut.states()))
        .collect();
    let alphabet = (0..xs.count())
        .map(|c| tuple_name(&xs.decode(c), aut.alphabet()))
        .collect();
    let automaton = Automaton::from_fn(states, alphabet, |q, x| {
        let (q2, x2) = power_step(aut, &qs.decode(q), &xs.decode(x));
        (qs.encode(&q2), xs.encode(&x2))
    })?;
    let tagged_alphabet = (0..xs.count())
        .map(|c| SymbolTag {
            kind: SymbolKind::Tuple,
            payload: xs.decode(c).iter().map(|&i| aut.alphabet()[i].clone()).collect(),
        })
        .collect();
    let roles = (0..qs.count())
        .map(|c| StateRole::Product(qs.decode(c)))
        .collect();
    let mut notes = BTreeMap::new();
    notes.insert("arity".into(), n.to_string());
    Ok(ConstructionOutput {
        construction: "direct-power".into(),
        designated_generators: (0..automaton.num_states()).collect(),
        automaton,
        tagged_alphabet,
        roles,
        notes,
        role_names: aut.states().to_vec(),
        right_names: Vec::new(),
        monoid: None,
    })
}

fn wreath_alphabet(aut: &Automaton, monoid: &FiniteMonoid, xs: Radix) -> (Vec<String>, Vec<SymbolTag>) {
    let mut names = Vec::new();
    let mut tags = Vec::new();
    for c in 0..xs.count() {
        let parts = xs.decode(c);
        names.push(tuple_name(&parts, aut.alphabet()));
        tags.push(SymbolTag {
            kind: SymbolKind::Tuple,
            payload: parts.iter().map(|&i| aut.alphabet()[i].clone()).collect(),
        });
    }
    for t in monoid.elements() {
        names.push(format!("b:{t}"));
        tags.push(SymbolTag {
            kind: SymbolKind::MonoidCopy,
            payload: vec![t.clone()],
        });
    }
    (names, tags)
}

fn require_monoid_automaton(aut: &Automaton) -> Result<usize> {
    identity_state(aut).ok_or_else(|| {
        Error::Precondition(
            "the base automaton has no state acting as the identity, so it does not present a monoid"
                .into(),
        )
    })
}

/// Automaton in which `S ≀ T` is the subsemigroup generated by the phase-pre
/// tuple states and the `T` states.
///
/// Phase-pre tuples ignore `Aⁿ` and switch to the post copy of `sᵇ` on reading
/// `b`. Phase-post tuples act componentwise on `Aⁿ` and ignore `B`. A `T`
/// state `t` ignores `Aⁿ` until it reads `b`, writes `bt` and becomes `1_T`.
pub fn wreath_subsemigroup(
    aut: &Automaton,
    monoid: &FiniteMonoid,
    limits: &Limits,
) -> Result<ConstructionOutput> {
    let base_identity = require_monoid_automaton(aut)?;
    let n = monoid.len();
    let qs = Radix { base: aut.num_states(), arity: n };
    let xs = Radix { base: aut.num_symbols(), arity: n };
    check_power(aut, n, 0, 0, limits)?;
    let tuples = qs.count();
    check_power(aut, n, tuples + n, n, limits)?;
    let symbols = xs.count();
    let top = |t: usize| 2 * tuples + t;

    let mut states = Vec::with_capacity(2 * tuples + n);
    let mut roles = Vec::with_capacity(2 * tuples + n);
    for phase in [Phase::Pre, Phase::Post] {
        for c in 0..tuples {
            let entries = qs.decode(c);
            let suffix = match phase {
                Phase::Pre => "·pre",
                Phase::Post => "·post",
            };
            states.push(format!("{}{suffix}", tuple_name(&entries, aut.states())));
            roles.push(StateRole::Tuple(TupleState { entries, phase }));
        }
    }
    for (t, name) in monoid.elements().iter().enumerate() {
        states.push(format!("t:{name}"));
        roles.push(StateRole::Top(t));
    }
    let (alphabet, tagged_alphabet) = wreath_alphabet(aut, monoid, xs);

    let automaton = Automaton::from_fn(states, alphabet, |q, x| {
        if q < tuples {
            // phase pre
            if x < symbols {
                (q, x)
            } else {
                let b = x - symbols;
                let s = reindex(&qs.decode(q), b, monoid);
                (tuples + qs.encode(&s), x)
            }
        } else if q < 2 * tuples {
            if x < symbols {
                let (q2, x2) = power_step(aut, &qs.decode(q - tuples), &xs.decode(x));
                (tuples + qs.encode(&q2), xs.encode(&x2))
            } else {
                (q, x)
            }
        } else {
            let t = q - 2 * tuples;
            if x < symbols {
                (q, x)
            } else {
                let b = x - symbols;
                (top(monoid.identity()), symbols + monoid.mul(b, t))
            }
        }
    })?;

    let designated_generators = (0..tuples).chain((0..n).map(top)).collect();
    let mut notes = BTreeMap::new();
    notes.insert("base-identity".into(), aut.states()[base_identity].clone());
    notes.insert("monoid-identity".into(), monoid.elements()[monoid.identity()].clone());
    Ok(ConstructionOutput {
        construction: "wreath-subsemigroup".into(),
        automaton,
        tagged_alphabet,
        roles,
        designated_generators,
        notes,
        role_names: aut.states().to_vec(),
        right_names: Vec::new(),
        monoid: Some(monoid.clone()),
    })
}

/// The initial-symbol wreath automaton together with the partition of its
/// alphabet into initial symbols `C` and the remaining symbols `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialSymbolOutput {
    pub output: ConstructionOutput,
    /// `C`: the copy of the top monoid.
    pub initial_symbols: Vec<usize>,
    /// `D`: the tuple alphabet `Aⁿ`.
    pub later_symbols: Vec<usize>,
}

/// Automaton presenting `S ≀ T` on strings of `B·(Aⁿ)*`.
///
/// A single copy of `Qⁿ`: each tuple switches to `sᵇ` on `b ∈ B` and acts
/// componentwise on `Aⁿ`. The `T` states are as in [`wreath_subsemigroup`].
pub fn wreath_initial_symbol(
    aut: &Automaton,
    monoid: &FiniteMonoid,
    limits: &Limits,
) -> Result<InitialSymbolOutput> {
    let base_identity = require_monoid_automaton(aut)?;
    let n = monoid.len();
    let qs = Radix { base: aut.num_states(), arity: n };
    let xs = Radix { base: aut.num_symbols(), arity: n };
    check_power(aut, n, 0, 0, limits)?;
    let tuples = qs.count();
    check_power(aut, n, n, n, limits)?;
    let symbols = xs.count();

    let mut states = Vec::with_capacity(tuples + n);
    let mut roles = Vec::with_capacity(tuples + n);
    for c in 0..tuples {
        let entries = qs.decode(c);
        states.push(tuple_name(&entries, aut.states()));
        roles.push(StateRole::Product(entries));
    }
    for (t, name) in monoid.elements().iter().enumerate() {
        states.push(format!("t:{name}"));
        roles.push(StateRole::Top(t));
    }
    let (alphabet, tagged_alphabet) = wreath_alphabet(aut, monoid, xs);

    let automaton = Automaton::from_fn(states, alphabet, |q, x| {
        if q < tuples {
            if x < symbols {
                let (q2, x2) = power_step(aut, &qs.decode(q), &xs.decode(x));
                (qs.encode(&q2), xs.encode(&x2))
            } else {
                let s = reindex(&qs.decode(q), x - symbols, monoid);
                (qs.encode(&s), x)
            }
        } else {
            let t = q - tuples;
            if x < symbols {
                (q, x)
            } else {
                (tuples + monoid.identity(), symbols + monoid.mul(x - symbols, t))
            }
        }
    })?;

    let mut notes = BTreeMap::new();
    notes.insert("base-identity".into(), aut.states()[base_identity].clone());
    notes.insert("monoid-identity".into(), monoid.elements()[monoid.identity()].clone());
    let output = ConstructionOutput {
        construction: "wreath-initial-symbol".into(),
        designated_generators: (0..automaton.num_states()).collect(),
        automaton,
        tagged_alphabet,
        roles,
        notes,
        role_names: aut.states().to_vec(),
        right_names: Vec::new(),
        monoid: Some(monoid.clone()),
    };
    Ok(InitialSymbolOutput {
        output,
        initial_symbols: (symbols..symbols + n).collect(),
        later_symbols: (0..symbols).collect(),
    })
}

/// Add a fresh state `1` fixing every symbol.
pub fn adjoin_identity_state(aut: &Automaton) -> Result<ConstructionOutput> {
    let n = aut.num_states();
    let mut states = aut.states().to_vec();
    states.push(fresh_name("1", aut.states()));
    let automaton = Automaton::from_fn(states, aut.alphabet().to_vec(), |q, x| {
        if q == n {
            (q, x)
        } else {
            aut.delta(q, x)
        }
    })?;
    let tagged_alphabet = aut
        .alphabet()
        .iter()
        .map(|s| SymbolTag {
            kind: SymbolKind::BaseLeft,
            payload: vec![s.clone()],
        })
        .collect();
    let roles = (0..n)
        .map(StateRole::Original)
        .chain(std::iter::once(StateRole::Identity))
        .collect();
    let mut notes = BTreeMap::new();
    notes.insert("identity".into(), automaton.states()[n].clone());
    Ok(ConstructionOutput {
        construction: "adjoin-identity".into(),
        designated_generators: (0..=n).collect(),
        automaton,
        tagged_alphabet,
        roles,
        notes,
        role_names: aut.states().to_vec(),
        right_names: Vec::new(),
        monoid: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Word;
    use crate::element::{enumerate, Element};
    use crate::fixtures::{adding_machine, c2_monoid, c2_swap, trivial, zero_monoid};

    fn sym(aut: &Automaton, name: &str) -> usize {
        aut.symbol_index(name).unwrap_or_else(|| panic!("no symbol {name}"))
    }

    fn act(aut: &Automaton, state: &str, input: &str) -> String {
        let q = aut.state_index(state).unwrap();
        let input = aut.parse_symbols(input).unwrap();
        aut.format_symbols(&aut.act(&Word::single(q), &input).unwrap())
    }

    fn ns() -> Automaton {
        adding_machine()
    }

    #[test]
    fn free_product_alphabet_order_and_names() {
        let fp = free_product(&ns(), 1, &c2_swap(), 1).unwrap();
        let expected = [
            "L.0", "L.1", "R.0", "R.1", "L.0°", "L.1°", "R.0°", "R.1°", "$", "#", "$°", "#°",
        ];
        assert_eq!(fp.automaton.alphabet(), expected);
        assert_eq!(fp.automaton.states(), ["σ", "e", "g", "1"]);
        assert_eq!(fp.notes["left-identity"], "e");
        assert_eq!(fp.notes["right-identity"], "1");
    }

    #[test]
    fn free_product_transitions() {
        let fp = free_product(&ns(), 1, &c2_swap(), 1).unwrap();
        let a = &fp.automaton;
        let (s, g, one, e) = (0, 2, 3, 1);
        assert_eq!(a.delta(s, sym(a, "#")), (s, sym(a, "#°")));
        assert_eq!(a.delta(s, sym(a, "$")), (one, sym(a, "$")));
        assert_eq!(a.delta(s, sym(a, "R.0")), (s, sym(a, "R.0°")));
        assert_eq!(a.delta(s, sym(a, "L.0")), (e, sym(a, "L.1")));
        assert_eq!(a.delta(g, sym(a, "$")), (g, sym(a, "$°")));
        assert_eq!(a.delta(g, sym(a, "#")), (e, sym(a, "#")));
        assert_eq!(a.delta(g, sym(a, "L.1")), (g, sym(a, "L.1°")));
        for q in 0..4 {
            for x in (0..a.num_symbols()).filter(|&x| fp.tagged_alphabet[x].kind.is_marked()) {
                assert_eq!(a.delta(q, x), (q, x));
            }
        }
    }

    #[test]
    fn left_identity_passes_control_symbols() {
        let fp = free_product(&ns(), 1, &c2_swap(), 1).unwrap();
        assert_eq!(act(&fp.automaton, "e", "$,#"), "$#");
        assert_eq!(act(&fp.automaton, "σ", "L.1,L.1,$,R.0,#,L.1"), "L.0L.0$R.0#L.1");
        assert_eq!(act(&fp.automaton, "g", "#,R.0,$"), "#R.0°$");
        assert_eq!(act(&fp.automaton, "g", "R.0,$,#"), "R.1$°#");
    }

    #[test]
    fn free_product_requires_left_identities() {
        let err = free_product(&ns(), 0, &c2_swap(), 1).unwrap_err();
        assert!(matches!(&err, Error::Precondition(m) if m.contains('σ')));
        let err = free_product(&ns(), 1, &c2_swap(), 0).unwrap_err();
        assert!(matches!(&err, Error::Precondition(m) if m.contains('g')));
        assert!(free_product(&ns(), 7, &c2_swap(), 1).unwrap_err().is_usage());
    }

    #[test]
    fn trivial_free_product_grows_linearly() {
        let fp = free_product(&trivial("e1", "x"), 0, &trivial("e2", "y"), 0).unwrap();
        let limits = Limits::default();
        for n in 1..=5 {
            assert_eq!(enumerate(&fp.automaton, n, &limits).unwrap().len(), 2 * n);
        }
    }

    #[test]
    fn adjoined_identity_is_two_sided() {
        let fp = free_product_adjoin_identity(
            &trivial("e1", "x"),
            &trivial("e2", "y"),
            RightDollarOutput::default(),
        )
        .unwrap();
        let a = &fp.automaton;
        let one = a.state_index("1").unwrap();
        assert!(Element::of_state(a, one).is_identity());
        assert_eq!(a.delta(0, sym(a, "$")), (one, sym(a, "$")));
        assert_eq!(a.delta(1, sym(a, "#")), (one, sym(a, "#")));
        assert_eq!(a.delta(1, sym(a, "$")), (1, sym(a, "$°")));
        let limits = Limits::default();
        for n in 1..=4 {
            assert_eq!(enumerate(a, n, &limits).unwrap().len(), 2 * n + 1);
        }
    }

    #[test]
    fn right_dollar_variant() {
        let fp = free_product_adjoin_identity(
            &trivial("e1", "x"),
            &trivial("e2", "y"),
            RightDollarOutput::HashMarked,
        )
        .unwrap();
        let a = &fp.automaton;
        assert_eq!(a.delta(1, sym(a, "$")), (1, sym(a, "#°")));
        assert_eq!(fp.notes["right-dollar"], "#°");
    }

    #[test]
    fn fresh_identity_name_avoids_collisions() {
        let fp = free_product_adjoin_identity(&ns(), &c2_swap(), RightDollarOutput::default()).unwrap();
        let names = fp.automaton.states();
        assert_eq!(names.len(), 5);
        assert_ne!(names[4], "1");
        assert_eq!(fp.roles[4], StateRole::Identity);
    }

    #[test]
    fn direct_square_acts_componentwise() {
        let sq = direct_power(&ns(), 2, &Limits::default()).unwrap();
        assert_eq!(sq.automaton.num_states(), 4);
        assert_eq!(act(&sq.automaton, "(σ;e)", "(1;0),(1;1)"), "(0;0)(0;1)");
        assert_eq!(act(&sq.automaton, "(e;σ)", "(1;0),(1;1)"), "(1;1)(1;1)");
        assert!(direct_power(&ns(), 0, &Limits::default()).unwrap_err().is_usage());
    }

    #[test]
    fn power_capacity() {
        let limits = Limits {
            max_power_entries: 100,
            ..Limits::default()
        };
        assert!(matches!(
            direct_power(&ns(), 4, &limits),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn reindexing() {
        let c2 = c2_monoid();
        let s = TupleState { entries: vec![0, 1], phase: Phase::Pre };
        assert_eq!(reindex_tuple(&s, 0, &c2).entries, vec![0, 1]);
        assert_eq!(reindex_tuple(&s, 1, &c2).entries, vec![1, 0]);
        let z = zero_monoid();
        assert_eq!(reindex_tuple(&s, 1, &z).entries, vec![1, 1]);
    }

    #[test]
    fn wreath_layout() {
        let out = wreath_subsemigroup(&ns(), &c2_monoid(), &Limits::default()).unwrap();
        let a = &out.automaton;
        assert_eq!(a.num_states(), 4 + 4 + 2);
        assert_eq!(a.num_symbols(), 4 + 2);
        assert_eq!(out.designated_generators.len(), 6);
        assert_eq!(act(a, "t:g", "b:1,(0;1)"), "b:g(0;1)");
        assert_eq!(act(a, "t:g", "b:g,(0;1)"), "b:1(0;1)");
        assert_eq!(act(a, "(σ;e)·pre", "(0;0),b:1,(0;0)"), "(0;0)b:1(1;0)");
        assert_eq!(act(a, "(σ;e)·pre", "b:g,(0;0)"), "b:g(0;1)");
    }

    #[test]
    fn wreath_requires_identity_state() {
        let no_id = Automaton::from_fn(vec!["s".into()], vec!["0".into(), "1".into()], |_, x| (0, 1 - x)).unwrap();
        assert!(matches!(
            wreath_subsemigroup(&no_id, &c2_monoid(), &Limits::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn initial_symbol_layout() {
        let built = wreath_initial_symbol(&ns(), &c2_monoid(), &Limits::default()).unwrap();
        let a = &built.output.automaton;
        assert_eq!(a.num_states(), 4 + 2);
        assert_eq!(built.initial_symbols, vec![4, 5]);
        assert_eq!(built.later_symbols, vec![0, 1, 2, 3]);
        assert_eq!(act(a, "(σ;e)", "b:g,(0;0)"), "b:g(0;1)");
    }

    #[test]
    fn adjoining_identity_adds_one_element() {
        let limits = Limits::default();
        // already a monoid: nothing new
        let grown = adjoin_identity_state(&c2_swap()).unwrap();
        assert_eq!(grown.automaton.states()[2], "1'");
        assert_eq!(enumerate(&grown.automaton, 4, &limits).unwrap().len(), 2);

        let reset = Automaton::from_fn(vec!["z".into()], vec!["0".into(), "1".into()], |_, _| (0, 0)).unwrap();
        let grown = adjoin_identity_state(&reset).unwrap();
        assert_eq!(enumerate(&reset, 3, &limits).unwrap().len(), 1);
        assert_eq!(enumerate(&grown.automaton, 3, &limits).unwrap().len(), 2);
    }

    #[test]
    fn annotations_round_trip() {
        let fp = free_product(&ns(), 1, &c2_swap(), 1).unwrap();
        let back = ConstructionOutput::from_annotated(fp.automaton.clone(), &fp.annotations()).unwrap();
        assert_eq!(back.roles, fp.roles);
        assert_eq!(back.tagged_alphabet, fp.tagged_alphabet);
        assert_eq!(back.notes, fp.notes);
    }
}
