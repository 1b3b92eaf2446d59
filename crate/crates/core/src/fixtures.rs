//! Small automata and monoids used throughout the tests and examples.

use crate::{Automaton, FiniteMonoid};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// The binary adding machine with an identity state.
///
/// `σ` adds one to a little-endian binary number, `e` is the identity, so the
/// generated semigroup is the free monoid of rank one (ℕ₀).
pub fn adding_machine() -> Automaton {
    Automaton::from_fn(names(&["σ", "e"]), names(&["0", "1"]), |q, x| match (q, x) {
        (0, 0) => (1, 1),
        (0, 1) => (0, 0),
        (_, x) => (1, x),
    })
    .expect("adding machine is well formed")
}

/// The cyclic group of order two: `g` swaps `0` and `1`, `1` is the identity.
pub fn c2_swap() -> Automaton {
    Automaton::from_fn(names(&["g", "1"]), names(&["0", "1"]), |q, x| match q {
        0 => (0, 1 - x),
        _ => (1, x),
    })
    .expect("swap automaton is well formed")
}

/// One identity state over a one-letter alphabet; generates the trivial
/// semigroup.
pub fn trivial(state: &str, symbol: &str) -> Automaton {
    Automaton::from_fn(names(&[state]), names(&[symbol]), |q, x| (q, x))
        .expect("trivial automaton is well formed")
}

/// The cyclic group `C₂ = {1, g}` as a finite monoid.
pub fn c2_monoid() -> FiniteMonoid {
    FiniteMonoid::new(names(&["1", "g"]), vec![vec![0, 1], vec![1, 0]], 0)
        .expect("C2 table is a monoid")
}

/// `{1, z}` with `z` a zero; right multiplication by `z` is not a bijection.
pub fn zero_monoid() -> FiniteMonoid {
    FiniteMonoid::new(names(&["1", "z"]), vec![vec![0, 1], vec![1, 1]], 0)
        .expect("two element zero monoid")
}
