//! Computing with automaton semigroups.
//!
//! The crate is organised bottom-up:
//!
//! - [`automaton`]: synchronous Mealy automata, words of states and their
//!   action on strings and tree levels.
//! - [`element`]: semigroup elements as canonical minimized transducers, with
//!   exact equality, enumeration and growth.
//! - [`monoid`]: finite monoids given by multiplication tables.
//! - [`constructions`]: automata realising free products, free products with
//!   an adjoined identity, direct powers and wreath products.
//! - [`oracles`]: automaton-free arithmetic (free product normal forms,
//!   wreath product multiplication, brute-force comparison) used to check the
//!   constructions.
//! - [`format`], [`dot`] and [`verify`]: the text formats, graph export and
//!   the property suites driven by the command line tool.

pub mod automaton;
pub mod constructions;
pub mod dot;
pub mod element;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod monoid;
pub mod oracles;
pub mod verify;

pub use automaton::{Automaton, AutomatonDraft, LevelAction, Word};
pub use constructions::{ConstructionOutput, StateRole, SymbolKind, SymbolTag};
pub use element::{Element, InitialTransducer};
pub use error::{Diagnostic, DiagnosticKind, Error, Result};
pub use monoid::FiniteMonoid;

/// Resource bounds shared by the exponential operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Bound on `depth * |B|^depth` for level tables and brute-force checks.
    pub max_level_entries: u128,
    /// Bound on the number of distinct elements an enumeration may collect.
    pub max_elements: usize,
    /// Bound on `|Q|^n * |A|^n` for direct powers and wreath automata.
    pub max_power_entries: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_level_entries: 10_000_000,
            max_elements: 1_000_000,
            max_power_entries: 10_000_000,
        }
    }
}
