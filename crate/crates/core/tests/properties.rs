use autosg::element::{compose, enumerate, minimize, word_to_element};
use autosg::oracles::{brute_equal, layered_equal};
use autosg::format::{parse_automaton, write_automaton};
use autosg::{Automaton, Element, InitialTransducer, Limits, Word};
use proptest::prelude::*;

/// A random automaton with up to 4 states and 3 symbols.
fn automaton() -> impl Strategy<Value = Automaton> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(n, k)| {
        proptest::collection::vec((0..n, 0..k), n * k).prop_map(move |table| {
            let states = (0..n).map(|i| format!("q{i}")).collect();
            let alphabet = (0..k).map(|i| format!("a{i}")).collect();
            Automaton::new(states, alphabet, table).unwrap()
        })
    })
}

fn indices(bound: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..bound, len)
}

/// An automaton with a state word and an input string over it.
fn with_word_and_input() -> impl Strategy<Value = (Automaton, Vec<usize>, Vec<usize>, Vec<usize>)> {
    automaton().prop_flat_map(|a| {
        let (n, k) = (a.num_states(), a.num_symbols());
        (
            Just(a),
            indices(n, 1..=4),
            indices(n, 1..=4),
            indices(k, 0..=8),
        )
    })
}

proptest! {
    #[test]
    fn action_preserves_length_and_prefixes((a, w, _, input) in with_word_and_input()) {
        let w = Word::new(&a, w).unwrap();
        let out = a.act(&w, &input).unwrap();
        prop_assert_eq!(out.len(), input.len());
        for cut in 0..=input.len() {
            prop_assert_eq!(&a.act(&w, &input[..cut]).unwrap()[..], &out[..cut]);
        }
    }

    #[test]
    fn action_is_a_homomorphism((a, u, v, input) in with_word_and_input()) {
        let (u, v) = (Word::new(&a, u).unwrap(), Word::new(&a, v).unwrap());
        let stepwise = a.act(&v, &a.act(&u, &input).unwrap()).unwrap();
        prop_assert_eq!(a.act(&u.concat(&v), &input).unwrap(), stepwise);
    }

    #[test]
    fn elements_act_like_their_words((a, w, _, input) in with_word_and_input()) {
        let w = Word::new(&a, w).unwrap();
        let e = word_to_element(&a, &w).unwrap();
        prop_assert_eq!(e.act(&input), a.act(&w, &input).unwrap());
    }

    #[test]
    fn composition_is_associative((a, u, v, _) in with_word_and_input(), r in 0usize..4) {
        let r = r % a.num_states();
        let x = word_to_element(&a, &Word::new(&a, u).unwrap()).unwrap();
        let y = word_to_element(&a, &Word::new(&a, v).unwrap()).unwrap();
        let z = Element::of_state(&a, r);
        let left = compose(&compose(&x, &y).unwrap(), &z).unwrap();
        let right = compose(&x, &compose(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn minimization_is_idempotent((a, w, _, _) in with_word_and_input()) {
        let e = word_to_element(&a, &Word::new(&a, w).unwrap()).unwrap();
        let names: Vec<String> = a.alphabet().to_vec();
        let again = minimize(&e.to_transducer(&names).unwrap());
        prop_assert_eq!(&again, &e);
        let raw = InitialTransducer::new(a.clone(), 0).unwrap();
        let once = raw.minimize();
        prop_assert_eq!(minimize(&once.to_transducer(&names).unwrap()), once);
    }

    #[test]
    fn enumeration_extends_shorter_enumerations(a in automaton()) {
        let limits = Limits::default();
        let short = enumerate(&a, 2, &limits).unwrap();
        let long = enumerate(&a, 3, &limits).unwrap();
        prop_assert!(long.len() >= short.len());
        for (s, l) in short.iter().zip(&long) {
            prop_assert_eq!(&s.element, &l.element);
            prop_assert_eq!(&s.word, &l.word);
        }
        let mut seen = std::collections::HashSet::new();
        for item in &long {
            prop_assert!(seen.insert(item.element.clone()));
            prop_assert_eq!(&word_to_element(&a, &item.word).unwrap(), &item.element);
        }
    }

    #[test]
    fn text_format_round_trips(a in automaton()) {
        let back = parse_automaton(&write_automaton(&a)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn layered_search_matches_level_tables((a, u, v, _) in with_word_and_input(), depth in 0usize..7) {
        let (u, v) = (Word::new(&a, u).unwrap(), Word::new(&a, v).unwrap());
        let limits = Limits::default();
        prop_assert_eq!(
            layered_equal(&a, &u, &v, depth).unwrap(),
            brute_equal(&a, &u, &v, depth, &limits).unwrap()
        );
    }
}
