//! Graphviz export: one node per state, one edge `q -> r` labelled `x|y` per
//! transition `δ(q, x) = (r, y)`.

use std::fmt::Write as _;

use crate::automaton::Automaton;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn export_dot(aut: &Automaton) -> String {
    let mut out = String::from("digraph automaton {\n");
    for q in aut.states() {
        let _ = writeln!(out, "  {};", quote(q));
    }
    for q in 0..aut.num_states() {
        for x in 0..aut.num_symbols() {
            let (r, y) = aut.delta(q, x);
            let label = format!("{}|{}", aut.alphabet()[x], aut.alphabet()[y]);
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&aut.states()[q]),
                quote(&aut.states()[r]),
                quote(&label)
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{adding_machine, trivial};

    fn counts(dot: &str) -> (usize, usize) {
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        let nodes = dot
            .lines()
            .filter(|l| l.trim_end().ends_with(';') && !l.contains("->"))
            .count();
        (nodes, edges)
    }

    #[test]
    fn adding_machine_graph() {
        let dot = export_dot(&adding_machine());
        assert_eq!(counts(&dot), (2, 4));
        assert!(dot.contains("\"σ\" -> \"e\" [label=\"0|1\"];"));
        assert!(dot.contains("\"σ\" -> \"σ\" [label=\"1|0\"];"));
    }

    #[test]
    fn identity_graph_has_self_loops() {
        let dot = export_dot(&trivial("e", "x"));
        assert_eq!(counts(&dot), (1, 1));
        assert!(dot.contains("\"e\" -> \"e\" [label=\"x|x\"];"));
    }

    #[test]
    fn quotes_are_escaped() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
