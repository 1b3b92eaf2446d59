use std::fmt;

use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are split along the lines the CLI cares about: usage and
/// parse problems are the caller's fault, precondition and capacity failures
/// are properties of the input data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("{}", format_parse(.source_name, .line, .message))]
    Parse {
        source_name: Option<String>,
        line: Option<usize>,
        message: String,
    },

    #[error("invalid automaton: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            source_name: None,
            line: Some(line),
            message: msg.into(),
        }
    }

    /// Attach a file name to a parse error so messages can point at it.
    pub fn in_source(self, name: &str) -> Self {
        match self {
            Error::Parse { line, message, .. } => Error::Parse {
                source_name: Some(name.to_string()),
                line,
                message,
            },
            Error::Invalid(diags) => Error::Parse {
                source_name: Some(name.to_string()),
                line: None,
                message: join_diagnostics(&diags),
            },
            other => other,
        }
    }

    /// True for errors caused by malformed input or invocation, as opposed to
    /// well-formed input that fails a mathematical precondition.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_) | Error::Parse { .. } | Error::Invalid(_))
    }
}

fn format_parse(source: &Option<String>, line: &Option<usize>, message: &str) -> String {
    match (source, line) {
        (Some(s), Some(l)) => format!("{s}:{l}: {message}"),
        (Some(s), None) => format!("{s}: {message}"),
        (None, Some(l)) => format!("line {l}: {message}"),
        (None, None) => message.to_string(),
    }
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    /// Some `(state, symbol)` pair has no transition.
    Totality,
    /// A `(state, symbol)` pair has more than one transition.
    DuplicateTransition,
    /// Two states or two symbols share a name.
    NameCollision,
    /// A transition mentions a state or symbol that is not declared.
    UnknownName,
    /// The state set or the alphabet is empty.
    Empty,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagnosticKind::Totality => "totality",
            DiagnosticKind::DuplicateTransition => "duplicate transition",
            DiagnosticKind::NameCollision => "name collision",
            DiagnosticKind::UnknownName => "unknown name",
            DiagnosticKind::Empty => "empty",
        };
        f.write_str(s)
    }
}

/// One violated invariant, with a human readable location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub location: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.location, self.message)
    }
}
