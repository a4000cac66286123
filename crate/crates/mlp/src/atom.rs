//! Ground atoms over a canonically rendered alphabet.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Infix marking atoms minted by transformations (output renaming, choice
/// translation). User-facing module sources are expected to stay out of this
/// namespace; the transformation operations check for collisions before
/// introducing such atoms.
pub const RESERVED_INFIX: &str = "__";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AtomError {
    #[error("invalid identifier `{0}`: expected lowercase-initial [a-z][a-zA-Z0-9_]*")]
    InvalidIdentifier(String),
    #[error("cannot parse `{0}` as a ground atom")]
    Malformed(String),
}

/// A ground atom: predicate name plus a (possibly empty) tuple of constants.
///
/// Equality, ordering and hashing all agree with the canonical rendering
/// `pred(c1,c2)` / `pred`, so two atoms are equal iff they print identically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    predicate: String,
    args: Vec<String>,
}

pub(crate) fn is_constant_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_variable_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_uppercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Atom {
    /// Builds an atom from a predicate name and constant arguments.
    pub fn new(
        predicate: impl Into<String>,
        args: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, AtomError> {
        let predicate = predicate.into();
        if !is_constant_ident(&predicate) {
            return Err(AtomError::InvalidIdentifier(predicate));
        }
        let mut checked = Vec::new();
        for arg in args {
            let arg = arg.into();
            if !is_constant_ident(&arg) {
                return Err(AtomError::InvalidIdentifier(arg));
            }
            checked.push(arg);
        }
        Ok(Atom { predicate, args: checked })
    }

    /// Builds a propositional (zero-arity) atom.
    pub fn prop(name: impl Into<String>) -> Result<Self, AtomError> {
        Atom::new(name, Vec::<String>::new())
    }

    pub fn predicate(&self) -> &str {
        &self.predicate
    }

    pub fn args(&self) -> &[String] {
        &self.args
    }

    /// True when the name uses the reserved transformation namespace.
    pub fn is_reserved(&self) -> bool {
        self.predicate.contains(RESERVED_INFIX)
    }

    /// Same argument tuple under a suffixed predicate name, e.g.
    /// `exp(c2)` with suffix `__r1` becomes `exp__r1(c2)`.
    pub(crate) fn with_predicate_suffix(&self, suffix: &str) -> Atom {
        Atom {
            predicate: format!("{}{}", self.predicate, suffix),
            args: self.args.clone(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            write!(f, "{}", self.predicate)
        } else {
            write!(f, "{}({})", self.predicate, self.args.join(","))
        }
    }
}

impl FromStr for Atom {
    type Err = AtomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.find('(') {
            None => Atom::prop(s).map_err(|_| AtomError::Malformed(s.to_string())),
            Some(open) => {
                if !s.ends_with(')') {
                    return Err(AtomError::Malformed(s.to_string()));
                }
                let pred = &s[..open];
                let inner = &s[open + 1..s.len() - 1];
                if inner.is_empty() || inner.contains(char::is_whitespace) {
                    return Err(AtomError::Malformed(s.to_string()));
                }
                Atom::new(pred, inner.split(','))
                    .map_err(|_| AtomError::Malformed(s.to_string()))
            }
        }
    }
}
