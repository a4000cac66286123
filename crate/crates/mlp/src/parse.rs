//! The `.mlp` module text format: parsing and grounding.
//!
//! ```text
//! module alice
//! input: safe(c1), exp(c1)
//! output: buy(c1)
//! hidden: car(c1)
//! rules:
//! buy(X) :- car(X), safe(X), not exp(X).
//! car(c1).
//! {airbag(c3)}.
//! :- a, not b.
//! ```
//!
//! `%` starts a comment; `-` denotes an empty interface section. Variables
//! are uppercase-initial, constants lowercase-initial. Interface declarations
//! must be ground; rules may use variables, which grounding instantiates over
//! the module's own constant universe.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::atom::{is_constant_ident, is_variable_ident, Atom};
use crate::module::ProgramModule;
use crate::program::{Program, Rule, RuleKind};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroundError {
    #[error("grounded rule head {atom} is a declared input (rule `{rule}`)")]
    HeadIsInput { atom: Atom, rule: String },
    #[error("grounded atom {atom} is not covered by input, output or hidden declarations")]
    UncoveredAtom { atom: Atom },
}

/// A term in a schematic rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Constant(String),
    Variable(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(c) => write!(f, "{c}"),
            Term::Variable(v) => write!(f, "{v}"),
        }
    }
}

/// A possibly non-ground atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceAtom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl SourceAtom {
    fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Variable(v) => Some(v.as_str()),
            Term::Constant(_) => None,
        })
    }

    fn constants(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Constant(c) => Some(c.as_str()),
            Term::Variable(_) => None,
        })
    }

    fn substitute(&self, binding: &BTreeMap<&str, &str>) -> Atom {
        let args = self.args.iter().map(|t| match t {
            Term::Constant(c) => c.clone(),
            Term::Variable(v) => binding[v.as_str()].to_string(),
        });
        Atom::new(&self.predicate, args).expect("parsed identifiers are valid")
    }
}

impl fmt::Display for SourceAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            write!(f, "{}", self.predicate)
        } else {
            let args = self.args.iter().map(Term::to_string).collect::<Vec<_>>().join(",");
            write!(f, "{}({})", self.predicate, args)
        }
    }
}

/// A schematic rule as written in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceRule {
    pub kind: RuleKind,
    pub head: Vec<SourceAtom>,
    pub body_pos: Vec<SourceAtom>,
    pub body_neg: Vec<SourceAtom>,
}

impl SourceRule {
    fn atoms(&self) -> impl Iterator<Item = &SourceAtom> {
        self.head.iter().chain(&self.body_pos).chain(&self.body_neg)
    }

    /// Distinct variables in order of first appearance.
    fn variables(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for atom in self.atoms() {
            for v in atom.variables() {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen
    }
}

impl fmt::Display for SourceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |atoms: &[SourceAtom], prefix: &str| {
            atoms.iter().map(|a| format!("{prefix}{a}")).collect::<Vec<_>>().join(", ")
        };
        match self.kind {
            RuleKind::Normal => write!(f, "{}", self.head[0])?,
            RuleKind::Constraint => {}
            RuleKind::Choice => write!(f, "{{{}}}", join(&self.head, ""))?,
        }
        if !self.body_pos.is_empty() || !self.body_neg.is_empty() || self.kind == RuleKind::Constraint
        {
            if self.kind != RuleKind::Constraint {
                write!(f, " ")?;
            }
            write!(f, ":- ")?;
            let mut parts = Vec::new();
            if !self.body_pos.is_empty() {
                parts.push(join(&self.body_pos, ""));
            }
            if !self.body_neg.is_empty() {
                parts.push(join(&self.body_neg, "not "));
            }
            write!(f, "{}", parts.join(", "))?;
        }
        write!(f, ".")
    }
}

/// The parsed but not yet grounded module file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSource {
    pub name: String,
    pub input_decl: Vec<Atom>,
    pub output_decl: Vec<Atom>,
    pub hidden_decl: Vec<Atom>,
    pub rules: Vec<SourceRule>,
}

impl ModuleSource {
    /// All constants appearing anywhere in the source, declarations included.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for atom in self.input_decl.iter().chain(&self.output_decl).chain(&self.hidden_decl) {
            out.extend(atom.args().iter().cloned());
        }
        for rule in &self.rules {
            for atom in rule.atoms() {
                out.extend(atom.constants().map(String::from));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Tokenizer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Variable(String),
    ColonDash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Dash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Variable(s) => write!(f, "`{s}`"),
            Tok::ColonDash => write!(f, "`:-`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Dash => write!(f, "`-`"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str, start_line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (offset, raw_line) in text.lines().enumerate() {
        let line_no = start_line + offset;
        let line = match raw_line.find('%') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let mut chars = line.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            let col = i + 1;
            match c {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '(' | ')' | '{' | '}' | ',' | '.' | '-' => {
                    chars.next();
                    let tok = match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        ',' => Tok::Comma,
                        '.' => Tok::Dot,
                        _ => Tok::Dash,
                    };
                    out.push(Spanned { tok, line: line_no, col });
                }
                ':' => {
                    chars.next();
                    match chars.peek() {
                        Some(&(_, '-')) => {
                            chars.next();
                            out.push(Spanned { tok: Tok::ColonDash, line: line_no, col });
                        }
                        _ => {
                            return Err(ParseError::new(line_no, col, "expected `:-`"));
                        }
                    }
                }
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let start = i;
                    let mut end = i;
                    while let Some(&(j, d)) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            end = j + d.len_utf8();
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let word = &line[start..end];
                    let tok = if is_constant_ident(word) {
                        Tok::Ident(word.to_string())
                    } else if is_variable_ident(word) {
                        Tok::Variable(word.to_string())
                    } else {
                        return Err(ParseError::new(
                            line_no,
                            col,
                            format!("invalid identifier `{word}`"),
                        ));
                    };
                    out.push(Spanned { tok, line: line_no, col });
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!("unexpected character `{other}`"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Tokens {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
}

impl Tokens {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&Spanned> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        match self.toks.get(self.pos) {
            Some(s) => ParseError::new(s.line, s.col, message),
            None => ParseError::new(self.end_line, 1, message),
        }
    }
}

fn parse_source_atom(toks: &mut Tokens) -> Result<SourceAtom, ParseError> {
    let (pred, line, col) = match toks.next() {
        Some(Spanned { tok: Tok::Ident(name), line, col }) => (name.clone(), *line, *col),
        Some(s) => {
            return Err(ParseError::new(s.line, s.col, format!("expected atom, found {}", s.tok)))
        }
        None => return Err(toks.err_here("expected atom, found end of input")),
    };
    if pred == "not" {
        return Err(ParseError::new(line, col, "`not` is reserved and cannot name an atom"));
    }
    let mut args = Vec::new();
    if matches!(toks.peek(), Some(Spanned { tok: Tok::LParen, .. })) {
        toks.next();
        loop {
            match toks.next() {
                Some(Spanned { tok: Tok::Ident(c), .. }) => args.push(Term::Constant(c.clone())),
                Some(Spanned { tok: Tok::Variable(v), .. }) => args.push(Term::Variable(v.clone())),
                Some(s) => {
                    return Err(ParseError::new(
                        s.line,
                        s.col,
                        format!("expected argument, found {}", s.tok),
                    ))
                }
                None => return Err(toks.err_here("expected argument, found end of input")),
            }
            match toks.next() {
                Some(Spanned { tok: Tok::Comma, .. }) => continue,
                Some(Spanned { tok: Tok::RParen, .. }) => break,
                Some(s) => {
                    return Err(ParseError::new(
                        s.line,
                        s.col,
                        format!("expected `,` or `)`, found {}", s.tok),
                    ))
                }
                None => return Err(toks.err_here("expected `)`, found end of input")),
            }
        }
    }
    Ok(SourceAtom { predicate: pred, args })
}

/// Parses `atom` or `not atom`; returns (atom, negated).
fn parse_literal(toks: &mut Tokens) -> Result<(SourceAtom, bool), ParseError> {
    if let Some(Spanned { tok: Tok::Ident(word), .. }) = toks.peek() {
        if word == "not" {
            toks.next();
            let atom = parse_source_atom(toks)?;
            return Ok((atom, true));
        }
    }
    Ok((parse_source_atom(toks)?, false))
}

fn parse_body(toks: &mut Tokens, rule: &mut SourceRule) -> Result<(), ParseError> {
    loop {
        let (atom, negated) = parse_literal(toks)?;
        if negated {
            rule.body_neg.push(atom);
        } else {
            rule.body_pos.push(atom);
        }
        match toks.next() {
            Some(Spanned { tok: Tok::Comma, .. }) => continue,
            Some(Spanned { tok: Tok::Dot, .. }) => return Ok(()),
            Some(s) => {
                return Err(ParseError::new(
                    s.line,
                    s.col,
                    format!("expected `,` or `.`, found {}", s.tok),
                ))
            }
            None => return Err(toks.err_here("expected `.`, found end of input")),
        }
    }
}

fn parse_rule(toks: &mut Tokens) -> Result<SourceRule, ParseError> {
    match toks.peek() {
        Some(Spanned { tok: Tok::ColonDash, .. }) => {
            toks.next();
            let mut rule = SourceRule {
                kind: RuleKind::Constraint,
                head: Vec::new(),
                body_pos: Vec::new(),
                body_neg: Vec::new(),
            };
            parse_body(toks, &mut rule)?;
            Ok(rule)
        }
        Some(Spanned { tok: Tok::LBrace, line, col }) => {
            let (line, col) = (*line, *col);
            toks.next();
            let mut head = Vec::new();
            if matches!(toks.peek(), Some(Spanned { tok: Tok::RBrace, .. })) {
                return Err(ParseError::new(line, col, "choice rule requires at least one head atom"));
            }
            loop {
                head.push(parse_source_atom(toks)?);
                match toks.next() {
                    Some(Spanned { tok: Tok::Comma, .. }) => continue,
                    Some(Spanned { tok: Tok::RBrace, .. }) => break,
                    Some(s) => {
                        return Err(ParseError::new(
                            s.line,
                            s.col,
                            format!("expected `,` or `}}`, found {}", s.tok),
                        ))
                    }
                    None => return Err(toks.err_here("expected `}`, found end of input")),
                }
            }
            let mut rule =
                SourceRule { kind: RuleKind::Choice, head, body_pos: Vec::new(), body_neg: Vec::new() };
            match toks.next() {
                Some(Spanned { tok: Tok::Dot, .. }) => Ok(rule),
                Some(Spanned { tok: Tok::ColonDash, .. }) => {
                    parse_body(toks, &mut rule)?;
                    Ok(rule)
                }
                Some(s) => Err(ParseError::new(
                    s.line,
                    s.col,
                    format!("expected `.` or `:-`, found {}", s.tok),
                )),
                None => Err(toks.err_here("expected `.`, found end of input")),
            }
        }
        Some(_) => {
            let head = parse_source_atom(toks)?;
            let mut rule = SourceRule {
                kind: RuleKind::Normal,
                head: vec![head],
                body_pos: Vec::new(),
                body_neg: Vec::new(),
            };
            match toks.next() {
                Some(Spanned { tok: Tok::Dot, .. }) => Ok(rule),
                Some(Spanned { tok: Tok::ColonDash, .. }) => {
                    parse_body(toks, &mut rule)?;
                    Ok(rule)
                }
                Some(s) => Err(ParseError::new(
                    s.line,
                    s.col,
                    format!("expected `.` or `:-`, found {}", s.tok),
                )),
                None => Err(toks.err_here("expected `.`, found end of input")),
            }
        }
        None => Err(toks.err_here("expected rule")),
    }
}

fn parse_interface_line(
    body: &str,
    line_no: usize,
    section: &str,
) -> Result<Vec<Atom>, ParseError> {
    let trimmed = body.trim();
    if trimmed == "-" {
        return Ok(Vec::new());
    }
    let mut toks = Tokens { toks: tokenize(body, line_no)?, pos: 0, end_line: line_no };
    let mut out = Vec::new();
    loop {
        let atom = parse_source_atom(&mut toks)?;
        if let Some(v) = atom.variables().next() {
            return Err(ParseError::new(
                line_no,
                1,
                format!("{section} declaration must be ground, found variable `{v}` in `{atom}`"),
            ));
        }
        let ground =
            Atom::new(&atom.predicate, atom.constants()).expect("parsed identifiers are valid");
        if !out.contains(&ground) {
            out.push(ground);
        }
        match toks.next() {
            Some(Spanned { tok: Tok::Comma, .. }) => continue,
            None => break,
            Some(s) => {
                return Err(ParseError::new(
                    s.line,
                    s.col,
                    format!("expected `,` between atoms, found {}", s.tok),
                ))
            }
        }
    }
    Ok(out)
}

/// Parses a module file into its source form. No grounding is performed.
pub fn parse_module(text: &str) -> Result<ModuleSource, ParseError> {
    let mut name = None;
    let mut sections: BTreeMap<&'static str, Vec<Atom>> = BTreeMap::new();
    let mut rules_start = None;

    let mut lines = text.lines().enumerate();
    for (idx, raw) in &mut lines {
        let line_no = idx + 1;
        let line = match raw.find('%') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if name.is_none() {
            let Some(rest) = trimmed.strip_prefix("module") else {
                return Err(ParseError::new(line_no, 1, "expected `module <name>` header"));
            };
            let candidate = rest.trim();
            if !is_constant_ident(candidate) {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("invalid module name `{candidate}`"),
                ));
            }
            name = Some(candidate.to_string());
            continue;
        }
        if trimmed == "rules:" {
            rules_start = Some(line_no);
            break;
        }
        let Some((keyword, body)) = trimmed.split_once(':') else {
            return Err(ParseError::new(
                line_no,
                1,
                "expected `input:`, `output:`, `hidden:` or `rules:`",
            ));
        };
        let section = match keyword.trim() {
            "input" => "input",
            "output" => "output",
            "hidden" => "hidden",
            other => {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("unknown section `{other}`"),
                ))
            }
        };
        if sections.contains_key(section) {
            return Err(ParseError::new(line_no, 1, format!("duplicate section `{section}`")));
        }
        let atoms = parse_interface_line(body, line_no, section)?;
        sections.insert(section, atoms);
    }

    let Some(name) = name else {
        return Err(ParseError::new(1, 1, "expected `module <name>` header"));
    };
    let Some(rules_line) = rules_start else {
        let line = text.lines().count().max(1);
        return Err(ParseError::new(line, 1, "missing `rules:` section"));
    };
    for section in ["input", "output", "hidden"] {
        if !sections.contains_key(section) {
            return Err(ParseError::new(rules_line, 1, format!("missing `{section}:` section")));
        }
    }

    let input_decl = sections.remove("input").unwrap();
    let output_decl = sections.remove("output").unwrap();
    let hidden_decl = sections.remove("hidden").unwrap();
    for (a, b, left, right) in [
        ("input", "output", &input_decl, &output_decl),
        ("input", "hidden", &input_decl, &hidden_decl),
        ("output", "hidden", &output_decl, &hidden_decl),
    ] {
        if let Some(shared) = left.iter().find(|atom| right.contains(atom)) {
            return Err(ParseError::new(
                rules_line,
                1,
                format!("atom {shared} declared in both `{a}` and `{b}` sections"),
            ));
        }
    }

    let rules_text: String = text
        .lines()
        .skip(rules_line)
        .collect::<Vec<_>>()
        .join("\n");
    let total_lines = text.lines().count();
    let mut toks = Tokens {
        toks: tokenize(&rules_text, rules_line + 1)?,
        pos: 0,
        end_line: total_lines.max(1),
    };
    let mut rules = Vec::new();
    while toks.peek().is_some() {
        rules.push(parse_rule(&mut toks)?);
    }

    Ok(ModuleSource { name, input_decl, output_decl, hidden_decl, rules })
}

/// Instantiates every rule over the module's own constant universe and checks
/// the result against the declared interface.
///
/// Each rule yields `|constants|^k` instances for its `k` distinct variables;
/// there is no safety requirement, so a head-only variable still ranges over
/// the full constant set.
pub fn ground(src: &ModuleSource) -> Result<ProgramModule, GroundError> {
    let constants = src.constants();
    let consts: Vec<&str> = constants.iter().map(String::as_str).collect();
    let input: BTreeSet<Atom> = src.input_decl.iter().cloned().collect();
    let declared: BTreeSet<Atom> = src
        .input_decl
        .iter()
        .chain(&src.output_decl)
        .chain(&src.hidden_decl)
        .cloned()
        .collect();

    let mut program = Program::new();
    for rule in &src.rules {
        let vars = rule.variables();
        let mut binding: BTreeMap<&str, &str> = BTreeMap::new();
        let mut indices = vec![0usize; vars.len()];
        loop {
            if !vars.is_empty() && consts.is_empty() {
                break;
            }
            for (v, &i) in vars.iter().zip(&indices) {
                binding.insert(v, consts[i]);
            }
            let head: Vec<Atom> = rule.head.iter().map(|a| a.substitute(&binding)).collect();
            let pos: Vec<Atom> = rule.body_pos.iter().map(|a| a.substitute(&binding)).collect();
            let neg: Vec<Atom> = rule.body_neg.iter().map(|a| a.substitute(&binding)).collect();
            for atom in head.iter().chain(&pos).chain(&neg) {
                if !declared.contains(atom) {
                    return Err(GroundError::UncoveredAtom { atom: atom.clone() });
                }
            }
            if let Some(atom) = head.iter().find(|a| input.contains(a)) {
                return Err(GroundError::HeadIsInput {
                    atom: atom.clone(),
                    rule: rule.to_string(),
                });
            }
            let ground_rule = match rule.kind {
                RuleKind::Normal => {
                    let mut heads = head;
                    Rule::normal(heads.pop().unwrap(), pos, neg)
                }
                RuleKind::Constraint => Rule::constraint(pos, neg),
                RuleKind::Choice => Rule::choice(head, pos, neg),
            };
            program.push(ground_rule);

            // Advance the substitution odometer.
            if vars.is_empty() {
                break;
            }
            let mut k = indices.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                indices[k] += 1;
                if indices[k] < consts.len() {
                    break;
                }
                indices[k] = 0;
            }
            if indices.iter().all(|&i| i == 0) {
                break;
            }
        }
    }

    let module = ProgramModule::new(
        program,
        src.input_decl.iter().cloned(),
        src.output_decl.iter().cloned(),
        src.hidden_decl.iter().cloned(),
    );
    debug_assert!(module.is_valid());
    Ok(module)
}

/// Convenience: parse and ground in one step, as the CLI does.
pub fn load_module(text: &str) -> Result<(String, ProgramModule), LoadError> {
    let src = parse_module(text)?;
    let module = ground(&src)?;
    Ok((src.name, module))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: &str) -> Atom {
        s.parse().unwrap()
    }

    const PB: &str = "\
module pb
input: -
output: exp(c2), exp(c3)
hidden: -
rules:
exp(c2).
";

    const PA: &str = "\
module pa
input: safe(c1), safe(c2), safe(c3), exp(c1), exp(c2), exp(c3)
output: buy(c1), buy(c2), buy(c3)
hidden: car(c1), car(c2), car(c3)
rules:
buy(X) :- car(X), safe(X), not exp(X).
car(c1). car(c2). car(c3).
";

    const PMG2: &str = "\
module mg2
input: -
output: safe(c1), safe(c2), safe(c3)
hidden: airbag(c1), airbag(c2), airbag(c3), car(c1), car(c2), car(c3)
rules:
safe(X) :- car(X), airbag(X).
car(c1). car(c2). car(c3).
airbag(c1).
{airbag(c3)}.
";

    #[test]
    fn parses_pb() {
        let src = parse_module(PB).unwrap();
        assert_eq!(src.name, "pb");
        assert_eq!(src.rules.len(), 1);
        assert_eq!(src.output_decl, vec![at("exp(c2)"), at("exp(c3)")]);
        assert!(src.input_decl.is_empty());
    }

    #[test]
    fn parses_schematic_rule() {
        let src = parse_module(PA).unwrap();
        let rule = &src.rules[0];
        assert_eq!(rule.kind, RuleKind::Normal);
        assert_eq!(rule.body_pos.len(), 2);
        assert_eq!(rule.body_neg.len(), 1);
        assert_eq!(rule.to_string(), "buy(X) :- car(X), safe(X), not exp(X).");
    }

    #[test]
    fn parses_choice_rule_with_empty_body() {
        let src = parse_module(PMG2).unwrap();
        let choice = src.rules.last().unwrap();
        assert_eq!(choice.kind, RuleKind::Choice);
        assert!(choice.body_pos.is_empty() && choice.body_neg.is_empty());
    }

    #[test]
    fn grounds_pa_to_three_rules_and_three_facts() {
        let m = ground(&parse_module(PA).unwrap()).unwrap();
        assert_eq!(m.rules().len(), 6);
        let grounded: Vec<String> = m.rules().rules().iter().map(|r| r.to_string()).collect();
        assert!(grounded.contains(&"buy(c1) :- car(c1), safe(c1), not exp(c1).".to_string()));
        assert!(grounded.contains(&"buy(c3) :- car(c3), safe(c3), not exp(c3).".to_string()));
        assert!(grounded.contains(&"car(c2).".to_string()));
        assert!(m.is_valid());
    }

    #[test]
    fn grounds_pmg2() {
        let m = ground(&parse_module(PMG2).unwrap()).unwrap();
        // 3 safe rules, 4 facts, 1 choice rule.
        assert_eq!(m.rules().len(), 8);
        assert!(m.rules().has_choice_rules());
    }

    #[test]
    fn grounding_is_identity_on_ground_sources() {
        let src = parse_module(PB).unwrap();
        let m = ground(&src).unwrap();
        assert_eq!(m.rules().len(), 1);
        assert_eq!(m.rules().rules()[0], Rule::fact(at("exp(c2)")));
    }

    #[test]
    fn reparsing_printed_module_is_identity() {
        for text in [PB, PA, PMG2] {
            let m = ground(&parse_module(text).unwrap()).unwrap();
            let printed = m.to_text("roundtrip");
            let (name, again) = load_module(&printed).unwrap();
            assert_eq!(name, "roundtrip");
            assert_eq!(again, m);
        }
    }

    #[test]
    fn grounded_rule_count_follows_variable_count() {
        let text = "\
module counts
input: -
output: p(c1,c1), p(c1,c2), p(c2,c1), p(c2,c2), q(c1), q(c2)
hidden: -
rules:
p(X,Y) :- not q(X), not q(Y).
";
        let src = parse_module(text).unwrap();
        let m = ground(&src).unwrap();
        // 2 constants, 2 distinct variables: 2^2 instances.
        assert_eq!(m.rules().len(), 4);
    }

    #[test]
    fn head_only_variable_ranges_over_all_constants() {
        let text = "\
module unsafe_head
input: -
output: p(c1), p(c2)
hidden: q
rules:
p(X) :- not q.
";
        let m = ground(&parse_module(text).unwrap()).unwrap();
        assert_eq!(m.rules().len(), 2);
    }

    #[test]
    fn duplicate_section_is_rejected() {
        let text = "module m\ninput: -\ninput: -\noutput: -\nhidden: -\nrules:\n";
        let err = parse_module(text).unwrap_err();
        assert!(err.message.contains("duplicate section"), "{err}");
        assert_eq!(err.line, 3);
    }

    #[test]
    fn atom_in_two_sections_is_rejected() {
        let text = "module m\ninput: a\noutput: a\nhidden: -\nrules:\n";
        let err = parse_module(text).unwrap_err();
        assert!(err.message.contains("declared in both"), "{err}");
    }

    #[test]
    fn variable_in_interface_is_rejected() {
        let text = "module m\ninput: p(X)\noutput: -\nhidden: -\nrules:\n";
        let err = parse_module(text).unwrap_err();
        assert!(err.message.contains("must be ground"), "{err}");
    }

    #[test]
    fn empty_choice_head_is_rejected() {
        let text = "module m\ninput: -\noutput: a\nhidden: -\nrules:\n{}.\n";
        let err = parse_module(text).unwrap_err();
        assert!(err.message.contains("at least one head atom"), "{err}");
        assert_eq!(err.line, 6);
    }

    #[test]
    fn syntax_error_carries_position() {
        let text = "module m\ninput: -\noutput: a\nhidden: -\nrules:\na :- ,\n";
        let err = parse_module(text).unwrap_err();
        assert_eq!(err.line, 6);
        assert!(err.col > 1);
    }

    #[test]
    fn grounded_head_as_input_is_rejected() {
        let text = "module m\ninput: a\noutput: b\nhidden: -\nrules:\na :- b.\n";
        let err = ground(&parse_module(text).unwrap()).unwrap_err();
        assert!(matches!(err, GroundError::HeadIsInput { .. }));
    }

    #[test]
    fn undeclared_grounded_atom_is_rejected() {
        let text = "module m\ninput: -\noutput: p(c1)\nhidden: q(c1), q(c2)\nrules:\np(X) :- q(X).\n";
        let err = ground(&parse_module(text).unwrap()).unwrap_err();
        assert_eq!(err, GroundError::UncoveredAtom { atom: at("p(c2)") });
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "% header comment\nmodule m % trailing\n\ninput: -\noutput: a\nhidden: -\nrules:\n% a fact\na.\n";
        let (_, m) = load_module(text).unwrap();
        assert_eq!(m.rules().len(), 1);
    }
}
