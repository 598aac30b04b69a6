//! The line-oriented `.fis` rule-file format.
//!
//! ```text
//! # comment
//! input <name> <min> <max> <unit>
//! output <name> <min> <max> <unit>
//! term <var> <label> tri <a> <b> <c>
//! term <var> <label> trap <a> <b> <c> <d>
//! rule if <var> is <label> [and <var> is <label>]* then <out>=<value> [, <out>=<value>]*
//! ```
//!
//! Parsing is two-phase. The first phase tokenizes every line into a
//! [`FisDocument`] and stops at the first syntax error. The second phase
//! assembles a [`FuzzyInferenceSystem`], validates it, and reports the
//! violation with the smallest source position. Either a fully valid system
//! is returned or a single [`ParseError`].

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::fuzzy::{
    Condition, FuzzyInferenceSystem, LinguisticVariable, Location, MembershipFunction,
    OutputVariable, Term, TskRule, ViolationKind,
};

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownVariable,
    UnknownLabel,
    DuplicateRule,
    IncompleteRuleBase,
    BadNumber,
    /// Any other broken invariant: duplicate declarations, unordered
    /// breakpoints, non-partition terms, missing consequents.
    InvalidDefinition,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Syntax => "syntax",
            Self::UnknownVariable => "unknown-variable",
            Self::UnknownLabel => "unknown-label",
            Self::DuplicateRule => "duplicate-rule",
            Self::IncompleteRuleBase => "incomplete-rule-base",
            Self::BadNumber => "bad-number",
            Self::InvalidDefinition => "invalid-definition",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {kind}: {message}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(position: Position, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self {
            position,
            kind,
            message: message.into(),
        }
    }
}

/// A name together with where it was written.
#[derive(Debug, Clone, PartialEq)]
pub struct Spanned<T> {
    pub value: T,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Input {
        name: Spanned<String>,
        min: f64,
        max: f64,
        unit: String,
    },
    Output {
        name: Spanned<String>,
        min: f64,
        max: f64,
        unit: String,
    },
    Term {
        variable: Spanned<String>,
        label: Spanned<String>,
        mf: MembershipFunction,
    },
    Rule {
        conditions: Vec<(Spanned<String>, Spanned<String>)>,
        assignments: Vec<(Spanned<String>, f64)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Declaration {
    pub position: Position,
    pub statement: Statement,
}

/// Syntactic form of a `.fis` file: statements in source order.
#[derive(Debug, Clone, PartialEq)]
pub struct FisDocument {
    pub source_name: String,
    pub declarations: Vec<Declaration>,
    /// Position just past the last character, where end-of-document
    /// errors are reported.
    pub end: Position,
}

/// Parses and validates `source`.
pub fn parse(source: &str) -> Result<FuzzyInferenceSystem, ParseError> {
    parse_document("<input>", source)?.build()
}

/// Tokenizes `source` into statements without semantic checks.
pub fn parse_document(source_name: &str, source: &str) -> Result<FisDocument, ParseError> {
    let mut declarations = Vec::new();
    let mut end = Position { line: 1, column: 1 };
    for (index, line) in source.lines().enumerate() {
        end = Position {
            line: index + 1,
            column: line.chars().count() + 1,
        };
        let tokens = tokenize(line, index + 1);
        if tokens.is_empty() {
            continue;
        }
        let mut cursor = Cursor {
            tokens: &tokens,
            next: 0,
            line: index + 1,
            line_len: line.chars().count(),
        };
        let statement = parse_statement(&mut cursor)?;
        cursor.expect_end()?;
        declarations.push(Declaration {
            position: tokens[0].position,
            statement,
        });
    }
    Ok(FisDocument {
        source_name: source_name.to_string(),
        declarations,
        end,
    })
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    position: Position,
}

fn tokenize(line: &str, line_number: usize) -> Vec<Token<'_>> {
    let position = |column| Position {
        line: line_number,
        column,
    };
    let mut tokens = Vec::new();
    // (byte offset, column) of the word being accumulated
    let mut start: Option<(usize, usize)> = None;
    for (column, (byte, ch)) in line.char_indices().enumerate() {
        let column = column + 1;
        let boundary = ch == '#' || ch == '=' || ch == ',' || ch.is_whitespace();
        if !boundary {
            start.get_or_insert((byte, column));
            continue;
        }
        if let Some((from, col)) = start.take() {
            tokens.push(Token {
                text: &line[from..byte],
                position: position(col),
            });
        }
        match ch {
            '#' => return tokens,
            '=' | ',' => tokens.push(Token {
                text: &line[byte..byte + 1],
                position: position(column),
            }),
            _ => {}
        }
    }
    if let Some((from, col)) = start {
        tokens.push(Token {
            text: &line[from..],
            position: position(col),
        });
    }
    tokens
}

struct Cursor<'t, 'a> {
    tokens: &'t [Token<'a>],
    next: usize,
    line: usize,
    line_len: usize,
}

impl<'a> Cursor<'_, 'a> {
    fn end_position(&self) -> Position {
        Position {
            line: self.line,
            column: self.line_len + 1,
        }
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.next)
    }

    fn bump(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        match self.tokens.get(self.next) {
            Some(tok) => {
                self.next += 1;
                Ok(tok.clone())
            }
            None => Err(ParseError::new(
                self.end_position(),
                ParseErrorKind::Syntax,
                format!("expected {what}, found end of line"),
            )),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Token<'a>, ParseError> {
        let tok = self.bump(&format!("`{word}`"))?;
        if tok.text == word {
            Ok(tok)
        } else {
            Err(ParseError::new(
                tok.position,
                ParseErrorKind::Syntax,
                format!("expected `{word}`, found `{}`", tok.text),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> Result<Spanned<String>, ParseError> {
        let tok = self.bump(what)?;
        if is_identifier(tok.text) {
            Ok(Spanned {
                value: tok.text.to_string(),
                position: tok.position,
            })
        } else {
            Err(ParseError::new(
                tok.position,
                ParseErrorKind::Syntax,
                format!("expected {what}, found `{}`", tok.text),
            ))
        }
    }

    fn number(&mut self, what: &str) -> Result<f64, ParseError> {
        let tok = self.bump(what)?;
        parse_number(tok.text).ok_or_else(|| {
            ParseError::new(
                tok.position,
                ParseErrorKind::BadNumber,
                format!("`{}` is not a valid number for {what}", tok.text),
            )
        })
    }

    fn unit(&mut self) -> Result<String, ParseError> {
        let tok = self.bump("unit")?;
        if tok.text == "=" || tok.text == "," {
            return Err(ParseError::new(
                tok.position,
                ParseErrorKind::Syntax,
                format!("expected unit, found `{}`", tok.text),
            ));
        }
        Ok(tok.text.to_string())
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(tok) => Err(ParseError::new(
                tok.position,
                ParseErrorKind::Syntax,
                format!("unexpected `{}` at end of statement", tok.text),
            )),
        }
    }
}

const KEYWORDS: [&str; 10] = [
    "input", "output", "term", "rule", "if", "is", "and", "then", "tri", "trap",
];

fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&text)
}

/// Decimal with optional sign, fraction and exponent. Rejects `inf`, `nan`
/// and hex forms that `str::parse` would otherwise accept.
fn parse_number(text: &str) -> Option<f64> {
    let bytes = text.as_bytes();
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+' | b'-')) {
        i += 1;
    }
    let int_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return None;
    }
    if i < bytes.len() && matches!(bytes[i], b'e' | b'E') {
        i += 1;
        if i < bytes.len() && matches!(bytes[i], b'+' | b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return None;
        }
    }
    if i != bytes.len() {
        return None;
    }
    text.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn parse_statement(cur: &mut Cursor<'_, '_>) -> Result<Statement, ParseError> {
    let head = cur.bump("statement")?;
    match head.text {
        "input" | "output" => {
            let name = cur.ident("variable name")?;
            let min = cur.number("universe minimum")?;
            let max = cur.number("universe maximum")?;
            let unit = cur.unit()?;
            Ok(if head.text == "input" {
                Statement::Input {
                    name,
                    min,
                    max,
                    unit,
                }
            } else {
                Statement::Output {
                    name,
                    min,
                    max,
                    unit,
                }
            })
        }
        "term" => {
            let variable = cur.ident("variable name")?;
            let label = cur.ident("term label")?;
            let shape = cur.bump("`tri` or `trap`")?;
            let mf = match shape.text {
                "tri" => MembershipFunction::triangular(
                    cur.number("breakpoint a")?,
                    cur.number("breakpoint b")?,
                    cur.number("breakpoint c")?,
                ),
                "trap" => MembershipFunction::trapezoidal(
                    cur.number("breakpoint a")?,
                    cur.number("breakpoint b")?,
                    cur.number("breakpoint c")?,
                    cur.number("breakpoint d")?,
                ),
                other => {
                    return Err(ParseError::new(
                        shape.position,
                        ParseErrorKind::Syntax,
                        format!("expected `tri` or `trap`, found `{other}`"),
                    ))
                }
            };
            Ok(Statement::Term {
                variable,
                label,
                mf,
            })
        }
        "rule" => {
            cur.keyword("if")?;
            let mut conditions = Vec::new();
            loop {
                let variable = cur.ident("input variable")?;
                cur.keyword("is")?;
                let label = cur.ident("term label")?;
                conditions.push((variable, label));
                match cur.peek().map(|t| t.text) {
                    Some("and") => {
                        cur.next += 1;
                    }
                    _ => break,
                }
            }
            cur.keyword("then")?;
            let mut assignments = Vec::new();
            loop {
                let output = cur.ident("output variable")?;
                cur.keyword("=")?;
                let value = cur.number("consequent value")?;
                assignments.push((output, value));
                match cur.peek().map(|t| t.text) {
                    Some(",") => {
                        cur.next += 1;
                    }
                    _ => break,
                }
            }
            Ok(Statement::Rule {
                conditions,
                assignments,
            })
        }
        other => Err(ParseError::new(
            head.position,
            ParseErrorKind::Syntax,
            format!("unknown statement `{other}`; expected input, output, term or rule"),
        )),
    }
}

/// Source positions of every structural element, indexed like
/// [`Location`].
#[derive(Default)]
struct SourceMap {
    inputs: Vec<Position>,
    terms: Vec<Vec<Position>>,
    outputs: Vec<Position>,
    rules: Vec<Position>,
    conditions: Vec<Vec<(Position, Position)>>,
    assignments: Vec<Vec<Position>>,
}

impl FisDocument {
    /// Assembles and validates the system described by this document.
    pub fn build(&self) -> Result<FuzzyInferenceSystem, ParseError> {
        let mut inputs: Vec<LinguisticVariable> = Vec::new();
        let mut outputs: Vec<OutputVariable> = Vec::new();
        let mut rules: Vec<TskRule> = Vec::new();
        let mut map = SourceMap::default();
        let mut errors: Vec<ParseError> = Vec::new();

        for decl in &self.declarations {
            match &decl.statement {
                Statement::Input {
                    name,
                    min,
                    max,
                    unit,
                } => {
                    inputs.push(LinguisticVariable::new(&name.value, *min, *max, unit));
                    map.inputs.push(name.position);
                    map.terms.push(Vec::new());
                }
                Statement::Output {
                    name,
                    min,
                    max,
                    unit,
                } => {
                    outputs.push(OutputVariable::new(&name.value, *min, *max, unit));
                    map.outputs.push(name.position);
                }
                Statement::Term {
                    variable,
                    label,
                    mf,
                } => match inputs.iter().position(|v| v.name == variable.value) {
                    Some(i) => {
                        inputs[i].terms.push(Term {
                            label: label.value.clone(),
                            mf: *mf,
                        });
                        map.terms[i].push(label.position);
                    }
                    None => {
                        let message = if outputs.iter().any(|o| o.name == variable.value) {
                            format!("`{}` is an output; terms belong to inputs", variable.value)
                        } else {
                            format!("term for undeclared input `{}`", variable.value)
                        };
                        errors.push(ParseError::new(
                            variable.position,
                            ParseErrorKind::UnknownVariable,
                            message,
                        ));
                    }
                },
                Statement::Rule {
                    conditions,
                    assignments,
                } => {
                    let mut rule = TskRule::new();
                    for (var, label) in conditions {
                        rule.antecedent.push(Condition {
                            variable: var.value.clone(),
                            label: label.value.clone(),
                        });
                    }
                    for (out, value) in assignments {
                        rule.consequent.push((out.value.clone(), *value));
                    }
                    rules.push(rule);
                    map.rules.push(decl.position);
                    map.conditions.push(
                        conditions
                            .iter()
                            .map(|(v, l)| (v.position, l.position))
                            .collect(),
                    );
                    map.assignments
                        .push(assignments.iter().map(|(o, _)| o.position).collect());
                }
            }
        }

        let fis = FuzzyInferenceSystem::from_parts(inputs, outputs, rules);
        let end = self.end;
        for violation in fis.validate() {
            let kind = match violation.kind {
                ViolationKind::UnknownVariable | ViolationKind::UnknownOutput => {
                    ParseErrorKind::UnknownVariable
                }
                ViolationKind::UnknownLabel => ParseErrorKind::UnknownLabel,
                ViolationKind::DuplicateRule => ParseErrorKind::DuplicateRule,
                ViolationKind::IncompleteRuleBase => ParseErrorKind::IncompleteRuleBase,
                _ => ParseErrorKind::InvalidDefinition,
            };
            let position = match violation.location {
                Location::System => end,
                Location::Input(i) => map.inputs[i],
                Location::Term { input, term } => map.terms[input][term],
                Location::Output(o) => map.outputs[o],
                // A missing assignment is noticed at the end of the list.
                Location::Rule(r) if violation.kind == ViolationKind::MissingConsequent => {
                    map.assignments[r].last().copied().unwrap_or(map.rules[r])
                }
                Location::Rule(r) => map.rules[r],
                Location::Conjunct { rule, conjunct } => {
                    let (var, label) = map.conditions[rule][conjunct];
                    if violation.kind == ViolationKind::UnknownLabel {
                        label
                    } else {
                        var
                    }
                }
                Location::Consequent { rule, index } => map.assignments[rule][index],
            };
            errors.push(ParseError::new(position, kind, violation.message));
        }

        match errors.into_iter().min_by_key(|e| e.position) {
            Some(first) => Err(first),
            None => Ok(fis),
        }
    }
}

/// Canonical text of `fis`: each input followed by its terms, then the
/// outputs, then one rule per line.
pub fn format(fis: &FuzzyInferenceSystem) -> String {
    let mut out = String::new();
    for var in fis.inputs() {
        let _ = writeln!(
            out,
            "input {} {} {} {}",
            var.name,
            num(var.min),
            num(var.max),
            var.unit
        );
        for term in &var.terms {
            let shape = match term.mf {
                MembershipFunction::Triangular { a, b, c } => {
                    format!("tri {} {} {}", num(a), num(b), num(c))
                }
                MembershipFunction::Trapezoidal { a, b, c, d } => {
                    format!("trap {} {} {} {}", num(a), num(b), num(c), num(d))
                }
            };
            let _ = writeln!(out, "term {} {} {}", var.name, term.label, shape);
        }
        out.push('\n');
    }
    for o in fis.outputs() {
        let _ = writeln!(
            out,
            "output {} {} {} {}",
            o.name,
            num(o.min),
            num(o.max),
            o.unit
        );
    }
    if !fis.rules().is_empty() {
        out.push('\n');
    }
    for rule in fis.rules() {
        let conditions = rule
            .antecedent
            .iter()
            .map(|c| format!("{} is {}", c.variable, c.label))
            .collect::<Vec<_>>()
            .join(" and ");
        let assignments = rule
            .consequent
            .iter()
            .map(|(name, z)| format!("{name}={}", num(*z)))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "rule if {conditions} then {assignments}");
    }
    out
}

/// Shortest text that parses back to exactly `x`.
fn num(x: f64) -> String {
    let magnitude = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&magnitude) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
