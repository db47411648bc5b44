//! WCNF text formats. Two input dialects are auto-detected:
//!
//! * DIMACS WCNF — `p wcnf <n> <m>` header, clause lines `<w> <lit>… 0`,
//!   `c` comment lines;
//! * the benchmark-library format — first non-comment line `<n> <m>`, then
//!   one clause per line as `<w> <k> <lit1> … <litk>`.
//!
//! Serialization always emits DIMACS WCNF, so parse→serialize normalizes.

use super::{FormulaError, Literal, WeightedClause, WeightedInstance};
use thiserror::Error;

/// A parse error with the 1-based source line it occurred on.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("no instance data found")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("clause weight must be a positive integer, got {0:?}")]
    BadWeight(String),
    #[error("bad literal token {0:?}")]
    BadLiteral(String),
    #[error("literal references variable {variable}, outside 1..={num_variables}")]
    LiteralOutOfRange { variable: u32, num_variables: u32 },
    #[error("clause line does not end with 0")]
    MissingTerminator,
    #[error("unexpected tokens after terminating 0")]
    TrailingTokens,
    #[error("clause has no literals")]
    EmptyClause,
    #[error("header declares {header} clauses but the file contains {actual}")]
    ClauseCountMismatch { header: usize, actual: usize },
    #[error("clause declares {declared} literals but lists {actual}")]
    LiteralCountMismatch { declared: usize, actual: usize },
}

/// Non-fatal findings reported alongside a parsed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// Clause contains both polarities of a variable; it is kept and is
    /// satisfied by every assignment.
    TautologicalClause { clause: u32, line: usize },
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseWarning::TautologicalClause { clause, line } => write!(
                f,
                "clause {clause} (line {line}) is a tautology; it is satisfied by every assignment"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedWcnf {
    pub instance: WeightedInstance,
    pub warnings: Vec<ParseWarning>,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn is_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('c')
}

/// Parses either dialect, detected by the presence of a `p` header line.
pub fn parse_wcnf(text: &str) -> Result<ParsedWcnf, ParseError> {
    // (1-based line number, content) for non-comment lines.
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !is_comment(l))
        .collect();
    let Some(&(first_no, first)) = lines.first() else {
        return Err(err(text.lines().count().max(1), ParseErrorKind::MissingHeader));
    };
    if first.trim_start().starts_with('p') {
        parse_dimacs(first_no, first, &lines[1..])
    } else {
        parse_benchmark(first_no, first, &lines[1..])
    }
}

fn parse_header_counts(line_no: usize, tokens: &[&str]) -> Result<(u32, usize), ParseError> {
    let n: u32 = tokens[0].parse().map_err(|_| {
        err(
            line_no,
            ParseErrorKind::MalformedHeader(format!("bad variable count {:?}", tokens[0])),
        )
    })?;
    let m: usize = tokens[1].parse().map_err(|_| {
        err(
            line_no,
            ParseErrorKind::MalformedHeader(format!("bad clause count {:?}", tokens[1])),
        )
    })?;
    Ok((n, m))
}

fn parse_weight(line_no: usize, token: &str) -> Result<u64, ParseError> {
    match token.parse::<i128>() {
        Ok(w) if w >= 1 && w <= u64::MAX as i128 => Ok(w as u64),
        _ => Err(err(line_no, ParseErrorKind::BadWeight(token.to_string()))),
    }
}

fn parse_literal(line_no: usize, token: &str, num_variables: u32) -> Result<Literal, ParseError> {
    let code: i64 = token
        .parse()
        .map_err(|_| err(line_no, ParseErrorKind::BadLiteral(token.to_string())))?;
    let lit = Literal::from_dimacs(code)
        .ok_or_else(|| err(line_no, ParseErrorKind::BadLiteral(token.to_string())))?;
    if lit.variable() > num_variables {
        return Err(err(
            line_no,
            ParseErrorKind::LiteralOutOfRange {
                variable: lit.variable(),
                num_variables,
            },
        ));
    }
    Ok(lit)
}

fn finish(
    line_of_clause: Vec<usize>,
    num_variables: u32,
    clauses: Vec<WeightedClause>,
) -> Result<ParsedWcnf, ParseError> {
    let warnings = clauses
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_tautology())
        .map(|(i, _)| ParseWarning::TautologicalClause {
            clause: i as u32,
            line: line_of_clause[i],
        })
        .collect();
    let instance = WeightedInstance::new(num_variables, clauses).map_err(|e| match e {
        // Ranges and emptiness are validated per line; only defensive here.
        FormulaError::VariableOutOfRange { variable, num_variables } => err(
            0,
            ParseErrorKind::LiteralOutOfRange { variable, num_variables },
        ),
        _ => err(0, ParseErrorKind::EmptyClause),
    })?;
    Ok(ParsedWcnf { instance, warnings })
}

fn parse_dimacs(
    header_no: usize,
    header: &str,
    body: &[(usize, &str)],
) -> Result<ParsedWcnf, ParseError> {
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "wcnf" {
        return Err(err(
            header_no,
            ParseErrorKind::MalformedHeader(format!(
                "expected `p wcnf <variables> <clauses>`, got {header:?}"
            )),
        ));
    }
    let (num_variables, num_clauses) = parse_header_counts(header_no, &tokens[2..])?;

    let mut clauses = Vec::with_capacity(body.len());
    let mut line_of_clause = Vec::with_capacity(body.len());
    for &(line_no, line) in body {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let weight = parse_weight(line_no, tokens[0])?;
        let Some(zero_at) = tokens.iter().position(|t| *t == "0") else {
            return Err(err(line_no, ParseErrorKind::MissingTerminator));
        };
        if zero_at != tokens.len() - 1 {
            return Err(err(line_no, ParseErrorKind::TrailingTokens));
        }
        if zero_at == 1 {
            return Err(err(line_no, ParseErrorKind::EmptyClause));
        }
        let literals = tokens[1..zero_at]
            .iter()
            .map(|t| parse_literal(line_no, t, num_variables))
            .collect::<Result<Vec<_>, _>>()?;
        clauses.push(WeightedClause::new(literals, weight).expect("validated per token"));
        line_of_clause.push(line_no);
    }
    if clauses.len() != num_clauses {
        return Err(err(
            header_no,
            ParseErrorKind::ClauseCountMismatch {
                header: num_clauses,
                actual: clauses.len(),
            },
        ));
    }
    finish(line_of_clause, num_variables, clauses)
}

fn parse_benchmark(
    header_no: usize,
    header: &str,
    body: &[(usize, &str)],
) -> Result<ParsedWcnf, ParseError> {
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(err(
            header_no,
            ParseErrorKind::MalformedHeader(format!(
                "expected `<variables> <clauses>`, got {header:?}"
            )),
        ));
    }
    let (num_variables, num_clauses) = parse_header_counts(header_no, &tokens)?;

    let mut clauses = Vec::with_capacity(body.len());
    let mut line_of_clause = Vec::with_capacity(body.len());
    for &(line_no, line) in body {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < 2 {
            return Err(err(
                line_no,
                ParseErrorKind::MalformedHeader(format!("expected `<weight> <k> <lit>…`, got {line:?}")),
            ));
        }
        let weight = parse_weight(line_no, tokens[0])?;
        let declared: usize = tokens[1]
            .parse()
            .map_err(|_| err(line_no, ParseErrorKind::BadLiteral(tokens[1].to_string())))?;
        if declared == 0 {
            return Err(err(line_no, ParseErrorKind::EmptyClause));
        }
        let actual = tokens.len() - 2;
        if declared != actual {
            return Err(err(
                line_no,
                ParseErrorKind::LiteralCountMismatch { declared, actual },
            ));
        }
        let literals = tokens[2..]
            .iter()
            .map(|t| parse_literal(line_no, t, num_variables))
            .collect::<Result<Vec<_>, _>>()?;
        clauses.push(WeightedClause::new(literals, weight).expect("validated per token"));
        line_of_clause.push(line_no);
    }
    if clauses.len() != num_clauses {
        return Err(err(
            header_no,
            ParseErrorKind::ClauseCountMismatch {
                header: num_clauses,
                actual: clauses.len(),
            },
        ));
    }
    finish(line_of_clause, num_variables, clauses)
}

/// Canonical DIMACS WCNF text for `instance`.
pub fn serialize_wcnf(instance: &WeightedInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p wcnf {} {}\n",
        instance.num_variables(),
        instance.num_clauses()
    ));
    for clause in instance.clauses() {
        out.push_str(&clause.weight().to_string());
        for lit in clause.literals() {
            out.push(' ');
            out.push_str(&lit.to_dimacs().to_string());
        }
        out.push_str(" 0\n");
    }
    out
}
