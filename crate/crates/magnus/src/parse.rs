//! The textual input language: polynomials, problem files, presentation
//! files, and witness files.
//!
//! The polynomial grammar is deliberately explicit: `*` is required between
//! factors (so `x1*x2` is never confused with a variable named `x12`) and
//! `^` abbreviates repetition of a single variable. `#` starts a comment.
//! Constant terms are rejected (the algebras here have no unity), with the
//! single exception of the literal `0`, which denotes the zero polynomial.
//!
//! Every error carries the line and column it was detected at.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::certify::{GenerationWitness, WitnessEntry};
use crate::poly::NcPoly;
use crate::presentation::{Presentation, PresentationTerm, RelationSystem};
use crate::scalar::{FieldDesc, Scalar};
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Semi,
    Colon,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

/// Tokenizes one line (1-based line number); `#` starts a comment.
fn tokenize_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                tokens.push(Token { tok: Tok::Plus, line, col });
                i += 1;
            }
            '-' => {
                tokens.push(Token { tok: Tok::Minus, line, col });
                i += 1;
            }
            '*' => {
                tokens.push(Token { tok: Tok::Star, line, col });
                i += 1;
            }
            '/' => {
                tokens.push(Token { tok: Tok::Slash, line, col });
                i += 1;
            }
            '^' => {
                tokens.push(Token { tok: Tok::Caret, line, col });
                i += 1;
            }
            ';' => {
                tokens.push(Token { tok: Tok::Semi, line, col });
                i += 1;
            }
            ':' => {
                tokens.push(Token { tok: Tok::Colon, line, col });
                i += 1;
            }
            '(' => {
                tokens.push(Token { tok: Tok::LParen, line, col });
                i += 1;
            }
            ')' => {
                tokens.push(Token { tok: Tok::RParen, line, col });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Int(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            }
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(tokens)
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(tokens: &'a [Token], line: usize) -> Self {
        let end_col = tokens.last().map_or(1, |t| t.col + 1);
        Cursor {
            tokens,
            pos: 0,
            line,
            end_col,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(t.line, t.col, message),
            None => ParseError::new(self.line, self.end_col, message),
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if &t.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::new(
                t.line,
                t.col,
                format!("expected {tok}, found {}", t.tok),
            )),
            None => Err(self.error_here(format!("expected {tok}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<i64, ParseError> {
        match self.peek().cloned() {
            Some(Token {
                tok: Tok::Int(digits),
                line,
                col,
            }) => {
                self.pos += 1;
                digits
                    .parse::<i64>()
                    .map_err(|_| ParseError::new(line, col, format!("{what} is too large")))
            }
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }
}

const MAX_EXPONENT: i64 = 1024;

/// Parses `var` or `var ^ exponent`, appending the letters to `out`.
fn parse_factor(
    cursor: &mut Cursor,
    alphabet: &Alphabet,
    out: &mut Vec<u32>,
) -> Result<(), ParseError> {
    let (name, line, col) = match cursor.peek().cloned() {
        Some(Token {
            tok: Tok::Ident(name),
            line,
            col,
        }) => {
            cursor.pos += 1;
            (name, line, col)
        }
        _ => return Err(cursor.error_here("expected a variable")),
    };
    let index = alphabet
        .index_of(&name)
        .ok_or_else(|| ParseError::new(line, col, format!("unknown variable `{name}`")))?;
    let mut count = 1;
    if matches!(cursor.peek().map(|t| &t.tok), Some(Tok::Caret)) {
        cursor.pos += 1;
        let exponent = cursor.int("exponent")?;
        if exponent < 1 {
            return Err(cursor.error_here("exponent must be at least 1"));
        }
        if exponent > MAX_EXPONENT {
            return Err(cursor.error_here(format!("exponent exceeds {MAX_EXPONENT}")));
        }
        count = exponent;
    }
    for _ in 0..count {
        out.push(index);
    }
    Ok(())
}

/// Parses `factor (* factor)*` into a word.
fn parse_word_tokens(cursor: &mut Cursor, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    parse_factor(cursor, alphabet, &mut letters)?;
    while matches!(cursor.peek().map(|t| &t.tok), Some(Tok::Star)) {
        cursor.pos += 1;
        parse_factor(cursor, alphabet, &mut letters)?;
    }
    Ok(Word::from_letters(letters))
}

/// Parses an unsigned coefficient `int` or `int / int`.
fn parse_unsigned_coeff(cursor: &mut Cursor, field: FieldDesc) -> Result<Scalar, ParseError> {
    let position = cursor
        .peek()
        .map(|t| (t.line, t.col))
        .unwrap_or((cursor.line, cursor.end_col));
    let num = cursor.int("integer")?;
    if matches!(cursor.peek().map(|t| &t.tok), Some(Tok::Slash)) {
        if !field.is_rational() {
            return Err(cursor.error_here(format!(
                "fraction coefficients are not allowed over {field}"
            )));
        }
        cursor.pos += 1;
        let den = cursor.int("denominator")?;
        if den == 0 {
            return Err(ParseError::new(position.0, position.1, "zero denominator"));
        }
        return Ok(Scalar::from_ratio(field, num, den).expect("denominator checked"));
    }
    Ok(Scalar::from_i64(field, num))
}

/// Parses one term (after its sign) and adds it to the accumulator.
fn parse_term(
    cursor: &mut Cursor,
    alphabet: &Alphabet,
    field: FieldDesc,
    negative: bool,
    acc: &mut Vec<(Word, Scalar)>,
) -> Result<(), ParseError> {
    let coeff_position = cursor
        .peek()
        .map(|t| (t.line, t.col))
        .unwrap_or((cursor.line, cursor.end_col));
    match cursor.peek().map(|t| &t.tok) {
        Some(Tok::Int(_)) => {
            let mut coeff = parse_unsigned_coeff(cursor, field)?;
            if negative {
                coeff = -&coeff;
            }
            if matches!(cursor.peek().map(|t| &t.tok), Some(Tok::Star)) {
                cursor.pos += 1;
                let word = parse_word_tokens(cursor, alphabet)?;
                acc.push((word, coeff));
            } else if !coeff.is_zero() {
                return Err(ParseError::new(
                    coeff_position.0,
                    coeff_position.1,
                    "constant term not allowed",
                ));
            }
            Ok(())
        }
        Some(Tok::Ident(_)) => {
            let word = parse_word_tokens(cursor, alphabet)?;
            let coeff = if negative {
                -&Scalar::one(field)
            } else {
                Scalar::one(field)
            };
            acc.push((word, coeff));
            Ok(())
        }
        _ => Err(cursor.error_here("expected a term")),
    }
}

/// Parses `['-'] term (('+'|'-') term)*` until the end of the token slice.
fn parse_poly_tokens(
    cursor: &mut Cursor,
    alphabet: &Alphabet,
    field: FieldDesc,
) -> Result<NcPoly, ParseError> {
    let mut acc: Vec<(Word, Scalar)> = Vec::new();
    let negative = match cursor.peek().map(|t| &t.tok) {
        Some(Tok::Minus) => {
            cursor.pos += 1;
            true
        }
        _ => false,
    };
    parse_term(cursor, alphabet, field, negative, &mut acc)?;
    loop {
        match cursor.peek().map(|t| &t.tok) {
            Some(Tok::Plus) => {
                cursor.pos += 1;
                parse_term(cursor, alphabet, field, false, &mut acc)?;
            }
            Some(Tok::Minus) => {
                cursor.pos += 1;
                parse_term(cursor, alphabet, field, true, &mut acc)?;
            }
            _ => break,
        }
    }
    Ok(NcPoly::from_terms(field, acc))
}

/// Parses a polynomial from a standalone string.
pub fn parse_poly(text: &str, alphabet: &Alphabet, field: FieldDesc) -> Result<NcPoly, ParseError> {
    let mut tokens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        tokens.extend(tokenize_line(line, i + 1)?);
    }
    let mut cursor = Cursor::new(&tokens, 1);
    let poly = parse_poly_tokens(&mut cursor, alphabet, field)?;
    if !cursor.at_end() {
        return Err(cursor.error_here("unexpected trailing input"));
    }
    Ok(poly)
}

/// A raw witness line: variable index, slot polynomial, ideal-part terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawWitnessEntry {
    pub variable: u32,
    pub phi: NcPoly,
    pub ideal_terms: Vec<PresentationTerm>,
    /// Source line, for error positions.
    pub line: usize,
}

/// A parsed problem file: field, ordered variables, relations, candidate
/// generators, and an optional inline witness block.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub field: FieldDesc,
    pub alphabet: Alphabet,
    pub relations: Vec<NcPoly>,
    pub candidates: Vec<NcPoly>,
    pub witness: Vec<RawWitnessEntry>,
    vars_position: (usize, usize),
}

impl ProblemFile {
    /// Number of variables.
    pub fn alphabet_size(&self) -> u32 {
        self.alphabet.len()
    }

    /// Enforces the certifier's count hypothesis `n + k = N`. The bounded
    /// oracle commands do not require it.
    pub fn require_balanced(&self) -> Result<(), ParseError> {
        let n = self.candidates.len();
        let k = self.relations.len();
        let total = self.alphabet.len() as usize;
        if n + k != total {
            return Err(ParseError::new(
                self.vars_position.0,
                self.vars_position.1,
                format!("n + k = {} ≠ {} variables", n + k, total),
            ));
        }
        Ok(())
    }

    /// Assembles the witness entries (inline or from a witness file) into a
    /// complete witness over the algebra's relations.
    pub fn build_witness(
        &self,
        entries: &[RawWitnessEntry],
        system: &Arc<RelationSystem>,
    ) -> Result<GenerationWitness, ParseError> {
        let n_vars = self.alphabet.len();
        let mut slots: Vec<Option<WitnessEntry>> = vec![None; n_vars as usize];
        for entry in entries {
            let idx = (entry.variable - 1) as usize;
            if slots[idx].is_some() {
                return Err(ParseError::new(
                    entry.line,
                    1,
                    format!("duplicate witness entry for variable {}", entry.variable),
                ));
            }
            let ideal_part = Presentation::new(Arc::clone(system), entry.ideal_terms.clone())
                .map_err(|e| ParseError::new(entry.line, 1, e.to_string()))?;
            slots[idx] = Some(WitnessEntry {
                phi: entry.phi.clone(),
                ideal_part,
            });
        }
        let first_line = entries.first().map_or(1, |e| e.line);
        let entries = slots
            .into_iter()
            .enumerate()
            .map(|(i, slot)| {
                slot.ok_or_else(|| {
                    ParseError::new(
                        first_line,
                        1,
                        format!("witness is missing variable {}", i + 1),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenerationWitness { entries })
    }
}

fn parse_field_decl(cursor: &mut Cursor) -> Result<FieldDesc, ParseError> {
    match cursor.peek().cloned() {
        Some(Token {
            tok: Tok::Ident(name),
            line,
            col,
        }) if name == "Q" => {
            cursor.pos += 1;
            let _ = (line, col);
            Ok(FieldDesc::Rational)
        }
        Some(Token {
            tok: Tok::Ident(name),
            line,
            col,
        }) if name == "GF" => {
            cursor.pos += 1;
            cursor.expect(&Tok::LParen)?;
            let p = cursor.int("prime modulus")?;
            cursor.expect(&Tok::RParen)?;
            let p = u32::try_from(p)
                .map_err(|_| ParseError::new(line, col, format!("modulus {p} out of range")))?;
            FieldDesc::prime(p).map_err(|e| ParseError::new(line, col, e.to_string()))
        }
        _ => Err(cursor.error_here("expected `Q` or `GF(p)`")),
    }
}

/// Parses a word field that may be the literal `e` (the empty word).
fn parse_word_or_empty(cursor: &mut Cursor, alphabet: &Alphabet) -> Result<Word, ParseError> {
    if let Some(Tok::Ident(name)) = cursor.peek().map(|t| &t.tok) {
        if name == "e" {
            cursor.pos += 1;
            return Ok(Word::empty());
        }
    }
    parse_word_tokens(cursor, alphabet)
}

/// Parses a signed scalar `['-'] int ['/' int]`.
fn parse_signed_coeff(cursor: &mut Cursor, field: FieldDesc) -> Result<Scalar, ParseError> {
    let negative = match cursor.peek().map(|t| &t.tok) {
        Some(Tok::Minus) => {
            cursor.pos += 1;
            true
        }
        _ => false,
    };
    let coeff = parse_unsigned_coeff(cursor, field)?;
    Ok(if negative { -&coeff } else { coeff })
}

/// Splits the remaining tokens of a line at semicolons.
fn split_on_semicolons(tokens: &[Token]) -> Vec<&[Token]> {
    let mut groups = Vec::new();
    let mut start = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.tok == Tok::Semi {
            groups.push(&tokens[start..i]);
            start = i + 1;
        }
    }
    groups.push(&tokens[start..]);
    groups
}

fn parse_presentation_fields(
    groups: &[&[Token]],
    line: usize,
    alphabet: &Alphabet,
    field: FieldDesc,
    relation_count: usize,
) -> Result<Vec<PresentationTerm>, ParseError> {
    if !groups.len().is_multiple_of(4) {
        return Err(ParseError::new(
            line,
            1,
            format!(
                "presentation terms need 4 fields (coefficient ; left ; relation ; right), found {}",
                groups.len()
            ),
        ));
    }
    let mut terms = Vec::new();
    for chunk in groups.chunks(4) {
        let mut c = Cursor::new(chunk[0], line);
        let coeff = parse_signed_coeff(&mut c, field)?;
        if !c.at_end() {
            return Err(c.error_here("unexpected trailing input in coefficient"));
        }
        if coeff.is_zero() {
            return Err(ParseError::new(
                chunk[0].first().map_or(line, |t| t.line),
                chunk[0].first().map_or(1, |t| t.col),
                "zero coefficient",
            ));
        }
        let mut c = Cursor::new(chunk[1], line);
        let left = parse_word_or_empty(&mut c, alphabet)?;
        if !c.at_end() {
            return Err(c.error_here("unexpected trailing input in word"));
        }
        let mut c = Cursor::new(chunk[2], line);
        let rel = c.int("relation index")?;
        if !c.at_end() {
            return Err(c.error_here("unexpected trailing input in relation index"));
        }
        if rel < 1 || rel as usize > relation_count {
            return Err(ParseError::new(
                chunk[2].first().map_or(line, |t| t.line),
                chunk[2].first().map_or(1, |t| t.col),
                format!("relation index {rel} out of range 1..={relation_count}"),
            ));
        }
        let mut c = Cursor::new(chunk[3], line);
        let right = parse_word_or_empty(&mut c, alphabet)?;
        if !c.at_end() {
            return Err(c.error_here("unexpected trailing input in word"));
        }
        terms.push(PresentationTerm::new(coeff, left, rel as usize, right));
    }
    Ok(terms)
}

/// Parses a problem file from its text.
///
/// Line grammar: `field Q` or `field GF(p)`; `vars x1 x2 ...`;
/// `rel <poly>` once per relation; `gen <poly>` once per candidate;
/// optional `wit i : <poly in z1..zn> [; coeff ; left ; rel ; right]...`.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut field: Option<(FieldDesc, usize)> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut vars_position = (0, 0);
    let mut relations: Vec<NcPoly> = Vec::new();
    let mut candidates: Vec<NcPoly> = Vec::new();
    // witness lines are parsed after the candidate count is known
    let mut witness_lines: Vec<(Vec<Token>, usize)> = Vec::new();

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens = tokenize_line(raw_line, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let keyword = match &tokens[0].tok {
            Tok::Ident(kw) => kw.clone(),
            other => {
                return Err(ParseError::new(
                    tokens[0].line,
                    tokens[0].col,
                    format!("expected a keyword line, found {other}"),
                ));
            }
        };
        let mut cursor = Cursor::new(&tokens[1..], line_no);
        match keyword.as_str() {
            "field" => {
                if field.is_some() {
                    return Err(ParseError::new(
                        tokens[0].line,
                        tokens[0].col,
                        "duplicate `field` line",
                    ));
                }
                let f = parse_field_decl(&mut cursor)?;
                if !cursor.at_end() {
                    return Err(cursor.error_here("unexpected trailing input"));
                }
                field = Some((f, line_no));
            }
            "vars" => {
                if alphabet.is_some() {
                    return Err(ParseError::new(
                        tokens[0].line,
                        tokens[0].col,
                        "duplicate `vars` line",
                    ));
                }
                let mut names = Vec::new();
                while let Some(t) = cursor.next() {
                    match &t.tok {
                        Tok::Ident(name) => {
                            if name == "e" {
                                return Err(ParseError::new(
                                    t.line,
                                    t.col,
                                    "variable name `e` is reserved for the empty word",
                                ));
                            }
                            names.push(name.clone())
                        }
                        other => {
                            return Err(ParseError::new(
                                t.line,
                                t.col,
                                format!("expected a variable name, found {other}"),
                            ));
                        }
                    }
                }
                if names.is_empty() {
                    return Err(cursor.error_here("at least one variable is required"));
                }
                vars_position = (tokens[0].line, tokens[0].col);
                alphabet = Some(Alphabet::from_names(names).ok_or_else(|| {
                    ParseError::new(tokens[0].line, tokens[0].col, "duplicate variable name")
                })?);
            }
            "rel" | "gen" => {
                let (f, _) = field.ok_or_else(|| {
                    ParseError::new(tokens[0].line, tokens[0].col, "`field` must come first")
                })?;
                let alpha = alphabet.as_ref().ok_or_else(|| {
                    ParseError::new(tokens[0].line, tokens[0].col, "`vars` must come before polynomials")
                })?;
                let poly = parse_poly_tokens(&mut cursor, alpha, f)?;
                if !cursor.at_end() {
                    return Err(cursor.error_here("unexpected trailing input"));
                }
                if poly.is_zero() {
                    return Err(ParseError::new(
                        tokens[0].line,
                        tokens[0].col,
                        format!("`{keyword}` polynomial must be nonzero"),
                    ));
                }
                if keyword == "rel" {
                    relations.push(poly);
                } else {
                    candidates.push(poly);
                }
            }
            "wit" => {
                witness_lines.push((tokens[1..].to_vec(), line_no));
            }
            other => {
                return Err(ParseError::new(
                    tokens[0].line,
                    tokens[0].col,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }

    let (field, _) =
        field.ok_or_else(|| ParseError::new(1, 1, "missing `field` line"))?;
    let alphabet = alphabet.ok_or_else(|| ParseError::new(1, 1, "missing `vars` line"))?;
    if candidates.is_empty() {
        return Err(ParseError::new(1, 1, "at least one `gen` line is required"));
    }

    let mut witness = Vec::new();
    for (tokens, line_no) in &witness_lines {
        witness.push(parse_witness_line(
            tokens,
            *line_no,
            &alphabet,
            field,
            candidates.len(),
            relations.len(),
        )?);
    }

    Ok(ProblemFile {
        field,
        alphabet,
        relations,
        candidates,
        witness,
        vars_position,
    })
}

/// Parses the body of a `wit` line (after the keyword).
fn parse_witness_line(
    tokens: &[Token],
    line: usize,
    alphabet: &Alphabet,
    field: FieldDesc,
    n_candidates: usize,
    relation_count: usize,
) -> Result<RawWitnessEntry, ParseError> {
    let mut cursor = Cursor::new(tokens, line);
    let variable = cursor.int("variable index")?;
    if variable < 1 || variable as usize > alphabet.len() as usize {
        return Err(ParseError::new(
            line,
            tokens.first().map_or(1, |t| t.col),
            format!("witness variable index {variable} out of range 1..={}", alphabet.len()),
        ));
    }
    cursor.expect(&Tok::Colon)?;
    let rest = &tokens[cursor.pos..];
    let groups = split_on_semicolons(rest);
    let slot_alphabet = Alphabet::numbered("z", n_candidates as u32);
    let mut phi_cursor = Cursor::new(groups[0], line);
    let phi = parse_poly_tokens(&mut phi_cursor, &slot_alphabet, field)?;
    if !phi_cursor.at_end() {
        return Err(phi_cursor.error_here("unexpected trailing input"));
    }
    let mut ideal_groups: Vec<&[Token]> = groups[1..].to_vec();
    // a single trailing `;` after the slot polynomial means an empty ideal part
    if ideal_groups.len() == 1 && ideal_groups[0].is_empty() {
        ideal_groups.clear();
    }
    let ideal_terms = if ideal_groups.is_empty() {
        Vec::new()
    } else {
        parse_presentation_fields(&ideal_groups, line, alphabet, field, relation_count)?
    };
    Ok(RawWitnessEntry {
        variable: variable as u32,
        phi,
        ideal_terms,
        line,
    })
}

/// Parses a standalone witness file: `wit` lines only (plus comments).
pub fn parse_witness_file(
    text: &str,
    alphabet: &Alphabet,
    field: FieldDesc,
    n_candidates: usize,
    relation_count: usize,
) -> Result<Vec<RawWitnessEntry>, ParseError> {
    let mut entries = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens = tokenize_line(raw_line, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        match &tokens[0].tok {
            Tok::Ident(kw) if kw == "wit" => {
                entries.push(parse_witness_line(
                    &tokens[1..],
                    line_no,
                    alphabet,
                    field,
                    n_candidates,
                    relation_count,
                )?);
            }
            _ => {
                return Err(ParseError::new(
                    tokens[0].line,
                    tokens[0].col,
                    "witness files contain only `wit` lines",
                ));
            }
        }
    }
    Ok(entries)
}

/// Parses a presentation file: one term per line,
/// `coeff ; left-word-or-e ; relation-index ; right-word-or-e`.
pub fn parse_presentation(
    text: &str,
    alphabet: &Alphabet,
    system: &Arc<RelationSystem>,
) -> Result<Presentation, ParseError> {
    let field = system.field();
    let mut terms = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens = tokenize_line(raw_line, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let groups = split_on_semicolons(&tokens);
        let parsed =
            parse_presentation_fields(&groups, line_no, alphabet, field, system.len())?;
        terms.extend(parsed);
    }
    Presentation::new(Arc::clone(system), terms).map_err(|e| ParseError::new(0, 0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDesc = FieldDesc::Rational;

    fn x_alphabet(n: u32) -> Alphabet {
        Alphabet::numbered("x", n)
    }

    fn w(letters: &[u32]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    fn int(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    fn poly(terms: &[(i64, &[u32])]) -> NcPoly {
        NcPoly::from_terms(Q, terms.iter().map(|&(c, ls)| (w(ls), int(c))))
    }

    #[test]
    fn parse_poly_examples() {
        let alpha = x_alphabet(3);
        assert_eq!(
            parse_poly("x2 - x1*x1", &alpha, Q).unwrap(),
            poly(&[(1, &[2]), (-1, &[1, 1])])
        );
        let p = parse_poly("3/2*x1*x3 - x2 + x1^2", &alpha, Q).unwrap();
        let expected = NcPoly::from_terms(
            Q,
            [
                (w(&[1, 3]), Scalar::from_ratio(Q, 3, 2).unwrap()),
                (w(&[2]), int(-1)),
                (w(&[1, 1]), int(1)),
            ],
        );
        assert_eq!(p, expected);

        let err = parse_poly("x1 + 5", &alpha, Q).unwrap_err();
        assert!(err.message.contains("constant term not allowed"));
        assert_eq!((err.line, err.col), (1, 6));
    }

    #[test]
    fn parse_poly_error_positions() {
        let alpha = x_alphabet(2);
        let err = parse_poly("x1 + y2", &alpha, Q).unwrap_err();
        assert_eq!(err.message, "unknown variable `y2`");
        assert_eq!((err.line, err.col), (1, 6));

        let err = parse_poly("1/0*x1", &alpha, Q).unwrap_err();
        assert_eq!(err.message, "zero denominator");

        let err = parse_poly("x1 *", &alpha, Q).unwrap_err();
        assert_eq!(err.message, "expected a variable");

        // zero literal denotes the zero polynomial
        assert!(parse_poly("0", &alpha, Q).unwrap().is_zero());
        assert!(parse_poly("x1 - x1", &alpha, Q).unwrap().is_zero());
    }

    #[test]
    fn parse_poly_gf7() {
        let f = FieldDesc::prime(7).unwrap();
        let alpha = x_alphabet(2);
        let p = parse_poly("10*x1 - x2", &alpha, f).unwrap();
        assert_eq!(
            p,
            NcPoly::from_terms(
                f,
                [(w(&[1]), Scalar::from_i64(f, 3)), (w(&[2]), Scalar::from_i64(f, 6))]
            )
        );
        let err = parse_poly("1/2*x1", &alpha, f).unwrap_err();
        assert!(err.message.contains("fraction coefficients"));
    }

    #[test]
    fn poly_display_reparses_to_the_same_value() {
        let alpha = x_alphabet(3);
        let p = NcPoly::from_terms(
            Q,
            [
                (w(&[2]), int(-1)),
                (w(&[1, 3]), Scalar::from_ratio(Q, 3, 2).unwrap()),
                (w(&[3, 3, 2]), int(4)),
            ],
        );
        let text = p.display(&alpha).to_string();
        assert_eq!(parse_poly(&text, &alpha, Q).unwrap(), p);
    }

    #[test]
    fn parse_problem_worked_instance() {
        let text = "\
# worked instance
field Q
vars x1 x2
rel x2 - x1*x1
gen x1
";
        let problem = parse_problem(text).unwrap();
        assert_eq!(problem.field, Q);
        assert_eq!(problem.alphabet.len(), 2);
        assert_eq!(problem.relations, vec![poly(&[(1, &[2]), (-1, &[1, 1])])]);
        assert_eq!(problem.candidates, vec![poly(&[(1, &[1])])]);
        assert!(problem.witness.is_empty());
        problem.require_balanced().unwrap();
    }

    #[test]
    fn parse_problem_count_mismatch() {
        let text = "field Q\nvars x1 x2 x3\nrel x2 - x1*x1\ngen x1\n";
        let problem = parse_problem(text).unwrap();
        let err = problem.require_balanced().unwrap_err();
        assert_eq!(err.message, "n + k = 2 ≠ 3 variables");
        assert_eq!(err.line, 2);
    }

    #[test]
    fn parse_problem_gf7_reduction() {
        let text = "field GF(7)\nvars x1 x2\nrel x2 - x1*x1\ngen 10*x1\n";
        let problem = parse_problem(text).unwrap();
        let f = FieldDesc::prime(7).unwrap();
        assert_eq!(
            problem.candidates[0],
            NcPoly::from_terms(f, [(w(&[1]), Scalar::from_i64(f, 3))])
        );
    }

    #[test]
    fn parse_problem_duplicate_sections() {
        let text = "field Q\nfield Q\nvars x1\ngen x1\n";
        let err = parse_problem(text).unwrap_err();
        assert_eq!(err.message, "duplicate `field` line");
        assert_eq!(err.line, 2);
    }

    #[test]
    fn parse_problem_with_witness_block() {
        let text = "\
field Q
vars x1 x2
rel x2 - x1*x1
gen x1
wit 1 : z1
wit 2 : z1*z1 ; 1 ; e ; 1 ; e
";
        let problem = parse_problem(text).unwrap();
        assert_eq!(problem.witness.len(), 2);
        assert_eq!(problem.witness[0].phi, poly(&[(1, &[1])]));
        assert_eq!(problem.witness[1].phi, poly(&[(1, &[1, 1])]));
        assert_eq!(
            problem.witness[1].ideal_terms,
            vec![PresentationTerm::new(int(1), Word::empty(), 1, Word::empty())]
        );

        let system = Arc::new(
            RelationSystem::new(Q, 2, problem.relations.clone()).unwrap(),
        );
        let witness = problem.build_witness(&problem.witness, &system).unwrap();
        assert_eq!(witness.entries.len(), 2);
    }

    #[test]
    fn parser_never_panics_on_garbage() {
        let alpha = x_alphabet(3);
        let mut runner = proptest::test_runner::TestRunner::default();
        runner
            .run(&"[ -~]{0,60}", |text| {
                let _ = parse_poly(&text, &alpha, Q);
                let _ = parse_problem(&text);
                Ok(())
            })
            .unwrap();
    }

    #[test]
    fn parse_presentation_examples() {
        let system = Arc::new(
            RelationSystem::new(
                Q,
                3,
                vec![poly(&[(1, &[1]), (1, &[3, 3])]), poly(&[(1, &[2])])],
            )
            .unwrap(),
        );
        let alpha = x_alphabet(3);
        let text = "1 ; e ; 1 ; x2\n-1 ; x1 ; 2 ; e\n";
        let presentation = parse_presentation(text, &alpha, &system).unwrap();
        assert_eq!(presentation.terms().len(), 2);
        assert_eq!(presentation.evaluate(), poly(&[(1, &[3, 3, 2])]));

        let bare = parse_presentation("1 ; e ; 1 ; e\n", &alpha, &system).unwrap();
        assert_eq!(bare.evaluate(), poly(&[(1, &[1]), (1, &[3, 3])]));

        let err = parse_presentation("0 ; e ; 1 ; e\n", &alpha, &system).unwrap_err();
        assert_eq!(err.message, "zero coefficient");

        let err = parse_presentation("1 ; e ; 5 ; e\n", &alpha, &system).unwrap_err();
        assert!(err.message.contains("relation index 5 out of range"));
    }
}
