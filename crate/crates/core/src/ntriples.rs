//! Line-based N-Triples reader and writer.
//!
//! Accepted lines: `<iri> <iri> (<iri>|_:label|"lexical"(^^<iri>|@tag)?) .`
//! plus blank lines and `#` comment lines. Both LF and CRLF are accepted on
//! input; output always uses LF. Serialization sorts lines lexicographically
//! so the same triple set always produces the same bytes.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, Vocabulary};
use crate::model::{Term, Triple};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a UTF-8 N-Triples stream into a graph with the default vocabulary.
pub fn parse_ntriples<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    parse_ntriples_with(reader, Vocabulary::default())
}

pub fn parse_ntriples_with<R: BufRead>(reader: R, vocab: Vocabulary) -> Result<Graph, ParseError> {
    let mut graph = Graph::with_vocabulary(vocab);
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if let Some(triple) = parse_line(&line, idx + 1)? {
            graph.insert(triple);
        }
    }
    Ok(graph)
}

pub fn parse_ntriples_str(input: &str) -> Result<Graph, ParseError> {
    parse_ntriples(input.as_bytes())
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        syntax(self.line, self.column(), message)
    }

    fn expect_ws(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(' ') | Some('\t') => {
                self.skip_ws();
                Ok(())
            }
            _ => Err(self.err("expected whitespace between terms")),
        }
    }

    fn parse_iri(&mut self) -> Result<Term, ParseError> {
        let start = self.column();
        self.bump(); // consume '<'
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) => iri.push(c),
                None => return Err(syntax(self.line, start, "unterminated IRI: missing '>'")),
            }
        }
        Term::iri(iri).map_err(|e| syntax(self.line, start, e.to_string()))
    }

    fn parse_blank(&mut self) -> Result<Term, ParseError> {
        let start = self.column();
        self.bump(); // consume '_'
        if self.bump() != Some(':') {
            return Err(syntax(self.line, start, "blank node must start with '_:'"));
        }
        let mut label = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            label.push(self.bump().unwrap());
        }
        Term::blank(label).map_err(|e| syntax(self.line, start, e.to_string()))
    }

    fn parse_unicode_escape(&mut self, digits: usize) -> Result<char, ParseError> {
        let start = self.column();
        let mut value = 0u32;
        for _ in 0..digits {
            let c = self
                .bump()
                .ok_or_else(|| syntax(self.line, start, "truncated \\u escape"))?;
            let d = c
                .to_digit(16)
                .ok_or_else(|| syntax(self.line, start, "non-hex digit in \\u escape"))?;
            value = value * 16 + d;
        }
        char::from_u32(value)
            .ok_or_else(|| syntax(self.line, start, "escape is not a valid code point"))
    }

    fn parse_literal(&mut self) -> Result<Term, ParseError> {
        let start = self.column();
        self.bump(); // consume '"'
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => {
                    let escaped = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.parse_unicode_escape(4)?,
                        Some('U') => self.parse_unicode_escape(8)?,
                        Some(c) => return Err(self.err(format!("unknown escape '\\{c}'"))),
                        None => {
                            return Err(syntax(
                                self.line,
                                start,
                                "unterminated literal: missing closing '\"'",
                            ))
                        }
                    };
                    lexical.push(escaped);
                }
                Some(c) => lexical.push(c),
                None => {
                    return Err(syntax(
                        self.line,
                        start,
                        "unterminated literal: missing closing '\"'",
                    ))
                }
            }
        }
        match self.peek() {
            Some('^') => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.err("datatype must be introduced by '^^'"));
                }
                if self.peek() != Some('<') {
                    return Err(self.err("datatype must be an IRI"));
                }
                let dt = self.parse_iri()?;
                Ok(Term::typed_literal(lexical, dt.lexical()))
            }
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    tag.push(self.bump().unwrap());
                }
                if tag.is_empty() {
                    return Err(self.err("empty language tag"));
                }
                Ok(Term::lang_literal(lexical, tag))
            }
            _ => Ok(Term::literal(lexical)),
        }
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('<') => self.parse_iri(),
            Some('_') => self.parse_blank(),
            Some('"') => self.parse_literal(),
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of line")),
        }
    }
}

/// Parses one line; `Ok(None)` for blank and comment lines.
pub fn parse_line(raw: &str, line_number: usize) -> Result<Option<Triple>, ParseError> {
    let line = raw.strip_suffix('\r').unwrap_or(raw);
    let trimmed = line.trim_start();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }

    let mut cursor = Cursor::new(line, line_number);
    cursor.skip_ws();

    let subject_col = cursor.column();
    let subject = cursor.parse_term()?;
    if subject.is_literal() {
        return Err(syntax(
            line_number,
            subject_col,
            "literal cannot appear in subject position",
        ));
    }
    cursor.expect_ws()?;

    let predicate_col = cursor.column();
    if cursor.peek() != Some('<') {
        return Err(syntax(
            line_number,
            predicate_col,
            "predicate must be an IRI",
        ));
    }
    let predicate = cursor.parse_iri()?;
    cursor.expect_ws()?;

    let object = cursor.parse_term()?;
    cursor.skip_ws();

    if cursor.bump() != Some('.') {
        return Err(cursor.err("missing terminating '.'"));
    }
    cursor.skip_ws();
    if let Some(c) = cursor.peek() {
        return Err(cursor.err(format!("unexpected trailing character '{c}'")));
    }

    Ok(Some(Triple::new_unchecked(subject, predicate, object)))
}

/// Serializes the graph with one LF-terminated line per triple, lines sorted
/// lexicographically by their rendered text. Parsing the output yields a
/// graph set-equal to the input.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut lines: Vec<String> = graph.iter().map(|t| t.to_string()).collect();
    lines.sort();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_ntriples<W: Write>(graph: &Graph, mut writer: W) -> io::Result<()> {
    writer.write_all(serialize_ntriples(graph).as_bytes())
}
