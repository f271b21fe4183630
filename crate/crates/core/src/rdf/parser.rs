use std::borrow::Cow;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LiteralTag, Term, TripleRecord};

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];
const MAX_RECORDED_OFFSETS: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    /// The first malformed line aborts the parse.
    Strict,
    /// Malformed lines are counted and skipped.
    #[default]
    Tolerant,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("syntax error on line {line} (byte offset {offset}): {message}")]
    Syntax { line: u64, offset: u64, message: String },
    #[error("invalid UTF-8 on line {line} (byte offset {offset})")]
    InvalidUtf8 { line: u64, offset: u64 },
    #[error("unreadable input: {0}")]
    Io(#[from] io::Error),
}

/// Counters accumulated while parsing one input.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParseReport {
    pub triples_emitted: u64,
    pub lines_skipped: u64,
    /// Byte offsets of the first ten skipped lines.
    pub skipped_offsets: Vec<u64>,
    pub total_lines: u64,
}

/// Wraps `reader` in a gzip decoder when the stream starts with the gzip magic bytes.
pub fn decompress_if_gzip<R: Read + Send + 'static>(reader: R) -> io::Result<Box<dyn BufRead + Send>> {
    let mut buffered = BufReader::with_capacity(1 << 16, reader);
    let is_gzip = buffered.fill_buf()?.starts_with(&GZIP_MAGIC);
    if is_gzip {
        Ok(Box::new(BufReader::with_capacity(
            1 << 16,
            MultiGzDecoder::new(buffered),
        )))
    } else {
        Ok(Box::new(buffered))
    }
}

/// Opens an N-Triples dump, transparently decompressing gzip input.
pub fn open_dump(path: impl AsRef<Path>) -> io::Result<Box<dyn BufRead + Send>> {
    decompress_if_gzip(File::open(path)?)
}

/// Single-pass, line-oriented N-Triples reader.
///
/// Yields one `TripleRecord` per well-formed statement line. Blank lines and
/// comment lines are skipped without being counted as skipped.
pub struct NTriplesParser<R> {
    reader: R,
    strictness: Strictness,
    report: ParseReport,
    offset: u64,
    buf: Vec<u8>,
    done: bool,
}

impl<R: BufRead> NTriplesParser<R> {
    pub fn new(reader: R, strictness: Strictness) -> Self {
        Self {
            reader,
            strictness,
            report: ParseReport::default(),
            offset: 0,
            buf: Vec::with_capacity(256),
            done: false,
        }
    }

    pub fn report(&self) -> &ParseReport {
        &self.report
    }

    pub fn into_report(self) -> ParseReport {
        self.report
    }

    fn skip(&mut self, line_offset: u64, line: u64, message: &str) {
        log::debug!("skipping line {line} at byte {line_offset}: {message}");
        self.report.lines_skipped += 1;
        if self.report.skipped_offsets.len() < MAX_RECORDED_OFFSETS {
            self.report.skipped_offsets.push(line_offset);
        }
    }
}

impl<R: BufRead> Iterator for NTriplesParser<R> {
    type Item = Result<TripleRecord, IngestError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.buf.clear();
            let read = match self.reader.read_until(b'\n', &mut self.buf) {
                Ok(n) => n,
                Err(e) => {
                    self.done = true;
                    return Some(Err(e.into()));
                }
            };
            if read == 0 {
                self.done = true;
                break;
            }
            let line_offset = self.offset;
            self.offset += read as u64;
            self.report.total_lines += 1;
            let line_no = self.report.total_lines;

            let text = match std::str::from_utf8(&self.buf) {
                Ok(s) => Cow::Borrowed(s),
                Err(_) if self.strictness == Strictness::Strict => {
                    self.done = true;
                    return Some(Err(IngestError::InvalidUtf8 {
                        line: line_no,
                        offset: line_offset,
                    }));
                }
                Err(_) => String::from_utf8_lossy(&self.buf),
            };

            match parse_line(&text) {
                Ok(Some(triple)) => {
                    self.report.triples_emitted += 1;
                    return Some(Ok(triple));
                }
                Ok(None) => continue,
                Err(message) => {
                    if self.strictness == Strictness::Strict {
                        self.done = true;
                        return Some(Err(IngestError::Syntax {
                            line: line_no,
                            offset: line_offset,
                            message,
                        }));
                    }
                    self.skip(line_offset, line_no, &message);
                }
            }
        }
        None
    }
}

/// Parses a single N-Triples line. `Ok(None)` for blank and comment lines.
pub fn parse_line(line: &str) -> Result<Option<TripleRecord>, String> {
    let mut cur = Cursor::new(line);
    cur.skip_ws();
    match cur.peek() {
        None | Some('#') => return Ok(None),
        _ => {}
    }

    let subject = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        Some('_') => Term::BlankNode(cur.blank_label()?),
        _ => return Err(cur.error("expected IRI or blank node as subject")),
    };
    cur.skip_ws();
    let predicate = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        _ => return Err(cur.error("expected IRI as predicate")),
    };
    cur.skip_ws();
    let object = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        Some('_') => Term::BlankNode(cur.blank_label()?),
        Some('"') => cur.literal()?,
        _ => return Err(cur.error("expected IRI, blank node or literal as object")),
    };
    cur.skip_ws();
    if !cur.eat('.') {
        return Err(cur.error("expected '.' terminating the statement"));
    }
    cur.skip_ws();
    match cur.peek() {
        None | Some('#') => {}
        Some(_) => return Err(cur.error("trailing content after statement")),
    }

    Ok(Some(TripleRecord {
        subject,
        predicate,
        object,
    }))
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r' | '\n')) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> String {
        format!("{message} at column {}", self.pos + 1)
    }

    fn iri(&mut self) -> Result<String, String> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error("unterminated IRI")),
                Some('>') => break,
                Some('\\') => match self.bump() {
                    Some('u') => out.push(self.hex_char(4)?),
                    Some('U') => out.push(self.hex_char(8)?),
                    _ => return Err(self.error("invalid escape in IRI")),
                },
                Some(c @ ('\u{0}'..='\u{20}' | '<' | '"' | '{' | '}' | '|' | '^' | '`')) => {
                    return Err(self.error(&format!("character {c:?} not allowed in IRI")))
                }
                Some(c) => out.push(c),
            }
        }
        if out.is_empty() {
            return Err(self.error("empty IRI"));
        }
        Ok(out)
    }

    fn hex_char(&mut self, digits: usize) -> Result<char, String> {
        let end = self.pos + digits;
        let hex = self
            .src
            .get(self.pos..end)
            .filter(|h| h.bytes().all(|b| b.is_ascii_hexdigit()))
            .ok_or_else(|| self.error("malformed unicode escape"))?;
        let code = u32::from_str_radix(hex, 16).map_err(|e| e.to_string())?;
        self.pos = end;
        char::from_u32(code).ok_or_else(|| self.error("escape is not a unicode scalar value"))
    }

    fn blank_label(&mut self) -> Result<String, String> {
        if !self.rest().starts_with("_:") {
            return Err(self.error("expected '_:'"));
        }
        self.pos += 2;
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphanumeric() || c == '_' => {
                self.bump();
            }
            _ => return Err(self.error("invalid blank node label")),
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{B7}') {
                self.bump();
            } else {
                break;
            }
        }
        // a label cannot end with '.', which then belongs to the terminator
        while self.src[start..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn literal(&mut self) -> Result<Term, String> {
        self.bump();
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error("unterminated string literal")),
                Some('"') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_char(4)?,
                        Some('U') => self.hex_char(8)?,
                        _ => return Err(self.error("invalid escape in string literal")),
                    };
                    lexical.push(c);
                }
                Some('\n' | '\r') => return Err(self.error("line break inside string literal")),
                Some(c) => lexical.push(c),
            }
        }
        let tag = if self.rest().starts_with("^^") {
            self.pos += 2;
            if self.peek() != Some('<') {
                return Err(self.error("expected datatype IRI"));
            }
            LiteralTag::Datatype(self.iri()?)
        } else if self.eat('@') {
            LiteralTag::Language(self.lang_tag()?)
        } else {
            LiteralTag::Plain
        };
        Ok(Term::Literal { lexical, tag })
    }

    fn lang_tag(&mut self) -> Result<String, String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("empty language tag"));
        }
        while self.peek() == Some('-') {
            self.bump();
            let sub = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                self.bump();
            }
            if self.pos == sub {
                return Err(self.error("empty language subtag"));
            }
        }
        Ok(self.src[start..self.pos].to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_all(input: &str, strictness: Strictness) -> (Vec<TripleRecord>, ParseReport) {
        let mut parser = NTriplesParser::new(input.as_bytes(), strictness);
        let triples = parser.by_ref().collect::<Result<Vec<_>, _>>().unwrap();
        (triples, parser.into_report())
    }

    #[test]
    fn iri_triple() {
        let t = parse_line("<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .")
            .unwrap()
            .unwrap();
        assert_eq!(t.subject, Term::iri("http://ex.org/a"));
        assert_eq!(t.predicate, Term::iri("http://ex.org/p"));
        assert_eq!(t.object, Term::iri("http://ex.org/b"));
    }

    #[test]
    fn language_tagged_literal() {
        let t = parse_line(r#"<http://ex.org/a> <http://ex.org/l> "Mannheim"@de ."#)
            .unwrap()
            .unwrap();
        assert_eq!(t.object, Term::lang_literal("Mannheim", "de"));
        assert_eq!(t.object.language(), Some("de"));
    }

    #[test]
    fn typed_literal_and_escapes() {
        let t =
            parse_line(r#"_:b0 <http://ex.org/v> "a\"b\\cé\U0001F600\n"^^<http://www.w3.org/2001/XMLSchema#string> ."#)
                .unwrap()
                .unwrap();
        assert_eq!(t.subject, Term::blank("b0"));
        assert_eq!(
            t.object,
            Term::typed_literal("a\"b\\c\u{e9}\u{1F600}\n", "http://www.w3.org/2001/XMLSchema#string")
        );
    }

    #[test]
    fn blank_label_before_terminator() {
        let t = parse_line("_:a <http://ex.org/p> _:b.c.").unwrap().unwrap();
        assert_eq!(t.object, Term::blank("b.c"));
    }

    #[test]
    fn tolerant_mode_skips_malformed_middle_line() {
        let input = "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\n\
                     <http://ex.org/a> <http://ex.org/p> .\n\
                     <http://ex.org/b> <http://ex.org/p> \"x\" .\n";
        let (triples, report) = parse_all(input, Strictness::Tolerant);
        assert_eq!(triples.len(), 2);
        assert_eq!(report.triples_emitted, 2);
        assert_eq!(report.lines_skipped, 1);
        assert_eq!(report.skipped_offsets, vec![56]);
        assert_eq!(report.total_lines, 3);
    }

    #[test]
    fn strict_mode_aborts_with_position() {
        let input = "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\nbroken\n<http://ex.org/a> <http://ex.org/p> <http://ex.org/c> .\n";
        let mut parser = NTriplesParser::new(input.as_bytes(), Strictness::Strict);
        assert!(parser.next().unwrap().is_ok());
        match parser.next().unwrap() {
            Err(IngestError::Syntax { line, offset, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(offset, 56);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parser.next().is_none());
    }

    #[test]
    fn comments_and_blank_lines_not_counted() {
        let input = "# header\n\n   \n<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> . # trailing\n";
        let (triples, report) = parse_all(input, Strictness::Strict);
        assert_eq!(triples.len(), 1);
        assert_eq!(report.lines_skipped, 0);
        assert_eq!(report.total_lines, 4);
    }

    #[test]
    fn invalid_utf8_depends_on_strictness() {
        let mut input = b"<http://ex.org/a> <http://ex.org/p> \"".to_vec();
        input.extend_from_slice(&[0xff, 0xfe]);
        input.extend_from_slice(b"\" .\n");

        let mut strict = NTriplesParser::new(&input[..], Strictness::Strict);
        assert!(matches!(
            strict.next(),
            Some(Err(IngestError::InvalidUtf8 { line: 1, offset: 0 }))
        ));

        let mut tolerant = NTriplesParser::new(&input[..], Strictness::Tolerant);
        let t = tolerant.next().unwrap().unwrap();
        assert_eq!(t.object, Term::plain_literal("\u{FFFD}\u{FFFD}"));
    }

    #[test]
    fn rejects_bad_terms() {
        for line in [
            "<> <http://ex.org/p> <http://ex.org/b> .",
            "\"lit\" <http://ex.org/p> <http://ex.org/b> .",
            "<http://ex.org/a> _:p <http://ex.org/b> .",
            "<http://ex.org/a b> <http://ex.org/p> <http://ex.org/b> .",
            "<http://ex.org/a> <http://ex.org/p> \"x\"@ .",
            "<http://ex.org/a> <http://ex.org/p> \"x\" . extra",
            "<http://ex.org/a> <http://ex.org/p> \"x\\q\" .",
        ] {
            assert!(parse_line(line).is_err(), "accepted {line}");
        }
    }

    #[test]
    fn gzip_input_is_detected() {
        use flate2::write::GzEncoder;
        use std::io::Write;
        let mut enc = GzEncoder::new(Vec::new(), flate2::Compression::default());
        enc.write_all(b"<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\n")
            .unwrap();
        let bytes = enc.finish().unwrap();
        let reader = decompress_if_gzip(io::Cursor::new(bytes)).unwrap();
        let triples: Vec<_> = NTriplesParser::new(reader, Strictness::Strict)
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(triples.len(), 1);
    }
}
