use std::collections::HashMap;

use crate::ns::{rdf, xsd};
use crate::rdf::{is_absolute_iri, BlankNode, Graph, Iri, Literal, Term, Triple};

use super::{ParseDiagnostic, Severity};

type PResult<T> = Result<T, ParseDiagnostic>;

/// Parses a Turtle document. Blank nodes are relabeled `b1`, `b2`, ... in
/// document order; the returned graph carries every declared prefix.
pub fn parse_turtle(text: &str) -> PResult<Graph> {
    let mut parser = Parser {
        src: text,
        pos: 0,
        base: None,
        labels: HashMap::new(),
        graph: Graph::new(),
    };
    parser.document()?;
    Ok(parser.graph)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    base: Option<String>,
    labels: HashMap<String, BlankNode>,
    graph: Graph,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{00B7}')
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseDiagnostic {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        ParseDiagnostic {
            line,
            column,
            message: message.into(),
            severity: Severity::Error,
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn expect(&mut self, c: char, what: &str) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseDiagnostic {
        match self.peek() {
            Some(c) => self.error_at(self.pos, format!("expected {what}, found '{c}'")),
            None => self.error_at(self.pos, format!("expected {what}, found end of input")),
        }
    }

    /// Case-insensitive keyword followed by whitespace or `<`.
    fn at_keyword(&self, kw: &str) -> bool {
        let rest = self.rest();
        rest.len() >= kw.len()
            && rest.is_char_boundary(kw.len())
            && rest[..kw.len()].eq_ignore_ascii_case(kw)
            && rest[kw.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_whitespace() || c == '<')
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> PResult<()> {
        if self.rest().starts_with("@prefix") {
            self.pos += "@prefix".len();
            self.prefix_decl()?;
            return self.expect('.', "'.' after @prefix directive");
        }
        if self.rest().starts_with("@base") {
            self.pos += "@base".len();
            self.base_decl()?;
            return self.expect('.', "'.' after @base directive");
        }
        if self.peek() == Some('@') {
            return Err(self.error_at(self.pos, "unknown directive"));
        }
        if self.at_keyword("PREFIX") {
            self.pos += "PREFIX".len();
            return self.prefix_decl();
        }
        if self.at_keyword("BASE") {
            self.pos += "BASE".len();
            return self.base_decl();
        }
        self.triples()?;
        self.expect('.', "'.' at end of statement")
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let start = self.pos;
        let label = self.prefix_label();
        if self.peek() != Some(':') {
            return Err(self.error_at(start, "expected a prefix label ending in ':'"));
        }
        self.bump();
        self.skip_ws();
        let ns = self.iri_ref()?;
        self.graph.prefixes_mut().insert(label, ns);
        Ok(())
    }

    fn base_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let base = self.iri_ref()?;
        self.base = Some(base);
        Ok(())
    }

    fn prefix_label(&mut self) -> String {
        let start = self.pos;
        if self.peek().is_some_and(char::is_alphabetic) {
            while self.peek().is_some_and(is_name_char) {
                self.bump();
            }
            while self.src[start..self.pos].ends_with('.') {
                self.pos -= 1;
            }
        }
        self.src[start..self.pos].to_owned()
    }

    fn triples(&mut self) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                let subject = self.blank_property_list()?;
                self.skip_ws();
                if self.peek() != Some('.') {
                    self.predicate_object_list(&subject)?;
                }
                Ok(())
            }
            _ => {
                let subject = self.subject()?;
                self.predicate_object_list(&subject)
            }
        }
    }

    fn subject(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('(') => self.collection(),
            Some('_') if self.peek_at(1) == Some(':') => Ok(self.blank_label()),
            Some('<') => Ok(Term::Iri(self.iri()?)),
            Some('"') | Some('\'') => Err(self.error_at(self.pos, "a literal cannot be a subject")),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                Err(self.error_at(self.pos, "a literal cannot be a subject"))
            }
            Some(_) => Ok(Term::Iri(self.iri()?)),
            None => Err(self.unexpected("a subject")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                self.emit(subject.clone(), predicate.clone(), object);
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Iri> {
        self.skip_ws();
        if self.peek() == Some('a')
            && !self
                .peek_at(1)
                .is_some_and(|c| is_name_char(c) || c == ':')
        {
            self.bump();
            return Ok(Iri::from_static(rdf::TYPE));
        }
        match self.peek() {
            Some('<') => self.iri(),
            Some(c) if c.is_alphabetic() || c == ':' => self.iri(),
            _ => Err(self.unexpected("a predicate")),
        }
    }

    fn object(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('[') => self.blank_property_list(),
            Some('(') => self.collection(),
            Some('_') if self.peek_at(1) == Some(':') => Ok(self.blank_label()),
            Some('<') => Ok(Term::Iri(self.iri()?)),
            Some('"') | Some('\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.number(),
            Some(_) if self.at_word("true") => {
                self.pos += 4;
                Ok(Term::Literal(Literal::typed("true", Iri::from_static(xsd::BOOLEAN))))
            }
            Some(_) if self.at_word("false") => {
                self.pos += 5;
                Ok(Term::Literal(Literal::typed("false", Iri::from_static(xsd::BOOLEAN))))
            }
            Some(c) if c.is_alphabetic() || c == ':' => Ok(Term::Iri(self.iri()?)),
            _ => Err(self.unexpected("an object")),
        }
    }

    fn at_word(&self, word: &str) -> bool {
        self.rest().starts_with(word)
            && !self.rest()[word.len()..]
                .chars()
                .next()
                .is_some_and(|c| is_name_char(c) || c == ':')
    }

    fn emit(&mut self, subject: Term, predicate: Iri, object: Term) {
        self.graph.insert(Triple {
            subject,
            predicate,
            object,
        });
    }

    fn fresh(&mut self) -> Term {
        Term::BlankNode(self.graph.fresh_blank())
    }

    fn blank_label(&mut self) -> Term {
        self.pos += 2;
        let start = self.pos;
        while self.peek().is_some_and(is_name_char) {
            self.bump();
        }
        while self.src[start..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        let label = self.src[start..self.pos].to_owned();
        if let Some(b) = self.labels.get(&label) {
            return Term::BlankNode(b.clone());
        }
        let fresh = self.graph.fresh_blank();
        self.labels.insert(label, fresh.clone());
        Term::BlankNode(fresh)
    }

    fn blank_property_list(&mut self) -> PResult<Term> {
        self.bump(); // '['
        let node = self.fresh();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.expect(']', "']' closing a blank node property list")?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        let open = self.pos;
        self.bump(); // '('
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    break;
                }
                None => return Err(self.error_at(open, "unterminated collection")),
                _ => items.push(self.object()?),
            }
        }
        let nil = Term::Iri(Iri::from_static(rdf::NIL));
        if items.is_empty() {
            return Ok(nil);
        }
        let nodes: Vec<Term> = items.iter().map(|_| self.fresh()).collect();
        for (i, item) in items.into_iter().enumerate() {
            let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| nil.clone());
            self.emit(nodes[i].clone(), Iri::from_static(rdf::FIRST), item);
            self.emit(nodes[i].clone(), Iri::from_static(rdf::REST), rest);
        }
        Ok(nodes[0].clone())
    }

    fn iri(&mut self) -> PResult<Iri> {
        let start = self.pos;
        let iri = if self.peek() == Some('<') {
            self.iri_ref()?
        } else {
            self.prefixed_name()?
        };
        Iri::new(iri).map_err(|e| self.error_at(start, e.to_string()))
    }

    fn prefixed_name(&mut self) -> PResult<String> {
        let start = self.pos;
        let label = self.prefix_label();
        if self.peek() != Some(':') {
            return Err(self.error_at(start, "expected an IRI or prefixed name"));
        }
        self.bump();
        let Some(ns) = self.graph.prefixes().get(&label).map(str::to_owned) else {
            return Err(self.error_at(start, format!("undefined prefix '{label}:'")));
        };
        let local = self.local_name()?;
        Ok(format!("{ns}{local}"))
    }

    fn local_name(&mut self) -> PResult<String> {
        let mut out = String::new();
        let mut first = true;
        while let Some(c) = self.peek() {
            let ok = if first {
                c.is_alphanumeric() || matches!(c, '_' | ':' | '%' | '\\')
            } else {
                is_name_char(c) || matches!(c, ':' | '%' | '\\')
            };
            if !ok {
                break;
            }
            if c == '\\' {
                let at = self.pos;
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => out.push(e),
                    _ => return Err(self.error_at(at, "invalid escape in local name")),
                }
            } else if c == '%' {
                let at = self.pos;
                let hex: String = self.rest().chars().skip(1).take(2).collect();
                if hex.len() != 2 || !hex.chars().all(|h| h.is_ascii_hexdigit()) {
                    return Err(self.error_at(at, "invalid percent-encoding in local name"));
                }
                out.push('%');
                out.push_str(&hex);
                self.pos += 3;
            } else {
                out.push(c);
                self.bump();
            }
            first = false;
        }
        // A trailing '.' ends the statement rather than the name.
        while out.ends_with('.') && self.src[..self.pos].ends_with('.') {
            out.pop();
            self.pos -= 1;
        }
        Ok(out)
    }

    fn iri_ref(&mut self) -> PResult<String> {
        let start = self.pos;
        if self.peek() != Some('<') {
            return Err(self.unexpected("'<'"));
        }
        self.bump();
        let mut out = String::new();
        loop {
            let at = self.pos;
            match self.bump() {
                None | Some('\n') => return Err(self.error_at(start, "unterminated IRI")),
                Some('>') => break,
                Some('\\') => {
                    let c = self.unicode_escape(at)?;
                    out.push(c);
                }
                Some(c) if c <= ' ' || "<\"{}|^`".contains(c) => {
                    return Err(self.error_at(at, format!("character {c:?} not allowed in an IRI")));
                }
                Some(c) => out.push(c),
            }
        }
        self.resolve(out, start)
    }

    fn resolve(&self, iri: String, at: usize) -> PResult<String> {
        if is_absolute_iri(&iri) {
            return Ok(iri);
        }
        let Some(base) = &self.base else {
            return Err(self.error_at(at, format!("relative IRI <{iri}> with no base")));
        };
        let path = iri.split(['?', '#']).next().unwrap_or("");
        if iri.starts_with('/') || path.split('/').any(|seg| seg == "." || seg == "..") {
            return Err(self.error_at(
                at,
                format!("relative IRI <{iri}> needs full reference resolution, which is not supported"),
            ));
        }
        Ok(format!("{base}{iri}"))
    }

    /// After a backslash: `\uXXXX` or `\UXXXXXXXX`.
    fn unicode_escape(&mut self, at: usize) -> PResult<char> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error_at(at, "invalid escape sequence")),
        };
        let hex: String = self.rest().chars().take(width).collect();
        if hex.len() != width || !hex.chars().all(|h| h.is_ascii_hexdigit()) {
            return Err(self.error_at(at, "invalid unicode escape"));
        }
        self.pos += width;
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error_at(at, "escape is not a valid code point"))
    }

    fn literal(&mut self) -> PResult<Term> {
        let start = self.pos;
        let quote = self.peek().expect("caller saw a quote");
        let long = self.rest().starts_with(&quote.to_string().repeat(3));
        self.pos += if long { 3 } else { 1 };
        let mut lexical = String::new();
        loop {
            let at = self.pos;
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated string literal")),
                Some('\n') | Some('\r') if !long => {
                    return Err(self.error_at(start, "unterminated string literal"))
                }
                Some('\\') => {
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') | Some('U') => {
                            lexical.push(self.unicode_escape(at)?);
                            continue;
                        }
                        _ => return Err(self.error_at(at, "invalid escape sequence")),
                    };
                    self.bump();
                    lexical.push(c);
                }
                Some(c) if c == quote => {
                    if !long {
                        break;
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        // Quotes directly before the closing triple belong to the content.
                        let mut run = 1;
                        while self.peek_at(run - 1) == Some(quote) {
                            run += 1;
                        }
                        for _ in 0..run - 3 {
                            lexical.push(quote);
                        }
                        self.pos += (run - 1) * quote.len_utf8();
                        break;
                    }
                    lexical.push(c);
                }
                Some(c) => lexical.push(c),
            }
        }
        if self.peek() == Some('@') {
            let at = self.pos;
            self.bump();
            let tag_start = self.pos;
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '-')
            {
                self.bump();
            }
            let tag = &self.src[tag_start..self.pos];
            let valid = !tag.is_empty()
                && tag.split('-').all(|p| !p.is_empty())
                && tag.split('-').next().is_some_and(|p| p.chars().all(|c| c.is_ascii_alphabetic()));
            if !valid {
                return Err(self.error_at(at, "invalid language tag"));
            }
            return Ok(Term::Literal(Literal::lang(lexical, tag)));
        }
        if self.rest().starts_with("^^") {
            self.pos += 2;
            let datatype = self.iri()?;
            return Ok(Term::Literal(Literal::typed(lexical, datatype)));
        }
        Ok(Term::Literal(Literal::string(lexical)))
    }

    fn number(&mut self) -> PResult<Term> {
        let start = self.pos;
        if matches!(self.peek(), Some('+') | Some('-')) {
            self.bump();
        }
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.bump();
            }
            p.pos - s
        };
        let int_digits = digits(self);
        let mut datatype = xsd::INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            digits(self);
            datatype = xsd::DECIMAL;
        } else if int_digits == 0 && !matches!(self.peek(), Some('e') | Some('E')) {
            return Err(self.error_at(start, "malformed number"));
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            let at = self.pos;
            self.bump();
            if matches!(self.peek(), Some('+') | Some('-')) {
                self.bump();
            }
            if digits(self) == 0 {
                return Err(self.error_at(at, "malformed exponent"));
            }
            datatype = xsd::DOUBLE;
        }
        let lexical = &self.src[start..self.pos];
        Ok(Term::Literal(Literal::typed(lexical, Iri::from_static(datatype))))
    }
}
