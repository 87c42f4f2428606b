//! A lossless SPARQL tokenizer.
//!
//! Tokens cover the input exactly (whitespace and comments included), so text
//! can be rewritten token by token without disturbing anything else. It knows
//! just enough of the grammar to keep variables, IRIs, prefixed names and
//! string literals apart.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    /// `?name` or `$name`.
    Var,
    /// `<...>` IRI reference.
    Iri,
    /// `prefix:local`, including the empty prefix.
    PName,
    /// `_:label`.
    Blank,
    /// Quoted string in any of the four quote styles.
    Str,
    /// `@lang` tag following a string.
    LangTag,
    Number,
    /// Keywords, function names, `a`.
    Word,
    Punct,
    Space,
    Comment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte range in the source.
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn text<'a>(&self, src: &'a str) -> &'a str {
        &src[self.start..self.end]
    }

    pub fn is_trivia(&self) -> bool {
        matches!(self.kind, TokenKind::Space | TokenKind::Comment)
    }

    /// Variable name without its sigil.
    pub fn var_name<'a>(&self, src: &'a str) -> Option<&'a str> {
        (self.kind == TokenKind::Var).then(|| &src[self.start + 1..self.end])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct LexError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "offset {}: {}", self.offset, self.message)
    }
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '.' || c == '\u{b7}'
}

fn is_var_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\u{b7}'
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let offset = |i: usize| chars.get(i).map_or(src.len(), |&(o, _)| o);
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        let start = i;
        let kind = if c.is_whitespace() {
            while at(i).is_some_and(char::is_whitespace) {
                i += 1;
            }
            TokenKind::Space
        } else if c == '#' {
            while at(i).is_some_and(|c| c != '\n') {
                i += 1;
            }
            TokenKind::Comment
        } else if (c == '?' || c == '$') && at(i + 1).is_some_and(is_var_char) {
            i += 1;
            while at(i).is_some_and(is_var_char) {
                i += 1;
            }
            TokenKind::Var
        } else if c == '<' && iri_end(&chars, i).is_some() {
            i = iri_end(&chars, i).unwrap_or(i + 1);
            TokenKind::Iri
        } else if c == '"' || c == '\'' {
            i = string_end(&chars, i).ok_or_else(|| LexError {
                offset: offset(start),
                message: "unterminated string literal".into(),
            })?;
            TokenKind::Str
        } else if c == '@' && at(i + 1).is_some_and(|c| c.is_ascii_alphabetic()) {
            i += 1;
            while at(i).is_some_and(|c| c.is_ascii_alphanumeric() || c == '-') {
                i += 1;
            }
            TokenKind::LangTag
        } else if c.is_ascii_digit()
            || (c == '.' && at(i + 1).is_some_and(|c| c.is_ascii_digit()))
        {
            while at(i).is_some_and(|c| c.is_ascii_digit() || c == '.') {
                i += 1;
            }
            if at(i).is_some_and(|c| c == 'e' || c == 'E') {
                i += 1;
                if at(i).is_some_and(|c| c == '+' || c == '-') {
                    i += 1;
                }
                while at(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
            }
            // A trailing dot ends the triple, it is not part of the number.
            while i > start + 1 && at(i - 1) == Some('.') {
                i -= 1;
            }
            TokenKind::Number
        } else if c == '_' && at(i + 1) == Some(':') {
            i += 2;
            while at(i).is_some_and(is_name_char) {
                i += 1;
            }
            while at(i - 1) == Some('.') {
                i -= 1;
            }
            TokenKind::Blank
        } else if is_name_start(c) || c == ':' {
            while at(i).is_some_and(is_name_char) {
                i += 1;
            }
            while i > start && at(i - 1) == Some('.') {
                i -= 1;
            }
            if at(i) == Some(':') {
                i += 1;
                while at(i).is_some_and(|c| is_name_char(c) || c == ':' || c == '%') {
                    i += 1;
                }
                while at(i - 1) == Some('.') {
                    i -= 1;
                }
                TokenKind::PName
            } else {
                TokenKind::Word
            }
        } else {
            i += 1;
            // Two-character operators stay together so they are not mistaken for other tokens.
            let pair = at(i).map(|n| (c, n));
            if matches!(
                pair,
                Some(('&', '&') | ('|', '|') | ('!', '=') | ('<', '=') | ('>', '=') | ('^', '^'))
            ) {
                i += 1;
            }
            TokenKind::Punct
        };
        tokens.push(Token {
            kind,
            start: offset(start),
            end: offset(i),
        });
    }
    Ok(tokens)
}

/// End index (exclusive) of an IRI reference starting at `i`, if the text there is one.
fn iri_end(chars: &[(usize, char)], i: usize) -> Option<usize> {
    let mut j = i + 1;
    while let Some(&(_, c)) = chars.get(j) {
        match c {
            '>' => return Some(j + 1),
            c if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') => {
                return None
            }
            _ => j += 1,
        }
    }
    None
}

fn string_end(chars: &[(usize, char)], i: usize) -> Option<usize> {
    let q = chars[i].1;
    let at = |k: usize| chars.get(k).map(|&(_, c)| c);
    let long = at(i + 1) == Some(q) && at(i + 2) == Some(q);
    let mut j = if long { i + 3 } else { i + 1 };
    loop {
        let c = at(j)?;
        match c {
            '\\' => j += 2,
            c if c == q => {
                if !long {
                    return Some(j + 1);
                }
                if at(j + 1) == Some(q) && at(j + 2) == Some(q) {
                    // Up to two extra quotes may close the content before the delimiter.
                    let mut end = j + 3;
                    while at(end) == Some(q) && end < j + 5 {
                        end += 1;
                    }
                    return Some(end);
                }
                j += 1;
            }
            '\n' | '\r' if !long => return None,
            _ => j += 1,
        }
    }
}

/// Significant tokens only.
pub fn significant(tokens: &[Token]) -> impl Iterator<Item = &Token> {
    tokens.iter().filter(|t| !t.is_trivia())
}

/// Texts of the significant tokens; two snippets with equal results are
/// token-equal regardless of whitespace and comments.
pub fn token_texts(src: &str) -> Result<Vec<String>, LexError> {
    Ok(significant(&tokenize(src)?)
        .map(|t| t.text(src).to_owned())
        .collect())
}

/// Whether the significant tokens of `needle` occur as a contiguous run in `haystack`.
pub fn contains_token_run(haystack: &str, needle: &str) -> bool {
    match (token_texts(haystack), token_texts(needle)) {
        (Ok(h), Ok(n)) => n.is_empty() || h.windows(n.len()).any(|w| w == n.as_slice()),
        _ => false,
    }
}

/// Distinct variable names in order of first appearance.
pub fn variables(src: &str, tokens: &[Token]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for name in tokens.iter().filter_map(|t| t.var_name(src)) {
        if !out.iter().any(|v| v == name) {
            out.push(name.to_owned());
        }
    }
    out
}

/// Offsets of unmatched or mismatched `{}`, `()` and `[]`.
pub fn unbalanced(src: &str, tokens: &[Token]) -> Vec<(usize, String)> {
    let mut stack: Vec<(char, usize)> = Vec::new();
    let mut findings = Vec::new();
    for t in tokens.iter().filter(|t| t.kind == TokenKind::Punct) {
        let c = t.text(src).chars().next().unwrap_or(' ');
        match c {
            '{' | '(' | '[' => stack.push((c, t.start)),
            '}' | ')' | ']' => {
                let open = match c {
                    '}' => '{',
                    ')' => '(',
                    _ => '[',
                };
                match stack.pop() {
                    Some((o, _)) if o == open => {}
                    Some((o, at)) => {
                        findings.push((t.start, format!("'{c}' closes '{o}' opened at offset {at}")));
                    }
                    None => findings.push((t.start, format!("unmatched '{c}'"))),
                }
            }
            _ => {}
        }
    }
    findings.extend(stack.into_iter().map(|(o, at)| (at, format!("unclosed '{o}'"))));
    findings.sort();
    findings
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        significant(&tokenize(src).unwrap())
            .map(|t| (t.kind, t.text(src).to_owned()))
            .collect()
    }

    #[test]
    fn lossless() {
        let src = "SELECT * WHERE { ?s a <http://x/C> ; ex:p \"a ?b\"@en . } # ?c\n";
        let toks = tokenize(src).unwrap();
        let joined: String = toks.iter().map(|t| t.text(src)).collect();
        assert_eq!(joined, src);
    }

    #[test]
    fn variables_are_not_found_in_strings_or_iris() {
        let src = "BIND(CONCAT(\"?x\", STR(?y)) AS ?z) FILTER(<http://e/?x> != ?y)";
        let toks = tokenize(src).unwrap();
        assert_eq!(variables(src, &toks), ["y", "z"]);
    }

    #[test]
    fn less_than_is_an_operator() {
        let k = kinds("FILTER(?a < 3 && ?b <= ?c)");
        assert!(k.contains(&(TokenKind::Punct, "<".into())));
        assert!(k.contains(&(TokenKind::Punct, "<=".into())));
    }

    #[test]
    fn prefixed_names_and_trailing_dots() {
        let k = kinds("?a cco:hasMolecule chembl:CHEMBL941. ?b a :x.");
        assert_eq!(k[2], (TokenKind::PName, "chembl:CHEMBL941".into()));
        assert_eq!(k[3], (TokenKind::Punct, ".".into()));
        assert_eq!(k[6], (TokenKind::PName, ":x".into()));
    }

    #[test]
    fn long_strings() {
        let k = kinds("'''it's''' \"\"\"a \"quoted\"\"\"\"");
        assert_eq!(k.len(), 2);
        assert_eq!(k[1].1, "\"\"\"a \"quoted\"\"\"\"");
    }

    #[test]
    fn unterminated_string_reports_offset() {
        let err = tokenize("BIND(\"abc AS ?x)").unwrap_err();
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn token_runs() {
        assert!(contains_token_run("SELECT * WHERE { ?s  a\n<http://x/C> }", "?s a <http://x/C>"));
        assert!(!contains_token_run("?s a <http://x/C>", "?s a <http://x/D>"));
    }

    #[test]
    fn balance() {
        let src = "{ ( ] }";
        let f = unbalanced(src, &tokenize(src).unwrap());
        assert_eq!(f.len(), 1, "{f:?}");
        let src = "SELECT { ?s ?p ?o ";
        let f = unbalanced(src, &tokenize(src).unwrap());
        assert_eq!(f, vec![(7, "unclosed '{'".to_owned())]);
    }
}
