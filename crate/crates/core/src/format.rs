//! Line-oriented text formats.
//!
//! Words are whitespace-separated letters:
//!
//! ```text
//! Ta1 Tb1^-1 Td2 ( Ta1 Tb2 : Tb1^-1 ) [ Ta1 Tb1 ]^6
//! ```
//!
//! `Tc^k` repeats a twist `|k|` times, `( w : Tc^±1 )` is the conjugated twist
//! `w T_c^{±1} w⁻¹`, and `[ w ]^k` is the `k`-th power of a subword. `1` is
//! the empty word.
//!
//! Job files, relation dumps and witness files are `key = value` lines; `#`
//! starts a comment.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exterior::SymplecticSpace;
use crate::mcg::{Curve, Letter, MappingClassWord};
use crate::presentation::{JSymbol, PresLetter, Relation, RelationFamily, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
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

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Open,
    Close,
    Colon,
    LBracket,
    RBracket,
    Power(i64),
}

/// Tokens with their 1-based columns.
fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' | ')' | ':' | '[' | ']' => {
                out.push((
                    match c {
                        '(' => Tok::Open,
                        ')' => Tok::Close,
                        ':' => Tok::Colon,
                        '[' => Tok::LBracket,
                        _ => Tok::RBracket,
                    },
                    col,
                ));
                i += 1;
            }
            '^' => {
                let start = i + 1;
                let mut j = start;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[start..j].iter().collect();
                let k: i64 = text.parse().map_err(|_| ParseError::new(line, col, "expected an integer exponent after '^'"))?;
                out.push((Tok::Power(k), col));
                i = j;
            }
            _ => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                if i == start {
                    return Err(ParseError::new(line, col, format!("unexpected character '{c}'")));
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), col));
            }
        }
    }
    Ok(out)
}

struct WordParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    genus: usize,
    line: usize,
    end_col: usize,
}

impl WordParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn power(&mut self) -> i64 {
        if let Some(Tok::Power(k)) = self.peek() {
            let k = *k;
            self.pos += 1;
            k
        } else {
            1
        }
    }

    fn curve(&mut self) -> Result<Curve, ParseError> {
        let Some(Tok::Word(w)) = self.peek() else {
            return Err(self.err("expected a twist such as Ta1"));
        };
        let parsed = w.strip_prefix('T').and_then(Curve::parse);
        match parsed {
            Some(c) if c.exists_in(self.genus) => {
                self.pos += 1;
                Ok(c)
            }
            Some(c) => Err(self.err(format!("curve {c} does not exist in genus {}", self.genus))),
            None => Err(self.err(format!("malformed letter '{w}'"))),
        }
    }

    /// Letters up to the next closing token or the end of input.
    fn sequence(&mut self) -> Result<Vec<Letter>, ParseError> {
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if matches!(t, Tok::Close | Tok::Colon | Tok::RBracket) {
                break;
            }
            match t.clone() {
                Tok::Word(w) if w == "1" => self.pos += 1,
                Tok::Word(_) => {
                    let c = self.curve()?;
                    let k = self.power();
                    let l = Letter::Twist { curve: c, inverse: k < 0 };
                    out.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
                }
                Tok::Open => {
                    self.pos += 1;
                    let conjugator = self.sequence()?;
                    if self.peek() != Some(&Tok::Colon) {
                        return Err(self.err("expected ':' in conjugated twist"));
                    }
                    self.pos += 1;
                    let curve = self.curve()?;
                    let k = self.power();
                    if k.abs() != 1 {
                        return Err(self.err("conjugated twist exponent must be 1 or -1"));
                    }
                    if self.peek() != Some(&Tok::Close) {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    out.push(Letter::Conjugated { conjugator, curve, inverse: k < 0 });
                }
                Tok::LBracket => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    if self.peek() != Some(&Tok::RBracket) {
                        return Err(self.err("expected ']'"));
                    }
                    self.pos += 1;
                    let k = self.power();
                    let w = MappingClassWord::new(self.genus, true, inner).map_err(|e| self.err(e.to_string()))?;
                    out.extend(w.pow(k).letters().iter().cloned());
                }
                Tok::Power(_) => return Err(self.err("exponent without a letter")),
                Tok::Close | Tok::Colon | Tok::RBracket => unreachable!("loop stops at closing tokens"),
            }
        }
        Ok(out)
    }
}

/// Parses a word; `line` and `col` locate the text for error messages.
pub fn parse_word_at(text: &str, genus: usize, boundary: bool, line: usize, col: usize) -> Result<MappingClassWord, ParseError> {
    let toks = lex(text, line, col)?;
    let mut p = WordParser { toks: &toks, pos: 0, genus, line, end_col: col + text.chars().count() };
    let letters = p.sequence()?;
    if p.pos != toks.len() {
        return Err(p.err("unmatched closing bracket"));
    }
    MappingClassWord::new(genus, boundary, letters).map_err(|e| ParseError::new(line, col, e.to_string()))
}

pub fn parse_word(text: &str, genus: usize, boundary: bool) -> Result<MappingClassWord, ParseError> {
    parse_word_at(text, genus, boundary, 1, 1)
}

/// A `key = value` line with the column where the value starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KvLine {
    pub line: usize,
    pub key: String,
    pub value: String,
    pub value_col: usize,
}

/// Splits text into `key = value` lines, skipping blanks and comments.
pub fn parse_kv(text: &str) -> Result<Vec<KvLine>, ParseError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(ParseError::new(line, 1, "expected 'key = value'"));
        };
        let key = content[..eq].trim().to_string();
        if key.is_empty() {
            return Err(ParseError::new(line, 1, "empty key"));
        }
        let rest = &content[eq + 1..];
        let lead = rest.len() - rest.trim_start().len();
        let value_col = content[..eq + 1 + lead].chars().count() + 1;
        out.push(KvLine { line, key, value: rest.trim().to_string(), value_col });
    }
    Ok(out)
}

pub fn kv(key: &str, value: impl fmt::Display) -> String {
    format!("{key} = {value}")
}

/// Parsed job file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobFile {
    pub genus: usize,
    pub boundary: bool,
    pub words: Vec<(String, MappingClassWord)>,
    pub options: BTreeMap<String, String>,
}

impl JobFile {
    pub fn word(&self, name: &str) -> Option<&MappingClassWord> {
        self.words.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }
}

fn parse_usize(l: &KvLine) -> Result<usize, ParseError> {
    l.value.parse().map_err(|_| ParseError::new(l.line, l.value_col, format!("expected a non-negative integer for {}", l.key)))
}

pub fn parse_job(text: &str) -> Result<JobFile, ParseError> {
    let lines = parse_kv(text)?;
    let mut genus = None;
    let mut boundary = true;
    let mut options = BTreeMap::new();
    for l in &lines {
        match l.key.as_str() {
            "genus" => genus = Some(parse_usize(l)?),
            "boundary" => {
                boundary = match l.value.as_str() {
                    "0" => false,
                    "1" => true,
                    _ => return Err(ParseError::new(l.line, l.value_col, "boundary must be 0 or 1")),
                }
            }
            k if k.starts_with("option.") => {
                options.insert(k["option.".len()..].to_string(), l.value.clone());
            }
            k if k.starts_with("word.") => {}
            k => return Err(ParseError::new(l.line, 1, format!("unknown key '{k}'"))),
        }
    }
    let genus = genus.ok_or_else(|| ParseError::new(1, 1, "missing 'genus'"))?;
    if genus < 2 {
        return Err(ParseError::new(1, 1, format!("genus must be at least 2, got {genus}")));
    }
    let mut words = Vec::new();
    for l in lines.iter().filter(|l| l.key.starts_with("word.")) {
        let name = l.key["word.".len()..].to_string();
        if name.is_empty() || words.iter().any(|(n, _)| *n == name) {
            return Err(ParseError::new(l.line, 1, format!("missing or duplicate word name '{name}'")));
        }
        words.push((name, parse_word_at(&l.value, genus, boundary, l.line, l.value_col)?));
    }
    Ok(JobFile { genus, boundary, words, options })
}

fn parse_jsymbol(s: &str, genus: usize) -> Option<JSymbol> {
    let inner = s.strip_prefix("J(")?.strip_suffix(')')?;
    let space = SymplecticSpace::new(genus);
    let idx: Vec<usize> = inner.split(',').map(|p| space.parse_label(p.trim())).collect::<Option<_>>()?;
    let triple: [usize; 3] = idx.try_into().ok()?;
    JSymbol::new(genus, triple).ok()
}

/// Parses a word over `S_Mod ∪ S_∧` such as `J(a1,b1,a2) Ta1^-1`.
pub fn parse_pres_word(text: &str, genus: usize, line: usize, col0: usize) -> Result<Vec<PresLetter>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let at = text[offset..].find(tok).map_or(offset, |i| offset + i);
        offset = at + tok.len();
        let col = col0 + text[..at].chars().count();
        if tok == "1" {
            continue;
        }
        let (body, inverse) = match tok.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let symbol = if body.starts_with("J(") {
            Symbol::J(parse_jsymbol(body, genus).ok_or_else(|| ParseError::new(line, col, format!("malformed symbol '{tok}'")))?)
        } else {
            match body.strip_prefix('T').and_then(Curve::parse) {
                Some(c) if c.exists_in(genus) => Symbol::Mod(c),
                _ => return Err(ParseError::new(line, col, format!("malformed letter '{tok}'"))),
            }
        };
        out.push(PresLetter { symbol, inverse });
    }
    Ok(out)
}

pub fn format_pres_word(word: &[PresLetter]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// `genus = g` followed by one `relation.<family>.<idx> = <word>` line per
/// relation, numbered within each family.
pub fn format_relations(genus: usize, relations: &[Relation]) -> String {
    let mut out = vec![kv("genus", genus)];
    let mut counters: BTreeMap<&str, usize> = BTreeMap::new();
    for r in relations {
        let name = r.family.name();
        let idx = counters.entry(name).or_default();
        out.push(kv(&format!("relation.{name}.{idx}"), format_pres_word(&r.word)));
        *idx += 1;
    }
    out.join("\n") + "\n"
}

pub fn parse_relations(text: &str) -> Result<(usize, Vec<Relation>), ParseError> {
    let lines = parse_kv(text)?;
    let mut genus = None;
    let mut out = Vec::new();
    for l in &lines {
        if l.key == "genus" {
            genus = Some(parse_usize(l)?);
            continue;
        }
        let g = genus.ok_or_else(|| ParseError::new(l.line, 1, "'genus' must come first"))?;
        let parts: Vec<&str> = l.key.split('.').collect();
        if parts.len() != 3 || parts[0] != "relation" {
            return Err(ParseError::new(l.line, 1, format!("unknown key '{}'", l.key)));
        }
        let family = RelationFamily::from_name(parts[1])
            .ok_or_else(|| ParseError::new(l.line, 1, format!("unknown relation family '{}'", parts[1])))?;
        let word = parse_pres_word(&l.value, g, l.line, l.value_col)?;
        out.push(Relation { family, word });
    }
    Ok((genus.ok_or_else(|| ParseError::new(1, 1, "missing 'genus'"))?, out))
}

/// `genus = g` followed by `witness.J(x,y,z) = <word>` lines.
pub fn format_witnesses(genus: usize, witnesses: &[(JSymbol, MappingClassWord)]) -> String {
    let mut out = vec![kv("genus", genus)];
    for (j, w) in witnesses {
        out.push(kv(&format!("witness.{j}"), w));
    }
    out.join("\n") + "\n"
}

pub fn parse_witnesses(text: &str) -> Result<(usize, Vec<(JSymbol, MappingClassWord)>), ParseError> {
    let lines = parse_kv(text)?;
    let mut genus = None;
    let mut out = Vec::new();
    for l in &lines {
        if l.key == "genus" {
            genus = Some(parse_usize(l)?);
            continue;
        }
        let g = genus.ok_or_else(|| ParseError::new(l.line, 1, "'genus' must come first"))?;
        let sym = l
            .key
            .strip_prefix("witness.")
            .and_then(|s| parse_jsymbol(s, g))
            .ok_or_else(|| ParseError::new(l.line, 1, format!("malformed witness key '{}'", l.key)))?;
        out.push((sym, parse_word_at(&l.value, g, true, l.line, l.value_col)?));
    }
    Ok((genus.ok_or_else(|| ParseError::new(1, 1, "missing 'genus'"))?, out))
}
