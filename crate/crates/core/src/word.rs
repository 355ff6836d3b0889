//! Free-group words, finite presentations and the presentation file parser.
//!
//! A letter is a non-zero `i32`: `g + 1` stands for generator `g` and
//! `-(g + 1)` for its inverse. Commutators follow `[x, y] = x y x^-1 y^-1`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A word in a free group, stored as signed 1-based generator letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word from raw letters and freely reduces it.
    ///
    /// Panics if a letter is zero.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = Word { letters: Vec::new() };
        for l in letters {
            w.push(l);
        }
        w
    }

    /// The word consisting of generator `g` (0-based).
    pub fn gen(g: usize) -> Self {
        Word { letters: vec![g as i32 + 1] }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends one letter, cancelling against the last letter if possible.
    pub fn push(&mut self, letter: i32) {
        assert!(letter != 0, "zero is not a letter");
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    /// Exponent sum of each generator, for `rank` generators.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for &l in &self.letters {
            sums[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        sums
    }

    /// Renders the word with the given generator names, `1` for the identity.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        Word::mul(self, rhs)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        // Collapse runs of equal letters into powers.
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.signum() as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = &self.names[l.unsigned_abs() as usize - 1];
            if run == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// A finite presentation: named generators and freely reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {index} uses generator index {generator} but only {rank} generators exist")]
    LetterOutOfRange {
        index: usize,
        generator: usize,
        rank: usize,
    },
}

impl Presentation {
    pub fn new(
        generator_names: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        if generator_names.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        let mut seen = HashMap::new();
        for name in &generator_names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let rank = generator_names.len();
        for (index, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= rank {
                    return Err(PresentationError::LetterOutOfRange {
                        index,
                        generator: g,
                        rank,
                    });
                }
            }
        }
        // Relators are kept freely reduced.
        let relators = relators
            .into_iter()
            .map(|r| Word::from_letters(r.letters().iter().copied()))
            .collect();
        Ok(Presentation {
            generator_names,
            relators,
        })
    }

    pub fn rank(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// Returns a copy with one extra relator appended.
    pub fn with_relator(&self, relator: Word) -> Result<Self, PresentationError> {
        let mut rels = self.relators.clone();
        rels.push(relator);
        Presentation::new(self.generator_names.clone(), rels)
    }

    /// Serializes in the presentation file format accepted by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.generator_names.join(" "));
        for r in &self.relators {
            out.push_str(&format!("rel: {}\n", r.display_with(&self.generator_names)));
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared generator {0:?}")]
    UndeclaredGenerator(String),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("`gens:` declared more than once")]
    GensRedeclared,
    #[error("`rel:` line before any `gens:` line")]
    MissingGens,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// gens: x y      # once
/// rel: x^2       # zero or more
/// rel: [x,y] y^-3
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let offset = content.len() - trimmed.len();
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            column,
            kind,
        };
        if let Some(rest) = trimmed.strip_prefix("gens:") {
            if names.is_some() {
                return Err(err(offset + 1, ParseErrorKind::GensRedeclared));
            }
            let base = offset + "gens:".len();
            let mut list = Vec::new();
            for (col, tok) in split_tokens(rest) {
                if !is_identifier(tok) {
                    return Err(err(
                        base + col + 1,
                        ParseErrorKind::Syntax(format!("invalid generator name {tok:?}")),
                    ));
                }
                if list.iter().any(|n: &String| n == tok) {
                    return Err(err(
                        base + col + 1,
                        ParseErrorKind::DuplicateGenerator(tok.to_string()),
                    ));
                }
                list.push(tok.to_string());
            }
            if list.is_empty() {
                return Err(err(offset + 1, ParseErrorKind::EmptyGenerators));
            }
            names = Some(list);
        } else if let Some(rest) = trimmed.strip_prefix("rel:") {
            let Some(gens) = names.as_ref() else {
                return Err(err(offset + 1, ParseErrorKind::MissingGens));
            };
            let base = offset + "rel:".len();
            let mut parser = WordParser {
                chars: rest.chars().collect(),
                pos: 0,
                names: gens,
            };
            let word = parser
                .parse_word_until_end()
                .map_err(|(col, kind)| err(base + col + 1, kind))?;
            relators.push(word);
        } else {
            return Err(err(
                offset + 1,
                ParseErrorKind::Syntax("expected `gens:` or `rel:`".into()),
            ));
        }
    }
    let Some(names) = names else {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::EmptyGenerators,
        });
    };
    Ok(Presentation::new(names, relators).expect("parser validated generators and letters"))
}

/// Parses a single word over known generator names (same atom syntax as `rel:` lines).
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    let mut parser = WordParser {
        chars: text.chars().collect(),
        pos: 0,
        names,
    };
    parser
        .parse_word_until_end()
        .map_err(|(col, kind)| ParseError {
            line: 1,
            column: col + 1,
            kind,
        })
}

fn split_tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out.into_iter()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

type PResult<T> = Result<T, (usize, ParseErrorKind)>;

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err((self.pos, ParseErrorKind::Syntax(msg.into())))
    }

    fn parse_word_until_end(&mut self) -> PResult<Word> {
        let w = self.parse_word()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return self.syntax(format!("unexpected character {:?}", self.chars[self.pos]));
        }
        Ok(w)
    }

    /// Parses atoms until a `,`, `]` or end of input.
    fn parse_word(&mut self) -> PResult<Word> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(',') | Some(']') => return Ok(w),
                Some('[') => {
                    self.pos += 1;
                    let a = self.parse_word()?;
                    self.skip_ws();
                    if self.peek() != Some(',') {
                        return self.syntax("expected `,` in commutator");
                    }
                    self.pos += 1;
                    let b = self.parse_word()?;
                    self.skip_ws();
                    if self.peek() != Some(']') {
                        return self.syntax("expected `]` closing commutator");
                    }
                    self.pos += 1;
                    w = w.mul(&Word::commutator(&a, &b));
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while let Some(c) = self.peek() {
                        if c.is_alphanumeric() || c == '_' {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    let Some(g) = self.names.iter().position(|n| *n == name) else {
                        return Err((start, ParseErrorKind::UndeclaredGenerator(name)));
                    };
                    let mut exp = 1i64;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        exp = self.parse_int()?;
                        if exp == 0 {
                            return self.syntax("exponent must be non-zero");
                        }
                    }
                    w = w.mul(&Word::gen(g).pow(exp));
                }
                Some(c) => return self.syntax(format!("unexpected character {c:?}")),
            }
        }
    }

    fn parse_int(&mut self) -> PResult<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>()
            .map_err(|_| (start, ParseErrorKind::Syntax(format!("invalid exponent {s:?}"))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_presentation() {
        let p = parse_presentation("gens: x y\nrel: x^2\nrel: y^2\nrel: [x,y]").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2].letters(), &[1, 2, -1, -2]);
    }

    #[test]
    fn undeclared_generator_is_reported() {
        let e = parse_presentation("gens: x\nrel: [x,y]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredGenerator("y".into()));
        assert_eq!(e.line, 2);
    }

    #[test]
    fn empty_generator_list() {
        let e = parse_presentation("gens:\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyGenerators);
        let e = parse_presentation("# nothing\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyGenerators);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_presentation("gens: x y\nrel: x^0").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_presentation("gens: x y\nrel: [x y]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 10));
        let e = parse_presentation("gens: x y\nbogus").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn comments_and_free_reduction() {
        let p = parse_presentation("gens: a b # two\n# full line\nrel: a b b^-1 a^-1 a^3").unwrap();
        assert_eq!(p.relators()[0].letters(), &[1, 1, 1]);
    }

    #[test]
    fn nested_commutators() {
        let p = parse_presentation("gens: a b c\nrel: [[a,b],c]").unwrap();
        let ab = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(p.relators()[0], Word::commutator(&ab, &Word::gen(2)));
    }

    #[test]
    fn word_algebra() {
        let x = Word::gen(0);
        let y = Word::gen(1);
        assert!(x.mul(&x.inverse()).is_empty());
        assert_eq!(x.pow(-2).letters(), &[-1, -1]);
        let c = Word::commutator(&x, &y);
        assert_eq!(c.exponent_sums(2), vec![0, 0]);
        assert_eq!(Word::commutator(&x, &x), Word::identity());
    }

    #[test]
    fn display_round_trips() {
        let text = "gens: r1 t1\nrel: r1^2\nrel: [r1,t1] t1^-3\n";
        let p = parse_presentation(text).unwrap();
        let again = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn multichar_identifiers_need_whitespace() {
        let e = parse_presentation("gens: x y\nrel: xy").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredGenerator("xy".into()));
    }
}
