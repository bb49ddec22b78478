//! Words, finite group presentations, a text grammar, and the free /
//! direct product constructors.
//!
//! The text grammar (whitespace-insensitive between tokens):
//!
//! ```text
//! presentation := "<" gen-list "|" rel-list ">"
//! gen-list     := ε | name ("," name)*
//! rel-list     := ε | word ("," word)*
//! word         := syllable+
//! syllable     := name ("^" integer)?      omitted exponent = 1, never 0
//! name         := [A-Za-z][A-Za-z0-9_']*
//! ```
//!
//! Values are immutable once built; relators are kept freely reduced at the
//! syllable level (adjacent same-generator syllables merged, zero exponents
//! dropped, empty relators removed).

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// One `generator^exponent` factor of a word. The generator is an index
/// into the owning presentation's generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: BigInt,
}

/// A freely reduced sequence of syllables: exponents are nonzero and
/// adjacent syllables name distinct generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    /// Builds a word, merging adjacent same-generator syllables and
    /// dropping anything that cancels to exponent zero.
    pub fn new<E: Into<BigInt>>(syllables: impl IntoIterator<Item = (usize, E)>) -> Word {
        let mut reduced: Vec<Syllable> = Vec::new();
        for (generator, exponent) in syllables {
            let exponent = exponent.into();
            if exponent.is_zero() {
                continue;
            }
            match reduced.last_mut() {
                Some(last) if last.generator == generator => {
                    last.exponent += exponent;
                    if last.exponent.is_zero() {
                        reduced.pop();
                    }
                }
                _ => reduced.push(Syllable {
                    generator,
                    exponent,
                }),
            }
        }
        Word { syllables: reduced }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The formal inverse: syllables reversed with negated exponents.
    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -&s.exponent,
                })
                .collect(),
        }
    }

    /// Total exponent of `generator` across the word.
    pub fn exponent_sum(&self, generator: usize) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| &s.exponent)
            .sum()
    }

    fn shift_generators(&self, offset: usize) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .map(|s| Syllable {
                    generator: s.generator + offset,
                    exponent: s.exponent.clone(),
                })
                .collect(),
        }
    }

    fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.generator).max()
    }
}

/// The commutator `x y x^-1 y^-1` of two generators.
fn commutator(x: usize, y: usize) -> Word {
    Word::new([(x, 1), (y, 1), (x, -1), (y, -1)])
}

/// Errors from programmatic [`Presentation`] construction.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("relator references generator {index} but only {count} generators exist")]
    GeneratorOutOfRange { index: usize, count: usize },
}

/// A finitely presented group: named generators and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates names and indices; empty relators are dropped.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Presentation, PresentationError> {
        let mut seen = HashSet::new();
        for name in &generators {
            if !is_valid_name(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(PresentationError::DuplicateName(name.clone()));
            }
        }
        for word in &relators {
            if let Some(index) = word.max_generator() {
                if index >= generators.len() {
                    return Err(PresentationError::GeneratorOutOfRange {
                        index,
                        count: generators.len(),
                    });
                }
            }
        }
        Ok(Self::from_parts(generators, relators))
    }

    /// Internal constructor for inputs already known to satisfy the
    /// invariants. Still drops empty relators.
    pub(crate) fn from_parts(generators: Vec<String>, relators: Vec<Word>) -> Presentation {
        let relators = relators.into_iter().filter(|w| !w.is_empty()).collect();
        Presentation {
            generators,
            relators,
        }
    }

    /// The empty presentation `< | >` of the trivial group.
    pub fn trivial() -> Presentation {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses the text grammar. Relators come back freely reduced.
    pub fn parse(text: &str) -> Result<Presentation, ParseError> {
        Parser::new(text).presentation()
    }

    /// Free product: disjoint union of generators and relators. Colliding
    /// names from `other` get a prime suffix until unique.
    pub fn free_product(&self, other: &Presentation) -> Presentation {
        let (generators, offset) = self.merged_generators(other);
        let relators = self
            .relators
            .iter()
            .cloned()
            .chain(other.relators.iter().map(|w| w.shift_generators(offset)))
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    /// Direct product: the free product plus one commutator relator for
    /// every pair of generators drawn from the two operands.
    pub fn direct_product(&self, other: &Presentation) -> Presentation {
        let mut product = self.free_product(other);
        let offset = self.generator_count();
        for x in 0..self.generator_count() {
            for y in 0..other.generator_count() {
                product.relators.push(commutator(x, y + offset));
            }
        }
        product
    }

    fn merged_generators(&self, other: &Presentation) -> (Vec<String>, usize) {
        let offset = self.generator_count();
        let mut generators = self.generators.clone();
        let mut taken: HashSet<String> = generators.iter().cloned().collect();
        for name in &other.generators {
            let mut candidate = name.clone();
            while taken.contains(&candidate) {
                candidate.push('\'');
            }
            taken.insert(candidate.clone());
            generators.push(candidate);
        }
        (generators, offset)
    }

    fn write_word(&self, f: &mut fmt::Formatter<'_>, word: &Word) -> fmt::Result {
        for (k, syllable) in word.syllables().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.generators[syllable.generator])?;
            if !syllable.exponent.is_one() {
                write!(f, "^{}", syllable.exponent)?;
            }
        }
        Ok(())
    }
}

/// Prints the grammar form, e.g. `< a, b | a b a^-1 b^-1 >`. Parsing the
/// output reproduces the presentation exactly.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        if !self.generators.is_empty() {
            write!(f, " {}", self.generators.join(", "))?;
        }
        write!(f, " |")?;
        for (i, word) in self.relators.iter().enumerate() {
            write!(f, "{}", if i == 0 { " " } else { ", " })?;
            self.write_word(f, word)?;
        }
        write!(f, " >")
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Parse failure with the byte offset where it happened.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}` in relator")]
    UnknownGenerator(String),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("unexpected trailing input")]
    TrailingInput,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn presentation(mut self) -> Result<Presentation, ParseError> {
        self.expect(b'<', "`<`")?;
        let generators = self.gen_list()?;
        self.expect(b'|', "`|`")?;
        let relators = self.rel_list(&generators)?;
        self.expect(b'>', "`>`")?;
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.err(ParseErrorKind::TrailingInput));
        }
        Ok(Presentation::from_parts(generators, relators))
    }

    fn gen_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        let mut seen = HashSet::new();
        self.skip_ws();
        if self.peek() == Some(b'|') {
            return Ok(names);
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            let name = self.name()?;
            if !seen.insert(name.clone()) {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::DuplicateGenerator(name),
                });
            }
            names.push(name);
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(names);
            }
        }
    }

    fn rel_list(&mut self, generators: &[String]) -> Result<Vec<Word>, ParseError> {
        let mut words = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b'>') {
            return Ok(words);
        }
        loop {
            words.push(self.word(generators)?);
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(words);
            }
        }
    }

    fn word(&mut self, generators: &[String]) -> Result<Word, ParseError> {
        let mut syllables = Vec::new();
        loop {
            self.skip_ws();
            if !self.at_name_start() {
                break;
            }
            let start = self.pos;
            let name = self.name()?;
            let generator = generators
                .iter()
                .position(|g| *g == name)
                .ok_or(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnknownGenerator(name),
                })?;
            self.skip_ws();
            let exponent = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                self.integer()?
            } else {
                BigInt::one()
            };
            syllables.push((generator, exponent));
        }
        if syllables.is_empty() {
            return Err(self.err(ParseErrorKind::Expected("a relator word")));
        }
        Ok(Word::new(syllables))
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        if !self.at_name_start() {
            return Err(self.err(ParseErrorKind::Expected("a generator name")));
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(String::from_utf8(self.bytes[start..self.pos].to_vec()).expect("ascii name"))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err(ParseErrorKind::Expected("an integer exponent")));
        }
        let digits = std::str::from_utf8(&self.bytes[digits_start..self.pos]).expect("ascii");
        let mut value: BigInt = digits.parse().expect("digit string");
        if negative {
            value = -value;
        }
        if value.is_zero() {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::ZeroExponent,
            });
        }
        Ok(value)
    }

    fn at_name_start(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic())
    }

    fn expect(&mut self, c: u8, label: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(ParseErrorKind::Expected(label)))
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }
}
