//! Reduced words over a finite generating set.
//!
//! A [`Word`] is a freely reduced string of signed generators. Every
//! constructor reduces, so adjacent cancelling pairs never survive into a
//! stored value; unreduced letter sequences exist only transiently inside
//! parsing and substitution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordError {
    #[error("invalid generator name {name:?}: names start with a letter and use only letters, digits and underscore")]
    InvalidGeneratorName { name: String },
    #[error("no substitution rule for generator `{gen}`")]
    MissingRule { gen: Generator },
    #[error("generator `{gen}` is not in the alphabet")]
    UnknownGenerator { gen: Generator },
    #[error("cannot parse word at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// A named generator. Generators compare and hash by name only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    name: String,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Result<Self, WordError> {
        let name = name.into();
        if valid_name(&name) {
            Ok(Generator { name })
        } else {
            Err(WordError::InvalidGeneratorName { name })
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A signed generator occurrence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: Generator, sign: Sign) -> Self {
        Letter { gen, sign }
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen.clone(), sign: self.sign.flip() }
    }

    pub fn is_inverse_of(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "{}", self.gen),
            Sign::Neg => write!(f, "{}^-1", self.gen),
        }
    }
}

/// A freely reduced word. The empty word is the group identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last().map_or(false, |t| t.is_inverse_of(&l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Free reduction: cancels adjacent `s s^-1` pairs until none remain.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn from_gen(gen: &Generator) -> Self {
        Word { letters: vec![Letter::new(gen.clone(), Sign::Pos)] }
    }

    pub fn from_letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for l in &other.letters {
            push_reduced(&mut out, l.clone());
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `by · self · by^-1`.
    pub fn conjugate_by(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.inverse())
    }

    /// Splits off a maximal conjugating prefix: returns `(core, u)` with
    /// `self = u · core · u^-1` in the free group and `core` cyclically
    /// reduced (its first and last letters are not mutually inverse).
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut core = self.letters.clone();
        let mut pre = Vec::new();
        while core.len() >= 2 && core[0].is_inverse_of(core.last().unwrap()) {
            pre.push(core.remove(0));
            core.pop();
        }
        (Word { letters: core }, Word { letters: pre })
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() < 2 || !self.letters[0].is_inverse_of(self.letters.last().unwrap())
    }

    /// Rotates the word left by `k` letters (a cyclic conjugate).
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::from_letters(letters)
    }

    /// Counts positive and negative occurrences of `gen`.
    pub fn occurrences(&self, gen: &Generator) -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for l in &self.letters {
            if &l.gen == gen {
                match l.sign {
                    Sign::Pos => pos += 1,
                    Sign::Neg => neg += 1,
                }
            }
        }
        (pos, neg)
    }

    pub fn contains_gen(&self, gen: &Generator) -> bool {
        self.letters.iter().any(|l| &l.gen == gen)
    }

    /// Signed occurrence count of `gen` (the exponent-sum homomorphism).
    pub fn exponent_sum(&self, gen: &Generator) -> i64 {
        let (pos, neg) = self.occurrences(gen);
        pos as i64 - neg as i64
    }

    /// Replaces each letter by the image of its generator; `s^-1` maps to the
    /// inverse of the rule for `s`. Every generator occurring in the word
    /// needs a rule (identity rules are fine). The result is reduced.
    pub fn substitute(&self, rules: &BTreeMap<Generator, Word>) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for l in &self.letters {
            let image = rules.get(&l.gen).ok_or_else(|| WordError::MissingRule { gen: l.gen.clone() })?;
            match l.sign {
                Sign::Pos => {
                    for il in image.letters() {
                        push_reduced(&mut out, il.clone());
                    }
                }
                Sign::Neg => {
                    for il in image.letters().iter().rev() {
                        push_reduced(&mut out, il.inverse());
                    }
                }
            }
        }
        Ok(Word { letters: out })
    }

    /// Exponent-sum vector with respect to an ordered alphabet.
    pub fn abelianization_vector(&self, alphabet: &[Generator]) -> Result<Vec<i64>, WordError> {
        for l in &self.letters {
            if !alphabet.contains(&l.gen) {
                return Err(WordError::UnknownGenerator { gen: l.gen.clone() });
            }
        }
        Ok(alphabet.iter().map(|g| self.exponent_sum(g)).collect())
    }

    /// First generator occurring in the word that is missing from `gens`.
    pub fn first_gen_outside<'a>(&'a self, gens: &[Generator]) -> Option<&'a Generator> {
        self.letters.iter().map(|l| &l.gen).find(|g| !gens.contains(g))
    }
}

/// Canonical syntax: whitespace-separated tokens `name`, `name^-1` or
/// `name^k` (runs of an equal letter collapse to a power); the empty word
/// prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = &self.letters[i];
            let mut j = i + 1;
            while j < self.letters.len() && self.letters[j] == *l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign.exponent();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, run)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for (at, tok) in tokenize(s) {
            parse_token(tok, at, &mut letters)?;
        }
        Ok(Word::from_letters(letters))
    }
}

/// Whitespace tokenizer that remembers byte offsets (for error reporting).
pub(crate) fn tokenize(s: &str) -> impl Iterator<Item = (usize, &str)> {
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

pub(crate) fn parse_token(tok: &str, at: usize, letters: &mut Vec<Letter>) -> Result<(), WordError> {
    if tok == "1" {
        return Ok(());
    }
    let (name, exp) = match tok.split_once('^') {
        None => (tok, 1i64),
        Some((name, e)) => {
            let exp: i64 = e.parse().map_err(|_| WordError::Parse {
                at,
                msg: format!("bad exponent {e:?} in token {tok:?}"),
            })?;
            if exp == 0 {
                return Err(WordError::Parse { at, msg: format!("zero exponent in token {tok:?}") });
            }
            (name, exp)
        }
    };
    let gen = Generator::new(name).map_err(|_| WordError::Parse {
        at,
        msg: format!("bad generator name {name:?} in token {tok:?}"),
    })?;
    let sign = if exp > 0 { Sign::Pos } else { Sign::Neg };
    for _ in 0..exp.unsigned_abs() {
        letters.push(Letter::new(gen.clone(), sign));
    }
    Ok(())
}

/// Parses a word, convenience wrapper around `FromStr`.
pub fn parse_word(s: &str) -> Result<Word, WordError> {
    s.parse()
}
