//! Alphabets, forbidden patterns, and finite configurations: the
//! pattern-matching layer the extension constructions and the search
//! harness are built on.
//!
//! Two representations of a configuration coexist deliberately. A
//! [`BallConfig`] is a window — a partial coloring of a Cayley ball — and
//! everything computed from it is *windowed*: a violation seen in the window
//! refutes global admissibility, a clean window proves nothing (compactness
//! only runs one way). A [`QuotientConfig`] colors a finite right-coset
//! space and induces an honest global configuration `y(g) := color(coset g)`,
//! so checks against it are exact.

mod format;
mod ops;

pub(crate) use ops::quotient_translates_equal;
pub use ops::{
    appears, expand_quotient, quotient_stabilizes, quotient_violations, shift, violations,
};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::groups::{Ball, CosetTable, DynModel, GroupError, GroupModel};
use crate::words::Word;

#[derive(Error, Debug)]
pub enum SftError {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("duplicate letter `{letter}` in alphabet")]
    DuplicateLetter { letter: String },
    #[error("letter {letter:?} is empty or contains whitespace, `,`, `=`, or `#`")]
    InvalidLetter { letter: String },
    #[error("pattern has {support} support points but {colors} colors")]
    SupportColorMismatch { support: usize, colors: usize },
    #[error("support points `{first}` and `{second}` are the same group element")]
    DuplicateSupportPoint { first: Word, second: Word },
    #[error("letter `{letter}` is not in the alphabet")]
    LetterOutsideAlphabet { letter: String },
    #[error("coloring has {colored} entries for {cosets} cosets")]
    IncompleteQuotientColoring { colored: usize, cosets: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An ordered finite alphabet of distinct symbols.
///
/// Symbols are plain strings; whitespace and the `.sft` format's punctuation
/// (`,`, `=`, `#`) are excluded so that serialized files stay unambiguous.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new(letters: Vec<String>) -> Result<Alphabet, SftError> {
        if letters.is_empty() {
            return Err(SftError::EmptyAlphabet);
        }
        for (i, l) in letters.iter().enumerate() {
            let bad =
                l.is_empty() || l.chars().any(|c| c.is_whitespace() || "=,#".contains(c));
            if bad {
                return Err(SftError::InvalidLetter { letter: l.clone() });
            }
            if letters[..i].iter().any(|seen| seen == l) {
                return Err(SftError::DuplicateLetter { letter: l.clone() });
            }
        }
        Ok(Alphabet { letters })
    }

    /// Convenience constructor from string literals.
    pub fn of(letters: &[&str]) -> Result<Alphabet, SftError> {
        Alphabet::new(letters.iter().map(|l| l.to_string()).collect())
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.letters.iter().any(|l| l == letter)
    }

    pub fn index_of(&self, letter: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.join(" "))
    }
}

/// A finite pattern: an ordered support of group elements, given as words,
/// with a color at each point.
///
/// Support points must be pairwise distinct *as group elements*, which the
/// constructor checks through the ambient model — supports are subsets of
/// the group, not lists of spellings, so `a b` and `b a` clash in `Z²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pattern {
    support: Vec<Word>,
    colors: Vec<String>,
}

impl Pattern {
    pub fn new(
        model: &dyn GroupModel,
        support: Vec<Word>,
        colors: Vec<String>,
    ) -> Result<Pattern, SftError> {
        if support.len() != colors.len() {
            return Err(SftError::SupportColorMismatch {
                support: support.len(),
                colors: colors.len(),
            });
        }
        for i in 0..support.len() {
            for j in 0..i {
                if model.equal(&support[j], &support[i])? {
                    return Err(SftError::DuplicateSupportPoint {
                        first: support[j].clone(),
                        second: support[i].clone(),
                    });
                }
            }
        }
        Ok(Pattern { support, colors })
    }

    /// The empty-support pattern, which appears everywhere (vacuously).
    pub fn empty() -> Pattern {
        Pattern { support: Vec::new(), colors: Vec::new() }
    }

    pub fn support(&self) -> &[Word] {
        &self.support
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Support points paired with their colors, in stored order.
    pub fn points(&self) -> impl Iterator<Item = (&Word, &str)> {
        self.support.iter().zip(self.colors.iter().map(String::as_str))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> =
            self.points().map(|(w, c)| format!("{w} = {c}")).collect();
        write!(f, "{}", pairs.join(" , "))
    }
}

/// A subshift of finite type: an alphabet, finitely many forbidden
/// patterns, and the ambient group model they are read in.
#[derive(Clone)]
pub struct Sft {
    model: DynModel,
    alphabet: Alphabet,
    forbidden: Vec<Pattern>,
}

impl Sft {
    /// Validates every forbidden pattern against this alphabet and model:
    /// colors must be alphabet letters, support words must stay inside the
    /// model's generating set, and support points must be distinct in the
    /// model (patterns built under another model are re-checked here).
    pub fn new(
        model: DynModel,
        alphabet: Alphabet,
        forbidden: Vec<Pattern>,
    ) -> Result<Sft, SftError> {
        for p in &forbidden {
            for (w, c) in p.points() {
                if !alphabet.contains(c) {
                    return Err(SftError::LetterOutsideAlphabet { letter: c.to_string() });
                }
                model.check_alphabet(w)?;
            }
            for i in 0..p.support().len() {
                for j in 0..i {
                    if model.equal(&p.support()[j], &p.support()[i])? {
                        return Err(SftError::DuplicateSupportPoint {
                            first: p.support()[j].clone(),
                            second: p.support()[i].clone(),
                        });
                    }
                }
            }
        }
        Ok(Sft { model, alphabet, forbidden })
    }

    pub fn model(&self) -> &DynModel {
        &self.model
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }
}

impl PartialEq for Sft {
    fn eq(&self, other: &Self) -> bool {
        self.model.describe() == other.model.describe()
            && self.alphabet == other.alphabet
            && self.forbidden == other.forbidden
    }
}

impl fmt::Debug for Sft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sft")
            .field("model", &self.model.describe())
            .field("alphabet", &self.alphabet)
            .field("forbidden", &self.forbidden)
            .finish()
    }
}

/// A possibly partial coloring of a Cayley ball, indexed by ball element.
#[derive(Clone)]
pub struct BallConfig {
    ball: Arc<Ball>,
    coloring: Vec<Option<String>>,
}

impl BallConfig {
    pub fn empty(ball: Arc<Ball>) -> BallConfig {
        let coloring = vec![None; ball.len()];
        BallConfig { ball, coloring }
    }

    pub fn ball(&self) -> &Arc<Ball> {
        &self.ball
    }

    pub fn len(&self) -> usize {
        self.coloring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coloring.is_empty()
    }

    /// Color of ball element `i`, if assigned.
    pub fn color(&self, i: usize) -> Option<&str> {
        self.coloring[i].as_deref()
    }

    pub fn set(&mut self, i: usize, letter: impl Into<String>) {
        self.coloring[i] = Some(letter.into());
    }

    pub fn clear(&mut self, i: usize) {
        self.coloring[i] = None;
    }

    /// Sets the color at the ball element `w` names; returns `false`
    /// (without coloring anything) when `w` lies outside the ball.
    pub fn set_at(&mut self, w: &Word, letter: impl Into<String>) -> Result<bool, GroupError> {
        match self.ball.find(w)? {
            Some(i) => {
                self.set(i, letter);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Color at the ball element `w` names; `None` when `w` is outside the
    /// ball or uncolored.
    pub fn color_at(&self, w: &Word) -> Result<Option<&str>, GroupError> {
        Ok(self.ball.find(w)?.and_then(|i| self.color(i)))
    }

    pub fn colored_len(&self) -> usize {
        self.coloring.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.coloring.iter().all(|c| c.is_some())
    }
}

impl fmt::Display for BallConfig {
    /// One `element = color` line per colored cell, in ball (BFS) order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coloring.iter().enumerate() {
            if let Some(c) = c {
                writeln!(f, "{} = {}", self.ball.element(i), c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BallConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BallConfig")
            .field("radius", &self.ball.radius())
            .field("coloring", &self.coloring)
            .finish()
    }
}

/// A total coloring of a finite right-coset space.
///
/// The induced configuration is `y(g) := color(coset of g)`; left
/// translation by any element of the subgroup preserves right cosets, so
/// the subgroup sits inside the stabilizer of `y`. This is the exact (not
/// windowed) representation: admissibility and periodicity checks against
/// it are statements about all of `G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientConfig {
    table: CosetTable,
    colors: Vec<String>,
}

impl QuotientConfig {
    pub fn new(table: CosetTable, colors: Vec<String>) -> Result<QuotientConfig, SftError> {
        if colors.len() != table.size() {
            return Err(SftError::IncompleteQuotientColoring {
                colored: colors.len(),
                cosets: table.size(),
            });
        }
        Ok(QuotientConfig { table, colors })
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    /// Color of coset `i` (1-based, like the table).
    pub fn color(&self, i: usize) -> &str {
        &self.colors[i - 1]
    }
}

impl fmt::Display for QuotientConfig {
    /// One `rep = color` line per coset, in coset order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.table.size() {
            writeln!(f, "{} = {}", self.table.representative(i), self.color(i))?;
        }
        Ok(())
    }
}

/// What an orbit/stabilizer scan saw: every element of length at most
/// `radius_checked` whose shift agreed with the configuration on the full
/// overlap, plus a lower bound on the number of distinct translates.
///
/// For ball configurations this is a necessary-condition report — overlap
/// agreement does not prove a global fixpoint. Quotient-side scans are
/// exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitStabilizerReport {
    pub distinct_translates_found: usize,
    pub stabilizing_elements: Vec<Word>,
    pub radius_checked: usize,
}

impl fmt::Display for OrbitStabilizerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "distinct translates found: {} (lower bound)",
            self.distinct_translates_found
        )?;
        let listed: Vec<String> =
            self.stabilizing_elements.iter().map(|w| w.to_string()).collect();
        writeln!(
            f,
            "stabilizing up to length {}: {}",
            self.radius_checked,
            if listed.is_empty() { "(none)".to_string() } else { listed.join(", ") }
        )
    }
}

/// Three-valued verdict of a windowed pattern match.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Appearance {
    Yes,
    No,
    Unknown,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::models::{FreeAbelianModel, FreeGroupModel};
    use crate::words::Generator;

    fn g(name: &str) -> Generator {
        Generator::new(name).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn zz() -> DynModel {
        Arc::new(FreeAbelianModel::new(vec![g("a"), g("b")]))
    }

    #[test]
    fn alphabet_rejects_empty_duplicate_and_reserved() {
        assert!(matches!(Alphabet::of(&[]), Err(SftError::EmptyAlphabet)));
        assert!(matches!(
            Alphabet::of(&["0", "1", "0"]),
            Err(SftError::DuplicateLetter { .. })
        ));
        for bad in ["", "a b", "x,y", "p=q", "#m"] {
            assert!(
                matches!(Alphabet::of(&["ok", bad]), Err(SftError::InvalidLetter { .. })),
                "{bad:?} should be rejected"
            );
        }
        let a = Alphabet::of(&["0", "1", "x@2"]).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.index_of("x@2"), Some(2));
        assert!(a.contains("1") && !a.contains("2"));
    }

    #[test]
    fn pattern_rejects_support_duplicates_in_the_model() {
        // `a b` and `b a` are distinct words but one element of Z².
        let err = Pattern::new(
            zz().as_ref(),
            vec![w("a b"), w("b a")],
            vec!["0".into(), "1".into()],
        )
        .unwrap_err();
        assert!(matches!(err, SftError::DuplicateSupportPoint { .. }));
        // The same support is fine in the free group.
        let free = FreeGroupModel::new(vec![g("a"), g("b")]);
        Pattern::new(&free, vec![w("a b"), w("b a")], vec!["0".into(), "1".into()]).unwrap();
    }

    #[test]
    fn pattern_rejects_length_mismatch() {
        let err =
            Pattern::new(zz().as_ref(), vec![w("a")], vec!["0".into(), "1".into()]).unwrap_err();
        assert!(matches!(
            err,
            SftError::SupportColorMismatch { support: 1, colors: 2 }
        ));
    }

    #[test]
    fn sft_validates_patterns_against_alphabet_and_model() {
        let model = zz();
        let alphabet = Alphabet::of(&["0", "1"]).unwrap();
        let stray_color =
            Pattern::new(model.as_ref(), vec![w("a")], vec!["2".into()]).unwrap();
        assert!(matches!(
            Sft::new(model.clone(), alphabet.clone(), vec![stray_color]),
            Err(SftError::LetterOutsideAlphabet { .. })
        ));
        let free3 = FreeGroupModel::new(vec![g("a"), g("b"), g("c")]);
        let stray_gen = Pattern::new(&free3, vec![w("c")], vec!["0".into()]).unwrap();
        assert!(matches!(
            Sft::new(model.clone(), alphabet.clone(), vec![stray_gen]),
            Err(SftError::Group(GroupError::OutsideAlphabet { .. }))
        ));
        // Distinct free-group support that collapses in Z² is re-checked.
        let free = FreeGroupModel::new(vec![g("a"), g("b")]);
        let collapsing =
            Pattern::new(&free, vec![w("a b"), w("b a")], vec!["0".into(), "1".into()]).unwrap();
        assert!(matches!(
            Sft::new(model, alphabet, vec![collapsing]),
            Err(SftError::DuplicateSupportPoint { .. })
        ));
    }

    #[test]
    fn quotient_config_requires_total_coloring() {
        let table = CosetTable::index_one(vec![g("a")]);
        assert!(matches!(
            QuotientConfig::new(table.clone(), vec![]),
            Err(SftError::IncompleteQuotientColoring { colored: 0, cosets: 1 })
        ));
        let q = QuotientConfig::new(table, vec!["0".into()]).unwrap();
        assert_eq!(q.color(1), "0");
    }

    #[test]
    fn pattern_displays_as_word_letter_pairs() {
        let p = Pattern::new(
            zz().as_ref(),
            vec![Word::identity(), w("a")],
            vec!["1".into(), "1".into()],
        )
        .unwrap();
        assert_eq!(p.to_string(), "1 = 1 , a = 1");
        assert_eq!(Pattern::empty().to_string(), "");
    }
}
