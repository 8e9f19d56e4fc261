//! Finite group presentations and Tietze transformations.
//!
//! Relators are stored cyclically reduced (the constructor normalizes), and
//! every transformation goes through [`apply_tietze`], so a transformation
//! log can be replayed step by step against the input presentation and must
//! reproduce the output exactly.

mod classify;
mod rewrite;

pub use classify::{classify_quasiplanar, Factor, FactorList, Verdict};
pub use rewrite::{analyze_one_relator, magnus_moldavansky, NonRigidityCertificate, RewriteOutcome};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{Generator, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PresentationError {
    #[error("duplicate generator `{gen}`")]
    DuplicateGenerator { gen: Generator },
    #[error("relator `{relator}` uses `{gen}`, which is not in the generating set")]
    RelatorOutsideGenerators { relator: Word, gen: Generator },
    #[error("precondition violated: {msg}")]
    Precondition { msg: String },
    #[error("Tietze step does not apply: {msg}")]
    Tietze { msg: String },
    #[error("generator `{gen}` does not occur in the relator")]
    GeneratorAbsentFromRelator { gen: Generator },
    #[error("cannot parse presentation at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite presentation: an ordered generating set and a list of relators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates that generators are distinct and relators only use listed
    /// generators. Relators are cyclically reduced on the way in (a relator
    /// names a conjugacy class, so the conjugating prefix carries no
    /// information).
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator { gen: g.clone() });
            }
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(gen) = r.first_gen_outside(&generators) {
                return Err(PresentationError::RelatorOutsideGenerators {
                    gen: gen.clone(),
                    relator: r.clone(),
                });
            }
            reduced.push(r.cyclic_reduce().0);
        }
        Ok(Presentation { generators, relators: reduced })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn gen_index(&self, gen: &Generator) -> Option<usize> {
        self.generators.iter().position(|g| g == gen)
    }

    /// Identity substitution rules for the current generating set.
    pub fn identity_rules(&self) -> BTreeMap<Generator, Word> {
        self.generators.iter().map(|g| (g.clone(), Word::from_gen(g))).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        f.write_str(" |")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(" ,")?;
            }
            write!(f, " {r}")?;
        }
        f.write_str(" >")
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Syntax: `< a b c | a b c , a^2 b >`. Generators are whitespace
    /// separated; relators are comma separated words; either side may be
    /// empty.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let open = s.find('<').ok_or_else(|| PresentationError::Parse {
            at: 0,
            msg: "expected `<`".into(),
        })?;
        if !s[..open].trim().is_empty() {
            return Err(PresentationError::Parse { at: 0, msg: "unexpected text before `<`".into() });
        }
        let close = s.rfind('>').ok_or_else(|| PresentationError::Parse {
            at: s.len(),
            msg: "expected `>`".into(),
        })?;
        if !s[close + 1..].trim().is_empty() {
            return Err(PresentationError::Parse {
                at: close + 1,
                msg: "unexpected text after `>`".into(),
            });
        }
        let body = &s[open + 1..close];
        let bar = body.find('|').ok_or_else(|| PresentationError::Parse {
            at: open + 1,
            msg: "expected `|` between generators and relators".into(),
        })?;
        if body[bar + 1..].contains('|') {
            return Err(PresentationError::Parse {
                at: open + 1 + bar,
                msg: "more than one `|`".into(),
            });
        }

        let mut generators = Vec::new();
        for (at, tok) in crate::words::tokenize(&body[..bar]) {
            let gen = Generator::new(tok).map_err(|_| PresentationError::Parse {
                at: open + 1 + at,
                msg: format!("bad generator name {tok:?}"),
            })?;
            generators.push(gen);
        }

        let mut relators = Vec::new();
        let rel_base = open + 1 + bar + 1;
        let rel_text = &body[bar + 1..];
        if !rel_text.trim().is_empty() {
            let mut start = 0;
            for piece in rel_text.split(',') {
                let word: Word = piece.parse().map_err(|e| match e {
                    WordError::Parse { at, msg } => {
                        PresentationError::Parse { at: rel_base + start + at, msg }
                    }
                    other => PresentationError::Word(other),
                })?;
                relators.push(word);
                start += piece.len() + 1;
            }
        }
        Presentation::new(generators, relators)
    }
}

/// One of the four elementary moves on a presentation.
///
/// `AddGenerator` introduces a fresh name `t` together with the relator
/// `t · equals^-1`, so `t` names the word `equals` in the group.
/// `RemoveGenerator` consumes a relator in which the generator occurs exactly
/// once: the relator is solved for the generator, the solution is substituted
/// into every other relator, and both the generator and the consumed relator
/// are removed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TietzeStep {
    AddRelator { relator: Word },
    RemoveRelator { index: usize },
    AddGenerator { generator: Generator, equals: Word },
    RemoveGenerator { generator: Generator, via_relator: usize },
}

impl fmt::Display for TietzeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TietzeStep::AddRelator { relator } => write!(f, "add-relator {relator}"),
            TietzeStep::RemoveRelator { index } => write!(f, "remove-relator {index}"),
            TietzeStep::AddGenerator { generator, equals } => {
                write!(f, "add-generator {generator} = {equals}")
            }
            TietzeStep::RemoveGenerator { generator, via_relator } => {
                write!(f, "remove-generator {generator} via relator {via_relator}")
            }
        }
    }
}

/// A replayable log entry. Besides the four Tietze moves, rewriting may
/// relabel a generator by its formal inverse; that is not a Tietze move, so
/// it is recorded with its own marker.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LogEntry {
    Tietze(TietzeStep),
    InvertGenerator { generator: Generator },
}

impl fmt::Display for LogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogEntry::Tietze(step) => step.fmt(f),
            LogEntry::InvertGenerator { generator } => write!(f, "invert-generator {generator}"),
        }
    }
}

/// Whether `AddRelator`/`RemoveRelator` demand syntactic redundancy.
///
/// In checked mode a relator may only be added or removed when it is freely
/// trivial (reduces to the empty word), i.e. when the move is a pure
/// bookkeeping step. Arbitrary caller-supplied consequences need
/// `Unchecked`, which callers should surface loudly (the CLI flag is
/// `--unchecked`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TietzePolicy {
    Checked,
    Unchecked,
}

pub fn apply_tietze(
    p: &Presentation,
    step: &TietzeStep,
    policy: TietzePolicy,
) -> Result<Presentation, PresentationError> {
    match step {
        TietzeStep::AddRelator { relator } => {
            if policy == TietzePolicy::Checked && !relator.is_empty() {
                return Err(PresentationError::Tietze {
                    msg: format!(
                        "add-relator {relator} is not freely trivial; use the unchecked policy \
                         to assert it is a consequence of the existing relators"
                    ),
                });
            }
            let mut relators = p.relators.clone();
            relators.push(relator.clone());
            Presentation::new(p.generators.clone(), relators)
        }
        TietzeStep::RemoveRelator { index } => {
            let r = p.relators.get(*index).ok_or_else(|| PresentationError::Tietze {
                msg: format!("remove-relator index {index} out of range"),
            })?;
            if policy == TietzePolicy::Checked && !r.is_empty() {
                return Err(PresentationError::Tietze {
                    msg: format!("relator {index} (`{r}`) is not freely trivial"),
                });
            }
            let mut relators = p.relators.clone();
            relators.remove(*index);
            Presentation::new(p.generators.clone(), relators)
        }
        TietzeStep::AddGenerator { generator, equals } => {
            if p.generators.contains(generator) {
                return Err(PresentationError::Tietze {
                    msg: format!("generator `{generator}` already present"),
                });
            }
            if let Some(gen) = equals.first_gen_outside(&p.generators) {
                return Err(PresentationError::Tietze {
                    msg: format!("defining word `{equals}` uses unknown generator `{gen}`"),
                });
            }
            let mut generators = p.generators.clone();
            generators.push(generator.clone());
            let mut relators = p.relators.clone();
            relators.push(Word::from_gen(generator).concat(&equals.inverse()));
            Presentation::new(generators, relators)
        }
        TietzeStep::RemoveGenerator { generator, via_relator } => {
            if !p.generators.contains(generator) {
                return Err(PresentationError::Tietze {
                    msg: format!("unknown generator `{generator}`"),
                });
            }
            let r = p.relators.get(*via_relator).ok_or_else(|| PresentationError::Tietze {
                msg: format!("relator index {via_relator} out of range"),
            })?;
            let occ: Vec<usize> = r
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, l)| &l.gen == generator)
                .map(|(i, _)| i)
                .collect();
            if occ.len() != 1 {
                return Err(PresentationError::Tietze {
                    msg: format!(
                        "relator {via_relator} (`{r}`) contains `{generator}` {} times, need exactly one",
                        occ.len()
                    ),
                });
            }
            let at = occ[0];
            let u = Word::from_letters(r.letters()[..at].to_vec());
            let v = Word::from_letters(r.letters()[at + 1..].to_vec());
            // u s^e v = 1, so s = (u^-1 v^-1)^e.
            let solved = match r.letters()[at].sign {
                crate::words::Sign::Pos => u.inverse().concat(&v.inverse()),
                crate::words::Sign::Neg => v.concat(&u),
            };
            let mut rules = p.identity_rules();
            rules.insert(generator.clone(), solved);
            let generators: Vec<Generator> =
                p.generators.iter().filter(|g| *g != generator).cloned().collect();
            let mut relators = Vec::with_capacity(p.relators.len() - 1);
            for (i, rel) in p.relators.iter().enumerate() {
                if i == *via_relator {
                    continue;
                }
                relators.push(rel.substitute(&rules)?);
            }
            Presentation::new(generators, relators)
        }
    }
}

/// Relabels a generator by its formal inverse: every occurrence `s^±1` in
/// every relator becomes `s^∓1`. The generating set keeps its names.
pub fn invert_generator(p: &Presentation, gen: &Generator) -> Result<Presentation, PresentationError> {
    if !p.generators.contains(gen) {
        return Err(PresentationError::Tietze { msg: format!("unknown generator `{gen}`") });
    }
    let mut rules = p.identity_rules();
    rules.insert(gen.clone(), Word::from_gen(gen).inverse());
    let relators = p.relators.iter().map(|r| r.substitute(&rules)).collect::<Result<_, _>>()?;
    Presentation::new(p.generators.clone(), relators)
}

/// Replays a transformation log from `p`, in checked mode.
pub fn replay_log(p: &Presentation, log: &[LogEntry]) -> Result<Presentation, PresentationError> {
    let mut current = p.clone();
    for entry in log {
        current = match entry {
            LogEntry::Tietze(step) => apply_tietze(&current, step, TietzePolicy::Checked)?,
            LogEntry::InvertGenerator { generator } => invert_generator(&current, generator)?,
        };
    }
    Ok(current)
}

/// The orientable genus-`g` surface group presentation
/// `< a1 b1 .. ag bg | [a1,b1]···[ag,bg] >`; `g = 0` gives the trivial
/// presentation.
pub fn surface_presentation(genus: usize) -> Presentation {
    let mut generators = Vec::new();
    let mut relator = Word::identity();
    for i in 1..=genus {
        let a = Generator::new(format!("a{i}")).unwrap();
        let b = Generator::new(format!("b{i}")).unwrap();
        let wa = Word::from_gen(&a);
        let wb = Word::from_gen(&b);
        let comm = wa.concat(&wb).concat(&wa.inverse()).concat(&wb.inverse());
        relator = relator.concat(&comm);
        generators.push(a);
        generators.push(b);
    }
    let relators = if genus == 0 { vec![] } else { vec![relator] };
    Presentation::new(generators, relators).unwrap()
}

/// For a one-relator presentation whose relator involves `omit`, returns the
/// remaining generators. By Magnus's Freiheitssatz they freely generate a
/// free subgroup of rank one less than the generating set; this function
/// only performs the syntactic checks, the freeness itself rests on the
/// cited theorem.
pub fn freiheitssatz_subgroup(
    p: &Presentation,
    omit: &Generator,
) -> Result<Vec<Generator>, PresentationError> {
    if p.relators.len() != 1 {
        return Err(PresentationError::Precondition {
            msg: format!("need exactly one relator, found {}", p.relators.len()),
        });
    }
    if !p.generators.contains(omit) {
        return Err(PresentationError::Precondition { msg: format!("unknown generator `{omit}`") });
    }
    if !p.relators[0].contains_gen(omit) {
        return Err(PresentationError::GeneratorAbsentFromRelator { gen: omit.clone() });
    }
    Ok(p.generators.iter().filter(|g| *g != omit).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Generator {
        Generator::new(name).unwrap()
    }

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["< a b c | a b c , a^2 b >", "< a b | >", "< | >", "< a b | a b a^-1 b^-1 >"] {
            let p = pres(text);
            assert_eq!(p.to_string(), text);
            assert_eq!(pres(&p.to_string()), p);
        }
    }

    #[test]
    fn constructor_cyclically_reduces_relators() {
        let p = Presentation::new(vec![g("a"), g("b")], vec!["a b a^-1".parse().unwrap()]).unwrap();
        assert_eq!(p.relators()[0], "b".parse::<Word>().unwrap());
    }

    #[test]
    fn constructor_rejects_foreign_generators_and_duplicates() {
        let r = Presentation::new(vec![g("a")], vec!["a b".parse().unwrap()]);
        assert!(matches!(r, Err(PresentationError::RelatorOutsideGenerators { .. })));
        let r = Presentation::new(vec![g("a"), g("a")], vec![]);
        assert!(matches!(r, Err(PresentationError::DuplicateGenerator { .. })));
    }

    #[test]
    fn add_generator_introduces_defining_relator() {
        let p = pres("< a b | >");
        let step = TietzeStep::AddGenerator { generator: g("t"), equals: "a b".parse().unwrap() };
        let q = apply_tietze(&p, &step, TietzePolicy::Checked).unwrap();
        assert_eq!(q.to_string(), "< a b t | t b^-1 a^-1 >");
    }

    #[test]
    fn remove_generator_substitutes_and_consumes_relator() {
        let p = pres("< a b t | t b^-1 >");
        let step = TietzeStep::RemoveGenerator { generator: g("t"), via_relator: 0 };
        let q = apply_tietze(&p, &step, TietzePolicy::Checked).unwrap();
        assert_eq!(q.to_string(), "< a b | >");

        // The substitution rewrites other relators too.
        let p = pres("< a b t | t b^-1 , a t a >");
        let q = apply_tietze(&p, &step, TietzePolicy::Checked).unwrap();
        assert_eq!(q.to_string(), "< a b | a b a >");
    }

    #[test]
    fn remove_generator_requires_single_occurrence() {
        let p = pres("< a b | a b a >");
        let step = TietzeStep::RemoveGenerator { generator: g("a"), via_relator: 0 };
        let err = apply_tietze(&p, &step, TietzePolicy::Checked).unwrap_err();
        assert!(matches!(err, PresentationError::Tietze { .. }));
    }

    #[test]
    fn remove_generator_solves_negative_occurrence() {
        // u s^-1 v = 1 with u = t1 c^-1 solves to s = v u.
        let p = pres("< a c t1 | t1 c^-1 a^-1 , a c >");
        let step = TietzeStep::RemoveGenerator { generator: g("a"), via_relator: 0 };
        let q = apply_tietze(&p, &step, TietzePolicy::Checked).unwrap();
        assert_eq!(q.to_string(), "< c t1 | t1 >");
    }

    #[test]
    fn checked_policy_gates_relator_bookkeeping() {
        let p = pres("< a | >");
        let add = TietzeStep::AddRelator { relator: "a a^-1".parse().unwrap() };
        // Freely trivial input reduces to the empty word, so it passes.
        let q = apply_tietze(&p, &add, TietzePolicy::Checked).unwrap();
        assert_eq!(q.relators().len(), 1);
        assert!(q.relators()[0].is_empty());
        let q = apply_tietze(&q, &TietzeStep::RemoveRelator { index: 0 }, TietzePolicy::Checked).unwrap();
        assert_eq!(q, p);

        let add = TietzeStep::AddRelator { relator: "a^2".parse().unwrap() };
        assert!(apply_tietze(&p, &add, TietzePolicy::Checked).is_err());
        assert!(apply_tietze(&p, &add, TietzePolicy::Unchecked).is_ok());
    }

    #[test]
    fn invert_generator_flips_signs_in_relators() {
        let p = pres("< a b | a^2 b >");
        let q = invert_generator(&p, &g("a")).unwrap();
        assert_eq!(q.to_string(), "< a b | a^-2 b >");
        assert_eq!(invert_generator(&q, &g("a")).unwrap(), p);
    }

    #[test]
    fn surface_presentations_have_genus_many_commutators() {
        assert_eq!(surface_presentation(0).to_string(), "< | >");
        assert_eq!(surface_presentation(1).to_string(), "< a1 b1 | a1 b1 a1^-1 b1^-1 >");
        let p = surface_presentation(2);
        assert_eq!(
            p.to_string(),
            "< a1 b1 a2 b2 | a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1 >"
        );
        for gen in p.generators() {
            assert_eq!(p.relators()[0].exponent_sum(gen), 0);
        }
    }

    #[test]
    fn freiheitssatz_subgroup_drops_an_occurring_generator() {
        let p = pres("< a b c | a b c >");
        assert_eq!(freiheitssatz_subgroup(&p, &g("b")).unwrap(), vec![g("a"), g("c")]);
        let p = pres("< a b c | a b >");
        let err = freiheitssatz_subgroup(&p, &g("c")).unwrap_err();
        assert_eq!(err, PresentationError::GeneratorAbsentFromRelator { gen: g("c") });
    }

    #[test]
    fn replay_folds_entries_in_order() {
        let p = pres("< a b | >");
        let log = vec![
            LogEntry::Tietze(TietzeStep::AddGenerator {
                generator: g("t"),
                equals: "a b".parse().unwrap(),
            }),
            LogEntry::InvertGenerator { generator: g("a") },
            LogEntry::Tietze(TietzeStep::RemoveGenerator { generator: g("b"), via_relator: 0 }),
        ];
        // t b^-1 a^-1 --invert a--> t b^-1 a --solve for b--> b = a t
        let q = replay_log(&p, &log).unwrap();
        assert_eq!(q.to_string(), "< a t | >");
    }
}
