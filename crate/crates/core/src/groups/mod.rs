//! Computation backends for the groups the toolkit works over.
//!
//! A [`GroupModel`] supplies normal forms, multiplication, and equality for
//! words over a fixed alphabet. Everything downstream — Cayley balls,
//! configurations, tilings — is built against this interface, so a group
//! enters the toolkit exactly when some backend can decide its word problem.

pub mod ball;
pub mod coset;
pub mod dehn;
pub mod models;
pub mod spec;

pub use ball::{build_ball, Ball};
pub use coset::{conjugate_generator, coset_decompose, todd_coxeter, CosetTable};
pub use dehn::{dehn_reduce, DehnModel};
pub use models::{DirectWithCyclicModel, FreeAbelianModel, FreeByCyclicModel, FreeGroupModel};
pub use spec::parse_model_spec;

use std::fmt;

use thiserror::Error;

use crate::presentations::Presentation;
use crate::words::{Generator, Word};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GroupError {
    #[error("word uses generator `{gen}`, which is outside the model alphabet")]
    OutsideAlphabet { gen: Generator },
    #[error("presentation fails the metric small-cancellation check: piece `{piece}` has length {piece_len}, relator length {relator_len} allows pieces shorter than {relator_len}/6")]
    SmallCancellationViolated { piece: Word, piece_len: usize, relator_len: usize },
    #[error("coset enumeration exceeded its budget of {max_cosets} cosets without closing")]
    BudgetExceeded { max_cosets: usize },
    #[error("model failure: {msg}")]
    Model { msg: String },
}

/// A computation backend for one finitely generated group.
///
/// `normal_form` must be idempotent. When `has_canonical_normal_form` is
/// true, `equal(u, v)` holds exactly when the normal forms coincide as words;
/// backends without canonical forms (Dehn reduction) override `equal` and
/// report false so callers fall back to pairwise comparison.
pub trait GroupModel {
    fn alphabet(&self) -> &[Generator];

    fn normal_form(&self, w: &Word) -> Result<Word, GroupError>;

    /// One-line human-readable description, used in reports and manifests.
    fn describe(&self) -> String;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn multiply(&self, u: &Word, v: &Word) -> Result<Word, GroupError> {
        self.normal_form(&u.concat(v))
    }

    fn inverse(&self, w: &Word) -> Result<Word, GroupError> {
        self.normal_form(&w.inverse())
    }

    fn equal(&self, u: &Word, v: &Word) -> Result<bool, GroupError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    fn has_canonical_normal_form(&self) -> bool {
        true
    }

    /// Errors unless every letter of `w` is in the model alphabet.
    fn check_alphabet(&self, w: &Word) -> Result<(), GroupError> {
        match w.first_gen_outside(self.alphabet()) {
            Some(gen) => Err(GroupError::OutsideAlphabet { gen: gen.clone() }),
            None => Ok(()),
        }
    }
}

/// Shared-ownership trait object, the currency of the CLI and harness layers.
pub type DynModel = std::sync::Arc<dyn GroupModel + Send + Sync>;

/// The per-relator exponent sums of a presentation at one generator.
///
/// When every sum is zero, the assignment `w -> exponent_sum(w, c)` is
/// constant on the words representing a fixed group element, so it defines a
/// group homomorphism onto the integers sending `c` to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomCertificate {
    pub generator: Generator,
    /// One `(relator, exponent sum)` entry per relator, in presentation order.
    pub relator_sums: Vec<(Word, i64)>,
}

impl HomCertificate {
    /// True when the exponent-sum map descends to the group.
    pub fn is_valid(&self) -> bool {
        self.relator_sums.iter().all(|(_, s)| *s == 0)
    }
}

impl fmt::Display for HomCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.generator;
        if self.is_valid() {
            write!(f, "valid: the exponent-sum map at `{c}` is a homomorphism to Z")?;
        } else {
            write!(f, "invalid: the exponent-sum map at `{c}` does not descend to the group")?;
        }
        for (r, s) in &self.relator_sums {
            write!(f, "\n  relator `{r}` has exponent sum {s} at `{c}`")?;
        }
        Ok(())
    }
}

/// Computes the exponent sum of every relator at `c`. The certificate is
/// valid exactly when all sums vanish; failure is reported in the
/// certificate, not as an error.
pub fn exponent_hom_check(p: &Presentation, c: &Generator) -> HomCertificate {
    HomCertificate {
        generator: c.clone(),
        relator_sums: p.relators().iter().map(|r| (r.clone(), r.exponent_sum(c))).collect(),
    }
}
