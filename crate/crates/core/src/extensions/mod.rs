//! Transporting an SFT from a finite-index subgroup to the ambient group:
//! the free extension (forbidden patterns re-read over the big group) and
//! the right extension (product alphabet `A × [k]` with rules propagated
//! along conjugated subgroup generators), together with the explicit
//! configuration lifts that witness how periodicity transfers.

mod closure;
mod extend;
mod lifts;

pub use closure::{coset_color_closure, CosetAssignment};
pub use extend::{free_extension, right_extension, RightExtension};
pub use lifts::{
    coset_restriction, cyclic_lift, periodic_right_lift, periodic_right_lift_quotient,
    product_lift, product_lift_quotient, product_table,
};

use std::fmt;

use thiserror::Error;

use crate::groups::{CosetTable, DynModel, GroupError};
use crate::sft::{Alphabet, SftError};
use crate::words::{Generator, Word, WordError};

#[derive(Error, Debug)]
pub enum ExtensionError {
    #[error("support word `{word}` uses `{gen}`, which has no image under the embedding")]
    SupportOutsideSubgroup { word: Word, gen: Generator },
    #[error(
        "support points `{first}` and `{second}` collapse to one group element — \
         refusing to merge colors"
    )]
    DuplicateSupportPoint { first: Word, second: Word },
    #[error("`{letter}` is not a product letter (expected `base@coset`)")]
    AlphabetMismatch { letter: String },
    #[error("cannot decompose `{element}`: {msg}")]
    DecompositionFailure { element: Word, msg: String },
    #[error(
        "coset propagation forced both {first} and {second} at `{cell}` \
         (witness path of {} cells)", path.len()
    )]
    PropagationContradiction { cell: Word, first: usize, second: usize, path: Vec<Word> },
    #[error("{msg}")]
    Unsupported { msg: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn unsupported(msg: impl Into<String>) -> ExtensionError {
    ExtensionError::Unsupported { msg: msg.into() }
}

/// A letter of the product alphabet `A × [k]`, rendered `base@coset`.
///
/// The second coordinate is the coset index the cell claims to sit over;
/// the projections are `base` and `coset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductLetter {
    pub base: String,
    pub coset: usize,
}

impl ProductLetter {
    pub fn new(base: impl Into<String>, coset: usize) -> ProductLetter {
        ProductLetter { base: base.into(), coset }
    }

    /// Splits at the *last* `@`, so letters of an iterated extension
    /// (`0@1@2`) keep parsing.
    pub fn parse(letter: &str) -> Result<ProductLetter, ExtensionError> {
        let mismatch = || ExtensionError::AlphabetMismatch { letter: letter.to_string() };
        let (base, coset) = letter.rsplit_once('@').ok_or_else(mismatch)?;
        let coset: usize = coset.parse().map_err(|_| mismatch())?;
        if base.is_empty() || coset == 0 {
            return Err(mismatch());
        }
        Ok(ProductLetter { base: base.to_string(), coset })
    }
}

impl fmt::Display for ProductLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.base, self.coset)
    }
}

/// The alphabet `A × [k]`, base letter major: `a@1 … a@k, b@1 …`.
pub fn product_alphabet(a: &Alphabet, k: usize) -> Result<Alphabet, ExtensionError> {
    if k == 0 {
        return Err(unsupported("product alphabet needs at least one coset"));
    }
    let mut letters = Vec::with_capacity(a.len() * k);
    for base in a.letters() {
        for i in 1..=k {
            letters.push(ProductLetter::new(base, i).to_string());
        }
    }
    Ok(Alphabet::new(letters)?)
}

/// A subgroup sitting inside an ambient group: the supergroup model, the
/// words generating the subgroup, and — when the subgroup has finite index
/// and a right extension is wanted — its coset table over the supergroup's
/// generators.
///
/// The subgroup model's generators correspond positionally to
/// `subgroup_gens`: the i-th generator of the subgroup's own alphabet maps
/// to the i-th word here.
#[derive(Clone)]
pub struct Embedding {
    supergroup: DynModel,
    subgroup_gens: Vec<Word>,
    table: Option<CosetTable>,
}

impl Embedding {
    pub fn new(
        supergroup: DynModel,
        subgroup_gens: Vec<Word>,
        table: Option<CosetTable>,
    ) -> Result<Embedding, ExtensionError> {
        if subgroup_gens.is_empty() {
            return Err(unsupported("embedding needs at least one subgroup generator"));
        }
        for w in &subgroup_gens {
            supergroup.check_alphabet(w)?;
            if supergroup.normal_form(w)?.is_empty() {
                return Err(unsupported(format!("subgroup generator `{w}` is trivial")));
            }
        }
        if let Some(t) = &table {
            if t.generators() != supergroup.alphabet() {
                return Err(unsupported(
                    "coset table letters do not match the supergroup generators",
                ));
            }
            for w in &subgroup_gens {
                if t.trace(1, w)? != 1 {
                    return Err(unsupported(format!(
                        "subgroup generator `{w}` does not fix coset 1"
                    )));
                }
            }
        }
        Ok(Embedding { supergroup, subgroup_gens, table })
    }

    pub fn supergroup(&self) -> &DynModel {
        &self.supergroup
    }

    pub fn subgroup_gens(&self) -> &[Word] {
        &self.subgroup_gens
    }

    pub fn table(&self) -> Option<&CosetTable> {
        self.table.as_ref()
    }

    /// Index of the subgroup, when a table is present.
    pub fn index(&self) -> Option<usize> {
        self.table.as_ref().map(CosetTable::size)
    }

    /// Text form: header, supergroup model spec, one `subgroup` line per
    /// generator word, then — if present — the coset table in its own
    /// format. Round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::from("embedding\n");
        out.push_str(&format!("model {}\n", self.supergroup.describe()));
        for w in &self.subgroup_gens {
            out.push_str(&format!("subgroup {w}\n"));
        }
        if let Some(t) = &self.table {
            out.push_str(&t.to_text());
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Embedding, ExtensionError> {
        let fail = |line: usize, msg: String| ExtensionError::Parse { line, msg };
        let mut header_seen = false;
        let mut model = None;
        let mut subgroup_gens = Vec::new();
        let mut table = None;
        for (i, raw) in s.lines().enumerate() {
            let n = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "coset-table" {
                // Everything from here on is the table section.
                let tail: Vec<&str> = s.lines().skip(i).collect();
                let parsed = CosetTable::from_text(&tail.join("\n"))
                    .map_err(|e| fail(n, format!("bad coset table: {e}")))?;
                table = Some(parsed);
                break;
            }
            if !header_seen {
                if line != "embedding" {
                    return Err(fail(n, format!("expected `embedding` header, found {line:?}")));
                }
                header_seen = true;
            } else if let Some(rest) = line.strip_prefix("model ") {
                if model.is_some() {
                    return Err(fail(n, "duplicate model line".into()));
                }
                model = Some(
                    crate::groups::parse_model_spec(rest.trim())
                        .map_err(|e| fail(n, format!("bad model spec: {e}")))?,
                );
            } else if let Some(rest) = line.strip_prefix("subgroup ") {
                let w: Word = rest
                    .trim()
                    .parse()
                    .map_err(|e| fail(n, format!("bad subgroup word: {e}")))?;
                subgroup_gens.push(w);
            } else {
                return Err(fail(n, format!("unrecognized line {line:?}")));
            }
        }
        if !header_seen {
            return Err(fail(1, "missing `embedding` header".into()));
        }
        let model = model.ok_or_else(|| fail(1, "missing model line".into()))?;
        Embedding::new(model, subgroup_gens, table)
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Embedding")
            .field("supergroup", &self.supergroup.describe())
            .field("subgroup_gens", &self.subgroup_gens)
            .field("index", &self.index())
            .finish()
    }
}
