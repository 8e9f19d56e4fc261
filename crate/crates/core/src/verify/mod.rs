//! Desk-scale evidence: window tiling by backtracking search, exact
//! strongly-periodic-configuration search over finite quotients, stabilizer
//! scans, and the certificate pipeline that stitches the pieces into a
//! report separating machine-checked facts from cited ones.

mod certify;
mod search;

pub use certify::{
    certify_one_relator, check_conjugate_exponents, CertificateReport, Evidence, ProvedFact,
};
pub use search::{
    search_strongly_periodic, stabilizer_scan, stabilizer_scan_quotient, tile_ball,
    PeriodicOutcome, PeriodicSearchResult, TileOutcome, TileResult,
};

use thiserror::Error;

use crate::words::{Generator, Letter, Sign, Word};

/// A component failure inside the verification pipeline, labeled with the
/// stage that raised it.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("stage `{stage}`: {msg}")]
pub struct VerifyError {
    pub stage: &'static str,
    pub msg: String,
}

pub(crate) fn stage_error(stage: &'static str, e: impl std::fmt::Display) -> VerifyError {
    VerifyError { stage, msg: e.to_string() }
}

/// All freely reduced words of length at most `max_len`, identity first,
/// in breadth-first order with letters ordered generator-major, positive
/// sign first.
pub(crate) fn reduced_words(gens: &[Generator], max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = gens
        .iter()
        .flat_map(|g| {
            [
                Letter { gen: g.clone(), sign: Sign::Pos },
                Letter { gen: g.clone(), sign: Sign::Neg },
            ]
        })
        .collect();
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                if w.letters().last().is_some_and(|last| {
                    last.gen == l.gen && last.sign != l.sign
                }) {
                    continue;
                }
                let extended =
                    Word::from_letters(w.letters().iter().cloned().chain([l.clone()]));
                next.push(extended);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
