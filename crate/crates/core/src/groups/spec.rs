//! Textual model specifications, the grammar behind `--model` flags and
//! file headers:
//!
//! ```text
//! free(a, b)
//! abelian(a, b)
//! direct(abelian(a, b), z, 2)
//! semidirect(b; a; a : a^-1; a : a^-1)
//! dehn(< a1 b1 | a1 b1 a1^-1 b1^-1 >)
//! ```
//!
//! `semidirect` lists the cyclic letter, the free letters, the automorphism
//! rules, and the inverse automorphism rules (substitution targets are
//! written after `:`). `describe()` on any backend re-renders this grammar,
//! and parsing a rendered description yields a model describing itself the
//! same way, so specs round-trip through manifests bit-exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::dehn::DehnModel;
use super::models::{DirectWithCyclicModel, FreeAbelianModel, FreeByCyclicModel, FreeGroupModel};
use super::{DynModel, GroupError};
use crate::presentations::Presentation;
use crate::words::{Generator, Word};

fn bad(msg: impl Into<String>) -> GroupError {
    GroupError::Model { msg: msg.into() }
}

/// Splits at top-level occurrences of `sep`, ignoring separators nested
/// inside parentheses.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_generator(tok: &str) -> Result<Generator, GroupError> {
    Generator::new(tok.trim()).map_err(|e| bad(format!("bad generator {:?}: {e}", tok.trim())))
}

fn parse_generator_list(s: &str) -> Result<Vec<Generator>, GroupError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(s, ',').into_iter().map(parse_generator).collect()
}

fn parse_rules(s: &str) -> Result<BTreeMap<Generator, Word>, GroupError> {
    let mut rules = BTreeMap::new();
    for part in split_top_level(s, ',') {
        let (lhs, rhs) = part
            .split_once(':')
            .ok_or_else(|| bad(format!("rule {:?} is missing `:`", part.trim())))?;
        let gen = parse_generator(lhs)?;
        let image: Word =
            rhs.trim().parse().map_err(|e| bad(format!("bad rule image {:?}: {e}", rhs.trim())))?;
        if rules.insert(gen.clone(), image).is_some() {
            return Err(bad(format!("duplicate rule for `{gen}`")));
        }
    }
    Ok(rules)
}

/// Parses a model specification into a backend.
pub fn parse_model_spec(s: &str) -> Result<DynModel, GroupError> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| bad(format!("expected `(` in model spec {s:?}")))?;
    if !s.ends_with(')') {
        return Err(bad(format!("expected `)` at the end of model spec {s:?}")));
    }
    let head = s[..open].trim();
    let inner = &s[open + 1..s.len() - 1];
    match head {
        "free" => Ok(Arc::new(FreeGroupModel::new(parse_generator_list(inner)?))),
        "abelian" => Ok(Arc::new(FreeAbelianModel::new(parse_generator_list(inner)?))),
        "direct" => {
            let parts = split_top_level(inner, ',');
            let [base, z, k] = parts.as_slice() else {
                return Err(bad(format!(
                    "direct(base, z, k) takes three arguments, found {}",
                    parts.len()
                )));
            };
            let base = parse_model_spec(base)?;
            let z = parse_generator(z)?;
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad cyclic order {:?}: {e}", k.trim())))?;
            Ok(Arc::new(DirectWithCyclicModel::new(base, z, k)?))
        }
        "semidirect" => {
            let parts = split_top_level(inner, ';');
            let [cyclic, free, phi, phi_inv] = parts.as_slice() else {
                return Err(bad(format!(
                    "semidirect(cyclic; free; phi; phi_inv) takes four parts, found {}",
                    parts.len()
                )));
            };
            Ok(Arc::new(FreeByCyclicModel::new(
                parse_generator(cyclic)?,
                parse_generator_list(free)?,
                parse_rules(phi)?,
                parse_rules(phi_inv)?,
            )?))
        }
        "dehn" => {
            let p: Presentation = inner
                .parse()
                .map_err(|e| bad(format!("bad presentation in dehn(...): {e}")))?;
            Ok(Arc::new(DehnModel::new(&p)?))
        }
        other => Err(bad(format!(
            "unknown model head {other:?}; expected free, abelian, direct, semidirect, or dehn"
        ))),
    }
}
