//! The `.sft` structured-text format.
//!
//! ```text
//! sft
//! model abelian(a, b)
//! alphabet 0 1
//! pattern 1 = 1 , a = 1
//! pattern 1 = 1 , b = 1
//! ```
//!
//! `#` starts a comment line (used for provenance headers) and blank lines
//! are ignored, so annotated files read back; the canonical form emitted by
//! [`Sft::to_text`] round-trips bit-exactly.

use super::{Alphabet, Pattern, Sft, SftError};
use crate::groups::parse_model_spec;
use crate::words::Word;

impl Sft {
    /// Canonical text form: header, model spec, alphabet, one line per
    /// forbidden pattern in declaration order.
    pub fn to_text(&self) -> String {
        let mut out = String::from("sft\n");
        out.push_str(&format!("model {}\n", self.model.describe()));
        out.push_str(&format!("alphabet {}\n", self.alphabet));
        for p in &self.forbidden {
            if p.is_empty() {
                out.push_str("pattern\n");
            } else {
                out.push_str(&format!("pattern {p}\n"));
            }
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Sft, SftError> {
        let fail = |line: usize, msg: String| SftError::Parse { line, msg };
        let mut header_seen = false;
        let mut model = None;
        let mut alphabet: Option<Alphabet> = None;
        // Raw (support, colors) rows; patterns are validated once the model
        // is known, so the section order in the file does not matter.
        let mut rows: Vec<(usize, Vec<(Word, String)>)> = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let n = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                if line != "sft" {
                    return Err(fail(n, format!("expected `sft` header, found {line:?}")));
                }
                header_seen = true;
            } else if let Some(rest) = line.strip_prefix("model ") {
                if model.is_some() {
                    return Err(fail(n, "duplicate model line".into()));
                }
                model = Some(
                    parse_model_spec(rest.trim())
                        .map_err(|e| fail(n, format!("bad model spec: {e}")))?,
                );
            } else if let Some(rest) = line.strip_prefix("alphabet ") {
                if alphabet.is_some() {
                    return Err(fail(n, "duplicate alphabet line".into()));
                }
                let letters: Vec<String> =
                    rest.split_whitespace().map(str::to_string).collect();
                alphabet = Some(
                    Alphabet::new(letters).map_err(|e| fail(n, format!("bad alphabet: {e}")))?,
                );
            } else if line == "pattern" {
                rows.push((n, Vec::new()));
            } else if let Some(rest) = line.strip_prefix("pattern ") {
                let mut pairs = Vec::new();
                for piece in rest.split(',') {
                    let (word, letter) = piece
                        .split_once('=')
                        .ok_or_else(|| fail(n, format!("expected `word = letter` in {piece:?}")))?;
                    let word: Word = word
                        .trim()
                        .parse()
                        .map_err(|e| fail(n, format!("bad support word: {e}")))?;
                    pairs.push((word, letter.trim().to_string()));
                }
                rows.push((n, pairs));
            } else {
                return Err(fail(n, format!("unrecognized line {line:?}")));
            }
        }
        if !header_seen {
            return Err(fail(s.lines().count().max(1), "missing `sft` header".into()));
        }
        let model = model.ok_or_else(|| fail(1, "missing model line".into()))?;
        let alphabet = alphabet.ok_or_else(|| fail(1, "missing alphabet line".into()))?;
        let mut forbidden = Vec::with_capacity(rows.len());
        for (n, pairs) in rows {
            let (support, colors) = pairs.into_iter().unzip();
            let p = Pattern::new(model.as_ref(), support, colors)
                .map_err(|e| fail(n, format!("bad pattern: {e}")))?;
            forbidden.push(p);
        }
        Sft::new(model, alphabet, forbidden)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DynModel;
    use crate::groups::models::FreeAbelianModel;
    use crate::words::Generator;
    use std::sync::Arc;

    fn golden_mean_text() -> &'static str {
        "sft\nmodel abelian(a, b)\nalphabet 0 1\npattern 1 = 1 , a = 1\npattern 1 = 1 , b = 1\n"
    }

    #[test]
    fn canonical_text_round_trips_bit_exactly() {
        let s = Sft::from_text(golden_mean_text()).unwrap();
        assert_eq!(s.to_text(), golden_mean_text());
        assert_eq!(Sft::from_text(&s.to_text()).unwrap(), s);
        assert_eq!(s.forbidden().len(), 2);
        assert_eq!(s.model().describe(), "abelian(a, b)");
    }

    #[test]
    fn to_text_matches_a_hand_written_golden_string() {
        let model: DynModel = Arc::new(FreeAbelianModel::new(vec![
            Generator::new("a").unwrap(),
            Generator::new("b").unwrap(),
        ]));
        let w = |s: &str| s.parse::<Word>().unwrap();
        let p = |support: &[&str], color: &str| {
            Pattern::new(
                model.as_ref(),
                support.iter().map(|s| w(s)).collect(),
                support.iter().map(|_| color.to_string()).collect(),
            )
            .unwrap()
        };
        let s = Sft::new(
            model.clone(),
            Alphabet::of(&["0", "1"]).unwrap(),
            vec![p(&["1", "a"], "1"), p(&["1", "b"], "1")],
        )
        .unwrap();
        assert_eq!(s.to_text(), golden_mean_text());
    }

    #[test]
    fn comments_blanks_and_loose_spacing_are_tolerated() {
        let annotated = "# built by hand\n\nsft\n# the model\nmodel abelian(a, b)\nalphabet 0 1\n\npattern 1=1 ,  a = 1\n# trailing note\n";
        let s = Sft::from_text(annotated).unwrap();
        assert_eq!(s.forbidden().len(), 1);
        assert_eq!(s.forbidden()[0].to_string(), "1 = 1 , a = 1");
    }

    #[test]
    fn empty_support_pattern_round_trips() {
        let text = "sft\nmodel free(a)\nalphabet x\npattern\n";
        let s = Sft::from_text(text).unwrap();
        assert!(s.forbidden()[0].is_empty());
        assert_eq!(s.to_text(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("model free(a)\n", 1, "expected `sft` header"),
            ("sft\nmodel nonsense(\n", 2, "bad model spec"),
            ("sft\nmodel free(a)\nalphabet 0 0\n", 3, "bad alphabet"),
            ("sft\nmodel free(a)\nalphabet 0\nwhat 1 = 0\n", 4, "unrecognized line"),
            ("sft\nmodel free(a)\nalphabet 0\npattern 1\n", 4, "expected `word = letter`"),
            ("sft\nmodel free(a)\nalphabet 0\npattern a = 0 , a = 0\n", 4, "bad pattern"),
            ("sft\nalphabet 0\n", 1, "missing model"),
            ("sft\nmodel free(a)\n", 1, "missing alphabet"),
            ("# nothing\n", 1, "missing `sft` header"),
        ];
        for (text, line, needle) in cases {
            match Sft::from_text(text) {
                Err(SftError::Parse { line: l, msg }) => {
                    assert_eq!(l, *line, "line for {text:?}");
                    assert!(msg.contains(needle), "message {msg:?} for {text:?}");
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        // Color outside the declared alphabet surfaces from validation.
        let bad = "sft\nmodel free(a)\nalphabet 0\npattern 1 = 7\n";
        assert!(matches!(
            Sft::from_text(bad),
            Err(SftError::LetterOutsideAlphabet { .. })
        ));
    }
}
