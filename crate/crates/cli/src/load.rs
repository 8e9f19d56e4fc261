//! File loaders with user-facing diagnostics: every error names the file,
//! parse errors carry a position, and coset tables get an optional
//! structural re-check beyond what their parser enforces.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use gsft_core::{CosetTable, Embedding, Presentation, PresentationError, Sft, Sign};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Reads a presentation file. `#` starts a comment; the rest of the file is
/// one `< generators | relators >` presentation. Comment bytes are blanked
/// rather than removed so parser byte offsets still index the original file
/// when converted to line/column.
pub fn presentation(path: &Path) -> Result<Presentation> {
    let raw = read(path)?;
    let mut bytes = raw.clone().into_bytes();
    let mut in_comment = false;
    for b in bytes.iter_mut() {
        match *b {
            b'#' => in_comment = true,
            b'\n' => in_comment = false,
            _ => {}
        }
        if in_comment {
            *b = b' ';
        }
    }
    let text = String::from_utf8(bytes).expect("only ASCII bytes were blanked");
    match text.parse::<Presentation>() {
        Ok(p) => Ok(p),
        Err(PresentationError::Parse { at, msg }) => {
            let (line, column) = line_column(&raw, at);
            bail!("{}: line {line}, column {column}: {msg}", path.display())
        }
        Err(e) => bail!("{}: {e}", path.display()),
    }
}

fn line_column(text: &str, at: usize) -> (usize, usize) {
    let at = at.min(text.len());
    let before = &text[..at];
    let line = before.bytes().filter(|b| *b == b'\n').count() + 1;
    let column = at - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, column)
}

pub fn sft(path: &Path) -> Result<Sft> {
    let raw = read(path)?;
    Sft::from_text(&raw).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn embedding(path: &Path) -> Result<Embedding> {
    let raw = read(path)?;
    Embedding::from_text(&raw).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn coset_table(path: &Path) -> Result<CosetTable> {
    let raw = read(path)?;
    CosetTable::from_text(&raw).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Structural re-check of a parsed table: the two columns of every
/// generator must be mutually inverse permutations (the parser only checks
/// ranges and representative tracing). Skipped under `--unchecked`.
pub fn check_table(t: &CosetTable, role: &str) -> Result<()> {
    for i in 1..=t.size() {
        for g in t.generators() {
            for sign in [Sign::Pos, Sign::Neg] {
                let l = gsft_core::Letter::new(g.clone(), sign);
                let j = t.act(i, &l)?;
                if t.act(j, &l.inverse())? != i {
                    bail!(
                        "{role}: columns for `{g}` are not mutually inverse \
                         (coset {i} -> {j} does not return)"
                    );
                }
            }
        }
    }
    Ok(())
}
