//! The shift action and pattern matching, in both the windowed (ball) and
//! exact (quotient) representations.

use std::sync::Arc;

use super::{Appearance, BallConfig, Pattern, QuotientConfig, Sft};
use crate::groups::{Ball, GroupError};
use crate::words::{Letter, Sign, Word};

/// The shift action `(g·x)_h := x_{g^{-1}·h}` at window scale: each ball
/// element `h` takes the color of `g^{-1}·h`, and positions whose preimage
/// leaves the ball stay uncolored. The output lives on the same ball.
pub fn shift(g: &Word, c: &BallConfig) -> Result<BallConfig, GroupError> {
    let ball = c.ball();
    let g_inv = g.inverse();
    let mut out = BallConfig::empty(Arc::clone(ball));
    for h in 0..ball.len() {
        if let Some(pre) = ball.find(&g_inv.concat(ball.element(h)))? {
            if let Some(color) = c.color(pre) {
                out.set(h, color);
            }
        }
    }
    Ok(out)
}

/// Does `p` appear in `c` at position `at`?
///
/// `Yes` requires every support point `q` to have `at·q` inside the ball,
/// colored, and matching `p`. Any support point that leaves the ball or
/// lands on an uncolored cell makes the verdict `Unknown` — even alongside
/// a definite mismatch — so `No` is only ever returned for a fully visible
/// non-match. A window can refute admissibility but never certify it.
pub fn appears(p: &Pattern, c: &BallConfig, at: &Word) -> Result<Appearance, GroupError> {
    let ball = c.ball();
    let mut unknown = false;
    let mut mismatch = false;
    for (q, color) in p.points() {
        match ball.find(&at.concat(q))? {
            Some(site) => match c.color(site) {
                Some(seen) if seen == color => {}
                Some(_) => mismatch = true,
                None => unknown = true,
            },
            None => unknown = true,
        }
    }
    Ok(if unknown {
        Appearance::Unknown
    } else if mismatch {
        Appearance::No
    } else {
        Appearance::Yes
    })
}

/// Every forbidden-pattern appearance the window can see: all `(p, at)`
/// pairs with a `Yes` match, patterns in declaration order, positions in
/// ball order. Empty means locally admissible — no violation witnessed
/// inside this window.
pub fn violations(s: &Sft, c: &BallConfig) -> Result<Vec<(Pattern, Word)>, GroupError> {
    let ball = c.ball();
    let mut out = Vec::new();
    for p in s.forbidden() {
        for i in 0..ball.len() {
            if appears(p, c, ball.element(i))? == Appearance::Yes {
                out.push((p.clone(), ball.element(i).clone()));
            }
        }
    }
    Ok(out)
}

/// Exact global admissibility over a finite coset space: `(p, i)` is listed
/// iff every support point of `p`, traced from coset `i` through the table,
/// lands on a coset whose color matches `p`. An empty list means the
/// induced configuration on the whole group avoids every forbidden pattern
/// — no window approximation involved, since tracing is the coset action
/// itself.
pub fn quotient_violations(
    s: &Sft,
    q: &QuotientConfig,
) -> Result<Vec<(Pattern, usize)>, GroupError> {
    let table = q.table();
    let mut out = Vec::new();
    for p in s.forbidden() {
        for i in 1..=table.size() {
            let mut matched = true;
            for (qw, color) in p.points() {
                if q.color(table.trace(i, qw)?) != color {
                    matched = false;
                    break;
                }
            }
            if matched {
                out.push((p.clone(), i));
            }
        }
    }
    Ok(out)
}

/// Reads a quotient configuration through a ball window: every ball element
/// takes the color of its coset. Total by construction.
pub fn expand_quotient(q: &QuotientConfig, ball: Arc<Ball>) -> Result<BallConfig, GroupError> {
    let mut out = BallConfig::empty(Arc::clone(&ball));
    for i in 0..ball.len() {
        let coset = q.table().trace(1, ball.element(i))?;
        out.set(i, q.color(coset));
    }
    Ok(out)
}

/// Exact stabilizer membership for quotient configurations.
///
/// `g` fixes the induced configuration iff `color(coset(g^{-1}·h)) =
/// color(coset(h))` for every `h`. Both cosets move by the same letters of
/// `h`, so the reachable pairs are exactly the diagonal orbit of
/// `(coset(g^{-1}), coset(1))` under the right action — a BFS over at most
/// `k²` pairs, each of which must be monochromatic.
pub fn quotient_stabilizes(q: &QuotientConfig, g: &Word) -> Result<bool, GroupError> {
    quotient_translates_equal(q, q.table().trace(1, &g.inverse())?, 1)
}

/// Whether the translated configurations `h ↦ color(trace(i, h))` and
/// `h ↦ color(trace(j, h))` agree everywhere: the diagonal pair orbit of
/// `(i, j)` must be monochromatic.
pub(crate) fn quotient_translates_equal(
    q: &QuotientConfig,
    i: usize,
    j: usize,
) -> Result<bool, GroupError> {
    let table = q.table();
    let k = table.size();
    let letters: Vec<Letter> = table
        .generators()
        .iter()
        .flat_map(|g| {
            [
                Letter { gen: g.clone(), sign: Sign::Pos },
                Letter { gen: g.clone(), sign: Sign::Neg },
            ]
        })
        .collect();
    let start = (i, j);
    let mut seen = vec![false; k * k];
    let mut stack = vec![start];
    seen[(start.0 - 1) * k + (start.1 - 1)] = true;
    while let Some((a, b)) = stack.pop() {
        if q.color(a) != q.color(b) {
            return Ok(false);
        }
        for l in &letters {
            let next = (table.act(a, l)?, table.act(b, l)?);
            let slot = (next.0 - 1) * k + (next.1 - 1);
            if !seen[slot] {
                seen[slot] = true;
                stack.push(next);
            }
        }
    }
    Ok(true)
}
