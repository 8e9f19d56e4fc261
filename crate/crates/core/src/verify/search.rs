//! Backtracking searches: tiling a Cayley-ball window and hunting for
//! strongly periodic configurations over finite quotients. Branching order
//! and tie-breaking are fixed — cells in breadth-first ball order (cosets
//! in table order), letters in alphabet order — so outcomes and witnesses
//! are reproducible byte for byte.

use std::sync::Arc;

use crate::groups::{build_ball, Ball, CosetTable, GroupError};
use crate::sft::{
    quotient_stabilizes, quotient_translates_equal, shift, BallConfig, OrbitStabilizerReport,
    QuotientConfig, Sft,
};

use super::reduced_words;

/// Outcome of tiling one window.
///
/// A refutation is a proof: by compactness the SFT is nonempty exactly
/// when every ball is tileable, so `Unsatisfiable` shows the SFT is empty.
/// A success is evidence only — the window coloring says nothing about
/// larger radii.
#[derive(Clone, Debug)]
pub enum TileOutcome {
    Satisfiable(BallConfig),
    Unsatisfiable,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct TileResult {
    pub outcome: TileOutcome,
    pub nodes_explored: usize,
}

/// Outcome of the strongly-periodic-configuration search.
#[derive(Clone, Debug)]
pub enum PeriodicOutcome {
    Found(QuotientConfig),
    NoneUpToQuotient,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct PeriodicSearchResult {
    pub outcome: PeriodicOutcome,
    pub nodes_explored: usize,
}

/// One fully resolved forbidden-pattern instance: the pattern appears
/// exactly when every listed cell carries the paired letter.
struct Constraint {
    sites: Vec<usize>,
    letters: Vec<usize>,
}

/// Instances grouped by the last cell the assignment order touches, so
/// each is checked exactly once, as soon as it is fully colored.
struct Constraints {
    by_last: Vec<Vec<Constraint>>,
    /// An empty-support pattern appears everywhere: nothing is admissible.
    always_violated: bool,
}

fn letter_index(s: &Sft) -> impl Fn(&str) -> usize + '_ {
    move |l: &str| {
        s.alphabet()
            .letters()
            .iter()
            .position(|x| x == l)
            .expect("SFT validated its colors against its alphabet")
    }
}

fn window_constraints(s: &Sft, ball: &Ball) -> Result<Constraints, GroupError> {
    let idx = letter_index(s);
    let mut by_last: Vec<Vec<Constraint>> = (0..ball.len()).map(|_| Vec::new()).collect();
    let mut always_violated = false;
    for p in s.forbidden() {
        if p.points().next().is_none() {
            always_violated = true;
            continue;
        }
        for anchor in 0..ball.len() {
            let mut sites = Vec::new();
            let mut letters = Vec::new();
            let mut inside = true;
            for (w, color) in p.points() {
                match ball.offset(anchor, w)? {
                    Some(site) => {
                        sites.push(site);
                        letters.push(idx(color));
                    }
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            if inside {
                let last = *sites.iter().max().expect("nonempty support");
                by_last[last].push(Constraint { sites, letters });
            }
        }
    }
    Ok(Constraints { by_last, always_violated })
}

fn quotient_constraints(s: &Sft, t: &CosetTable) -> Result<Constraints, GroupError> {
    let idx = letter_index(s);
    let k = t.size();
    let mut by_last: Vec<Vec<Constraint>> = (0..k).map(|_| Vec::new()).collect();
    let mut always_violated = false;
    for p in s.forbidden() {
        if p.points().next().is_none() {
            always_violated = true;
            continue;
        }
        for anchor in 1..=k {
            let mut sites = Vec::new();
            let mut letters = Vec::new();
            for (w, color) in p.points() {
                sites.push(t.trace(anchor, w)? - 1);
                letters.push(idx(color));
            }
            let last = *sites.iter().max().expect("nonempty support");
            by_last[last].push(Constraint { sites, letters });
        }
    }
    Ok(Constraints { by_last, always_violated })
}

enum SearchEnd {
    Witness(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

/// Depth-first search for the lexicographically first letter assignment
/// violating no constraint. Every attempted placement counts one node
/// against the budget.
fn backtrack(
    cells: usize,
    letters: usize,
    constraints: &Constraints,
    budget: usize,
    nodes: &mut usize,
) -> SearchEnd {
    if constraints.always_violated {
        return SearchEnd::Exhausted;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(cells);
    let mut next = vec![0usize; cells];
    loop {
        let cell = chosen.len();
        if cell == cells {
            return SearchEnd::Witness(chosen);
        }
        if next[cell] == letters {
            next[cell] = 0;
            if chosen.pop().is_none() {
                return SearchEnd::Exhausted;
            }
            continue;
        }
        let letter = next[cell];
        next[cell] += 1;
        if *nodes == budget {
            return SearchEnd::OutOfBudget;
        }
        *nodes += 1;
        chosen.push(letter);
        let violated = constraints.by_last[cell]
            .iter()
            .any(|c| c.sites.iter().zip(&c.letters).all(|(s, l)| chosen[*s] == *l));
        if violated {
            chosen.pop();
        }
    }
}

/// Searches for an admissible coloring of the whole ball by deterministic
/// backtracking: cells in breadth-first order, letters in alphabet order,
/// pruning as soon as a forbidden pattern is fully matched. The witness is
/// the lexicographically first admissible coloring; `Unsatisfiable` is
/// returned only after exhausting the tree.
pub fn tile_ball(s: &Sft, ball: Arc<Ball>, node_budget: usize) -> Result<TileResult, GroupError> {
    if s.model().describe() != ball.model().describe() {
        return Err(GroupError::Model {
            msg: format!(
                "SFT is over {} but the ball is over {}",
                s.model().describe(),
                ball.model().describe()
            ),
        });
    }
    let constraints = window_constraints(s, &ball)?;
    let mut nodes = 0;
    let outcome = match backtrack(
        ball.len(),
        s.alphabet().len(),
        &constraints,
        node_budget,
        &mut nodes,
    ) {
        SearchEnd::Witness(chosen) => {
            let mut config = BallConfig::empty(Arc::clone(&ball));
            for (cell, letter) in chosen.iter().enumerate() {
                config.set(cell, &s.alphabet().letters()[*letter]);
            }
            TileOutcome::Satisfiable(config)
        }
        SearchEnd::Exhausted => TileOutcome::Unsatisfiable,
        SearchEnd::OutOfBudget => TileOutcome::BudgetExceeded,
    };
    Ok(TileResult { outcome, nodes_explored: nodes })
}

/// Searches the supplied finite quotients, in order, for a coloring of the
/// coset space with no forbidden pattern — i.e. a strongly periodic
/// configuration of the SFT. The search per quotient is exhaustive, so
/// `NoneUpToQuotient` certifies that no supplied quotient carries a
/// witness; the node budget is shared across all quotients.
pub fn search_strongly_periodic(
    s: &Sft,
    quotients: &[CosetTable],
    node_budget: usize,
) -> Result<PeriodicSearchResult, GroupError> {
    let mut nodes = 0;
    for t in quotients {
        if t.generators() != s.model().alphabet() {
            return Err(GroupError::Model {
                msg: format!(
                    "quotient table letters ({}) do not match the SFT's generators",
                    t.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
                ),
            });
        }
        let constraints = quotient_constraints(s, t)?;
        match backtrack(t.size(), s.alphabet().len(), &constraints, node_budget, &mut nodes) {
            SearchEnd::Witness(chosen) => {
                let colors =
                    chosen.iter().map(|l| s.alphabet().letters()[*l].clone()).collect();
                let config = QuotientConfig::new(t.clone(), colors)
                    .expect("search assigns every coset a letter");
                return Ok(PeriodicSearchResult {
                    outcome: PeriodicOutcome::Found(config),
                    nodes_explored: nodes,
                });
            }
            SearchEnd::Exhausted => continue,
            SearchEnd::OutOfBudget => {
                return Ok(PeriodicSearchResult {
                    outcome: PeriodicOutcome::BudgetExceeded,
                    nodes_explored: nodes,
                });
            }
        }
    }
    Ok(PeriodicSearchResult { outcome: PeriodicOutcome::NoneUpToQuotient, nodes_explored: nodes })
}

/// Scans all group elements of length at most `max_len` for window-scale
/// periods of a ball configuration.
///
/// This is a necessary-condition check: `g` is reported stabilizing when
/// `g·c` agrees with `c` wherever both are colored, which does not prove
/// `g` fixes an extension of `c` globally. The translate count is a lower
/// bound on the orbit size — translates are counted only when provably
/// distinct inside the window. Exact claims need the quotient form,
/// [`stabilizer_scan_quotient`].
pub fn stabilizer_scan(c: &BallConfig, max_len: usize) -> Result<OrbitStabilizerReport, GroupError> {
    let ball = c.ball();
    let shifts = build_ball(ball.model().clone(), ball.edge_generators(), max_len)?;
    let mut stabilizing = Vec::new();
    let mut translates: Vec<BallConfig> = vec![c.clone()];
    for i in 0..shifts.len() {
        if shifts.distance(i) == 0 {
            continue;
        }
        let g = shifts.element(i);
        let moved = shift(g, c)?;
        let agrees = (0..c.len()).all(|n| match (moved.color(n), c.color(n)) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        });
        if agrees {
            stabilizing.push(g.clone());
        }
        let provably_new = translates.iter().all(|t| {
            (0..c.len())
                .any(|n| matches!((moved.color(n), t.color(n)), (Some(x), Some(y)) if x != y))
        });
        if provably_new {
            translates.push(moved);
        }
    }
    Ok(OrbitStabilizerReport {
        distinct_translates_found: translates.len(),
        stabilizing_elements: stabilizing,
        radius_checked: max_len,
    })
}

/// Exact stabilizer scan for quotient configurations: every freely reduced
/// word of length at most `max_len` is tested with the exact coset-orbit
/// criterion, and translates are counted up to genuine global equality.
/// When `max_len` reaches the diameter of the coset graph the translate
/// count is the exact orbit size.
pub fn stabilizer_scan_quotient(
    q: &QuotientConfig,
    max_len: usize,
) -> Result<OrbitStabilizerReport, GroupError> {
    let mut stabilizing = Vec::new();
    // Each translate g·y is the configuration h ↦ color(trace(i₀, h)) with
    // i₀ the coset of g⁻¹; two translates are globally equal exactly when
    // their starting cosets are, under the pair-orbit test.
    let mut translate_cosets: Vec<usize> = vec![1];
    for g in reduced_words(q.table().generators(), max_len).iter().skip(1) {
        if quotient_stabilizes(q, g)? {
            stabilizing.push(g.clone());
        }
        let i0 = q.table().trace(1, &g.inverse())?;
        let mut new = true;
        for &seen in &translate_cosets {
            if quotient_translates_equal(q, i0, seen)? {
                new = false;
                break;
            }
        }
        if new {
            translate_cosets.push(i0);
        }
    }
    Ok(OrbitStabilizerReport {
        distinct_translates_found: translate_cosets.len(),
        stabilizing_elements: stabilizing,
        radius_checked: max_len,
    })
}
