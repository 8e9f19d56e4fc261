//! Constraint propagation for the coset tags of a right extension.
//!
//! The adjacency patterns of a right extension forbid a cell tagged `i`
//! from sitting next to a differently-tagged cell one conjugated subgroup
//! step away: tag(v) = i forces tag(v · g_i⁻¹·a·g_i) = i. The closure
//! takes the tags a partial window coloring pins down and propagates them
//! to a fixpoint, reporting either the full set of forced tags or a
//! contradiction with a step-by-step witness path.

use super::{Embedding, ExtensionError, ProductLetter, RightExtension};
use crate::groups::conjugate_generator;
use crate::sft::BallConfig;
use crate::words::Word;

/// The result of propagating coset tags over a window: for each ball cell,
/// the tag every admissible completion must give it, if the seeds force
/// one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetAssignment {
    assigned: Vec<Option<usize>>,
}

impl CosetAssignment {
    /// The forced coset tag of the i-th ball cell, if any.
    pub fn coset(&self, i: usize) -> Option<usize> {
        self.assigned[i]
    }

    pub fn assigned(&self) -> &[Option<usize>] {
        &self.assigned
    }

    pub fn len(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }

    /// How many cells the seeds pinned down.
    pub fn determined_count(&self) -> usize {
        self.assigned.iter().filter(|a| a.is_some()).count()
    }
}

/// Why a tag value was ruled out at a cell. Every cause refers to a
/// strictly earlier event, so cause chains always bottom out at a seed.
#[derive(Clone, Copy)]
enum Elim {
    /// The cell is a seed with a different tag.
    Seed,
    /// The value is ruled out at `via` = this cell moved one conjugated
    /// step with that very tag, so it is ruled out here too.
    Backward { via: usize },
    /// `from` is determined, and its forward step lands here with a
    /// different tag.
    Forward { from: usize },
}

/// How a cell came to have exactly one remaining tag.
#[derive(Clone, Copy)]
enum Det {
    Seed,
    /// Forced forward from a determined cell.
    Forced { from: usize },
    /// All other values were eliminated one by one; the payload is the
    /// value whose elimination finished the job.
    Narrowed { last_eliminated: usize },
}

struct Propagation<'a> {
    config: &'a BallConfig,
    k: usize,
    /// `dom[v][t-1]`: can cell v still carry tag t?
    dom: Vec<Vec<bool>>,
    elim: Vec<Vec<Option<Elim>>>,
    det: Vec<Option<Det>>,
    /// Conjugated subgroup steps, indexed `[tag - 1][generator]`.
    steps: Vec<Vec<Word>>,
}

impl<'a> Propagation<'a> {
    fn new(e: &Embedding, k: usize, config: &'a BallConfig) -> Self {
        let table = e.table().expect("a right extension always carries a table");
        let steps = (1..=k)
            .map(|t| {
                e.subgroup_gens()
                    .iter()
                    .map(|a| conjugate_generator(table, a, t))
                    .collect()
            })
            .collect();
        let n = config.len();
        Propagation {
            config,
            k,
            dom: vec![vec![true; k]; n],
            elim: vec![vec![None; k]; n],
            det: vec![None; n],
            steps,
        }
    }

    fn remaining(&self, v: usize) -> usize {
        self.dom[v].iter().filter(|b| **b).count()
    }

    fn determined_value(&self, v: usize) -> Option<usize> {
        if self.remaining(v) == 1 {
            self.dom[v].iter().position(|b| *b).map(|p| p + 1)
        } else {
            None
        }
    }

    /// The elimination chain justifying "cell v cannot carry tag t",
    /// rendered as ball elements from a seed to v.
    fn elimination_path(&self, v: usize, t: usize) -> Vec<Word> {
        match self.elim[v][t - 1].expect("path requested for a live value") {
            Elim::Seed => vec![self.config.ball().element(v).clone()],
            Elim::Backward { via } => {
                let mut p = self.elimination_path(via, t);
                p.push(self.config.ball().element(v).clone());
                p
            }
            Elim::Forward { from } => {
                let mut p = self.determination_path(from);
                p.push(self.config.ball().element(v).clone());
                p
            }
        }
    }

    /// The chain justifying "cell v must carry its one remaining tag".
    fn determination_path(&self, v: usize) -> Vec<Word> {
        match self.det[v].expect("path requested for an undetermined cell") {
            Det::Seed => vec![self.config.ball().element(v).clone()],
            Det::Forced { from } => {
                let mut p = self.determination_path(from);
                p.push(self.config.ball().element(v).clone());
                p
            }
            Det::Narrowed { last_eliminated } => self.elimination_path(v, last_eliminated),
        }
    }

    fn contradiction(&self, v: usize, first: usize, second: usize, path: Vec<Word>) -> ExtensionError {
        ExtensionError::PropagationContradiction {
            cell: self.config.ball().element(v).clone(),
            first,
            second,
            path,
        }
    }

    /// Rule out tag t at cell v. Errors if that leaves the cell with no
    /// tags at all.
    fn eliminate(&mut self, v: usize, t: usize, cause: Elim) -> Result<bool, ExtensionError> {
        if !self.dom[v][t - 1] {
            return Ok(false);
        }
        if self.remaining(v) == 1 {
            // v had to be t, and now t is impossible: walk the incoming
            // chain for the witness and name the tag that displaced it.
            let second = match cause {
                Elim::Backward { via } => self.determined_value(via).unwrap_or(t % self.k + 1),
                Elim::Forward { from } => self.determined_value(from).unwrap_or(t % self.k + 1),
                Elim::Seed => unreachable!("a seed never empties its own domain"),
            };
            let path = match cause {
                Elim::Backward { via } => {
                    let mut p = self.elimination_path(via, t);
                    p.push(self.config.ball().element(v).clone());
                    p
                }
                Elim::Forward { from } => {
                    let mut p = self.determination_path(from);
                    p.push(self.config.ball().element(v).clone());
                    p
                }
                Elim::Seed => unreachable!(),
            };
            return Err(self.contradiction(v, t, second, path));
        }
        self.dom[v][t - 1] = false;
        self.elim[v][t - 1] = Some(cause);
        if let Some(value) = self.determined_value(v) {
            if self.det[v].is_none() {
                self.det[v] = Some(Det::Narrowed { last_eliminated: t });
            }
            let _ = value;
        }
        Ok(true)
    }

    fn seed(&mut self, v: usize, t: usize) -> Result<(), ExtensionError> {
        self.det[v] = Some(Det::Seed);
        for other in 1..=self.k {
            if other != t {
                self.dom[v][other - 1] = false;
                self.elim[v][other - 1] = Some(Elim::Seed);
            }
        }
        Ok(())
    }

    /// One pass of the contrapositive rule: if carrying tag t at v would
    /// push a neighbor onto a tag it cannot carry, rule t out at v.
    fn backward_sweep(&mut self) -> Result<bool, ExtensionError> {
        let mut changed = false;
        for v in 0..self.config.len() {
            for t in 1..=self.k {
                if !self.dom[v][t - 1] {
                    continue;
                }
                for s in 0..self.steps[t - 1].len() {
                    let step = self.steps[t - 1][s].clone();
                    if let Some(u) = self.config.ball().offset(v, &step)? {
                        if !self.dom[u][t - 1] {
                            changed |= self.eliminate(v, t, Elim::Backward { via: u })?;
                            break;
                        }
                    }
                }
            }
        }
        Ok(changed)
    }

    /// One pass of the forward rule: a determined cell drags every
    /// in-window conjugated step onto its own tag.
    fn forward_sweep(&mut self) -> Result<bool, ExtensionError> {
        let mut changed = false;
        for v in 0..self.config.len() {
            let Some(t) = self.determined_value(v) else { continue };
            for s in 0..self.steps[t - 1].len() {
                let step = self.steps[t - 1][s].clone();
                let Some(u) = self.config.ball().offset(v, &step)? else { continue };
                if !self.dom[u][t - 1] {
                    // u cannot take the tag v forces on it.
                    let existing = self.determined_value(u).unwrap_or(t % self.k + 1);
                    let mut path = self.determination_path(v);
                    path.push(self.config.ball().element(u).clone());
                    return Err(self.contradiction(u, existing, t, path));
                }
                for other in 1..=self.k {
                    if other != t && self.dom[u][other - 1] {
                        let was_open = self.det[u].is_none() && self.remaining(u) > 1;
                        changed |= self.eliminate(u, other, Elim::Forward { from: v })?;
                        if was_open && self.remaining(u) == 1 {
                            self.det[u] = Some(Det::Forced { from: v });
                        }
                    }
                }
            }
        }
        Ok(changed)
    }
}

/// Propagate the coset tags a partial window coloring forces under the
/// adjacency patterns of a right extension.
///
/// Colored cells seed their `@`-tag; propagation then runs the forward
/// rule (a determined cell tags its conjugated neighbors) and its
/// contrapositive (a tag impossible one step ahead is impossible here) to
/// a fixpoint. Sound for any index; in the central case, where the
/// conjugated steps do not depend on the tag, the two rules together
/// determine every cell connected to a seed through subgroup steps.
pub fn coset_color_closure(
    rx: &RightExtension,
    config: &BallConfig,
) -> Result<CosetAssignment, ExtensionError> {
    let k = rx.k();
    let mut prop = Propagation::new(rx.embedding(), k, config);
    for v in 0..config.len() {
        if let Some(color) = config.color(v) {
            let letter = ProductLetter::parse(color)?;
            if letter.coset > k {
                return Err(ExtensionError::AlphabetMismatch { letter: color.to_string() });
            }
            prop.seed(v, letter.coset)?;
        }
    }
    loop {
        let mut changed = prop.backward_sweep()?;
        changed |= prop.forward_sweep()?;
        if !changed {
            break;
        }
    }
    let assigned = (0..config.len()).map(|v| prop.determined_value(v)).collect();
    Ok(CosetAssignment { assigned })
}
