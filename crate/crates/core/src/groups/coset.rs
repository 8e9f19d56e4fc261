//! Coset tables and budgeted Todd-Coxeter enumeration.
//!
//! Tables describe the right-coset action: coset 1 is the subgroup `H`
//! itself, and `act(i, s)` is the coset of `H·g_i·s`. Enumeration follows
//! the HLT strategy (trace every relator at every coset, filling gaps with
//! new cosets) with a standard coincidence queue; all choices are
//! deterministic, so equal inputs produce identical tables.

use std::collections::VecDeque;
use std::fmt::Write as _;

use super::{GroupError, GroupModel};
use crate::presentations::Presentation;
use crate::words::{Generator, Letter, Sign, Word};

/// A complete, closed coset table for a finite-index subgroup. Cosets are
/// numbered `1..=k` with coset 1 the subgroup; representatives satisfy
/// `coset(g_i) = i` with `g_1` the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    generators: Vec<Generator>,
    representatives: Vec<Word>,
    /// `action[i][2c]` / `action[i][2c + 1]`: image of coset `i + 1` under
    /// generator `c` and its inverse; entries are 1-based.
    action: Vec<Vec<usize>>,
}

fn column(generators: &[Generator], l: &Letter) -> Result<usize, GroupError> {
    let c = generators
        .iter()
        .position(|g| *g == l.gen)
        .ok_or_else(|| GroupError::OutsideAlphabet { gen: l.gen.clone() })?;
    Ok(2 * c + if l.sign == Sign::Pos { 0 } else { 1 })
}

impl CosetTable {
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    /// Representative of coset `i` (1-based).
    pub fn representative(&self, i: usize) -> &Word {
        &self.representatives[i - 1]
    }

    /// The index-1 table for the whole group: one coset fixed by everything.
    pub fn index_one(generators: Vec<Generator>) -> CosetTable {
        let action = vec![vec![1; 2 * generators.len()]];
        CosetTable { generators, representatives: vec![Word::identity()], action }
    }

    /// Crate-internal assembly for tables derived from existing ones
    /// (product groups, lifted subgroups). The caller must hand over a
    /// genuine closed action; nothing is re-checked here.
    pub(crate) fn from_parts(
        generators: Vec<Generator>,
        representatives: Vec<Word>,
        action: Vec<Vec<usize>>,
    ) -> CosetTable {
        CosetTable { generators, representatives, action }
    }

    /// Image of coset `i` under a single letter.
    pub fn act(&self, i: usize, l: &Letter) -> Result<usize, GroupError> {
        Ok(self.action[i - 1][column(&self.generators, l)?])
    }

    /// Image of coset `i` under a word, letter by letter.
    pub fn trace(&self, i: usize, w: &Word) -> Result<usize, GroupError> {
        let mut cur = i;
        for l in w.letters() {
            cur = self.act(cur, l)?;
        }
        Ok(cur)
    }

    /// Checks the table against its defining data: mutually inverse columns
    /// (hence permutations), relators acting trivially on every coset,
    /// subgroup generators fixing coset 1, and representatives tracing from
    /// coset 1 to their own index.
    pub fn validate(
        &self,
        p: &Presentation,
        subgroup_gens: &[Word],
    ) -> Result<(), GroupError> {
        let k = self.size();
        if self.generators != p.generators() {
            return Err(GroupError::Model {
                msg: "table generators do not match the presentation".into(),
            });
        }
        for (row, images) in self.action.iter().enumerate() {
            if images.len() != 2 * self.generators.len() {
                return Err(GroupError::Model { msg: format!("row {} has wrong width", row + 1) });
            }
            if let Some(bad) = images.iter().find(|i| **i == 0 || **i > k) {
                return Err(GroupError::Model {
                    msg: format!("row {} has out-of-range coset {bad}", row + 1),
                });
            }
        }
        for i in 1..=k {
            for g in &self.generators {
                for sign in [Sign::Pos, Sign::Neg] {
                    let l = Letter { gen: g.clone(), sign };
                    let there = self.act(i, &l)?;
                    let back = self.act(there, &l.inverse())?;
                    if back != i {
                        return Err(GroupError::Model {
                            msg: format!("columns for `{g}` are not mutually inverse at coset {i}"),
                        });
                    }
                }
            }
            for r in p.relators() {
                if self.trace(i, r)? != i {
                    return Err(GroupError::Model {
                        msg: format!("relator `{r}` does not fix coset {i}"),
                    });
                }
            }
        }
        for w in subgroup_gens {
            if self.trace(1, w)? != 1 {
                return Err(GroupError::Model {
                    msg: format!("subgroup generator `{w}` does not fix coset 1"),
                });
            }
        }
        if !self.representative(1).is_empty() {
            return Err(GroupError::Model { msg: "representative of coset 1 is not 1".into() });
        }
        for i in 1..=k {
            if self.trace(1, self.representative(i))? != i {
                return Err(GroupError::Model {
                    msg: format!("representative of coset {i} does not land on coset {i}"),
                });
            }
        }
        Ok(())
    }

    /// Plain-text form: a `coset-table` header, the generator list, one
    /// `rep` line per coset, then one `row` line per coset with the images
    /// under `g, g^-1` for each generator in order. Round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::from("coset-table\n");
        let names: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "letters {}", names.join(" "));
        for rep in &self.representatives {
            let _ = writeln!(out, "rep {rep}");
        }
        for row in &self.action {
            let images: Vec<String> = row.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "row {}", images.join(" "));
        }
        out
    }

    /// Parses the `to_text` form; `#` starts a comment line.
    pub fn from_text(s: &str) -> Result<CosetTable, GroupError> {
        let bad = |msg: String| GroupError::Model { msg };
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("coset-table") {
            return Err(bad("expected `coset-table` header".into()));
        }
        let mut generators = Vec::new();
        let mut representatives = Vec::new();
        let mut action = Vec::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix("letters ") {
                for tok in rest.split_whitespace() {
                    generators.push(
                        Generator::new(tok)
                            .map_err(|e| bad(format!("bad generator {tok:?}: {e}")))?,
                    );
                }
            } else if let Some(rest) = line.strip_prefix("rep ") {
                representatives
                    .push(rest.parse::<Word>().map_err(|e| bad(format!("bad rep line: {e}")))?);
            } else if let Some(rest) = line.strip_prefix("row ") {
                let row: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|e| bad(format!("bad row entry {t:?}: {e}"))))
                    .collect::<Result<_, _>>()?;
                action.push(row);
            } else {
                return Err(bad(format!("unrecognized line {line:?}")));
            }
        }
        if representatives.is_empty() || representatives.len() != action.len() {
            return Err(bad(format!(
                "need equally many rep and row lines, found {} and {}",
                representatives.len(),
                action.len()
            )));
        }
        let table = CosetTable { generators, representatives, action };
        let k = table.size();
        for (i, row) in table.action.iter().enumerate() {
            if row.len() != 2 * table.generators.len() {
                return Err(bad(format!("row {} has wrong width", i + 1)));
            }
            if let Some(e) = row.iter().find(|e| **e == 0 || **e > k) {
                return Err(bad(format!("row {} has out-of-range coset {e}", i + 1)));
            }
        }
        for i in 1..=k {
            if table.trace(1, table.representative(i))? != i {
                return Err(bad(format!("representative of coset {i} does not land on coset {i}")));
            }
        }
        Ok(table)
    }
}

/// Working state of the enumeration: a growing table over internal 0-based
/// coset ids with a union-find structure resolving coincidences.
struct Enumerator {
    ncols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    defined: usize,
    max_cosets: usize,
    queue: VecDeque<(usize, usize)>,
}

fn inv_col(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(ncols: usize, max_cosets: usize) -> Enumerator {
        Enumerator {
            ncols,
            table: Vec::new(),
            parent: Vec::new(),
            defined: 0,
            max_cosets,
            queue: VecDeque::new(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            return x;
        }
        let root = self.find(self.parent[x]);
        self.parent[x] = root;
        root
    }

    fn alive(&mut self, x: usize) -> bool {
        self.find(x) == x
    }

    fn new_coset(&mut self) -> Result<usize, GroupError> {
        if self.defined >= self.max_cosets {
            return Err(GroupError::BudgetExceeded { max_cosets: self.max_cosets });
        }
        self.defined += 1;
        let id = self.table.len();
        self.table.push(vec![None; self.ncols]);
        self.parent.push(id);
        Ok(id)
    }

    fn define(&mut self, from: usize, col: usize) -> Result<usize, GroupError> {
        let id = self.new_coset()?;
        self.table[from][col] = Some(id);
        self.table[id][inv_col(col)] = Some(from);
        Ok(id)
    }

    /// Records `x·col = y` in both directions, queuing coincidences when a
    /// slot is already filled differently.
    fn set(&mut self, x: usize, col: usize, y: usize) {
        match self.table[x][col] {
            Some(z) => {
                let z = self.find(z);
                if z != y {
                    self.queue.push_back((z, y));
                }
            }
            None => self.table[x][col] = Some(y),
        }
        match self.table[y][inv_col(col)] {
            Some(z) => {
                let z = self.find(z);
                if z != x {
                    self.queue.push_back((z, x));
                }
            }
            None => self.table[y][inv_col(col)] = Some(x),
        }
    }

    /// Merges queued coincidences to exhaustion. The smaller id survives, so
    /// coset 0 (the subgroup) is never replaced.
    fn process_coincidences(&mut self) {
        while let Some((x, y)) = self.queue.pop_front() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            let (keep, dead) = if x < y { (x, y) } else { (y, x) };
            self.parent[dead] = keep;
            for col in 0..self.ncols {
                if let Some(q) = self.table[dead][col] {
                    let q = self.find(q);
                    self.set(keep, col, q);
                }
            }
        }
    }

    /// HLT scan of a word (given as a column sequence) starting and ending at
    /// `start`: follows defined edges from both ends, fills the gap with new
    /// cosets, and closes the final edge as a deduction.
    fn scan_and_fill(&mut self, start: usize, cols: &[usize]) -> Result<(), GroupError> {
        let mut f = self.find(start);
        let mut fi = 0usize;
        let mut b = self.find(start);
        let mut bi = cols.len();
        loop {
            while fi < bi {
                match self.table[f][cols[fi]] {
                    Some(n) => {
                        f = self.find(n);
                        fi += 1;
                    }
                    None => break,
                }
            }
            if fi == bi {
                if f != b {
                    self.queue.push_back((f, b));
                    self.process_coincidences();
                }
                return Ok(());
            }
            while bi > fi {
                match self.table[b][inv_col(cols[bi - 1])] {
                    Some(n) => {
                        b = self.find(n);
                        bi -= 1;
                    }
                    None => break,
                }
            }
            if fi == bi {
                if f != b {
                    self.queue.push_back((f, b));
                    self.process_coincidences();
                }
                return Ok(());
            }
            if bi == fi + 1 {
                self.set(f, cols[fi], b);
                self.process_coincidences();
                return Ok(());
            }
            f = self.define(f, cols[fi])?;
            fi += 1;
        }
    }
}

/// Enumerates the right cosets of the subgroup generated by `subgroup_gens`
/// in the group presented by `p`, with an HLT strategy: subgroup generators
/// are traced from coset 1, then every relator is traced at every coset (in
/// creation order) and any still-undefined edges are filled with new cosets.
///
/// The budget counts every coset ever defined, including ones later merged
/// away; exceeding it aborts with `BudgetExceeded` and no partial table is
/// returned. All scheduling is deterministic, so equal inputs yield
/// identical tables, representatives included.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup_gens: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, GroupError> {
    if max_cosets == 0 {
        return Err(GroupError::BudgetExceeded { max_cosets });
    }
    let generators = p.generators().to_vec();
    let to_cols = |w: &Word| -> Result<Vec<usize>, GroupError> {
        w.letters().iter().map(|l| column(&generators, l)).collect()
    };
    let relator_cols: Vec<Vec<usize>> =
        p.relators().iter().map(to_cols).collect::<Result<_, _>>()?;
    let subgroup_cols: Vec<Vec<usize>> =
        subgroup_gens.iter().map(to_cols).collect::<Result<_, _>>()?;

    let ncols = 2 * generators.len();
    let mut e = Enumerator::new(ncols, max_cosets);
    e.new_coset()?;
    for cols in &subgroup_cols {
        e.scan_and_fill(0, cols)?;
    }
    let mut i = 0;
    while i < e.table.len() {
        if e.alive(i) {
            for cols in &relator_cols {
                e.scan_and_fill(i, cols)?;
                if !e.alive(i) {
                    break;
                }
            }
        }
        if e.alive(i) {
            for col in 0..ncols {
                if e.table[i][col].is_none() {
                    e.define(i, col)?;
                }
            }
        }
        i += 1;
    }

    // Renumber live cosets in creation order; all stale entries resolve
    // through the union-find before translation.
    let live: Vec<usize> = (0..e.table.len()).filter(|&i| e.find(i) == i).collect();
    let mut external = vec![0usize; e.table.len()];
    for (new, &old) in live.iter().enumerate() {
        external[old] = new + 1;
    }
    let mut action = Vec::with_capacity(live.len());
    for &old in &live {
        let row: Vec<usize> = (0..ncols)
            .map(|col| {
                let target = e.table[old][col].expect("closed table has no gaps");
                external[e.find(target)]
            })
            .collect();
        action.push(row);
    }

    // Representatives: BFS from coset 1 in column order gives, for each
    // coset, the shortest word reaching it, ties broken by the order
    // g, g^-1 over the generator list.
    let k = live.len();
    let mut representatives: Vec<Option<Word>> = vec![None; k];
    representatives[0] = Some(Word::identity());
    let mut bfs = VecDeque::from([0usize]);
    while let Some(cur) = bfs.pop_front() {
        for (c, g) in generators.iter().enumerate() {
            for sign in [Sign::Pos, Sign::Neg] {
                let col = 2 * c + if sign == Sign::Pos { 0 } else { 1 };
                let target = action[cur][col] - 1;
                if representatives[target].is_none() {
                    let l = Letter { gen: g.clone(), sign };
                    let w = representatives[cur]
                        .as_ref()
                        .expect("BFS order")
                        .concat(&Word::from_letter(l));
                    representatives[target] = Some(w);
                    bfs.push_back(target);
                }
            }
        }
    }
    let representatives: Vec<Word> =
        representatives.into_iter().map(|r| r.expect("table is connected")).collect();

    let table = CosetTable { generators, representatives, action };
    debug_assert!(table.validate(p, subgroup_gens).is_ok());
    Ok(table)
}

/// Factors `g = h·g_i` with `h` in the subgroup: `i` is the coset of `g`
/// under the table action and `h = g·g_i^-1`, returned in model normal form.
pub fn coset_decompose(
    t: &CosetTable,
    model: &dyn GroupModel,
    g: &Word,
) -> Result<(Word, usize), GroupError> {
    let i = t.trace(1, g)?;
    let h = model.normal_form(&g.concat(&t.representative(i).inverse()))?;
    Ok((h, i))
}

/// The conjugated subgroup generator `g_i^-1 · a · g_i`, freely reduced but
/// not rewritten into any subgroup basis.
pub fn conjugate_generator(t: &CosetTable, a: &Word, i: usize) -> Word {
    let rep = t.representative(i);
    rep.inverse().concat(a).concat(rep)
}
