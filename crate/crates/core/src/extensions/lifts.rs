//! Explicit configuration lifts: the witnesses that periodicity survives
//! each extension construction.

use std::sync::Arc;

use super::{unsupported, Embedding, ExtensionError, ProductLetter};
use crate::groups::{coset_decompose, Ball, CosetTable};
use crate::sft::{BallConfig, QuotientConfig};
use crate::words::{Generator, Letter, Sign, Word};

/// The coset table of `K ≤ H` re-read inside `H × Z/k`: cosets are pairs
/// (coset of `K` in `H`, power of `z`), the old generators act on the first
/// coordinate and `z` rotates the second. Representatives are
/// `rep_K(c) · z^m`.
pub fn product_table(
    t: &CosetTable,
    z: &Generator,
    k: usize,
) -> Result<CosetTable, ExtensionError> {
    if k == 0 {
        return Err(unsupported("cyclic order must be positive"));
    }
    if t.generators().contains(z) {
        return Err(unsupported(format!("`{z}` already names a subgroup table letter")));
    }
    let m = t.size();
    let idx = |c: usize, mm: usize| (c - 1) * k + mm + 1;
    let mut generators = t.generators().to_vec();
    generators.push(z.clone());
    let mut representatives = Vec::with_capacity(m * k);
    let mut action = Vec::with_capacity(m * k);
    for c in 1..=m {
        for mm in 0..k {
            representatives.push(t.representative(c).concat(&Word::from_gen(z).pow(mm as i64)));
            let mut row = Vec::with_capacity(2 * generators.len());
            for g in t.generators() {
                for sign in [Sign::Pos, Sign::Neg] {
                    let there = t.act(c, &Letter { gen: g.clone(), sign })?;
                    row.push(idx(there, mm));
                }
            }
            row.push(idx(c, (mm + 1) % k));
            row.push(idx(c, (mm + k - 1) % k));
            action.push(row);
        }
    }
    Ok(CosetTable::from_parts(generators, representatives, action))
}

/// The product lift `x^↑(g, i) := x(g)` at window scale: each cell of the
/// product ball takes the color of its base projection (the element with
/// the `z`-letters struck out). Cells whose projection leaves the input
/// window stay uncolored; the alphabet is unchanged.
pub fn product_lift(
    x: &BallConfig,
    product_ball: Arc<Ball>,
    z: &Generator,
) -> Result<BallConfig, ExtensionError> {
    if !product_ball.model().alphabet().contains(z) {
        return Err(unsupported(format!("`{z}` is not a generator of the product model")));
    }
    let mut out = BallConfig::empty(Arc::clone(&product_ball));
    for i in 0..product_ball.len() {
        let base = Word::from_letters(
            product_ball.element(i).letters().iter().filter(|l| l.gen != *z).cloned(),
        );
        if let Some(j) = x.ball().find(&base)? {
            if let Some(color) = x.color(j) {
                out.set(i, color);
            }
        }
    }
    Ok(out)
}

/// Exact form of the product lift: the configuration on `H × Z/k` colored
/// through the projection to `H`, represented over the product of the
/// input's coset table with `Z/k`. Every `(1_H, i)`-shift fixes the result
/// exactly, since the coloring never reads the `z`-coordinate.
pub fn product_lift_quotient(
    x: &QuotientConfig,
    z: &Generator,
    k: usize,
) -> Result<QuotientConfig, ExtensionError> {
    let table = product_table(x.table(), z, k)?;
    let mut colors = Vec::with_capacity(x.table().size() * k);
    for c in 1..=x.table().size() {
        for _ in 0..k {
            colors.push(x.color(c).to_string());
        }
    }
    Ok(QuotientConfig::new(table, colors)?)
}

/// The periodic right lift `y(h·g_i) := (x(h), i)` at window scale.
///
/// Every output cell is decomposed through the embedding's table; the lift
/// is strict — an element whose subgroup part falls outside the input
/// window (or on an uncolored cell) is an error, not a gap, so that the
/// output is total and every check against it means what it says. Choose
/// the input radius at least the output radius plus the longest coset
/// representative.
pub fn periodic_right_lift(
    x: &BallConfig,
    e: &Embedding,
    out_ball: Arc<Ball>,
) -> Result<BallConfig, ExtensionError> {
    let table = e
        .table()
        .ok_or_else(|| unsupported("periodic right lift needs a coset table"))?;
    let model = e.supergroup();
    if out_ball.model().describe() != model.describe() {
        return Err(unsupported("output ball is not over the embedding's supergroup"));
    }
    let sub_gens = x.ball().model().alphabet().to_vec();
    let mut out = BallConfig::empty(Arc::clone(&out_ball));
    for n in 0..out_ball.len() {
        let g = out_ball.element(n);
        let (h, i) = coset_decompose(table, model.as_ref(), g)?;
        if let Some(gen) = h.first_gen_outside(&sub_gens) {
            return Err(ExtensionError::DecompositionFailure {
                element: g.clone(),
                msg: format!("subgroup part `{h}` does not spell over the subgroup letters (`{gen}` appears)"),
            });
        }
        let j = x.ball().find(&h)?.ok_or_else(|| ExtensionError::DecompositionFailure {
            element: g.clone(),
            msg: format!(
                "subgroup part `{h}` is outside the radius-{} input window",
                x.ball().radius()
            ),
        })?;
        let color = x.color(j).ok_or_else(|| ExtensionError::DecompositionFailure {
            element: g.clone(),
            msg: format!("subgroup part `{h}` is uncolored in the input"),
        })?;
        out.set(n, ProductLetter::new(color, i).to_string());
    }
    Ok(out)
}

/// Exact form of the periodic right lift: from a configuration over the
/// cosets of `K ≤ H`, the lifted configuration over the cosets of `K` in
/// the supergroup. Cosets are pairs (coset of `K` in `H`, coset of `H` in
/// `G`); a letter moves the second coordinate through the embedding's table
/// and the first by the subgroup element `g_i · s · g_{i'}^{-1}`.
///
/// Requires the subgroup table's letters to be supergroup letters (true for
/// all the bundled models, where a subgroup is generated by a subset of the
/// ambient alphabet), so the connecting elements can be traced.
pub fn periodic_right_lift_quotient(
    x: &QuotientConfig,
    e: &Embedding,
) -> Result<QuotientConfig, ExtensionError> {
    let et = e
        .table()
        .ok_or_else(|| unsupported("periodic right lift needs a coset table"))?;
    let model = e.supergroup();
    let tk = x.table();
    for g in tk.generators() {
        if !model.alphabet().contains(g) {
            return Err(unsupported(format!(
                "subgroup table letter `{g}` is not a supergroup generator"
            )));
        }
        if et.trace(1, &Word::from_gen(g))? != 1 {
            return Err(unsupported(format!(
                "subgroup table letter `{g}` does not fix coset 1 of the embedding"
            )));
        }
    }
    let k = et.size();
    let m = tk.size();
    let generators = et.generators().to_vec();
    let letters: Vec<Letter> = generators
        .iter()
        .flat_map(|g| {
            [
                Letter { gen: g.clone(), sign: Sign::Pos },
                Letter { gen: g.clone(), sign: Sign::Neg },
            ]
        })
        .collect();

    // For each (embedding coset, letter): the target coset and the
    // connecting subgroup element rewritten into a subgroup-letter word.
    let mut moves: Vec<Vec<(usize, Word)>> = Vec::with_capacity(k);
    for i in 1..=k {
        let mut row = Vec::with_capacity(letters.len());
        for l in &letters {
            let i2 = et.act(i, l)?;
            let conn = et
                .representative(i)
                .concat(&Word::from_letter(l.clone()))
                .concat(&et.representative(i2).inverse());
            let h = model.normal_form(&conn)?;
            if let Some(gen) = h.first_gen_outside(tk.generators()) {
                return Err(ExtensionError::DecompositionFailure {
                    element: conn,
                    msg: format!(
                        "connecting element `{h}` does not spell over the subgroup letters (`{gen}` appears)"
                    ),
                });
            }
            row.push((i2, h));
        }
        moves.push(row);
    }

    let idx = |c: usize, i: usize| (c - 1) * k + (i - 1) + 1;
    let mut representatives = Vec::with_capacity(m * k);
    let mut action = Vec::with_capacity(m * k);
    let mut colors = Vec::with_capacity(m * k);
    for c in 1..=m {
        for i in 1..=k {
            representatives.push(tk.representative(c).concat(et.representative(i)));
            colors.push(ProductLetter::new(x.color(c), i).to_string());
            let mut row = Vec::with_capacity(letters.len());
            for (col, _) in letters.iter().enumerate() {
                let (i2, h) = &moves[i - 1][col];
                row.push(idx(tk.trace(c, h)?, *i2));
            }
            action.push(row);
        }
    }
    Ok(QuotientConfig::new(
        CosetTable::from_parts(generators, representatives, action),
        colors,
    )?)
}

/// The coset restriction `x(h) := π₁(y(h·g_i))`: reading one coset copy of
/// the subgroup out of a product-alphabet configuration. Cells whose image
/// leaves `y`'s window, or is uncolored, stay uncolored; a color that is
/// not a product letter is an error.
pub fn coset_restriction(
    y: &BallConfig,
    e: &Embedding,
    i: usize,
    sub_ball: Arc<Ball>,
) -> Result<BallConfig, ExtensionError> {
    let table = e
        .table()
        .ok_or_else(|| unsupported("coset restriction needs a coset table"))?;
    if i == 0 || i > table.size() {
        return Err(unsupported(format!(
            "coset index {i} out of range 1..={}",
            table.size()
        )));
    }
    for g in sub_ball.model().alphabet() {
        if !e.supergroup().alphabet().contains(g) {
            return Err(unsupported(format!(
                "subgroup ball letter `{g}` is not a supergroup generator"
            )));
        }
    }
    let g_i = table.representative(i);
    let mut out = BallConfig::empty(Arc::clone(&sub_ball));
    for n in 0..sub_ball.len() {
        let site = sub_ball.element(n).concat(g_i);
        if let Some(s) = y.ball().find(&site)? {
            if let Some(color) = y.color(s) {
                out.set(n, ProductLetter::parse(color)?.base);
            }
        }
    }
    Ok(out)
}

/// The transversal lift for a free-by-cyclic group: writing every element
/// uniquely as `t^i · h` with `h` in the free kernel, `x^↑(t^i·h) := x(h)`.
/// The `t`-shift fixes the lift on overlaps. Cells whose kernel part falls
/// outside the input window stay uncolored.
pub fn cyclic_lift(
    x: &BallConfig,
    out_ball: Arc<Ball>,
    transversal: &Generator,
) -> Result<BallConfig, ExtensionError> {
    if !out_ball.model().alphabet().contains(transversal) {
        return Err(unsupported(format!(
            "`{transversal}` is not a generator of the output model"
        )));
    }
    let mut out = BallConfig::empty(Arc::clone(&out_ball));
    for n in 0..out_ball.len() {
        let letters = out_ball.element(n).letters();
        let split = letters.iter().position(|l| l.gen != *transversal).unwrap_or(letters.len());
        if letters[split..].iter().any(|l| l.gen == *transversal) {
            return Err(ExtensionError::DecompositionFailure {
                element: out_ball.element(n).clone(),
                msg: format!(
                    "normal form is not `{transversal}`-prefix · kernel-part"
                ),
            });
        }
        let h = Word::from_letters(letters[split..].to_vec());
        if let Some(j) = x.ball().find(&h)? {
            if let Some(color) = x.color(j) {
                out.set(n, color);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::extend::right_extension;
    use super::super::test_support::*;
    use super::*;
    use crate::groups::models::{FreeByCyclicModel, FreeGroupModel};
    use crate::groups::{build_ball, todd_coxeter, DynModel};
    use crate::sft::{
        expand_quotient, quotient_stabilizes, quotient_violations, shift, violations,
    };

    /// Index-2 subgroup ⟨a², b⟩ of Z².
    fn half_plane_table() -> CosetTable {
        let p = "< a b | a b a^-1 b^-1 >".parse().unwrap();
        todd_coxeter(&p, &[w("a^2"), w("b")], 50).unwrap()
    }

    fn plane_ball(radius: usize) -> Arc<Ball> {
        Arc::new(build_ball(plane(), &[g("a"), g("b")], radius).unwrap())
    }

    fn flip_ball(radius: usize) -> Arc<Ball> {
        Arc::new(build_ball(plane_with_flip(), &[g("a"), g("b"), g("z")], radius).unwrap())
    }

    /// Color = parity of the a-exponent.
    fn parity_coloring(ball: &Arc<Ball>) -> BallConfig {
        let mut c = BallConfig::empty(Arc::clone(ball));
        for i in 0..ball.len() {
            let n = ball.element(i).exponent_sum(&g("a"));
            c.set(i, if n.rem_euclid(2) == 0 { "0" } else { "1" });
        }
        c
    }

    fn constant_coloring(ball: &Arc<Ball>, letter: &str) -> BallConfig {
        let mut c = BallConfig::empty(Arc::clone(ball));
        for i in 0..ball.len() {
            c.set(i, letter);
        }
        c
    }

    fn agree_on_overlap(x: &BallConfig, y: &BallConfig) -> bool {
        (0..x.len()).all(|i| match (x.color(i), y.color(i)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        })
    }

    #[test]
    fn product_table_is_a_valid_action() {
        let t = product_table(&half_plane_table(), &g("z"), 2).unwrap();
        assert_eq!(t.size(), 4);
        // ⟨a², b⟩ sits inside Z² × Z/2 with index 4.
        t.validate(&plane_with_flip_presentation(), &[w("a^2"), w("b")]).unwrap();
        assert_eq!(t.representative(1), &Word::identity());
        assert_eq!(t.representative(2), &w("z"));
        assert_eq!(t.representative(3), &w("a"));
        assert_eq!(t.representative(4), &w("a z"));
    }

    #[test]
    fn product_table_rejects_degenerate_input() {
        assert!(product_table(&half_plane_table(), &g("z"), 0).is_err());
        assert!(product_table(&half_plane_table(), &g("a"), 2).is_err());
    }

    #[test]
    fn product_lift_reads_the_base_projection() {
        let x = parity_coloring(&plane_ball(3));
        let lifted = product_lift(&x, flip_ball(2), &g("z")).unwrap();
        assert!(lifted.is_total(), "radius-2 projections stay in the radius-3 window");
        for i in 0..lifted.len() {
            let n = lifted.ball().element(i).exponent_sum(&g("a"));
            let expect = if n.rem_euclid(2) == 0 { "0" } else { "1" };
            assert_eq!(lifted.color(i), Some(expect));
        }
        // The z-shift fixes the lift on the overlap.
        let shifted = shift(&w("z"), &lifted).unwrap();
        assert!(agree_on_overlap(&shifted, &lifted));
        // Constant in, constant out.
        let flat = product_lift(&constant_coloring(&plane_ball(3), "0"), flip_ball(2), &g("z"))
            .unwrap();
        assert!(flat.is_total());
        assert!((0..flat.len()).all(|i| flat.color(i) == Some("0")));
    }

    #[test]
    fn product_lift_quotient_is_fixed_by_the_cyclic_shift_exactly() {
        let x = QuotientConfig::new(half_plane_table(), vec!["0".into(), "1".into()]).unwrap();
        let lifted = product_lift_quotient(&x, &g("z"), 2).unwrap();
        assert_eq!(lifted.colors(), &["0", "0", "1", "1"].map(String::from));
        // (1_H, i): exact fixpoints for every power of z.
        assert!(quotient_stabilizes(&lifted, &w("z")).unwrap());
        assert!(quotient_stabilizes(&lifted, &w("z^2")).unwrap());
        // The subgroup itself still stabilizes...
        assert!(quotient_stabilizes(&lifted, &w("a^2")).unwrap());
        assert!(quotient_stabilizes(&lifted, &w("b")).unwrap());
        // ...and a alone still swaps the two halves.
        assert!(!quotient_stabilizes(&lifted, &w("a")).unwrap());
        assert!(!quotient_stabilizes(&lifted, &w("a z")).unwrap());
    }

    #[test]
    fn product_lift_quotient_expands_to_the_windowed_lift() {
        let x = QuotientConfig::new(half_plane_table(), vec!["0".into(), "1".into()]).unwrap();
        let exact = product_lift_quotient(&x, &g("z"), 2).unwrap();
        let via_quotient = expand_quotient(&exact, flip_ball(2)).unwrap();
        let x_window = expand_quotient(&x, plane_ball(3)).unwrap();
        let via_window = product_lift(&x_window, flip_ball(2), &g("z")).unwrap();
        for i in 0..via_quotient.len() {
            assert_eq!(via_quotient.color(i), via_window.color(i));
        }
    }

    #[test]
    fn periodic_right_lift_quotient_of_all_zeros_is_admissible_and_a_periodic() {
        // The all-zeros golden-mean point, as the one-coset quotient config
        // over H = Z², lifted along H ≤ Z² × Z/2.
        let e = plane_embedding();
        let x = QuotientConfig::new(
            CosetTable::index_one(vec![g("a"), g("b")]),
            vec!["0".into()],
        )
        .unwrap();
        let y = periodic_right_lift_quotient(&x, &e).unwrap();
        assert_eq!(y.colors(), &["0@1", "0@2"].map(String::from));
        y.table()
            .validate(&plane_with_flip_presentation(), &[w("a"), w("b")])
            .unwrap();

        let rx = right_extension(&golden_mean(), &e).unwrap();
        assert!(quotient_violations(rx.sft(), &y).unwrap().is_empty());
        // h₀ = a is an exact nontrivial period of the lift.
        assert!(quotient_stabilizes(&y, &w("a")).unwrap());
        assert!(quotient_stabilizes(&y, &w("b")).unwrap());
        // z moves coset 1 to coset 2, whose colors differ in the tag.
        assert!(!quotient_stabilizes(&y, &w("z")).unwrap());
    }

    #[test]
    fn periodic_right_lift_quotient_composes_subgroup_tables() {
        // K = ⟨a², b⟩ of index 2 in H, H of index 2 in G: index 4 in G.
        let e = plane_embedding();
        let x = QuotientConfig::new(half_plane_table(), vec!["0".into(), "1".into()]).unwrap();
        let y = periodic_right_lift_quotient(&x, &e).unwrap();
        assert_eq!(y.table().size(), 4);
        y.table()
            .validate(&plane_with_flip_presentation(), &[w("a^2"), w("b")])
            .unwrap();
        assert_eq!(y.colors(), &["0@1", "0@2", "1@1", "1@2"].map(String::from));
        // K-periods transfer exactly.
        assert!(quotient_stabilizes(&y, &w("a^2")).unwrap());
        assert!(quotient_stabilizes(&y, &w("b")).unwrap());
        assert!(!quotient_stabilizes(&y, &w("a")).unwrap());
    }

    #[test]
    fn periodic_right_lift_matches_its_exact_form_on_a_window() {
        let e = plane_embedding();
        let x_exact = QuotientConfig::new(
            CosetTable::index_one(vec![g("a"), g("b")]),
            vec!["0".into()],
        )
        .unwrap();
        let y_exact = periodic_right_lift_quotient(&x_exact, &e).unwrap();

        let x = constant_coloring(&plane_ball(3), "0");
        let y = periodic_right_lift(&x, &e, flip_ball(2)).unwrap();
        assert!(y.is_total());
        let y_expanded = expand_quotient(&y_exact, flip_ball(2)).unwrap();
        for i in 0..y.len() {
            assert_eq!(y.color(i), y_expanded.color(i));
        }
        // No violations of the right extension in the window.
        let rx = right_extension(&golden_mean(), &e).unwrap();
        assert!(violations(rx.sft(), &y).unwrap().is_empty());
    }

    #[test]
    fn periodic_right_lift_is_strict_about_its_window() {
        let e = plane_embedding();
        let x = constant_coloring(&plane_ball(1), "0");
        let err = periodic_right_lift(&x, &e, flip_ball(3)).unwrap_err();
        assert!(
            matches!(err, ExtensionError::DecompositionFailure { .. }),
            "{err}"
        );
    }

    #[test]
    fn coset_restriction_round_trips_the_lift() {
        let e = plane_embedding();
        let x = parity_coloring(&plane_ball(4));
        let y = periodic_right_lift(&x, &e, flip_ball(3)).unwrap();
        for i in 1..=2 {
            let back = coset_restriction(&y, &e, i, plane_ball(2)).unwrap();
            assert!(back.is_total());
            for n in 0..back.len() {
                let reference = x.color(x.ball().find(back.ball().element(n)).unwrap().unwrap());
                assert_eq!(back.color(n), reference, "coset {i}");
            }
        }
        assert!(coset_restriction(&y, &e, 3, plane_ball(2)).is_err());
    }

    #[test]
    fn coset_restriction_rejects_non_product_colors() {
        let e = plane_embedding();
        let y = constant_coloring(&flip_ball(2), "0");
        let err = coset_restriction(&y, &e, 1, plane_ball(1)).unwrap_err();
        assert!(matches!(err, ExtensionError::AlphabetMismatch { .. }));
    }

    #[test]
    fn coset_restriction_is_shift_equivariant_on_overlaps() {
        // Restricting h·y agrees with h·(restriction of y) where both are
        // defined, for h in the subgroup.
        let e = plane_embedding();
        let x = parity_coloring(&plane_ball(4));
        let y = periodic_right_lift(&x, &e, flip_ball(3)).unwrap();
        for h in ["a", "b", "a^-1 b"] {
            let h = w(h);
            let lhs = coset_restriction(&shift(&h, &y).unwrap(), &e, 2, plane_ball(2)).unwrap();
            let rhs = shift(&h, &coset_restriction(&y, &e, 2, plane_ball(2)).unwrap()).unwrap();
            assert!(agree_on_overlap(&lhs, &rhs), "h = {h}");
        }
    }

    #[test]
    fn cyclic_lift_on_the_plane_lifts_columns() {
        // Z² as F_1 ⋊ Z with trivial action: transversal a, kernel ⟨b⟩.
        let kernel: DynModel = Arc::new(FreeGroupModel::new(vec![g("b")]));
        let id_rule = [(g("b"), w("b"))].into_iter().collect();
        let model: DynModel = Arc::new(
            FreeByCyclicModel::new(g("a"), vec![g("b")], id_rule, [(g("b"), w("b"))].into_iter().collect())
                .unwrap(),
        );
        let kernel_ball = Arc::new(build_ball(kernel, &[g("b")], 3).unwrap());
        let x = {
            let mut c = BallConfig::empty(Arc::clone(&kernel_ball));
            for i in 0..kernel_ball.len() {
                let n = kernel_ball.element(i).exponent_sum(&g("b"));
                c.set(i, if n.rem_euclid(2) == 0 { "0" } else { "1" });
            }
            c
        };
        let out_ball = Arc::new(build_ball(model, &[g("a"), g("b")], 3).unwrap());
        let lifted = cyclic_lift(&x, Arc::clone(&out_ball), &g("a")).unwrap();
        assert!(lifted.is_total());
        for i in 0..lifted.len() {
            let n = out_ball.element(i).exponent_sum(&g("b"));
            let expect = if n.rem_euclid(2) == 0 { "0" } else { "1" };
            assert_eq!(lifted.color(i), Some(expect), "column coloring is constant in a");
        }
        let shifted = shift(&w("a"), &lifted).unwrap();
        assert!(agree_on_overlap(&shifted, &lifted));
    }

    #[test]
    fn cyclic_lift_on_the_klein_bottle_is_fixed_by_the_transversal() {
        // ⟨b, a | b a b^-1 a⟩: b the transversal, conjugation inverts a.
        let model: DynModel = Arc::new(FreeByCyclicModel::klein_bottle(g("b"), g("a")));
        let kernel: DynModel = Arc::new(FreeGroupModel::new(vec![g("a")]));
        let kernel_ball = Arc::new(build_ball(kernel, &[g("a")], 4).unwrap());
        let x = {
            let mut c = BallConfig::empty(Arc::clone(&kernel_ball));
            for i in 0..kernel_ball.len() {
                let n = kernel_ball.element(i).exponent_sum(&g("a"));
                c.set(i, if n.rem_euclid(2) == 0 { "0" } else { "1" });
            }
            c
        };
        let out_ball = Arc::new(build_ball(model, &[g("a"), g("b")], 3).unwrap());
        let lifted = cyclic_lift(&x, Arc::clone(&out_ball), &g("b")).unwrap();
        assert!(lifted.is_total());
        for i in 0..out_ball.len() {
            // Normal forms are b^i · a^j; the kernel part is the a-tail.
            let n = out_ball.element(i).exponent_sum(&g("a"));
            let expect = if n.rem_euclid(2) == 0 { "0" } else { "1" };
            assert_eq!(lifted.color(i), Some(expect));
        }
        let shifted = shift(&w("b"), &lifted).unwrap();
        assert!(agree_on_overlap(&shifted, &lifted));
        // The kernel direction does move the parity coloring.
        let moved = shift(&w("a"), &lifted).unwrap();
        assert!(!agree_on_overlap(&moved, &lifted));
    }
}
