//! The two extension constructions.

use std::collections::BTreeMap;

use super::{product_alphabet, unsupported, Embedding, ExtensionError, ProductLetter};
use crate::groups::conjugate_generator;
use crate::sft::{Pattern, Sft, SftError};
use crate::words::{Generator, Word};

/// Positional map from the subgroup model's generators to their images in
/// the supergroup.
fn image_map(x: &Sft, e: &Embedding) -> Result<BTreeMap<Generator, Word>, ExtensionError> {
    let gens = x.model().alphabet();
    if gens.len() != e.subgroup_gens().len() {
        return Err(unsupported(format!(
            "subgroup model has {} generators but the embedding lists {} images",
            gens.len(),
            e.subgroup_gens().len()
        )));
    }
    Ok(gens.iter().cloned().zip(e.subgroup_gens().iter().cloned()).collect())
}

fn map_support(
    support: &[Word],
    map: &BTreeMap<Generator, Word>,
) -> Result<Vec<Word>, ExtensionError> {
    let keys: Vec<Generator> = map.keys().cloned().collect();
    let mut out = Vec::with_capacity(support.len());
    for q in support {
        if let Some(gen) = q.first_gen_outside(&keys) {
            return Err(ExtensionError::SupportOutsideSubgroup {
                word: q.clone(),
                gen: gen.clone(),
            });
        }
        out.push(q.substitute(map)?);
    }
    Ok(out)
}

/// Re-raise a collapsed support as the extension-level diagnostic: supports
/// are subsets of the group, and a construction that merges two points has
/// hit a model bug or a non-embedding — never silently merge colors.
fn lift_duplicate(err: SftError) -> ExtensionError {
    match err {
        SftError::DuplicateSupportPoint { first, second } => {
            ExtensionError::DuplicateSupportPoint { first, second }
        }
        other => ExtensionError::Sft(other),
    }
}

/// The free extension: same alphabet, every forbidden pattern re-read over
/// the supergroup with its support words mapped through the embedding. The
/// extended subshift constrains each left coset copy of the subgroup, and
/// the pattern count is preserved exactly.
pub fn free_extension(x: &Sft, e: &Embedding) -> Result<Sft, ExtensionError> {
    let map = image_map(x, e)?;
    let mut forbidden = Vec::with_capacity(x.forbidden().len());
    for p in x.forbidden() {
        let support = map_support(p.support(), &map)?;
        let pattern = Pattern::new(e.supergroup().as_ref(), support, p.colors().to_vec())
            .map_err(lift_duplicate)?;
        forbidden.push(pattern);
    }
    Sft::new(e.supergroup().clone(), x.alphabet().clone(), forbidden).map_err(lift_duplicate)
}

/// A right extension bundled with its construction data, which the coset
/// propagation and the reports need alongside the bare subshift.
#[derive(Clone, Debug)]
pub struct RightExtension {
    sft: Sft,
    embedding: Embedding,
    type1_count: usize,
    type2_count: usize,
}

impl RightExtension {
    pub fn sft(&self) -> &Sft {
        &self.sft
    }

    pub fn into_sft(self) -> Sft {
        self.sft
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Index of the subgroup (the `k` of the product alphabet).
    pub fn k(&self) -> usize {
        self.embedding.index().expect("right extension always has a table")
    }

    /// Count of adjacency patterns (two-cell supports `{1, a_i}` forcing
    /// coset labels to agree along conjugated generators).
    pub fn type1_count(&self) -> usize {
        self.type1_count
    }

    /// Count of conjugated copies of the original forbidden patterns.
    pub fn type2_count(&self) -> usize {
        self.type2_count
    }

    /// Provenance comment lines for serialized output.
    pub fn provenance_comments(&self) -> Vec<String> {
        let e = &self.embedding;
        let gens: Vec<String> = e.subgroup_gens().iter().map(|w| w.to_string()).collect();
        let reps: Vec<String> = e
            .table()
            .expect("right extension always has a table")
            .representatives()
            .iter()
            .map(|w| w.to_string())
            .collect();
        vec![
            format!(
                "# right extension: k = {}, {} adjacency patterns, {} conjugated patterns",
                self.k(),
                self.type1_count,
                self.type2_count
            ),
            format!("# subgroup generators: {}", gens.join(", ")),
            format!("# coset representatives: {}", reps.join(", ")),
        ]
    }
}

/// The right extension over alphabet `B = A × [k]`.
///
/// Forbidden patterns, in fixed order:
///
/// 1. for each subgroup generator `a`, colors `c1, c2 ∈ A`, coset `i`, and
///    `j ≠ i`: support `{1, a_i}` with `a_i = g_i^{-1}·a·g_i`, colored
///    `(c1, i)` at `1` and `(c2, j)` at `a_i` — exactly `|S|·|A|²·k·(k-1)`
///    of these;
/// 2. for each original forbidden pattern and each coset `i`: the support
///    conjugated by `g_i`, with every color tagged `@i` — exactly `|F|·k`.
///
/// Loop order is lexicographic in `(a, c1, c2, i, j)` and in
/// `(pattern, i)`, so equal inputs give byte-identical output.
pub fn right_extension(x: &Sft, e: &Embedding) -> Result<RightExtension, ExtensionError> {
    let table = e
        .table()
        .ok_or_else(|| unsupported("right extension needs a coset table in the embedding"))?;
    let k = table.size();
    let model = e.supergroup();
    let map = image_map(x, e)?;
    let alphabet = product_alphabet(x.alphabet(), k)?;

    let mut forbidden = Vec::new();
    for a in e.subgroup_gens() {
        for c1 in x.alphabet().letters() {
            for c2 in x.alphabet().letters() {
                for i in 1..=k {
                    let a_i = conjugate_generator(table, a, i);
                    for j in (1..=k).filter(|j| *j != i) {
                        let pattern = Pattern::new(
                            model.as_ref(),
                            vec![Word::identity(), a_i.clone()],
                            vec![
                                ProductLetter::new(c1, i).to_string(),
                                ProductLetter::new(c2, j).to_string(),
                            ],
                        )
                        .map_err(lift_duplicate)?;
                        forbidden.push(pattern);
                    }
                }
            }
        }
    }
    let type1_count = forbidden.len();

    for p in x.forbidden() {
        let mapped = map_support(p.support(), &map)?;
        for i in 1..=k {
            let support: Vec<Word> =
                mapped.iter().map(|q| conjugate_generator(table, q, i)).collect();
            let colors: Vec<String> =
                p.colors().iter().map(|c| ProductLetter::new(c, i).to_string()).collect();
            let pattern =
                Pattern::new(model.as_ref(), support, colors).map_err(lift_duplicate)?;
            forbidden.push(pattern);
        }
    }
    let type2_count = forbidden.len() - type1_count;

    let sft = Sft::new(model.clone(), alphabet, forbidden).map_err(lift_duplicate)?;
    Ok(RightExtension { sft, embedding: e.clone(), type1_count, type2_count })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::test_support::*;
    use super::*;
    use crate::groups::models::{DirectWithCyclicModel, FreeAbelianModel, FreeGroupModel};
    use crate::groups::{CosetTable, DynModel};
    use crate::sft::Alphabet;

    fn free_model(names: &[&str]) -> DynModel {
        Arc::new(FreeGroupModel::new(names.iter().map(|n| g(n)).collect()))
    }

    #[test]
    fn identity_embedding_reproduces_the_input() {
        let x = golden_mean();
        let e = Embedding::new(plane(), vec![w("a"), w("b")], None).unwrap();
        let y = free_extension(&x, &e).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn free_extension_carries_patterns_verbatim_into_a_bigger_free_group() {
        let f2 = free_model(&["a", "b"]);
        let p = Pattern::new(
            f2.as_ref(),
            vec![w("a"), w("b a^-1")],
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let x = Sft::new(f2, Alphabet::of(&["x", "y"]).unwrap(), vec![p]).unwrap();
        let e = Embedding::new(free_model(&["a", "b", "c"]), vec![w("a"), w("b")], None).unwrap();
        let y = free_extension(&x, &e).unwrap();
        assert_eq!(y.forbidden().len(), x.forbidden().len());
        assert_eq!(y.forbidden()[0].support(), x.forbidden()[0].support());
        assert_eq!(y.alphabet(), x.alphabet());
        assert_eq!(y.model().describe(), "free(a, b, c)");
    }

    #[test]
    fn free_extension_substitutes_generator_images() {
        // Z² = ⟨a, b⟩ embedded in F2 = ⟨s, t⟩ via a ↦ s², b ↦ t: supports
        // are rewritten through the images.
        let x = golden_mean();
        let e = Embedding::new(free_model(&["s", "t"]), vec![w("s^2"), w("t")], None).unwrap();
        let y = free_extension(&x, &e).unwrap();
        assert_eq!(y.forbidden()[0].support(), &[w("1"), w("s^2")]);
        assert_eq!(y.forbidden()[1].support(), &[w("1"), w("t")]);
    }

    #[test]
    fn free_extension_of_the_full_shift_is_the_full_shift() {
        let x = Sft::new(plane(), Alphabet::of(&["x"]).unwrap(), vec![]).unwrap();
        let e = plane_embedding();
        let y = free_extension(&x, &e).unwrap();
        assert!(y.forbidden().is_empty());
        assert_eq!(y.model().describe(), "direct(abelian(a, b), z, 2)");
    }

    #[test]
    fn free_extension_reports_collapsed_supports() {
        // Map the generator of Z onto the order-2 element z: the support
        // {1, a²} collapses to a single point of Z² × Z/2.
        let z_model: DynModel = Arc::new(FreeAbelianModel::new(vec![g("a")]));
        let p = Pattern::new(
            z_model.as_ref(),
            vec![Word::identity(), w("a^2")],
            vec!["x".into(), "x".into()],
        )
        .unwrap();
        let x = Sft::new(z_model, Alphabet::of(&["x"]).unwrap(), vec![p]).unwrap();
        let e = Embedding::new(plane_with_flip(), vec![w("z")], None).unwrap();
        let err = free_extension(&x, &e).unwrap_err();
        assert!(matches!(err, ExtensionError::DuplicateSupportPoint { .. }), "{err}");
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let x = golden_mean();
        let e = Embedding::new(plane_with_flip(), vec![w("a")], None).unwrap();
        let err = free_extension(&x, &e).unwrap_err();
        assert!(err.to_string().contains("2 generators but the embedding lists 1"), "{err}");
    }

    #[test]
    fn right_extension_needs_a_table() {
        let x = golden_mean();
        let e = Embedding::new(plane_with_flip(), vec![w("a"), w("b")], None).unwrap();
        assert!(right_extension(&x, &e).is_err());
    }

    #[test]
    fn right_extension_counts_match_the_formulas() {
        let x = golden_mean();
        let rx = right_extension(&x, &plane_embedding()).unwrap();
        // |S|·|A|²·k·(k-1) = 2·4·2·1 and |F|·k = 2·2.
        assert_eq!(rx.type1_count(), 16);
        assert_eq!(rx.type2_count(), 4);
        assert_eq!(rx.sft().forbidden().len(), 20);
        assert_eq!(rx.k(), 2);
        assert_eq!(
            rx.sft().alphabet().letters(),
            &["0@1", "0@2", "1@1", "1@2"].map(String::from)
        );
    }

    #[test]
    fn central_conjugation_leaves_type_two_supports_alone() {
        // z is central, so g_i^{-1}·q·g_i = q: the conjugated copies keep
        // the original supports, only the color tags change.
        let x = golden_mean();
        let rx = right_extension(&x, &plane_embedding()).unwrap();
        let type2 = &rx.sft().forbidden()[rx.type1_count()..];
        assert_eq!(type2.len(), 4);
        for (n, p) in type2.iter().enumerate() {
            let original = &x.forbidden()[n / 2];
            let i = n % 2 + 1;
            let expected: Vec<Word> = original
                .support()
                .iter()
                .map(|q| rx.embedding().supergroup().normal_form(q).unwrap())
                .collect();
            let got: Vec<Word> = p
                .support()
                .iter()
                .map(|q| rx.embedding().supergroup().normal_form(q).unwrap())
                .collect();
            assert_eq!(got, expected);
            for (c, c0) in p.colors().iter().zip(original.colors()) {
                assert_eq!(c, &ProductLetter::new(c0, i).to_string());
            }
        }
    }

    #[test]
    fn index_one_right_extension_is_a_letter_renaming() {
        let x = golden_mean();
        let table = CosetTable::index_one(vec![g("a"), g("b")]);
        let e = Embedding::new(plane(), vec![w("a"), w("b")], Some(table)).unwrap();
        let rx = right_extension(&x, &e).unwrap();
        assert_eq!(rx.type1_count(), 0, "no j ≠ i exists at k = 1");
        assert_eq!(rx.type2_count(), x.forbidden().len());
        assert_eq!(rx.sft().alphabet().letters(), &["0@1", "1@1"].map(String::from));
        for (p, p0) in rx.sft().forbidden().iter().zip(x.forbidden()) {
            assert_eq!(p.support(), p0.support());
            let renamed: Vec<String> =
                p0.colors().iter().map(|c| format!("{c}@1")).collect();
            assert_eq!(p.colors(), &renamed[..]);
        }
    }

    #[test]
    fn type_one_pattern_layout_is_lexicographic() {
        let x = golden_mean();
        let rx = right_extension(&x, &plane_embedding()).unwrap();
        let first = &rx.sft().forbidden()[0];
        // (a, c1=0, c2=0, i=1, j=2): support {1, a}, colors 0@1, 0@2.
        assert_eq!(first.support(), &[w("1"), w("a")]);
        assert_eq!(first.colors(), &["0@1".to_string(), "0@2".to_string()]);
        // Conjugation by the representative z keeps a but flips the tag.
        let second = &rx.sft().forbidden()[1];
        assert_eq!(
            rx.embedding().supergroup().normal_form(&second.support()[1]).unwrap(),
            w("a")
        );
        assert_eq!(second.colors(), &["0@2".to_string(), "0@1".to_string()]);
    }

    #[test]
    fn right_extension_rejects_collapsing_conjugates() {
        // A subgroup generator of order 2 collapses the {1, a_i} support.
        let base: DynModel = Arc::new(FreeAbelianModel::new(vec![g("a")]));
        let model: DynModel =
            Arc::new(DirectWithCyclicModel::new(base, g("z"), 2).unwrap());
        // ⟨a, z²⟩ = ⟨a⟩ has index 2; declare z² as a "generator" anyway:
        // its normal form is trivial, which the embedding refuses.
        let err = Embedding::new(model.clone(), vec![w("a"), w("z^2")], None).unwrap_err();
        assert!(err.to_string().contains("trivial"));
        // With order-2 z itself inside the subgroup the support {1, z_i}
        // survives, but a doubled word z·z collapses against 1.
        let x_model: DynModel = Arc::new(FreeGroupModel::new(vec![g("c")]));
        let x = Sft::new(
            x_model.clone(),
            Alphabet::of(&["x"]).unwrap(),
            vec![Pattern::new(
                x_model.as_ref(),
                vec![Word::identity(), w("c^2")],
                vec!["x".into(), "x".into()],
            )
            .unwrap()],
        )
        .unwrap();
        let table = CosetTable::index_one(vec![g("a"), g("z")]);
        let e = Embedding::new(model, vec![w("z")], Some(table)).unwrap();
        let err = right_extension(&x, &e).unwrap_err();
        assert!(matches!(err, ExtensionError::DuplicateSupportPoint { .. }), "{err}");
    }

    #[test]
    fn provenance_comments_describe_the_construction() {
        let rx = right_extension(&golden_mean(), &plane_embedding()).unwrap();
        let lines = rx.provenance_comments();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].contains("k = 2") && lines[0].contains("16"), "{}", lines[0]);
        assert_eq!(lines[1], "# subgroup generators: a, b");
        assert_eq!(lines[2], "# coset representatives: 1, z");
    }
}
