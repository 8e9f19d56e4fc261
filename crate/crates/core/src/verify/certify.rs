//! The end-to-end certificate pipeline for one-relator presentations with
//! at least three generators: rewrite to a zero-exponent witness (or a free
//! product splitting), re-check everything checkable at desk scale, and
//! assemble a report that keeps machine-checked facts, literature
//! citations, and budgeted search evidence strictly apart.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::citations::Citation;
use crate::extensions::free_extension;
use crate::extensions::Embedding;
use crate::groups::models::FreeGroupModel;
use crate::groups::{build_ball, exponent_hom_check, CosetTable, DehnModel, DynModel};
use crate::presentations::{analyze_one_relator, replay_log, NonRigidityCertificate, Presentation};
use crate::sft::Sft;
use crate::words::{Generator, Letter, Sign, Word};

use super::search::{PeriodicOutcome, TileOutcome};
use super::{search_strongly_periodic, stage_error, tile_ball, VerifyError};

/// A fact this run re-derived mechanically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvedFact {
    pub name: String,
    pub detail: String,
}

/// A budgeted search outcome: suggestive, never conclusive on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub name: String,
    pub outcome: String,
    pub parameters: String,
}

/// The assembled certificate. `Display` renders the three-section report;
/// the sections never mix: PROVED holds only machine-rechecked identities,
/// CITED holds classical results with their statements quoted, EVIDENCE
/// holds search outcomes with their radii and budgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub conclusion: String,
    pub proved: Vec<ProvedFact>,
    pub cited: Vec<Citation>,
    pub evidence: Vec<Evidence>,
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conclusion: {}", self.conclusion)?;
        writeln!(f, "PROVED")?;
        for p in &self.proved {
            writeln!(f, "  - {}: {}", p.name, p.detail)?;
        }
        writeln!(f, "CITED")?;
        for c in &self.cited {
            writeln!(f, "  - {c}")?;
        }
        writeln!(f, "EVIDENCE")?;
        if self.evidence.is_empty() {
            writeln!(f, "  (none)")?;
        }
        for e in &self.evidence {
            writeln!(f, "  - {}: {} [{}]", e.name, e.outcome, e.parameters)?;
        }
        Ok(())
    }
}

/// Re-derives, by direct computation on words, that `|γ·c^n·γ^{-1}|_c = n`
/// for every freely reduced `γ` with `|γ| ≤ radius` and every `0 < n ≤
/// radius`. Returns the number of conjugates checked.
///
/// When the exponent-sum map at `c` descends to the group, this puts every
/// such conjugate outside the subgroup generated by the other letters
/// (whose elements all have exponent sum 0 at `c`).
pub fn check_conjugate_exponents(
    gens: &[Generator],
    c: &Generator,
    radius: usize,
) -> Result<usize, VerifyError> {
    // Depth-first over reduced γ, growing a shared letter buffer in place;
    // each conjugate is assembled into a reused scratch buffer and reduced
    // once. The grid is quadratic-ish in the ball size, so avoiding a
    // materialized word list is what keeps large radii affordable.
    struct Walk<'a> {
        alphabet: Vec<Letter>,
        c: &'a Generator,
        c_pos: Letter,
        radius: usize,
        gamma: Vec<Letter>,
        scratch: Vec<Letter>,
        checked: usize,
    }
    impl Walk<'_> {
        fn visit(&mut self) -> Result<(), VerifyError> {
            for n in 1..=self.radius as i64 {
                self.scratch.clear();
                self.scratch.extend(self.gamma.iter().cloned());
                self.scratch.extend(std::iter::repeat(self.c_pos.clone()).take(n as usize));
                self.scratch.extend(self.gamma.iter().rev().map(|l| l.inverse()));
                let conjugate = Word::from_letters(self.scratch.drain(..));
                if conjugate.exponent_sum(self.c) != n {
                    let c = self.c;
                    return Err(stage_error(
                        "conjugate exponents",
                        format!(
                            "|γ·{c}^{n}·γ^-1| at `{c}` came out {} for γ = `{}`",
                            conjugate.exponent_sum(c),
                            Word::from_letters(self.gamma.iter().cloned())
                        ),
                    ));
                }
                self.checked += 1;
            }
            if self.gamma.len() == self.radius {
                return Ok(());
            }
            for i in 0..self.alphabet.len() {
                let l = self.alphabet[i].clone();
                if self.gamma.last().map_or(false, |prev| l.is_inverse_of(prev)) {
                    continue;
                }
                self.gamma.push(l);
                self.visit()?;
                self.gamma.pop();
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        alphabet: gens
            .iter()
            .flat_map(|g| [Letter::new(g.clone(), Sign::Pos), Letter::new(g.clone(), Sign::Neg)])
            .collect(),
        c,
        c_pos: Letter::new(c.clone(), Sign::Pos),
        radius,
        gamma: Vec::with_capacity(radius),
        scratch: Vec::with_capacity(3 * radius),
        checked: 0,
    };
    walk.visit()?;
    Ok(walk.checked)
}

/// Picks a word-problem backend for the rewritten ambient group, returning
/// the model, the image of every presentation generator inside it, and a
/// one-line description of the choice.
///
/// Two shapes are handled: presentations passing the C'(1/6) metric
/// small-cancellation check run on Dehn's algorithm; presentations whose
/// relator uses some generator exactly once are free on the remaining
/// generators after eliminating it. Everything else is refused — an honest
/// limitation, reported rather than papered over.
fn ambient_model(
    p: &Presentation,
    keep: &Generator,
) -> Result<(DynModel, BTreeMap<Generator, Word>, String), VerifyError> {
    let identity_images = || {
        p.generators()
            .iter()
            .map(|g| (g.clone(), Word::from_gen(g)))
            .collect::<BTreeMap<_, _>>()
    };
    let dehn_err = match DehnModel::new(p) {
        Ok(m) => {
            let note = "Dehn's algorithm over the C'(1/6) presentation".to_string();
            return Ok((Arc::new(m), identity_images(), note));
        }
        Err(e) => e,
    };
    let r = &p.relators()[0];
    let once = p
        .generators()
        .iter()
        .find(|g| r.letters().iter().filter(|l| l.gen == **g).count() == 1)
        .cloned();
    let Some(eliminated) = once else {
        return Err(stage_error(
            "model selection",
            format!(
                "no decidable backend for the rewritten presentation: \
                 the C'(1/6) check failed ({dehn_err}) and no generator \
                 occurs exactly once in the relator"
            ),
        ));
    };
    if eliminated == *keep {
        // Unreachable: a generator occurring once has exponent sum ±1.
        return Err(stage_error(
            "model selection",
            format!("cannot eliminate the zero-exponent generator `{keep}`"),
        ));
    }
    let pos = r
        .letters()
        .iter()
        .position(|l| l.gen == eliminated)
        .expect("the occurrence was just counted");
    let before = Word::from_letters(r.letters()[..pos].to_vec());
    let after = Word::from_letters(r.letters()[pos + 1..].to_vec());
    // before·e·after = 1 gives e = before⁻¹·after⁻¹; with e inverted in
    // the relator, e = after·before.
    let expression = if r.letters()[pos].sign == Sign::Pos {
        before.inverse().concat(&after.inverse())
    } else {
        after.concat(&before)
    };
    let remaining: Vec<Generator> =
        p.generators().iter().filter(|g| **g != eliminated).cloned().collect();
    let mut images = identity_images();
    images.insert(eliminated.clone(), expression.clone());
    let note = format!(
        "free group on {} after eliminating `{eliminated}` = `{expression}`",
        remaining.iter().map(|g| format!("`{g}`")).collect::<Vec<_>>().join(", ")
    );
    Ok((Arc::new(FreeGroupModel::new(remaining)), images, note))
}

/// Runs the full desk-scale pipeline on a one-relator presentation with at
/// least three generators, every generator occurring in the relator's
/// cyclic reduction.
///
/// The presentation is rewritten until it either splits as a free product
/// (the group has infinitely many ends) or exposes a generator with
/// relator exponent sum zero. On the zero-exponent branch the plug SFT —
/// assumed weakly aperiodic on the free subgroup, on the cited authority —
/// is freely extended to the ambient group, and the report gathers: the
/// replayed rewriting log, the re-checked exponent homomorphism, the exact
/// conjugate exponent identity up to `radius`, a ball tiling, and a
/// strongly periodic search over the supplied quotients.
pub fn certify_one_relator(
    p: &Presentation,
    plug: &Sft,
    quotients: &[CosetTable],
    radius: usize,
    node_budget: usize,
) -> Result<CertificateReport, VerifyError> {
    let cert = analyze_one_relator(p).map_err(|e| stage_error("analyze", e))?;
    match cert {
        NonRigidityCertificate::InfiniteEnds {
            absent_generator, remaining, log, citations, ..
        } => {
            let replayed = replay_log(p, &log).map_err(|e| stage_error("replay", e))?;
            if replayed.relators().len() != 1 {
                return Err(stage_error(
                    "replay",
                    format!("expected one relator after replay, found {}", replayed.relators().len()),
                ));
            }
            let relator = &replayed.relators()[0];
            if relator.contains_gen(&absent_generator) {
                return Err(stage_error(
                    "replay",
                    format!("`{absent_generator}` still occurs in the replayed relator `{relator}`"),
                ));
            }
            if remaining.relators() != replayed.relators() {
                return Err(stage_error(
                    "replay",
                    "the stated free factor does not carry the replayed relator".to_string(),
                ));
            }
            let proved = vec![
                ProvedFact {
                    name: "rewriting log replays".into(),
                    detail: format!(
                        "{} logged steps replay from the input to {replayed}",
                        log.len()
                    ),
                },
                ProvedFact {
                    name: "generator absent from relator".into(),
                    detail: format!(
                        "`{absent_generator}` does not occur in `{relator}`; the group is \
                         the free product of {remaining} with the infinite cyclic group \
                         on `{absent_generator}`"
                    ),
                },
            ];
            Ok(CertificateReport {
                conclusion: "the group has infinitely many ends: it admits a weakly \
                             aperiodic SFT and no strongly aperiodic one"
                    .into(),
                proved,
                cited: citations,
                evidence: vec![],
            })
        }
        NonRigidityCertificate::ZeroExponent {
            presentation: rewritten,
            zero_generator,
            free_subgroup,
            hom,
            log,
            citations,
            ..
        } => {
            let replayed = replay_log(p, &log).map_err(|e| stage_error("replay", e))?;
            if replayed != rewritten {
                return Err(stage_error(
                    "replay",
                    format!("log replays to {replayed}, certificate states {rewritten}"),
                ));
            }
            let fresh = exponent_hom_check(&rewritten, &zero_generator);
            if !fresh.is_valid() || fresh != hom {
                return Err(stage_error(
                    "homomorphism",
                    format!("re-checked exponent sums disagree: {fresh}"),
                ));
            }
            let conjugates = check_conjugate_exponents(
                rewritten.generators(),
                &zero_generator,
                radius,
            )?;

            if !plug.model().describe().starts_with("free(") {
                return Err(stage_error(
                    "plug",
                    format!(
                        "plug SFT must live on a free group model, found {}",
                        plug.model().describe()
                    ),
                ));
            }
            if plug.model().alphabet().len() != free_subgroup.len() {
                return Err(stage_error(
                    "plug",
                    format!(
                        "plug SFT is over a rank-{} free group, the Freiheitssatz subgroup \
                         has rank {}",
                        plug.model().alphabet().len(),
                        free_subgroup.len()
                    ),
                ));
            }

            let (model, images, model_note) = ambient_model(&rewritten, &zero_generator)?;
            let subgroup_words: Vec<Word> =
                free_subgroup.iter().map(|g| images[g].clone()).collect();
            let embedding = Embedding::new(model.clone(), subgroup_words, None)
                .map_err(|e| stage_error("extension", e))?;
            let extended =
                free_extension(plug, &embedding).map_err(|e| stage_error("extension", e))?;
            if extended.forbidden().len() != plug.forbidden().len() {
                return Err(stage_error(
                    "extension",
                    format!(
                        "pattern count changed: plug has {}, extension has {}",
                        plug.forbidden().len(),
                        extended.forbidden().len()
                    ),
                ));
            }

            let proved = vec![
                ProvedFact {
                    name: "rewriting log replays".into(),
                    detail: format!(
                        "{} logged steps replay from the input to {rewritten}",
                        log.len()
                    ),
                },
                ProvedFact {
                    name: "exponent homomorphism".into(),
                    detail: format!(
                        "the relator has exponent sum 0 at `{zero_generator}`, so the \
                         exponent-sum map descends to a homomorphism onto Z sending \
                         `{zero_generator}` to 1"
                    ),
                },
                ProvedFact {
                    name: "conjugate exponent identity".into(),
                    detail: format!(
                        "|γ·{zero_generator}^n·γ^-1| at `{zero_generator}` equals n for \
                         all {conjugates} pairs with |γ| ≤ {radius}, 0 < n ≤ {radius}; \
                         every such conjugate lies outside the subgroup generated by the \
                         other letters"
                    ),
                },
                ProvedFact {
                    name: "pattern transport".into(),
                    detail: format!(
                        "{} forbidden patterns re-read verbatim over the ambient group \
                         ({model_note})",
                        plug.forbidden().len()
                    ),
                },
            ];

            let mut evidence = Vec::new();
            let edge = model.alphabet().to_vec();
            let ball = Arc::new(
                build_ball(model.clone(), &edge, radius).map_err(|e| stage_error("tiling", e))?,
            );
            let tiled =
                tile_ball(&extended, ball, node_budget).map_err(|e| stage_error("tiling", e))?;
            evidence.push(Evidence {
                name: "ball tiling".into(),
                outcome: match &tiled.outcome {
                    TileOutcome::Satisfiable(_) => {
                        "satisfiable: admissible window coloring found".into()
                    }
                    TileOutcome::Unsatisfiable => {
                        "unsatisfiable: window refutation — the extension is empty".into()
                    }
                    TileOutcome::BudgetExceeded => "budget exceeded: inconclusive".into(),
                },
                parameters: format!(
                    "radius {radius}, node budget {node_budget}, nodes explored {}",
                    tiled.nodes_explored
                ),
            });
            let searched = search_strongly_periodic(&extended, quotients, node_budget)
                .map_err(|e| stage_error("periodic search", e))?;
            evidence.push(Evidence {
                name: "strongly periodic search".into(),
                outcome: match &searched.outcome {
                    PeriodicOutcome::Found(q) => format!(
                        "found: strongly periodic configuration over an index-{} quotient",
                        q.table().size()
                    ),
                    PeriodicOutcome::NoneUpToQuotient => {
                        "none found: exhaustive over the supplied quotients".into()
                    }
                    PeriodicOutcome::BudgetExceeded => "budget exceeded: inconclusive".into(),
                },
                parameters: format!(
                    "{} quotients supplied, node budget {node_budget}, nodes explored {}",
                    quotients.len(),
                    searched.nodes_explored
                ),
            });

            Ok(CertificateReport {
                conclusion: "the group admits a weakly but not strongly aperiodic SFT".into(),
                proved,
                cited: citations,
                evidence,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::todd_coxeter;
    use crate::sft::{Alphabet, Pattern};

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    fn g(name: &str) -> Generator {
        Generator::new(name).unwrap()
    }

    /// Golden-mean-shaped plug on a free group of the given rank: no two
    /// adjacent 1s in any generator direction.
    fn free_plug(names: &[&str]) -> Sft {
        let model: DynModel =
            Arc::new(FreeGroupModel::new(names.iter().map(|n| g(n)).collect()));
        let forbidden = names
            .iter()
            .map(|n| {
                Pattern::new(
                    model.as_ref(),
                    vec![Word::identity(), Word::from_gen(&g(n))],
                    vec!["1".into(), "1".into()],
                )
                .unwrap()
            })
            .collect();
        Sft::new(model, Alphabet::of(&["0", "1"]).unwrap(), forbidden).unwrap()
    }

    /// Coset table of the trivial subgroup in a finite presented group:
    /// the group's own Cayley action, reusable as a finite quotient of any
    /// group presenting onto it.
    fn cayley_table(p: &str) -> CosetTable {
        todd_coxeter(&pres(p), &[], 200).unwrap()
    }

    #[test]
    fn conjugate_exponent_count_matches_the_enumeration() {
        let gens = vec![g("a"), g("b")];
        // 17 reduced words of length ≤ 2, times n ∈ {1, 2}.
        assert_eq!(check_conjugate_exponents(&gens, &g("a"), 2).unwrap(), 34);
    }

    #[test]
    fn abc_certificate_proves_checks_and_finds_evidence() {
        let p = pres("< a b c | a b c >");
        let plug = free_plug(&["x", "y"]);
        // The rewritten group is free on t2, t3; (Z/2)² is a quotient.
        let quotient = cayley_table("< t2 t3 | t2^2 , t3^2 , t2 t3 t2^-1 t3^-1 >");
        let report = certify_one_relator(&p, &plug, &[quotient], 3, 100_000).unwrap();

        assert_eq!(report.conclusion, "the group admits a weakly but not strongly aperiodic SFT");
        let names: Vec<&str> = report.proved.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "rewriting log replays",
                "exponent homomorphism",
                "conjugate exponent identity",
                "pattern transport"
            ]
        );
        assert!(report.proved[0].detail.contains("6 logged steps"));
        assert!(report.proved[1].detail.contains("`t3`"));
        let keys: Vec<&str> = report.cited.iter().map(|c| c.key).collect();
        for key in [
            "magnus-freiheitssatz",
            "piantadosi-free-groups",
            "jeandel-free-extension",
            "barbieri-free-extension",
        ] {
            assert!(keys.contains(&key), "missing citation {key}");
        }
        assert_eq!(report.evidence.len(), 2);
        assert!(report.evidence[0].outcome.starts_with("satisfiable"));
        assert!(report.evidence[1].outcome.starts_with("found"));
        assert!(report.evidence[1].outcome.contains("index-4"));

        let text = report.to_string();
        assert!(text.contains("PROVED\n"));
        assert!(text.contains("CITED\n"));
        assert!(text.contains("EVIDENCE\n"));
        assert!(text.contains("free of rank |S|-1"), "quote anchor present");
    }

    #[test]
    fn genus_two_surface_certificate_runs_on_dehns_algorithm() {
        let p = crate::presentations::surface_presentation(2);
        let plug = free_plug(&["x", "y", "z"]);
        // Abelianize mod 2: the surface relator is a product of
        // commutators, so (Z/2)⁴ is a quotient.
        let quotient = cayley_table(
            "< a1 b1 a2 b2 | a1^2 , b1^2 , a2^2 , b2^2 , \
             a1 b1 a1^-1 b1^-1 , a1 a2 a1^-1 a2^-1 , a1 b2 a1^-1 b2^-1 , \
             b1 a2 b1^-1 a2^-1 , b1 b2 b1^-1 b2^-1 , a2 b2 a2^-1 b2^-1 >",
        );
        let report = certify_one_relator(&p, &plug, &[quotient], 2, 100_000).unwrap();
        assert!(report.conclusion.contains("weakly but not strongly aperiodic"));
        assert!(report.proved[0].detail.contains("0 logged steps"));
        assert!(
            report.proved[3].detail.contains("Dehn's algorithm"),
            "{}",
            report.proved[3].detail
        );
        assert!(report.evidence[0].outcome.starts_with("satisfiable"));
        assert!(report.evidence[1].outcome.starts_with("found"));
    }

    #[test]
    fn splitting_presentations_get_the_ends_certificate() {
        let p = pres("< a b c | a b >");
        let report = certify_one_relator(&p, &free_plug(&["x", "y"]), &[], 3, 100).unwrap();
        assert!(report.conclusion.contains("infinitely many ends"));
        assert!(report.conclusion.contains("no strongly aperiodic"));
        let keys: Vec<&str> = report.cited.iter().map(|c| c.key).collect();
        assert!(keys.contains(&"cohen-two-or-more-ends"));
        assert!(report.evidence.is_empty());
        assert!(report.to_string().contains("cannot have a strongly"));
    }

    #[test]
    fn failures_carry_their_stage() {
        // Too few generators: the analyzer refuses.
        let err =
            certify_one_relator(&pres("< a b | a b a^-1 b^-1 >"), &free_plug(&["x"]), &[], 2, 10)
                .unwrap_err();
        assert_eq!(err.stage, "analyze");

        // Plug rank does not match the Freiheitssatz subgroup.
        let err = certify_one_relator(&pres("< a b c | a b c >"), &free_plug(&["x"]), &[], 2, 10)
            .unwrap_err();
        assert_eq!(err.stage, "plug");

        // Zero-exponent witness, but neither C'(1/6) nor free after one
        // elimination: every generator occurs twice.
        let p = pres("< a b c | a b a^-1 b^-1 c^2 >");
        let err = certify_one_relator(&p, &free_plug(&["x", "y"]), &[], 2, 10).unwrap_err();
        assert_eq!(err.stage, "model selection");
        assert!(err.msg.contains("no decidable backend"), "{}", err.msg);
    }

    #[test]
    fn plug_must_be_over_a_free_model() {
        let model: DynModel = Arc::new(crate::groups::FreeAbelianModel::new(vec![g("x"), g("y")]));
        let plug = Sft::new(model, Alphabet::of(&["0"]).unwrap(), vec![]).unwrap();
        let err =
            certify_one_relator(&pres("< a b c | a b c >"), &plug, &[], 2, 10).unwrap_err();
        assert_eq!(err.stage, "plug");
    }
}
