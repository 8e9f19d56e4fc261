//! One handler per subcommand. Each returns the rendered text report, the
//! equivalent JSON value, and the exit code; `main` picks the format.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use gsft_core::{
    analyze_one_relator, build_ball, certify_one_relator, free_extension, magnus_moldavansky,
    right_extension, search_strongly_periodic, tile_ball, Alphabet, CertificateReport, DynModel,
    FreeGroupModel, Generator, NonRigidityCertificate, Pattern, PeriodicOutcome, RewriteOutcome,
    Sft, TileOutcome, Word,
};
use serde_json::{json, Map, Value};

use crate::load;
use crate::manifest::Manifest;
use crate::{Cli, Command, Mode};

pub struct RunOutput {
    pub text: String,
    pub json: Value,
    pub exit: u8,
}

pub fn run(cli: &Cli) -> Result<RunOutput> {
    match &cli.command {
        Command::Rewrite { presentation } => rewrite(cli, presentation),
        Command::Extend { sft, embedding, mode, unchecked } => {
            extend(cli, sft, embedding, *mode, *unchecked)
        }
        Command::Tile { sft, radius, budget } => tile(cli, sft, *radius, *budget),
        Command::SearchPeriodic { sft, quotients, budget, unchecked } => {
            search_periodic(cli, sft, quotients, *budget, *unchecked)
        }
        Command::Analyze { presentation, plug, quotient, radius, budget, unchecked } => {
            analyze(cli, presentation, plug.as_deref(), quotient, *radius, *budget, *unchecked)
        }
    }
}

fn assemble(manifest: &Manifest, body: String, report: Value, exit: u8) -> RunOutput {
    RunOutput {
        text: format!("{}\n{body}", manifest.text_block()),
        json: json!({ "manifest": manifest.json(), "report": report }),
        exit,
    }
}

fn rewrite(cli: &Cli, path: &Path) -> Result<RunOutput> {
    let manifest = Manifest::new("rewrite")
        .input("presentation", path)
        .parameter("seed", cli.seed)
        .parameter("format", cli.format.name());
    let p = load::presentation(path)?;
    let outcome = magnus_moldavansky(&p).map_err(|e| anyhow!("rewriting: {e}"))?;
    let exit = match &outcome {
        RewriteOutcome::Witness { .. } => 0,
        RewriteOutcome::FreeProductSplit { .. } => 2,
    };
    let report = rewrite_json(&outcome);
    Ok(assemble(&manifest, outcome.to_string(), report, exit))
}

fn expressions_json(m: &BTreeMap<Generator, Word>) -> Value {
    Value::Object(
        m.iter().map(|(g, w)| (g.to_string(), Value::String(w.to_string()))).collect::<Map<_, _>>(),
    )
}

fn rewrite_json(outcome: &RewriteOutcome) -> Value {
    match outcome {
        RewriteOutcome::Witness { presentation, zero_generator, expressions, log } => json!({
            "outcome": "zero-exponent witness",
            "presentation": presentation.to_string(),
            "zero_generator": zero_generator.to_string(),
            "expressions": expressions_json(expressions),
            "log": log.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        }),
        RewriteOutcome::FreeProductSplit { absent_generator, remaining, expressions, log } => {
            json!({
                "outcome": "free product split",
                "absent_generator": absent_generator.to_string(),
                "remaining": remaining.to_string(),
                "expressions": expressions_json(expressions),
                "log": log.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            })
        }
    }
}

fn derived_out_path(input: &Path, mode: Mode) -> PathBuf {
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("extension");
    input.with_file_name(format!("{stem}.{}.sft", mode.name()))
}

fn extend(
    cli: &Cli,
    sft_path: &Path,
    emb_path: &Path,
    mode: Mode,
    unchecked: bool,
) -> Result<RunOutput> {
    let mut manifest = Manifest::new("extend")
        .input("sft", sft_path)
        .input("embedding", emb_path)
        .parameter("mode", mode.name());
    if unchecked {
        manifest = manifest.parameter("unchecked", true);
    }
    let manifest =
        manifest.parameter("seed", cli.seed).parameter("format", cli.format.name());

    let x = load::sft(sft_path)?;
    let e = load::embedding(emb_path)?;
    if !unchecked {
        if let Some(t) = e.table() {
            load::check_table(t, "embedding coset table")?;
        }
    }
    let out_path = derived_out_path(sft_path, mode);

    let (header, extended, body, report) = match mode {
        Mode::Right => {
            let ext = right_extension(&x, &e).map_err(|e| anyhow!("right extension: {e}"))?;
            let header = ext.provenance_comments().join("\n") + "\n";
            let body = format!(
                "mode: right\n\
                 subgroup index: k = {k}\n\
                 extended alphabet: {letters} letters\n\
                 type-(1) adjacency patterns: {t1}\n\
                 type-(2) conjugated patterns: {t2}\n\
                 forbidden patterns: {total}\n\
                 wrote: {out}\n",
                k = ext.k(),
                letters = ext.sft().alphabet().len(),
                t1 = ext.type1_count(),
                t2 = ext.type2_count(),
                total = ext.sft().forbidden().len(),
                out = out_path.display(),
            );
            let report = json!({
                "mode": "right",
                "k": ext.k(),
                "alphabet_letters": ext.sft().alphabet().len(),
                "type1_patterns": ext.type1_count(),
                "type2_patterns": ext.type2_count(),
                "forbidden_patterns": ext.sft().forbidden().len(),
                "output": out_path.display().to_string(),
            });
            (header, ext.into_sft(), body, report)
        }
        Mode::Free => {
            let ext = free_extension(&x, &e).map_err(|e| anyhow!("free extension: {e}"))?;
            let gens: Vec<String> = e.subgroup_gens().iter().map(|w| w.to_string()).collect();
            let header = format!(
                "# free extension: {} forbidden patterns imposed on every left coset copy\n\
                 # subgroup generators: {}\n",
                ext.forbidden().len(),
                gens.join(", "),
            );
            let body = format!(
                "mode: free\n\
                 alphabet: {} letters (unchanged)\n\
                 forbidden patterns: {} (unchanged)\n\
                 wrote: {}\n",
                ext.alphabet().len(),
                ext.forbidden().len(),
                out_path.display(),
            );
            let report = json!({
                "mode": "free",
                "alphabet_letters": ext.alphabet().len(),
                "forbidden_patterns": ext.forbidden().len(),
                "output": out_path.display().to_string(),
            });
            (header, ext, body, report)
        }
    };

    let file_text = format!("{header}{}{}", manifest.comment_lines(), extended.to_text());
    fs::write(&out_path, file_text)
        .with_context(|| format!("writing {}", out_path.display()))?;
    Ok(assemble(&manifest, body, report, 0))
}

fn tile(cli: &Cli, sft_path: &Path, radius: usize, budget: usize) -> Result<RunOutput> {
    let manifest = Manifest::new("tile")
        .input("sft", sft_path)
        .parameter("radius", radius)
        .parameter("budget", budget)
        .parameter("seed", cli.seed)
        .parameter("format", cli.format.name());
    let s = load::sft(sft_path)?;
    let model = s.model().clone();
    let ball = Arc::new(
        build_ball(model.clone(), model.alphabet(), radius).map_err(|e| anyhow!("ball: {e}"))?,
    );
    let cells = ball.len();
    let result = tile_ball(&s, ball.clone(), budget).map_err(|e| anyhow!("tiling: {e}"))?;

    let (body, report, exit) = match result.outcome {
        TileOutcome::Satisfiable(cfg) => {
            let mut body = format!(
                "outcome: satisfiable\n\
                 the radius-{radius} ball ({cells} cells) admits a coloring avoiding \
                 every forbidden pattern\n\
                 nodes explored: {}\n\
                 coloring:\n",
                result.nodes_explored,
            );
            let mut coloring = Vec::new();
            for i in 0..cells {
                let cell = ball.element(i);
                let color = cfg.color(i).expect("satisfiable window colorings are total");
                body.push_str(&format!("  {cell} -> {color}\n"));
                coloring.push(json!({ "cell": cell.to_string(), "color": color }));
            }
            let report = json!({
                "outcome": "satisfiable",
                "radius": radius,
                "ball_cells": cells,
                "nodes_explored": result.nodes_explored,
                "coloring": coloring,
            });
            (body, report, 0)
        }
        TileOutcome::Unsatisfiable => {
            let body = format!(
                "outcome: unsatisfiable\n\
                 no coloring of the radius-{radius} ball ({cells} cells) avoids every \
                 forbidden pattern; the subshift is empty\n\
                 nodes explored: {}\n",
                result.nodes_explored,
            );
            let report = json!({
                "outcome": "unsatisfiable",
                "radius": radius,
                "ball_cells": cells,
                "nodes_explored": result.nodes_explored,
            });
            (body, report, 2)
        }
        TileOutcome::BudgetExceeded => {
            let body = format!(
                "outcome: budget exceeded\n\
                 stopped after {} nodes without a verdict; raise --budget\n",
                result.nodes_explored,
            );
            let report = json!({
                "outcome": "budget exceeded",
                "radius": radius,
                "ball_cells": cells,
                "nodes_explored": result.nodes_explored,
            });
            (body, report, 2)
        }
    };
    Ok(assemble(&manifest, body, report, exit))
}

fn search_periodic(
    cli: &Cli,
    sft_path: &Path,
    quotient_paths: &[PathBuf],
    budget: usize,
    unchecked: bool,
) -> Result<RunOutput> {
    let mut manifest = Manifest::new("search-periodic").input("sft", sft_path);
    for (n, q) in quotient_paths.iter().enumerate() {
        manifest = manifest.input(format!("quotient {}", n + 1), q);
    }
    manifest = manifest.parameter("budget", budget);
    if unchecked {
        manifest = manifest.parameter("unchecked", true);
    }
    let manifest =
        manifest.parameter("seed", cli.seed).parameter("format", cli.format.name());

    let s = load::sft(sft_path)?;
    let mut tables = Vec::new();
    for path in quotient_paths {
        let t = load::coset_table(path)?;
        if !unchecked {
            load::check_table(&t, &path.display().to_string())?;
        }
        tables.push(t);
    }
    let result = search_strongly_periodic(&s, &tables, budget)
        .map_err(|e| anyhow!("periodic search: {e}"))?;

    let (body, report, exit) = match result.outcome {
        PeriodicOutcome::Found(q) => {
            let size = q.table().size();
            let mut body = format!(
                "outcome: found\n\
                 strongly periodic configuration over an index-{size} quotient\n\
                 nodes explored: {}\n\
                 coloring:\n",
                result.nodes_explored,
            );
            let mut coloring = Vec::new();
            for (i, (rep, color)) in
                q.table().representatives().iter().zip(q.colors()).enumerate()
            {
                body.push_str(&format!("  coset {} (rep {rep}) -> {color}\n", i + 1));
                coloring.push(json!({
                    "coset": i + 1,
                    "rep": rep.to_string(),
                    "color": color,
                }));
            }
            let report = json!({
                "outcome": "found",
                "quotient_size": size,
                "nodes_explored": result.nodes_explored,
                "coloring": coloring,
            });
            (body, report, 0)
        }
        PeriodicOutcome::NoneUpToQuotient => {
            let body = format!(
                "outcome: none found\n\
                 none of the {} supplied quotients carries a strongly periodic \
                 configuration; the search per quotient was exhaustive\n\
                 nodes explored: {}\n",
                tables.len(),
                result.nodes_explored,
            );
            let report = json!({
                "outcome": "none found",
                "quotients_searched": tables.len(),
                "nodes_explored": result.nodes_explored,
            });
            (body, report, 2)
        }
        PeriodicOutcome::BudgetExceeded => {
            let body = format!(
                "outcome: budget exceeded\n\
                 stopped after {} nodes without a verdict; raise --budget\n",
                result.nodes_explored,
            );
            let report = json!({
                "outcome": "budget exceeded",
                "nodes_explored": result.nodes_explored,
            });
            (body, report, 2)
        }
    };
    Ok(assemble(&manifest, body, report, exit))
}

/// The built-in plug when `--plug` is absent: no two adjacent 1s in any
/// generator direction, on a free group of the given rank.
fn default_plug(rank: usize) -> Sft {
    let gens: Vec<Generator> =
        (1..=rank).map(|i| Generator::new(format!("x{i}")).expect("xN is a valid name")).collect();
    let model: DynModel = Arc::new(FreeGroupModel::new(gens.clone()));
    let forbidden = gens
        .iter()
        .map(|g| {
            Pattern::new(
                model.as_ref(),
                vec![Word::identity(), Word::from_gen(g)],
                vec!["1".into(), "1".into()],
            )
            .expect("identity and a single generator never collide")
        })
        .collect();
    Sft::new(model, Alphabet::of(&["0", "1"]).expect("0/1 are valid letters"), forbidden)
        .expect("the built-in plug is well-formed")
}

fn certificate_json(report: &CertificateReport) -> Value {
    json!({
        "conclusion": report.conclusion,
        "proved": report
            .proved
            .iter()
            .map(|p| json!({ "name": p.name, "detail": p.detail }))
            .collect::<Vec<_>>(),
        "cited": report.cited.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "evidence": report
            .evidence
            .iter()
            .map(|e| json!({ "name": e.name, "outcome": e.outcome, "parameters": e.parameters }))
            .collect::<Vec<_>>(),
    })
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    cli: &Cli,
    pres_path: &Path,
    plug_path: Option<&Path>,
    quotient_paths: &[PathBuf],
    radius: usize,
    budget: usize,
    unchecked: bool,
) -> Result<RunOutput> {
    let mut manifest = Manifest::new("analyze").input("presentation", pres_path);
    if let Some(plug) = plug_path {
        manifest = manifest.input("plug", plug);
    }
    for (n, q) in quotient_paths.iter().enumerate() {
        manifest = manifest.input(format!("quotient {}", n + 1), q);
    }
    manifest = manifest.parameter("radius", radius).parameter("budget", budget);
    if plug_path.is_none() {
        manifest = manifest.parameter("plug", "built-in no-two-adjacent-1s, rank matched");
    }
    if unchecked {
        manifest = manifest.parameter("unchecked", true);
    }
    let manifest =
        manifest.parameter("seed", cli.seed).parameter("format", cli.format.name());

    let p = load::presentation(pres_path)?;
    let plug = match plug_path {
        Some(path) => load::sft(path)?,
        None => {
            // The split branch never consults the plug, so rank 1 is a safe
            // stand-in there; the witness branch needs the subgroup's rank.
            let rank = match analyze_one_relator(&p).map_err(|e| anyhow!("stage `analyze`: {e}"))?
            {
                NonRigidityCertificate::ZeroExponent { free_subgroup, .. } => free_subgroup.len(),
                NonRigidityCertificate::InfiniteEnds { .. } => 1,
            };
            default_plug(rank)
        }
    };
    let mut tables = Vec::new();
    for path in quotient_paths {
        let t = load::coset_table(path)?;
        if !unchecked {
            load::check_table(&t, &path.display().to_string())?;
        }
        tables.push(t);
    }

    let report = certify_one_relator(&p, &plug, &tables, radius, budget)
        .map_err(|e| anyhow!("{e}"))?;
    let exit = if report.conclusion.contains("infinitely many ends") { 2 } else { 0 };
    let json = certificate_json(&report);
    Ok(assemble(&manifest, report.to_string(), json, exit))
}
