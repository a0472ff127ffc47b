//! Command-line front end. Every subcommand is a thin adapter over the
//! library so scripted runs and direct calls always agree; `--json`
//! switches the relevant subcommands to a machine-readable format.
//!
//! Exit codes: 0 on success, 1 on a domain failure (unreadable or invalid
//! system, unknown colour, subset without the required property), 2 on a
//! usage error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use spherical_kit::{
    affine_test, build_colours, enumerate_systems, invariants, is_distinguished, is_rigid, layout,
    localize, localize_s, localize_sigma, parse_group_spec, parse_system_file, quotient_by, reduce,
    render_svg, render_text, serialize_system, validate, Colour, ColourKind, ColourSet,
    EnumerateOptions, RootSystem, SphericalSystem,
};

#[derive(Parser)]
#[command(
    name = "spherical-kit",
    version,
    about = "Exact combinatorics of spherical systems over adjoint groups of type A and D"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a system file and check every axiom.
    Validate(FileArgs),
    /// List the colours of a system with their functionals on the spherical roots.
    Colours(FileArgs),
    /// Decide whether a colour subset is distinguished (exit 1 when it is not).
    Distinguished(SubsetArgs),
    /// Quotient a system by a distinguished colour subset.
    Quotient(SubsetArgs),
    /// Restrict a system to chosen simple roots and/or spherical roots.
    Localize(LocalizeArgs),
    /// Decompose a system into primitive pieces.
    Reduce(FileArgs),
    /// Enumerate the spherical systems of a group.
    Classify(ClassifyArgs),
    /// Dimension, character-group rank, and structural flags of a system.
    Invariants(FileArgs),
    /// Draw the diagram of a system.
    Render(RenderArgs),
    /// Search for a nonnegative spherical-root combination strictly positive on every colour.
    Affine(FileArgs),
    /// Report whether all A-element functionals are pairwise distinct.
    Rigid(FileArgs),
}

#[derive(Args)]
struct FileArgs {
    /// System file to read.
    file: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SubsetArgs {
    /// System file to read.
    file: PathBuf,
    /// Colours, comma separated: exact names such as "b(a1)", or d_a2 for
    /// the unique colour moved by a2, or dp_a2/dm_a2 for d+(a2)/d-(a2).
    #[arg(long, value_delimiter = ',', required = true)]
    colours: Vec<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("keep").required(true).multiple(true)))]
struct LocalizeArgs {
    /// System file to read.
    file: PathBuf,
    /// Simple roots to keep, comma separated.
    #[arg(long, value_delimiter = ',', group = "keep")]
    roots: Option<Vec<String>>,
    /// Spherical roots to keep, by position in the file, first is 1.
    #[arg(long, value_delimiter = ',', group = "keep")]
    sigma: Option<Vec<usize>>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Group spec such as A3, D5, or A2xA1xD4.
    group: String,
    /// Upper bound on the number of spherical roots.
    #[arg(long)]
    max_rank: Option<usize>,
    /// Keep only cuspidal systems: spherical roots supporting every simple root.
    #[arg(long)]
    cuspidal: bool,
    /// Keep every system instead of one per diagram-automorphism class.
    #[arg(long)]
    no_dedup: bool,
    /// Size of the worker pool for the enumeration.
    #[arg(long)]
    threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RenderArgs {
    /// System file to read.
    file: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = RenderFormat::Text)]
    format: RenderFormat,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
enum RenderFormat {
    Text,
    Svg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Validate(a) => cmd_validate(&a),
        Cmd::Colours(a) => cmd_colours(&a),
        Cmd::Distinguished(a) => cmd_distinguished(&a),
        Cmd::Quotient(a) => cmd_quotient(&a),
        Cmd::Localize(a) => cmd_localize(&a),
        Cmd::Reduce(a) => cmd_reduce(&a),
        Cmd::Classify(a) => cmd_classify(&a),
        Cmd::Invariants(a) => cmd_invariants(&a),
        Cmd::Render(a) => cmd_render(&a),
        Cmd::Affine(a) => cmd_affine(&a),
        Cmd::Rigid(a) => cmd_rigid(&a),
    }
}

fn load(path: &Path) -> Result<SphericalSystem> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_system_file(&text).with_context(|| format!("in {}", path.display()))
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn kind_label(kind: ColourKind) -> &'static str {
    match kind {
        ColourKind::A => "a",
        ColourKind::APrime => "a'",
        ColourKind::B => "b",
    }
}

fn join_ints(row: &[i64]) -> String {
    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn sigma_symbols(sys: &SphericalSystem) -> Vec<String> {
    let rs = sys.group();
    sys.sigma().iter().map(|g| g.vector.symbol(rs)).collect()
}

fn root_names(rs: &RootSystem, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&i| rs.root_name(i).to_string()).collect()
}

fn rat_strings(witness: &[spherical_kit::Rat]) -> Vec<String> {
    witness.iter().map(|r| r.to_string()).collect()
}

fn system_json(sys: &SphericalSystem) -> serde_json::Value {
    let rs = sys.group();
    let a: Vec<_> = sys
        .a_elements()
        .iter()
        .map(|e| json!({"name": e.name, "row": e.row}))
        .collect();
    json!({
        "group": rs.spec_string(),
        "sp": root_names(rs, sys.sp()),
        "sigma": sys.sigma().iter().map(|g| g.vector.0.clone()).collect::<Vec<_>>(),
        "sigma_symbols": sigma_symbols(sys),
        "a": a,
    })
}

/// Colour tokens accept the exact name, `d_X` for the unique colour moved
/// by the simple root X, and `dp_X`/`dm_X` for the conventional pair names
/// `d+(X)`/`d-(X)`.
fn resolve_colour(sys: &SphericalSystem, delta: &ColourSet, tok: &str) -> Result<usize> {
    let colours = delta.colours();
    if let Some(i) = colours.iter().position(|c| c.name == tok) {
        return Ok(i);
    }
    let translated = if let Some(root) = tok.strip_prefix("dp_") {
        Some(format!("d+({root})"))
    } else if let Some(root) = tok.strip_prefix("dm_") {
        Some(format!("d-({root})"))
    } else {
        None
    };
    if let Some(name) = translated {
        return colours
            .iter()
            .position(|c| c.name == name)
            .with_context(|| format!("{tok}: no colour named {name}; {}", available(colours)));
    }
    if let Some(root) = tok.strip_prefix("d_") {
        let index = sys
            .group()
            .root_index(root)
            .with_context(|| format!("resolving colour token {tok}"))?;
        let moved = delta.delta_of_root(index);
        return match moved.len() {
            1 => Ok(*moved.iter().next().expect("nonempty")),
            0 => bail!("{tok}: root {root} moves no colour"),
            n => {
                let names: Vec<_> =
                    moved.iter().map(|&i| colours[i].name.as_str()).collect();
                bail!(
                    "{tok}: root {root} moves {n} colours ({}); name one exactly",
                    names.join(", ")
                )
            }
        };
    }
    bail!("unknown colour '{tok}'; {}", available(colours))
}

fn available(colours: &[Colour]) -> String {
    let names: Vec<_> = colours.iter().map(|c| c.name.as_str()).collect();
    format!("available colours: {}", names.join(", "))
}

fn resolve_colours(
    sys: &SphericalSystem,
    delta: &ColourSet,
    tokens: &[String],
) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for tok in tokens {
        out.insert(resolve_colour(sys, delta, tok)?);
    }
    Ok(out)
}

fn cmd_validate(a: &FileArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let report = validate(&sys);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}", report.summary());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_colours(a: &FileArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let delta = build_colours(&sys)?;
    let rs = sys.group();
    if a.json {
        let items: Vec<_> = delta
            .colours()
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "kind": kind_label(c.kind),
                    "row": c.row,
                    "moves": root_names(rs, &c.members),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!(items))?);
    } else {
        let n = delta.len();
        println!("{} colour{}", n, if n == 1 { "" } else { "s" });
        let width = delta.colours().iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in delta.colours() {
            println!(
                "  {:width$}  {:2}  row: {:<12}  moves: {}",
                c.name,
                kind_label(c.kind),
                join_ints(&c.row),
                root_names(rs, &c.members).join(", "),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_distinguished(a: &SubsetArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let delta = build_colours(&sys)?;
    let subset = resolve_colours(&sys, &delta, &a.colours)?;
    let report = is_distinguished(&sys, &delta, &subset)?;
    let rs = sys.group();
    let sigma_of_symbols: Vec<String> = report
        .sigma_of
        .iter()
        .map(|&j| sys.sigma()[j].vector.symbol(rs))
        .collect();
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "distinguished": report.distinguished,
                "names": report.names,
                "parabolic": report.parabolic,
                "sigma_of": report.sigma_of.iter().copied().collect::<Vec<_>>(),
                "sigma_of_symbols": sigma_of_symbols,
                "smooth": report.smooth,
                "star": report.star,
                "subset": report.subset,
                "witness": report.witness.as_deref().map(rat_strings),
            }))?
        );
    } else {
        println!("subset: {}", report.names.join(", "));
        println!("distinguished: {}", yes_no(report.distinguished));
        if let Some(witness) = &report.witness {
            println!("witness: {}", rat_strings(witness).join(", "));
        }
        if report.distinguished {
            let listed = if sigma_of_symbols.is_empty() {
                "(none)".to_string()
            } else {
                sigma_of_symbols.join(", ")
            };
            println!("sigma(D'): {listed}");
            println!("smooth: {}", yes_no(report.smooth));
            println!("parabolic: {}", yes_no(report.parabolic));
            println!("star: {}", yes_no(report.star));
        }
    }
    Ok(if report.distinguished {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_quotient(a: &SubsetArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let delta = build_colours(&sys)?;
    let subset = resolve_colours(&sys, &delta, &a.colours)?;
    let triple = quotient_by(&sys, &delta, &subset)?;
    let quotient = &triple.result;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "colour_image": triple.colour_image,
                "parabolic": triple.report.parabolic,
                "quotient": system_json(quotient),
                "smooth": triple.report.smooth,
                "subset": triple.report.names,
            }))?
        );
    } else {
        let rs = quotient.group();
        let symbols = sigma_symbols(quotient);
        println!("Δ′ = {}", triple.report.names.join(", "));
        if symbols.is_empty() {
            println!("Σ/Δ′ = (empty: rank 0)");
        } else {
            println!("Σ/Δ′ = {}", symbols.join(", "));
        }
        let sp = root_names(rs, quotient.sp());
        if sp.is_empty() {
            println!("S^p/Δ′ = (empty)");
        } else {
            println!("S^p/Δ′ = {}", sp.join(", "));
        }
        println!();
        print!("{}", serialize_system(quotient));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_localize(a: &LocalizeArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let rs = sys.group();
    let keep_roots: Option<BTreeSet<usize>> = match &a.roots {
        Some(names) => Some(
            names
                .iter()
                .map(|n| rs.root_index(n))
                .collect::<Result<_, _>>()?,
        ),
        None => None,
    };
    let keep_sigma: Option<BTreeSet<usize>> = match &a.sigma {
        Some(positions) => {
            let mut out = BTreeSet::new();
            for &p in positions {
                if p == 0 || p > sys.rank() {
                    bail!(
                        "spherical-root position {p} is out of range 1..={}",
                        sys.rank()
                    );
                }
                out.insert(p - 1);
            }
            Some(out)
        }
        None => None,
    };
    let result = match (keep_roots, keep_sigma) {
        (Some(roots), Some(sigma)) => localize(&sys, &roots, &sigma)?,
        (Some(roots), None) => localize_s(&sys, &roots)?,
        (None, Some(sigma)) => localize_sigma(&sys, &sigma)?,
        (None, None) => unreachable!("clap requires --roots or --sigma"),
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&system_json(&result))?);
    } else {
        print!("{}", serialize_system(&result));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(a: &FileArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let tree = reduce(&sys)?;
    if a.json {
        let leaves: Vec<_> = tree.leaves().into_iter().map(system_json).collect();
        let steps: Vec<_> = tree
            .steps()
            .iter()
            .map(|(kind, detail)| json!({"kind": kind.label(), "detail": detail}))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "leaves": leaves,
                "outline": tree.outline(),
                "steps": steps,
            }))?
        );
    } else {
        print!("{}", tree.outline());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(a: &ClassifyArgs) -> Result<ExitCode> {
    let rs = parse_group_spec(&a.group)?;
    let opts = EnumerateOptions {
        max_rank: a.max_rank,
        cuspidal_only: a.cuspidal,
        dedup: !a.no_dedup,
    };
    let systems = match a.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("building the worker pool")?
            .install(|| enumerate_systems(&rs, &opts))?,
        None => enumerate_systems(&rs, &opts)?,
    };
    if a.json {
        let items: Vec<_> = systems.iter().map(system_json).collect();
        println!("{}", serde_json::to_string_pretty(&json!(items))?);
    } else {
        let n = systems.len();
        println!(
            "{} system{} on {}",
            n,
            if n == 1 { "" } else { "s" },
            rs.spec_string()
        );
        for (k, sys) in systems.iter().enumerate() {
            println!();
            println!("# {}", k + 1);
            print!("{}", serialize_system(sys));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_invariants(a: &FileArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let inv = invariants(&sys)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "cuspidal": inv.cuspidal,
                "dim": inv.dim_gh,
                "primitive": inv.primitive,
                "rank_xi": inv.rank_xi_h,
                "rigid": inv.rigid,
            }))?
        );
    } else {
        println!("dim: {}", inv.dim_gh);
        println!("rank_xi: {}", inv.rank_xi_h);
        println!("cuspidal: {}", yes_no(inv.cuspidal));
        println!("rigid: {}", yes_no(inv.rigid));
        println!("primitive: {}", yes_no(inv.primitive));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(a: &RenderArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let lay = layout(&sys)?;
    let rendered = match a.format {
        RenderFormat::Text => render_text(&lay),
        RenderFormat::Svg => render_svg(&lay),
    };
    match &a.out {
        Some(path) => fs::write(path, &rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_affine(a: &FileArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let delta = build_colours(&sys)?;
    let witness = affine_test(&sys, &delta);
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "affine": witness.is_some(),
                "witness": witness.as_deref().map(rat_strings),
            }))?
        );
    } else {
        match &witness {
            Some(w) => {
                println!("affine: yes");
                println!("witness: {}", rat_strings(w).join(", "));
            }
            None => println!("affine: no"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_rigid(a: &FileArgs) -> Result<ExitCode> {
    let sys = load(&a.file)?;
    let rigid = is_rigid(&sys);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&json!({"rigid": rigid}))?);
    } else {
        println!("rigid: {}", yes_no(rigid));
    }
    Ok(ExitCode::SUCCESS)
}
