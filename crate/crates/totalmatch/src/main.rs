use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use log::{error, warn};

use totalmatch::config::{load_config, FileConfig};
use totalmatch::experiments::{
    aggregate_matching, coloring_row, coloring_table, default_family_sets, matching_rows,
    matching_table, run_batch, FamilySet,
};
use totalmatch::facets::{default_battery, observe_cuts, run_item};
use totalmatch::instances::{instance_dir, parse_seeds, resolve, Generator, Instance};
use totalmatch::io::{
    load_graph, parse_cuts, parse_weights, save_graph, write_coloring, write_cuts,
};
use totalmatch::table::{Table, TableFormat};
use totalmatch::Error;
use totalmatch_core::coloring::{assignment_model, default_color_count};
use totalmatch_core::cutloop::CutLoopConfig;
use totalmatch_core::matching::{mwtmp_model, WeightVector};

#[derive(Parser)]
#[command(
    name = "totalmatch",
    version,
    about = "Total coloring bounds and total matching cutting planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assignment LP, covering LP and total chromatic number per instance.
    Coloring(ColoringArgs),
    /// Cutting-plane bounds on the total matching number per instance.
    Matching(MatchingArgs),
    /// Dimension and facet checks on small graphs.
    Facets(FacetArgs),
    /// Write random instances to disk.
    Gen(GenArgs),
    /// Convert between DIMACS and graph6 (chosen by file extension).
    Convert { input: PathBuf, output: PathBuf },
}

#[derive(Args, Default)]
struct SourceArgs {
    /// Instance files, fixture names from the instance directory, or
    /// built-in names such as `petersen` or `cycle(5)`.
    instances: Vec<String>,
    /// Random cubic graphs on this many vertices.
    #[arg(long)]
    cubic: Option<usize>,
    /// Random G(n, p) graphs on this many vertices.
    #[arg(long, requires = "p")]
    gnp: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    /// Seeds for the generators: `3`, `1,4,9`, `0..10` or `1..=10`.
    #[arg(long)]
    seeds: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// csv or markdown.
    #[arg(long)]
    format: Option<TableFormat>,
    /// Write the table here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Leave the runtime column empty, for byte-identical tables.
    #[arg(long)]
    no_runtime: bool,
    /// TOML file with defaults for any of these options.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write each model in LP text format to this directory.
    #[arg(long)]
    export_lp: Option<PathBuf>,
}

#[derive(Args)]
struct ColoringArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Skip the exact assignment model.
    #[arg(long)]
    no_exact: bool,
    /// Write the best coloring of each instance here.
    #[arg(long)]
    colorings: Option<PathBuf>,
}

#[derive(Args)]
struct MatchingArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Family sets, one row each: basic, clique, cycle, even-clique, all,
    /// or `+`-joined lists. Defaults to basic, clique, cycle and all.
    #[arg(long, value_delimiter = ',')]
    families: Vec<FamilySet>,
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long)]
    violation_eps: Option<f64>,
    /// Element weights (single instance only).
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Average rows over the seeds of each generator.
    #[arg(long)]
    aggregate: bool,
    /// Write the cuts of each run here.
    #[arg(long)]
    cuts: Option<PathBuf>,
}

#[derive(Args)]
struct FacetArgs {
    /// Check the cuts of this file on `--graph` instead of the default battery.
    #[arg(long, requires = "graph")]
    cuts: Option<PathBuf>,
    #[arg(long)]
    graph: Option<String>,
    /// Print only failures and the summary.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, conflicts_with = "gnp")]
    cubic: Option<usize>,
    #[arg(long, requires = "p")]
    gnp: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// File extension: dimacs or g6.
    #[arg(long, default_value = "dimacs")]
    ext: String,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coloring(a) => cmd_coloring(a),
        Command::Matching(a) => cmd_matching(a),
        Command::Facets(a) => cmd_facets(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Convert { input, output } => cmd_convert(&input, &output),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            error!("{e:#}");
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

struct Settings {
    format: TableFormat,
    output: Option<PathBuf>,
    runtime: bool,
    file: FileConfig,
}

fn settings(out: &OutputArgs) -> anyhow::Result<Settings> {
    let file = match &out.config {
        Some(p) => load_config(p)?,
        None => FileConfig::default(),
    };
    let format = match (out.format, &file.format) {
        (Some(f), _) => f,
        (None, Some(f)) => f.parse().map_err(anyhow::Error::msg)?,
        (None, None) => TableFormat::Csv,
    };
    Ok(Settings {
        format,
        output: out.output.clone().or_else(|| file.output.clone()),
        runtime: !out.no_runtime && file.runtime.unwrap_or(true),
        file,
    })
}

/// The instances of a run; missing fixtures are skipped with a warning.
fn instances(
    src: &SourceArgs,
    file: &FileConfig,
) -> anyhow::Result<(Vec<Instance>, Option<Generator>)> {
    let names = if src.instances.is_empty() {
        file.instances.clone().unwrap_or_default()
    } else {
        src.instances.clone()
    };
    let cubic = src.cubic.or(file.cubic);
    let gnp = src.gnp.or(file.gnp);
    let chosen = [!names.is_empty(), cubic.is_some(), gnp.is_some()];
    if chosen.iter().filter(|&&c| c).count() > 1 {
        bail!("give exactly one instance source: names, --cubic or --gnp");
    }
    let generator = match (cubic, gnp) {
        (Some(n), _) => Some(Generator::Cubic { n }),
        (_, Some(n)) => {
            let p = src.p.or(file.p).context("--gnp needs --p")?;
            Some(Generator::Gnp { n, p })
        }
        _ => None,
    };
    if let Some(gen) = generator {
        let seeds = parse_seeds(
            src.seeds
                .as_deref()
                .or(file.seeds.as_deref())
                .unwrap_or("0..10"),
        )?;
        let list = seeds
            .into_iter()
            .map(|s| gen.generate(s))
            .collect::<Result<_, _>>()?;
        return Ok((list, Some(gen)));
    }
    let dir = instance_dir();
    let mut list = Vec::new();
    for name in &names {
        match resolve(name, &dir) {
            Ok(inst) => list.push(inst),
            Err(Error::MissingInstance(n)) => warn!("instance `{n}` not found, row skipped"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok((list, None))
}

fn emit(table: &Table, s: &Settings) -> anyhow::Result<()> {
    match &s.output {
        Some(path) => {
            let f =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            table.write(s.format, f)?;
        }
        None => {
            let stdout = std::io::stdout();
            table.write(s.format, stdout.lock())?;
        }
    }
    Ok(())
}

fn export_lp(dir: &Path, name: &str, text: String) -> anyhow::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{}.lp", file_safe(name))), text)?;
    Ok(())
}

fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn cmd_coloring(a: ColoringArgs) -> anyhow::Result<bool> {
    let s = settings(&a.out)?;
    let (list, _) = instances(&a.source, &s.file)?;
    let exact = !a.no_exact && s.file.exact.unwrap_or(true);
    if let Some(dir) = &a.out.export_lp {
        for inst in &list {
            let spec = assignment_model(&inst.graph, default_color_count(&inst.graph))?;
            export_lp(dir, &inst.name, spec.to_lp_string())?;
        }
    }
    let results = run_batch(&list, |inst| coloring_row(inst, exact));
    let mut ok = true;
    let mut rows = Vec::new();
    for (inst, r) in list.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                error!("{}: {e}", inst.name);
                ok = false;
            }
        }
    }
    if let Some(dir) = &a.colorings {
        fs::create_dir_all(dir)?;
        for (inst, row) in list.iter().zip(&rows) {
            if let Some(c) = &row.coloring {
                let path = dir.join(format!("{}.col.txt", file_safe(&row.name)));
                fs::write(path, write_coloring(&inst.graph, c))?;
            }
        }
    }
    emit(&coloring_table(&rows, s.runtime), &s)?;
    Ok(ok)
}

fn cmd_matching(a: MatchingArgs) -> anyhow::Result<bool> {
    let s = settings(&a.out)?;
    let (list, generator) = instances(&a.source, &s.file)?;
    let sets = if !a.families.is_empty() {
        a.families.clone()
    } else if let Some(f) = &s.file.families {
        f.iter()
            .map(|x| x.parse())
            .collect::<Result<_, String>>()
            .map_err(anyhow::Error::msg)?
    } else {
        default_family_sets()
    };
    let mut base = CutLoopConfig::default();
    if let Some(r) = a.max_rounds.or(s.file.max_rounds) {
        base.max_rounds = r;
    }
    if let Some(eps) = a.violation_eps.or(s.file.violation_eps) {
        base.violation_eps = eps;
    }
    let weights = match &a.weights {
        Some(path) => {
            let [inst] = &list[..] else {
                bail!("--weights needs exactly one instance");
            };
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(parse_weights(&inst.graph, &text).map_err(|e| e.in_file(path))?)
        }
        None => None,
    };
    if let Some(dir) = &a.out.export_lp {
        for inst in &list {
            let w = weights
                .clone()
                .unwrap_or_else(|| WeightVector::unit(&inst.graph));
            export_lp(
                dir,
                &inst.name,
                mwtmp_model(&inst.graph, &w)?.to_lp_string(),
            )?;
        }
    }
    let results = run_batch(&list, |inst| {
        matching_rows(inst, &sets, weights.as_ref(), &base)
    });
    let mut ok = true;
    let mut rows = Vec::new();
    for (inst, r) in list.iter().zip(results) {
        match r {
            Ok(r) => rows.extend(r),
            Err(e) => {
                error!("{}: {e}", inst.name);
                ok = false;
            }
        }
    }
    if let Some(dir) = &a.cuts {
        fs::create_dir_all(dir)?;
        for row in &rows {
            let path = dir.join(format!(
                "{}.{}.cuts",
                file_safe(&row.name),
                file_safe(&row.family_set)
            ));
            fs::write(path, write_cuts(row.cuts()))?;
        }
    }
    let aggregate = a.aggregate || s.file.aggregate.unwrap_or(false);
    let table = match generator {
        Some(gen) if aggregate => aggregate_matching(&rows, |_| gen.label(), s.runtime),
        _ => matching_table(&rows, s.runtime),
    };
    emit(&table, &s)?;
    Ok(ok)
}

fn cmd_facets(a: FacetArgs) -> anyhow::Result<bool> {
    let items = match (&a.graph, &a.cuts) {
        (Some(spec), Some(path)) => {
            let inst = resolve(spec, &instance_dir())?;
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cuts = parse_cuts(&inst.graph, &text).map_err(|e| e.in_file(path))?;
            observe_cuts(&inst.name, &inst.graph, &cuts)
        }
        (Some(_), None) => bail!("--graph needs --cuts"),
        _ => default_battery(),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let (mut passed, mut failed, mut observed) = (0, 0, 0);
    for item in &items {
        let outcome = run_item(item)?;
        match outcome.passed {
            Some(true) => passed += 1,
            Some(false) => failed += 1,
            None => observed += 1,
        }
        if !a.quiet || outcome.passed == Some(false) {
            writeln!(out, "{outcome}\n")?;
        }
    }
    writeln!(out, "{passed} passed, {failed} failed, {observed} observed")?;
    Ok(failed == 0)
}

fn cmd_gen(a: GenArgs) -> anyhow::Result<bool> {
    let generator = match (a.cubic, a.gnp, a.p) {
        (Some(n), None, _) => Generator::Cubic { n },
        (None, Some(n), Some(p)) => Generator::Gnp { n, p },
        _ => bail!("give --cubic N or --gnp N --p P"),
    };
    fs::create_dir_all(&a.out)?;
    for seed in parse_seeds(&a.seeds)? {
        let inst = generator.generate(seed)?;
        save_graph(&inst.graph, a.out.join(format!("{}.{}", inst.name, a.ext)))?;
    }
    Ok(true)
}

fn cmd_convert(input: &Path, output: &Path) -> anyhow::Result<bool> {
    let g = load_graph(input)?;
    save_graph(&g, output)?;
    Ok(true)
}
