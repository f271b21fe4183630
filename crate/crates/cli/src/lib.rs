//! The `kgprof` command-line tool.
//!
//! [`run`] parses arguments, executes one subcommand and maps the outcome
//! to an exit code: 0 on success, 1 on usage errors, 2 on data errors.

pub mod args;
pub mod manifest;
pub mod output;
pub mod pipeline;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;

use kgprof_core::class_detail::{write_class_csv, ClassDetail, ClassMappingFile};
use kgprof_core::index::write_snapshot;
use kgprof_core::linker::{extract_labels, match_grid, write_links_csv, MatchOptions};
use kgprof_core::profile::ProfileReport;
use kgprof_core::rdf::{ParseReport, Strictness};
use kgprof_core::report::{render_heatmap, HeatmapFormat, PairMatrix};

use args::{Cli, Command};
use manifest::Manifest;
use output::{file_stem, json_bytes, Sink};
use pipeline::{default_label, estimate_pair, load_graph, load_grid, Graph, PairReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let outcome = match cli.jobs {
        Some(0) => {
            eprintln!("error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(e.into()),
        },
        None => execute(&cli),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_DATA
        }
    }
}

struct Context_ {
    sink: Sink,
    strictness: Strictness,
    label_predicates: Vec<String>,
}

fn execute(cli: &Cli) -> Result<()> {
    let ctx = Context_ {
        sink: Sink::from_arg(&cli.out),
        strictness: if cli.strict {
            Strictness::Strict
        } else {
            Strictness::Tolerant
        },
        label_predicates: cli.label_predicates.clone(),
    };
    match &cli.command {
        Command::Profile { dump, snapshot, graph } => profile(&ctx, dump, *snapshot, graph.as_deref()),
        Command::Classes {
            dump,
            mapping,
            graph,
            strict_mapping,
        } => classes(&ctx, dump, mapping.as_ref(), graph.as_deref(), *strict_mapping),
        Command::Sunburst {
            dump,
            depth,
            top_k,
            graph,
        } => {
            let label = graph.clone().unwrap_or_else(|| default_label(dump));
            let g = load_graph(&label, dump, &ctx.label_predicates, ctx.strictness)?;
            ctx.sink.write_json(
                &format!("{}.sunburst.json", file_stem(&label)),
                &g.sunburst(*depth, *top_k),
            )
        }
        Command::Link {
            dump_a,
            dump_b,
            grid,
            no_blocking,
        } => link(&ctx, dump_a, dump_b, grid.as_ref(), *no_blocking),
        Command::Estimate {
            dump_a,
            dump_b,
            gold,
            grid,
            no_blocking,
        } => {
            let (a, b) = load_pair(&ctx, dump_a, dump_b)?;
            let grid = load_grid(grid.as_ref())?;
            let report = estimate_pair(&a, &b, gold, &grid, &match_options(*no_blocking))?;
            let name = format!("{}__{}.estimate.json", file_stem(&a.label), file_stem(&b.label));
            ctx.sink.write_json(&name, &report)
        }
        Command::Matrix { manifest } => {
            let m = Manifest::load(manifest)?;
            let graphs = load_manifest_graphs(&ctx, &m)?;
            let pairs = estimate_all_pairs(&m, &graphs)?;
            write_matrices(&ctx.sink, &graphs, &pairs)
        }
        Command::Report { manifest } => report(&ctx, manifest),
    }
}

fn match_options(no_blocking: bool) -> MatchOptions {
    let mut options = MatchOptions::default();
    options.blocking.enabled = !no_blocking;
    options
}

fn load_pair(ctx: &Context_, a: &Path, b: &Path) -> Result<(Graph, Graph)> {
    let (mut la, lb) = (default_label(a), default_label(b));
    if la == lb {
        la.push_str("-a");
    }
    let (ga, gb) = rayon::join(
        || load_graph(&la, a, &ctx.label_predicates, ctx.strictness),
        || load_graph(&lb, b, &ctx.label_predicates, ctx.strictness),
    );
    Ok((ga?, gb?))
}

fn profile(ctx: &Context_, dump: &Path, snapshot: bool, graph: Option<&str>) -> Result<()> {
    let label = graph.map(str::to_string).unwrap_or_else(|| default_label(dump));
    let g = load_graph(&label, dump, &ctx.label_predicates, ctx.strictness)?;
    let bytes = json_bytes(&g.profile())?;
    // the report always goes to stdout; a directory sink keeps a copy
    Sink::Stdout.write("", &bytes)?;
    if let Sink::Dir(_) = &ctx.sink {
        ctx.sink.write(&format!("{}.profile.json", file_stem(&label)), &bytes)?;
    }
    if snapshot {
        let mut buf = Vec::new();
        write_snapshot(&g.index, &mut buf)?;
        match &ctx.sink {
            Sink::Dir(_) => ctx.sink.write(&format!("{}.kgidx", file_stem(&label)), &buf)?,
            Sink::Stdout => bail!("--snapshot needs an output directory"),
        }
    }
    Ok(())
}

fn load_mapping(path: Option<&PathBuf>) -> Result<ClassMappingFile> {
    match path {
        Some(p) => ClassMappingFile::load(p).with_context(|| format!("cannot load class mapping {}", p.display())),
        None => Ok(ClassMappingFile::prominent_classes()),
    }
}

fn check_mapping(rows: &[ClassDetail], graph: &str, strict: bool) -> Result<()> {
    for r in rows {
        for iri in &r.unresolved_iris {
            if strict {
                bail!(
                    "{graph}: mapped IRI {iri} for {} is not a class of the graph",
                    r.canonical_name
                );
            }
            log::warn!(
                "{graph}: mapped IRI {iri} for {} is not a class of the graph",
                r.canonical_name
            );
        }
    }
    Ok(())
}

fn class_csv(rows: &[ClassDetail]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_class_csv(rows, &mut buf)?;
    Ok(buf)
}

fn classes(ctx: &Context_, dump: &Path, mapping: Option<&PathBuf>, graph: Option<&str>, strict: bool) -> Result<()> {
    let label = graph.map(str::to_string).unwrap_or_else(|| default_label(dump));
    let mapping = load_mapping(mapping)?;
    let g = load_graph(&label, dump, &ctx.label_predicates, ctx.strictness)?;
    let rows = g.classes(&mapping, &label);
    check_mapping(&rows, &label, strict)?;
    let stem = file_stem(&label);
    ctx.sink.write_json(&format!("{stem}.classes.json"), &rows)?;
    ctx.sink.write(&format!("{stem}.classes.csv"), &class_csv(&rows)?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LinkSummary {
    graph_a: String,
    graph_b: String,
    labeled_a: usize,
    labeled_b: usize,
    unlabeled_a: usize,
    unlabeled_b: usize,
    heuristics: Vec<HeuristicSize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct HeuristicSize {
    measure: &'static str,
    threshold: f64,
    size_f: usize,
}

fn link(ctx: &Context_, a: &Path, b: &Path, grid: Option<&PathBuf>, no_blocking: bool) -> Result<()> {
    let (ga, gb) = load_pair(ctx, a, b)?;
    let grid = load_grid(grid)?;
    let la = extract_labels(&ga.index, &ga.partition, ga.index.label_predicates());
    let lb = extract_labels(&gb.index, &gb.partition, gb.index.label_predicates());
    let sets = match_grid(&grid, &la, &lb, &match_options(no_blocking));
    let stem = format!("{}__{}", file_stem(&ga.label), file_stem(&gb.label));
    let mut csv = Vec::new();
    write_links_csv(&sets, &ga.index, &gb.index, &mut csv)?;
    ctx.sink.write(&format!("{stem}.links.csv"), &csv)?;
    let summary = LinkSummary {
        graph_a: ga.label.clone(),
        graph_b: gb.label.clone(),
        labeled_a: la.len(),
        labeled_b: lb.len(),
        unlabeled_a: la.unlabeled,
        unlabeled_b: lb.unlabeled,
        heuristics: sets
            .iter()
            .map(|s| HeuristicSize {
                measure: s.heuristic.measure.name(),
                threshold: s.heuristic.threshold,
                size_f: s.size_f,
            })
            .collect(),
    };
    ctx.sink.write_json(&format!("{stem}.links.json"), &summary)
}

fn load_manifest_graphs(ctx: &Context_, m: &Manifest) -> Result<Vec<Graph>> {
    m.graphs
        .par_iter()
        .map(|g| {
            let predicates = if g.label_predicates.is_empty() {
                &ctx.label_predicates
            } else {
                &g.label_predicates
            };
            load_graph(&g.label, &g.dump, predicates, ctx.strictness)
        })
        .collect()
}

fn estimate_all_pairs(m: &Manifest, graphs: &[Graph]) -> Result<Vec<PairReport>> {
    let grid = load_grid(m.grid.as_ref())?;
    let options = match_options(m.no_blocking);
    let pairs: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| (i + 1..graphs.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let files = m.gold_files(&graphs[i].label, &graphs[j].label);
            estimate_pair(&graphs[i], &graphs[j], &files, &grid, &options)
        })
        .collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Matrices<'a> {
    gain_fraction: &'a PairMatrix,
    linkage_completeness: &'a PairMatrix,
    larger_graph_ratio: &'a PairMatrix,
}

fn pair_matrices(graphs: &[Graph], pairs: &[PairReport]) -> [PairMatrix; 3] {
    let labels: Vec<String> = graphs.iter().map(|g| g.label.clone()).collect();
    let find = |i: usize, j: usize| {
        let (x, y) = (&labels[i.min(j)], &labels[i.max(j)]);
        pairs
            .iter()
            .find(|p| &p.graph_a == x && &p.graph_b == y)
            .and_then(|p| p.statistics.as_ref())
    };
    let gain = PairMatrix::new(labels.clone(), |i, j| {
        if i == j {
            Some(0.0)
        } else {
            find(i, j).map(|s| s.gain_fraction)
        }
    });
    let completeness = PairMatrix::new(labels.clone(), |i, j| {
        if i == j {
            Some(1.0)
        } else {
            find(i, j).and_then(|s| s.linkage_completeness)
        }
    });
    let ratio = PairMatrix::new(labels.clone(), |i, j| {
        if i == j {
            Some(1.0)
        } else {
            find(i, j).map(|s| s.larger_graph_ratio)
        }
    });
    [gain, completeness, ratio]
}

fn write_matrices(sink: &Sink, graphs: &[Graph], pairs: &[PairReport]) -> Result<()> {
    let [gain, completeness, ratio] = pair_matrices(graphs, pairs);
    sink.write_json(
        "matrix.json",
        &Matrices {
            gain_fraction: &gain,
            linkage_completeness: &completeness,
            larger_graph_ratio: &ratio,
        },
    )?;
    for (name, m) in [("gain", &gain), ("completeness", &completeness)] {
        sink.write(&format!("{name}.csv"), &render_heatmap(m, HeatmapFormat::Csv))?;
        sink.write(&format!("{name}.svg"), &render_heatmap(m, HeatmapFormat::Svg))?;
    }
    Ok(())
}

fn table1_csv(profiles: &[ProfileReport]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "Graph",
        "Instances",
        "Assertions",
        "Avg. linking degree",
        "Median ingoing edges",
        "Median outgoing edges",
        "Classes",
        "Relations",
        "Avg. depth of class tree",
        "Avg. branching factor of class tree",
        "Ontology complexity",
    ])?;
    for p in profiles {
        w.write_record([
            p.graph.clone(),
            p.general.instances.to_string(),
            p.general.assertions.to_string(),
            format!("{:.2}", p.general.avg_linking_degree),
            p.general.median_ingoing_edges.to_string(),
            p.general.median_outgoing_edges.to_string(),
            p.schema.classes.to_string(),
            p.schema.relations.to_string(),
            format!("{:.2}", p.schema.avg_depth_of_class_tree),
            format!("{:.2}", p.schema.avg_branching_factor_of_class_tree),
            p.ontology_complexity.clone(),
        ])?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GraphClasses {
    graph: String,
    classes: Vec<ClassDetail>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Overview {
    graphs: Vec<OverviewGraph>,
    links: Vec<OverviewLink>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OverviewGraph {
    label: String,
    instances: usize,
    triples: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OverviewLink {
    graph_a: String,
    graph_b: String,
    gold_links: usize,
    estimated_links: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct IngestEntry<'a> {
    graph: &'a str,
    report: Option<&'a ParseReport>,
}

fn report(ctx: &Context_, manifest: &Path) -> Result<()> {
    let m = Manifest::load(manifest)?;
    let mapping = load_mapping(m.class_mapping.as_ref())?;
    let graphs = load_manifest_graphs(ctx, &m)?;
    let sink = &ctx.sink;

    sink.write_json(
        "ingest.json",
        &graphs
            .iter()
            .map(|g| IngestEntry {
                graph: &g.label,
                report: g.parse_report.as_ref(),
            })
            .collect::<Vec<_>>(),
    )?;

    let profiles: Vec<ProfileReport> = graphs.par_iter().map(Graph::profile).collect();
    for p in &profiles {
        sink.write_json(&format!("profiles/{}.json", file_stem(&p.graph)), p)?;
    }
    sink.write_json("table1.json", &profiles)?;
    sink.write("table1.csv", &table1_csv(&profiles)?)?;

    let tables: Vec<GraphClasses> = graphs
        .par_iter()
        .map(|g| GraphClasses {
            graph: g.label.clone(),
            classes: g.classes(&mapping, &g.label),
        })
        .collect();
    for t in &tables {
        check_mapping(&t.classes, &t.graph, false)?;
        sink.write(&format!("classes/{}.csv", file_stem(&t.graph)), &class_csv(&t.classes)?)?;
    }
    sink.write_json("table2.json", &tables)?;

    let settings = m.sunburst;
    let bursts: Vec<_> = graphs
        .par_iter()
        .map(|g| g.sunburst(settings.depth, settings.top_k))
        .collect();
    for (g, b) in graphs.iter().zip(&bursts) {
        sink.write_json(&format!("sunburst/{}.json", file_stem(&g.label)), b)?;
    }

    let pairs = estimate_all_pairs(&m, &graphs)?;
    for p in &pairs {
        sink.write_json(
            &format!("pairs/{}__{}.json", file_stem(&p.graph_a), file_stem(&p.graph_b)),
            p,
        )?;
    }
    write_matrices(sink, &graphs, &pairs)?;

    let overview = Overview {
        graphs: graphs
            .iter()
            .map(|g| OverviewGraph {
                label: g.label.clone(),
                instances: g.instance_count(),
                triples: g.index.triple_count(),
            })
            .collect(),
        links: pairs
            .iter()
            .map(|p| OverviewLink {
                graph_a: p.graph_a.clone(),
                graph_b: p.graph_b.clone(),
                gold_links: p.gold.links,
                estimated_links: p.estimate.aggregate,
            })
            .collect(),
    };
    sink.write_json("overview.json", &overview)
}
