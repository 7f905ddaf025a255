use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use traintrack::corpus::{self, numeral_table};
use traintrack::diagram::{
    build_id_diagram, irreducibility_potential_test, search_loops, Budget, Strategy,
};
use traintrack::dot;
use traintrack::exec::with_jobs;
use traintrack::maps::GraphMap;
use traintrack::verifier::{verify_representative, PnpBounds};
use traintrack::whitehead::{enumerate_catalog, whitehead_graphs, SimpleGraph};

/// Train track representatives of free group outer automorphisms:
/// verification, catalog enumeration, decomposition diagrams, loop search.
#[derive(Parser)]
#[command(name = "ttrack", version, about)]
struct Cli {
    /// Number of worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a representative against a target graph.
    Verify(VerifyArgs),
    /// Enumerate the connected simplicial graph catalog.
    Catalog(CatalogArgs),
    /// Build the ideal decomposition diagram for a catalog graph.
    Diagram(DiagramArgs),
    /// Search a diagram for representative loops.
    Search(SearchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Map file (`a -> acBca` lines); omit when using --corpus.
    file: Option<PathBuf>,
    /// Verify a bundled representative by numeral (e.g. XIII).
    #[arg(long)]
    corpus: Option<String>,
    /// Target graph: a numeral, a catalog index, or `V=5; E=ab,bc,...`.
    #[arg(long)]
    target: Option<String>,
    /// Length bound for the periodic Nielsen path search.
    #[arg(long)]
    pnp_len: Option<usize>,
    /// Iteration bound for the periodic Nielsen path search.
    #[arg(long)]
    pnp_iter: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CatalogArgs {
    /// Vertex count.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Write one DOT file per graph into this directory.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    /// Catalog graph: numeral, catalog index, or graph text.
    graph: String,
    /// Write the diagram as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write nodes and edges as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run the Irreducibility Potential Test.
    #[arg(long)]
    test: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Catalog graph: numeral, catalog index, or graph text.
    graph: String,
    /// Search strategy.
    #[arg(long, default_value = "ib")]
    strategy: String,
    /// Maximum loop length in diagram edges.
    #[arg(long, default_value_t = 24)]
    budget: usize,
    /// Maximum number of augmenting loops.
    #[arg(long, default_value_t = 8)]
    max_aug: usize,
    /// Emit candidates as JSON.
    #[arg(long)]
    json: bool,
}

fn resolve_graph(spec: &str) -> Result<SimpleGraph> {
    if spec.contains('=') {
        return spec
            .parse::<SimpleGraph>()
            .with_context(|| format!("cannot parse graph '{spec}'"));
    }
    if let Ok(idx) = spec.parse::<usize>() {
        let catalog = enumerate_catalog(5);
        if idx >= catalog.len() {
            bail!("catalog index {idx} out of range (0..{})", catalog.len());
        }
        return Ok(catalog[idx].clone());
    }
    Ok(numeral_table().graph_of(spec)?.clone())
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let mut notes: Vec<String> = Vec::new();
    let (map, default_target) = match (&args.corpus, &args.file) {
        (Some(label), _) => {
            let entry = corpus::entry(label)?;
            if let Some(note) = &entry.note {
                notes.push(format!("corpus {label}: {note}"));
            }
            if entry.power > 1 {
                notes.push(format!(
                    "corpus {label}: verifying the stored map raised to the power {}",
                    entry.power
                ));
            }
            let rep = entry.map.power(entry.power)?;
            let table = numeral_table();
            let target = whitehead_graphs(&rep)
                .ok()
                .and_then(|wh| table.match_of(&wh.sw))
                .map(|idx| table.catalog[idx].clone());
            (rep, target)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let map = GraphMap::parse(&text)?;
            (map, None)
        }
        (None, None) => bail!("pass a map file or --corpus LABEL"),
    };
    let target = match &args.target {
        Some(spec) => resolve_graph(spec)?,
        None => default_target.context("no target graph; pass --target")?,
    };
    let bounds = match (args.pnp_len, args.pnp_iter) {
        (None, None) => None,
        (len, iter) => {
            let (_, h) = traintrack::verifier::rotationless_power(&map)?;
            let defaults = PnpBounds::defaults_for(&h);
            Some(PnpBounds {
                len_bound: len.unwrap_or(defaults.len_bound),
                iter_bound: iter.unwrap_or(defaults.iter_bound),
            })
        }
    };
    let report = verify_representative(&map, &target, bounds)?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        for note in &notes {
            println!("{note}");
        }
        println!("train track:        {}", report.train_track);
        println!("PF matrix:          {}", report.pf_matrix);
        println!("irreducible:        {}", report.matrix_irreducible);
        println!("periodic dirs:      {}", report.periodic_count);
        println!("rotationless power: {}", report.power);
        println!("fixed after power:  {}", report.fixed_after_power);
        println!(
            "pNp search:         {} (len {}, iter {})",
            match (&report.pnp_found, report.pnp_saturated) {
                (Some(w), _) => format!("witness {} period {}", w.path, w.period),
                (None, true) => "saturated".to_string(),
                (None, false) => "none found".to_string(),
            },
            report.pnp_bounds.len_bound,
            report.pnp_bounds.iter_bound
        );
        println!("LW connected:       {}", report.lw_connected);
        if let Some(iw) = &report.iw_graph {
            println!("IW graph:           {iw}");
        }
        println!("IW matches target:  {}", report.iw_matches_target);
        println!("verdict:            {:?}", report.verdict);
    }
    Ok(report.exit_code())
}

fn cmd_catalog(args: &CatalogArgs) -> Result<i32> {
    let catalog = enumerate_catalog(args.n);
    println!(
        "{} connected simplicial graphs on {} vertices",
        catalog.len(),
        args.n
    );
    let table = if args.n == 5 { Some(numeral_table()) } else { None };
    for (i, g) in catalog.iter().enumerate() {
        match table {
            Some(t) => println!("[{i:>2}] {:>5}  {g}", t.numeral_of(i)),
            None => println!("[{i:>2}] {g}"),
        }
    }
    if let Some(dir) = &args.dot {
        fs::create_dir_all(dir)?;
        for (i, g) in catalog.iter().enumerate() {
            let name = match table {
                Some(t) => format!("graph_{}", t.numeral_of(i)),
                None => format!("graph_{i:02}"),
            };
            fs::write(dir.join(format!("{name}.dot")), dot::graph_dot(g, &name))?;
        }
        println!("wrote {} DOT files to {}", catalog.len(), dir.display());
    }
    Ok(0)
}

fn cmd_diagram(args: &DiagramArgs) -> Result<i32> {
    let shape = resolve_graph(&args.graph)?;
    let diagram = build_id_diagram(&shape, 3)?;
    let stats = diagram.stats();
    println!("shape: {shape}");
    println!(
        "nodes: {} (of {} candidates, {} labelings), edges: {}, components: {}",
        diagram.nodes().len(),
        stats.candidates,
        stats.labelings,
        diagram.edges().len(),
        diagram.components().len()
    );
    if args.test {
        let report = irreducibility_potential_test(&diagram);
        for (i, pass) in report.per_component.iter().enumerate() {
            println!(
                "component {i} ({} nodes): {}",
                diagram.components()[i].len(),
                if *pass { "passes" } else { "fails" }
            );
        }
        println!(
            "irreducibility potential: {}",
            if report.unachieved {
                "no component passes; the graph is unachieved"
            } else {
                "at least one component passes"
            }
        );
    }
    if let Some(path) = &args.dot {
        fs::write(path, dot::diagram_dot(&diagram, &args.graph))?;
        println!("wrote DOT to {}", path.display());
    }
    if let Some(path) = &args.json {
        let nodes: Vec<String> = diagram.nodes().iter().map(|n| n.to_string()).collect();
        let edges: Vec<serde_json::Value> = diagram
            .edges()
            .iter()
            .map(|e| {
                serde_json::json!({
                    "src": e.src,
                    "dst": e.dst,
                    "kind": format!("{:?}", e.triple.kind()),
                    "fold": e.triple.fold().to_string(),
                })
            })
            .collect();
        let doc = serde_json::json!({
            "schema": 1,
            "shape": shape.to_string(),
            "nodes": nodes,
            "edges": edges,
            "components": diagram.components(),
        });
        fs::write(path, serde_json::to_string_pretty(&doc)?)?;
        println!("wrote JSON to {}", path.display());
    }
    Ok(0)
}

fn cmd_search(args: &SearchArgs) -> Result<i32> {
    let shape = resolve_graph(&args.graph)?;
    let strategy = match args.strategy.as_str() {
        "ia" => Strategy::Ia,
        "ib" => Strategy::Ib,
        other => bail!("unknown strategy '{other}' (use ia or ib)"),
    };
    let diagram = build_id_diagram(&shape, 3)?;
    let outcome = search_loops(
        &diagram,
        strategy,
        Budget {
            max_len: args.budget,
            max_aug: args.max_aug,
        },
    );
    if args.json {
        let cands: Vec<serde_json::Value> = outcome
            .candidates
            .iter()
            .map(|c| {
                serde_json::json!({
                    "edges": c.edges,
                    "map": c.map.to_string(),
                    "red_coverage": c.red_coverage,
                    "graph_built": c.graph_built,
                    "train_track": c.train_track,
                    "pure_switches": c.pure_switches,
                    "verdict": format!("{:?}", c.report.verdict),
                })
            })
            .collect();
        let doc = serde_json::json!({
            "schema": 1,
            "shape": shape.to_string(),
            "candidates": cands,
            "stats": {
                "states_explored": outcome.stats.states_explored,
                "components_searched": outcome.stats.components_searched,
                "loops_considered": outcome.stats.loops_considered,
            },
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "searched {} components, {} states, {} loops considered",
            outcome.stats.components_searched,
            outcome.stats.states_explored,
            outcome.stats.loops_considered
        );
        for (i, c) in outcome.candidates.iter().enumerate() {
            println!(
                "candidate {i}: {} edges, coverage={}, built={}, tt={}, verdict={:?}",
                c.edges.len(),
                c.red_coverage,
                c.graph_built,
                c.train_track,
                c.report.verdict
            );
            print!("{}", c.map);
        }
    }
    if outcome.candidates.is_empty() {
        eprintln!("no candidates within budget");
        return Ok(1);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    let run = || -> Result<i32> {
        match &cli.command {
            Command::Verify(args) => cmd_verify(args),
            Command::Catalog(args) => cmd_catalog(args),
            Command::Diagram(args) => cmd_diagram(args),
            Command::Search(args) => cmd_search(args),
        }
    };
    match with_jobs(jobs, run) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
