//! bcx: betweenness centrality for unweighted undirected graphs.
//!
//! Scores are unnormalized and follow the ordered-pair convention: on an
//! undirected graph every unordered pair contributes to its shortest-path
//! intermediaries twice, once per direction.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use bcx_core::brandes::teps;
use bcx_core::degree2::{run_mode, Mode, ModeRun, RoundBreakdown};
use bcx_core::dist::{make_mesh, run_distributed_bc_with, DistributedRun, Execution, MeshConfig};
use bcx_core::graph::{build_undirected, Graph};
use bcx_core::io::{
    is_graph_cache, load_edge_list, read_graph_cache, read_scores, write_edge_list, write_scores,
    ScoreFormat,
};
use bcx_core::oracle::bc_oracle;
use bcx_core::prng::SplitMix64;
use bcx_core::rmat::{generate_rmat, RmatParams};
use bcx_core::BcScores;

#[derive(Parser)]
#[command(
    name = "bcx",
    about = "Exact betweenness centrality with degree heuristics and a simulated 2-D mesh",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an R-MAT edge list file.
    Generate(GenerateArgs),
    /// Compute betweenness scores.
    Compute(ComputeArgs),
    /// Check modes (or a score file) against the brute-force oracle.
    Verify(VerifyArgs),
    /// Convert an edge list into the BCX1 binary cache.
    Cache(CacheArgs),
}

#[derive(Args)]
struct CacheArgs {
    /// Edge-list text file.
    #[arg(short, long)]
    input: PathBuf,
    /// Binary cache output path.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct GraphSource {
    /// Edge-list text file or BCX1 binary cache.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// R-MAT scale (vertices = 2^scale) when generating instead of reading.
    #[arg(long)]
    scale: Option<u32>,
    /// R-MAT edge factor (pairs = 2^scale * ef).
    #[arg(long, default_value_t = 16)]
    ef: u32,
    /// Seed for generation and source sampling.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl GraphSource {
    fn load(&self) -> Result<Graph> {
        match (&self.input, self.scale) {
            (Some(path), None) => load_graph(path),
            (None, Some(scale)) => {
                let params = RmatParams::new(scale, self.ef, self.seed);
                let edges = generate_rmat(&params)?;
                Ok(build_undirected(&edges)?)
            }
            (Some(_), Some(_)) => bail!("give either --input or --scale, not both"),
            (None, None) => bail!("an input graph is required: --input or --scale"),
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Vertices = 2^scale.
    #[arg(long)]
    scale: u32,
    /// Sampled pairs = 2^scale * ef.
    #[arg(long, default_value_t = 16)]
    ef: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Quadrant probabilities a,b,c,d.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    probs: Option<Vec<f64>>,
    /// Output edge-list path.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Heuristic configuration.
    #[arg(long, default_value = "h0")]
    mode: Mode,
    /// Mesh geometry RxC; runs the distributed engine (h0 only).
    #[arg(long, value_parser = parse_mesh_shape)]
    mesh: Option<(usize, usize)>,
    /// Workers per sub-cluster; defaults to R*C.
    #[arg(long)]
    fd: Option<usize>,
    /// Sub-cluster (replica) count.
    #[arg(long, default_value_t = 1)]
    fr: usize,
    /// "all", a sample size, or an explicit comma-separated vertex list.
    #[arg(long, default_value = "all")]
    sources: String,
    /// Score file path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "txt")]
    format: String,
    /// Check the result against the oracle before exiting.
    #[arg(long)]
    verify: bool,
    /// Largest n the oracle accepts.
    #[arg(long, default_value_t = 512)]
    oracle_limit: usize,
    /// Also emit the run report as one JSON line.
    #[arg(long)]
    json: bool,
    /// Write message statistics CSV here (distributed runs).
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Modes to check.
    #[arg(long, value_delimiter = ',', default_values = ["h0", "h1", "h2", "h3"])]
    modes: Vec<Mode>,
    /// Check a previously written score file instead of recomputing.
    #[arg(long)]
    scores: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    oracle_limit: usize,
    /// Run the oracle even above the size limit.
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
}

fn parse_mesh_shape(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected RxC, got {s:?}"))?;
    let rows = r.parse().map_err(|_| format!("bad row count {r:?}"))?;
    let cols = c.parse().map_err(|_| format!("bad column count {c:?}"))?;
    if rows == 0 || cols == 0 {
        return Err("mesh dimensions must be positive".into());
    }
    Ok((rows, cols))
}

fn load_graph(path: &Path) -> Result<Graph> {
    if is_graph_cache(path) {
        let file = File::open(path).with_context(|| format!("open {}", path.display()))?;
        Ok(read_graph_cache(BufReader::new(file))?)
    } else {
        let file = File::open(path).with_context(|| format!("open {}", path.display()))?;
        let edges = load_edge_list(BufReader::new(file))?;
        Ok(build_undirected(&edges)?)
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Generate(args) => run_generate(args),
        Command::Compute(args) => run_compute(args),
        Command::Verify(args) => run_verify(args),
        Command::Cache(args) => run_cache(args),
    };
    match code {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run_generate(args: GenerateArgs) -> Result<i32> {
    let mut params = RmatParams::new(args.scale, args.ef, args.seed);
    if let Some(p) = &args.probs {
        (params.a, params.b, params.c, params.d) = (p[0], p[1], p[2], p[3]);
    }
    let edges = generate_rmat(&params)?;
    let g = build_undirected(&edges)?;
    let file =
        File::create(&args.output).with_context(|| format!("create {}", args.output.display()))?;
    write_edge_list(BufWriter::new(file), &edges)?;
    println!(
        "wrote {}: n = {}, raw pairs = {}, unique undirected edges = {}",
        args.output.display(),
        edges.n,
        edges.pairs.len(),
        g.edge_count()
    );
    Ok(0)
}

fn run_cache(args: CacheArgs) -> Result<i32> {
    let g = load_graph(&args.input)?;
    let file =
        File::create(&args.output).with_context(|| format!("create {}", args.output.display()))?;
    bcx_core::io::write_graph_cache(BufWriter::new(file), &g)?;
    println!(
        "cached {}: n = {}, m = {}",
        args.output.display(),
        g.vertex_count(),
        g.edge_count()
    );
    Ok(0)
}

enum SourceSelection {
    All,
    Sample(usize),
    Explicit(Vec<u32>),
}

fn parse_sources(spec: &str) -> Result<SourceSelection> {
    if spec == "all" {
        return Ok(SourceSelection::All);
    }
    if spec.contains(',') {
        let list = spec
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| t.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|t| anyhow::anyhow!("bad vertex id {t:?} in --sources"))?;
        return Ok(SourceSelection::Explicit(list));
    }
    let k: usize = spec
        .parse()
        .with_context(|| format!("--sources must be 'all', a count, or a list (got {spec:?})"))?;
    Ok(SourceSelection::Sample(k))
}

/// Resolve the source set; sampling draws from non-isolated vertices with
/// the run seed so experiments repeat exactly.
fn select_sources(g: &Graph, selection: &SourceSelection, seed: u64) -> Result<Option<Vec<u32>>> {
    let non_isolated: Vec<u32> = g.vertices().filter(|&v| !g.is_isolated(v)).collect();
    match selection {
        SourceSelection::All => Ok(None),
        SourceSelection::Sample(k) => {
            if *k > non_isolated.len() {
                bail!(
                    "requested {k} sources but only {} non-isolated vertices exist",
                    non_isolated.len()
                );
            }
            let mut rng = SplitMix64::new(seed);
            Ok(Some(rng.sample(&non_isolated, *k)))
        }
        SourceSelection::Explicit(list) => {
            for &v in list {
                if v as usize >= g.vertex_count() {
                    bail!("source {v} out of range (n = {})", g.vertex_count());
                }
            }
            Ok(Some(list.clone()))
        }
    }
}

struct Report {
    mode: String,
    mesh: Option<MeshConfig>,
    n: usize,
    rounds: usize,
    breakdown: RoundBreakdown,
    preprocess_s: f64,
    forward_s: f64,
    backward_s: f64,
    communication_s: f64,
    wall_s: f64,
    teps: f64,
    expected_wall_s: Option<f64>,
}

impl Report {
    fn removed_percent(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            100.0 * self.breakdown.one_degree_removed as f64 / self.n as f64
        }
    }

    fn print_human(&self, out: &mut dyn Write) -> std::io::Result<()> {
        if let Some(mesh) = &self.mesh {
            writeln!(
                out,
                "mesh: {}x{} fd={} fr={} ({} workers)",
                mesh.rows, mesh.cols, mesh.fd, mesh.fr, mesh.workers
            )?;
        }
        writeln!(out, "mode: {}", self.mode)?;
        writeln!(
            out,
            "rounds: {} (explicit {}, 1-degree removed {} = {:.2}%, 2-degree {}, isolated {})",
            self.rounds,
            self.breakdown.explicit_rounds,
            self.breakdown.one_degree_removed,
            self.removed_percent(),
            self.breakdown.two_degree_augmented,
            self.breakdown.isolated
        )?;
        writeln!(
            out,
            "time: wall {:.3}s (preprocess {:.3}s, forward {:.3}s, backward {:.3}s, communication {:.3}s)",
            self.wall_s, self.preprocess_s, self.forward_s, self.backward_s, self.communication_s
        )?;
        if self.rounds > 0 {
            writeln!(
                out,
                "mean round time: {:.6}s",
                self.wall_s / self.rounds as f64
            )?;
        }
        writeln!(out, "teps: {:.3e}", self.teps)?;
        if let Some(expected) = self.expected_wall_s {
            writeln!(out, "expected time for the whole graph: {expected:.3}s")?;
        }
        Ok(())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mode": self.mode,
            "mesh": self.mesh.map(|m| serde_json::json!({
                "rows": m.rows, "cols": m.cols, "fd": m.fd, "fr": m.fr, "workers": m.workers,
            })),
            "rounds": self.rounds,
            "breakdown": {
                "explicit": self.breakdown.explicit_rounds,
                "one_degree_removed": self.breakdown.one_degree_removed,
                "one_degree_removed_percent": self.removed_percent(),
                "two_degree_augmented": self.breakdown.two_degree_augmented,
                "isolated": self.breakdown.isolated,
            },
            "seconds": {
                "wall": self.wall_s,
                "preprocess": self.preprocess_s,
                "forward": self.forward_s,
                "backward": self.backward_s,
                "communication": self.communication_s,
            },
            "teps": self.teps,
            "expected_wall_seconds": self.expected_wall_s,
        })
    }
}

fn run_compute(args: ComputeArgs) -> Result<i32> {
    let format = match args.format.as_str() {
        "txt" => ScoreFormat::Text,
        "csv" => ScoreFormat::Csv,
        other => bail!("unknown format {other:?} (expected txt or csv)"),
    };
    let g = args.graph.load()?;
    let selection = parse_sources(&args.sources)?;
    let sources = select_sources(&g, &selection, args.graph.seed)?;
    let non_isolated = g.vertices().filter(|&v| !g.is_isolated(v)).count();

    let started = Instant::now();
    let (scores, report) = if let Some((rows, cols)) = args.mesh {
        if args.mode != Mode::H0 {
            bail!("mesh runs support --mode h0 only");
        }
        let fd = args.fd.unwrap_or(rows * cols);
        let mesh = make_mesh(fd * args.fr, rows, cols, fd)?;
        // The threaded engine pins one thread per in-flight worker (fd per
        // sub-cluster); a lower BCX_THREADS cap falls back to rank-order
        // execution, which is bitwise identical.
        let execution = match std::env::var("BCX_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
        {
            Some(cap) if cap < fd => Execution::SingleThread,
            _ => Execution::Threads,
        };
        let run: DistributedRun = run_distributed_bc_with(&g, &mesh, sources.as_deref(), execution);
        let wall = started.elapsed().as_secs_f64();
        if let Some(path) = &args.stats {
            let file = File::create(path).with_context(|| format!("create {}", path.display()))?;
            run.stats.write_csv(BufWriter::new(file))?;
        }
        let rounds = run.rounds_executed;
        let report = Report {
            mode: "h0".into(),
            mesh: Some(mesh),
            n: g.vertex_count(),
            rounds,
            breakdown: RoundBreakdown {
                explicit_rounds: rounds,
                isolated: g.vertex_count() - rounds,
                ..Default::default()
            },
            preprocess_s: 0.0,
            forward_s: run.times.forward.as_secs_f64(),
            backward_s: run.times.backward.as_secs_f64(),
            communication_s: run.times.communication.as_secs_f64(),
            wall_s: wall,
            teps: teps(g.edge_count(), rounds as u64, wall)?,
            expected_wall_s: expected_time(wall, rounds, non_isolated),
        };
        (run.scores, report)
    } else {
        let run: ModeRun = match &sources {
            None => run_mode(&g, args.mode),
            Some(list) => {
                // Partial-source runs are plain rounds over the subset.
                let scores = bcx_core::bc_exact(&g, Some(list));
                let rounds = list.iter().filter(|&&s| !g.is_isolated(s)).count();
                if args.mode != Mode::H0 {
                    bail!("source sampling supports --mode h0 only");
                }
                ModeRun {
                    scores,
                    breakdown: RoundBreakdown {
                        explicit_rounds: rounds,
                        isolated: g.vertex_count() - rounds,
                        ..Default::default()
                    },
                    times: Default::default(),
                }
            }
        };
        let wall = started.elapsed().as_secs_f64();
        let rounds = run.breakdown.explicit_rounds;
        let report = Report {
            mode: args.mode.to_string(),
            mesh: None,
            n: g.vertex_count(),
            rounds,
            breakdown: run.breakdown,
            preprocess_s: run.times.preprocess.as_secs_f64(),
            forward_s: run.times.forward.as_secs_f64(),
            backward_s: run.times.backward.as_secs_f64(),
            communication_s: 0.0,
            wall_s: wall,
            teps: teps(g.edge_count(), rounds as u64, wall)?,
            expected_wall_s: expected_time(wall, rounds, non_isolated),
        };
        (run.scores, report)
    };

    match &args.output {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("create {}", path.display()))?;
            write_scores(BufWriter::new(file), &scores.values, format)?;
            let stdout = std::io::stdout();
            report.print_human(&mut stdout.lock())?;
            if args.json {
                println!("{}", report.to_json());
            }
        }
        None => {
            let stdout = std::io::stdout();
            write_scores(stdout.lock(), &scores.values, format)?;
            // Keep stdout machine-readable: the report goes to stderr.
            let mut stderr = std::io::stderr();
            report.print_human(&mut stderr)?;
            if args.json {
                eprintln!("{}", report.to_json());
            }
        }
    }

    if args.verify {
        if g.vertex_count() > args.oracle_limit {
            bail!(
                "graph too large for the oracle (n = {} > {}); rerun without --verify",
                g.vertex_count(),
                args.oracle_limit
            );
        }
        if sources.is_some() {
            bail!("--verify needs full-source runs");
        }
        let reference = bc_oracle(&g);
        let (ok, worst, err) = compare(&scores, &reference, 1e-6);
        if ok {
            println!("verify: PASS (max rel err {err:.3e})");
        } else {
            println!("verify: FAIL at vertex {worst} (rel err {err:.3e})");
            return Ok(1);
        }
    }
    Ok(0)
}

fn expected_time(wall: f64, rounds: usize, non_isolated: usize) -> Option<f64> {
    (rounds > 0 && rounds < non_isolated).then(|| wall * non_isolated as f64 / rounds as f64)
}

/// Worst vertex by relative error against the reference.
fn compare(scores: &BcScores, reference: &BcScores, tolerance: f64) -> (bool, usize, f64) {
    let mut worst = 0usize;
    let mut worst_err = 0.0f64;
    for (v, (a, b)) in scores.values.iter().zip(&reference.values).enumerate() {
        let err = (a - b).abs() / b.abs().max(1.0);
        if err > worst_err {
            worst_err = err;
            worst = v;
        }
    }
    (worst_err <= tolerance, worst, worst_err)
}

fn run_verify(args: VerifyArgs) -> Result<i32> {
    let g = args.graph.load()?;
    if g.vertex_count() > args.oracle_limit && !args.force {
        bail!(
            "graph too large for the oracle (n = {} > {}); pass --force to override",
            g.vertex_count(),
            args.oracle_limit
        );
    }
    let reference = bc_oracle(&g);
    let mut all_ok = true;

    if let Some(path) = &args.scores {
        let file = File::open(path).with_context(|| format!("open {}", path.display()))?;
        let values = read_scores(BufReader::new(file))?;
        if values.len() != g.vertex_count() {
            bail!(
                "score file has {} entries, graph has {} vertices",
                values.len(),
                g.vertex_count()
            );
        }
        let (ok, worst, err) = compare(&BcScores { values }, &reference, args.tolerance);
        if ok {
            println!("PASS scores {} (max rel err {err:.3e})", path.display());
        } else {
            println!(
                "FAIL scores {} at vertex {worst} (rel err {err:.3e})",
                path.display()
            );
            all_ok = false;
        }
    } else {
        for &mode in &args.modes {
            let run = run_mode(&g, mode);
            let skipped = run.breakdown.one_degree_removed + run.breakdown.two_degree_augmented;
            let (ok, worst, err) = compare(&run.scores, &reference, args.tolerance);
            if ok {
                println!("PASS {mode} (max rel err {err:.3e}, {skipped} rounds skipped)");
            } else {
                println!("FAIL {mode} at vertex {worst} (rel err {err:.3e})");
                all_ok = false;
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}
