use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pathdensity::coloring::{
    density_profile, sweep_q, write_breakpoints_csv, write_profile_csv, write_sweep_csv, GeometricColoring,
    GrowthRate, Reordering,
};
use pathdensity::extract::{
    extract_forest, read_certificate, simple_forest_pipeline, write_certificate, ForestCertificate,
    PipelineRoute,
};
use pathdensity::graphmodel::io::{read_coloring, write_coloring};
use pathdensity::graphmodel::{Color, TotalColoredGraph};
use pathdensity::oracle::{
    faithfulness_check_prefix, gg_verify, longest_mono_path, optimal_simple_forest, GgMode,
    DEFAULT_FAITHFULNESS_CAP, DEFAULT_PATH_CAP,
};
use pathdensity::sequences::{
    choose_n, ell_minus, ell_plus, find_oscillation_t, find_oscillation_t_with_scale, oscillation,
    read_sequence, recurrence_trace, OscillationSequence, Rho,
};
use pathdensity::{Error, Result};

#[derive(Parser)]
#[command(
    name = "pathdensity",
    version,
    about = "Monochromatic path densities in 2-coloured graphs"
)]
struct Cli {
    /// Worker threads for parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the geometric colouring prefix with at least N_MIN vertices.
    Construct {
        q: GrowthRate,
        n_min: usize,
        out: PathBuf,
    },
    /// Density profile of a canonical matching under the reordering.
    Profile(ProfileArgs),
    /// Closed form and empirical maximum for several growth rates.
    Sweep {
        /// Comma-separated growth rates.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<GrowthRate>,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a dense monochromatic simple forest in a coloured graph.
    Extract(ExtractArgs),
    /// Re-validate a forest certificate against a coloured graph.
    CheckForest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Oscillation analysis of a nondecreasing sequence.
    Sequence(SequenceArgs),
    /// The scaled recurrence and its first negative term.
    Recurrence {
        #[arg(long, conflicts_with = "gamma", required_unless_present = "gamma")]
        rho: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        max_len: usize,
    },
    /// Brute-force checks on small instances.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    q: GrowthRate,
    /// Prefix size; defaults to the size of --input.
    #[arg(long)]
    n_min: Option<usize>,
    /// A colouring file that must equal the geometric prefix for --q.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ColorArg::Red)]
    color: ColorArg,
    /// Write every k instead of only the breakpoints.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    gamma: f64,
    /// Divisor of n; defaults to the least divisor that is at least 32/gamma, or n.
    #[arg(long)]
    k: Option<usize>,
    /// Extract at this threshold directly instead of running the pipeline.
    #[arg(long)]
    t: Option<usize>,
    /// Certificate destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    t: Option<f64>,
    /// Search for a threshold with this slack.
    #[arg(long, requires = "k")]
    gamma: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    /// Scale N of the search window; defaults to choose_n(gamma).
    #[arg(long)]
    n_scale: Option<f64>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    check: OracleCheck,
    /// Enumeration mode for `gg`.
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Vertex count for `gg`; largest prefix for `faithfulness`.
    #[arg(long)]
    n: Option<usize>,
    /// Largest vertex count accepted by the subset DP.
    #[arg(long)]
    cap: Option<usize>,
    /// Seed for sampled `gg`.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of colourings for sampled `gg`.
    #[arg(long)]
    samples: Option<u64>,
    /// Colouring file for `path` and `forest`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Restrict `path` and `forest` to one colour.
    #[arg(long, value_enum)]
    color: Option<ColorArg>,
    /// Horizon for `forest`; defaults to n.
    #[arg(long)]
    t: Option<usize>,
    /// Growth rate for `faithfulness`.
    #[arg(long)]
    q: Option<GrowthRate>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleCheck {
    Gg,
    Path,
    Forest,
    Faithfulness,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Red,
    Blue,
}

impl From<ColorArg> for Color {
    fn from(c: ColorArg) -> Color {
        match c {
            ColorArg::Red => Color::Red,
            ColorArg::Blue => Color::Blue,
        }
    }
}

/// Failure of a check that should hold, reported with exit code 3.
struct Alarm(String);

enum Failure {
    Lib(Error),
    Alarm(Alarm),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Lib(Error::Precondition(msg.into()))
}

fn open_graph(path: &Path) -> Result<TotalColoredGraph> {
    read_coloring(BufReader::new(File::open(path)?))
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}

fn ratio_json(r: num_rational::Ratio<u64>) -> serde_json::Value {
    json!({
        "num": r.numer(),
        "den": r.denom(),
        "value": *r.numer() as f64 / *r.denom() as f64,
    })
}

fn same_coloring(a: &TotalColoredGraph, b: &TotalColoredGraph) -> bool {
    a.n() == b.n() && a.vertex_colors() == b.vertex_colors() && a.edges().eq(b.edges())
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Construct { q, n_min, out } => {
            let c = GeometricColoring::build(q, n_min)?;
            let g = c.to_total_graph()?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_coloring(&g, &mut w)?;
            w.flush()?;
            emit(json!({
                "command": "construct",
                "q": q.to_string(),
                "n": c.n(),
                "blocks": c.block_sizes(),
                "out": out,
            }));
        }
        Command::Profile(args) => {
            let n_min = match (&args.input, args.n_min) {
                (Some(path), _) => {
                    let g = open_graph(path)?;
                    let c = GeometricColoring::build(args.q, g.n())?;
                    if !same_coloring(&g, &c.to_total_graph()?) {
                        return Err(usage(format!(
                            "{} is not the geometric colouring for q = {}",
                            path.display(),
                            args.q
                        )));
                    }
                    g.n()
                }
                (None, Some(n)) => n,
                (None, None) => return Err(usage("either --input or --n-min is required")),
            };
            let c = GeometricColoring::build(args.q, n_min)?;
            let (mr, mb) = c.matchings()?;
            let f = Reordering::from_matchings(&c, &mr, &mb);
            let m = match Color::from(args.color) {
                Color::Red => &mr,
                Color::Blue => &mb,
            };
            let p = density_profile(&c, m, &f)?;
            {
                let mut w = output(args.out.as_ref())?;
                if args.all {
                    write_profile_csv(&p, &mut w)?;
                } else {
                    write_breakpoints_csv(&p, &mut w)?;
                }
                w.flush()?;
            }
            if args.out.is_some() {
                let best = p.max_breakpoint();
                emit(json!({
                    "command": "profile",
                    "q": args.q.to_string(),
                    "n": c.n(),
                    "blocks": c.num_levels(),
                    "breakpoints": p.breakpoints().len(),
                    "max_breakpoint": best.map(|b| json!({"t": b.t, "k": b.k, "density": ratio_json(b.value)})),
                    "closed_form": args.q.density_bound()?.to_f64(),
                }));
            }
        }
        Command::Sweep { q, n_min, out } => {
            let rows = sweep_q(&q, n_min)?;
            let mut w = output(out.as_ref())?;
            write_sweep_csv(&rows, &mut w)?;
            w.flush()?;
        }
        Command::Extract(args) => extract(args)?,
        Command::CheckForest { input, cert } => {
            let g = open_graph(&input)?;
            let c = read_certificate(BufReader::new(File::open(&cert)?))?;
            c.check(&g)?;
            emit(json!({
                "command": "check-forest",
                "valid": true,
                "color": c.forest.color.to_string(),
                "horizon": c.horizon,
                "density": ratio_json(c.density),
            }));
        }
        Command::Sequence(args) => {
            let values = read_sequence(BufReader::new(File::open(&args.input)?))?;
            let s = OscillationSequence::new(values)?;
            let osc = oscillation(&s)?;
            let mut report = json!({
                "command": "sequence",
                "len": s.len(),
                "oscillation": osc.value,
                "i": osc.i,
                "j": osc.j,
            });
            if let Some(t) = args.t {
                report["t"] = json!(t);
                report["lplus"] = json!(ell_plus(&s, t)?);
                report["lminus"] = json!(ell_minus(&s, t)?);
            }
            if let (Some(gamma), Some(k)) = (args.gamma, args.k) {
                let found = match args.n_scale {
                    Some(n) => find_oscillation_t_with_scale(&s, k, gamma, n)?,
                    None => find_oscillation_t(&s, k, gamma)?,
                };
                report["search"] = json!({
                    "gamma": gamma,
                    "k": k,
                    "t": found.t,
                    "lplus": found.lplus,
                    "lminus": found.lminus,
                    "ratio": found.ell() as f64 / found.t,
                    "target": found.rho + 1.0,
                });
            }
            emit(report);
        }
        Command::Recurrence { rho, gamma, max_len } => {
            let (r, chosen) = match (rho, gamma) {
                (Some(x), _) => (Rho::from_f64(x)?, None),
                (None, Some(g)) => {
                    let c = choose_n(g)?;
                    (c.rho.clone(), Some(c))
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            let trace = recurrence_trace(&r, max_len)?;
            emit(json!({
                "command": "recurrence",
                "rho": r.to_string(),
                "rho_value": r.to_f64(),
                "terms": trace.values.len(),
                "first_negative": trace.first_negative,
                "choose_n": chosen.map(|c| json!({"m": c.m, "n": c.n.to_string()})),
            }));
        }
        Command::Oracle(args) => oracle(args)?,
    }
    Ok(())
}

fn default_k(n: usize, gamma: f64) -> usize {
    let least = (32.0 / gamma).ceil() as usize;
    (least.max(1)..=n).find(|&k| n.is_multiple_of(k)).unwrap_or(n)
}

fn extract(args: ExtractArgs) -> std::result::Result<(), Failure> {
    let g = open_graph(&args.input)?;
    let (cert, summary) = match args.t {
        Some(t) => {
            let e = extract_forest(&g, t)?;
            let summary = json!({
                "command": "extract",
                "mode": "threshold",
                "t": t,
                "lplus": e.lplus,
                "lminus": e.lminus,
                "horizon": e.horizon,
                "density": ratio_json(e.density),
                "bound": ratio_json(e.bound),
            });
            (ForestCertificate::new(e.forest, e.horizon)?, summary)
        }
        None => {
            let k = args.k.unwrap_or_else(|| default_k(g.n(), args.gamma));
            let r = simple_forest_pipeline(&g, k, args.gamma)?;
            let summary = json!({
                "command": "extract",
                "mode": "pipeline",
                "route": match r.route {
                    PipelineRoute::Forest => "forest",
                    PipelineRoute::Oscillation => "oscillation",
                },
                "k": r.k,
                "N": r.n_scale,
                "gamma": r.gamma,
                "t": r.t,
                "t_real": r.t_real,
                "horizon": r.horizon,
                "density": ratio_json(r.density),
                "target": r.target(),
                "preconditions_met": r.preconditions_met(),
                "notes": r.notes,
            });
            (ForestCertificate::new(r.forest, r.horizon)?, summary)
        }
    };
    cert.check(&g)?;
    {
        let mut w = output(args.out.as_ref())?;
        write_certificate(&cert, &mut w)?;
        w.flush()?;
    }
    if args.out.is_some() {
        emit(summary);
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn oracle(args: OracleArgs) -> std::result::Result<(), Failure> {
    let graph = || -> std::result::Result<TotalColoredGraph, Failure> {
        let path = args.input.as_ref().ok_or_else(|| usage("--input is required"))?;
        Ok(open_graph(path)?)
    };
    match args.check {
        OracleCheck::Gg => {
            let n = args.n.ok_or_else(|| usage("--n is required"))?;
            let mode = match args.mode {
                ModeArg::Exhaustive => GgMode::Exhaustive,
                ModeArg::Sampled => GgMode::Sampled {
                    samples: args.samples.ok_or_else(|| usage("--samples is required"))?,
                    seed: args
                        .seed
                        .ok_or_else(|| usage("--seed is required for sampling"))?,
                },
            };
            let report = gg_verify(n, mode, args.cap.unwrap_or(DEFAULT_PATH_CAP))?;
            emit(serde_json::to_value(&report).expect("serializable"));
            if !report.holds {
                return Err(Failure::Alarm(Alarm(format!("bound fails for n = {n}"))));
            }
        }
        OracleCheck::Path => {
            let g = graph()?;
            let cap = args.cap.unwrap_or(DEFAULT_PATH_CAP);
            let colors = match args.color {
                Some(c) => vec![Color::from(c)],
                None => vec![Color::Red, Color::Blue],
            };
            for color in colors {
                let p = longest_mono_path(&g, color, cap)?;
                emit(json!({
                    "check": "path",
                    "color": color.to_string(),
                    "length": p.len(),
                    "path": p.path,
                }));
            }
        }
        OracleCheck::Forest => {
            let g = graph()?;
            let t = args.t.unwrap_or(g.n());
            let colors = match args.color {
                Some(c) => vec![Color::from(c)],
                None => vec![Color::Red, Color::Blue],
            };
            for color in colors {
                let o = optimal_simple_forest(&g, color, t)?;
                emit(json!({
                    "check": "forest",
                    "color": color.to_string(),
                    "t": t,
                    "coverage": o.coverage,
                    "edges": o.forest.edges.len(),
                    "isolated": o.forest.isolated.len(),
                }));
            }
        }
        OracleCheck::Faithfulness => {
            let q = args.q.ok_or_else(|| usage("--q is required"))?;
            let n = args.n.ok_or_else(|| usage("--n is required"))?;
            let cap = args.cap.unwrap_or(DEFAULT_FAITHFULNESS_CAP);
            let c = GeometricColoring::covering(q, n)?;
            let mut failed = None;
            for m in 1..=n {
                let report = faithfulness_check_prefix(&c, m, cap)?;
                emit(serde_json::to_value(&report).expect("serializable"));
                if !report.holds && failed.is_none() {
                    failed = Some(m);
                }
            }
            if let Some(m) = failed {
                return Err(Failure::Alarm(Alarm(format!(
                    "faithfulness fails on the prefix {m}"
                ))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Alarm(Alarm(msg))) => {
            eprintln!("alarm: {msg}");
            ExitCode::from(3)
        }
    }
}
