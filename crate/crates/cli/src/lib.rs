//! `mcn` command-line driver.
//!
//! Exit codes: 0 on success, 2 for argument and validation errors, 3 for
//! congruence systems whose moduli are not pairwise coprime. Every failure
//! writes one `error: ...` line to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcn_core::io::{histogram_csv, read_edge_list, write_edge_list, EdgeListHeader};
use mcn_core::layer::average_degree_over_sources;
use mcn_core::robustness::p_grid;
use mcn_core::{
    attack_curve, average_degree, build_layer, empirical_distribution, generate_static_sf,
    min_drivers_exact, min_drivers_matching, solve_garner, solve_graphical,
    theoretical_average_degree, AttackStrategy, Congruence, CongruenceSystem, Digraph, Error,
    LayerSpec, StaticModelSpec, Weighting,
};
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "mcn", version, about = "Multiplex congruence network toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the edge list of layer G(r, N).
    Build {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Out-degree histogram and average-degree figures of G(r, N).
    Stats {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: u64,
        /// Histogram CSV destination; appended to stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Minimum driver-node report as JSON.
    Control {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = ControlChoice::Matching)]
        method: ControlChoice,
        /// Seed for the random link weights used by the exact method.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Driver density under random or targeted node removal.
    Attack {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum)]
        strategy: StrategyChoice,
        #[arg(long, default_value_t = 0.5)]
        pmax: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Curve CSV destination; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Directed static-model scale-free graph.
    Sf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        kbar: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve simultaneous congruences given as "<r> mod <m>".
    Crt {
        #[arg(required = true, value_name = "CONGRUENCE")]
        items: Vec<String>,
        #[arg(long, value_enum, default_value_t = CrtChoice::Both)]
        method: CrtChoice,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
struct GraphSource {
    #[arg(long, requires = "n", conflicts_with = "input")]
    r: Option<u64>,
    #[arg(long, requires = "r", conflicts_with = "input")]
    n: Option<u64>,
    /// Edge-list file produced by `build` or `sf`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ControlChoice {
    Exact,
    Matching,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyChoice {
    Random,
    Targeted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CrtChoice {
    Graph,
    Garner,
    Both,
}

/// Parses `args` (program name first) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = target.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_infeasible() {
                EXIT_INFEASIBLE
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Loads the graph and a short descriptor of where it came from.
fn load(source: &GraphSource) -> Result<(Digraph, String), Error> {
    match (&source.input, source.r, source.n) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path)?;
            let (header, g) = read_edge_list(&text)?;
            let descriptor = match header {
                EdgeListHeader::Mcn { r, n } => format!("mcn r={r} n={n}"),
                EdgeListHeader::Sf { gamma, n, seed } => format!("sf gamma={gamma} n={n} seed={seed}"),
                EdgeListHeader::Other(_) => format!("file {}", path.display()),
            };
            Ok((g, descriptor))
        }
        (None, Some(r), Some(n)) => {
            let spec = LayerSpec::new(r, n)?;
            Ok((build_layer(spec), format!("mcn r={r} n={n}")))
        }
        _ => Err(Error::Validation("give either --r and --n, or --input".into())),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Build { r, n, out: path } => {
            let spec = LayerSpec::new(r, n)?;
            let text = write_edge_list(&build_layer(spec), &EdgeListHeader::for_layer(spec));
            emit(path.as_deref(), &text, out)
        }
        Command::Stats { r, n, csv } => {
            let spec = LayerSpec::new(r, n)?;
            let g = build_layer(spec);
            let hist = empirical_distribution(&g);
            let summary = json!({
                "r": r,
                "n": n,
                "n_nodes": g.node_count(),
                "n_edges": g.edge_count(),
                "avg_degree": average_degree(&g),
                "avg_degree_over_sources": average_degree_over_sources(&g),
                "theoretical_avg_degree": theoretical_average_degree(spec),
            });
            writeln!(out, "{summary}")?;
            emit(csv.as_deref(), &histogram_csv(&hist, r), out)
        }
        Command::Control { source, method, seed } => {
            let (g, _) = load(&source)?;
            if matches!(method, ControlChoice::Exact | ControlChoice::Both) {
                let rep = min_drivers_exact(&g, Weighting::Random { seed });
                writeln!(out, "{}", rep.to_json())?;
            }
            if matches!(method, ControlChoice::Matching | ControlChoice::Both) {
                writeln!(out, "{}", min_drivers_matching(&g).to_json())?;
            }
            Ok(())
        }
        Command::Attack { source, strategy, pmax, steps, trials, seed, csv } => {
            let (g, descriptor) = load(&source)?;
            let strategy = match strategy {
                StrategyChoice::Random => AttackStrategy::Random,
                StrategyChoice::Targeted => AttackStrategy::Targeted,
            };
            let grid = p_grid(pmax, steps)?;
            let curve = attack_curve(&g, strategy, &grid, trials, seed, descriptor)?;
            let text = format!(
                "# attack source={} strategy={} trials={} seed={}\n{}",
                curve.source,
                strategy.as_str(),
                curve.points.first().map_or(0, |p| p.trials),
                seed,
                curve.to_csv()
            );
            emit(csv.as_deref(), &text, out)
        }
        Command::Sf { n, gamma, kbar, seed, out: path } => {
            let spec = StaticModelSpec::new(n, gamma, kbar, seed)?;
            let g = generate_static_sf(&spec)?;
            let text = write_edge_list(&g, &EdgeListHeader::for_static_model(&spec));
            emit(path.as_deref(), &text, out)
        }
        Command::Crt { items, method } => {
            let parsed = items
                .iter()
                .map(|s| s.parse::<Congruence>())
                .collect::<Result<Vec<_>, _>>()?;
            let sys = CongruenceSystem::new(parsed)?;
            if matches!(method, CrtChoice::Graph | CrtChoice::Both) {
                writeln!(out, "{}", solve_graphical(&sys)?.to_json())?;
            }
            if matches!(method, CrtChoice::Garner | CrtChoice::Both) {
                writeln!(out, "{}", solve_garner(&sys)?.to_json())?;
            }
            Ok(())
        }
    }
}
