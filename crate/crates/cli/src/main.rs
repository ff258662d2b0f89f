use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use isdc::harness::{
    self, burgers_matrix, heat_matrix, pretty_table, run_ablation, run_matrix, run_order_study, ExperimentSpec,
    OrderStudySpec, ProblemKind, ResultRow,
};
use isdc::{GuessPolicy, SweepMode};

#[derive(Parser)]
#[command(name = "isdc-bench", version, about = "SDC / ISDC V-cycle accounting benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full (ν, M) × {SDC, ISDC} matrix for one or both problems.
    Matrix {
        #[command(flatten)]
        opts: Opts,
        /// Run both the heat and the Burgers matrix.
        #[arg(long)]
        all: bool,
    },
    /// Runs one spec under every initial-guess policy.
    Ablation {
        #[command(flatten)]
        opts: Opts,
    },
    /// Temporal convergence order of fixed-sweep SDC on the heat problem.
    Order {
        #[command(flatten)]
        opts: Opts,
        /// Final time of the integration.
        #[arg(long, default_value_t = 0.04)]
        final_time: f64,
    },
    /// A single run.
    Single {
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Clone)]
struct Opts {
    /// key=value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<ProblemKind>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    nodes: Option<usize>,
    /// `sdc` or `isdc`
    #[arg(long)]
    mode: Option<SweepMode>,
    #[arg(long = "l-cycles")]
    l_cycles: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    /// Mesh points per unit length.
    #[arg(long)]
    grid: Option<usize>,
    /// Outer residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// previous-sweep | zero | previous-node
    #[arg(long)]
    guess: Option<GuessPolicy>,
    /// CSV output path (stdout table only when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write full statistics as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl Opts {
    /// Spec from defaults, then the config file, then flags.
    fn spec(&self) -> Result<(ExperimentSpec, Option<PathBuf>)> {
        let mut spec = ExperimentSpec::default();
        let mut out = None;
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            for (k, v) in spec.apply_config(&text)? {
                match k.as_str() {
                    "out" => out = Some(PathBuf::from(v)),
                    _ => anyhow::bail!("unknown config key '{k}'"),
                }
            }
        }
        if let Some(v) = self.problem {
            spec.problem = v;
        }
        if let Some(v) = self.nu {
            spec.nu = v;
        }
        if let Some(v) = self.nodes {
            spec.nodes = v;
        }
        if let Some(v) = self.mode {
            spec.mode = v;
        }
        if let Some(v) = self.l_cycles {
            spec.l_cycles = v;
        }
        if let Some(v) = self.dt {
            spec.dt = v;
        }
        if let Some(v) = self.grid {
            spec.grid = v;
        }
        if let Some(v) = self.tol {
            spec.residual_tol = v;
        }
        if let Some(v) = self.guess {
            spec.guess = v;
        }
        Ok((spec, self.out.clone().or(out)))
    }

    /// Whether a matrix axis was pinned by a flag.
    fn pins(&self) -> (bool, bool, bool) {
        (self.nu.is_some(), self.nodes.is_some(), self.mode.is_some())
    }
}

fn emit(rows: &[ResultRow], out: Option<PathBuf>, json: Option<&PathBuf>) -> Result<()> {
    print!("{}", pretty_table(rows));
    if let Some(path) = out {
        let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        harness::write_csv(BufWriter::new(f), rows)?;
        eprintln!("wrote {}", path.display());
    }
    if let Some(path) = json {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        harness::write_json(BufWriter::new(f), rows)?;
    }
    Ok(())
}

fn matrix(opts: &Opts, all: bool) -> Result<()> {
    let (base, out) = opts.spec()?;
    let mut specs = match (all, base.problem) {
        (true, _) => [heat_matrix(), burgers_matrix()].concat(),
        (false, ProblemKind::Heat) => heat_matrix(),
        (false, ProblemKind::Burgers) => burgers_matrix(),
    };
    let (pin_nu, pin_m, pin_mode) = opts.pins();
    specs.retain(|s| (!pin_nu || s.nu == base.nu) && (!pin_m || s.nodes == base.nodes) && (!pin_mode || s.mode == base.mode));
    for s in &mut specs {
        let (problem, nu, nodes, mode, l) = (s.problem, s.nu, s.nodes, s.mode, s.l_cycles);
        *s = base.clone();
        s.problem = problem;
        s.nu = nu;
        s.nodes = nodes;
        s.mode = mode;
        s.l_cycles = if opts.l_cycles.is_some() { base.l_cycles } else { l };
    }
    emit(&run_matrix(&specs), out, opts.json.as_ref())
}

fn ablation(opts: &Opts) -> Result<()> {
    let (mut spec, out) = opts.spec()?;
    spec.mode = SweepMode::IsdcFixed;
    let report = run_ablation(&spec)?;
    println!("{:<6} {:<14} {:>10} {:>7} {:>9}", "mode", "guess", "cycles", "sweeps", "converged");
    for e in &report.entries {
        println!(
            "{:<6} {:<14} {:>10} {:>7} {:>9}",
            e.mode.to_string(),
            e.guess.to_string(),
            e.row.inner_cycles().map_or("-".into(), |c| c.to_string()),
            e.row.sweeps().map_or("-".into(), |c| c.to_string()),
            e.row.converged()
        );
    }
    let rows = report.rows();
    if let Some(path) = out {
        harness::write_csv(BufWriter::new(File::create(&path)?), &rows)?;
    }
    if let Some(path) = &opts.json {
        harness::write_json(BufWriter::new(File::create(path)?), &rows)?;
    }
    Ok(())
}

fn order(opts: &Opts, final_time: f64) -> Result<()> {
    let (spec, out) = opts.spec()?;
    let mut study = OrderStudySpec {
        final_time,
        ..OrderStudySpec::default()
    };
    if opts.nu.is_some() {
        study.nu = spec.nu;
    }
    if opts.nodes.is_some() {
        study.nodes = spec.nodes;
    }
    if opts.grid.is_some() {
        study.grid = spec.grid;
    }
    if let Some(dt) = opts.dt {
        study.dts = vec![4.0 * dt, 2.0 * dt, dt];
    }
    let table = run_order_study(&study)?;
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "{:>2} {:>10} {:>14} {:>14} {:>7}", "K", "dt", "temporal_err", "total_err", "order")?;
    for r in &table.rows {
        writeln!(
            stdout,
            "{:>2} {:>10.3e} {:>14.4e} {:>14.4e} {:>7}",
            r.sweeps,
            r.dt,
            r.temporal_error,
            r.total_error,
            r.observed_order.map_or("-".into(), |p| format!("{p:.2}"))
        )?;
    }
    writeln!(stdout, "spatial error floor: {:.4e}", table.spatial_floor)?;
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(&path)?);
        writeln!(w, "sweeps,dt,temporal_error,total_error,observed_order")?;
        for r in &table.rows {
            writeln!(
                w,
                "{},{:e},{:e},{:e},{}",
                r.sweeps,
                r.dt,
                r.temporal_error,
                r.total_error,
                r.observed_order.map_or(String::new(), |p| p.to_string())
            )?;
        }
    }
    if let Some(path) = &opts.json {
        serde_json::to_writer_pretty(BufWriter::new(File::create(path)?), &table)?;
    }
    Ok(())
}

fn single(opts: &Opts) -> Result<()> {
    let (spec, out) = opts.spec()?;
    emit(&run_matrix(&[spec]), out, opts.json.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Matrix { opts, all } => matrix(opts, *all),
        Command::Ablation { opts } => ablation(opts),
        Command::Order { opts, final_time } => order(opts, *final_time),
        Command::Single { opts } => single(opts),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
