#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pbgsim::band::{is_near_edge, normalized_pump_ratio};
use pbgsim::fock::{EngineConfig, Integrator};
use pbgsim::harness::{
    compare_engines, format_number, parse_grid, parse_pump, read_spec, run_figure, run_sweep,
    shape_check, write_comparison, write_csv, write_record, Engine, FigureName, FigureOverrides,
    Quantity, RunRecord, SweepSpec,
};
use pbgsim::validation;

const OUT_DIR_ENV: &str = "PBGSIM_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "pbgsim",
    version,
    about = "Emitter-radiation entanglement near a photonic band edge"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the band dispersion and the relative pump strength.
    Dispersion {
        /// k/k0 grid, `start:stop:step` or a comma list.
        #[arg(long, default_value = "0.75:1.25:0.005")]
        k: String,
        /// Band-edge frequency.
        #[arg(long, default_value_t = 1.0)]
        omega_c: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Run a sweep over (tau, k/k0).
    Sweep {
        /// TOML sweep specification; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        sweep: SweepFlags,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        out: Output,
    },
    /// Reproduce a figure's data (fig1, fig2, fig3, fig5, fig6, fig7).
    Figure {
        name: String,
        #[command(flatten)]
        sweep: SweepFlags,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        out: Output,
    },
    /// Compare the parametric solution with the trilinear model for a coherent pump.
    Compare {
        #[arg(long, default_value = "0:1:0.05")]
        tau: String,
        /// Coherent pump amplitude.
        #[arg(long, default_value_t = 10.0)]
        gamma: f64,
        /// Trilinear coupling; defaults to 1/gamma.
        #[arg(long)]
        g: Option<f64>,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        out: Output,
    },
    /// Run the reference checks; exits with status 2 if any fails.
    Check,
}

#[derive(Args, Default)]
struct SweepFlags {
    /// tau grid, `start:stop:step` or a comma list.
    #[arg(long)]
    tau: Option<String>,
    /// k/k0 grid, `start:stop:step` or a comma list.
    #[arg(long)]
    k: Option<String>,
    /// analytic, bilinear or trilinear.
    #[arg(long)]
    engine: Option<Engine>,
    /// coherent:<gamma> or fock:<n>.
    #[arg(long)]
    pump: Option<String>,
    /// Comma list of n_r, n_a, mandel, duan, ec, dispersion.
    #[arg(long)]
    outputs: Option<String>,
}

#[derive(Args, Default)]
struct EngineFlags {
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// eigendecomposition or fixed-step-unitary.
    #[arg(long)]
    integrator: Option<String>,
    #[arg(long)]
    max_step: Option<f64>,
}

#[derive(Args)]
struct Output {
    /// Output file; defaults to a name under the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output directory (also read from PBGSIM_OUT_DIR).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Write the table to standard output instead of a file.
    #[arg(long)]
    stdout: bool,
}

impl Output {
    fn path(&self, default_name: &str) -> PathBuf {
        if let Some(p) = &self.out {
            return p.clone();
        }
        let dir = self
            .out_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        dir.join(default_name)
    }
}

impl EngineFlags {
    fn apply(&self, cfg: &mut EngineConfig) -> pbgsim::Result<()> {
        if self.cutoff.is_some() {
            cfg.cutoff = self.cutoff;
        }
        if self.n_max.is_some() {
            cfg.n_max = self.n_max;
        }
        if let Some(t) = self.tolerance {
            cfg.tolerance = t;
        }
        if let Some(s) = self.max_step {
            cfg.max_step = s;
        }
        if let Some(i) = &self.integrator {
            cfg.integrator = match i.as_str() {
                "eigendecomposition" => Integrator::Eigendecomposition,
                "fixed-step-unitary" => Integrator::FixedStepUnitary,
                other => {
                    return Err(pbgsim::Error::InvalidSpec(format!(
                        "unknown integrator `{other}`"
                    )))
                }
            };
        }
        cfg.validate()
    }
}

impl SweepFlags {
    fn apply(&self, spec: &mut SweepSpec) -> pbgsim::Result<()> {
        if let Some(t) = &self.tau {
            spec.tau_grid = parse_grid(t)?;
        }
        if let Some(k) = &self.k {
            spec.k_ratio_grid = parse_grid(k)?;
        }
        if let Some(e) = self.engine {
            spec.engine = e;
        }
        if let Some(p) = &self.pump {
            spec.pump = parse_pump(p)?;
        }
        if let Some(o) = &self.outputs {
            spec.outputs = o
                .split(',')
                .map(str::parse)
                .collect::<pbgsim::Result<Vec<Quantity>>>()?;
        }
        Ok(())
    }
}

enum Failure {
    Usage(String),
    Check,
}

impl From<pbgsim::Error> for Failure {
    fn from(e: pbgsim::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit_record(record: &RunRecord, out: &Output, default_name: &str) -> pbgsim::Result<()> {
    if out.stdout {
        return write_csv(record, io::stdout().lock());
    }
    let path = out.path(default_name);
    let meta = write_record(record, &path)?;
    eprintln!("wrote {} and {}", path.display(), meta.display());
    Ok(())
}

fn write_to(
    out: &Output,
    default_name: &str,
    f: impl FnOnce(&mut dyn Write) -> pbgsim::Result<()>,
) -> pbgsim::Result<()> {
    if out.stdout {
        return f(&mut io::stdout().lock());
    }
    let path = out.path(default_name);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    f(&mut std::fs::File::create(&path)?)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn dispersion(k: &str, omega_c: f64, out: &Output) -> pbgsim::Result<()> {
    if !(omega_c > 0.0) || !omega_c.is_finite() {
        return Err(pbgsim::Error::InvalidSpec(format!(
            "omega_c must be positive, got {omega_c}"
        )));
    }
    let grid = parse_grid(k)?;
    write_to(out, "dispersion.csv", |w| {
        let mut csv = csv_writer(w);
        csv.write_record(["k_ratio", "omega_k", "pump_ratio", "near_edge"])?;
        for &k in &grid {
            let dk = k - 1.0;
            csv.write_record([
                format_number(k),
                format_number(omega_c * (1.0 + dk * dk)),
                format_number(normalized_pump_ratio(k)?),
                is_near_edge(k).to_string(),
            ])?;
        }
        csv.flush()?;
        Ok(())
    })
}

fn csv_writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(w)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Dispersion { k, omega_c, out } => dispersion(&k, omega_c, &out)?,
        Command::Sweep {
            config,
            sweep,
            engine,
            out,
        } => {
            let mut spec = match &config {
                Some(path) => read_spec(path)?,
                None => SweepSpec::default(),
            };
            sweep.apply(&mut spec)?;
            engine.apply(&mut spec.engine_config)?;
            let record = run_sweep(&spec)?;
            for e in &record.metadata.engine_errors {
                log::warn!("{e}");
            }
            emit_record(&record, &out, "sweep.csv")?;
        }
        Command::Figure {
            name,
            sweep,
            engine,
            out,
        } => {
            let name: FigureName = name.parse()?;
            let overrides = figure_overrides(&sweep, &engine)?;
            let record = run_figure(name, &overrides)?;
            if let Err(msg) = shape_check(name, &record) {
                log::warn!("shape check: {msg}");
            }
            emit_record(&record, &out, &format!("{name}.csv"))?;
        }
        Command::Compare {
            tau,
            gamma,
            g,
            engine,
            out,
        } => {
            let mut cfg = EngineConfig::default();
            engine.apply(&mut cfg)?;
            let g = g.unwrap_or(1.0 / gamma);
            let rows = compare_engines(&parse_grid(&tau)?, gamma, g, &cfg)?;
            write_to(&out, "compare.csv", |w| write_comparison(&rows, w))?;
        }
        Command::Check => {
            let outcomes = validation::run_all();
            for o in &outcomes {
                println!("{o}");
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn figure_overrides(sweep: &SweepFlags, engine: &EngineFlags) -> pbgsim::Result<FigureOverrides> {
    if sweep.outputs.is_some() {
        return Err(pbgsim::Error::InvalidSpec(
            "a figure fixes its own outputs".into(),
        ));
    }
    let engine_config = if has_engine_flags(engine) {
        let mut cfg = EngineConfig::default();
        engine.apply(&mut cfg)?;
        Some(cfg)
    } else {
        None
    };
    Ok(FigureOverrides {
        tau_grid: sweep.tau.as_deref().map(parse_grid).transpose()?,
        k_ratio_grid: sweep.k.as_deref().map(parse_grid).transpose()?,
        engine: sweep.engine,
        pump: sweep.pump.as_deref().map(parse_pump).transpose()?,
        engine_config,
    })
}

fn has_engine_flags(e: &EngineFlags) -> bool {
    e.cutoff.is_some()
        || e.n_max.is_some()
        || e.tolerance.is_some()
        || e.integrator.is_some()
        || e.max_step.is_some()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(2),
    }
}
