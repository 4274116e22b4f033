//! `lssp`: transpile Clifford+T circuits and schedule them on surface-code
//! layouts.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lssp_core::dependency::DependencyRule;
use lssp_core::io::json::MetricsJson;
use lssp_core::io::{emit_circuit, gen_random, parse_circuit, parse_layout_json, schedule_to_json, RandomSpec};
use lssp_core::layout::{assign_qubits, build_layout, AssignPolicy, LayoutSpec, LayoutStyle};
use lssp_core::oracle::exact::exact_min_steps;
use lssp_core::scheduler::{schedule, ScheduleOptions};
use lssp_core::transpiler::{optimize_fixpoint, transpile};
use lssp_core::{Circuit, CliffordTableau, Error, RotationAngle};

#[derive(Parser)]
#[command(name = "lssp", version, about = "Clifford+T transpilation and lattice-surgery scheduling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a Clifford+T gate file to the rotation format.
    Convert {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Push Cliffords to the end of a circuit, leaving π/8 rotations and measurements.
    Transpile {
        input: PathBuf,
        /// Repeat commuting-layer merging until the π/8 count stops dropping.
        #[arg(long)]
        fixpoint: bool,
        /// Also write the final Clifford tableau as JSON.
        #[arg(long)]
        tableau: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random π/8 circuit followed by Z measurements.
    GenRandom {
        #[arg(short = 'm', long = "length")]
        m: usize,
        #[arg(short = 'N', long = "qubits")]
        n: usize,
        #[arg(long)]
        npct: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Schedule a circuit and write the schedule JSON.
    Schedule {
        input: PathBuf,
        #[command(flatten)]
        sched: SchedArgs,
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Schedule a circuit before and after transpilation.
    Compare {
        input: PathBuf,
        #[arg(long)]
        fixpoint: bool,
        #[command(flatten)]
        sched: SchedArgs,
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// CSV sweep over random circuits and dependency rules.
    Report(report::ReportArgs),
    /// Exact minimum step count for tiny instances.
    #[command(hide = true)]
    Oracle {
        input: PathBuf,
        #[arg(long, default_value = "general")]
        rule: DependencyRule,
        #[arg(long)]
        allow_shared_data: bool,
        #[command(flatten)]
        layout: LayoutArgs,
    },
}

#[derive(Args, Clone)]
struct SchedArgs {
    #[arg(long, default_value = "general")]
    rule: DependencyRule,
    /// Shuffle each step's candidates with this seed.
    #[arg(long)]
    order_seed: Option<u64>,
    /// Let simultaneous operations share data qubits.
    #[arg(long)]
    allow_shared_data: bool,
    /// `sequential` or `random:<seed>`.
    #[arg(long, default_value = "sequential")]
    assign: AssignPolicy,
    /// Write null timings so output is reproducible byte for byte.
    #[arg(long)]
    omit_timing: bool,
}

impl SchedArgs {
    fn options(&self) -> ScheduleOptions {
        ScheduleOptions {
            rule: self.rule,
            order_seed: self.order_seed,
            allow_shared_data: self.allow_shared_data,
            assign: self.assign,
            cache_capacity: None,
        }
    }
}

#[derive(Args, Clone)]
struct LayoutArgs {
    /// Layout as a JSON object or a path to one.
    #[arg(long, conflicts_with_all = ["style", "aisles", "patches"])]
    layout: Option<String>,
    #[arg(long)]
    style: Option<LayoutStyle>,
    #[arg(long, requires = "patches")]
    aisles: Option<usize>,
    #[arg(long, requires = "aisles")]
    patches: Option<usize>,
    #[arg(long, default_value_t = 3)]
    n_storage: usize,
    /// Defaults to one if the circuit has π/4 rotations, else zero.
    #[arg(long)]
    n_ancillary: Option<usize>,
}

impl LayoutArgs {
    fn resolve(&self, c: &Circuit) -> Result<LayoutSpec, CliError> {
        if let Some(text) = &self.layout {
            let json = if text.trim_start().starts_with('{') {
                text.clone()
            } else {
                read_text(Path::new(text))?
            };
            return Ok(parse_layout_json(&json)?);
        }
        let needs_ancillary = c
            .ops()
            .iter()
            .any(|r| matches!(r.angle, RotationAngle::PlusPi4 | RotationAngle::MinusPi4));
        let n_ancillary = self.n_ancillary.unwrap_or(usize::from(needs_ancillary));
        let spec = match (self.aisles, self.patches) {
            (Some(a), Some(p)) => LayoutSpec::new(
                self.style.unwrap_or(LayoutStyle::Parallelizable),
                a,
                p,
                self.n_storage,
                n_ancillary,
            ),
            _ => {
                let mut s = LayoutSpec::auto(c.num_qubits(), self.n_storage, n_ancillary);
                if self.style == Some(LayoutStyle::Compact) {
                    s.style = LayoutStyle::Compact;
                }
                s
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Parse { .. } => 3,
                Error::Validation(_) => 4,
                Error::Dimension { .. } => 5,
                Error::UnsupportedAngle(_) => 6,
                Error::Capacity(_) => 7,
                Error::Scheduling { .. } => 8,
                Error::Invariant(_) => 9,
                Error::Domain(_) => 10,
            },
            CliError::Io(_) => 11,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) => m.clone(),
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn load_circuit(path: &Path) -> Result<Circuit, CliError> {
    Ok(parse_circuit(&read_text(path)?)?)
}

fn tableau_json(t: &CliffordTableau) -> serde_json::Value {
    let n = t.num_qubits();
    json!({
        "qubits": n,
        "x_images": (0..n).map(|q| t.x_image(q).to_string()).collect::<Vec<_>>(),
        "z_images": (0..n).map(|q| t.z_image(q).to_string()).collect::<Vec<_>>(),
    })
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Convert { input, output } => {
            let c = load_circuit(&input)?;
            write_out(output.as_deref(), &emit_circuit(&c))
        }
        Command::Transpile {
            input,
            fixpoint,
            tableau,
            output,
        } => {
            let c = load_circuit(&input)?;
            let (out, t) = if fixpoint { optimize_fixpoint(&c)? } else { transpile(&c)? };
            if let Some(p) = tableau {
                write_out(Some(&p), &pretty(&tableau_json(&t)))?;
            }
            write_out(output.as_deref(), &emit_circuit(&out))
        }
        Command::GenRandom {
            m,
            n,
            npct,
            seed,
            output,
        } => {
            let c = gen_random(&RandomSpec { m, n, n_pct: npct, seed })?;
            let text = format!("# gen-random -m {m} -N {n} --npct {npct} --seed {seed}\n{}", emit_circuit(&c));
            write_out(output.as_deref(), &text)
        }
        Command::Schedule {
            input,
            sched,
            layout,
            output,
        } => {
            let c = load_circuit(&input)?;
            let g = build_layout(&layout.resolve(&c)?)?;
            let (s, r) = schedule(&c, &g, &sched.options())?;
            write_out(output.as_deref(), &(schedule_to_json(&s, &r, !sched.omit_timing) + "\n"))
        }
        Command::Compare {
            input,
            fixpoint,
            sched,
            layout,
            output,
        } => {
            let raw = load_circuit(&input)?;
            let (tc, _) = if fixpoint { optimize_fixpoint(&raw)? } else { transpile(&raw)? };
            // one layout for both, sized for the raw circuit
            let g = build_layout(&layout.resolve(&raw)?)?;
            let opts = sched.options();
            let (_, before) = schedule(&raw, &g, &opts)?;
            let (_, after) = schedule(&tc, &g, &opts)?;
            let timing = !sched.omit_timing;
            // percentage of the raw step count saved; an empty circuit saves nothing
            let reduction = if before.en == 0 {
                0.0
            } else {
                100.0 * (before.en as f64 - after.en as f64) / before.en as f64
            };
            let v = json!({
                "rule": opts.rule.name(),
                "layout": g.spec(),
                "before": {
                    "ops": raw.len(),
                    "pi8_count": raw.pi8_count(),
                    "metrics": MetricsJson::from_report(&before, timing),
                },
                "after": {
                    "ops": tc.len(),
                    "pi8_count": tc.pi8_count(),
                    "metrics": MetricsJson::from_report(&after, timing),
                },
                "EN_reduction_pct": reduction,
            });
            write_out(output.as_deref(), &pretty(&v))
        }
        Command::Report(args) => report::run(&args),
        Command::Oracle {
            input,
            rule,
            allow_shared_data,
            layout,
        } => {
            let c = load_circuit(&input)?;
            let g = build_layout(&layout.resolve(&c)?)?;
            let map = assign_qubits(c.num_qubits(), &g, AssignPolicy::Sequential)?;
            let exact = exact_min_steps(&c, &g, &map, rule, allow_shared_data)?;
            let mut opts = ScheduleOptions::new(rule);
            opts.allow_shared_data = allow_shared_data;
            let (_, r) = schedule(&c, &g, &opts)?;
            let v = json!({ "exact_steps": exact, "greedy_EN": r.en, "LB": r.lb, "UB": r.ub });
            write_out(None, &pretty(&v))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let v = json!({ "error": e.kind(), "message": e.message() });
            eprintln!("{v}");
            ExitCode::from(e.exit_code())
        }
    }
}
