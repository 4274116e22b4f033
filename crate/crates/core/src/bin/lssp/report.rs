//! `lssp report`: a CSV sweep over random circuits and dependency rules.

use clap::Args;
use rayon::prelude::*;

use lssp_core::dependency::DependencyRule;
use lssp_core::io::{gen_random, RandomSpec};
use lssp_core::layout::{build_layout, LayoutSpec, LayoutStyle};
use lssp_core::scheduler::{compute_gap, schedule, Report, ScheduleOptions};

use crate::{write_out, CliError};

#[derive(Args)]
pub struct ReportArgs {
    /// Circuit lengths.
    #[arg(short = 'm', long = "length", value_delimiter = ',', default_value = "1000")]
    lengths: Vec<usize>,
    /// Qubit counts.
    #[arg(short = 'N', long = "qubits", value_delimiter = ',', default_value = "10")]
    qubits: Vec<usize>,
    /// Mean support fractions.
    #[arg(long, value_delimiter = ',', default_value = "0.15")]
    npct: Vec<f64>,
    /// Seeds `0..seeds` for every grid point.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, value_delimiter = ',', default_value = "serial,trivial,general")]
    rules: Vec<DependencyRule>,
    #[arg(long, default_value = "parallelizable")]
    style: LayoutStyle,
    #[arg(long, default_value_t = 3)]
    n_storage: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Leave the timing columns empty so output is reproducible.
    #[arg(long)]
    omit_timing: bool,
    #[arg(short, long)]
    output: Option<std::path::PathBuf>,
}

struct Row {
    m: usize,
    n: usize,
    npct: f64,
    seed: u64,
    report: Report,
}

pub fn run(args: &ReportArgs) -> Result<(), CliError> {
    let mut jobs = Vec::new();
    for &m in &args.lengths {
        for &n in &args.qubits {
            for &npct in &args.npct {
                for seed in 0..args.seeds {
                    jobs.push(RandomSpec { m, n, n_pct: npct, seed });
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    // each job is one circuit under every rule; results keep job order
    let results: Vec<lssp_core::Result<Vec<Row>>> = pool.install(|| {
        jobs.par_iter()
            .map(|spec| {
                let c = gen_random(spec)?;
                let mut layout = LayoutSpec::auto(spec.n, args.n_storage, 0);
                layout.style = args.style;
                let g = build_layout(&layout)?;
                args.rules
                    .iter()
                    .map(|&rule| {
                        let (_, report) = schedule(&c, &g, &ScheduleOptions::new(rule))?;
                        Ok(Row {
                            m: spec.m,
                            n: spec.n,
                            npct: spec.n_pct,
                            seed: spec.seed,
                            report,
                        })
                    })
                    .collect()
            })
            .collect()
    });

    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record([
        "m", "N", "npct", "seed", "rule", "layout", "EN", "LB", "UB", "W_avg", "t_dep_s", "t_sch_s", "t_tot_s",
        "gap_vs_LB_pct", "gap_vs_best_pct",
    ])
    .map_err(csv_err)?;
    for rows in results {
        let rows = rows?;
        let best = rows.iter().map(|r| r.report.en).min().unwrap_or(0);
        for row in &rows {
            let r = &row.report;
            let gap = |s_star: usize| {
                compute_gap(r.en as f64, s_star as f64)
                    .map(|g| format!("{g:.4}"))
                    .unwrap_or_default()
            };
            let time = |t: f64| if args.omit_timing { String::new() } else { format!("{t:.6}") };
            let layout = r
                .layout
                .map(|l| format!("{}x{}", l.aisles, l.patches_per_aisle))
                .unwrap_or_default();
            w.write_record([
                row.m.to_string(),
                row.n.to_string(),
                row.npct.to_string(),
                row.seed.to_string(),
                r.rule.name().to_string(),
                layout,
                r.en.to_string(),
                r.lb.to_string(),
                r.ub.to_string(),
                format!("{:.6}", r.average_width),
                time(r.t_dep_s),
                time(r.t_sch_s),
                time(r.t_tot_s),
                gap(r.lb),
                gap(best),
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))?;
    write_out(args.output.as_deref(), &String::from_utf8(bytes).expect("csv is utf-8"))
}
