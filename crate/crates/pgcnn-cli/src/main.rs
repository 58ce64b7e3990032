//! Command-line front end: argument parsing, environment overrides, and
//! report output. All verification logic lives in the core crate.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pgcnn_core::driver::{
    cmd_dim, cmd_fiber, cmd_identities, cmd_table, human_summary, RingPolicy, Settings,
};
use pgcnn_core::report::{dim_rows, fiber_row, render_csv, Report};
use pgcnn_core::ring::DEFAULT_PRIMES;
use pgcnn_core::{Error, Group};

#[derive(Parser)]
#[command(
    name = "pgcnn",
    version,
    about = "Exact verification of polynomial group CNN geometry: \
             neuromanifold dimension, Jacobian kernels, and fibers"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// JSON report
    StructuredText,
    /// CSV rows (group,n,L,r,map,predicted,observed,pass)
    Csv,
}

#[derive(Args)]
struct Common {
    /// Master seed; together with the configuration it determines every
    /// sample, so reruns are byte-identical up to wall-clock fields
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Ring policy for rank certification: q (exact rationals only),
    /// fp3 (prime triple with rational confirmation), or fp:<p>
    #[arg(long, default_value = "fp3")]
    ring: String,

    /// Primes used by the fp3 policy
    #[arg(long, env = "PGCNN_PRIMES", value_delimiter = ',', num_args = 1..,
          default_values_t = DEFAULT_PRIMES)]
    primes: Vec<u64>,

    /// Coefficient bound for sampled filters (entries drawn from
    /// [-bound, bound])
    #[arg(long, default_value_t = 1000)]
    bound: u32,

    /// Largest allowed order of the ambient power group G^d
    #[arg(long, env = "PGCNN_POWER_BUDGET", default_value_t = 1 << 20)]
    power_budget: u128,

    /// Largest allowed degree-d monomial basis
    #[arg(long, env = "PGCNN_MONOMIAL_BUDGET", default_value_t = 1 << 20)]
    monomial_budget: u128,

    /// Redraws allowed when a sampled point is degenerate
    #[arg(long, default_value_t = 3)]
    retries: u32,

    /// Write the machine-readable report here ("-" for standard output)
    #[arg(long)]
    output: Option<PathBuf>,

    /// Report format; commands without a tabular form fall back to JSON
    #[arg(long, value_enum, default_value_t = Format::StructuredText)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify the neuromanifold dimension L(n-1)+1 by exact Jacobian
    /// rank at random integer points
    Dim {
        /// Group spec, e.g. C4, S3, D4, C2xC3
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        layers: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Verify the predicted fiber of the parametrization: translate
    /// orbit, rescaling orbit, and pairwise distinctness
    Fiber {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        layers: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Random tuples per collision probe (0 disables probing)
        #[arg(long, default_value_t = 0)]
        probe_samples: usize,
        /// Random rescalings checked per trial
        #[arg(long, default_value_t = 5)]
        scaling_samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the randomized group-algebra identity suite
    Identities {
        #[arg(long)]
        group: String,
        /// Hadamard degree used by the restriction and determinant laws
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Random filters per identity
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Filters per determinant-law measurement
        #[arg(long, default_value_t = 3)]
        det_samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run dimension + fiber verification over the whole benchmark grid
    /// and emit the CSV table
    Table {
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Replace each group's maximum depth (cells over budget are
        /// recorded and skipped)
        #[arg(long)]
        max_layers_override: Option<usize>,
        /// Random tuples per collision probe (0 disables probing)
        #[arg(long, default_value_t = 0)]
        probe_samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn settings(
    common: &Common,
    trials: usize,
    probe_samples: usize,
    scaling_samples: usize,
    det_samples: usize,
) -> Result<Settings, Error> {
    Ok(Settings {
        seed: common.seed,
        trials,
        bound: common.bound,
        power_budget: common.power_budget,
        monomial_budget: common.monomial_budget,
        policy: RingPolicy::parse(&common.ring, &common.primes)?,
        max_retries: common.retries,
        scaling_samples,
        probe_samples,
        det_samples,
    })
}

/// CSV form of a report, for the commands that have one.
fn csv_body(report: &Report) -> Option<String> {
    if let Some(t) = &report.table {
        return Some(t.csv.clone());
    }
    let c = &report.config;
    if let Some(d) = &report.dim {
        return Some(render_csv(&dim_rows(&c.group, c.layers, c.degree, d)));
    }
    if let Some(f) = &report.fiber {
        return Some(render_csv(&[fiber_row(&c.group, c.layers, c.degree, f)]));
    }
    None
}

fn run(cli: Cli) -> Result<bool, Error> {
    let (report, common) = match cli.command {
        Cmd::Dim { group, layers, degree, trials, common } => {
            let s = settings(&common, trials, 0, 5, 3)?;
            let g = Group::parse(&group)?;
            (cmd_dim(&g, layers, degree, &s)?, common)
        }
        Cmd::Fiber { group, layers, degree, trials, probe_samples, scaling_samples, common } => {
            let s = settings(&common, trials, probe_samples, scaling_samples, 3)?;
            let g = Group::parse(&group)?;
            (cmd_fiber(&g, layers, degree, &s)?, common)
        }
        Cmd::Identities { group, degree, trials, det_samples, common } => {
            let s = settings(&common, trials, 0, 5, det_samples)?;
            let g = Group::parse(&group)?;
            (cmd_identities(&g, degree, &s)?, common)
        }
        Cmd::Table { trials, max_layers_override, probe_samples, common } => {
            let s = settings(&common, trials, probe_samples, 5, 3)?;
            (cmd_table(&s, max_layers_override)?, common)
        }
    };

    print!("{}", human_summary(&report));

    let body = match common.format {
        Format::Csv => csv_body(&report).unwrap_or_else(|| report.to_json()),
        Format::StructuredText => report.to_json(),
    };
    match &common.output {
        Some(path) if path.as_os_str() == "-" => println!("{body}"),
        Some(path) => std::fs::write(path, body.as_bytes())
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?,
        None => {}
    }
    Ok(report.pass)
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Budget { .. } | Error::SizeLimit { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
