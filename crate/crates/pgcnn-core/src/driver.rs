//! Command orchestration: builds architectures, fans trials out over the
//! worker pool, and assembles versioned reports. The front end only
//! parses arguments and routes them here.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::Error;
use crate::fiber::{predicted_fiber_count, run_collision_probe, run_fiber_trial};
use crate::group::Group;
use crate::identities::run_identity_suite;
use crate::jacobian::{predicted_kernel_dim, predicted_rank, run_dim_trial};
use crate::network::Architecture;
use crate::report::{
    budget_rows, dim_rows, fiber_row, render_csv, summarize, CsvRow, DimPayload, FiberPayload,
    Report, RunConfig, TableCell, TablePayload, SCHEMA_VERSION,
};
use crate::ring::DEFAULT_PRIMES;
use crate::Result;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The Table-1 grid: group spec and maximum depth, all at degree 2.
pub const TABLE_GRID: [(&str, usize); 8] = [
    ("C2", 4),
    ("C3", 3),
    ("C4", 2),
    ("C2xC2", 2),
    ("C5", 2),
    ("C6", 2),
    ("C2xC3", 2),
    ("S3", 2),
];

/// Which rings certify ranks: exact rationals, a prime triple with
/// rational confirmation, or a single prime.
#[derive(Clone, Debug)]
pub struct RingPolicy {
    pub label: String,
    pub rational: bool,
    pub primes: Vec<u64>,
}

impl RingPolicy {
    /// Parse `q`, `fp3`, or `fp:<p>`. `fp3` uses `primes` (normally the
    /// default triple, overridable) and confirms over the rationals.
    pub fn parse(s: &str, primes: &[u64]) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(Self { label: "q".into(), rational: true, primes: Vec::new() }),
            "fp3" => {
                if primes.is_empty() {
                    return Err(Error::Config("ring policy fp3 needs a prime list".into()));
                }
                Ok(Self { label: "fp3".into(), rational: true, primes: primes.to_vec() })
            }
            other => match other.strip_prefix("fp:").and_then(|p| p.parse::<u64>().ok()) {
                Some(p) => Ok(Self {
                    label: format!("fp:{p}"),
                    rational: false,
                    primes: vec![p],
                }),
                None => Err(Error::Config(format!(
                    "unknown ring policy `{other}` (expected q, fp3, or fp:<p>)"
                ))),
            },
        }
    }

    fn probe_prime(&self) -> u64 {
        self.primes.first().copied().unwrap_or(DEFAULT_PRIMES[0])
    }
}

impl Default for RingPolicy {
    fn default() -> Self {
        Self {
            label: "fp3".into(),
            rational: true,
            primes: DEFAULT_PRIMES.to_vec(),
        }
    }
}

/// Everything a command run needs beyond the architecture itself.
#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: u64,
    pub trials: usize,
    pub bound: u32,
    pub power_budget: u128,
    pub monomial_budget: u128,
    pub policy: RingPolicy,
    /// Redraws allowed when a sampled point is degenerate (rank shortfall
    /// with all exact identities holding).
    pub max_retries: u32,
    /// Random rescalings checked per fiber trial.
    pub scaling_samples: usize,
    /// Random tuples per collision probe; 0 disables probing.
    pub probe_samples: usize,
    /// Filters per determinant-law measurement in the identity suite.
    pub det_samples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 3,
            bound: crate::ring::DEFAULT_COEFF_BOUND,
            power_budget: crate::group::DEFAULT_POWER_BUDGET,
            monomial_budget: crate::network::DEFAULT_MONOMIAL_BUDGET,
            policy: RingPolicy::default(),
            max_retries: 3,
            scaling_samples: 5,
            probe_samples: 0,
            det_samples: 3,
        }
    }
}

impl Settings {
    fn run_config(&self, command: &str, group: &str, layers: usize, degree: usize) -> RunConfig {
        RunConfig {
            command: command.to_string(),
            group: group.to_string(),
            layers,
            degree,
            ring: self.policy.label.clone(),
            primes: self.policy.primes.clone(),
            trials: self.trials,
            seed: self.seed,
            coeff_bound: self.bound,
            power_budget: self.power_budget,
            monomial_budget: self.monomial_budget,
        }
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("at least one trial is required".into()));
        }
        Ok(())
    }
}

fn envelope(config: RunConfig, pass: bool, start: Instant) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        config,
        dim: None,
        fiber: None,
        identities: None,
        table: None,
        pass,
        wall_ms: start.elapsed().as_millis(),
    }
}

fn dim_payload(arch: &Architecture, s: &Settings) -> Result<DimPayload> {
    let trials = (0..s.trials)
        .into_par_iter()
        .map(|t| {
            run_dim_trial(arch, s.seed, t, &s.policy.primes, s.bound, s.policy.rational, s.max_retries)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DimPayload {
        n: arch.group().order(),
        param_count: arch.param_count(),
        ambient_dim: arch.phi_group()?.order(),
        predicted_rank: predicted_rank(arch),
        predicted_kernel_dim: predicted_kernel_dim(arch),
        trials,
    })
}

fn fiber_payload(arch: &Architecture, s: &Settings) -> Result<FiberPayload> {
    let predicted_count = predicted_fiber_count(arch).ok_or(Error::Budget {
        what: "predicted fiber size |G|^(L-1)",
        requested: u128::MAX,
        budget: arch.power_budget(),
    })?;
    let trials = (0..s.trials)
        .into_par_iter()
        .map(|t| run_fiber_trial(arch, s.seed, t, s.bound, s.scaling_samples))
        .collect::<Result<Vec<_>>>()?;
    let collision_probes = if s.probe_samples > 0 {
        (0..s.trials)
            .into_par_iter()
            .map(|t| {
                run_collision_probe(arch, s.policy.probe_prime(), s.seed, t as u64, s.probe_samples)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(FiberPayload {
        n: arch.group().order(),
        predicted_count,
        trials,
        collision_probes,
    })
}

/// Certify neuromanifold dimension at random points of one architecture.
pub fn cmd_dim(group: &Group, layers: usize, degree: usize, s: &Settings) -> Result<Report> {
    s.check()?;
    let start = Instant::now();
    let arch =
        Architecture::with_budgets(group.clone(), layers, degree, s.power_budget, s.monomial_budget)?;
    let payload = dim_payload(&arch, s)?;
    let pass = payload.trials.iter().all(|t| t.pass);
    let mut report = envelope(s.run_config("dim", group.label(), layers, degree), pass, start);
    report.dim = Some(payload);
    Ok(report)
}

/// Verify the predicted fiber (translates and rescalings) of one
/// architecture, optionally probing for unpredicted collisions.
pub fn cmd_fiber(group: &Group, layers: usize, degree: usize, s: &Settings) -> Result<Report> {
    s.check()?;
    let start = Instant::now();
    let arch =
        Architecture::with_budgets(group.clone(), layers, degree, s.power_budget, s.monomial_budget)?;
    let payload = fiber_payload(&arch, s)?;
    // unpredicted collision counts are findings, reported not fatal; a
    // broken probe self-test is a harness failure
    let pass = payload.trials.iter().all(|t| t.pass)
        && payload.collision_probes.iter().all(|p| p.injected_ok);
    let mut report = envelope(s.run_config("fiber", group.label(), layers, degree), pass, start);
    report.fiber = Some(payload);
    Ok(report)
}

/// Run the randomized group-algebra identity suite on one group.
pub fn cmd_identities(group: &Group, degree: usize, s: &Settings) -> Result<Report> {
    s.check()?;
    let start = Instant::now();
    let suite = run_identity_suite(
        group,
        degree,
        s.trials,
        s.det_samples,
        s.seed,
        s.bound,
        s.power_budget,
    )?;
    let pass = suite.pass;
    let mut report = envelope(s.run_config("identities", group.label(), 1, degree), pass, start);
    report.identities = Some(suite);
    Ok(report)
}

fn table_cell(label: &str, layers: usize, s: &Settings, cell_id: u64) -> Result<(TableCell, Vec<CsvRow>)> {
    let start = Instant::now();
    let group = Group::parse(label)?;
    let n = group.order();
    let arch = match Architecture::with_budgets(
        group.clone(),
        layers,
        2,
        s.power_budget,
        s.monomial_budget,
    ) {
        Ok(arch) => arch,
        Err(Error::Budget { .. }) | Err(Error::SizeLimit { .. }) => {
            let cell = TableCell {
                group: label.to_string(),
                n,
                layers,
                degree: 2,
                status: "budget".into(),
                dim: None,
                fiber: None,
                pass: true,
                wall_ms: start.elapsed().as_millis(),
            };
            return Ok((cell, budget_rows(label, n, layers, 2)));
        }
        Err(e) => return Err(e),
    };
    let probe_settings = Settings {
        // distinct probe stream per cell
        seed: crate::sample::derive_seed(s.seed, &[crate::sample::streams::TABLE, cell_id]),
        ..s.clone()
    };
    let dim = dim_payload(&arch, s)?;
    let fiber = fiber_payload(&arch, &probe_settings)?;
    let pass = dim.trials.iter().all(|t| t.pass)
        && fiber.trials.iter().all(|t| t.pass)
        && fiber.collision_probes.iter().all(|p| p.injected_ok);
    let mut rows = dim_rows(label, layers, 2, &dim);
    rows.push(fiber_row(label, layers, 2, &fiber));
    let cell = TableCell {
        group: label.to_string(),
        n,
        layers,
        degree: 2,
        status: "ok".into(),
        dim: Some(dim),
        fiber: Some(fiber),
        pass,
        wall_ms: start.elapsed().as_millis(),
    };
    Ok((cell, rows))
}

/// Run dimension and fiber verification over the whole Table-1 grid and
/// emit the CSV mirror. `max_layers_override` replaces each group's
/// maximum depth; cells over budget are recorded and skipped.
pub fn cmd_table(s: &Settings, max_layers_override: Option<usize>) -> Result<Report> {
    s.check()?;
    let start = Instant::now();
    let cells_spec: Vec<(&str, usize)> = TABLE_GRID
        .iter()
        .flat_map(|&(label, max)| {
            let max = max_layers_override.unwrap_or(max).max(2);
            (2..=max).map(move |layers| (label, layers))
        })
        .collect();
    let results = cells_spec
        .par_iter()
        .enumerate()
        .map(|(i, &(label, layers))| table_cell(label, layers, s, i as u64))
        .collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::with_capacity(results.len());
    let mut rows = Vec::new();
    for (cell, cell_rows) in results {
        cells.push(cell);
        rows.extend(cell_rows);
    }
    let pass = cells.iter().all(|c| c.pass);
    let csv = render_csv(&rows);
    let mut report = envelope(
        s.run_config("table", "C2,C3,C4,C2xC2,C5,C6,C2xC3,S3", max_layers_override.unwrap_or(0), 2),
        pass,
        start,
    );
    report.table = Some(TablePayload { cells, csv });
    Ok(report)
}

/// The human summary for standard output.
pub fn human_summary(report: &Report) -> String {
    summarize(report)
}
