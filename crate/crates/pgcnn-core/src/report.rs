//! Versioned machine-readable run reports: the JSON envelope shared by
//! every command, the CSV table emitter, and the human summaries printed
//! to standard output.

use serde::Serialize;

use crate::fiber::{CollisionProbe, FiberTrial};
use crate::identities::IdentitySuite;
use crate::jacobian::DimTrial;

pub const SCHEMA_VERSION: u32 = 1;

/// Echo of the resolved configuration a command ran with. Every value
/// that influences sampling or verification appears here, so the report
/// is self-describing.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub group: String,
    pub layers: usize,
    pub degree: usize,
    pub ring: String,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
    pub coeff_bound: u32,
    pub power_budget: u128,
    pub monomial_budget: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimPayload {
    pub n: usize,
    pub param_count: usize,
    pub ambient_dim: usize,
    pub predicted_rank: usize,
    pub predicted_kernel_dim: usize,
    pub trials: Vec<DimTrial>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberPayload {
    pub n: usize,
    pub predicted_count: u128,
    pub trials: Vec<FiberTrial>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub collision_probes: Vec<CollisionProbe>,
}

/// One Table-1 grid cell: a dimension and fiber verification at fixed
/// `(group, L, r)`. Cells over budget are recorded, not fatal.
#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub group: String,
    pub n: usize,
    pub layers: usize,
    pub degree: usize,
    /// "ok" or "budget" (skipped: the configuration exceeds a budget).
    pub status: String,
    pub dim: Option<DimPayload>,
    pub fiber: Option<FiberPayload>,
    pub pass: bool,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct TablePayload {
    pub cells: Vec<TableCell>,
    pub csv: String,
}

/// The envelope every command emits. Exactly one payload field is set.
/// `wall_ms` fields are the only ones allowed to differ between reruns
/// of an identical configuration.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<DimPayload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<FiberPayload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<IdentitySuite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TablePayload>,
    pub pass: bool,
    pub wall_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// One row of the verification table.
#[derive(Clone, Debug, Serialize)]
pub struct CsvRow {
    pub group: String,
    pub n: usize,
    pub l: usize,
    pub r: usize,
    pub map: String,
    pub predicted: String,
    pub observed: String,
    pub pass: String,
}

pub const CSV_HEADER: &str = "group,n,L,r,map,predicted,observed,pass";

pub fn render_csv(rows: &[CsvRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.group, row.n, row.l, row.r, row.map, row.predicted, row.observed, row.pass
        ));
    }
    out
}

/// Fold per-trial observations into one cell: the common value if the
/// trials agree, otherwise "mixed".
pub fn fold_observed<I: Iterator<Item = Option<usize>>>(mut values: I) -> String {
    match values.next() {
        None => "-".into(),
        Some(first) => {
            let show =
                |v: Option<usize>| v.map_or_else(|| "disagree".into(), |x| x.to_string());
            let first = show(first);
            if values.all(|v| show(v) == first) {
                first
            } else {
                "mixed".into()
            }
        }
    }
}

/// Rows contributed by one dimension payload.
pub fn dim_rows(group: &str, layers: usize, degree: usize, p: &DimPayload) -> Vec<CsvRow> {
    let base = |map: &str, observed: String| CsvRow {
        group: group.to_string(),
        n: p.n,
        l: layers,
        r: degree,
        map: map.to_string(),
        predicted: p.predicted_rank.to_string(),
        observed,
        pass: p.trials.iter().all(|t| t.pass).to_string(),
    };
    vec![
        base("phi", fold_observed(p.trials.iter().map(|t| t.observed_rank_phi))),
        base("Phi", fold_observed(p.trials.iter().map(|t| t.observed_rank_big_phi))),
    ]
}

/// Row contributed by one fiber payload.
pub fn fiber_row(group: &str, layers: usize, degree: usize, p: &FiberPayload) -> CsvRow {
    CsvRow {
        group: group.to_string(),
        n: p.n,
        l: layers,
        r: degree,
        map: "fiber".to_string(),
        predicted: p.predicted_count.to_string(),
        observed: fold_observed(p.trials.iter().map(|t| Some(t.distinct_count))),
        pass: p.trials.iter().all(|t| t.pass).to_string(),
    }
}

/// Placeholder rows for a cell skipped on budget.
pub fn budget_rows(group: &str, n: usize, layers: usize, degree: usize) -> Vec<CsvRow> {
    ["phi", "Phi", "fiber"]
        .iter()
        .map(|map| CsvRow {
            group: group.to_string(),
            n,
            l: layers,
            r: degree,
            map: map.to_string(),
            predicted: "-".into(),
            observed: "budget".into(),
            pass: "skip".into(),
        })
        .collect()
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Short human summary, one story per line, for standard output.
pub fn summarize(report: &Report) -> String {
    let c = &report.config;
    let mut out = String::new();
    if let Some(d) = &report.dim {
        out.push_str(&format!(
            "dim {} (n={}) L={} r={}: predicted rank {} of {} params, kernel dim {}\n",
            c.group, d.n, c.layers, c.degree, d.predicted_rank, d.param_count,
            d.predicted_kernel_dim
        ));
        for t in &d.trials {
            out.push_str(&format!(
                "  trial {}: rank phi {} Phi {} | kernel {} euler {} chain {} | {}\n",
                t.trial,
                fold_observed(std::iter::once(t.observed_rank_phi)),
                fold_observed(std::iter::once(t.observed_rank_big_phi)),
                mark(t.kernel_membership_ok && t.kernel_independent_ok && t.kernel_dim_ok),
                mark(t.euler_ok),
                mark(t.chain_ok),
                mark(t.pass)
            ));
        }
    }
    if let Some(f) = &report.fiber {
        out.push_str(&format!(
            "fiber {} (n={}) L={} r={}: predicted |fiber| = {} translation classes\n",
            c.group, f.n, c.layers, c.degree, f.predicted_count
        ));
        for t in &f.trials {
            out.push_str(&format!(
                "  trial {}: {}/{} matches, {} distinct orbits | {}\n",
                t.trial,
                if t.forward_ok { f.predicted_count } else { 0 },
                f.predicted_count,
                t.distinct_count,
                mark(t.pass)
            ));
        }
        for p in &f.collision_probes {
            out.push_str(&format!(
                "  probe (p={}): {} samples, {} collisions, {} predicted, {} unpredicted, self-test {}\n",
                p.prime, p.samples, p.collision_pairs, p.predicted_pairs,
                p.unpredicted_pairs, mark(p.injected_ok)
            ));
        }
    }
    if let Some(s) = &report.identities {
        out.push_str(&format!(
            "identities {} (n={}) r={}: {} random filters\n",
            s.group, s.n, s.r, s.trials
        ));
        for ch in &s.checks {
            out.push_str(&format!(
                "  {}: {}/{} ok\n",
                ch.name,
                ch.trials - ch.failures,
                ch.trials
            ));
        }
        for d in &s.det_formulae {
            let show = |m: &Option<u64>| {
                m.map_or_else(|| "indeterminate".to_string(), |e| e.to_string())
            };
            out.push_str(&format!(
                "  det laws: diagonal exponent {} (expected {}), kronecker exponent {} (expected {}) | {}\n",
                show(&d.diag_exponent_measured),
                d.diag_exponent_expected,
                show(&d.kron_exponent_measured),
                d.kron_exponent_expected,
                mark(d.diag_matches && d.kron_matches)
            ));
        }
    }
    if let Some(t) = &report.table {
        for cell in &t.cells {
            let detail = if cell.status == "budget" {
                "skipped (budget)".to_string()
            } else {
                format!(
                    "dim {} fiber {}",
                    mark(cell.dim.as_ref().is_some_and(|d| d.trials.iter().all(|x| x.pass))),
                    mark(cell.fiber.as_ref().is_some_and(|f| f.trials.iter().all(|x| x.pass)))
                )
            };
            out.push_str(&format!(
                "table {} (n={}) L={} r={}: {} [{} ms]\n",
                cell.group, cell.n, cell.layers, cell.degree, detail, cell.wall_ms
            ));
        }
    }
    out.push_str(&format!("overall: {}\n", mark(report.pass)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rendering_matches_schema() {
        let rows = vec![CsvRow {
            group: "C2".into(),
            n: 2,
            l: 2,
            r: 2,
            map: "phi".into(),
            predicted: "3".into(),
            observed: "3".into(),
            pass: "true".into(),
        }];
        let csv = render_csv(&rows);
        assert_eq!(csv, "group,n,L,r,map,predicted,observed,pass\nC2,2,2,2,phi,3,3,true\n");
    }

    #[test]
    fn fold_observed_cases() {
        assert_eq!(fold_observed([Some(3), Some(3)].into_iter()), "3");
        assert_eq!(fold_observed([Some(3), Some(2)].into_iter()), "mixed");
        assert_eq!(fold_observed([Some(3), None].into_iter()), "mixed");
        assert_eq!(fold_observed([None, None].into_iter()), "disagree");
        assert_eq!(fold_observed(std::iter::empty()), "-");
    }

    #[test]
    fn budget_rows_are_skips() {
        let rows = budget_rows("C3", 3, 5, 2);
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.pass == "skip" && r.observed == "budget"));
    }
}
