//! Dolan–Moré performance profiles.
//!
//! For a problem `p` and solver `s` with cost `t_{p,s}`, the ratio is
//! `r_{p,s} = t_{p,s} / min_s t_{p,s}`, and `rho_s(tau)` is the fraction of
//! problems with `r_{p,s} <= tau`. A run that did not converge has
//! `r = +inf`. A problem is a `(name, n)` pair.
//!
//! When the best cost on a problem is zero (a start point that already
//! satisfies the tolerance), every cost on that problem is shifted by one
//! before dividing, so the ratios stay finite and the zero-cost solver
//! still scores 1.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::BenchError;
use crate::solver::RunRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Niter,
    Nfeval,
    Nmvp,
    Time,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Niter, Metric::Nfeval, Metric::Nmvp, Metric::Time];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Niter => "niter",
            Metric::Nfeval => "nfeval",
            Metric::Nmvp => "nmvp",
            Metric::Time => "time",
        }
    }

    /// Cost of a run, `+inf` unless it converged.
    pub fn cost(self, r: &RunRecord) -> f64 {
        if !r.converged() {
            return f64::INFINITY;
        }
        match self {
            Metric::Niter => r.niter as f64,
            Metric::Nfeval => r.nfeval as f64,
            Metric::Nmvp => r.nmvp as f64,
            Metric::Time => r.time_s,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown metric `{s}` (expected niter, nfeval, nmvp or time)"))
    }
}

/// One solver's profile: `rho(tau)` at every breakpoint, `tau` ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub metric: Metric,
    pub solver: String,
    pub points: Vec<(f64, f64)>,
}

impl ProfileCurve {
    /// `rho(tau)` for any `tau`, using the step structure of the curve.
    pub fn rho_at(&self, tau: f64) -> f64 {
        self.points
            .iter()
            .take_while(|&&(t, _)| t <= tau)
            .last()
            .map_or(0.0, |&(_, r)| r)
    }
}

/// Performance ratios `r_{p,s}` keyed by `(problem, n)`, one entry per
/// solver in the order of `solvers`.
#[derive(Debug, Clone)]
pub struct RatioTable {
    pub solvers: Vec<String>,
    pub ratios: BTreeMap<(String, usize), Vec<f64>>,
}

/// Builds the ratio table. Every solver must have a run on every problem.
pub fn ratio_table(records: &[RunRecord], metric: Metric) -> Result<RatioTable, BenchError> {
    let mut solvers: Vec<String> = records.iter().map(|r| r.solver.clone()).collect();
    solvers.sort();
    solvers.dedup();
    if solvers.len() < 2 {
        return Err(BenchError::TooFewSolvers(solvers.len()));
    }
    let mut costs: BTreeMap<(String, usize), Vec<Option<f64>>> = BTreeMap::new();
    for r in records {
        let slot = solvers.binary_search(&r.solver).unwrap();
        let row = costs
            .entry((r.problem.clone(), r.n))
            .or_insert_with(|| vec![None; solvers.len()]);
        row[slot].get_or_insert(metric.cost(r));
    }
    let mut ratios = BTreeMap::new();
    for ((problem, n), row) in costs {
        if let Some(s) = row.iter().position(Option::is_none) {
            return Err(BenchError::IncompleteMatrix {
                solver: solvers[s].clone(),
                problem,
                n,
            });
        }
        let row: Vec<f64> = row.into_iter().flatten().collect();
        ratios.insert((problem, n), performance_ratios(&row));
    }
    Ok(RatioTable { solvers, ratios })
}

/// Ratios for one problem from the per-solver costs.
pub fn performance_ratios(costs: &[f64]) -> Vec<f64> {
    let best = costs.iter().copied().fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return vec![f64::INFINITY; costs.len()];
    }
    let shift = if best <= 0.0 { 1.0 } else { 0.0 };
    costs
        .iter()
        .map(|&t| {
            if t.is_finite() {
                (t + shift) / (best + shift)
            } else {
                f64::INFINITY
            }
        })
        .collect()
}

/// Profile curves for every solver, sorted by solver name. The breakpoints
/// are the union of finite ratios over all solvers.
pub fn performance_profile(
    records: &[RunRecord],
    metric: Metric,
) -> Result<Vec<ProfileCurve>, BenchError> {
    let table = ratio_table(records, metric)?;
    let mut taus: Vec<f64> = table
        .ratios
        .values()
        .flatten()
        .copied()
        .filter(|r| r.is_finite())
        .collect();
    taus.sort_by(f64::total_cmp);
    taus.dedup();
    let n_problems = table.ratios.len() as f64;
    Ok(table
        .solvers
        .iter()
        .enumerate()
        .map(|(s, solver)| {
            let mut mine: Vec<f64> = table.ratios.values().map(|row| row[s]).collect();
            mine.sort_by(f64::total_cmp);
            let points = taus
                .iter()
                .map(|&tau| {
                    let count = mine.partition_point(|&r| r <= tau);
                    (tau, count as f64 / n_problems)
                })
                .collect();
            ProfileCurve {
                metric,
                solver: solver.clone(),
                points,
            }
        })
        .collect())
}
