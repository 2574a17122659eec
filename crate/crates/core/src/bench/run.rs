use rayon::prelude::*;

use super::config::NamedConfig;
use crate::error::{BenchError, ConfigError};
use crate::solver::{solve, RunRecord};
use crate::suite::{self, DimRule, ProblemId};

/// Problems, dimensions and solver configurations of a sweep.
#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub problems: Vec<ProblemId>,
    /// Dimensions for large-scale problems; small problems always run at
    /// their fixed size.
    pub large_dims: Vec<usize>,
    pub configs: Vec<NamedConfig>,
    /// Runs per cell; the reported time is the mean, counts come from the
    /// first run. More than one repeat runs the sweep serially.
    pub repeats: usize,
}

impl Default for BenchPlan {
    /// All implemented problems at n = 1000, 5000, 10000 with the default
    /// and monotone solvers.
    fn default() -> Self {
        Self {
            problems: suite::required_ids(),
            large_dims: vec![1000, 5000, 10000],
            configs: vec![NamedConfig::asdh(), NamedConfig::asdh_monotone()],
            repeats: 1,
        }
    }
}

/// One cell of the run matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Task {
    pub problem: ProblemId,
    pub n: usize,
    /// Index into [`BenchPlan::configs`].
    pub config: usize,
}

impl BenchPlan {
    pub fn dims_for(&self, id: ProblemId) -> Vec<usize> {
        match suite::spec(id).dims {
            DimRule::Fixed { n, .. } => vec![n],
            DimRule::Free { .. } => self.large_dims.clone(),
        }
    }

    /// Checks the plan and expands it into tasks, ordered by problem,
    /// dimension, then configuration.
    pub fn tasks(&self) -> Result<Vec<Task>, BenchError> {
        if self.configs.is_empty() {
            return Err(ConfigError("no solver configurations given".into()).into());
        }
        if self.repeats == 0 {
            return Err(ConfigError("repeats must be at least 1".into()).into());
        }
        for (i, c) in self.configs.iter().enumerate() {
            c.config.validate()?;
            if self.configs[..i].iter().any(|o| o.name == c.name) {
                return Err(ConfigError(format!("duplicate solver name `{}`", c.name)).into());
            }
        }
        let mut tasks = Vec::new();
        for &id in &self.problems {
            let spec = suite::spec(id);
            if !spec.is_implemented() {
                return Err(crate::ProblemError::NotImplemented(id.to_string()).into());
            }
            for n in self.dims_for(id) {
                spec.accepts_dim(n)?;
                tasks.extend((0..self.configs.len()).map(|config| Task {
                    problem: id,
                    n,
                    config,
                }));
            }
        }
        Ok(tasks)
    }
}

/// Runs one cell of the matrix.
pub fn run_task(plan: &BenchPlan, task: Task) -> Result<RunRecord, BenchError> {
    let named = &plan.configs[task.config];
    let problem = suite::instantiate(task.problem, task.n)?;
    let mut record = solve(&problem, &named.config);
    if plan.repeats > 1 {
        let mut total = record.time_s;
        for _ in 1..plan.repeats {
            total += solve(&problem, &named.config).time_s;
        }
        record.time_s = total / plan.repeats as f64;
    }
    record.solver = named.name.clone();
    Ok(record)
}

/// Runs every task of the plan. Solver failures are recorded in the
/// returned records; only an invalid plan is an error.
pub fn run_benchmark(plan: &BenchPlan) -> Result<Vec<RunRecord>, BenchError> {
    let tasks = plan.tasks()?;
    let records: Result<Vec<_>, _> = if plan.repeats > 1 {
        tasks.iter().map(|&t| run_task(plan, t)).collect()
    } else {
        tasks.par_iter().map(|&t| run_task(plan, t)).collect()
    };
    let mut records = records?;
    sort_records(&mut records);
    Ok(records)
}

/// Sorts by problem number, dimension, then solver name.
pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by(|a, b| {
        let key = |r: &RunRecord| r.problem.parse::<ProblemId>().map(ProblemId::number).ok();
        key(a)
            .cmp(&key(b))
            .then_with(|| a.problem.cmp(&b.problem))
            .then(a.n.cmp(&b.n))
            .then_with(|| a.solver.cmp(&b.solver))
    });
}
