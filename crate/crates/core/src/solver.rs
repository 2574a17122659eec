//! The ASDH outer iteration.
//!
//! ```text
//! H_0 = I, P_0 = f(x_0), Q_0 = 1
//! loop:
//!     stop if ||g_k|| <= eps (converged) or k >= k_max (maxiter)
//!     d_k = -H_k^{-1} g_k
//!     alpha_k from nonmonotone backtracking, x_{k+1} = x_k + alpha_k d_k
//!     secant vectors at x_{k+1}, sign safeguards, clamped diagonal H_{k+1}
//!     eta_k from the schedule, update (P, Q)
//! ```

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::diagonal::{self, DiagHessian, SafeguardParams};
use crate::error::ConfigError;
use crate::linalg::{dot, norm};
use crate::linesearch::{self, EtaSchedule, LineSearchParams, LineSearchState};
use crate::problem::{objective, EvalCounters, Evaluator, NlsProblem};

/// All solver tunables. Defaults are the published experiment settings,
/// with `theta = 1e-4`.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub gamma: f64,
    pub theta: f64,
    pub rho: f64,
    pub l: f64,
    pub u: f64,
    pub eta_min: f64,
    pub eta_max: f64,
    pub eps: f64,
    pub k_max: usize,
    pub max_halvings: u32,
    pub eta_schedule: EtaSchedule,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            gamma: 0.2,
            theta: 1e-4,
            rho: 1e-4,
            l: 1e-30,
            u: 1e30,
            eta_min: 0.1,
            eta_max: 0.85,
            eps: 1e-4,
            k_max: 1000,
            max_halvings: 60,
            eta_schedule: EtaSchedule::default(),
        }
    }
}

impl SolverConfig {
    /// Same settings with `eta_k = 0`, i.e. the monotone Armijo rule.
    pub fn monotone() -> Self {
        Self {
            eta_min: 0.0,
            eta_max: 0.0,
            eta_schedule: EtaSchedule::Constant(0.0),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |m: &str| Err(ConfigError(m.to_string()));
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return fail("gamma must lie in (0, 1)");
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return fail("theta must lie in (0, 1)");
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return fail("rho must be positive");
        }
        if !(self.l > 0.0 && self.l <= 1.0 && self.u >= 1.0 && self.u.is_finite()) {
            return fail("bounds must satisfy 0 < l <= 1 <= u < inf");
        }
        if !(0.0 <= self.eta_min && self.eta_min <= self.eta_max && self.eta_max <= 1.0) {
            return fail("eta bounds must satisfy 0 <= eta_min <= eta_max <= 1");
        }
        if !(self.eps > 0.0) {
            return fail("eps must be positive");
        }
        if self.k_max < 1 {
            return fail("k_max must be at least 1");
        }
        if self.max_halvings < 1 {
            return fail("max_halvings must be at least 1");
        }
        Ok(())
    }

    pub fn safeguard_params(&self) -> SafeguardParams {
        SafeguardParams {
            gamma: self.gamma,
            rho: self.rho,
        }
    }

    pub fn line_search_params(&self) -> LineSearchParams {
        LineSearchParams {
            theta: self.theta,
            eta_min: self.eta_min,
            eta_max: self.eta_max,
            max_halvings: self.max_halvings,
        }
    }

    /// Canonical `key=value` rendering of every setting.
    pub fn fingerprint(&self) -> String {
        format!(
            "gamma={:?};theta={:?};rho={:?};l={:?};u={:?};eta_min={:?};eta_max={:?};eps={:?};kmax={};max_halvings={};eta={}",
            self.gamma,
            self.theta,
            self.rho,
            self.l,
            self.u,
            self.eta_min,
            self.eta_max,
            self.eps,
            self.k_max,
            self.max_halvings,
            self.eta_schedule
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Converged,
    MaxIter,
    LineSearchFail,
    EvalFail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxIter => "maxiter",
            Status::LineSearchFail => "ls-fail",
            Status::EvalFail => "eval-fail",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "converged" => Ok(Status::Converged),
            "maxiter" => Ok(Status::MaxIter),
            "ls-fail" => Ok(Status::LineSearchFail),
            "eval-fail" => Ok(Status::EvalFail),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

/// Telemetry of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub problem: String,
    pub n: usize,
    pub m: usize,
    /// Name of the solver configuration; empty for direct [`solve`] calls.
    pub solver: String,
    pub niter: u64,
    pub nfeval: u64,
    pub nmvp: u64,
    pub time_s: f64,
    pub fvalue: f64,
    pub gnorm: f64,
    pub status: Status,
    pub config: String,
    /// Last accepted iterate.
    pub x: Vec<f64>,
}

impl RunRecord {
    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }
}

/// Outcome of the stopping test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Continue,
    Stop(Status),
}

/// Stops when `gnorm <= eps` (converged) or `k >= k_max` (maxiter).
pub fn check_termination(gnorm: f64, k: usize, eps: f64, k_max: usize) -> Termination {
    if gnorm <= eps {
        Termination::Stop(Status::Converged)
    } else if k >= k_max {
        Termination::Stop(Status::MaxIter)
    } else {
        Termination::Continue
    }
}

/// Snapshot passed to an observer once per iteration, after the step.
#[derive(Debug, Clone)]
pub struct IterationInfo<'a> {
    pub k: usize,
    /// `f(x_k)`.
    pub f: f64,
    /// Reference value `P_k` used by the acceptance test.
    pub p: f64,
    pub gnorm: f64,
    pub g: &'a [f64],
    pub d: &'a [f64],
    /// `g_k^T d_k`.
    pub gtd: f64,
    pub hessian: &'a DiagHessian,
    pub alpha: f64,
    pub trials: u32,
    /// `f(x_{k+1})`.
    pub f_new: f64,
    /// `P_{k+1}`.
    pub p_new: f64,
    pub eta: f64,
}

/// Runs ASDH on `problem` from its start point.
pub fn solve<P: NlsProblem + ?Sized>(problem: &P, config: &SolverConfig) -> RunRecord {
    solve_observed(problem, config, |_| {})
}

/// [`solve`] with a callback invoked after every accepted step.
///
/// # Panics
///
/// Panics if `config` fails [`SolverConfig::validate`].
pub fn solve_observed<P, F>(problem: &P, config: &SolverConfig, mut observer: F) -> RunRecord
where
    P: NlsProblem + ?Sized,
    F: FnMut(&IterationInfo<'_>),
{
    if let Err(e) = config.validate() {
        panic!("{e}");
    }
    let mut eval = Evaluator::new(problem);
    let start = Instant::now();
    let outcome = iterate(&mut eval, config, &mut observer);
    let time_s = start.elapsed().as_secs_f64();
    let EvalCounters {
        nfeval,
        nmvp,
        niter,
    } = eval.counters();
    RunRecord {
        problem: problem.name().to_string(),
        n: problem.dim(),
        m: problem.residual_dim(),
        solver: String::new(),
        niter,
        nfeval,
        nmvp,
        time_s,
        fvalue: outcome.f,
        gnorm: outcome.gnorm,
        status: outcome.status,
        config: config.fingerprint(),
        x: outcome.x,
    }
}

struct Outcome {
    x: Vec<f64>,
    f: f64,
    gnorm: f64,
    status: Status,
}

fn iterate<P, F>(eval: &mut Evaluator<'_, P>, config: &SolverConfig, observer: &mut F) -> Outcome
where
    P: NlsProblem + ?Sized,
    F: FnMut(&IterationInfo<'_>),
{
    let x0 = eval.problem().start_point();
    let n = x0.len();
    let fail = |x: Vec<f64>, f: f64, gnorm: f64, status| Outcome {
        x,
        f,
        gnorm,
        status,
    };

    let Ok(fx0) = eval.residual(&x0) else {
        return fail(x0, f64::NAN, f64::NAN, Status::EvalFail);
    };
    let f0 = objective(&fx0);
    let g0 = match eval.gradient(&x0, &fx0) {
        Ok(g) => g,
        Err(_) => return fail(x0, f0, f64::NAN, Status::EvalFail),
    };

    let safeguards = config.safeguard_params();
    let ls_params = config.line_search_params();
    let mut x = x0;
    let mut f = f0;
    let mut g = g0;
    let mut hess = DiagHessian::identity(n, config.l, config.u);
    let mut ls = LineSearchState::new(f0);
    let mut k = 0usize;

    loop {
        let gnorm = norm(&g);
        if let Termination::Stop(status) = check_termination(gnorm, k, config.eps, config.k_max) {
            return Outcome {
                x,
                f,
                gnorm,
                status,
            };
        }

        let d = diagonal::direction(&hess, &g);
        let gtd = dot(&g, &d);
        let step = match linesearch::backtrack(eval, &x, &d, ls.p, gtd, &ls_params) {
            Ok(step) => step,
            Err(_) => return fail(x, f, gnorm, Status::LineSearchFail),
        };

        let g_new = match eval.gradient(&step.x_new, &step.residual) {
            Ok(g) => g,
            Err(_) => return fail(step.x_new, step.f_new, f64::NAN, Status::EvalFail),
        };
        let pair = match diagonal::secant_vectors(eval, &x, &step.x_new, &step.residual, &g_new) {
            Ok(p) => p,
            Err(_) => return fail(step.x_new, step.f_new, norm(&g_new), Status::EvalFail),
        };
        let pair = diagonal::safeguard_secant(pair, &g_new, safeguards);
        let hess_new = diagonal::update_diagonal(&pair, config.l, config.u);

        let eta = linesearch::eta_schedule(&config.eta_schedule, k, config.eta_min, config.eta_max);
        let ls_new = linesearch::update_pq(ls, eta, step.f_new);

        observer(&IterationInfo {
            k,
            f,
            p: ls.p,
            gnorm,
            g: &g,
            d: &d,
            gtd,
            hessian: &hess,
            alpha: step.alpha,
            trials: step.trials,
            f_new: step.f_new,
            p_new: ls_new.p,
            eta,
        });

        x = step.x_new;
        f = step.f_new;
        g = g_new;
        hess = hess_new;
        ls = ls_new;
        k += 1;
        eval.count_iteration();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::LinearResidual;

    #[test]
    fn termination_rules() {
        assert_eq!(
            check_termination(5e-5, 3, 1e-4, 1000),
            Termination::Stop(Status::Converged)
        );
        assert_eq!(
            check_termination(1.0, 1000, 1e-4, 1000),
            Termination::Stop(Status::MaxIter)
        );
        assert_eq!(check_termination(1.0, 0, 1e-4, 1000), Termination::Continue);
        // convergence wins when both hold
        assert_eq!(
            check_termination(0.0, 1000, 1e-4, 1000),
            Termination::Stop(Status::Converged)
        );
    }

    #[test]
    fn defaults_validate() {
        SolverConfig::default().validate().unwrap();
        SolverConfig::monotone().validate().unwrap();
        let bad = SolverConfig {
            l: 2.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverConfig {
            eta_min: 0.9,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn zero_gradient_start_returns_immediately() {
        let p = LinearResidual::new(
            "exact",
            vec![1.0, 0.0, 0.0, 1.0],
            vec![2.0, 3.0],
            vec![2.0, 3.0],
        );
        let r = solve(&p, &SolverConfig::default());
        assert_eq!(r.status, Status::Converged);
        assert_eq!((r.niter, r.nfeval, r.nmvp), (0, 1, 1));
        assert_eq!(r.fvalue, 0.0);
    }

    #[test]
    fn first_direction_is_steepest_descent() {
        let p = LinearResidual::new(
            "lin",
            vec![2.0, 1.0, 0.0, 3.0, 1.0, 1.0],
            vec![1.0, 2.0, 3.0],
            vec![0.0, 0.0],
        );
        let mut first = None;
        solve_observed(&p, &SolverConfig::default(), |it| {
            if it.k == 0 {
                first = Some((it.g.to_vec(), it.d.to_vec()));
            }
        });
        let (g, d) = first.unwrap();
        for (gi, di) in g.iter().zip(&d) {
            assert_eq!(*di, -gi);
        }
    }

    #[test]
    fn maxiter_keeps_last_iterate() {
        let p = LinearResidual::new(
            "lin",
            vec![1.0, 0.0, 0.0, 100.0],
            vec![1.0, 1.0],
            vec![0.0, 0.0],
        );
        let cfg = SolverConfig {
            k_max: 1,
            eps: 1e-12,
            ..Default::default()
        };
        let r = solve(&p, &cfg);
        assert_eq!(r.status, Status::MaxIter);
        assert_eq!(r.niter, 1);
        assert_eq!(r.nmvp, 4);
        assert!(r.fvalue < 1.0);
    }
}
