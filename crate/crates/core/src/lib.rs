//! Matrix-free nonlinear least squares with a structured diagonal Hessian.
//!
//! The solver minimizes `f(x) = 1/2 ||F(x)||^2` using only Jacobian-vector
//! products. Each iteration builds a diagonal Hessian approximation from a
//! structured secant pair (exact Gauss-Newton part plus an approximated
//! second-order part), safeguards it to stay positive definite and bounded,
//! and takes a step accepted by a nonmonotone Armijo line search.
//!
//! ```
//! use asdh::{solve, suite, SolverConfig};
//!
//! let id = "P19".parse().unwrap();
//! let problem = suite::instantiate(id, 1000).unwrap();
//! let record = solve(&problem, &SolverConfig::default());
//! assert!(record.converged());
//! assert_eq!((record.niter, record.nfeval, record.nmvp), (1, 2, 4));
//! ```

pub mod bench;
pub mod diagonal;
pub mod error;
pub mod linalg;
pub mod linesearch;
pub mod problem;
pub mod solver;
pub mod suite;

pub use diagonal::{DiagHessian, SafeguardParams, SecantPair};
pub use error::{BenchError, ConfigError, EvalError, LineSearchFailure, ProblemError};
pub use linesearch::{EtaSchedule, LineSearchParams, LineSearchState};
pub use problem::{EvalCounters, Evaluator, LinearResidual, NlsProblem};
pub use solver::{solve, solve_observed, IterationInfo, RunRecord, SolverConfig, Status};
