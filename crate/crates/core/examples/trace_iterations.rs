//! Print the per-iteration trace of a solve: objective, reference value
//! `P_k`, `eta_k`, accepted step and backtracking trials.
//!
//! The trace shows the nonmonotone rule at work: `f` may rise above the
//! previous value as long as it stays below `P_k`.

use asdh::{solve_observed, suite, SolverConfig};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "P30".into());
    let id: suite::ProblemId = id.parse().expect("problem id");
    let problem = suite::instantiate(id, suite::spec(id).default_dim()).unwrap();

    println!(
        "{:>4} {:>14} {:>14} {:>10} {:>6} {:>9} {:>3}",
        "k", "f", "P", "|g|", "eta", "alpha", "tr"
    );
    let mut rises = 0;
    let record = solve_observed(&problem, &SolverConfig::default(), |it| {
        if it.f_new > it.f {
            rises += 1;
        }
        if it.k < 25 || it.k % 25 == 0 {
            println!(
                "{:>4} {:>14.6e} {:>14.6e} {:>10.3e} {:>6.3} {:>9.3e} {:>3}",
                it.k, it.f, it.p, it.gnorm, it.eta, it.alpha, it.trials
            );
        }
    });
    println!(
        "{}: {} after {} iterations, f = {:.6}; objective increased on {rises} accepted steps",
        id, record.status, record.niter, record.fvalue
    );
}
