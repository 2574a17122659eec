//! Compare the nonmonotone line search with its monotone special case
//! (`eta = 0`) on every implemented problem.
//!
//! ```text
//! cargo run --release --example monotone_vs_nonmonotone -- 5000
//! ```

use asdh::{solve, suite, RunRecord, SolverConfig};

fn cell(r: &RunRecord) -> String {
    if r.converged() {
        format!("{:>5} {:>5} {:>6}", r.niter, r.nfeval, r.nmvp)
    } else {
        format!("{:>18}", r.status)
    }
}

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("dimension"))
        .unwrap_or(1000);
    let nonmonotone = SolverConfig::default();
    let monotone = SolverConfig::monotone();

    println!(
        "{:<5} {:>6}  {:^18}  {:^18}",
        "", "", "nonmonotone", "monotone"
    );
    println!(
        "{:<5} {:>6}  {:>5} {:>5} {:>6}  {:>5} {:>5} {:>6}",
        "prob", "n", "iter", "feval", "mvp", "iter", "feval", "mvp"
    );
    let (mut fewer, mut more) = (0, 0);
    for id in suite::required_ids() {
        let spec = suite::spec(id);
        let dim = match spec.dims {
            suite::DimRule::Fixed { n, .. } => n,
            suite::DimRule::Free { .. } => n,
        };
        let p = suite::instantiate(id, dim).unwrap();
        let a = solve(&p, &nonmonotone);
        let b = solve(&p, &monotone);
        if a.converged() && b.converged() {
            if a.nfeval < b.nfeval {
                fewer += 1;
            } else if a.nfeval > b.nfeval {
                more += 1;
            }
        }
        println!(
            "{:<5} {:>6}  {}  {}",
            id.to_string(),
            dim,
            cell(&a),
            cell(&b)
        );
    }
    println!("nonmonotone used fewer evaluations on {fewer} problems, more on {more}");
}
