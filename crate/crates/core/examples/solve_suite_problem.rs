//! Solve one catalog problem with the default settings.
//!
//! ```text
//! cargo run --release --example solve_suite_problem -- P19 1000
//! ```

use asdh::{solve, suite, SolverConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let id: suite::ProblemId = args
        .next()
        .unwrap_or_else(|| "P19".into())
        .parse()
        .expect("problem id such as P19");
    let spec = suite::spec(id);
    let n = args
        .next()
        .map(|s| s.parse().expect("dimension"))
        .unwrap_or_else(|| spec.default_dim());

    let problem = suite::instantiate(id, n).expect("implemented problem and valid n");
    let record = solve(&problem, &SolverConfig::default());

    println!("{} ({}), n = {}, m = {}", id, spec.name, record.n, record.m);
    println!("status {}", record.status);
    println!(
        "niter {}  nfeval {}  nmvp {}",
        record.niter, record.nfeval, record.nmvp
    );
    println!("f = {:.6e}, |g| = {:.3e}", record.fvalue, record.gnorm);
    let head: Vec<String> = record.x.iter().take(6).map(|v| format!("{v:.6}")).collect();
    println!("x[..6] = [{}]", head.join(", "));
}
