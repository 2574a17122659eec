use asdh::suite::{self, ProblemId};
use asdh::{solve, RunRecord, SolverConfig};

fn run(p: &str, n: usize) -> RunRecord {
    let id: ProblemId = p.parse().unwrap();
    let r = solve(
        &suite::instantiate(id, n).unwrap(),
        &SolverConfig::default(),
    );
    assert!(r.converged(), "{p} n={n}: {}", r.status);
    r
}

fn counts(r: &RunRecord) -> (u64, u64, u64) {
    (r.niter, r.nfeval, r.nmvp)
}

#[test]
fn rosenbrock_rows() {
    for n in [2, 1000, 5000, 10000] {
        let p = if n == 2 { "P28" } else { "P19" };
        let r = run(p, n);
        assert_eq!(counts(&r), (1, 2, 4), "{p} n={n}");
        assert_eq!(r.fvalue, 0.0);
    }
}

#[test]
fn strictly_convex_ii_rows() {
    for (n, want) in [
        (1000, (8, 23, 25)),
        (5000, (8, 27, 25)),
        (10000, (9, 30, 28)),
    ] {
        let r = run("P9", n);
        assert_eq!(counts(&r), want, "n={n}");
        let nf = n as f64;
        let optimum = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 1200.0;
        assert!((r.fvalue - optimum).abs() <= 1e-9 * optimum);
    }
}

#[test]
fn linear_full_rank_rows() {
    for n in [5000, 10000] {
        assert_eq!(counts(&run("P4", n)), (2, 3, 7), "n={n}");
    }
    // exact minima of the quadratic, from a dense least-squares solve
    for (n, min) in [
        (1000, 0.5019999920000321),
        (5000, 0.5003999999359998),
        (10000, 0.5001999999920004),
    ] {
        let r = run("P4", n);
        // stopping at |g| <= 1e-4 leaves f - f* of order |g|^2
        assert!((r.fvalue - min).abs() < 1e-8, "n={n}: {}", r.fvalue);
    }
}

#[test]
fn jennrich_sampson_row() {
    let r = run("P25", 2);
    assert_eq!(counts(&r), (4, 20, 13));
    assert!((r.fvalue - 62.1811).abs() < 1e-3);
}

#[test]
fn strictly_convex_i_optimum() {
    for n in [1000, 5000, 10000] {
        let r = run("P8", n);
        assert!((r.fvalue - n as f64 / 2.0).abs() < 1e-9 * n as f64);
        assert!(r.x.iter().all(|x| x.abs() < 1e-3));
    }
}

#[test]
fn small_problem_optima() {
    let bard = run("P23", 3);
    assert!((bard.fvalue - 8.744823).abs() < 1e-5);
    let fr = run("P30", 2);
    assert!((fr.fvalue - 24.492127).abs() < 1e-5);
    let box3d = run("P26", 3);
    assert!(box3d.fvalue < 1e-6);
    let brown = run("P24", 2);
    assert!(brown.fvalue < 1e-6);
}

#[test]
fn every_required_problem_converges_at_default_size() {
    for id in suite::required_ids() {
        let n = suite::spec(id).default_dim();
        let r = run(&id.to_string(), n);
        assert!(r.gnorm <= 1e-4);
        assert_eq!(r.nmvp, 3 * r.niter + 1, "{id}");
        assert_eq!(r.x.len(), n);
    }
}
