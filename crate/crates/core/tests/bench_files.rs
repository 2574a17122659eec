use std::fs;

use asdh::bench::{
    self, emit_csv, emit_profile, performance_profile, read_csv, read_profile_csv, BenchPlan,
    Metric, NamedConfig,
};
use asdh::suite::ProblemId;
use asdh::{RunRecord, Status};

fn ids(xs: &[&str]) -> Vec<ProblemId> {
    xs.iter().map(|s| s.parse().unwrap()).collect()
}

fn small_sweep() -> Vec<RunRecord> {
    let plan = BenchPlan {
        problems: ids(&["P2", "P8", "P19", "P20", "P25", "P28"]),
        large_dims: vec![100, 400],
        ..BenchPlan::default()
    };
    bench::run_benchmark(&plan).unwrap()
}

#[test]
fn results_csv_round_trips_counts_and_status() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("results.csv");
    let mut records = small_sweep();
    records[0].status = Status::MaxIter;
    emit_csv(&records, &path).unwrap();

    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "problem,n,m,solver,niter,nfeval,nmvp,time_s,fvalue,gnorm,status,theta,gamma,rho,l,u,eps,kmax"
    );
    let failed_row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&failed_row[4..10], &["", "", "", "", "", ""]);
    assert_eq!(failed_row[10], "maxiter");
    assert_eq!(
        &failed_row[11..],
        &["0.0001", "0.2", "0.0001", "1e-30", "1e30", "0.0001", "1000"]
    );

    let back = read_csv(&path).unwrap();
    assert_eq!(back.len(), records.len());
    for (a, b) in records.iter().zip(&back).skip(1) {
        assert_eq!(
            (&a.problem, a.n, a.m, &a.solver),
            (&b.problem, b.n, b.m, &b.solver)
        );
        assert_eq!(
            (a.niter, a.nfeval, a.nmvp, a.status),
            (b.niter, b.nfeval, b.nmvp, b.status)
        );
        assert_eq!(a.fvalue.to_bits(), b.fvalue.to_bits());
        assert_eq!(a.gnorm.to_bits(), b.gnorm.to_bits());
    }
    assert_eq!(back[0].status, Status::MaxIter);
    assert!(back[0].fvalue.is_nan());
}

#[test]
fn read_csv_rejects_foreign_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("other.csv");
    fs::write(&path, "a,b\n1,2\n").unwrap();
    assert!(matches!(
        read_csv(&path),
        Err(asdh::BenchError::Parse { line: 1, .. })
    ));
    assert!(matches!(
        read_csv(&dir.path().join("missing.csv")),
        Err(asdh::BenchError::Csv { .. })
    ));
}

#[test]
fn profiles_from_csv_match_profiles_from_memory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("results.csv");
    let records = small_sweep();
    emit_csv(&records, &path).unwrap();
    let back = read_csv(&path).unwrap();
    for metric in [Metric::Niter, Metric::Nfeval, Metric::Nmvp] {
        assert_eq!(
            performance_profile(&records, metric).unwrap(),
            performance_profile(&back, metric).unwrap()
        );
    }
}

#[test]
fn profile_csv_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let curves = performance_profile(&small_sweep(), Metric::Nmvp).unwrap();
    let written = emit_profile(&curves, &dir.path().join("nmvp.csv")).unwrap();
    assert_eq!(written.len(), 1);
    assert_eq!(read_profile_csv(&written[0]).unwrap(), curves);
}

#[test]
fn svg_output_comes_with_its_data() {
    let dir = tempfile::tempdir().unwrap();
    let curves = performance_profile(&small_sweep(), Metric::Nfeval).unwrap();
    let svg_path = dir.path().join("profile.svg");
    let written = emit_profile(&curves, &svg_path).unwrap();
    assert_eq!(
        written,
        vec![svg_path.clone(), dir.path().join("profile.csv")]
    );
    let svg = fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), curves.len());
    for c in &curves {
        assert!(svg.contains(&format!("<title>{}</title>", c.solver)));
    }
    assert_eq!(read_profile_csv(&written[1]).unwrap(), curves);
}

#[test]
fn config_files_drive_a_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("loose.cfg");
    fs::write(&cfg_path, "# looser stopping test\neps = 1e-2\nkmax = 50\n").unwrap();
    let loose = bench::resolve_config(cfg_path.to_str().unwrap()).unwrap();
    assert_eq!(loose.name, "loose");
    let plan = BenchPlan {
        problems: ids(&["P20"]),
        large_dims: vec![200],
        configs: vec![NamedConfig::asdh(), loose],
        repeats: 1,
    };
    let recs = bench::run_benchmark(&plan).unwrap();
    let by = |name: &str| recs.iter().find(|r| r.solver == name).unwrap();
    assert!(by("loose").niter < by("asdh").niter);
    assert!(by("loose").config.contains("eps=0.01"));

    fs::write(&cfg_path, "eps = 1e-2\nbogus = 3\n").unwrap();
    match bench::resolve_config(cfg_path.to_str().unwrap()) {
        Err(asdh::BenchError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
}
