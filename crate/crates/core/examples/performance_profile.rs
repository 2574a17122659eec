//! Benchmark the default and monotone solvers on the suite, write the
//! results file and Dolan-More profiles for every metric.
//!
//! ```text
//! cargo run --release --example performance_profile -- out_dir
//! ```

use std::path::PathBuf;

use asdh::bench::{self, BenchPlan, Metric};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "profile_out".into()),
    );
    std::fs::create_dir_all(&out)?;

    let plan = BenchPlan {
        large_dims: vec![1000, 5000],
        ..BenchPlan::default()
    };
    let records = bench::run_benchmark(&plan)?;
    let results = out.join("results.csv");
    bench::emit_csv(&records, &results)?;
    println!("{} runs written to {}", records.len(), results.display());

    for metric in Metric::ALL {
        let curves = bench::performance_profile(&records, metric)?;
        let summary: Vec<String> = curves
            .iter()
            .map(|c| {
                format!(
                    "{} rho(1)={:.2} rho(2)={:.2}",
                    c.solver,
                    c.rho_at(1.0),
                    c.rho_at(2.0)
                )
            })
            .collect();
        println!("{metric:<7} {}", summary.join("  "));
        bench::emit_profile(&curves, &out.join(format!("profile_{metric}.svg")))?;
    }
    Ok(())
}
