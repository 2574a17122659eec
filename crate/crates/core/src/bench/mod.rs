//! Benchmark sweeps over the problem suite, results files and performance
//! profiles.

pub mod config;
pub mod io;
pub mod profile;
pub mod run;

pub use config::{parse_config, parse_eta, resolve_config, NamedConfig};
pub use io::{emit_csv, emit_profile, read_csv, read_profile_csv, render_svg, write_profile_csv};
pub use profile::{performance_profile, performance_ratios, ratio_table, Metric, ProfileCurve};
pub use run::{run_benchmark, run_task, sort_records, BenchPlan, Task};
