//! Load solver settings from a flat `key=value` file and compare them with
//! the defaults on one problem.

use asdh::bench::{parse_config, NamedConfig};
use asdh::{solve, suite};

const TEXT: &str = "\
# stricter stopping test, slower decay of eta
name = strict
eps = 1e-8
kmax = 5000
eta = gaussian:0.75:90:0.1
";

fn main() {
    let custom = parse_config(TEXT, "unnamed").expect("valid config");
    let problem = suite::instantiate("P14".parse().unwrap(), 1000).unwrap();
    for c in [NamedConfig::asdh(), custom] {
        let r = solve(&problem, &c.config);
        println!(
            "{:<8} {:<9} niter {:>4}  nfeval {:>4}  |g| {:.2e}",
            c.name, r.status, r.niter, r.nfeval, r.gnorm
        );
        println!("         {}", c.config.fingerprint());
    }
}
