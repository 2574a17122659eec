//! Fit `y = a exp(b t)` to noisy samples by implementing `NlsProblem`.
//!
//! Only Jacobian-vector products are supplied; the solver never forms the
//! Jacobian.

use asdh::{solve, NlsProblem, SolverConfig};

struct ExpFit {
    t: Vec<f64>,
    y: Vec<f64>,
}

impl NlsProblem for ExpFit {
    fn name(&self) -> &str {
        "exp-fit"
    }
    fn dim(&self) -> usize {
        2
    }
    fn residual_dim(&self) -> usize {
        self.t.len()
    }
    fn start_point(&self) -> Vec<f64> {
        vec![1.0, 0.0]
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        for ((o, &t), &y) in out.iter_mut().zip(&self.t).zip(&self.y) {
            *o = x[0] * (x[1] * t).exp() - y;
        }
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        for (o, &t) in out.iter_mut().zip(&self.t) {
            let e = (x[1] * t).exp();
            *o = e * v[0] + x[0] * t * e * v[1];
        }
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (&ui, &t) in u.iter().zip(&self.t) {
            let e = (x[1] * t).exp();
            out[0] += e * ui;
            out[1] += x[0] * t * e * ui;
        }
    }
}

fn main() {
    let (a, b) = (2.5, -1.3);
    let t: Vec<f64> = (0..40).map(|i| i as f64 * 0.05).collect();
    // deterministic "noise"
    let y = t
        .iter()
        .enumerate()
        .map(|(i, &ti)| a * (b * ti).exp() + 0.01 * ((i * 7919 % 13) as f64 - 6.0) / 6.0)
        .collect();
    let problem = ExpFit { t, y };

    let config = SolverConfig {
        eps: 1e-8,
        k_max: 5000,
        ..SolverConfig::default()
    };
    let r = solve(&problem, &config);
    println!(
        "status {} after {} iterations ({} products)",
        r.status, r.niter, r.nmvp
    );
    println!("a = {:.4} (true {a}), b = {:.4} (true {b})", r.x[0], r.x[1]);
    println!("residual sum of squares {:.3e}", 2.0 * r.fvalue);
}
