//! Check Jacobian products of every implemented problem: the adjoint
//! identity `<J v, u> = <v, J^T u>` and agreement with central finite
//! differences of the residual.

use asdh::linalg::{dot, norm};
use asdh::problem::fd_step;
use asdh::{suite, Evaluator, NlsProblem};

fn main() {
    println!(
        "{:<5} {:>6} {:>12} {:>12}",
        "prob", "n", "adjoint", "fd error"
    );
    for id in suite::required_ids() {
        let p = suite::instantiate(id, suite::spec(id).default_dim()).unwrap();
        let x = p.start_point();
        let v: Vec<f64> = (0..p.dim())
            .map(|i| ((i * 31 % 17) as f64 - 8.0) / 8.0)
            .collect();
        let u: Vec<f64> = (0..p.residual_dim())
            .map(|i| ((i * 13 % 7) as f64 - 3.0) / 3.0)
            .collect();

        let mut eval = Evaluator::new(&p);
        let jv = eval.jacobian_apply(&x, &v).unwrap();
        let jtu = eval.jacobian_transpose_apply(&x, &u).unwrap();
        let lhs = dot(&jv, &u);
        let adjoint = (lhs - dot(&v, &jtu)).abs() / (1.0 + lhs.abs());

        let fd = eval.fd_jacobian_apply(&x, &v, fd_step(&x)).unwrap();
        let diff: Vec<f64> = jv.iter().zip(&fd).map(|(a, b)| a - b).collect();
        let fd_err = norm(&diff) / (1.0 + norm(&jv));

        println!(
            "{:<5} {:>6} {:>12.2e} {:>12.2e}",
            id.to_string(),
            p.dim(),
            adjoint,
            fd_err
        );
    }
}
