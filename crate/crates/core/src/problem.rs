//! Matrix-free nonlinear least-squares problems.
//!
//! A problem supplies the residual `F: R^n -> R^m` together with the actions
//! of its Jacobian `J(x)` on vectors. The Jacobian is never materialized by
//! the solver. [`Evaluator`] wraps a problem with the evaluation counters
//! (`nfeval`, `nmvp`, `niter`) and turns non-finite outputs into errors.

use crate::error::{EvalError, Operator};
use crate::linalg;

/// A nonlinear least-squares problem `min 1/2 ||F(x)||^2` exposed through
/// operator actions only.
///
/// Implementations must be deterministic: the same `x` always produces
/// bitwise identical outputs. All output slices are fully overwritten.
pub trait NlsProblem: Send + Sync {
    fn name(&self) -> &str;

    /// Number of unknowns `n`.
    fn dim(&self) -> usize;

    /// Number of residuals `m`.
    fn residual_dim(&self) -> usize;

    fn start_point(&self) -> Vec<f64>;

    /// Writes `F(x)` into `out` (length `m`).
    fn residual(&self, x: &[f64], out: &mut [f64]);

    /// Writes `J(x) v` into `out` (length `m`).
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]);

    /// Writes `J(x)^T u` into `out` (length `n`).
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]);

    /// Writes `J(x)^T J(x) s` into `out` (length `n`).
    ///
    /// The default composes the two Jacobian actions. Problems with block or
    /// banded structure may override it with a fused kernel.
    fn gauss_newton_apply(&self, x: &[f64], s: &[f64], out: &mut [f64]) {
        let mut js = vec![0.0; self.residual_dim()];
        self.jacobian_apply(x, s, &mut js);
        self.jacobian_transpose_apply(x, &js, out);
    }
}

impl<P: NlsProblem + ?Sized> NlsProblem for Box<P> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn residual_dim(&self) -> usize {
        (**self).residual_dim()
    }
    fn start_point(&self) -> Vec<f64> {
        (**self).start_point()
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        (**self).residual(x, out)
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        (**self).jacobian_apply(x, v, out)
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        (**self).jacobian_transpose_apply(x, u, out)
    }
    fn gauss_newton_apply(&self, x: &[f64], s: &[f64], out: &mut [f64]) {
        (**self).gauss_newton_apply(x, s, out)
    }
}

/// Per-run evaluation counters.
///
/// `nmvp` counts Jacobian-operator applications; a fused `J^T J s` product
/// counts once, so a solver iteration costs exactly three.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounters {
    pub nfeval: u64,
    pub nmvp: u64,
    pub niter: u64,
}

/// A problem together with the counters of one run.
pub struct Evaluator<'p, P: ?Sized> {
    problem: &'p P,
    counters: EvalCounters,
}

impl<'p, P: NlsProblem + ?Sized> Evaluator<'p, P> {
    pub fn new(problem: &'p P) -> Self {
        Self {
            problem,
            counters: EvalCounters::default(),
        }
    }

    pub fn problem(&self) -> &'p P {
        self.problem
    }

    pub fn counters(&self) -> EvalCounters {
        self.counters
    }

    pub(crate) fn count_iteration(&mut self) {
        self.counters.niter += 1;
    }

    /// Evaluates `F(x)`. Costs one `nfeval`.
    pub fn residual(&mut self, x: &[f64]) -> Result<Vec<f64>, EvalError> {
        check_len(x.len(), self.problem.dim());
        self.counters.nfeval += 1;
        let mut out = vec![0.0; self.problem.residual_dim()];
        self.problem.residual(x, &mut out);
        check_finite(Operator::Residual, &out)?;
        Ok(out)
    }

    /// Evaluates `J(x) v`. Costs one `nmvp`.
    pub fn jacobian_apply(&mut self, x: &[f64], v: &[f64]) -> Result<Vec<f64>, EvalError> {
        check_len(x.len(), self.problem.dim());
        check_len(v.len(), self.problem.dim());
        self.counters.nmvp += 1;
        let mut out = vec![0.0; self.problem.residual_dim()];
        self.problem.jacobian_apply(x, v, &mut out);
        check_finite(Operator::Jacobian, &out)?;
        Ok(out)
    }

    /// Evaluates `J(x)^T u`. Costs one `nmvp`.
    pub fn jacobian_transpose_apply(
        &mut self,
        x: &[f64],
        u: &[f64],
    ) -> Result<Vec<f64>, EvalError> {
        check_len(x.len(), self.problem.dim());
        check_len(u.len(), self.problem.residual_dim());
        self.counters.nmvp += 1;
        let mut out = vec![0.0; self.problem.dim()];
        self.problem.jacobian_transpose_apply(x, u, &mut out);
        check_finite(Operator::JacobianTranspose, &out)?;
        Ok(out)
    }

    /// Gradient `g(x) = J(x)^T F(x)` from an already evaluated residual.
    pub fn gradient(&mut self, x: &[f64], fx: &[f64]) -> Result<Vec<f64>, EvalError> {
        self.jacobian_transpose_apply(x, fx)
    }

    /// Evaluates `J(x)^T J(x) s` as one fused product (one `nmvp`).
    pub fn gauss_newton_apply(&mut self, x: &[f64], s: &[f64]) -> Result<Vec<f64>, EvalError> {
        check_len(x.len(), self.problem.dim());
        check_len(s.len(), self.problem.dim());
        self.counters.nmvp += 1;
        let mut out = vec![0.0; self.problem.dim()];
        self.problem.gauss_newton_apply(x, s, &mut out);
        check_finite(Operator::GaussNewton, &out)?;
        Ok(out)
    }

    /// Central-difference approximation `(F(x + h v) - F(x - h v)) / 2h`.
    ///
    /// Validation oracle only: costs two `nfeval` and no `nmvp`.
    pub fn fd_jacobian_apply(
        &mut self,
        x: &[f64],
        v: &[f64],
        h: f64,
    ) -> Result<Vec<f64>, EvalError> {
        assert!(h > 0.0, "finite-difference step must be positive");
        let plus: Vec<f64> = x.iter().zip(v).map(|(xi, vi)| xi + h * vi).collect();
        let minus: Vec<f64> = x.iter().zip(v).map(|(xi, vi)| xi - h * vi).collect();
        let fp = self.residual(&plus)?;
        let fm = self.residual(&minus)?;
        let out: Vec<f64> = fp
            .iter()
            .zip(&fm)
            .map(|(a, b)| (a - b) / (2.0 * h))
            .collect();
        check_finite(Operator::FiniteDifference, &out)?;
        Ok(out)
    }
}

/// Step used by the finite-difference oracle: `sqrt(eps) * (1 + ||x||_inf)`.
pub fn fd_step(x: &[f64]) -> f64 {
    f64::EPSILON.sqrt() * (1.0 + linalg::norm_inf(x))
}

/// Objective value `1/2 ||F||^2` from a residual vector.
pub fn objective(fx: &[f64]) -> f64 {
    0.5 * linalg::dot(fx, fx)
}

fn check_len(got: usize, want: usize) {
    assert_eq!(got, want, "vector length mismatch");
}

fn check_finite(op: Operator, v: &[f64]) -> Result<(), EvalError> {
    match v.iter().position(|e| !e.is_finite()) {
        Some(index) => Err(EvalError::NonFinite { op, index }),
        None => Ok(()),
    }
}

/// Dense linear residual `F(x) = A x - b`, stored row-major.
///
/// Useful for tests and as a template for user problems; the Jacobian is the
/// constant matrix `A`.
#[derive(Debug, Clone)]
pub struct LinearResidual {
    name: String,
    a: Vec<f64>,
    b: Vec<f64>,
    x0: Vec<f64>,
    m: usize,
    n: usize,
}

impl LinearResidual {
    /// # Panics
    ///
    /// Panics if `a.len() != b.len() * x0.len()` or either dimension is zero.
    pub fn new(name: impl Into<String>, a: Vec<f64>, b: Vec<f64>, x0: Vec<f64>) -> Self {
        let (m, n) = (b.len(), x0.len());
        assert!(m >= 1 && n >= 1, "dimensions must be positive");
        assert_eq!(a.len(), m * n, "matrix must be m x n, row-major");
        Self {
            name: name.into(),
            a,
            b,
            x0,
            m,
            n,
        }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.a[i * self.n..(i + 1) * self.n]
    }
}

impl NlsProblem for LinearResidual {
    fn name(&self) -> &str {
        &self.name
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.m
    }
    fn start_point(&self) -> Vec<f64> {
        self.x0.clone()
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = linalg::dot(self.row(i), x) - self.b[i];
        }
    }
    fn jacobian_apply(&self, _x: &[f64], v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = linalg::dot(self.row(i), v);
        }
    }
    fn jacobian_transpose_apply(&self, _x: &[f64], u: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (i, ui) in u.iter().enumerate() {
            linalg::axpy(*ui, self.row(i), out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_linear() -> LinearResidual {
        LinearResidual::new(
            "lin",
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            vec![1.0, 0.0, -1.0],
            vec![0.5, -0.5],
        )
    }

    #[test]
    fn counters_follow_convention() {
        let p = small_linear();
        let mut ev = Evaluator::new(&p);
        let x = p.start_point();
        let f = ev.residual(&x).unwrap();
        ev.gradient(&x, &f).unwrap();
        ev.gauss_newton_apply(&x, &[1.0, 1.0]).unwrap();
        ev.jacobian_apply(&x, &[1.0, 0.0]).unwrap();
        let c = ev.counters();
        assert_eq!((c.nfeval, c.nmvp, c.niter), (1, 3, 0));
        ev.fd_jacobian_apply(&x, &[1.0, 0.0], 1e-6).unwrap();
        assert_eq!(ev.counters().nfeval, 3);
        assert_eq!(ev.counters().nmvp, 3);
    }

    #[test]
    fn gauss_newton_matches_composition() {
        let p = small_linear();
        let mut ev = Evaluator::new(&p);
        let x = [0.3, 0.7];
        let s = [1.5, -2.0];
        let js = ev.jacobian_apply(&x, &s).unwrap();
        let composed = ev.jacobian_transpose_apply(&x, &js).unwrap();
        let fused = ev.gauss_newton_apply(&x, &s).unwrap();
        assert_eq!(composed, fused);
    }

    #[test]
    fn linear_fd_is_exact() {
        let p = small_linear();
        let mut ev = Evaluator::new(&p);
        let x = [0.3, 0.7];
        let v = [1.0, -1.0];
        let jv = ev.jacobian_apply(&x, &v).unwrap();
        let fd = ev.fd_jacobian_apply(&x, &v, 1e-3).unwrap();
        for (a, b) in jv.iter().zip(&fd) {
            assert!((a - b).abs() < 1e-10);
        }
        // constant Jacobian
        assert_eq!(jv, ev.jacobian_apply(&[10.0, -3.0], &v).unwrap());
        assert_eq!(
            ev.fd_jacobian_apply(&x, &[0.0, 0.0], 1e-3).unwrap(),
            vec![0.0; 3]
        );
    }

    struct Blowup;
    impl NlsProblem for Blowup {
        fn name(&self) -> &str {
            "blowup"
        }
        fn dim(&self) -> usize {
            1
        }
        fn residual_dim(&self) -> usize {
            2
        }
        fn start_point(&self) -> Vec<f64> {
            vec![0.0]
        }
        fn residual(&self, x: &[f64], out: &mut [f64]) {
            out[0] = x[0];
            out[1] = 1.0 / x[0];
        }
        fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
            out[0] = v[0];
            out[1] = -v[0] / (x[0] * x[0]);
        }
        fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
            out[0] = u[0] - u[1] / (x[0] * x[0]);
        }
    }

    #[test]
    fn non_finite_output_reports_index() {
        let mut ev = Evaluator::new(&Blowup);
        let err = ev.residual(&[0.0]).unwrap_err();
        assert_eq!(
            err,
            EvalError::NonFinite {
                op: Operator::Residual,
                index: 1
            }
        );
        // the failed evaluation still counts
        assert_eq!(ev.counters().nfeval, 1);
    }
}
