//! Building blocks shared by the test problems: block-separable residuals,
//! small dense residuals and diagonal residuals.

use crate::problem::NlsProblem;

/// A square block of `SIZE` residuals in `SIZE` variables, repeated along `x`.
pub(crate) trait Block: Send + Sync {
    const SIZE: usize;
    /// Writes the block residuals into `f` and the row-major block Jacobian
    /// into `jac`.
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]);
}

const MAX_BLOCK: usize = 4;

pub(crate) struct Blockwise<B> {
    pub name: String,
    pub n: usize,
    pub x0: Vec<f64>,
    pub block: B,
}

impl<B: Block> Blockwise<B> {
    fn for_each_block(&self, x: &[f64], mut op: impl FnMut(usize, &[f64], &[f64])) {
        let b = B::SIZE;
        let mut f = [0.0; MAX_BLOCK];
        let mut jac = [0.0; MAX_BLOCK * MAX_BLOCK];
        for (blk, xb) in x.chunks_exact(b).enumerate() {
            self.block.eval(xb, &mut f[..b], &mut jac[..b * b]);
            op(blk * b, &f[..b], &jac[..b * b]);
        }
    }
}

impl<B: Block> NlsProblem for Blockwise<B> {
    fn name(&self) -> &str {
        &self.name
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.n
    }
    fn start_point(&self) -> Vec<f64> {
        self.x0.clone()
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        self.for_each_block(x, |off, f, _| out[off..off + f.len()].copy_from_slice(f));
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let b = B::SIZE;
        self.for_each_block(x, |off, _, jac| {
            for r in 0..b {
                out[off + r] = (0..b).map(|c| jac[r * b + c] * v[off + c]).sum();
            }
        });
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        let b = B::SIZE;
        self.for_each_block(x, |off, _, jac| {
            for c in 0..b {
                out[off + c] = (0..b).map(|r| jac[r * b + c] * u[off + r]).sum();
            }
        });
    }
    fn gauss_newton_apply(&self, x: &[f64], s: &[f64], out: &mut [f64]) {
        let b = B::SIZE;
        self.for_each_block(x, |off, _, jac| {
            let mut js = [0.0; MAX_BLOCK];
            for r in 0..b {
                js[r] = (0..b).map(|c| jac[r * b + c] * s[off + c]).sum();
            }
            for c in 0..b {
                out[off + c] = (0..b).map(|r| jac[r * b + c] * js[r]).sum();
            }
        });
    }
}

/// Residual with a small dense Jacobian, evaluated in one pass.
pub(crate) trait Dense: Send + Sync {
    const N: usize;
    const M: usize;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]);
}

pub(crate) struct SmallDense<D> {
    pub name: String,
    pub x0: Vec<f64>,
    pub kernel: D,
}

impl<D: Dense> SmallDense<D> {
    fn jac(&self, x: &[f64]) -> Vec<f64> {
        let mut f = vec![0.0; D::M];
        let mut jac = vec![0.0; D::M * D::N];
        self.kernel.eval(x, &mut f, &mut jac);
        jac
    }
}

impl<D: Dense> NlsProblem for SmallDense<D> {
    fn name(&self) -> &str {
        &self.name
    }
    fn dim(&self) -> usize {
        D::N
    }
    fn residual_dim(&self) -> usize {
        D::M
    }
    fn start_point(&self) -> Vec<f64> {
        self.x0.clone()
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        let mut jac = vec![0.0; D::M * D::N];
        self.kernel.eval(x, out, &mut jac);
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let jac = self.jac(x);
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..D::N).map(|c| jac[r * D::N + c] * v[c]).sum();
        }
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        let jac = self.jac(x);
        for (c, o) in out.iter_mut().enumerate() {
            *o = (0..D::M).map(|r| jac[r * D::N + c] * u[r]).sum();
        }
    }
}

/// `F_i = c_i (exp(x_i) - x_i)`, a separable residual with diagonal Jacobian.
pub(crate) struct ExpDiagonal {
    pub name: String,
    pub weights: Vec<f64>,
    pub x0: Vec<f64>,
}

impl ExpDiagonal {
    fn slope(&self, x: &[f64], i: usize) -> f64 {
        self.weights[i] * x[i].exp_m1()
    }
}

impl NlsProblem for ExpDiagonal {
    fn name(&self) -> &str {
        &self.name
    }
    fn dim(&self) -> usize {
        self.weights.len()
    }
    fn residual_dim(&self) -> usize {
        self.weights.len()
    }
    fn start_point(&self) -> Vec<f64> {
        self.x0.clone()
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.weights[i] * (x[i].exp() - x[i]);
        }
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.slope(x, i) * v[i];
        }
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        self.jacobian_apply(x, u, out);
    }
    fn gauss_newton_apply(&self, x: &[f64], s: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let j = self.slope(x, i);
            *o = j * j * s[i];
        }
    }
}
