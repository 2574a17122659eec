//! Residual definitions of the implemented test problems.
//!
//! Indices in comments are 1-based to match the usual formula statements.

use super::kernels::{Block, Dense};
use crate::problem::NlsProblem;

/// Penalty function I, square variant:
/// `F_i = sqrt(1e-5) (x_i - 1)` for `i < n`, `F_n = ||x||^2 / (4n) - 1/4`.
pub(crate) struct PenaltyI {
    pub n: usize,
}

const PENALTY_A: f64 = 3.162_277_660_168_379_5e-3; // sqrt(1e-5)

impl NlsProblem for PenaltyI {
    fn name(&self) -> &str {
        "P1"
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.n
    }
    fn start_point(&self) -> Vec<f64> {
        vec![1.0 / 3.0; self.n]
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        for i in 0..n - 1 {
            out[i] = PENALTY_A * (x[i] - 1.0);
        }
        let sq: f64 = x.iter().map(|v| v * v).sum();
        out[n - 1] = sq / (4.0 * n as f64) - 0.25;
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let n = self.n;
        for i in 0..n - 1 {
            out[i] = PENALTY_A * v[i];
        }
        let xv: f64 = x.iter().zip(v).map(|(a, b)| a * b).sum();
        out[n - 1] = xv / (2.0 * n as f64);
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        let n = self.n;
        let last = u[n - 1] / (2.0 * n as f64);
        for j in 0..n {
            let diag = if j < n - 1 { PENALTY_A * u[j] } else { 0.0 };
            out[j] = diag + last * x[j];
        }
    }
}

/// Trigonometric function:
/// `F_i = n - sum_j cos x_j + i (1 - cos x_i) - sin x_i`.
pub(crate) struct Trigonometric {
    pub n: usize,
}

impl NlsProblem for Trigonometric {
    fn name(&self) -> &str {
        "P2"
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.n
    }
    fn start_point(&self) -> Vec<f64> {
        vec![1.0 / self.n as f64; self.n]
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        // 1 - cos t = 2 sin^2(t/2), free of cancellation near zero
        let versin = |t: f64| 2.0 * (0.5 * t).sin().powi(2);
        let shared: f64 = x.iter().map(|&v| versin(v)).sum();
        for (i, o) in out.iter_mut().enumerate() {
            let idx = (i + 1) as f64;
            *o = shared + idx * versin(x[i]) - x[i].sin();
        }
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let sv: f64 = x.iter().zip(v).map(|(a, b)| a.sin() * b).sum();
        for (i, o) in out.iter_mut().enumerate() {
            let idx = (i + 1) as f64;
            *o = sv + (idx * x[i].sin() - x[i].cos()) * v[i];
        }
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        let usum: f64 = u.iter().sum();
        for (j, o) in out.iter_mut().enumerate() {
            let idx = (j + 1) as f64;
            *o = x[j].sin() * usum + (idx * x[j].sin() - x[j].cos()) * u[j];
        }
    }
}

/// Discrete boundary value problem with `h = 1/(n+1)`, `t_i = i h`:
/// `F_i = 2 x_i - x_{i-1} - x_{i+1} + h^2 (x_i + t_i + 1)^3 / 2`, `x_0 = x_{n+1} = 0`.
pub(crate) struct DiscreteBoundary {
    pub n: usize,
}

impl DiscreteBoundary {
    fn h(&self) -> f64 {
        1.0 / (self.n as f64 + 1.0)
    }

    fn diag(&self, x: &[f64], i: usize) -> f64 {
        let h = self.h();
        let t = (i + 1) as f64 * h;
        let w = x[i] + t + 1.0;
        2.0 + 1.5 * h * h * w * w
    }
}

impl NlsProblem for DiscreteBoundary {
    fn name(&self) -> &str {
        "P3"
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.n
    }
    fn start_point(&self) -> Vec<f64> {
        let h = self.h();
        (1..=self.n)
            .map(|i| {
                let t = i as f64 * h;
                t * (t - 1.0)
            })
            .collect()
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        let h = self.h();
        let n = self.n;
        for i in 0..n {
            let t = (i + 1) as f64 * h;
            let left = if i > 0 { x[i - 1] } else { 0.0 };
            let right = if i + 1 < n { x[i + 1] } else { 0.0 };
            let w = x[i] + t + 1.0;
            out[i] = 2.0 * x[i] - left - right + 0.5 * h * h * w * w * w;
        }
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let left = if i > 0 { v[i - 1] } else { 0.0 };
            let right = if i + 1 < n { v[i + 1] } else { 0.0 };
            out[i] = self.diag(x, i) * v[i] - left - right;
        }
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        // off-diagonals are symmetric
        self.jacobian_apply(x, u, out);
    }
}

/// Linear function of full rank with `m = n + 1` residuals and coupling
/// coefficient `c = 2 / (n + 2)`:
/// `F_i = x_i - c sum_j x_j - 1` for `i <= n`, `F_{n+1} = -c sum_j x_j - 1`.
pub(crate) struct LinearFullRank {
    pub n: usize,
}

impl LinearFullRank {
    fn coupling(&self) -> f64 {
        2.0 / (self.n as f64 + 2.0)
    }
}

impl NlsProblem for LinearFullRank {
    fn name(&self) -> &str {
        "P4"
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.n + 1
    }
    fn start_point(&self) -> Vec<f64> {
        vec![1.0; self.n]
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        let t = self.coupling() * x.iter().sum::<f64>();
        for i in 0..self.n {
            out[i] = x[i] - t - 1.0;
        }
        out[self.n] = -t - 1.0;
    }
    fn jacobian_apply(&self, _x: &[f64], v: &[f64], out: &mut [f64]) {
        let t = self.coupling() * v.iter().sum::<f64>();
        for i in 0..self.n {
            out[i] = v[i] - t;
        }
        out[self.n] = -t;
    }
    fn jacobian_transpose_apply(&self, _x: &[f64], u: &[f64], out: &mut [f64]) {
        let t = self.coupling() * u.iter().sum::<f64>();
        for (j, o) in out.iter_mut().enumerate() {
            *o = u[j] - t;
        }
    }
}

/// Brown almost-linear function:
/// `F_i = x_i + sum_j x_j - (n + 1)` for `i < n`, `F_n = prod_j x_j - 1`.
pub(crate) struct BrownAlmostLinear {
    pub n: usize,
}

impl BrownAlmostLinear {
    /// `prod_{j != k} x_j` for every `k`, without division.
    fn partial_products(x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let mut out = vec![1.0; n];
        let mut acc = 1.0;
        for k in 0..n {
            out[k] = acc;
            acc *= x[k];
        }
        acc = 1.0;
        for k in (0..n).rev() {
            out[k] *= acc;
            acc *= x[k];
        }
        out
    }
}

impl NlsProblem for BrownAlmostLinear {
    fn name(&self) -> &str {
        "P10"
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.n
    }
    fn start_point(&self) -> Vec<f64> {
        vec![0.5; self.n]
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        let sum: f64 = x.iter().sum();
        for i in 0..n - 1 {
            out[i] = x[i] + sum - (n as f64 + 1.0);
        }
        out[n - 1] = x.iter().product::<f64>() - 1.0;
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let n = self.n;
        let vsum: f64 = v.iter().sum();
        for i in 0..n - 1 {
            out[i] = v[i] + vsum;
        }
        let pp = Self::partial_products(x);
        out[n - 1] = pp.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        let n = self.n;
        let usum: f64 = u[..n - 1].iter().sum();
        let pp = Self::partial_products(x);
        for j in 0..n {
            let own = if j < n - 1 { u[j] } else { 0.0 };
            out[j] = own + usum + u[n - 1] * pp[j];
        }
    }
}

/// Broyden tridiagonal function:
/// `F_i = (3 - 2 x_i) x_i - x_{i-1} - 2 x_{i+1} + 1`, `x_0 = x_{n+1} = 0`.
pub(crate) struct BroydenTridiagonal {
    pub n: usize,
}

impl NlsProblem for BroydenTridiagonal {
    fn name(&self) -> &str {
        "P17"
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn residual_dim(&self) -> usize {
        self.n
    }
    fn start_point(&self) -> Vec<f64> {
        vec![-1.0; self.n]
    }
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let left = if i > 0 { x[i - 1] } else { 0.0 };
            let right = if i + 1 < n { x[i + 1] } else { 0.0 };
            out[i] = (3.0 - 2.0 * x[i]) * x[i] - left - 2.0 * right + 1.0;
        }
    }
    fn jacobian_apply(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let left = if i > 0 { v[i - 1] } else { 0.0 };
            let right = if i + 1 < n { v[i + 1] } else { 0.0 };
            out[i] = (3.0 - 4.0 * x[i]) * v[i] - left - 2.0 * right;
        }
    }
    fn jacobian_transpose_apply(&self, x: &[f64], u: &[f64], out: &mut [f64]) {
        let n = self.n;
        for j in 0..n {
            // column j: row j-1 carries -2, row j+1 carries -1
            let above = if j > 0 { u[j - 1] } else { 0.0 };
            let below = if j + 1 < n { u[j + 1] } else { 0.0 };
            out[j] = (3.0 - 4.0 * x[j]) * u[j] - 2.0 * above - below;
        }
    }
}

/// Rosenbrock block: `F_1 = 10 (x_2 - x_1^2)`, `F_2 = 1 - x_1`.
pub(crate) struct RosenbrockBlock;

impl Block for RosenbrockBlock {
    const SIZE: usize = 2;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        f[0] = 10.0 * (x[1] - x[0] * x[0]);
        f[1] = 1.0 - x[0];
        jac.copy_from_slice(&[-20.0 * x[0], 10.0, -1.0, 0.0]);
    }
}

/// Freudenstein-Roth block:
/// `F_1 = -13 + x_1 + ((5 - x_2) x_2 - 2) x_2`,
/// `F_2 = -29 + x_1 + ((x_2 + 1) x_2 - 14) x_2`.
pub(crate) struct FreudensteinRothBlock;

impl Block for FreudensteinRothBlock {
    const SIZE: usize = 2;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        let (a, b) = (x[0], x[1]);
        f[0] = -13.0 + a + ((5.0 - b) * b - 2.0) * b;
        f[1] = -29.0 + a + ((b + 1.0) * b - 14.0) * b;
        jac.copy_from_slice(&[
            1.0,
            10.0 * b - 3.0 * b * b - 2.0,
            1.0,
            3.0 * b * b + 2.0 * b - 14.0,
        ]);
    }
}

/// Himmelblau block: `F_1 = x_1^2 + x_2 - 11`, `F_2 = x_1 + x_2^2 - 7`.
pub(crate) struct HimmelblauBlock;

impl Block for HimmelblauBlock {
    const SIZE: usize = 2;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        let (a, b) = (x[0], x[1]);
        f[0] = a * a + b - 11.0;
        f[1] = a + b * b - 7.0;
        jac.copy_from_slice(&[2.0 * a, 1.0, 1.0, 2.0 * b]);
    }
}

/// Powell singular block of four residuals.
pub(crate) struct PowellSingularBlock;

const SQRT5: f64 = 2.236_067_977_499_79;
const SQRT10: f64 = 3.162_277_660_168_379_5;

impl Block for PowellSingularBlock {
    const SIZE: usize = 4;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        let p = b - 2.0 * c;
        let q = a - d;
        f[0] = a + 10.0 * b;
        f[1] = SQRT5 * (c - d);
        f[2] = p * p;
        f[3] = SQRT10 * q * q;
        #[rustfmt::skip]
        jac.copy_from_slice(&[
            1.0, 10.0, 0.0, 0.0,
            0.0, 0.0, SQRT5, -SQRT5,
            0.0, 2.0 * p, -4.0 * p, 0.0,
            2.0 * SQRT10 * q, 0.0, 0.0, -2.0 * SQRT10 * q,
        ]);
    }
}

/// Bard function, `n = 3`, `m = 15`.
pub(crate) struct Bard;

const BARD_Y: [f64; 15] = [
    0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39, 0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39,
];

impl Dense for Bard {
    const N: usize = 3;
    const M: usize = 15;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        for i in 0..15 {
            let u = (i + 1) as f64;
            let v = 15.0 - i as f64;
            let w = u.min(v);
            let den = v * x[1] + w * x[2];
            f[i] = BARD_Y[i] - (x[0] + u / den);
            let d2 = den * den;
            jac[3 * i] = -1.0;
            jac[3 * i + 1] = u * v / d2;
            jac[3 * i + 2] = u * w / d2;
        }
    }
}

/// Brown badly scaled function, `n = 2`, `m = 3`.
pub(crate) struct BrownBadlyScaled;

impl Dense for BrownBadlyScaled {
    const N: usize = 2;
    const M: usize = 3;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        f[0] = x[0] - 1e6;
        f[1] = x[1] - 2e-6;
        f[2] = x[0] * x[1] - 2.0;
        jac.copy_from_slice(&[1.0, 0.0, 0.0, 1.0, x[1], x[0]]);
    }
}

/// Jennrich-Sampson function, `n = 2`, `m = 10`:
/// `F_i = 2 + 2i - (exp(i x_1) + exp(i x_2))`.
pub(crate) struct JennrichSampson;

impl Dense for JennrichSampson {
    const N: usize = 2;
    const M: usize = 10;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        for i in 0..10 {
            let t = (i + 1) as f64;
            let (e1, e2) = ((t * x[0]).exp(), (t * x[1]).exp());
            f[i] = 2.0 + 2.0 * t - (e1 + e2);
            jac[2 * i] = -t * e1;
            jac[2 * i + 1] = -t * e2;
        }
    }
}

/// Box three-dimensional function, `n = 3`, `m = 10`, `t_i = 0.1 i`:
/// `F_i = exp(-t_i x_1) - exp(-t_i x_2) - x_3 (exp(-t_i) - exp(-10 t_i))`.
pub(crate) struct Box3d;

impl Dense for Box3d {
    const N: usize = 3;
    const M: usize = 10;
    fn eval(&self, x: &[f64], f: &mut [f64], jac: &mut [f64]) {
        for i in 0..10 {
            let t = 0.1 * (i + 1) as f64;
            let (e1, e2) = ((-t * x[0]).exp(), (-t * x[1]).exp());
            let c = (-t).exp() - (-10.0 * t).exp();
            f[i] = e1 - e2 - x[2] * c;
            jac[3 * i] = -t * e1;
            jac[3 * i + 1] = t * e2;
            jac[3 * i + 2] = -c;
        }
    }
}
