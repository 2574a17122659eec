//! Structured secant vectors and the safeguarded diagonal Hessian.
//!
//! With `s = x_k - x_{k-1}` the secant right-hand side is split into the
//! Gauss-Newton part `y_hat = J_k^T J_k s`, which is exact, and the
//! curvature part `y_bar = (J_k - J_{k-1})^T F_k`, which approximates
//! `C(x_k) s`. Each diagonal entry is the ratio `(y_hat + y_bar) / s`
//! after sign safeguards, projected onto `[l, u]`.

use crate::error::EvalError;
use crate::problem::{Evaluator, NlsProblem};

/// Structured secant data for one step.
#[derive(Debug, Clone, PartialEq)]
pub struct SecantPair {
    pub s: Vec<f64>,
    /// Gauss-Newton part `J_k^T J_k s`.
    pub y_hat: Vec<f64>,
    /// Curvature part `(J_k - J_{k-1})^T F_k`.
    pub y_bar: Vec<f64>,
}

impl SecantPair {
    /// Full structured secant vector `y = y_hat + y_bar`.
    pub fn y(&self) -> Vec<f64> {
        self.y_hat
            .iter()
            .zip(&self.y_bar)
            .map(|(a, b)| a + b)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafeguardParams {
    /// Shrinking factor, in `(0, 1)`.
    pub gamma: f64,
    /// Positivity floor, `> 0`.
    pub rho: f64,
}

impl Default for SafeguardParams {
    fn default() -> Self {
        Self {
            gamma: 0.2,
            rho: 1e-4,
        }
    }
}

/// Diagonal Hessian approximation with entries in `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagHessian {
    h: Vec<f64>,
    lower: f64,
    upper: f64,
}

impl DiagHessian {
    /// The identity, used at the first iteration.
    pub fn identity(n: usize, lower: f64, upper: f64) -> Self {
        check_bounds(lower, upper);
        Self {
            h: vec![1.0; n],
            lower,
            upper,
        }
    }

    pub fn entries(&self) -> &[f64] {
        &self.h
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }
}

fn check_bounds(lower: f64, upper: f64) {
    assert!(
        lower > 0.0 && lower <= 1.0 && upper >= 1.0,
        "diagonal bounds must satisfy 0 < l <= 1 <= u"
    );
}

/// Builds `s`, `y_hat` and `y_bar` for the step `x_prev -> x_new`.
///
/// `f_new` and `g_new` must already be evaluated at `x_new`; `g_new` is
/// reused for the `J_k^T F_k` term. Costs two `nmvp`.
pub fn secant_vectors<P: NlsProblem + ?Sized>(
    eval: &mut Evaluator<'_, P>,
    x_prev: &[f64],
    x_new: &[f64],
    f_new: &[f64],
    g_new: &[f64],
) -> Result<SecantPair, EvalError> {
    let s: Vec<f64> = x_new.iter().zip(x_prev).map(|(a, b)| a - b).collect();
    let y_hat = eval.gauss_newton_apply(x_new, &s)?;
    let jt_prev_f = eval.jacobian_transpose_apply(x_prev, f_new)?;
    let y_bar = g_new.iter().zip(&jt_prev_f).map(|(a, b)| a - b).collect();
    Ok(SecantPair { s, y_hat, y_bar })
}

/// Corrects components of `y_hat` and `y_bar` whose sign disagrees with `s`.
///
/// For `s_i > 0` a nonpositive `y_hat_i` becomes `gamma * max(|y_hat_i|, rho)`
/// and a nonpositive `y_bar_i` becomes `gamma * max(|a_i|, |b_i|, rho)`, where
/// `a = J_k^T F_k = g_new` and `b = J_{k-1}^T F_k = g_new - y_bar`. For
/// `s_i < 0` the mirrored rules produce strictly negative values. Components
/// with `s_i == 0` are left alone.
pub fn safeguard_secant(
    mut pair: SecantPair,
    g_new: &[f64],
    params: SafeguardParams,
) -> SecantPair {
    let SafeguardParams { gamma, rho } = params;
    for i in 0..pair.s.len() {
        let s = pair.s[i];
        if s == 0.0 {
            continue;
        }
        let yh = pair.y_hat[i];
        let yb = pair.y_bar[i];
        let cross = || {
            let jk = g_new[i];
            let jkm1 = jk - yb;
            jk.abs().max(jkm1.abs()).max(rho)
        };
        if s > 0.0 {
            if yh <= 0.0 {
                pair.y_hat[i] = gamma * yh.abs().max(rho);
            }
            if yb <= 0.0 {
                pair.y_bar[i] = gamma * cross();
            }
        } else {
            if yh >= 0.0 {
                pair.y_hat[i] = -gamma * yh.max(rho);
            }
            if yb >= 0.0 {
                pair.y_bar[i] = -gamma * cross();
            }
        }
    }
    pair
}

/// Forms the new diagonal: `h_i = 1` where `s_i == 0`, otherwise
/// `(y_hat_i + y_bar_i) / s_i` projected onto `[lower, upper]`.
pub fn update_diagonal(pair: &SecantPair, lower: f64, upper: f64) -> DiagHessian {
    check_bounds(lower, upper);
    let h = pair
        .s
        .iter()
        .zip(pair.y_hat.iter().zip(&pair.y_bar))
        .map(|(&s, (&yh, &yb))| {
            if s == 0.0 {
                1.0
            } else {
                let r = (yh + yb) / s;
                // only non-finite input can produce NaN here
                if r.is_nan() {
                    lower
                } else {
                    r.clamp(lower, upper)
                }
            }
        })
        .collect();
    DiagHessian { h, lower, upper }
}

/// Search direction `d = -H^{-1} g`, computed componentwise.
pub fn direction(hess: &DiagHessian, g: &[f64]) -> Vec<f64> {
    g.iter().zip(&hess.h).map(|(gi, hi)| -gi / hi).collect()
}
