//! Nonmonotone Armijo backtracking (Zhang-Hager reference value).
//!
//! A trial step is accepted when `f(x + alpha d) <= P_k + theta alpha g^T d`,
//! where `P_k` is a running convex combination of past objective values:
//!
//! ```text
//! Q_{k+1} = eta_k Q_k + 1
//! P_{k+1} = (eta_k Q_k P_k + f_{k+1}) / Q_{k+1}
//! ```
//!
//! `eta_k = 0` recovers the classical monotone Armijo rule.

use std::fmt;
use std::sync::Arc;

use crate::error::LineSearchFailure;
use crate::problem::{objective, Evaluator, NlsProblem};

/// Reference value `P` and weight `Q` of the nonmonotone rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearchState {
    pub p: f64,
    pub q: f64,
    /// Index of the iteration this state belongs to.
    pub k: usize,
}

impl LineSearchState {
    /// `P_0 = f(x_0)`, `Q_0 = 1`.
    pub fn new(f0: f64) -> Self {
        Self {
            p: f0,
            q: 1.0,
            k: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearchParams {
    /// Armijo coefficient in `(0, 1)`.
    pub theta: f64,
    pub eta_min: f64,
    pub eta_max: f64,
    /// Halvings allowed before giving up.
    pub max_halvings: u32,
}

impl Default for LineSearchParams {
    fn default() -> Self {
        Self {
            theta: 1e-4,
            eta_min: 0.1,
            eta_max: 0.85,
            max_halvings: 60,
        }
    }
}

/// Rule for choosing `eta_k`.
#[derive(Clone)]
pub enum EtaSchedule {
    /// `amplitude * exp(-(k / width)^2) + offset`; the default is
    /// `0.75 exp(-(k/45)^2) + 0.1`.
    Gaussian {
        amplitude: f64,
        width: f64,
        offset: f64,
    },
    Constant(f64),
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl Default for EtaSchedule {
    fn default() -> Self {
        EtaSchedule::Gaussian {
            amplitude: 0.75,
            width: 45.0,
            offset: 0.1,
        }
    }
}

impl EtaSchedule {
    /// Unclamped schedule value at iteration `k`.
    pub fn raw(&self, k: usize) -> f64 {
        match self {
            EtaSchedule::Gaussian {
                amplitude,
                width,
                offset,
            } => {
                let t = k as f64 / width;
                amplitude * (-t * t).exp() + offset
            }
            EtaSchedule::Constant(v) => *v,
            EtaSchedule::Custom(f) => f(k),
        }
    }
}

impl fmt::Debug for EtaSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EtaSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaSchedule::Gaussian {
                amplitude,
                width,
                offset,
            } => write!(f, "gaussian:{amplitude:?}:{width:?}:{offset:?}"),
            EtaSchedule::Constant(v) => write!(f, "constant:{v:?}"),
            EtaSchedule::Custom(_) => f.write_str("custom"),
        }
    }
}

/// `eta_k` from `schedule`, clamped to `[eta_min, eta_max]`.
pub fn eta_schedule(schedule: &EtaSchedule, k: usize, eta_min: f64, eta_max: f64) -> f64 {
    schedule.raw(k).clamp(eta_min, eta_max)
}

/// Nonmonotone Armijo test `f_trial <= P + theta alpha g^T d`.
pub fn accept_test(f_trial: f64, p: f64, alpha: f64, gtd: f64, theta: f64) -> bool {
    f_trial <= p + theta * alpha * gtd
}

/// Accepted step of [`backtrack`].
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub alpha: f64,
    pub f_new: f64,
    pub x_new: Vec<f64>,
    /// Residual at `x_new`, kept so the caller need not re-evaluate it.
    pub residual: Vec<f64>,
    /// Objective evaluations spent, including the accepted one.
    pub trials: u32,
}

/// Backtracks from `alpha = 1`, halving until [`accept_test`] holds.
///
/// Every trial costs one residual evaluation. A trial whose residual is not
/// finite is rejected like any other failing trial.
pub fn backtrack<P: NlsProblem + ?Sized>(
    eval: &mut Evaluator<'_, P>,
    x: &[f64],
    d: &[f64],
    p_ref: f64,
    gtd: f64,
    params: &LineSearchParams,
) -> Result<Step, LineSearchFailure> {
    let mut alpha = 1.0;
    let mut trials = 0;
    let mut halvings = 0;
    loop {
        let x_new: Vec<f64> = x.iter().zip(d).map(|(xi, di)| xi + alpha * di).collect();
        trials += 1;
        if let Ok(residual) = eval.residual(&x_new) {
            let f_new = objective(&residual);
            if f_new.is_finite() && accept_test(f_new, p_ref, alpha, gtd, params.theta) {
                return Ok(Step {
                    alpha,
                    f_new,
                    x_new,
                    residual,
                    trials,
                });
            }
        }
        if halvings == params.max_halvings {
            return Err(LineSearchFailure { halvings, alpha });
        }
        alpha *= 0.5;
        halvings += 1;
    }
}

/// Advances `(P, Q)` after accepting `f_new`.
///
/// `P' = f_new + (P - f_new) eta Q / Q'` is the convex combination
/// `(eta Q P + f_new) / Q'` written so that `eta = 0` gives `f_new` exactly.
pub fn update_pq(state: LineSearchState, eta: f64, f_new: f64) -> LineSearchState {
    let q = eta * state.q + 1.0;
    let mut p = f_new + (state.p - f_new) * (eta * state.q / q);
    // rounding may land an ulp outside [min, max] of the two inputs
    let (lo, hi) = if f_new <= state.p {
        (f_new, state.p)
    } else {
        (state.p, f_new)
    };
    p = p.clamp(lo, hi);
    LineSearchState {
        p,
        q,
        k: state.k + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::LinearResidual;
    use proptest::prelude::*;

    #[test]
    fn default_schedule_values() {
        let s = EtaSchedule::default();
        assert_eq!(eta_schedule(&s, 0, 0.1, 0.85), 0.85);
        assert_eq!(eta_schedule(&s, 1000, 0.1, 0.85), 0.1);
        let expected = 0.75 * (-1.0f64).exp() + 0.1;
        assert!((eta_schedule(&s, 45, 0.1, 0.85) - expected).abs() < 1e-15);
        assert!((expected - 0.375_909).abs() < 1e-6);
    }

    #[test]
    fn schedule_clamps_user_values() {
        assert_eq!(eta_schedule(&EtaSchedule::Constant(2.0), 3, 0.0, 1.0), 1.0);
        let c = EtaSchedule::Custom(Arc::new(|k| -(k as f64)));
        assert_eq!(eta_schedule(&c, 7, 0.1, 0.85), 0.1);
    }

    #[test]
    fn acceptance_boundaries() {
        let (p, alpha, gtd, theta) = (2.0, 0.5, -3.0, 1e-4);
        assert!(!accept_test(p, p, alpha, gtd, theta));
        let boundary = p + theta * alpha * gtd;
        assert!(accept_test(boundary, p, alpha, gtd, theta));
        assert!(!accept_test(boundary + 1e-12, p, alpha, gtd, theta));
    }

    #[test]
    fn monotone_update() {
        let s = update_pq(
            LineSearchState {
                p: 10.0,
                q: 3.0,
                k: 4,
            },
            0.0,
            2.5,
        );
        assert_eq!((s.p, s.q, s.k), (2.5, 1.0, 5));
    }

    #[test]
    fn worked_update() {
        let s = update_pq(
            LineSearchState {
                p: 10.0,
                q: 1.0,
                k: 0,
            },
            0.5,
            2.0,
        );
        assert_eq!(s.q, 1.5);
        assert!((s.p - 14.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn eta_one_gives_running_average() {
        let fs = [7.0, 3.0, 5.0, 1.0, 0.5];
        let mut st = LineSearchState::new(fs[0]);
        for (k, f) in fs.iter().enumerate().skip(1) {
            st = update_pq(st, 1.0, *f);
            let mean = fs[..=k].iter().sum::<f64>() / (k + 1) as f64;
            assert!((st.p - mean).abs() < 1e-14, "k={k}");
            assert_eq!(st.q, (k + 1) as f64);
        }
    }

    #[test]
    fn backtrack_quadratic_accepts_unit_step() {
        // f(x) = x^2 / 2 with F(x) = x
        let p = LinearResidual::new("q", vec![1.0], vec![0.0], vec![1.0]);
        let mut ev = Evaluator::new(&p);
        let step = backtrack(
            &mut ev,
            &[1.0],
            &[-1.0],
            0.5,
            -1.0,
            &LineSearchParams::default(),
        )
        .unwrap();
        assert_eq!((step.alpha, step.trials, step.f_new), (1.0, 1, 0.0));
        assert_eq!(ev.counters().nfeval, 1);
    }

    #[test]
    fn backtrack_halves_until_accepted() {
        // overshooting direction: alpha = 1 and 1/2 fail, 1/4 lands at the minimum
        let p = LinearResidual::new("q", vec![1.0], vec![0.0], vec![1.0]);
        let mut ev = Evaluator::new(&p);
        let step = backtrack(
            &mut ev,
            &[1.0],
            &[-4.0],
            0.5,
            -4.0,
            &LineSearchParams::default(),
        )
        .unwrap();
        assert_eq!((step.alpha, step.trials), (0.25, 3));
        assert_eq!(step.x_new, vec![0.0]);
    }

    #[test]
    fn backtrack_gives_up() {
        // ascent direction never satisfies the test
        let p = LinearResidual::new("q", vec![1.0], vec![0.0], vec![1.0]);
        let mut ev = Evaluator::new(&p);
        let params = LineSearchParams {
            max_halvings: 5,
            ..Default::default()
        };
        let err = backtrack(&mut ev, &[1.0], &[1.0], 0.5, -1.0, &params).unwrap_err();
        assert_eq!(err.halvings, 5);
        assert_eq!(ev.counters().nfeval, 6);
    }

    proptest! {
        #[test]
        fn update_is_convex_combination(
            p in -1e6..1e6f64, f in -1e6..1e6f64, q in 1.0..50.0f64, eta in 0.0..=1.0f64
        ) {
            let s = update_pq(LineSearchState { p, q, k: 0 }, eta, f);
            prop_assert!(s.p >= p.min(f) && s.p <= p.max(f));
            prop_assert!(s.q >= 1.0);
            if f <= p {
                prop_assert!(s.p <= p);
                prop_assert!(s.p >= f);
            }
        }
    }
}
