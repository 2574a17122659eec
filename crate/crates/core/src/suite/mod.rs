//! Catalog of the thirty benchmark problems `P1`..`P30`.
//!
//! `P1`..`P22` are large-scale (`n` free); `P23`..`P30` have fixed
//! dimensions. Eighteen problems are implemented with analytic operators;
//! the rest are catalogued with their start points but cannot be
//! instantiated.

mod kernels;
mod problems;

use std::fmt;
use std::str::FromStr;

use crate::error::ProblemError;
use crate::problem::NlsProblem;
use kernels::{Blockwise, ExpDiagonal, SmallDense};
use problems::*;

/// Problem identifier `P1`..`P30`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemId(u8);

impl ProblemId {
    pub const FIRST: u8 = 1;
    pub const LAST: u8 = 30;

    pub fn new(number: u8) -> Option<Self> {
        (Self::FIRST..=Self::LAST)
            .contains(&number)
            .then_some(Self(number))
    }

    pub fn number(self) -> u8 {
        self.0
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl FromStr for ProblemId {
    type Err = ProblemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        t.strip_prefix('P')
            .or_else(|| t.strip_prefix('p'))
            .and_then(|d| d.parse::<u8>().ok())
            .and_then(ProblemId::new)
            .ok_or_else(|| ProblemError::UnknownProblem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleClass {
    Large,
    Small,
}

impl fmt::Display for ScaleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleClass::Large => "large",
            ScaleClass::Small => "small",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimRule {
    /// Any `n` divisible by `block`, with `m = n + extra`.
    Free {
        block: usize,
        extra: usize,
    },
    Fixed {
        n: usize,
        m: usize,
    },
}

impl DimRule {
    pub fn residual_dim(self, n: usize) -> usize {
        match self {
            DimRule::Free { extra, .. } => n + extra,
            DimRule::Fixed { m, .. } => m,
        }
    }
}

impl fmt::Display for DimRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DimRule::Free { block: 1, extra: 0 } => f.write_str("m=n"),
            DimRule::Free { block, extra: 0 } => write!(f, "m=n, n%{block}=0"),
            DimRule::Free { block: 1, extra } => write!(f, "m=n+{extra}"),
            DimRule::Free { block, extra } => write!(f, "m=n+{extra}, n%{block}=0"),
            DimRule::Fixed { n, m } => write!(f, "n={n}, m={m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImplStatus {
    Required,
    OptionalUnimplemented,
}

impl fmt::Display for ImplStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImplStatus::Required => "required",
            ImplStatus::OptionalUnimplemented => "optional-unimplemented",
        })
    }
}

/// Catalog entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub name: &'static str,
    pub scale: ScaleClass,
    pub dims: DimRule,
    /// Human-readable start point.
    pub start: &'static str,
    pub status: ImplStatus,
}

impl ProblemSpec {
    pub fn is_implemented(&self) -> bool {
        self.status == ImplStatus::Required
    }

    /// The dimension used when none is requested: the fixed `n` for small
    /// problems and 1000 for large ones.
    pub fn default_dim(&self) -> usize {
        match self.dims {
            DimRule::Fixed { n, .. } => n,
            DimRule::Free { .. } => 1000,
        }
    }

    pub fn accepts_dim(&self, n: usize) -> Result<(), ProblemError> {
        let mismatch = |reason: String| ProblemError::DimensionMismatch {
            id: self.id.to_string(),
            n,
            reason,
        };
        match self.dims {
            DimRule::Fixed { n: fixed, .. } if n != fixed => {
                Err(mismatch(format!("dimension is fixed at {fixed}")))
            }
            DimRule::Free { .. } if n < 2 => Err(mismatch("needs n >= 2".into())),
            DimRule::Free { block, .. } if n % block != 0 => {
                Err(mismatch(format!("n must be a multiple of {block}")))
            }
            _ => Ok(()),
        }
    }
}

const fn free(block: usize) -> DimRule {
    DimRule::Free { block, extra: 0 }
}

const fn fixed(n: usize, m: usize) -> DimRule {
    DimRule::Fixed { n, m }
}

use ImplStatus::{OptionalUnimplemented as Opt, Required as Req};
use ScaleClass::{Large, Small};

#[rustfmt::skip]
const CATALOG: [(&str, ScaleClass, DimRule, &str, ImplStatus); 30] = [
    ("Penalty function I", Large, free(1), "(1/3, ..., 1/3)", Req),
    ("Trigonometric function", Large, free(1), "(1/n, ..., 1/n)", Req),
    ("Discrete boundary value", Large, free(1), "(t_i (t_i - 1)), t_i = i/(n+1)", Req),
    ("Linear function full rank", Large, DimRule::Free { block: 1, extra: 1 }, "(1, ..., 1)", Req),
    ("Problem 202", Large, free(1), "(2, ..., 2)", Opt),
    ("Problem 206", Large, free(1), "(1/n, ..., 1/n)", Opt),
    ("Problem 212", Large, free(1), "(0.5, ..., 0.5)", Opt),
    ("Strictly convex function I", Large, free(1), "(1/n, 2/n, ..., 1)", Req),
    ("Strictly convex function II", Large, free(1), "(1, ..., 1)", Req),
    ("Brown almost linear", Large, free(1), "(0.5, ..., 0.5)", Req),
    ("Exponential function I", Large, free(1), "(n/(n-1), ..., n/(n-1))", Opt),
    ("Singular function", Large, free(1), "(1, ..., 1)", Opt),
    ("Logarithmic function", Large, free(1), "(1, ..., 1)", Opt),
    ("Extended Freudenstein and Roth", Large, free(2), "(6, 3, ..., 6, 3)", Req),
    ("Extended Powell singular", Large, free(4), "(1.5e-4, ..., 1.5e-4)", Req),
    ("Function 21", Large, free(1), "(-1, ..., -1)", Opt),
    ("Broyden tridiagonal function", Large, free(1), "(-1, ..., -1)", Req),
    ("Generalized Broyden tridiagonal", Large, free(1), "(-1, ..., -1)", Opt),
    ("Extended Rosenbrock", Large, free(2), "(-1, 1, ..., -1, 1)", Req),
    ("Extended Himmelblau", Large, free(2), "(1, 1/n, ..., 1, 1/n)", Req),
    ("Function 27", Large, free(1), "(100, 1/n^2, ..., 1/n^2)", Opt),
    ("Trigonometric logarithmic function", Large, free(1), "(1, ..., 1)", Opt),
    ("Bard function", Small, fixed(3, 15), "(-1000, -1000, -1000)", Req),
    ("Brown badly scaled", Small, fixed(2, 3), "(1, 1)", Req),
    ("Jennrich and Sampson", Small, fixed(2, 10), "(0.2, 0.2)", Req),
    ("Box 3D function", Small, fixed(3, 10), "(0, 10, 20)", Req),
    ("Rank deficient Jacobian", Small, fixed(2, 3), "(-1, 1)", Opt),
    ("Rosenbrock function", Small, fixed(2, 2), "(-1, 1)", Req),
    ("Parameterized problem", Small, fixed(2, 3), "(10, 10)", Opt),
    ("Freudenstein and Roth function", Small, fixed(2, 2), "(0.5, -2)", Req),
];

/// All thirty catalog entries in id order.
pub fn list_problems() -> Vec<ProblemSpec> {
    CATALOG
        .iter()
        .enumerate()
        .map(|(i, &(name, scale, dims, start, status))| ProblemSpec {
            id: ProblemId(i as u8 + 1),
            name,
            scale,
            dims,
            start,
            status,
        })
        .collect()
}

pub fn spec(id: ProblemId) -> ProblemSpec {
    list_problems()[usize::from(id.0) - 1]
}

/// Ids of the implemented problems.
pub fn required_ids() -> Vec<ProblemId> {
    list_problems()
        .into_iter()
        .filter(ProblemSpec::is_implemented)
        .map(|s| s.id)
        .collect()
}

/// Builds problem `id` with `n` unknowns.
pub fn instantiate(id: ProblemId, n: usize) -> Result<Box<dyn NlsProblem>, ProblemError> {
    let spec = spec(id);
    if !spec.is_implemented() {
        return Err(ProblemError::NotImplemented(id.to_string()));
    }
    spec.accepts_dim(n)?;
    let name = id.to_string();
    let nf = n as f64;
    let problem: Box<dyn NlsProblem> = match id.0 {
        1 => Box::new(PenaltyI { n }),
        2 => Box::new(Trigonometric { n }),
        3 => Box::new(DiscreteBoundary { n }),
        4 => Box::new(LinearFullRank { n }),
        8 => Box::new(ExpDiagonal {
            name,
            weights: vec![1.0; n],
            x0: (1..=n).map(|i| i as f64 / nf).collect(),
        }),
        9 => Box::new(ExpDiagonal {
            name,
            weights: (1..=n).map(|i| i as f64 / 10.0).collect(),
            x0: vec![1.0; n],
        }),
        10 => Box::new(BrownAlmostLinear { n }),
        14 => Box::new(Blockwise {
            name,
            n,
            x0: alternating(n, 6.0, 3.0),
            block: FreudensteinRothBlock,
        }),
        15 => Box::new(Blockwise {
            name,
            n,
            x0: vec![1.5e-4; n],
            block: PowellSingularBlock,
        }),
        17 => Box::new(BroydenTridiagonal { n }),
        19 => Box::new(Blockwise {
            name,
            n,
            x0: alternating(n, -1.0, 1.0),
            block: RosenbrockBlock,
        }),
        20 => Box::new(Blockwise {
            name,
            n,
            x0: alternating(n, 1.0, 1.0 / nf),
            block: HimmelblauBlock,
        }),
        23 => Box::new(SmallDense {
            name,
            x0: vec![-1000.0; 3],
            kernel: Bard,
        }),
        24 => Box::new(SmallDense {
            name,
            x0: vec![1.0, 1.0],
            kernel: BrownBadlyScaled,
        }),
        25 => Box::new(SmallDense {
            name,
            x0: vec![0.2, 0.2],
            kernel: JennrichSampson,
        }),
        26 => Box::new(SmallDense {
            name,
            x0: vec![0.0, 10.0, 20.0],
            kernel: Box3d,
        }),
        28 => Box::new(Blockwise {
            name,
            n,
            x0: vec![-1.0, 1.0],
            block: RosenbrockBlock,
        }),
        30 => Box::new(Blockwise {
            name,
            n,
            x0: vec![0.5, -2.0],
            block: FreudensteinRothBlock,
        }),
        _ => unreachable!("catalog marks {id} as implemented"),
    };
    Ok(problem)
}

fn alternating(n: usize, odd: f64, even: f64) -> Vec<f64> {
    (0..n)
        .map(|i| if i % 2 == 0 { odd } else { even })
        .collect()
}
