//! Structured `T x T` covariance operators.
//!
//! Every estimator in the crate only ever needs products `Sigma b` and bilinear
//! forms `a' Sigma b`, so the matrices are kept in whatever structure produced
//! them and materialised only on request.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::linalg::dot;

#[derive(Debug, Clone, PartialEq)]
pub enum CovOperator {
    /// Symmetric Toeplitz matrix with `acov[h]` on the `h`-th diagonals and
    /// zeros beyond `acov.len()`.
    Toeplitz {
        acov: Vec<f64>,
    },
    /// `scale * phi^|s-t|`.
    Ar1 {
        scale: f64,
        phi: f64,
    },
    /// `weights[|s-t|] * left_s * right_t`, zero for `|s-t| >= weights.len()`.
    Hac {
        weights: Vec<f64>,
        left: Vec<f64>,
        right: Vec<f64>,
    },
    /// `diag(left) * inner * diag(right)`.
    Scaled {
        left: Vec<f64>,
        right: Vec<f64>,
        inner: Box<CovOperator>,
    },
    /// `M_T * inner * M_T` with the centring matrix `M_T = I - 11'/T`.
    Centered(Box<CovOperator>),
    Dense(DMatrix<f64>),
}

impl CovOperator {
    pub fn identity() -> Self {
        CovOperator::Toeplitz { acov: vec![1.0] }
    }

    /// `Sigma b`.
    pub fn apply(&self, b: &[f64]) -> Vec<f64> {
        let t_len = b.len();
        match self {
            CovOperator::Toeplitz { acov } => {
                let mut out: Vec<f64> = b
                    .iter()
                    .map(|v| acov.first().copied().unwrap_or(0.0) * v)
                    .collect();
                for (h, &c) in acov
                    .iter()
                    .enumerate()
                    .skip(1)
                    .take(t_len.saturating_sub(1))
                {
                    if c == 0.0 {
                        continue;
                    }
                    for s in 0..t_len - h {
                        out[s] += c * b[s + h];
                        out[s + h] += c * b[s];
                    }
                }
                out
            }
            CovOperator::Ar1 { scale, phi } => {
                let mut fwd = vec![0.0; t_len];
                let mut bwd = vec![0.0; t_len];
                let mut acc = 0.0;
                for s in 0..t_len {
                    acc = b[s] + phi * acc;
                    fwd[s] = acc;
                }
                acc = 0.0;
                for s in (0..t_len).rev() {
                    acc = b[s] + phi * acc;
                    bwd[s] = acc;
                }
                (0..t_len)
                    .map(|s| scale * (fwd[s] + bwd[s] - b[s]))
                    .collect()
            }
            CovOperator::Hac {
                weights,
                left,
                right,
            } => {
                let rb: Vec<f64> = right.iter().zip(b).map(|(r, v)| r * v).collect();
                let inner = CovOperator::Toeplitz {
                    acov: weights.clone(),
                }
                .apply(&rb);
                inner.iter().zip(left).map(|(v, l)| v * l).collect()
            }
            CovOperator::Scaled { left, right, inner } => {
                let rb: Vec<f64> = right.iter().zip(b).map(|(r, v)| r * v).collect();
                inner
                    .apply(&rb)
                    .iter()
                    .zip(left)
                    .map(|(v, l)| v * l)
                    .collect()
            }
            CovOperator::Centered(inner) => center(&inner.apply(&center(b))),
            CovOperator::Dense(m) => (0..t_len)
                .map(|s| (0..t_len).map(|t| m[(s, t)] * b[t]).sum())
                .collect(),
        }
    }

    /// `a' Sigma b`.
    pub fn bilinear(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            CovOperator::Toeplitz { acov } => toeplitz_bilinear(acov, a, b),
            CovOperator::Hac {
                weights,
                left,
                right,
            } => {
                let la: Vec<f64> = left.iter().zip(a).map(|(l, v)| l * v).collect();
                let rb: Vec<f64> = right.iter().zip(b).map(|(r, v)| r * v).collect();
                toeplitz_bilinear(weights, &la, &rb)
            }
            _ => dot(a, &self.apply(b)),
        }
    }

    pub fn entry(&self, s: usize, t: usize, t_len: usize) -> f64 {
        let lag = s.abs_diff(t);
        match self {
            CovOperator::Toeplitz { acov } => acov.get(lag).copied().unwrap_or(0.0),
            CovOperator::Ar1 { scale, phi } => scale * phi.powi(lag as i32),
            CovOperator::Hac {
                weights,
                left,
                right,
            } => weights.get(lag).copied().unwrap_or(0.0) * left[s] * right[t],
            CovOperator::Scaled { left, right, inner } => {
                left[s] * inner.entry(s, t, t_len) * right[t]
            }
            CovOperator::Centered(_) | CovOperator::Dense(_) => self.to_dense(t_len)[(s, t)],
        }
    }

    pub fn to_dense(&self, t_len: usize) -> DMatrix<f64> {
        match self {
            CovOperator::Dense(m) => m.clone(),
            CovOperator::Centered(inner) => {
                let m = centering_matrix(t_len);
                &m * inner.to_dense(t_len) * &m
            }
            _ => DMatrix::from_fn(t_len, t_len, |s, t| self.entry(s, t, t_len)),
        }
    }

    /// `X_a' Sigma X_b` for column-major `T x K` blocks.
    pub fn sandwich(&self, xa: &[f64], xb: &[f64], t_len: usize, k: usize) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(k, k);
        for c in 0..k {
            let sb = self.apply(&xb[c * t_len..(c + 1) * t_len]);
            for r in 0..k {
                out[(r, c)] = dot(&xa[r * t_len..(r + 1) * t_len], &sb);
            }
        }
        out
    }
}

fn toeplitz_bilinear(acov: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let t_len = a.len();
    let mut acc = 0.0;
    for (h, &c) in acov.iter().enumerate().take(t_len) {
        if c == 0.0 {
            continue;
        }
        let mut s = 0.0;
        if h == 0 {
            s = dot(a, b);
        } else {
            for t in 0..t_len - h {
                s += a[t] * b[t + h] + a[t + h] * b[t];
            }
        }
        acc += c * s;
    }
    acc
}

fn center(b: &[f64]) -> Vec<f64> {
    let mean = b.iter().sum::<f64>() / b.len() as f64;
    b.iter().map(|v| v - mean).collect()
}

/// `I_T - 1 1' / T`.
pub fn centering_matrix(t_len: usize) -> DMatrix<f64> {
    let off = 1.0 / t_len as f64;
    DMatrix::from_fn(t_len, t_len, |s, t| if s == t { 1.0 - off } else { -off })
}

/// Known temporal covariance `Sigma_T` in structured form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TimeCovariance {
    Identity,
    Scalar {
        value: f64,
    },
    /// Stationary AR(1) with unit innovations: `phi^|s-t| / (1 - phi^2)`.
    Ar1 {
        phi: f64,
    },
    /// Autocovariances by lag; lags past the end are zero.
    Toeplitz {
        acov: Vec<f64>,
    },
}

impl TimeCovariance {
    pub fn operator(&self) -> CovOperator {
        match self {
            TimeCovariance::Identity => CovOperator::identity(),
            TimeCovariance::Scalar { value } => CovOperator::Toeplitz { acov: vec![*value] },
            TimeCovariance::Ar1 { phi } => CovOperator::Ar1 {
                scale: 1.0 / (1.0 - phi * phi),
                phi: *phi,
            },
            TimeCovariance::Toeplitz { acov } => CovOperator::Toeplitz { acov: acov.clone() },
        }
    }

    /// `(Sigma_T)_{1,1}`.
    pub fn variance(&self) -> f64 {
        match self {
            TimeCovariance::Identity => 1.0,
            TimeCovariance::Scalar { value } => *value,
            TimeCovariance::Ar1 { phi } => 1.0 / (1.0 - phi * phi),
            TimeCovariance::Toeplitz { acov } => acov.first().copied().unwrap_or(0.0),
        }
    }
}

/// Known cross-sectional covariance `Sigma_N` in structured form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CrossCovariance {
    Identity,
    Scalar {
        value: f64,
    },
    Diagonal {
        values: Vec<f64>,
    },
    /// Row-major `N x N`.
    Dense {
        n: usize,
        values: Vec<f64>,
    },
}

impl CrossCovariance {
    pub fn entry(&self, i: usize, k: usize) -> f64 {
        match self {
            CrossCovariance::Identity => f64::from(u8::from(i == k)),
            CrossCovariance::Scalar { value } => {
                if i == k {
                    *value
                } else {
                    0.0
                }
            }
            CrossCovariance::Diagonal { values } => {
                if i == k {
                    values[i]
                } else {
                    0.0
                }
            }
            CrossCovariance::Dense { n, values } => values[i * n + k],
        }
    }

    pub fn is_diagonal(&self) -> bool {
        !matches!(self, CrossCovariance::Dense { .. })
    }

    /// Pairs `(i, k)` with a nonzero entry, in row-major order.
    pub fn nonzero_pairs(&self, n: usize) -> Vec<(usize, usize)> {
        match self {
            CrossCovariance::Dense { n: m, values } => (0..n)
                .flat_map(|i| (0..n).map(move |k| (i, k)))
                .filter(|&(i, k)| values[i * m + k] != 0.0)
                .collect(),
            _ => (0..n)
                .filter(|&i| self.entry(i, i) != 0.0)
                .map(|i| (i, i))
                .collect(),
        }
    }
}
