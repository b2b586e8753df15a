//! Exact conditional prediction errors given the true slopes and error
//! covariance, and the oracle long-run variance.
//!
//! With `G_i = X_i'X_i`, `P = sum_j G_j`, `w_i = G_i^{-1} x_{i,T+1}` and
//! `d_i = P^{-1} sum_j G_j beta_j - beta_i`:
//!
//! ```text
//! E_i^ind  = q_i' C_ii q_i + noise_i,                 q_i = X_i w_i
//! E_i^pool = (x_{i,T+1}' d_i)^2 + z_i' S z_i + noise_i, z_i = P^{-1} x_{i,T+1}
//! S        = sum_{j,k} X_j' C_jk X_k
//! ```
//!
//! where `C_jk` is the covariance of the error vectors of individuals `j` and
//! `k`: `(Sigma_N)_{jk} Sigma_T`, optionally conjugated by heteroskedastic
//! scales.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{compensated_sum, dot, x_vec};
use crate::operator::{CovOperator, CrossCovariance, TimeCovariance};
use crate::panel::{Panel, PanelGrams};

/// Oracle variances at or below this are reported as degenerate.
pub const DEGENERATE_TAU: f64 = 1e-14;

/// Known error scales `eps_{i,t} = omega_{i,t} u_{i,t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeteroScales {
    /// Row-major `N x T`.
    pub within: Vec<f64>,
    /// Scale of the forecast-period error, one per individual.
    pub next: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrueModel {
    pub k: usize,
    /// Row-major `N x K`.
    pub betas: Vec<f64>,
    pub sigma_n: CrossCovariance,
    pub sigma_t: TimeCovariance,
    pub hetero: Option<HeteroScales>,
}

impl TrueModel {
    pub fn new(
        k: usize,
        betas: Vec<f64>,
        sigma_n: CrossCovariance,
        sigma_t: TimeCovariance,
    ) -> Self {
        Self {
            k,
            betas,
            sigma_n,
            sigma_t,
            hetero: None,
        }
    }

    pub fn beta(&self, i: usize) -> &[f64] {
        &self.betas[i * self.k..(i + 1) * self.k]
    }

    pub fn n(&self) -> usize {
        self.betas.len() / self.k
    }

    /// Covariance operator of `(eps_i, eps_k)`, or `None` when it vanishes.
    pub fn pair_operator(&self, i: usize, k: usize, t_len: usize) -> Option<CovOperator> {
        let c = self.sigma_n.entry(i, k);
        if c == 0.0 {
            return None;
        }
        let base = self.sigma_t.operator();
        Some(match &self.hetero {
            None => scale_operator(base, c, t_len),
            Some(h) => CovOperator::Scaled {
                left: h.within[i * t_len..(i + 1) * t_len]
                    .iter()
                    .map(|w| w * c)
                    .collect(),
                right: h.within[k * t_len..(k + 1) * t_len].to_vec(),
                inner: Box::new(base),
            },
        })
    }

    /// Variance of the forecast-period error of individual `i`.
    pub fn forecast_noise(&self, i: usize) -> f64 {
        let s = self.hetero.as_ref().map_or(1.0, |h| h.next[i] * h.next[i]);
        self.sigma_n.entry(i, i) * self.sigma_t.variance() * s
    }

    fn check(&self, panel: &Panel) -> Result<()> {
        if self.k != panel.k() || self.betas.len() != panel.n() * panel.k() {
            return Err(Error::ShapeMismatch(format!(
                "true slopes are {}x{}, panel is {}x{}",
                self.n(),
                self.k,
                panel.n(),
                panel.k()
            )));
        }
        if let CrossCovariance::Dense { n, values } = &self.sigma_n {
            if *n != panel.n() || values.len() != n * n {
                return Err(Error::ShapeMismatch("Sigma_N does not match N".into()));
            }
        }
        if let CrossCovariance::Diagonal { values } = &self.sigma_n {
            if values.len() != panel.n() {
                return Err(Error::ShapeMismatch("Sigma_N does not match N".into()));
            }
        }
        if let Some(h) = &self.hetero {
            if h.within.len() != panel.n() * panel.t_len() || h.next.len() != panel.n() {
                return Err(Error::ShapeMismatch(
                    "heteroskedastic scales do not match panel".into(),
                ));
            }
        }
        Ok(())
    }
}

fn scale_operator(op: CovOperator, c: f64, t_len: usize) -> CovOperator {
    match op {
        _ if c == 1.0 => op,
        CovOperator::Toeplitz { acov } => CovOperator::Toeplitz {
            acov: acov.into_iter().map(|v| v * c).collect(),
        },
        CovOperator::Ar1 { scale, phi } => CovOperator::Ar1 {
            scale: scale * c,
            phi,
        },
        other => CovOperator::Scaled {
            left: vec![c; t_len],
            right: vec![1.0; t_len],
            inner: Box::new(other),
        },
    }
}

/// Slope-gap quantities shared by the oracle and the feasible estimators.
///
/// `lambda = T^{3/2} P^{-1} sum_i x_i b_i` and
/// `lambda_k[k] = T^{3/2} G_k^{-1} x_k b_k`, where `b_i = x_i' d_i` is the
/// pooling bias of individual `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiasTerms {
    pub k: usize,
    /// `d_i`, row-major `N x K`.
    pub gaps: Vec<f64>,
    pub bias: Vec<f64>,
    pub lambda: Vec<f64>,
    /// Row-major `N x K`.
    pub lambda_k: Vec<f64>,
}

impl BiasTerms {
    pub fn lambda_k(&self, i: usize) -> &[f64] {
        &self.lambda_k[i * self.k..(i + 1) * self.k]
    }

    /// `lambda - lambda_i`.
    pub fn lambda_gap(&self, i: usize) -> Vec<f64> {
        self.lambda
            .iter()
            .zip(self.lambda_k(i))
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// Bias terms for arbitrary per-individual slopes (row-major `N x K`).
pub fn bias_terms(panel: &Panel, grams: &PanelGrams, betas: &[f64]) -> BiasTerms {
    let (n, k) = (panel.n(), panel.k());
    let mut weighted = vec![0.0; k];
    for i in 0..n {
        let g = &grams.individual[i];
        let b = &betas[i * k..(i + 1) * k];
        for r in 0..k {
            weighted[r] += (0..k).map(|c| g[(r, c)] * b[c]).sum::<f64>();
        }
    }
    // Equal slopes give P^{-1} P beta = beta; take it exactly rather than
    // through a rounded solve.
    let homogeneous = betas.chunks(k).all(|b| b == &betas[..k]);
    let centre = if homogeneous && n > 0 {
        betas[..k].to_vec()
    } else {
        grams.pooled_factor.solve(&weighted)
    };
    let t32 = (panel.t_len() as f64).powf(1.5);
    let mut gaps = Vec::with_capacity(n * k);
    let mut bias = Vec::with_capacity(n);
    let mut lambda_k = Vec::with_capacity(n * k);
    let mut acc = vec![0.0; k];
    for i in 0..n {
        let x = panel.predictor(i);
        let d: Vec<f64> = centre
            .iter()
            .zip(&betas[i * k..(i + 1) * k])
            .map(|(c, b)| c - b)
            .collect();
        let bi = dot(x, &d);
        for (a, xv) in acc.iter_mut().zip(x) {
            *a += xv * bi;
        }
        lambda_k.extend(grams.factors[i].solve(x).into_iter().map(|v| v * t32 * bi));
        gaps.extend(d);
        bias.push(bi);
    }
    let lambda = grams
        .pooled_factor
        .solve(&acc)
        .into_iter()
        .map(|v| v * t32)
        .collect();
    BiasTerms {
        k,
        gaps,
        bias,
        lambda,
        lambda_k,
    }
}

/// Lemma-style decomposition of the two prediction errors.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorDecomposition {
    pub e_ind_per_i: Vec<f64>,
    pub e_pool_per_i: Vec<f64>,
    /// Mean variance of the individual forecasts.
    pub e1: f64,
    /// Mean squared pooling bias.
    pub e2: f64,
    /// Mean variance of the pooled forecasts.
    pub e3: f64,
    /// `mean(e_pool) - mean(e_ind)`.
    pub diff: f64,
}

impl ErrorDecomposition {
    pub fn mean_ind(&self) -> f64 {
        mean(&self.e_ind_per_i)
    }

    pub fn mean_pool(&self) -> f64 {
        mean(&self.e_pool_per_i)
    }
}

fn mean(v: &[f64]) -> f64 {
    compensated_sum(v.iter().copied()) / v.len() as f64
}

struct Parts {
    e1: Vec<f64>,
    e2: Vec<f64>,
    e3: Vec<f64>,
    noise: Vec<f64>,
}

fn individual_variance(panel: &Panel, grams: &PanelGrams, truth: &TrueModel, i: usize) -> f64 {
    let (t, k) = (panel.t_len(), panel.k());
    let Some(op) = truth.pair_operator(i, i, t) else {
        return 0.0;
    };
    let w = grams.factors[i].solve(panel.predictor(i));
    let q = x_vec(panel.design(i), t, k, &w);
    op.bilinear(&q, &q)
}

/// `S = sum_{j,k} X_j' C_jk X_k` over the nonzero pairs of `Sigma_N`.
fn pooled_noise_matrix(panel: &Panel, truth: &TrueModel) -> nalgebra::DMatrix<f64> {
    let (t, k) = (panel.t_len(), panel.k());
    let pairs = truth.sigma_n.nonzero_pairs(panel.n());
    let blocks: Vec<nalgebra::DMatrix<f64>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            truth
                .pair_operator(a, b, t)
                .map(|op| op.sandwich(panel.design(a), panel.design(b), t, k))
                .unwrap_or_else(|| nalgebra::DMatrix::zeros(k, k))
        })
        .collect();
    let mut s = nalgebra::DMatrix::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            s[(r, c)] = compensated_sum(blocks.iter().map(|m| m[(r, c)]));
        }
    }
    s
}

fn parts(panel: &Panel, grams: &PanelGrams, truth: &TrueModel) -> Parts {
    let n = panel.n();
    let terms = bias_terms(panel, grams, &truth.betas);
    let s = pooled_noise_matrix(panel, truth);
    let e1 = (0..n)
        .into_par_iter()
        .map(|i| individual_variance(panel, grams, truth, i))
        .collect();
    let e3 = (0..n)
        .map(|i| {
            let z = grams.pooled_factor.solve(panel.predictor(i));
            crate::linalg::quad(&z, &s, &z)
        })
        .collect();
    Parts {
        e1,
        e2: terms.bias.iter().map(|b| b * b).collect(),
        e3,
        noise: (0..n).map(|i| truth.forecast_noise(i)).collect(),
    }
}

/// Conditional MSFE of the individual forecast of individual `i`.
pub fn individual_error(panel: &Panel, truth: &TrueModel, i: usize) -> Result<f64> {
    truth.check(panel)?;
    let grams = PanelGrams::new(panel)?;
    Ok(individual_variance(panel, &grams, truth, i) + truth.forecast_noise(i))
}

/// Conditional MSFE of the pooled forecast of individual `i`.
pub fn pooled_error(panel: &Panel, truth: &TrueModel, i: usize) -> Result<f64> {
    truth.check(panel)?;
    let grams = PanelGrams::new(panel)?;
    let terms = bias_terms(panel, &grams, &truth.betas);
    let s = pooled_noise_matrix(panel, truth);
    let z = grams.pooled_factor.solve(panel.predictor(i));
    Ok(terms.bias[i].powi(2) + crate::linalg::quad(&z, &s, &z) + truth.forecast_noise(i))
}

pub fn decompose_errors(panel: &Panel, truth: &TrueModel) -> Result<ErrorDecomposition> {
    truth.check(panel)?;
    let grams = PanelGrams::new(panel)?;
    Ok(decompose_with(panel, &grams, truth))
}

/// As [`decompose_errors`] with precomputed Gram matrices.
pub fn decompose_with(panel: &Panel, grams: &PanelGrams, truth: &TrueModel) -> ErrorDecomposition {
    let p = parts(panel, grams, truth);
    let e_ind_per_i: Vec<f64> = p.e1.iter().zip(&p.noise).map(|(a, b)| a + b).collect();
    let e_pool_per_i: Vec<f64> = (0..panel.n())
        .map(|i| p.e2[i] + p.e3[i] + p.noise[i])
        .collect();
    let (e1, e2, e3) = (mean(&p.e1), mean(&p.e2), mean(&p.e3));
    // Forecast-period noise is common to both errors and cancels exactly.
    let diff = e2 + e3 - e1;
    ErrorDecomposition {
        e_ind_per_i,
        e_pool_per_i,
        e1,
        e2,
        e3,
        diff,
    }
}

/// Oracle long-run variance `tau_N^2` of `sqrt(N) T (E_hat - 2 E_1)`.
pub fn oracle_tau(panel: &Panel, truth: &TrueModel) -> Result<f64> {
    truth.check(panel)?;
    let grams = PanelGrams::new(panel)?;
    oracle_tau_with(panel, &grams, truth)
}

pub fn oracle_tau_with(panel: &Panel, grams: &PanelGrams, truth: &TrueModel) -> Result<f64> {
    let terms = bias_terms(panel, grams, &truth.betas);
    let t = panel.t_len();
    let pairs = truth.sigma_n.nonzero_pairs(panel.n());
    let value = tau_sum(panel, grams, &terms, &pairs, |i, k| {
        truth.pair_operator(i, k, t)
    })?;
    if value <= DEGENERATE_TAU {
        return Err(Error::DegenerateVariance { value });
    }
    Ok(value)
}

/// Per-individual vectors entering the variance double sum.
pub(crate) struct TauVectors {
    /// `u_i = X_i (G_i / T)^{-1} x_{i,T+1}`.
    pub u: Vec<Vec<f64>>,
    /// `X_i (lambda - lambda_i)`.
    pub a: Vec<Vec<f64>>,
}

pub(crate) fn tau_vectors(panel: &Panel, grams: &PanelGrams, terms: &BiasTerms) -> TauVectors {
    let (t, k) = (panel.t_len(), panel.k());
    let tf = t as f64;
    let (u, a) = (0..panel.n())
        .into_par_iter()
        .map(|i| {
            let v: Vec<f64> = grams.factors[i]
                .solve(panel.predictor(i))
                .into_iter()
                .map(|w| w * tf)
                .collect();
            (
                x_vec(panel.design(i), t, k, &v),
                x_vec(panel.design(i), t, k, &terms.lambda_gap(i)),
            )
        })
        .unzip();
    TauVectors { u, a }
}

/// Contributions of the pairs `(i, k)`, weighted by `weight(i, k)`.
///
/// Each pair contributes
/// `2 (u_i' C u_k / T)^2 + 4 (X_i a_i)' C (X_k a_k) / T`
/// and the total is divided by `N`.
pub(crate) fn tau_pair_terms<F>(
    vecs: &TauVectors,
    t_len: usize,
    pairs: &[(usize, usize)],
    op: F,
) -> Result<Vec<(f64, f64)>>
where
    F: Fn(usize, usize) -> Result<Option<CovOperator>> + Sync,
{
    let tf = t_len as f64;
    pairs
        .par_iter()
        .map(|&(i, k)| {
            Ok(match op(i, k)? {
                None => (0.0, 0.0),
                Some(c) => {
                    let first = c.bilinear(&vecs.u[i], &vecs.u[k]) / tf;
                    let second = c.bilinear(&vecs.a[i], &vecs.a[k]) / tf;
                    (2.0 * first * first, 4.0 * second)
                }
            })
        })
        .collect()
}

fn tau_sum<F>(
    panel: &Panel,
    grams: &PanelGrams,
    terms: &BiasTerms,
    pairs: &[(usize, usize)],
    op: F,
) -> Result<f64>
where
    F: Fn(usize, usize) -> Option<CovOperator> + Sync,
{
    let vecs = tau_vectors(panel, grams, terms);
    let contrib = tau_pair_terms(&vecs, panel.t_len(), pairs, |i, k| Ok(op(i, k)))?;
    Ok(compensated_sum(contrib.iter().map(|(a, b)| a + b)) / panel.n() as f64)
}
