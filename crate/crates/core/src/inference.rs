//! Feasible inference on `E^pool - E^ind`: the point estimate
//! `E_hat - 2 E1_hat`, its long-run variance and the confidence interval.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

use crate::covariance::{estimate_sigma, SigmaEstimate, SigmaSpec};
use crate::error::{Error, Result};
use crate::linalg::{compensated_sum, x_vec};
use crate::oracle::{bias_terms, tau_pair_terms, tau_vectors, BiasTerms, TrueModel};
use crate::panel::{residuals, Panel, PanelGrams, ResidualSet, SlopeEstimates};

/// Cross-sectional kernel shape on `[0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelShape {
    /// `max(0, 1 - x)`.
    Bartlett,
    Parzen,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub shape: KernelShape,
    pub b_prime: f64,
}

impl Default for KernelSpec {
    /// Bartlett with `b' = 1`: cross-sectional independence, only `i = k`.
    fn default() -> Self {
        Self {
            shape: KernelShape::Bartlett,
            b_prime: 1.0,
        }
    }
}

impl KernelSpec {
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        if x >= 1.0 {
            return 0.0;
        }
        match self.shape {
            KernelShape::Bartlett => 1.0 - x,
            KernelShape::Parzen => {
                if x <= 0.5 {
                    1.0 - 6.0 * x * x + 6.0 * x * x * x
                } else {
                    2.0 * (1.0 - x).powi(3)
                }
            }
        }
    }

    /// Pairs `(i, k)` with positive kernel weight, and their weights.
    pub fn pairs(&self, n: usize) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        let reach = self.b_prime.ceil().max(1.0) as usize;
        for i in 0..n {
            let lo = i.saturating_sub(reach - 1);
            let hi = (i + reach).min(n);
            for k in lo..hi {
                let w = self.eval(i.abs_diff(k) as f64 / self.b_prime);
                if w > 0.0 {
                    out.push((i, k, w));
                }
            }
        }
        out
    }
}

/// How the interval endpoints are formed from the nominal level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CiMode {
    /// `point -/+ Phi^{-1}(1 - alpha/2) * sd`: non-coverage `alpha`.
    #[default]
    Symmetric,
    /// `[point + Phi^{-1}(alpha) sd, point + Phi^{-1}(1 - alpha) sd]`, as
    /// written; its nominal coverage is `1 - 2 alpha`.
    StrictPaper,
}

/// What to do when the variance estimate is not positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauPolicy {
    /// Fall back to the own-pair squared terms and flag the result.
    #[default]
    Floor,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    PooledPreferred,
    IndividualPreferred,
    Inconclusive,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::PooledPreferred => "pooled preferred",
            Decision::IndividualPreferred => "individual preferred",
            Decision::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interval {
    pub point: f64,
    pub lo: f64,
    pub hi: f64,
    pub z: f64,
}

impl Interval {
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// The interval bounds `E^pool - E^ind`: entirely below zero means the
    /// pooled forecast has the smaller error.
    pub fn decision(&self) -> Decision {
        if self.hi < 0.0 {
            Decision::PooledPreferred
        } else if self.lo > 0.0 {
            Decision::IndividualPreferred
        } else {
            Decision::Inconclusive
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InferenceResult {
    pub n: usize,
    pub t_len: usize,
    pub e_hat: f64,
    pub e1_hat: f64,
    pub e1_components: Vec<f64>,
    pub tau_sq: f64,
    /// Variance before any flooring.
    pub tau_sq_raw: f64,
    pub point: f64,
    pub lo: f64,
    pub hi: f64,
    pub alpha: f64,
    pub ci_mode: CiMode,
    pub bandwidth: Option<usize>,
    pub b_prime: f64,
    pub variant_used: String,
    pub degenerate_variance: bool,
    pub decision: Decision,
}

/// `(1/N) sum_i (x_{i,T+1}' (P^{-1} sum_j G_j (beta_j - beta_i)))^2`.
pub fn e_hat(panel: &Panel, slopes: &SlopeEstimates) -> Result<f64> {
    let grams = PanelGrams::new(panel)?;
    Ok(e_hat_from_terms(&bias_terms(
        panel,
        &grams,
        &slopes.individual,
    )))
}

fn e_hat_from_terms(terms: &BiasTerms) -> f64 {
    compensated_sum(terms.bias.iter().map(|b| b * b)) / terms.bias.len() as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct E1Hat {
    pub value: f64,
    pub components: Vec<f64>,
}

/// `(1/N) sum_i v_i' X_i' Sigma_hat X_i v_i / T^2`, `v_i = (G_i/T)^{-1} x_{i,T+1}`.
pub fn e1_hat(panel: &Panel, resids: &ResidualSet, spec: &SigmaSpec) -> Result<E1Hat> {
    let grams = PanelGrams::new(panel)?;
    let diag = own_estimates(panel, resids, spec)?;
    Ok(e1_from(panel, &grams, &diag))
}

fn own_estimates(
    panel: &Panel,
    resids: &ResidualSet,
    spec: &SigmaSpec,
) -> Result<Vec<SigmaEstimate>> {
    (0..panel.n())
        .into_par_iter()
        .map(|i| estimate_sigma(spec, panel, resids, i, i))
        .collect()
}

fn e1_from(panel: &Panel, grams: &PanelGrams, diag: &[SigmaEstimate]) -> E1Hat {
    let (t, k) = (panel.t_len(), panel.k());
    let components: Vec<f64> = (0..panel.n())
        .into_par_iter()
        .map(|i| {
            let w = grams.factors[i].solve(panel.predictor(i));
            let q = x_vec(panel.design(i), t, k, &w);
            diag[i].bilinear(&q, &q)
        })
        .collect();
    E1Hat {
        value: compensated_sum(components.iter().copied()) / panel.n() as f64,
        components,
    }
}

/// Sample versions of `Lambda` and `Lambda_k`: returns `(Lambda, N x K Lambda_k)`.
pub fn lambda_hats(panel: &Panel, slopes: &SlopeEstimates) -> Result<(Vec<f64>, Vec<f64>)> {
    let grams = PanelGrams::new(panel)?;
    let t = bias_terms(panel, &grams, &slopes.individual);
    Ok((t.lambda, t.lambda_k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauHat {
    pub value: f64,
    pub raw: f64,
    /// Weighted sums of the squared-form and linear-form summands.
    pub first: f64,
    pub second: f64,
    pub degenerate: bool,
}

pub fn tau_hat(
    panel: &Panel,
    slopes: &SlopeEstimates,
    resids: &ResidualSet,
    spec: &SigmaSpec,
    kernel: &KernelSpec,
    policy: TauPolicy,
) -> Result<TauHat> {
    let grams = PanelGrams::new(panel)?;
    let terms = bias_terms(panel, &grams, &slopes.individual);
    let diag = own_estimates(panel, resids, spec)?;
    tau_from(panel, &grams, &terms, resids, spec, kernel, &diag, policy)
}

#[allow(clippy::too_many_arguments)]
fn tau_from(
    panel: &Panel,
    grams: &PanelGrams,
    terms: &BiasTerms,
    resids: &ResidualSet,
    spec: &SigmaSpec,
    kernel: &KernelSpec,
    diag: &[SigmaEstimate],
    policy: TauPolicy,
) -> Result<TauHat> {
    let n = panel.n();
    let vecs = tau_vectors(panel, grams, terms);
    let weighted = kernel.pairs(n);
    let pairs: Vec<(usize, usize)> = weighted.iter().map(|&(i, k, _)| (i, k)).collect();
    let contrib = tau_pair_terms(&vecs, panel.t_len(), &pairs, |i, k| {
        if i == k {
            Ok(Some(diag[i].operator.clone()))
        } else {
            estimate_sigma(spec, panel, resids, i, k).map(|e| Some(e.operator))
        }
    })?;
    let nf = n as f64;
    let first = compensated_sum(weighted.iter().zip(&contrib).map(|(p, c)| p.2 * c.0)) / nf;
    let second = compensated_sum(weighted.iter().zip(&contrib).map(|(p, c)| p.2 * c.1)) / nf;
    let raw = first + second;
    if raw > 0.0 {
        return Ok(TauHat {
            value: raw,
            raw,
            first,
            second,
            degenerate: false,
        });
    }
    if policy == TauPolicy::Error {
        return Err(Error::DegenerateVariance { value: raw });
    }
    let own = compensated_sum(
        weighted
            .iter()
            .zip(&contrib)
            .filter(|(p, _)| p.0 == p.1)
            .map(|(_, c)| c.0.abs()),
    ) / nf;
    Ok(TauHat {
        value: own,
        raw,
        first,
        second,
        degenerate: true,
    })
}

/// `Phi^{-1}(p)`, refined by one Newton step on `Phi(x) = erfc(-x/sqrt 2)/2`.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::OutOfRange(p));
    }
    if p > 0.5 {
        return Ok(-normal_quantile(1.0 - p)?);
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let std = Normal::new(0.0, 1.0).expect("standard normal");
    let mut x = std.inverse_cdf(p);
    for _ in 0..2 {
        let cdf = 0.5 * erfc(-x / std::f64::consts::SQRT_2);
        let pdf = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        if pdf == 0.0 {
            break;
        }
        x -= (cdf - p) / pdf;
    }
    Ok(x)
}

/// `Phi(x)`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Interval around `E_hat - 2 E1_hat` with scale `sqrt(tau_sq) / (sqrt(N) T)`.
pub fn confidence_interval(
    e_hat: f64,
    e1_hat: f64,
    tau_sq: f64,
    n: usize,
    t_len: usize,
    alpha: f64,
    mode: CiMode,
) -> Result<Interval> {
    if !(tau_sq > 0.0) || !tau_sq.is_finite() {
        return Err(Error::NonpositiveVariance { value: tau_sq });
    }
    let point = e_hat - 2.0 * e1_hat;
    let sd = tau_sq.sqrt() / ((n as f64).sqrt() * t_len as f64);
    Ok(match mode {
        CiMode::Symmetric => {
            let z = normal_quantile(1.0 - alpha / 2.0)?;
            Interval {
                point,
                lo: point - z * sd,
                hi: point + z * sd,
                z,
            }
        }
        CiMode::StrictPaper => {
            let lo_q = normal_quantile(alpha)?;
            let hi_q = normal_quantile(1.0 - alpha)?;
            Interval {
                point,
                lo: point + lo_q * sd,
                hi: point + hi_q * sd,
                z: hi_q,
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InferenceOptions {
    pub spec: SigmaSpec,
    pub kernel: KernelSpec,
    pub alpha: f64,
    pub ci_mode: CiMode,
    pub tau_policy: TauPolicy,
}

impl InferenceOptions {
    pub fn new(spec: SigmaSpec) -> Self {
        Self {
            spec,
            kernel: KernelSpec::default(),
            alpha: 0.05,
            ci_mode: CiMode::Symmetric,
            tau_policy: TauPolicy::Floor,
        }
    }
}

/// Fits the panel and assembles the feasible interval.
///
/// The `M_T` adjustment is switched on automatically for demeaned panels.
pub fn run_inference(panel: &Panel, opts: &InferenceOptions) -> Result<InferenceResult> {
    let grams = PanelGrams::new(panel)?;
    let slopes = grams.fit(panel);
    let resids = residuals(panel, &slopes)?;
    run_inference_with(panel, &grams, &slopes, &resids, opts)
}

pub fn run_inference_with(
    panel: &Panel,
    grams: &PanelGrams,
    slopes: &SlopeEstimates,
    resids: &ResidualSet,
    opts: &InferenceOptions,
) -> Result<InferenceResult> {
    let mut spec = opts.spec.clone();
    if panel.is_demeaned() {
        spec.demean_adjust = true;
    }
    let terms = bias_terms(panel, grams, &slopes.individual);
    let e = e_hat_from_terms(&terms);
    let diag = own_estimates(panel, resids, &spec)?;
    let e1 = e1_from(panel, grams, &diag);
    let tau = tau_from(
        panel,
        grams,
        &terms,
        resids,
        &spec,
        &opts.kernel,
        &diag,
        opts.tau_policy,
    )?;
    let ci = confidence_interval(
        e,
        e1.value,
        tau.value,
        panel.n(),
        panel.t_len(),
        opts.alpha,
        opts.ci_mode,
    )?;
    Ok(InferenceResult {
        n: panel.n(),
        t_len: panel.t_len(),
        e_hat: e,
        e1_hat: e1.value,
        e1_components: e1.components,
        tau_sq: tau.value,
        tau_sq_raw: tau.raw,
        point: ci.point,
        lo: ci.lo,
        hi: ci.hi,
        alpha: opts.alpha,
        ci_mode: opts.ci_mode,
        bandwidth: spec.bandwidth(panel.t_len()),
        b_prime: opts.kernel.b_prime,
        variant_used: spec.to_string(),
        degenerate_variance: tau.degenerate,
        decision: ci.decision(),
    })
}

/// Infeasible benchmark: `E_hat - 2 E_1` with the true `E_1` and the oracle
/// variance, so that only slope estimation is random.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibleResult {
    pub e_hat: f64,
    pub e1: f64,
    pub tau_sq: f64,
    pub interval: Interval,
}

pub fn infeasible_interval(
    panel: &Panel,
    grams: &PanelGrams,
    slopes: &SlopeEstimates,
    truth: &TrueModel,
    e1: f64,
    alpha: f64,
    mode: CiMode,
) -> Result<InfeasibleResult> {
    let e = e_hat_from_terms(&bias_terms(panel, grams, &slopes.individual));
    let tau_sq = crate::oracle::oracle_tau_with(panel, grams, truth)?;
    let interval = confidence_interval(e, e1, tau_sq, panel.n(), panel.t_len(), alpha, mode)?;
    Ok(InfeasibleResult {
        e_hat: e,
        e1,
        tau_sq,
        interval,
    })
}
