//! Estimators of the `T x T` error covariance of one individual (or of a pair
//! of individuals).
//!
//! * banded autocovariance matrix, lags `|s-t| < b` kept (strict inequality);
//! * parametric AR(1) with a small-sample bias correction of the slope;
//! * heteroskedasticity-scaled wrapper around any of the others;
//! * Bartlett-weighted HAC outer product (experimental: no consistency result
//!   backs it, and for `b >= 2` the matrix is not positive semidefinite);
//! * the centring adjustment `M_T * Sigma * M_T` used after demeaning.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{CovOperator, CrossCovariance, TimeCovariance};
use crate::panel::{Panel, ResidualSet};

/// Largest admissible |phi| for the parametric AR(1) estimator.
pub const AR1_CLAMP: f64 = 0.999;

/// Scale values at or below this are rejected by the heteroskedastic wrapper.
pub const MIN_SCALE: f64 = 1e-12;

/// Temporal bandwidth, either fixed or the `round(T^{2/7})` rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BandwidthRepr", into = "BandwidthRepr")]
pub enum Bandwidth {
    Auto,
    Fixed(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BandwidthRepr {
    Fixed(usize),
    Named(String),
}

impl TryFrom<BandwidthRepr> for Bandwidth {
    type Error = String;

    fn try_from(r: BandwidthRepr) -> std::result::Result<Self, String> {
        match r {
            BandwidthRepr::Fixed(0) => Err("bandwidth must be >= 1".into()),
            BandwidthRepr::Fixed(b) => Ok(Bandwidth::Fixed(b)),
            BandwidthRepr::Named(s) if s == "auto" => Ok(Bandwidth::Auto),
            BandwidthRepr::Named(s) => Err(format!("unknown bandwidth `{s}`")),
        }
    }
}

impl From<Bandwidth> for BandwidthRepr {
    fn from(b: Bandwidth) -> Self {
        match b {
            Bandwidth::Auto => BandwidthRepr::Named("auto".into()),
            Bandwidth::Fixed(v) => BandwidthRepr::Fixed(v),
        }
    }
}

impl Bandwidth {
    pub fn resolve(self, t_len: usize) -> usize {
        match self {
            Bandwidth::Auto => default_bandwidth(t_len),
            Bandwidth::Fixed(b) => b,
        }
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bandwidth::Auto => f.write_str("T^(2/7)"),
            Bandwidth::Fixed(b) => write!(f, "{b}"),
        }
    }
}

/// Known positive scale function `omega(x_{i,t})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScaleFn {
    /// `|x_{i,t,c}|` for regressor column `c` (0-based).
    AbsComponent {
        component: usize,
    },
    Constant {
        value: f64,
    },
}

impl ScaleFn {
    pub fn eval(&self, panel: &Panel, i: usize, t: usize) -> f64 {
        match self {
            ScaleFn::AbsComponent { component } => panel.x_at(i, t, *component).abs(),
            ScaleFn::Constant { value } => *value,
        }
    }
}

/// Which covariance estimator to use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SigmaVariant {
    Banded {
        bandwidth: Bandwidth,
    },
    Ar1Parametric,
    HeteroScaled {
        scale: ScaleFn,
        inner: Box<SigmaVariant>,
    },
    Hac {
        bandwidth: Bandwidth,
    },
    /// Known `Sigma_N` and `Sigma_T`; pair `(i,k)` gets `(Sigma_N)_{ik} Sigma_T`.
    TrueSigma {
        time: TimeCovariance,
        cross: CrossCovariance,
    },
}

impl fmt::Display for SigmaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaVariant::Banded { bandwidth } => write!(f, "banded(b={bandwidth})"),
            SigmaVariant::Ar1Parametric => f.write_str("ar1-parametric"),
            SigmaVariant::HeteroScaled { inner, .. } => write!(f, "hetero-scaled[{inner}]"),
            SigmaVariant::Hac { bandwidth } => write!(f, "hac(b={bandwidth})"),
            SigmaVariant::TrueSigma { .. } => f.write_str("true"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaSpec {
    pub variant: SigmaVariant,
    /// Conjugate the estimate with `M_T` (needed after the within transformation).
    #[serde(default)]
    pub demean_adjust: bool,
}

impl SigmaSpec {
    pub fn new(variant: SigmaVariant) -> Self {
        Self {
            variant,
            demean_adjust: false,
        }
    }

    pub fn banded(b: usize) -> Self {
        Self::new(SigmaVariant::Banded {
            bandwidth: Bandwidth::Fixed(b),
        })
    }

    pub fn with_demean_adjust(mut self, on: bool) -> Self {
        self.demean_adjust = on;
        self
    }

    /// Effective temporal bandwidth for a panel of length `t_len`, if any.
    pub fn bandwidth(&self, t_len: usize) -> Option<usize> {
        variant_bandwidth(&self.variant, t_len)
    }
}

fn variant_bandwidth(v: &SigmaVariant, t_len: usize) -> Option<usize> {
    match v {
        SigmaVariant::Banded { bandwidth } | SigmaVariant::Hac { bandwidth } => {
            Some(bandwidth.resolve(t_len))
        }
        SigmaVariant::HeteroScaled { inner, .. } => variant_bandwidth(inner, t_len),
        SigmaVariant::Ar1Parametric | SigmaVariant::TrueSigma { .. } => None,
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.demean_adjust {
            write!(f, "M_T*{}*M_T", self.variant)
        } else {
            write!(f, "{}", self.variant)
        }
    }
}

/// A `T x T` covariance estimate for an individual pair `(i, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaEstimate {
    pub operator: CovOperator,
    pub t_len: usize,
    /// Effective bandwidth; `None` for full-width estimates.
    pub band: Option<usize>,
    /// Whether the estimate is known to be positive semidefinite.
    pub psd_flag: bool,
}

impl SigmaEstimate {
    pub fn matrix(&self) -> nalgebra::DMatrix<f64> {
        self.operator.to_dense(self.t_len)
    }

    pub fn bilinear(&self, a: &[f64], b: &[f64]) -> f64 {
        self.operator.bilinear(a, b)
    }
}

/// Lag-`h` cross autocovariance of two residual series with divisor `T-h-K`.
pub fn autocov_hat(r_i: &[f64], r_k: &[f64], h: usize, k_dim: usize) -> Result<f64> {
    let t_len = r_i.len();
    if r_k.len() != t_len {
        return Err(Error::ShapeMismatch(
            "residual series differ in length".into(),
        ));
    }
    if h + k_dim >= t_len {
        return Err(Error::LagTooLarge {
            lag: h,
            t_len,
            k: k_dim,
        });
    }
    let s: f64 = r_i[..t_len - h]
        .iter()
        .zip(&r_k[h..])
        .map(|(a, b)| a * b)
        .sum();
    Ok(s / (t_len - h - k_dim) as f64)
}

/// Banded Toeplitz estimate keeping the autocovariances at lags `0..b`.
pub fn banded_sigma(r_i: &[f64], r_k: &[f64], b: usize, k_dim: usize) -> Result<SigmaEstimate> {
    let t_len = r_i.len();
    let max = t_len.saturating_sub(k_dim);
    if b == 0 || b > max {
        return Err(Error::InvalidBandwidth { bandwidth: b, max });
    }
    let acov = (0..b)
        .map(|h| autocov_hat(r_i, r_k, h, k_dim))
        .collect::<Result<Vec<_>>>()?;
    let psd_flag = b == 1 && acov[0] >= 0.0;
    Ok(SigmaEstimate {
        operator: CovOperator::Toeplitz { acov },
        t_len,
        band: Some(b),
        psd_flag,
    })
}

/// Fitted parameters of the parametric AR(1) estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ar1Fit {
    /// Least-squares slope of `r_t` on `r_{t-1}` (no intercept).
    pub phi_raw: f64,
    /// `phi_raw + (1 + 3 phi_raw) / T`, clamped to `[-AR1_CLAMP, AR1_CLAMP]`.
    pub phi_bc: f64,
    /// `sum r_t^2 / (T - K)`.
    pub variance: f64,
}

pub fn ar1_fit(r: &[f64], k_dim: usize) -> Result<Ar1Fit> {
    let t_len = r.len();
    if t_len < 3 || t_len <= k_dim {
        return Err(Error::InvalidPanel(format!(
            "AR(1) fit needs T >= 3 and T > K (T={t_len}, K={k_dim})"
        )));
    }
    let num: f64 = r.windows(2).map(|w| w[0] * w[1]).sum();
    let den: f64 = r[..t_len - 1].iter().map(|v| v * v).sum();
    let phi_raw = if den > 0.0 { num / den } else { 0.0 };
    let phi_bc = bias_corrected_phi(phi_raw, t_len);
    let variance = r.iter().map(|v| v * v).sum::<f64>() / (t_len - k_dim) as f64;
    Ok(Ar1Fit {
        phi_raw,
        phi_bc,
        variance,
    })
}

/// Kendall / Marriott-Pope correction `phi + (1 + 3 phi) / T`, clamped.
pub fn bias_corrected_phi(phi: f64, t_len: usize) -> f64 {
    (phi + (1.0 + 3.0 * phi) / t_len as f64).clamp(-AR1_CLAMP, AR1_CLAMP)
}

/// Toeplitz estimate `sigma^2 * phi_bc^|s-t|`.
pub fn ar1_sigma(r: &[f64], k_dim: usize) -> Result<SigmaEstimate> {
    let fit = ar1_fit(r, k_dim)?;
    Ok(SigmaEstimate {
        operator: CovOperator::Ar1 {
            scale: fit.variance,
            phi: fit.phi_bc,
        },
        t_len: r.len(),
        band: None,
        psd_flag: true,
    })
}

/// Bartlett weights `1 - h/(b+1)` for lags `h < b`.
pub fn bartlett_weights(b: usize) -> Vec<f64> {
    (0..b).map(|h| 1.0 - h as f64 / (b + 1) as f64).collect()
}

/// HAC estimate with entries `w_{s,t}(b) r_{i,s} r_{k,t}`.
pub fn hac_sigma(r_i: &[f64], r_k: &[f64], b: usize) -> Result<SigmaEstimate> {
    if b == 0 {
        return Err(Error::InvalidBandwidth {
            bandwidth: 0,
            max: r_i.len(),
        });
    }
    if r_k.len() != r_i.len() {
        return Err(Error::ShapeMismatch(
            "residual series differ in length".into(),
        ));
    }
    Ok(SigmaEstimate {
        operator: CovOperator::Hac {
            weights: bartlett_weights(b),
            left: r_i.to_vec(),
            right: r_k.to_vec(),
        },
        t_len: r_i.len(),
        band: Some(b),
        // The truncated Bartlett weight matrix is indefinite once b >= 2.
        psd_flag: b == 1 && r_i == r_k,
    })
}

/// `M_T * Sigma * M_T`.
pub fn demean_adjust(est: SigmaEstimate) -> SigmaEstimate {
    SigmaEstimate {
        operator: CovOperator::Centered(Box::new(est.operator)),
        ..est
    }
}

/// `max(1, round(T^{2/7}))`, rounding halves up.
pub fn default_bandwidth(t_len: usize) -> usize {
    let v = (t_len as f64).powf(2.0 / 7.0);
    ((v + 0.5).floor() as usize).max(1)
}

/// Heteroskedasticity-scaled estimate `Omega_i * inner(r/omega) * Omega_k`.
pub fn hetero_sigma(
    panel: &Panel,
    resids: &ResidualSet,
    i: usize,
    k: usize,
    scale: &ScaleFn,
    inner: &SigmaVariant,
) -> Result<SigmaEstimate> {
    let t_len = panel.t_len();
    let omega = |j: usize| -> Result<Vec<f64>> {
        (0..t_len)
            .map(|t| {
                let w = scale.eval(panel, j, t);
                if w.is_finite() && w > MIN_SCALE {
                    Ok(w)
                } else {
                    Err(Error::ZeroScale { t, value: w })
                }
            })
            .collect()
    };
    let omega_i = omega(i)?;
    let omega_k = if i == k { omega_i.clone() } else { omega(k)? };
    let std_i: Vec<f64> = resids
        .row(i)
        .iter()
        .zip(&omega_i)
        .map(|(r, w)| r / w)
        .collect();
    let std_k: Vec<f64> = resids
        .row(k)
        .iter()
        .zip(&omega_k)
        .map(|(r, w)| r / w)
        .collect();
    let inner_est = estimate_from_series(inner, panel, resids, i, k, &std_i, &std_k)?;
    Ok(SigmaEstimate {
        operator: CovOperator::Scaled {
            left: omega_i,
            right: omega_k,
            inner: Box::new(inner_est.operator),
        },
        t_len,
        band: inner_est.band,
        psd_flag: inner_est.psd_flag && i == k,
    })
}

fn estimate_from_series(
    variant: &SigmaVariant,
    panel: &Panel,
    resids: &ResidualSet,
    i: usize,
    k: usize,
    r_i: &[f64],
    r_k: &[f64],
) -> Result<SigmaEstimate> {
    let t_len = panel.t_len();
    let k_dim = panel.k();
    match variant {
        SigmaVariant::Banded { bandwidth } => {
            banded_sigma(r_i, r_k, bandwidth.resolve(t_len), k_dim)
        }
        SigmaVariant::Hac { bandwidth } => hac_sigma(r_i, r_k, bandwidth.resolve(t_len)),
        SigmaVariant::Ar1Parametric => {
            if i != k {
                return Err(Error::UnsupportedCrossPair("ar1-parametric"));
            }
            ar1_sigma(r_i, k_dim)
        }
        SigmaVariant::HeteroScaled { scale, inner } => {
            // Nested scaling works on the raw residuals of the pair.
            let _ = (r_i, r_k);
            hetero_sigma(panel, resids, i, k, scale, inner)
        }
        SigmaVariant::TrueSigma { time, cross } => {
            let c = cross.entry(i, k);
            let operator = match time.operator() {
                CovOperator::Toeplitz { acov } => CovOperator::Toeplitz {
                    acov: acov.iter().map(|v| v * c).collect(),
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
            };
            Ok(SigmaEstimate {
                operator,
                t_len,
                band: None,
                psd_flag: i == k && c >= 0.0,
            })
        }
    }
}

/// Covariance estimate for the pair `(i, k)` under `spec`.
pub fn estimate_sigma(
    spec: &SigmaSpec,
    panel: &Panel,
    resids: &ResidualSet,
    i: usize,
    k: usize,
) -> Result<SigmaEstimate> {
    let est = estimate_from_series(
        &spec.variant,
        panel,
        resids,
        i,
        k,
        resids.row(i),
        resids.row(k),
    )?;
    Ok(if spec.demean_adjust {
        demean_adjust(est)
    } else {
        est
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::panel::{fit_slopes, residuals};
    use nalgebra::SymmetricEigen;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn rand_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect()
    }

    #[test]
    fn autocov_examples() {
        let ones = vec![1.0; 10];
        assert_eq!(autocov_hat(&ones, &ones, 0, 5).unwrap(), 2.0);
        let alt: Vec<f64> = (0..12)
            .map(|t| if t % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        assert!((autocov_hat(&alt, &alt, 1, 5).unwrap() + 11.0 / 6.0).abs() < 1e-15);
        assert!(matches!(
            autocov_hat(&ones, &ones, 5, 5),
            Err(Error::LagTooLarge { .. })
        ));
    }

    #[test]
    fn autocov_matches_loop_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = rand_vec(&mut rng, 8);
        let b = rand_vec(&mut rng, 8);
        let mut s = 0.0;
        for t in 0..6 {
            s += a[t] * b[t + 2];
        }
        let want = s / 5.0;
        assert!((autocov_hat(&a, &b, 2, 1).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn banded_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = rand_vec(&mut rng, 12);
        let diag = banded_sigma(&r, &r, 1, 2).unwrap();
        let m = diag.matrix();
        let xi0 = autocov_hat(&r, &r, 0, 2).unwrap();
        for s in 0..12 {
            for t in 0..12 {
                let want = if s == t { xi0 } else { 0.0 };
                assert_eq!(m[(s, t)], want);
            }
        }
        let est = banded_sigma(&r, &r, 3, 2).unwrap();
        let m = est.matrix();
        for s in 0..12usize {
            for t in 0..12usize {
                if s.abs_diff(t) >= 3 {
                    assert_eq!(m[(s, t)], 0.0);
                }
                assert_eq!(m[(s, t)], m[(t, s)]);
            }
        }
        assert!(matches!(
            banded_sigma(&r, &r, 11, 2),
            Err(Error::InvalidBandwidth { .. })
        ));
        assert!(banded_sigma(&r, &r, 10, 2).is_ok());
    }

    #[test]
    fn ar1_correction_examples() {
        assert!((bias_corrected_phi(0.0, 10) - 0.1).abs() < 1e-15);
        assert!((bias_corrected_phi(0.5, 25) - 0.6).abs() < 1e-15);
        assert_eq!(bias_corrected_phi(0.99, 10), AR1_CLAMP);
        assert_eq!(bias_corrected_phi(-1.5, 10), -AR1_CLAMP);
    }

    #[test]
    fn ar1_sigma_is_toeplitz_power() {
        let r = [1.0, 0.5, -0.2, 0.3, 0.9, -1.1];
        let fit = ar1_fit(&r, 1).unwrap();
        let m = ar1_sigma(&r, 1).unwrap().matrix();
        for s in 0..6usize {
            for t in 0..6usize {
                let want = fit.variance * fit.phi_bc.powi(s.abs_diff(t) as i32);
                assert!((m[(s, t)] - want).abs() < 1e-14);
            }
        }
        assert!(ar1_fit(&[1.0, 2.0], 0).is_err());
    }

    #[test]
    fn hac_weights_and_oracle() {
        let w = bartlett_weights(3);
        assert_eq!(w[0], 1.0);
        assert_eq!(w[2], 0.5);
        assert_eq!(w.len(), 3);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = rand_vec(&mut rng, 10);
        let m = hac_sigma(&r, &r, 4).unwrap().matrix();
        for s in 0..10usize {
            for t in 0..10usize {
                let lag = s.abs_diff(t) as f64;
                let wt = if lag < 4.0 { 1.0 - lag / 5.0 } else { 0.0 };
                assert!((m[(s, t)] - wt * r[s] * r[t]).abs() < 1e-15);
            }
        }
        let d = hac_sigma(&r, &r, 1).unwrap();
        assert!(d.psd_flag);
        let m = d.matrix();
        for s in 0..10 {
            assert!((m[(s, s)] - r[s] * r[s]).abs() < 1e-15);
        }
    }

    #[test]
    fn hac_psd_only_for_unit_bandwidth() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let r = rand_vec(&mut rng, 15);
            let e = SymmetricEigen::new(hac_sigma(&r, &r, 1).unwrap().matrix());
            assert!(e.eigenvalues.min() >= -1e-10);
        }
        // Dropping the lag-b Bartlett term leaves an indefinite weight matrix.
        let ones = vec![1.0; 40];
        let est = hac_sigma(&ones, &ones, 2).unwrap();
        assert!(!est.psd_flag);
        let e = SymmetricEigen::new(est.matrix());
        assert!(e.eigenvalues.min() < -0.1);
    }

    #[test]
    fn demean_adjust_properties() {
        let id = SigmaEstimate {
            operator: CovOperator::identity(),
            t_len: 5,
            band: Some(1),
            psd_flag: true,
        };
        let m = demean_adjust(id.clone()).matrix();
        let mt = crate::operator::centering_matrix(5);
        assert!((m - &mt).abs().max() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = rand_vec(&mut rng, 9);
        let once = demean_adjust(banded_sigma(&r, &r, 3, 1).unwrap());
        let m1 = once.matrix();
        for s in 0..9 {
            assert!(m1.row(s).sum().abs() < 1e-10);
        }
        let m2 = demean_adjust(once).matrix();
        assert!((m2 - m1).abs().max() < 1e-12);
    }

    #[test]
    fn default_bandwidth_examples() {
        assert_eq!(default_bandwidth(10), 2);
        // 80^(2/7) = 3.4974, below the half-way point.
        assert_eq!(default_bandwidth(80), 3);
        assert_eq!(default_bandwidth(81), 4);
        assert_eq!(default_bandwidth(1000), 7);
        assert_eq!(default_bandwidth(2), 1);
    }

    fn hetero_panel(seed: u64) -> (Panel, ResidualSet) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, t, k) = (2, 12, 2);
        let x: Vec<f64> = (0..n * t * k)
            .map(|_| 1.0 + rng.sample::<f64, _>(StandardNormal))
            .collect();
        let y: Vec<f64> = rand_vec(&mut rng, n * t);
        let p = Panel::new(n, t, k, x, y, vec![1.0; n * k]).unwrap();
        let s = fit_slopes(&p).unwrap();
        let r = residuals(&p, &s).unwrap();
        (p, r)
    }

    #[test]
    fn hetero_unit_scale_is_inner() {
        let (p, r) = hetero_panel(9);
        let inner = SigmaVariant::Banded {
            bandwidth: Bandwidth::Fixed(3),
        };
        let plain = estimate_sigma(&SigmaSpec::new(inner.clone()), &p, &r, 0, 0).unwrap();
        let unit = hetero_sigma(&p, &r, 0, 0, &ScaleFn::Constant { value: 1.0 }, &inner).unwrap();
        assert!((plain.matrix() - unit.matrix()).abs().max() < 1e-15);

        // A constant scale of 2 cancels: residuals are halved, then conjugated by 2.
        let two = hetero_sigma(&p, &r, 0, 0, &ScaleFn::Constant { value: 2.0 }, &inner).unwrap();
        assert!((plain.matrix() - two.matrix()).abs().max() < 1e-14);
    }

    #[test]
    fn hetero_abs_scale_recomputed_elementwise() {
        let (p, r) = hetero_panel(10);
        let inner = SigmaVariant::Banded {
            bandwidth: Bandwidth::Fixed(1),
        };
        let est = hetero_sigma(
            &p,
            &r,
            1,
            1,
            &ScaleFn::AbsComponent { component: 0 },
            &inner,
        )
        .unwrap()
        .matrix();
        let omega: Vec<f64> = (0..12).map(|t| p.x_at(1, t, 0).abs()).collect();
        let std: Vec<f64> = r.row(1).iter().zip(&omega).map(|(a, w)| a / w).collect();
        let xi0 = std.iter().map(|v| v * v).sum::<f64>() / 10.0;
        for t in 0..12 {
            assert!((est[(t, t)] - omega[t] * omega[t] * xi0).abs() < 1e-12);
        }
    }

    #[test]
    fn hetero_zero_scale_rejected() {
        let (p, r) = hetero_panel(11);
        let err = hetero_sigma(
            &p,
            &r,
            0,
            0,
            &ScaleFn::Constant { value: 0.0 },
            &SigmaVariant::Ar1Parametric,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ZeroScale { t: 0, .. }));
    }

    #[test]
    fn bandwidth_serde() {
        #[derive(Serialize, Deserialize)]
        struct W {
            b: Bandwidth,
        }
        let w: W = serde_json_like("auto");
        assert_eq!(w.b, Bandwidth::Auto);
        fn serde_json_like(s: &str) -> W {
            W {
                b: Bandwidth::try_from(BandwidthRepr::Named(s.into())).unwrap(),
            }
        }
        assert!(Bandwidth::try_from(BandwidthRepr::Fixed(0)).is_err());
    }
}
