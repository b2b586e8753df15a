//! Monte Carlo coverage studies.
//!
//! Random numbers come from ChaCha8 seeded with the study seed. Replication
//! `r` of the cell with dimensions `(N, T)` reads stream
//! `(((N << 16) | T) << 32) | r`, so a cell's draws do not depend on which
//! other cells are in the grid or on the thread count.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covariance::{Bandwidth, SigmaSpec, SigmaVariant};
use crate::error::{Error, Result};
use crate::inference::{
    infeasible_interval, run_inference_with, CiMode, InferenceOptions, KernelSpec, TauPolicy,
};
use crate::operator::{CrossCovariance, TimeCovariance};
use crate::oracle::{decompose_with, HeteroScales, TrueModel};
use crate::panel::{residuals, within_demean, Panel, PanelGrams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SlopeDesign {
    Homogeneous {
        value: f64,
    },
    /// `lo` for `i < N/2`, `hi` otherwise, in every component.
    HalfSplit {
        lo: f64,
        hi: f64,
    },
    /// Components iid `N(mean, sd^2)`, redrawn every replication.
    RandomNormal {
        mean: f64,
        sd: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ErrorDesign {
    IidNormal,
    /// Stationary AR(1) with unit innovations.
    Ar1 {
        phi: f64,
    },
    /// `eps = |x_1| u`, `u` iid standard normal.
    Hetero,
    /// `eps = |x_1| u`, `u` stationary AR(1).
    HeteroAr1 {
        phi: f64,
    },
}

impl ErrorDesign {
    pub fn phi(&self) -> Option<f64> {
        match self {
            ErrorDesign::Ar1 { phi } | ErrorDesign::HeteroAr1 { phi } => Some(*phi),
            _ => None,
        }
    }

    pub fn is_hetero(&self) -> bool {
        matches!(self, ErrorDesign::Hetero | ErrorDesign::HeteroAr1 { .. })
    }

    pub fn time_covariance(&self) -> TimeCovariance {
        match self.phi() {
            Some(phi) => TimeCovariance::Ar1 { phi },
            None => TimeCovariance::Identity,
        }
    }
}

/// How the forecast regressors are chosen across replications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XNextMode {
    /// Fresh `N(1,1)` draws every replication.
    #[default]
    Redraw,
    /// One draw per cell, shared by all replications.
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub n: usize,
    pub t_len: usize,
    pub k: usize,
    pub reps: usize,
    pub alpha: f64,
    pub slope_design: SlopeDesign,
    pub error_design: ErrorDesign,
    pub fixed_effects: bool,
    pub sigma_spec: SigmaSpec,
    pub kernel: KernelSpec,
    pub seed: u64,
    pub x_next_mode: XNextMode,
    pub ci_mode: CiMode,
}

impl ScenarioConfig {
    /// Defaults: `K = 5`, 5000 replications, `alpha = 0.05`, iid errors,
    /// homogeneous unit slopes and the banded estimator with `b = T^{2/7}`.
    pub fn new(name: impl Into<String>, n: usize, t_len: usize) -> Self {
        Self {
            name: name.into(),
            n,
            t_len,
            k: 5,
            reps: 5000,
            alpha: 0.05,
            slope_design: SlopeDesign::Homogeneous { value: 1.0 },
            error_design: ErrorDesign::IidNormal,
            fixed_effects: false,
            sigma_spec: SigmaSpec::new(SigmaVariant::Banded {
                bandwidth: Bandwidth::Auto,
            }),
            kernel: KernelSpec::default(),
            seed: 0,
            x_next_mode: XNextMode::Redraw,
            ci_mode: CiMode::Symmetric,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPanel(m));
        if self.reps == 0 {
            return bad("reps must be >= 1".into());
        }
        if self.n == 0 || self.k == 0 {
            return bad("n and k must be >= 1".into());
        }
        if self.t_len <= self.k {
            return bad(format!("t_len ({}) must exceed k ({})", self.t_len, self.k));
        }
        if self.n >= 1 << 16 || self.t_len >= 1 << 16 || self.reps as u64 > u32::MAX as u64 {
            return bad("n, t_len must be < 65536 and reps < 2^32".into());
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha {} not in (0,1)", self.alpha));
        }
        if let Some(phi) = self.error_design.phi() {
            if !(phi > -1.0 && phi < 1.0) {
                return bad("phi out of (-1,1)".into());
            }
        }
        if let SlopeDesign::RandomNormal { sd, .. } = self.slope_design {
            if !(sd >= 0.0) {
                return bad("slope sd must be >= 0".into());
            }
        }
        if !(self.kernel.b_prime > 0.0) {
            return bad("b_prime must be > 0".into());
        }
        Ok(())
    }

    fn cell_id(&self) -> u64 {
        ((self.n as u64) << 16) | self.t_len as u64
    }

    /// Random stream for replication `rep`.
    pub fn stream(&self, rep: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((self.cell_id() << 32) | rep);
        rng
    }

    fn fixed_predictor_stream(&self) -> ChaCha8Rng {
        self.stream(u32::MAX as u64)
    }
}

fn std_normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// One stationary AR(1) path, or iid draws when `phi` is `None`.
fn error_path(rng: &mut ChaCha8Rng, t_len: usize, phi: Option<f64>, out: &mut Vec<f64>) {
    match phi {
        None => out.extend((0..t_len).map(|_| std_normal(rng))),
        Some(phi) => {
            let mut e = std_normal(rng) / (1.0 - phi * phi).sqrt();
            out.push(e);
            for _ in 1..t_len {
                e = phi * e + std_normal(rng);
                out.push(e);
            }
        }
    }
}

/// Draws one panel and the truth it was generated from.
///
/// Regressors are iid `N(1,1)`, and so are the forecast regressors unless
/// `x_next` is given. The panel is returned before any demeaning.
pub fn simulate_panel(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> (Panel, TrueModel) {
    simulate_panel_with(cfg, rng, None)
}

fn simulate_panel_with(
    cfg: &ScenarioConfig,
    rng: &mut ChaCha8Rng,
    x_next: Option<&[f64]>,
) -> (Panel, TrueModel) {
    let (n, t, k) = (cfg.n, cfg.t_len, cfg.k);
    let x: Vec<f64> = (0..n * t * k).map(|_| 1.0 + std_normal(rng)).collect();
    let xn: Vec<f64> = match x_next {
        Some(v) => v.to_vec(),
        None => (0..n * k).map(|_| 1.0 + std_normal(rng)).collect(),
    };
    let betas: Vec<f64> = match cfg.slope_design {
        SlopeDesign::Homogeneous { value } => vec![value; n * k],
        SlopeDesign::HalfSplit { lo, hi } => (0..n)
            .flat_map(|i| std::iter::repeat_n(if i < n / 2 { lo } else { hi }, k))
            .collect(),
        SlopeDesign::RandomNormal { mean, sd } => {
            (0..n * k).map(|_| mean + sd * std_normal(rng)).collect()
        }
    };
    let mut eps = Vec::with_capacity(n * t);
    for _ in 0..n {
        error_path(rng, t, cfg.error_design.phi(), &mut eps);
    }
    let hetero = cfg.error_design.is_hetero().then(|| {
        let within: Vec<f64> = (0..n)
            .flat_map(|i| (0..t).map(move |s| (i, s)))
            .map(|(i, s)| x[i * t * k + s].abs())
            .collect();
        let next = (0..n).map(|i| xn[i * k].abs()).collect();
        HeteroScales { within, next }
    });
    if let Some(h) = &hetero {
        for (e, w) in eps.iter_mut().zip(&h.within) {
            *e *= w;
        }
    }
    let mut y = vec![0.0; n * t];
    for i in 0..n {
        let block = &x[i * t * k..(i + 1) * t * k];
        let b = &betas[i * k..(i + 1) * k];
        let effect = if cfg.fixed_effects {
            // alpha_i ~ N(mean of the components of x_bar_i, 1).
            let centre = block.iter().sum::<f64>() / (t * k) as f64;
            centre + std_normal(rng)
        } else {
            0.0
        };
        for s in 0..t {
            let fit: f64 = (0..k).map(|c| block[c * t + s] * b[c]).sum();
            y[i * t + s] = fit + effect + eps[i * t + s];
        }
    }
    let panel = Panel::new(n, t, k, x, y, xn).expect("simulated panel is well formed");
    let truth = TrueModel {
        k,
        betas,
        sigma_n: CrossCovariance::Identity,
        sigma_t: cfg.error_design.time_covariance(),
        hetero,
    };
    (panel, truth)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct IntervalOutcome {
    pub covered: bool,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationRecord {
    /// `E^pool - E^ind` from the closed forms.
    pub truth_diff: f64,
    pub feasible: IntervalOutcome,
    pub infeasible: IntervalOutcome,
    /// The feasible variance was floored, or the oracle variance vanished.
    pub degenerate: bool,
    pub e_hat: f64,
    pub e1: f64,
    pub e1_hat: f64,
    pub tau_sq_oracle: f64,
    pub tau_sq_hat: f64,
}

impl ReplicationRecord {
    /// `sqrt(N) T ((E_hat - 2 E1_hat) - (E^pool - E^ind)) / tau_N`.
    pub fn standardized(&self, n: usize, t_len: usize) -> f64 {
        let scale = (n as f64).sqrt() * t_len as f64;
        scale * (self.e_hat - 2.0 * self.e1_hat - self.truth_diff) / self.tau_sq_oracle.sqrt()
    }
}

pub fn run_replication(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<ReplicationRecord> {
    replicate(cfg, rng, None)
}

fn replicate(
    cfg: &ScenarioConfig,
    rng: &mut ChaCha8Rng,
    x_next: Option<&[f64]>,
) -> Result<ReplicationRecord> {
    let (raw, truth) = simulate_panel_with(cfg, rng, x_next);
    // The forecast under fixed effects is of the demeaned response; the
    // true Sigma_T still applies because M_T X = X for demeaned regressors.
    let panel = if cfg.fixed_effects {
        within_demean(&raw)?
    } else {
        raw
    };
    let grams = PanelGrams::new(&panel)?;
    let decomposition = decompose_with(&panel, &grams, &truth);
    let slopes = grams.fit(&panel);
    let resids = residuals(&panel, &slopes)?;
    let opts = InferenceOptions {
        spec: cfg.sigma_spec.clone(),
        kernel: cfg.kernel,
        alpha: cfg.alpha,
        ci_mode: cfg.ci_mode,
        tau_policy: TauPolicy::Floor,
    };
    let truth_diff = decomposition.diff;
    let mut degenerate = false;
    let (feasible, e_hat, e1_hat, tau_sq_hat) =
        match run_inference_with(&panel, &grams, &slopes, &resids, &opts) {
            Ok(r) => {
                degenerate |= r.degenerate_variance;
                (
                    IntervalOutcome {
                        covered: r.lo <= truth_diff && truth_diff <= r.hi,
                        length: r.hi - r.lo,
                    },
                    r.e_hat,
                    r.e1_hat,
                    r.tau_sq,
                )
            }
            Err(Error::NonpositiveVariance { value })
            | Err(Error::DegenerateVariance { value }) => {
                degenerate = true;
                (IntervalOutcome::default(), f64::NAN, f64::NAN, value)
            }
            Err(e) => return Err(e),
        };
    let (infeasible, tau_sq_oracle) = match infeasible_interval(
        &panel,
        &grams,
        &slopes,
        &truth,
        decomposition.e1,
        cfg.alpha,
        cfg.ci_mode,
    ) {
        Ok(r) => (
            IntervalOutcome {
                covered: r.interval.contains(truth_diff),
                length: r.interval.length(),
            },
            r.tau_sq,
        ),
        Err(Error::DegenerateVariance { value }) | Err(Error::NonpositiveVariance { value }) => {
            degenerate = true;
            (IntervalOutcome::default(), value)
        }
        Err(e) => return Err(e),
    };
    Ok(ReplicationRecord {
        truth_diff,
        feasible,
        infeasible,
        degenerate,
        e_hat,
        e1: decomposition.e1,
        e1_hat,
        tau_sq_oracle,
        tau_sq_hat,
    })
}

/// All replications of one cell, in replication order.
pub fn run_cell_records(cfg: &ScenarioConfig) -> Result<Vec<ReplicationRecord>> {
    cfg.validate()?;
    let fixed = (cfg.x_next_mode == XNextMode::Fixed).then(|| {
        let mut rng = cfg.fixed_predictor_stream();
        (0..cfg.n * cfg.k)
            .map(|_| 1.0 + std_normal(&mut rng))
            .collect::<Vec<f64>>()
    });
    (0..cfg.reps as u64)
        .into_par_iter()
        .map(|rep| replicate(cfg, &mut cfg.stream(rep), fixed.as_deref()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub scenario: String,
    pub n: usize,
    pub t_len: usize,
    pub reps: usize,
    pub cov_feasible: f64,
    pub len_feasible: f64,
    pub cov_infeasible: f64,
    pub len_infeasible: f64,
    /// Binomial standard error of the feasible coverage.
    pub mc_se: f64,
    pub mc_se_infeasible: f64,
    /// Standard errors of the mean lengths.
    pub len_se_feasible: f64,
    pub len_se_infeasible: f64,
    pub degenerate: usize,
}

fn mean_and_se(v: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = v.clone().count() as f64;
    let m = v.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (m, 0.0);
    }
    let var = v.map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

pub fn binomial_se(p: f64, reps: usize) -> f64 {
    (p * (1.0 - p) / reps as f64).sqrt()
}

pub fn summarize(cfg: &ScenarioConfig, records: &[ReplicationRecord]) -> CellSummary {
    let reps = records.len();
    let rate = |f: fn(&ReplicationRecord) -> bool| {
        records.iter().filter(|r| f(r)).count() as f64 / reps as f64
    };
    let cov_feasible = rate(|r| r.feasible.covered);
    let cov_infeasible = rate(|r| r.infeasible.covered);
    let (len_feasible, len_se_feasible) = mean_and_se(records.iter().map(|r| r.feasible.length));
    let (len_infeasible, len_se_infeasible) =
        mean_and_se(records.iter().map(|r| r.infeasible.length));
    CellSummary {
        scenario: cfg.name.clone(),
        n: cfg.n,
        t_len: cfg.t_len,
        reps,
        cov_feasible,
        len_feasible,
        cov_infeasible,
        len_infeasible,
        mc_se: binomial_se(cov_feasible, reps),
        mc_se_infeasible: binomial_se(cov_infeasible, reps),
        len_se_feasible,
        len_se_infeasible,
        degenerate: records.iter().filter(|r| r.degenerate).count(),
    }
}

pub fn run_cell(cfg: &ScenarioConfig) -> Result<CellSummary> {
    Ok(summarize(cfg, &run_cell_records(cfg)?))
}

/// A base scenario crossed with a grid of `(N, T)` sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyGrid {
    pub base: ScenarioConfig,
    pub ns: Vec<usize>,
    pub ts: Vec<usize>,
}

impl StudyGrid {
    /// Cells in row order: `T` outer, `N` inner.
    pub fn cells(&self) -> Vec<ScenarioConfig> {
        self.ts
            .iter()
            .flat_map(|&t| {
                self.ns.iter().map(move |&n| ScenarioConfig {
                    n,
                    t_len: t,
                    ..self.base.clone()
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudySummary {
    pub scenario: String,
    pub ns: Vec<usize>,
    pub ts: Vec<usize>,
    pub cells: Vec<CellSummary>,
}

impl StudySummary {
    pub fn cell(&self, n: usize, t_len: usize) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.n == n && c.t_len == t_len)
    }
}

pub fn run_study(grid: &StudyGrid) -> Result<StudySummary> {
    let cells = grid
        .cells()
        .iter()
        .map(run_cell)
        .collect::<Result<Vec<_>>>()?;
    Ok(StudySummary {
        scenario: grid.base.name.clone(),
        ns: grid.ns.clone(),
        ts: grid.ts.clone(),
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFormat {
    Csv,
    Text,
}

pub const CSV_HEADER: &str =
    "scenario,N,T,cov_feasible,len_feasible,cov_infeasible,len_infeasible,mc_se,reps";

pub fn emit_table(summary: &StudySummary, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => emit_csv(summary),
        TableFormat::Text => emit_text(summary),
    }
}

fn emit_csv(summary: &StudySummary) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in &summary.cells {
        let _ = writeln!(
            out,
            "{},{},{},{:.4},{:.4},{:.4},{:.4},{:.4},{}",
            c.scenario,
            c.n,
            c.t_len,
            c.cov_feasible,
            c.len_feasible,
            c.cov_infeasible,
            c.len_infeasible,
            c.mc_se,
            c.reps
        );
    }
    out
}

/// One row per `T`, four statistics per `N` group.
fn emit_text(summary: &StudySummary) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>5}", "");
    for n in &summary.ns {
        let _ = write!(out, " | {:^35}", format!("N={n}"));
    }
    out.push('\n');
    let _ = write!(out, "{:>5}", "T");
    for _ in &summary.ns {
        let _ = write!(out, " | {:>8}{:>9}{:>9}{:>9}", "cov", "len", "cov*", "len*");
    }
    out.push('\n');
    for &t in &summary.ts {
        let _ = write!(out, "{t:>5}");
        for &n in &summary.ns {
            match summary.cell(n, t) {
                Some(c) => {
                    let _ = write!(
                        out,
                        " | {:>8.4}{:>9.4}{:>9.4}{:>9.4}",
                        c.cov_feasible, c.len_feasible, c.cov_infeasible, c.len_infeasible
                    );
                }
                None => {
                    let _ = write!(out, " | {:>35}", "-");
                }
            }
        }
        out.push('\n');
    }
    out
}
