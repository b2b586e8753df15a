//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use panel_msfe::covariance::{
    ar1_fit, banded_sigma, default_bandwidth, Bandwidth, SigmaSpec, SigmaVariant,
};
use panel_msfe::inference::{e1_hat, e_hat};
use panel_msfe::operator::{CrossCovariance, TimeCovariance};
use panel_msfe::oracle::{decompose_errors, individual_error, oracle_tau, pooled_error, TrueModel};
use panel_msfe::panel::{fit_slopes, residuals, Panel};
use panel_msfe::simulation::{
    run_replication, simulate_panel, ErrorDesign, ScenarioConfig, SlopeDesign,
};

pub type Check = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Stationary AR(1) path with unit innovations.
pub fn ar1_path(rng: &mut ChaCha8Rng, t: usize, phi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(t);
    let mut e = normal(rng) / (1.0 - phi * phi).sqrt();
    out.push(e);
    for _ in 1..t {
        e = phi * e + normal(rng);
        out.push(e);
    }
    out
}

pub fn design(p: &Panel, i: usize) -> DMatrix<f64> {
    DMatrix::from_column_slice(p.t_len(), p.k(), p.design(i))
}

pub fn mean_sd(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, var.sqrt())
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn fixed_panel(rng: &mut ChaCha8Rng, n: usize, t: usize, k: usize) -> Panel {
    let x = (0..n * t * k).map(|_| 1.0 + normal(rng)).collect();
    let xn = (0..n * k).map(|_| 1.0 + normal(rng)).collect();
    Panel::new(n, t, k, x, vec![0.0; n * t], xn).unwrap()
}

fn with_errors(p: &Panel, betas: &[f64], eps: &[f64]) -> Panel {
    let (n, t, k) = (p.n(), p.t_len(), p.k());
    let mut y = Vec::with_capacity(n * t);
    for i in 0..n {
        for s in 0..t {
            let fit: f64 = (0..k).map(|c| p.x_at(i, s, c) * betas[i * k + c]).sum();
            y.push(fit + eps[i * t + s]);
        }
    }
    Panel::new(
        n,
        t,
        k,
        p.regressors_flat().to_vec(),
        y,
        p.predictors_flat().to_vec(),
    )
    .unwrap()
}

/// Closed-form conditional MSFEs against a refit-per-draw Monte Carlo with
/// AR(1) errors and an independent forecast-period error.
pub fn msfe_monte_carlo(n: usize, t: usize, k: usize, phi: f64, draws: usize, seed: u64) -> Check {
    let mut g = rng(seed);
    let p = fixed_panel(&mut g, n, t, k);
    let betas: Vec<f64> = (0..n * k).map(|_| 1.0 + 0.5 * normal(&mut g)).collect();
    let truth = TrueModel::new(
        k,
        betas.clone(),
        CrossCovariance::Identity,
        TimeCovariance::Ar1 { phi },
    );

    let xs: Vec<DMatrix<f64>> = (0..n).map(|i| design(&p, i)).collect();
    let ginv: Vec<DMatrix<f64>> = xs
        .iter()
        .map(|x| (x.transpose() * x).try_inverse().unwrap())
        .collect();
    let pinv = xs
        .iter()
        .fold(DMatrix::zeros(k, k), |acc, x| acc + x.transpose() * x)
        .try_inverse()
        .unwrap();
    let xnext: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_column_slice(p.predictor(i)))
        .collect();
    let beta: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_column_slice(&betas[i * k..(i + 1) * k]))
        .collect();
    let sd_next = (1.0 / (1.0 - phi * phi)).sqrt();

    let mut ind = vec![Vec::with_capacity(draws); n];
    let mut pool = vec![Vec::with_capacity(draws); n];
    for _ in 0..draws {
        let ys: Vec<DVector<f64>> = (0..n)
            .map(|i| &xs[i] * &beta[i] + DVector::from_vec(ar1_path(&mut g, t, phi)))
            .collect();
        let mut xty = DVector::zeros(k);
        let mut b_ind = Vec::with_capacity(n);
        for i in 0..n {
            let v = xs[i].transpose() * &ys[i];
            b_ind.push(&ginv[i] * &v);
            xty += v;
        }
        let b_pool = &pinv * xty;
        for i in 0..n {
            let y_next = xnext[i].dot(&beta[i]) + sd_next * normal(&mut g);
            ind[i].push((xnext[i].dot(&b_ind[i]) - y_next).powi(2));
            pool[i].push((xnext[i].dot(&b_pool) - y_next).powi(2));
        }
    }

    let mut worst: f64 = 0.0;
    for i in 0..n {
        for (label, sample, exact) in [
            ("ind", &ind[i], individual_error(&p, &truth, i).unwrap()),
            ("pool", &pool[i], pooled_error(&p, &truth, i).unwrap()),
        ] {
            let (m, sd) = mean_sd(sample);
            let z = (m - exact) / (sd / (draws as f64).sqrt());
            worst = worst.max(z.abs());
            if z.abs() > 3.0 {
                return Err(format!("{label} error of individual {i}: closed form {exact:.6}, Monte Carlo {m:.6}, z = {z:.2}"));
            }
        }
    }
    Ok(format!("largest |z| = {worst:.2} over {n} individuals"))
}

/// Conditional variance of `sqrt(N) T E_hat` over fresh errors, against the
/// oracle variance.
pub fn variance_oracle(n: usize, t: usize, reps: usize, seed: u64) -> Check {
    let k = 5;
    let phi = 0.3;
    let mut g = rng(seed);
    let p = fixed_panel(&mut g, n, t, k);
    // Moderate heterogeneity: gaps of order 1/sqrt(T).
    let gap = 1.0 / (t as f64).sqrt();
    let betas: Vec<f64> = (0..n)
        .flat_map(|i| std::iter::repeat_n(if i < n / 2 { 1.0 } else { 1.0 + gap }, k))
        .collect();
    let truth = TrueModel::new(
        k,
        betas.clone(),
        CrossCovariance::Identity,
        TimeCovariance::Ar1 { phi },
    );
    let tau_sq = oracle_tau(&p, &truth).unwrap();
    let scale = (n as f64).sqrt() * t as f64;
    let stats: Vec<f64> = (0..reps)
        .map(|_| {
            let eps: Vec<f64> = (0..n).flat_map(|_| ar1_path(&mut g, t, phi)).collect();
            let q = with_errors(&p, &betas, &eps);
            scale * e_hat(&q, &fit_slopes(&q).unwrap()).unwrap()
        })
        .collect();
    let (_, sd) = mean_sd(&stats);
    let ratio = sd * sd / tau_sq;
    if (ratio - 1.0).abs() <= 0.15 {
        Ok(format!("empirical variance / tau^2 = {ratio:.3}"))
    } else {
        Err(format!(
            "empirical variance / tau^2 = {ratio:.3}, outside 1 +- 0.15"
        ))
    }
}

/// Banded estimate on standardized white noise.
pub fn banded_white_noise(reps: usize, seed: u64) -> Check {
    let (t, k, b) = (100usize, 2usize, 4usize);
    let mut g = rng(seed);
    let mut lag1 = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mut r: Vec<f64> = (0..t).map(|_| normal(&mut g)).collect();
        let ms = (r.iter().map(|v| v * v).sum::<f64>() / t as f64).sqrt();
        r.iter_mut().for_each(|v| *v /= ms);
        let m = banded_sigma(&r, &r, b, k).unwrap().matrix();
        let want = t as f64 / (t - k) as f64;
        for s in 0..t {
            if (m[(s, s)] - want).abs() > 1e-12 {
                return Err(format!("diagonal {} != T/(T-K) = {want}", m[(s, s)]));
            }
        }
        lag1.push(m[(0, 1)] * (t as f64).sqrt());
    }
    let (mean, sd) = mean_sd(&lag1);
    let se = sd / (reps as f64).sqrt();
    if mean.abs() <= 3.0 * se && (sd - 1.0).abs() < 0.15 {
        Ok(format!("sqrt(T) * lag-1 entry: mean {mean:.4}, sd {sd:.3}"))
    } else {
        Err(format!(
            "sqrt(T) * lag-1 entry: mean {mean:.4} (se {se:.4}), sd {sd:.3}"
        ))
    }
}

/// Full-width banded estimate on AR(1) paths against the Toeplitz truth.
pub fn banded_tracks_ar1(paths: usize, seed: u64) -> Check {
    let (t, k, phi) = (400usize, 1usize, 0.5);
    let mut g = rng(seed);
    let lags = 6;
    let mut acc = vec![0.0; lags];
    for _ in 0..paths {
        let r = ar1_path(&mut g, t, phi);
        let m = banded_sigma(&r, &r, t - k, k).unwrap().matrix();
        for (h, a) in acc.iter_mut().enumerate() {
            *a += m[(0, h)] / paths as f64;
        }
    }
    for (h, a) in acc.iter().enumerate() {
        let truth = phi.powi(h as i32) / (1.0 - phi * phi);
        if (a - truth).abs() > 0.05 {
            return Err(format!("lag {h}: mean estimate {a:.4}, truth {truth:.4}"));
        }
    }
    Ok(format!(
        "lags 0..{} within 0.05 of the Toeplitz truth",
        lags - 1
    ))
}

/// Mean of the bias-corrected AR(1) coefficient on regression residuals.
pub fn corrected_phi_mean(reps: usize, seed: u64) -> Check {
    let (t, k, phi) = (200usize, 2usize, 0.5);
    let mut g = rng(seed);
    let (mut raw, mut bc) = (0.0, 0.0);
    for _ in 0..reps {
        let x: Vec<f64> = (0..t * k).map(|_| 1.0 + normal(&mut g)).collect();
        let eps = ar1_path(&mut g, t, phi);
        let p = Panel::new(1, t, k, x, eps, vec![1.0; k]).unwrap();
        let r = residuals(&p, &fit_slopes(&p).unwrap()).unwrap();
        let fit = ar1_fit(r.row(0), k).unwrap();
        raw += fit.phi_raw / reps as f64;
        bc += fit.phi_bc / reps as f64;
    }
    if (bc - phi).abs() <= 0.02 && (bc - phi).abs() < (raw - phi).abs() {
        Ok(format!("mean corrected {bc:.4}, mean raw {raw:.4}"))
    } else {
        Err(format!(
            "mean corrected {bc:.4}, mean raw {raw:.4}, target {phi}"
        ))
    }
}

/// RMS entry error of the banded estimate on true AR(1) errors, against the
/// banded truth, for T in {50, 200, 800}.
pub fn banded_converges(reps: usize, seed: u64) -> Check {
    let (k, phi) = (1usize, 0.5);
    let mut g = rng(seed);
    let mut medians = Vec::new();
    for t in [50usize, 200, 800] {
        let b = default_bandwidth(t);
        let errs: Vec<f64> = (0..reps)
            .map(|_| {
                let r = ar1_path(&mut g, t, phi);
                let m = banded_sigma(&r, &r, b, k).unwrap().matrix();
                let mut ss = 0.0;
                for s in 0..t {
                    for u in 0..t {
                        let h = s.abs_diff(u);
                        let truth = if h < b {
                            phi.powi(h as i32) / (1.0 - phi * phi)
                        } else {
                            0.0
                        };
                        ss += (m[(s, u)] - truth).powi(2);
                    }
                }
                ss.sqrt() / t as f64
            })
            .collect();
        medians.push(median(errs));
    }
    if medians.windows(2).all(|w| w[1] < w[0]) {
        Ok(format!("median scaled Frobenius error {medians:.4?}"))
    } else {
        Err(format!(
            "median scaled Frobenius error not decreasing: {medians:.4?}"
        ))
    }
}

/// Simulated iid panels with known truth, for the rate checks.
fn rate_medians(
    grid: &[(usize, usize)],
    reps: usize,
    seed: u64,
    stat: impl Fn(&Panel, &TrueModel) -> f64,
) -> Vec<f64> {
    grid.iter()
        .map(|&(n, t)| {
            let mut cfg = ScenarioConfig::new("rate", n, t);
            cfg.seed = seed;
            cfg.slope_design = SlopeDesign::HalfSplit {
                lo: 1.0,
                hi: 1.0 + 1.0 / (t as f64).sqrt(),
            };
            let v = (0..reps as u64)
                .map(|rep| {
                    let (p, truth) = simulate_panel(&cfg, &mut cfg.stream(rep));
                    stat(&p, &truth) * (n as f64).sqrt() * t as f64
                })
                .collect();
            median(v)
        })
        .collect()
}

pub const RATE_GRID: [(usize, usize); 3] = [(50, 25), (100, 50), (200, 100)];

/// `|E_hat - (E1 + E2)| T sqrt(N)` stays bounded as (N, T) doubles.
pub fn e_hat_consistency(reps: usize, seed: u64) -> Check {
    let med = rate_medians(&RATE_GRID, reps, seed, |p, truth| {
        let d = decompose_errors(p, truth).unwrap();
        (e_hat(p, &fit_slopes(p).unwrap()).unwrap() - (d.e1 + d.e2)).abs()
    });
    bounded(&med)
}

/// `|E1_hat - E1| T sqrt(N)` with `b = 1` stays bounded as (N, T) doubles.
pub fn e1_hat_rate(reps: usize, seed: u64) -> Check {
    let med = rate_medians(&RATE_GRID, reps, seed, |p, truth| {
        let d = decompose_errors(p, truth).unwrap();
        let r = residuals(p, &fit_slopes(p).unwrap()).unwrap();
        (e1_hat(p, &r, &SigmaSpec::banded(1)).unwrap().value - d.e1).abs()
    });
    bounded(&med)
}

/// `|E1_hat - E1| T sqrt(N)` with `b = T^{2/7}` on AR(1) errors.
pub fn e1_hat_rate_ar1(reps: usize, seed: u64) -> Check {
    let med: Vec<f64> = RATE_GRID
        .iter()
        .map(|&(n, t)| {
            let mut cfg = ScenarioConfig::new("rate", n, t);
            cfg.seed = seed;
            cfg.error_design = ErrorDesign::Ar1 { phi: 0.3 };
            let spec = SigmaSpec::new(SigmaVariant::Banded {
                bandwidth: Bandwidth::Auto,
            });
            let v = (0..reps as u64)
                .map(|rep| {
                    let (p, truth) = simulate_panel(&cfg, &mut cfg.stream(rep));
                    let d = decompose_errors(&p, &truth).unwrap();
                    let r = residuals(&p, &fit_slopes(&p).unwrap()).unwrap();
                    let e1 = e1_hat(&p, &r, &spec).unwrap().value;
                    (e1 - d.e1).abs() * (n as f64).sqrt() * t as f64
                })
                .collect();
            median(v)
        })
        .collect();
    bounded(&med)
}

fn bounded(med: &[f64]) -> Check {
    let first = med[0];
    if med.iter().all(|m| m.is_finite() && *m <= 2.0 * first) {
        Ok(format!("scaled medians {med:.4?}"))
    } else {
        Err(format!("scaled medians grow: {med:.4?}"))
    }
}

/// Log-log slopes of E1 against T and of E3 against N T.
pub fn error_rates(seed: u64) -> Check {
    let slope = |pts: &[(f64, f64)]| {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    let n = 100;
    let mut e1 = Vec::new();
    let mut e3 = Vec::new();
    for t in [20usize, 40, 80] {
        let mut cfg = ScenarioConfig::new("rate", n, t);
        cfg.seed = seed;
        // Two regressors keep the inverse-Wishart factor T / (T - K - 1)
        // close to one on this grid.
        cfg.k = 2;
        cfg.error_design = ErrorDesign::Ar1 { phi: 0.3 };
        // Average over a few designs to damp the dependence on one draw.
        let (mut a, mut b) = (0.0, 0.0);
        for rep in 0..20u64 {
            let (p, truth) = simulate_panel(&cfg, &mut cfg.stream(rep));
            let d = decompose_errors(&p, &truth).unwrap();
            a += d.e1 / 20.0;
            b += d.e3 / 20.0;
        }
        e1.push(((t as f64).ln(), a.ln()));
        e3.push((((n * t) as f64).ln(), b.ln()));
    }
    let (s1, s3) = (slope(&e1), slope(&e3));
    if (s1 + 1.0).abs() <= 0.15 && (s3 + 1.0).abs() <= 0.15 {
        Ok(format!(
            "slope of log E1 on log T {s1:.3}; of log E3 on log NT {s3:.3}"
        ))
    } else {
        Err(format!(
            "slope of log E1 on log T {s1:.3}; of log E3 on log NT {s3:.3}"
        ))
    }
}

fn rel_ok(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// One replication at N=4, T=10 recomputed from the displayed formulas with
/// explicit inverses.
pub fn scripted_replication(seed: u64) -> Check {
    let (n, t, k, b) = (4usize, 10usize, 5usize, 2usize);
    let phi = 0.3;
    let mut cfg = ScenarioConfig::new("scripted", n, t);
    cfg.seed = seed;
    cfg.slope_design = SlopeDesign::HalfSplit { lo: 1.0, hi: 2.0 };
    cfg.error_design = ErrorDesign::Ar1 { phi };
    cfg.sigma_spec = SigmaSpec::banded(b);
    let (p, truth) = simulate_panel(&cfg, &mut cfg.stream(0));
    let rec = run_replication(&cfg, &mut cfg.stream(0)).map_err(|e| e.to_string())?;

    let nf = n as f64;
    let tf = t as f64;
    let xs: Vec<DMatrix<f64>> = (0..n).map(|i| design(&p, i)).collect();
    let ys: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_column_slice(p.response(i)))
        .collect();
    let xn: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_column_slice(p.predictor(i)))
        .collect();
    let beta: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_column_slice(truth.beta(i)))
        .collect();
    let gs: Vec<DMatrix<f64>> = xs.iter().map(|x| x.transpose() * x).collect();
    let ginv: Vec<DMatrix<f64>> = gs
        .iter()
        .map(|g| g.clone().try_inverse().unwrap())
        .collect();
    let psum = gs.iter().fold(DMatrix::zeros(k, k), |a, g| a + g);
    let pinv = psum.clone().try_inverse().unwrap();
    let bhat: Vec<DVector<f64>> = (0..n)
        .map(|i| &ginv[i] * xs[i].transpose() * &ys[i])
        .collect();

    // Sigma_T of the AR(1) errors.
    let sigma_t = DMatrix::from_fn(t, t, |s, u| {
        phi.powi(s.abs_diff(u) as i32) / (1.0 - phi * phi)
    });

    // Truth.
    let e1: f64 = (0..n)
        .map(|i| {
            let a = &xs[i] * &ginv[i] * &xn[i];
            (a.transpose() * &sigma_t * &a)[(0, 0)]
        })
        .sum::<f64>()
        / nf;
    let gap = |i: usize, bs: &[DVector<f64>]| -> DVector<f64> {
        let mut s = DVector::zeros(k);
        for j in 0..n {
            s += &gs[j] * (&bs[j] - &bs[i]);
        }
        &pinv * s
    };
    let e2: f64 = (0..n)
        .map(|i| xn[i].dot(&gap(i, &beta)).powi(2))
        .sum::<f64>()
        / nf;
    let xx = xn
        .iter()
        .fold(DMatrix::zeros(k, k), |a, x| a + x * x.transpose())
        / nf;
    let s = xs.iter().fold(DMatrix::zeros(k, k), |a, x| {
        a + x.transpose() * &sigma_t * x
    });
    let e3 = (&pinv * &xx * &pinv * &s).trace();
    let truth_diff = e2 + e3 - e1;

    // Estimates.
    let e_hat: f64 = (0..n)
        .map(|i| xn[i].dot(&gap(i, &bhat)).powi(2))
        .sum::<f64>()
        / nf;
    let sigma_hat: Vec<DMatrix<f64>> = (0..n)
        .map(|i| {
            let r = &ys[i] - &xs[i] * &bhat[i];
            let xi =
                |h: usize| (0..t - h).map(|u| r[u] * r[u + h]).sum::<f64>() / (t - h - k) as f64;
            DMatrix::from_fn(t, t, |s, u| {
                let h = s.abs_diff(u);
                if h < b {
                    xi(h)
                } else {
                    0.0
                }
            })
        })
        .collect();
    let e1_hat: f64 = (0..n)
        .map(|i| {
            let a = &xs[i] * &ginv[i] * &xn[i];
            (&sigma_hat[i] * &a * a.transpose()).trace()
        })
        .sum::<f64>()
        / nf;

    // Variance terms, with the sign inside the second summand as derived
    // from the expansion of E_hat.
    let pbar_inv = (&psum / (nf * tf)).try_inverse().unwrap();
    let lambdas = |bs: &[DVector<f64>]| {
        let inner = |i: usize| {
            let mut s = DVector::zeros(k);
            for j in 0..n {
                s += &gs[j] * (&bs[j] - &bs[i]);
            }
            &pbar_inv * s / (nf * tf.sqrt())
        };
        let mut lam = DVector::zeros(k);
        for i in 0..n {
            lam += &xn[i] * xn[i].transpose() / nf * inner(i);
        }
        let lam = &pbar_inv * lam;
        let lam_i: Vec<DVector<f64>> = (0..n)
            .map(|i| (&gs[i] / tf).try_inverse().unwrap() * &xn[i] * xn[i].transpose() * inner(i))
            .collect();
        (lam, lam_i)
    };
    let tau = |lam: &DVector<f64>, lam_i: &[DVector<f64>], sig: &dyn Fn(usize) -> DMatrix<f64>| {
        (0..n)
            .map(|i| {
                let gi = (&gs[i] / tf).try_inverse().unwrap();
                let m = xs[i].transpose() * sig(i) * &xs[i] / tf;
                let first = (xn[i].transpose() * &gi * &m * &gi * &xn[i])[(0, 0)];
                let d = lam - &lam_i[i];
                2.0 * first * first + 4.0 * (d.transpose() * &m * &d)[(0, 0)]
            })
            .sum::<f64>()
            / nf
    };
    let (lam, lam_i) = lambdas(&beta);
    let tau_oracle = tau(&lam, &lam_i, &|_| sigma_t.clone());
    let (lam_h, lam_ih) = lambdas(&bhat);
    let tau_hat = tau(&lam_h, &lam_ih, &|i| sigma_hat[i].clone());

    let z = 1.959963984540054;
    let scale = nf.sqrt() * tf;
    let len_feasible = 2.0 * z * tau_hat.sqrt() / scale;
    let len_infeasible = 2.0 * z * tau_oracle.sqrt() / scale;

    let checks = [
        ("truth_diff", rec.truth_diff, truth_diff),
        ("e_hat", rec.e_hat, e_hat),
        ("e1", rec.e1, e1),
        ("e1_hat", rec.e1_hat, e1_hat),
        ("tau_sq_oracle", rec.tau_sq_oracle, tau_oracle),
        ("tau_sq_hat", rec.tau_sq_hat, tau_hat),
        ("len_feasible", rec.feasible.length, len_feasible),
        ("len_infeasible", rec.infeasible.length, len_infeasible),
    ];
    for (name, got, want) in checks {
        if !rel_ok(got, want, 1e-8) {
            return Err(format!("{name}: pipeline {got:.12e}, scripted {want:.12e}"));
        }
    }
    if rec.degenerate {
        return Err("replication unexpectedly flagged degenerate".into());
    }
    let point = e_hat - 2.0 * e1_hat;
    let covered = (point - truth_diff).abs() <= z * tau_hat.sqrt() / scale;
    if covered != rec.feasible.covered {
        return Err("coverage flag differs".into());
    }
    Ok(format!(
        "8 fields agree to 1e-8 (tau_hat {tau_hat:.4}, tau {tau_oracle:.4})"
    ))
}
