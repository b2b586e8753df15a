//! Balanced panel data and the individual / pooled OLS slope estimators.

use nalgebra::DMatrix;

use crate::error::{Error, GramId, Result};
use crate::linalg::{gram, x_vec, xt_vec, GramFactor};

/// A balanced panel with `n` individuals observed over `t_len` periods on `k`
/// regressors, plus the prediction regressors `x_{i,T+1}`.
///
/// Storage is individual-major. The regressor block of individual `i` is a
/// column-major `t_len x k` matrix starting at `i * t_len * k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    n: usize,
    t_len: usize,
    k: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    x_next: Vec<f64>,
    demeaned: bool,
}

impl Panel {
    /// Builds a panel from flat buffers in the documented layout.
    pub fn new(
        n: usize,
        t_len: usize,
        k: usize,
        x: Vec<f64>,
        y: Vec<f64>,
        x_next: Vec<f64>,
    ) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidPanel("panel needs n >= 1 and k >= 1".into()));
        }
        if t_len <= k {
            return Err(Error::InvalidPanel(format!(
                "T={t_len} must exceed K={k} for individual OLS"
            )));
        }
        if x.len() != n * t_len * k || y.len() != n * t_len || x_next.len() != n * k {
            return Err(Error::ShapeMismatch(format!(
                "expected x {}, y {}, x_next {}; got {}, {}, {}",
                n * t_len * k,
                n * t_len,
                n * k,
                x.len(),
                y.len(),
                x_next.len()
            )));
        }
        if x.iter().chain(&y).chain(&x_next).any(|v| !v.is_finite()) {
            return Err(Error::InvalidPanel("non-finite entry".into()));
        }
        Ok(Self {
            n,
            t_len,
            k,
            x,
            y,
            x_next,
            demeaned: false,
        })
    }

    /// Builds a panel from nested rows: `x[i][t][c]`, `y[i][t]`, `x_next[i][c]`.
    pub fn from_nested(x: &[Vec<Vec<f64>>], y: &[Vec<f64>], x_next: &[Vec<f64>]) -> Result<Self> {
        let n = x.len();
        let t_len = x.first().map_or(0, Vec::len);
        let k = x.first().and_then(|xi| xi.first()).map_or(0, Vec::len);
        if y.len() != n || x_next.len() != n {
            return Err(Error::ShapeMismatch("x, y and x_next disagree on N".into()));
        }
        let mut flat = Vec::with_capacity(n * t_len * k);
        for xi in x {
            if xi.len() != t_len || xi.iter().any(|row| row.len() != k) {
                return Err(Error::ShapeMismatch("ragged regressor array".into()));
            }
            for c in 0..k {
                flat.extend(xi.iter().map(|row| row[c]));
            }
        }
        if y.iter().any(|yi| yi.len() != t_len) || x_next.iter().any(|r| r.len() != k) {
            return Err(Error::ShapeMismatch("ragged response or predictor".into()));
        }
        Self::new(n, t_len, k, flat, y.concat(), x_next.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_len(&self) -> usize {
        self.t_len
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_demeaned(&self) -> bool {
        self.demeaned
    }

    /// Column-major `T x K` regressor block of individual `i`.
    pub fn design(&self, i: usize) -> &[f64] {
        let len = self.t_len * self.k;
        &self.x[i * len..(i + 1) * len]
    }

    pub fn response(&self, i: usize) -> &[f64] {
        &self.y[i * self.t_len..(i + 1) * self.t_len]
    }

    /// Prediction regressor `x_{i,T+1}`.
    pub fn predictor(&self, i: usize) -> &[f64] {
        &self.x_next[i * self.k..(i + 1) * self.k]
    }

    /// Regressor `c` of individual `i` at period `t` (0-based).
    pub fn x_at(&self, i: usize, t: usize, c: usize) -> f64 {
        self.design(i)[c * self.t_len + t]
    }

    /// Replaces the prediction regressors, keeping everything else.
    pub fn with_predictors(mut self, x_next: Vec<f64>) -> Result<Self> {
        if x_next.len() != self.n * self.k {
            return Err(Error::ShapeMismatch(format!(
                "x_next needs {} entries, got {}",
                self.n * self.k,
                x_next.len()
            )));
        }
        if x_next.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPanel("non-finite predictor".into()));
        }
        self.x_next = x_next;
        Ok(self)
    }

    pub fn regressors_flat(&self) -> &[f64] {
        &self.x
    }

    pub fn responses_flat(&self) -> &[f64] {
        &self.y
    }

    pub fn predictors_flat(&self) -> &[f64] {
        &self.x_next
    }
}

/// Individual slopes `beta_i` (row-major `N x K`) and the pooled slope.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeEstimates {
    pub k: usize,
    pub individual: Vec<f64>,
    pub pooled: Vec<f64>,
}

impl SlopeEstimates {
    pub fn individual(&self, i: usize) -> &[f64] {
        &self.individual[i * self.k..(i + 1) * self.k]
    }

    pub fn n(&self) -> usize {
        self.individual.len() / self.k
    }
}

/// OLS residuals `y_i - X_i beta_i`, row-major `N x T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSet {
    pub t_len: usize,
    pub residuals: Vec<f64>,
}

impl ResidualSet {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.residuals[i * self.t_len..(i + 1) * self.t_len]
    }
}

/// Factored Gram matrices of a panel, reused across the estimators.
#[derive(Debug, Clone)]
pub struct PanelGrams {
    pub individual: Vec<DMatrix<f64>>,
    pub factors: Vec<GramFactor>,
    pub pooled: DMatrix<f64>,
    pub pooled_factor: GramFactor,
}

impl PanelGrams {
    pub fn new(panel: &Panel) -> Result<Self> {
        let (t, k) = (panel.t_len, panel.k);
        let mut individual = Vec::with_capacity(panel.n);
        let mut factors = Vec::with_capacity(panel.n);
        let mut pooled = DMatrix::zeros(k, k);
        for i in 0..panel.n {
            let g = gram(panel.design(i), t, k);
            pooled += &g;
            factors.push(GramFactor::new(g.clone(), GramId::Individual(i))?);
            individual.push(g);
        }
        let pooled_factor = GramFactor::new(pooled.clone(), GramId::Pooled)?;
        Ok(Self {
            individual,
            factors,
            pooled,
            pooled_factor,
        })
    }

    /// Individual and pooled OLS slopes.
    pub fn fit(&self, panel: &Panel) -> SlopeEstimates {
        let (t, k) = (panel.t_len, panel.k);
        let mut individual = Vec::with_capacity(panel.n * k);
        let mut pooled_rhs = vec![0.0; k];
        for i in 0..panel.n {
            let xty = xt_vec(panel.design(i), t, k, panel.response(i));
            for (p, v) in pooled_rhs.iter_mut().zip(&xty) {
                *p += v;
            }
            individual.extend(self.factors[i].solve(&xty));
        }
        SlopeEstimates {
            k,
            individual,
            pooled: self.pooled_factor.solve(&pooled_rhs),
        }
    }
}

/// `beta_i = (X_i'X_i)^{-1} X_i'y_i` for every individual, row-major `N x K`.
pub fn fit_individual_ols(panel: &Panel) -> Result<Vec<f64>> {
    let (t, k) = (panel.t_len, panel.k);
    let mut out = Vec::with_capacity(panel.n * k);
    for i in 0..panel.n {
        let x = panel.design(i);
        let f = GramFactor::new(gram(x, t, k), GramId::Individual(i))?;
        out.extend(f.solve(&xt_vec(x, t, k, panel.response(i))));
    }
    Ok(out)
}

/// `(sum_j X_j'X_j)^{-1} sum_j X_j'y_j`.
pub fn fit_pooled_ols(panel: &Panel) -> Result<Vec<f64>> {
    let (t, k) = (panel.t_len, panel.k);
    let mut g = DMatrix::zeros(k, k);
    let mut rhs = vec![0.0; k];
    for i in 0..panel.n {
        let x = panel.design(i);
        g += gram(x, t, k);
        for (r, v) in rhs.iter_mut().zip(xt_vec(x, t, k, panel.response(i))) {
            *r += v;
        }
    }
    Ok(GramFactor::new(g, GramId::Pooled)?.solve(&rhs))
}

pub fn fit_slopes(panel: &Panel) -> Result<SlopeEstimates> {
    Ok(PanelGrams::new(panel)?.fit(panel))
}

pub fn residuals(panel: &Panel, slopes: &SlopeEstimates) -> Result<ResidualSet> {
    if slopes.k != panel.k || slopes.n() != panel.n {
        return Err(Error::ShapeMismatch(format!(
            "slopes are {}x{}, panel is {}x{}",
            slopes.n(),
            slopes.k,
            panel.n,
            panel.k
        )));
    }
    let t = panel.t_len;
    let mut out = Vec::with_capacity(panel.n * t);
    for i in 0..panel.n {
        let fitted = x_vec(panel.design(i), t, panel.k, slopes.individual(i));
        out.extend(panel.response(i).iter().zip(&fitted).map(|(y, f)| y - f));
    }
    Ok(ResidualSet {
        t_len: t,
        residuals: out,
    })
}

/// Within transformation: subtracts each individual's time mean from its
/// regressors and responses. The prediction regressors stay in levels, so
/// the forecast is `x_{i,T+1}' beta` with slopes from the within fit.
pub fn within_demean(panel: &Panel) -> Result<Panel> {
    if panel.demeaned {
        return Err(Error::AlreadyDemeaned);
    }
    let (t, k) = (panel.t_len, panel.k);
    let mut out = panel.clone();
    for i in 0..panel.n {
        let base = i * t * k;
        for c in 0..k {
            let col = &mut out.x[base + c * t..base + (c + 1) * t];
            let mean = col.iter().sum::<f64>() / t as f64;
            col.iter_mut().for_each(|v| *v -= mean);
        }
        let yi = &mut out.y[i * t..(i + 1) * t];
        let mean = yi.iter().sum::<f64>() / t as f64;
        yi.iter_mut().for_each(|v| *v -= mean);
    }
    out.demeaned = true;
    Ok(out)
}
