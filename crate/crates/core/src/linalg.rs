//! Small dense helpers shared by the estimators.
//!
//! Regressor blocks are stored column-major (`T` rows, `K` columns), so column
//! `c` of block `x` is `x[c * t_len..(c + 1) * t_len]`.

use nalgebra::{DMatrix, DVector, FullPivLU};

use crate::error::{Error, GramId, Result};

/// Reciprocal-condition threshold below which a Gram matrix counts as singular.
pub const RCOND_TOL: f64 = 1e-12;

/// Pivoted LU factorisation of a symmetric `K x K` Gram matrix.
#[derive(Debug, Clone)]
pub struct GramFactor {
    lu: FullPivLU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    rcond: f64,
}

impl GramFactor {
    pub fn new(gram: DMatrix<f64>, which: GramId) -> Result<Self> {
        let k = gram.nrows();
        let norm1 = one_norm(&gram);
        let lu = gram.full_piv_lu();
        if norm1 == 0.0 || !norm1.is_finite() {
            return Err(Error::SingularGram { which, rcond: 0.0 });
        }
        // 1-norm condition estimate from the exact inverse; K is tiny.
        let mut inv_norm1 = 0.0f64;
        let mut e = DVector::zeros(k);
        for c in 0..k {
            e.fill(0.0);
            e[c] = 1.0;
            let col = lu
                .solve(&e)
                .ok_or(Error::SingularGram { which, rcond: 0.0 })?;
            let s: f64 = col.iter().map(|v| v.abs()).sum();
            inv_norm1 = inv_norm1.max(s);
        }
        let rcond = 1.0 / (norm1 * inv_norm1);
        if !(rcond >= RCOND_TOL) {
            return Err(Error::SingularGram { which, rcond });
        }
        Ok(Self { lu, rcond })
    }

    pub fn rcond(&self) -> f64 {
        self.rcond
    }

    pub fn dim(&self) -> usize {
        self.lu.lu_internal().nrows()
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let b = DVector::from_column_slice(rhs);
        // Factor passed the condition check, so the solve cannot fail.
        self.lu
            .solve(&b)
            .expect("factor already checked for singularity")
            .as_slice()
            .to_vec()
    }

    /// Solves for every column of `rhs` (a `K x m` matrix).
    pub fn solve_matrix(&self, rhs: &DMatrix<f64>) -> DMatrix<f64> {
        self.lu
            .solve(rhs)
            .expect("factor already checked for singularity")
    }
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `X'X` for a column-major `T x K` block.
pub fn gram(x: &[f64], t_len: usize, k: usize) -> DMatrix<f64> {
    let mut g = DMatrix::zeros(k, k);
    for a in 0..k {
        let ca = &x[a * t_len..(a + 1) * t_len];
        for b in a..k {
            let cb = &x[b * t_len..(b + 1) * t_len];
            let v = dot(ca, cb);
            g[(a, b)] = v;
            g[(b, a)] = v;
        }
    }
    g
}

/// `X'v` for a column-major `T x K` block.
pub fn xt_vec(x: &[f64], t_len: usize, k: usize, v: &[f64]) -> Vec<f64> {
    (0..k)
        .map(|c| dot(&x[c * t_len..(c + 1) * t_len], v))
        .collect()
}

/// `X b` for a column-major `T x K` block.
pub fn x_vec(x: &[f64], t_len: usize, k: usize, b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; t_len];
    for c in 0..k {
        let coef = b[c];
        if coef == 0.0 {
            continue;
        }
        for (o, xv) in out.iter_mut().zip(&x[c * t_len..(c + 1) * t_len]) {
            *o += coef * xv;
        }
    }
    out
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a' M b` for a small dense matrix.
pub fn quad(a: &[f64], m: &DMatrix<f64>, b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (c, bc) in b.iter().enumerate() {
        let mut col = 0.0;
        for (r, ar) in a.iter().enumerate() {
            col += ar * m[(r, c)];
        }
        acc += col * bc;
    }
    acc
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}
