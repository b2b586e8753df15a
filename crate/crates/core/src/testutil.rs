use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::panel::Panel;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normals(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Regressors and predictors iid N(1,1), responses iid N(0,1).
pub fn random_panel(rng: &mut ChaCha8Rng, n: usize, t: usize, k: usize) -> Panel {
    let x = normals(rng, n * t * k)
        .into_iter()
        .map(|v| v + 1.0)
        .collect();
    let y = normals(rng, n * t);
    let xn = normals(rng, n * k).into_iter().map(|v| v + 1.0).collect();
    Panel::new(n, t, k, x, y, xn).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}
