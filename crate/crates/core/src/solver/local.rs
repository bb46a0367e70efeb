//! Damped least squares on the unit and orthogonality equations, used to
//! reach a feasible candidate without bisecting down to it.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The quadratic equations of a system over a flat coordinate vector.
pub(super) struct Residuals<'a> {
    pub n: usize,
    /// Flat indices of the unknowns.
    pub free: &'a [usize],
    /// `(v, coords)`: `sum a[v][k]^2 = 1` over `coords`.
    pub units: &'a [(usize, Vec<usize>)],
    /// `(u, v, coords)`: `sum a[u][k] a[v][k] = 0` over `coords`.
    pub orth: &'a [(usize, usize, Vec<usize>)],
}

const ITERATIONS: usize = 300;
const TOLERANCE: f64 = 1e-13;

impl Residuals<'_> {
    fn eval(&self, x: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let n = self.n;
        let rows = self.units.len() + self.orth.len();
        let mut col = vec![usize::MAX; x.len()];
        for (j, &i) in self.free.iter().enumerate() {
            col[i] = j;
        }
        let mut f = DVector::zeros(rows);
        let mut jac = DMatrix::zeros(rows, self.free.len());
        for (r, (v, coords)) in self.units.iter().enumerate() {
            f[r] = coords.iter().map(|&k| x[v * n + k].powi(2)).sum::<f64>() - 1.0;
            for &k in coords {
                if col[v * n + k] != usize::MAX {
                    jac[(r, col[v * n + k])] = 2.0 * x[v * n + k];
                }
            }
        }
        let base = self.units.len();
        for (r, (u, v, coords)) in self.orth.iter().enumerate() {
            let r = base + r;
            f[r] = coords.iter().map(|&k| x[u * n + k] * x[v * n + k]).sum();
            for &k in coords {
                for (p, q) in [(u, v), (v, u)] {
                    if col[p * n + k] != usize::MAX {
                        jac[(r, col[p * n + k])] += x[q * n + k];
                    }
                }
            }
        }
        (f, jac)
    }

    /// Levenberg-Marquardt from `x`; returns the final max residual.
    fn descend(&self, x: &mut [f64]) -> f64 {
        let mut lambda = 1e-3;
        let (mut f, mut jac) = self.eval(x);
        let mut cost = f.norm_squared();
        for _ in 0..ITERATIONS {
            if f.amax() < TOLERANCE {
                break;
            }
            let jt = jac.transpose();
            let mut normal = &jt * &jac;
            let grad = &jt * &f;
            for d in 0..normal.nrows() {
                normal[(d, d)] += lambda * (1.0 + normal[(d, d)]);
            }
            let Some(step) = normal.cholesky().map(|c| c.solve(&grad)) else {
                lambda *= 10.0;
                continue;
            };
            let mut trial = x.to_vec();
            for (j, &i) in self.free.iter().enumerate() {
                trial[i] -= step[j];
            }
            let (tf, tj) = self.eval(&trial);
            let tcost = tf.norm_squared();
            if tcost < cost {
                x.copy_from_slice(&trial);
                (f, jac, cost) = (tf, tj, tcost);
                lambda = (lambda * 0.3).max(1e-12);
            } else {
                lambda *= 10.0;
                if lambda > 1e12 || step.amax() < 1e-15 {
                    break;
                }
            }
        }
        f.amax()
    }

    /// Seeded restarts from random directions; returns the first point whose
    /// residual vanishes and on which `accept` holds.
    pub fn search(&self, fixed: &[f64], starts: usize, seed: u64, accept: impl Fn(&[f64]) -> bool) -> Option<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..starts {
            let mut x = fixed.to_vec();
            for &i in self.free {
                x[i] = rng.gen_range(-1.0..1.0);
            }
            if self.descend(&mut x) < TOLERANCE && accept(&x) {
                return Some(x);
            }
        }
        None
    }
}
