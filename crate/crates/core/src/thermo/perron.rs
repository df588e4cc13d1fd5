//! Perron eigenvalue of a small nonnegative matrix by power iteration.

use crate::error::{Error, Result};

/// Dense row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            *o = row.iter().zip(v).map(|(a, x)| a * x).sum();
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PowerIteration {
    pub max_iter: usize,
    /// Relative change of successive eigenvalue estimates at convergence.
    pub tol: f64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            max_iter: 100_000,
            tol: 1e-14,
        }
    }
}

/// Perron eigenvalue with left and right eigenvectors (each summing to 1).
#[derive(Clone, Debug)]
pub struct Perron {
    pub value: f64,
    pub right: Vec<f64>,
    pub left: Vec<f64>,
}

/// Matrices up to this size get a squaring warm start.
const SQUARING_DIM: usize = 64;

impl PowerIteration {
    fn dominant(&self, a: &Matrix) -> Result<(f64, Vec<f64>)> {
        let n = a.dim();
        let mut v = if n <= SQUARING_DIM {
            squaring_start(a)
        } else {
            vec![1.0 / n as f64; n]
        };
        // iterate on A + shift·I with shift ≈ λ: same eigenvectors, and
        // eigenvalues near -λ no longer compete with λ. The two-step growth
        // estimates λ even when the plain iterate oscillates.
        let mut next = vec![0.0; n];
        let mut twice = vec![0.0; n];
        a.apply(&v, &mut next);
        a.apply(&next, &mut twice);
        let shift = twice.iter().sum::<f64>().sqrt();
        if !shift.is_finite() {
            return Err(Error::Numeric(format!(
                "power iteration broke down (growth {shift})"
            )));
        }
        let mut lambda = f64::NAN;
        for _ in 0..self.max_iter {
            a.apply(&v, &mut next);
            // v sums to 1, so the 1-norm of (A + shift)v is the eigenvalue estimate
            let norm: f64 = next.iter().sum::<f64>() + shift;
            if !(norm.is_finite() && norm > 0.0) {
                return Err(Error::Numeric(format!(
                    "power iteration broke down (norm {norm})"
                )));
            }
            let mut delta = 0.0;
            for (x, y) in v.iter_mut().zip(&next) {
                let y = (y + shift * *x) / norm;
                delta += (y - *x).abs();
                *x = y;
            }
            let settled = (norm - lambda).abs() <= self.tol * norm && delta <= 1e-13;
            lambda = norm;
            if settled {
                a.apply(&v, &mut next);
                return Ok((next.iter().sum(), v));
            }
        }
        Err(Error::Numeric(format!(
            "power iteration did not converge in {} iterations",
            self.max_iter
        )))
    }

    pub fn perron(&self, a: &Matrix) -> Result<Perron> {
        let (value, right) = self.dominant(a)?;
        let (_, left) = self.dominant(&a.transpose())?;
        Ok(Perron { value, right, left })
    }
}

/// Row sums of a normalised high power `A^(2^k)`, scaled to sum 1. For a
/// primitive matrix this is already close to the Perron vector even when
/// `|λ2/λ|` is near 1. Falls back to the uniform vector on breakdown.
fn squaring_start(a: &Matrix) -> Vec<f64> {
    let n = a.dim();
    let uniform = vec![1.0 / n as f64; n];
    let scale = a.data.iter().fold(0.0f64, |m, &x| m.max(x));
    if !(scale.is_finite() && scale > 0.0) {
        return uniform;
    }
    let mut b: Vec<f64> = a.data.iter().map(|x| x / scale).collect();
    let mut sq = vec![0.0; n * n];
    for _ in 0..64 {
        for i in 0..n {
            for j in 0..n {
                sq[i * n + j] = (0..n).map(|k| b[i * n + k] * b[k * n + j]).sum();
            }
        }
        let max = sq.iter().fold(0.0f64, |m, &x| m.max(x));
        if !(max.is_finite() && max > 0.0) {
            break;
        }
        // relative per entry: tiny entries can carry the whole answer
        let mut change = 0.0f64;
        for (x, y) in b.iter_mut().zip(&sq) {
            let y = y / max;
            let size = x.abs().max(y.abs());
            if size > 0.0 {
                change = change.max((y - *x).abs() / size);
            }
            *x = y;
        }
        if change <= 1e-15 {
            break;
        }
    }
    let rows: Vec<f64> = (0..n).map(|i| b[i * n..(i + 1) * n].iter().sum()).collect();
    let total: f64 = rows.iter().sum();
    if total.is_finite() && total > 0.0 {
        rows.iter().map(|x| x / total).collect()
    } else {
        uniform
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one() {
        // rows (M, 1) with M = 3: spectral radius M + 1
        let a = Matrix::from_rows(&[vec![3.0, 1.0], vec![3.0, 1.0]]);
        let p = PowerIteration::default().perron(&a).unwrap();
        assert!((p.value - 4.0).abs() < 1e-13);
        assert!((p.right[0] - 0.5).abs() < 1e-13);
        assert!((p.left[0] - 0.75).abs() < 1e-13);
    }

    #[test]
    fn symmetric_two_by_two() {
        // eigenvalues (3 ± sqrt 5) / 2
        let a = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]]);
        let p = PowerIteration::default().perron(&a).unwrap();
        assert!((p.value - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-13);
    }

    #[test]
    fn eigen_equations_hold() {
        let a = Matrix::from_rows(&[
            vec![1.0, 2.0, 0.0],
            vec![0.5, 0.0, 1.0],
            vec![1.0, 0.0, 0.3],
        ]);
        let p = PowerIteration::default().perron(&a).unwrap();
        let mut av = vec![0.0; 3];
        a.apply(&p.right, &mut av);
        for (x, y) in av.iter().zip(&p.right) {
            assert!((x - p.value * y).abs() < 1e-12);
        }
        let mut ua = vec![0.0; 3];
        a.transpose().apply(&p.left, &mut ua);
        for (x, y) in ua.iter().zip(&p.left) {
            assert!((x - p.value * y).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_matrix_fails() {
        assert!(PowerIteration::default().perron(&Matrix::zeros(2)).is_err());
    }

    #[test]
    fn periodic_matrix_converges() {
        // eigenvalues ±sqrt 2: plain power iteration would oscillate
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]);
        let p = PowerIteration::default().perron(&a).unwrap();
        assert!((p.value - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn nearly_decomposable_matrix_converges() {
        let a = Matrix::from_rows(&[vec![1.0, 1e-9], vec![1e-9, 1.0 - 1e-8]]);
        let p = PowerIteration::default().perron(&a).unwrap();
        let want = (2.0 - 1e-8 + (1e-16 + 4e-18f64).sqrt()) / 2.0;
        assert!((p.value - want).abs() < 1e-13, "{} vs {want}", p.value);
        assert!(p.right[0] > 0.9);
    }

    #[test]
    fn tiny_component_is_resolved() {
        // the Perron vector has a component near 1e-23 that still sets λ
        let (a, b, c, d) = (1.22e-14, 1.4e-46, 1.0, 1.2202e-14);
        let m = Matrix::from_rows(&[vec![a, b], vec![c, d]]);
        let p = PowerIteration::default().perron(&m).unwrap();
        let want = (a + d) / 2.0 + (((a - d) / 2.0).powi(2) + b * c).sqrt();
        assert!((p.value - want).abs() <= 1e-12 * want, "{} vs {want}", p.value);
    }

    #[test]
    fn budget_exhaustion() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0]]);
        let solver = PowerIteration {
            max_iter: 1,
            tol: 1e-14,
        };
        assert!(matches!(solver.perron(&a), Err(Error::Numeric(_))));
    }
}
