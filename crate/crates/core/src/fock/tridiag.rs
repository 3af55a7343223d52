//! Tridiagonal Hermitian generators and their spectral decomposition.
//!
//! Every generator in this crate couples only neighbouring basis states, so a
//! diagonal phase transformation maps it onto a real symmetric tridiagonal
//! matrix. That matrix is diagonalized with the implicit QL algorithm
//! (Wilkinson shifts), the same scheme as EISPACK `tql2`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 64;

/// Hermitian matrix with non-zero entries only on the main and first off-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalHermitian {
    /// `H[m][m]`
    pub diag: Vec<f64>,
    /// `H[m + 1][m]`; the upper off-diagonal is its conjugate.
    pub sub: Vec<C64>,
}

impl TridiagonalHermitian {
    pub fn new(diag: Vec<f64>, sub: Vec<C64>) -> Result<Self> {
        if diag.is_empty() || sub.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                generator: diag.len(),
                state: sub.len() + 1,
            });
        }
        Ok(Self { diag, sub })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            diag: vec![0.0; dim],
            sub: vec![C64::new(0.0, 0.0); dim.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|&d| d == 0.0) && self.sub.iter().all(|s| s.norm() == 0.0)
    }

    /// Matrix element `H[row][col]`.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        if row == col {
            C64::new(self.diag[row], 0.0)
        } else if row == col + 1 {
            self.sub[col]
        } else if col == row + 1 {
            self.sub[row].conj()
        } else {
            C64::new(0.0, 0.0)
        }
    }

    /// `H psi`.
    pub fn apply(&self, psi: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut out: Vec<C64> = (0..n).map(|m| psi[m] * self.diag[m]).collect();
        for m in 0..n.saturating_sub(1) {
            out[m + 1] += self.sub[m] * psi[m];
            out[m] += self.sub[m].conj() * psi[m + 1];
        }
        out
    }

    /// Diagonal phases `d` such that `D^dag H D` is real with non-negative off-diagonals.
    pub fn gauge_phases(&self) -> Vec<C64> {
        let mut phases = Vec::with_capacity(self.dim());
        let mut d = C64::new(1.0, 0.0);
        phases.push(d);
        for s in &self.sub {
            let r = s.norm();
            if r > 0.0 {
                d *= s / r;
            }
            phases.push(d);
        }
        phases
    }

    /// Real off-diagonals `|H[m + 1][m]|` of the gauge-transformed matrix.
    pub fn real_offdiagonal(&self) -> Vec<f64> {
        self.sub.iter().map(|s| s.norm()).collect()
    }
}

/// Eigenpairs of a real symmetric tridiagonal matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct TridiagonalEigen {
    pub values: Vec<f64>,
    /// Row-major `n x n`; column `j` is the eigenvector of `values[j]`.
    pub vectors: Vec<f64>,
}

impl TridiagonalEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector_component(&self, row: usize, col: usize) -> f64 {
        self.vectors[row * self.dim() + col]
    }
}

/// Implicit QL diagonalization of the symmetric tridiagonal matrix with main
/// diagonal `diag` and off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn symmetric_tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<TridiagonalEigen> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            generator: n,
            state: off.len() + 1,
        });
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    let eps = f64::EPSILON;
    let mut shift = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence { index: l });
                }
                // Wilkinson shift from the leading 2x2 block
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                shift += h;

                // implicit QL sweep from m - 1 down to l
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zk1 = z[k * n + i + 1];
                        let zk = z[k * n + i];
                        z[k * n + i + 1] = s * zk + c * zk1;
                        z[k * n + i] = c * zk - s * zk1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&j| d[j]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = z[row * n + old_col];
        }
    }
    Ok(TridiagonalEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn dense(diag: &[f64], off: &[f64]) -> DMatrix<f64> {
        let n = diag.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else if i == j + 1 {
                off[j]
            } else if j == i + 1 {
                off[i]
            } else {
                0.0
            }
        })
    }

    fn check_against_dense(diag: &[f64], off: &[f64]) {
        let eig = symmetric_tridiagonal_eigen(diag, off).unwrap();
        let a = dense(diag, off);
        let n = diag.len();
        let mut reference: Vec<f64> = a
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        reference.sort_by(f64::total_cmp);
        let scale = 1.0 + reference.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (x, y) in eig.values.iter().zip(&reference) {
            assert!((x - y).abs() < 1e-12 * scale, "{x} vs {y}");
        }
        // A v = lambda v and V^T V = 1
        for j in 0..n {
            for i in 0..n {
                let av: f64 = (0..n).map(|k| a[(i, k)] * eig.vector_component(k, j)).sum();
                assert!((av - eig.values[j] * eig.vector_component(i, j)).abs() < 1e-11 * scale);
                let dot: f64 = (0..n)
                    .map(|k| eig.vector_component(k, i) * eig.vector_component(k, j))
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_by_one() {
        let e = symmetric_tridiagonal_eigen(&[2.5], &[]).unwrap();
        assert_eq!(e.values, vec![2.5]);
        assert_eq!(e.vectors, vec![1.0]);
    }

    #[test]
    fn two_by_two_by_hand() {
        let e = symmetric_tridiagonal_eigen(&[0.0, 0.0], &[1.0]).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn matches_dense_solver_on_generator_shapes() {
        // squeezing chain: off-diagonal m + 1
        let n = 60;
        let off: Vec<f64> = (0..n - 1).map(|m| (m + 1) as f64).collect();
        check_against_dense(&vec![0.0; n], &off);
        // pump sector N = 40: (m + 1) sqrt(N - m)
        let big_n = 40;
        let off: Vec<f64> = (0..big_n)
            .map(|m| (m + 1) as f64 * ((big_n - m) as f64).sqrt())
            .collect();
        check_against_dense(&vec![0.0; big_n + 1], &off);
        // generic
        let diag: Vec<f64> = (0..25).map(|i| (i as f64 * 0.37).sin()).collect();
        let off: Vec<f64> = (0..24).map(|i| (i as f64 * 1.3).cos()).collect();
        check_against_dense(&diag, &off);
    }

    #[test]
    fn handles_decoupled_blocks() {
        check_against_dense(&[1.0, 2.0, 3.0, 4.0], &[0.5, 0.0, 0.25]);
        check_against_dense(&[0.0; 5], &[0.0; 4]);
    }

    #[test]
    fn gauge_makes_generator_real() {
        let h = TridiagonalHermitian::new(
            vec![0.0, 1.0, -0.5],
            vec![C64::new(0.0, 2.0), C64::new(-1.0, 1.0)],
        )
        .unwrap();
        let d = h.gauge_phases();
        let off = h.real_offdiagonal();
        for m in 0..2 {
            let t = d[m + 1].conj() * h.get(m + 1, m) * d[m];
            assert!((t.re - off[m]).abs() < 1e-15 && t.im.abs() < 1e-15);
        }
    }

    #[test]
    fn apply_matches_elementwise_product() {
        let h = TridiagonalHermitian::new(
            vec![0.3, -0.2, 0.9],
            vec![C64::new(0.1, 0.4), C64::new(0.0, -1.5)],
        )
        .unwrap();
        let psi = [C64::new(1.0, 0.5), C64::new(-0.3, 0.2), C64::new(0.0, 1.0)];
        let out = h.apply(&psi);
        for (r, got) in out.iter().enumerate() {
            let expect: C64 = (0..3).map(|c| h.get(r, c) * psi[c]).sum();
            assert!((got - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_mismatched_lengths() {
        assert!(symmetric_tridiagonal_eigen(&[1.0, 2.0], &[]).is_err());
        assert!(TridiagonalHermitian::new(vec![], vec![]).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn eigen_reconstructs_matrix(
            diag in prop::collection::vec(-5.0f64..5.0, 1..30),
            seed in prop::collection::vec(-5.0f64..5.0, 30),
        ) {
            let n = diag.len();
            let off = &seed[..n - 1];
            let eig = symmetric_tridiagonal_eigen(&diag, off).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let rebuilt: f64 = (0..n)
                        .map(|k| eig.vector_component(i, k) * eig.values[k] * eig.vector_component(j, k))
                        .sum();
                    let expect = if i == j { diag[i] } else if i == j + 1 { off[j] } else if j == i + 1 { off[i] } else { 0.0 };
                    prop_assert!((rebuilt - expect).abs() < 1e-11);
                }
            }
        }
    }
}
