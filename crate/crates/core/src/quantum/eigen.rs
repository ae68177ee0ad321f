//! Hermitian spectra via cyclic Jacobi rotations.
//!
//! `H = A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`, whose
//! spectrum is that of `H` with every eigenvalue doubled. An eigenvector
//! `(u, v)` of the embedding gives the eigenvector `u + iv` of `H`.

use num_complex::Complex64;

use super::matrix::{orthogonal_residual, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};

pub const MAX_EIGEN_DIM: usize = 256;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix stored row-major.
/// Returns eigenvalues and the matrix whose columns are eigenvectors.
fn jacobi(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

fn check_input(h: &ComplexMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::domain("eigenvalues need a square matrix"));
    }
    if h.rows() > MAX_EIGEN_DIM {
        return Err(Error::Resource(format!(
            "dimension {} exceeds the eigensolver limit {MAX_EIGEN_DIM}",
            h.rows()
        )));
    }
    if !h.is_hermitian(1e-9 * h.frobenius_norm().max(1.0)) {
        return Err(Error::domain("matrix is not Hermitian"));
    }
    Ok(())
}

/// Real eigenpairs of the embedding, ascending.
fn embedded_spectrum(h: &ComplexMatrix) -> (Vec<f64>, Vec<Vec<f64>>) {
    let d = h.rows();
    let n = 2 * d;
    let mut s = vec![0.0; n * n];
    for i in 0..d {
        for j in 0..d {
            // Symmetrize so round-off in the input cannot break Jacobi.
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            s[i * n + j] = z.re;
            s[(i + d) * n + (j + d)] = z.re;
            s[i * n + (j + d)] = -z.im;
            s[(i + d) * n + j] = z.im;
        }
    }
    let (vals, vecs) = jacobi(s, n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let sorted_vals = order.iter().map(|&k| vals[k]).collect();
    let sorted_vecs = order
        .iter()
        .map(|&k| (0..n).map(|i| vecs[i * n + k]).collect())
        .collect();
    (sorted_vals, sorted_vecs)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_input(h)?;
    let (vals, _) = embedded_spectrum(h);
    Ok(vals.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Ascending eigenvalues and an orthonormal eigenbasis (as columns).
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_input(h)?;
    let d = h.rows();
    let (vals, vecs) = embedded_spectrum(h);
    let gap = 1e-9 * h.frobenius_norm().max(1.0);

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let mut start = 0;
    while start < vals.len() {
        let mut end = start + 1;
        while end < vals.len() && vals[end] - vals[end - 1] <= gap {
            end += 1;
        }
        // Each complex direction appears twice in the cluster (as w and iw);
        // pivoted Gram-Schmidt keeps one representative of each.
        let mut pool: Vec<Vec<Complex64>> = vecs[start..end]
            .iter()
            .map(|r| (0..d).map(|i| Complex64::new(r[i], r[i + d])).collect())
            .collect();
        loop {
            let best = pool
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let res = orthogonal_residual(v, &basis);
                    (k, vec_norm(&res), res)
                })
                .max_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((k, norm, res)) if norm > 1e-3 => {
                    basis.push(res.into_iter().map(|z| z / norm).collect());
                    pool.swap_remove(k);
                }
                _ => break,
            }
        }
        start = end;
    }
    if basis.len() != d {
        return Err(Error::Internal(format!(
            "recovered {} eigenvectors for dimension {d}",
            basis.len()
        )));
    }
    let values = basis
        .iter()
        .map(|v| {
            let hv = h.mul(&ComplexMatrix::ket(v)).expect("square");
            v.iter()
                .zip(hv.column(0))
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
                .re
        })
        .collect();
    Ok((values, ComplexMatrix::from_fn(d, d, |i, j| basis[j][i])))
}

pub fn lambda_max(h: &ComplexMatrix) -> Result<f64> {
    Ok(*hermitian_eigenvalues(h)?
        .last()
        .ok_or_else(|| Error::domain("empty matrix"))?)
}

/// `f(H)` applied through the spectral decomposition.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let (vals, u) = hermitian_eigen(h)?;
    let mapped: Vec<f64> = vals.into_iter().map(f).collect();
    u.mul(&ComplexMatrix::diag(&mapped))?.mul(&u.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spectra_of_simple_matrices() {
        let ev = hermitian_eigenvalues(&ComplexMatrix::identity(4)).unwrap();
        assert!(ev.iter().all(|v| (v - 1.0).abs() < 1e-12));
        let ev = hermitian_eigenvalues(&ComplexMatrix::diag(&[0.8, 0.2])).unwrap();
        assert!((ev[0] - 0.2).abs() < 1e-12 && (ev[1] - 0.8).abs() < 1e-12);
        let x = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let ev = hermitian_eigenvalues(&x).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
        let y = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let ev = hermitian_eigenvalues(&y).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::Domain(_))));
    }

    #[test]
    fn known_spectrum_under_random_unitary() {
        let mut rng = sample::rng(21);
        for d in [2, 3, 5, 8] {
            let u = sample::unitary(&mut rng, d);
            let spectrum: Vec<f64> = (0..d).map(|i| i as f64 * 0.7 - 1.0).collect();
            let h = u.sandwich(&ComplexMatrix::diag(&spectrum)).unwrap();
            let ev = hermitian_eigenvalues(&h).unwrap();
            for (a, b) in ev.iter().zip(&spectrum) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
            assert!((ev.iter().sum::<f64>() - h.trace().re).abs() < 1e-8);
        }
    }

    #[test]
    fn eigenvectors_with_degeneracy() {
        let mut rng = sample::rng(22);
        let u = sample::unitary(&mut rng, 4);
        let h = u
            .sandwich(&ComplexMatrix::diag(&[1.0, 1.0, 0.0, 2.0]))
            .unwrap();
        let (vals, v) = hermitian_eigen(&h).unwrap();
        assert!(
            v.adjoint()
                .mul(&v)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(4))
                < 1e-9
        );
        let rebuilt = v
            .mul(&ComplexMatrix::diag(&vals))
            .unwrap()
            .mul(&v.adjoint())
            .unwrap();
        assert!(rebuilt.max_abs_diff(&h) < 1e-9);
        let expected = [0.0, 1.0, 1.0, 2.0];
        for (a, b) in vals.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
