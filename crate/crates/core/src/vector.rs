//! Probability vectors and vector majorization.
//!
//! `p ≻ q` holds when every Ky-Fan norm (sum of the `k` largest entries) of
//! `p` dominates that of `q`. Vectors of different length are compared
//! after zero-padding the shorter one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RealMatrix;
use crate::tol::{self, NUM_EPS, SUM_TOL};

/// A finite probability distribution. Serialized as a plain JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Validates and normalizes `entries`: negatives within `1e-12` are
    /// clamped to zero, the sum must be one within `1e-9`.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("probability vector must be non-empty"));
        }
        let mut entries = entries;
        for v in entries.iter_mut() {
            if !v.is_finite() {
                return Err(Error::domain(format!("non-finite probability {v}")));
            }
            if *v < -NUM_EPS {
                return Err(Error::domain(format!("negative probability {v}")));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::domain(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(ProbVector(entries))
    }

    /// Wraps entries that the caller has already validated.
    pub(crate) fn from_trusted(mut entries: Vec<f64>) -> Self {
        for v in entries.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        ProbVector(entries)
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs a positive dimension");
        ProbVector(vec![1.0 / n as f64; n])
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        assert!(at < n, "point mass index out of range");
        let mut v = vec![0.0; n];
        v[at] = 1.0;
        ProbVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Entries rearranged in non-increasing order.
    pub fn sorted_desc(&self) -> ProbVector {
        ProbVector(sorted_desc(&self.0))
    }

    /// Zero-pads to dimension `n`. Panics if `n < dim`.
    pub fn padded(&self, n: usize) -> ProbVector {
        assert!(n >= self.dim());
        let mut v = self.0.clone();
        v.resize(n, 0.0);
        ProbVector(v)
    }

    /// Kronecker product, index `i * other.dim() + j`.
    pub fn tensor(&self, other: &ProbVector) -> ProbVector {
        ProbVector(kron(&self.0, &other.0))
    }

    /// Sum of the `k` largest entries.
    pub fn ky_fan(&self, k: usize) -> Result<f64> {
        ky_fan_norm(self, k)
    }

    /// `[‖p‖_(1), …, ‖p‖_(n)]`.
    pub fn ky_fan_profile(&self) -> Vec<f64> {
        ky_fan_profile(&self.0)
    }
}

impl TryFrom<Vec<f64>> for ProbVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        ProbVector::new(v)
    }
}

impl From<ProbVector> for Vec<f64> {
    fn from(p: ProbVector) -> Vec<f64> {
        p.0
    }
}

pub(crate) fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Permutation that sorts `v` in non-increasing order, stable on ties:
/// `v[perm[0]] >= v[perm[1]] >= …`.
pub(crate) fn sorting_permutation(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
    idx
}

/// Partial sums of the entries of `v` sorted in non-increasing order.
pub(crate) fn ky_fan_profile(v: &[f64]) -> Vec<f64> {
    sorted_desc(v)
        .into_iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

pub(crate) fn kron(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        out.extend(b.iter().map(|&y| x * y));
    }
    out
}

/// Sum of the `k` largest entries of `p`, `1 <= k <= dim(p)`.
pub fn ky_fan_norm(p: &ProbVector, k: usize) -> Result<f64> {
    if k == 0 || k > p.dim() {
        return Err(Error::domain(format!(
            "Ky-Fan index {k} outside 1..={}",
            p.dim()
        )));
    }
    Ok(sorted_desc(&p.0)[..k].iter().sum())
}

/// Majorization on raw (possibly unnormalized) profiles: `a ≻ b` within
/// `tol` at every level, zero-padding the shorter vector.
pub(crate) fn majorizes_slices(a: &[f64], b: &[f64], tol: f64) -> bool {
    let n = a.len().max(b.len());
    let mut pa = ky_fan_profile(a);
    let mut pb = ky_fan_profile(b);
    let fill_a = pa.last().copied().unwrap_or(0.0);
    let fill_b = pb.last().copied().unwrap_or(0.0);
    pa.resize(n, fill_a);
    pb.resize(n, fill_b);
    pa.iter().zip(&pb).all(|(x, y)| *x >= *y - tol)
}

/// `p ≻ q`: every Ky-Fan norm of `p` is at least that of `q` (within the
/// comparison tolerance).
pub fn majorizes_vector(p: &ProbVector, q: &ProbVector) -> bool {
    majorizes_slices(&p.0, &q.0, tol::cmp_tol())
}

/// A square matrix with non-negative entries whose rows and columns sum to
/// one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RealMatrix", into = "RealMatrix")]
pub struct DoublyStochasticMatrix(RealMatrix);

impl DoublyStochasticMatrix {
    pub fn new(m: RealMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::domain("doubly stochastic matrix must be square"));
        }
        if !m.is_doubly_stochastic(SUM_TOL) {
            return Err(Error::domain(
                "matrix is not doubly stochastic within tolerance",
            ));
        }
        Ok(DoublyStochasticMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        DoublyStochasticMatrix(RealMatrix::identity(n))
    }

    /// Permutation matrix `P` with `(P v)_i = v[perm[i]]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = RealMatrix::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            m[(i, j)] = 1.0;
        }
        DoublyStochasticMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.0
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.0.mul_vec(v)
    }

    /// `self ∘ first`, i.e. the matrix product `self · first`.
    pub fn compose(&self, first: &DoublyStochasticMatrix) -> Result<Self> {
        Ok(DoublyStochasticMatrix(self.0.mul(&first.0)?))
    }
}

impl TryFrom<RealMatrix> for DoublyStochasticMatrix {
    type Error = Error;

    fn try_from(m: RealMatrix) -> Result<Self> {
        DoublyStochasticMatrix::new(m)
    }
}

impl From<DoublyStochasticMatrix> for RealMatrix {
    fn from(d: DoublyStochasticMatrix) -> RealMatrix {
        d.0
    }
}

/// Entries whose difference is below this are treated as already balanced
/// by the T-transform chain.
const TRANSFER_EPS: f64 = 1e-14;

/// Doubly stochastic `D` with `D p = q`, assuming `p ≻ q`.
///
/// Both vectors are sorted; the sorted `p` is driven onto the sorted `q` by
/// a chain of at most `dim - 1` T-transforms `λ I + (1-λ) Q_{jk}`, always
/// choosing `k` as the first deficit `x_k < y_k` that has an earlier
/// surplus and `j` as the last such surplus. The sorting permutations are
/// composed on both sides.
pub fn transfer_matrix(p: &ProbVector, q: &ProbVector) -> Result<DoublyStochasticMatrix> {
    if p.dim() != q.dim() {
        return Err(Error::domain(format!(
            "transfer matrix needs equal dimensions, got {} and {}",
            p.dim(),
            q.dim()
        )));
    }
    if !majorizes_vector(p, q) {
        return Err(Error::precondition("p does not majorize q"));
    }
    t_transform_chain(p.as_slice(), q.as_slice(), 1e-8)
}

/// The T-transform construction behind [`transfer_matrix`], without the
/// majorization precondition. The image of `p` must land within `accuracy`
/// of `q`, otherwise an internal error is returned.
pub(crate) fn t_transform_chain(
    p: &[f64],
    q: &[f64],
    accuracy: f64,
) -> Result<DoublyStochasticMatrix> {
    let n = p.len();
    let perm_p = sorting_permutation(p);
    let perm_q = sorting_permutation(q);
    let mut x: Vec<f64> = perm_p.iter().map(|&i| p[i]).collect();
    let y: Vec<f64> = perm_q.iter().map(|&i| q[i]).collect();

    let mut chain = RealMatrix::identity(n);
    // A deficit with no earlier surplus is tolerance slack from an inexact
    // majorization and is left for the accuracy check below.
    for _ in 0..n {
        let pair = (0..n)
            .filter(|&i| y[i] - x[i] > TRANSFER_EPS)
            .find_map(|k| {
                (0..k)
                    .rev()
                    .find(|&i| x[i] - y[i] > TRANSFER_EPS)
                    .map(|j| (j, k))
            });
        let Some((j, k)) = pair else {
            break;
        };
        let delta = (x[j] - y[j]).min(y[k] - x[k]);
        let gap = x[j] - x[k];
        if gap <= 0.0 {
            return Err(Error::Internal(
                "T-transform chain met a non-positive gap".into(),
            ));
        }
        let lambda = 1.0 - delta / gap;
        let mut t = RealMatrix::identity(n);
        t[(j, j)] = lambda;
        t[(k, k)] = lambda;
        t[(j, k)] = 1.0 - lambda;
        t[(k, j)] = 1.0 - lambda;
        let (xj, xk) = (x[j], x[k]);
        x[j] = lambda * xj + (1.0 - lambda) * xk;
        x[k] = (1.0 - lambda) * xj + lambda * xk;
        chain = t.mul(&chain)?;
    }

    // D = Qᵀ · chain · P, where P sorts p and Q sorts q.
    let sort_p = DoublyStochasticMatrix::permutation(&perm_p);
    let unsort_q = RealMatrix::from(DoublyStochasticMatrix::permutation(&perm_q)).transpose();
    let d = unsort_q.mul(&chain)?.mul(sort_p.matrix())?;
    let out = DoublyStochasticMatrix(d);
    let image = out.apply(p)?;
    let err = image
        .iter()
        .zip(q)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if err > accuracy {
        return Err(Error::Internal(format!(
            "transfer matrix reproduces q only to {err:e}"
        )));
    }
    Ok(out)
}

/// Least concave majorant breakpoints of a Ky-Fan envelope `f` with
/// `f[k-1] = sup_p ‖p‖_(k)`, turned into the non-increasing vector whose
/// profile is that majorant.
pub(crate) fn upper_bound_from_envelope(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let value = |k: usize| if k == 0 { 0.0 } else { f[k - 1] };
    let mut w = vec![0.0; n];
    let mut prev = 0usize;
    while prev < n {
        // k_j = largest maximizer of the slope from k_{j-1}.
        let mut best_l = prev + 1;
        let mut best_slope = value(prev + 1) - value(prev);
        for l in prev + 2..=n {
            let slope = (value(l) - value(prev)) / (l - prev) as f64;
            if slope >= best_slope - 1e-15 {
                best_slope = best_slope.max(slope);
                best_l = l;
            }
        }
        let mut slope = (value(best_l) - value(prev)) / (best_l - prev) as f64;
        // Differences of equal partial sums are round-off, not probability.
        if slope.abs() < 1e-13 {
            slope = 0.0;
        }
        for wk in &mut w[prev..best_l] {
            *wk = slope;
        }
        prev = best_l;
    }
    w
}

/// The least vector (in `Prob↓(n)`) majorizing every member of `set`.
pub fn optimal_upper_bound(set: &[ProbVector]) -> Result<ProbVector> {
    let first = set
        .first()
        .ok_or_else(|| Error::domain("optimal upper bound of an empty set"))?;
    let n = first.dim();
    if let Some(p) = set.iter().find(|p| p.dim() != n) {
        return Err(Error::domain(format!(
            "optimal upper bound needs a common dimension, got {n} and {}",
            p.dim()
        )));
    }
    let mut envelope = vec![0.0f64; n];
    for p in set {
        for (e, v) in envelope.iter_mut().zip(p.ky_fan_profile()) {
            *e = e.max(v);
        }
    }
    Ok(ProbVector::from_trusted(upper_bound_from_envelope(
        &envelope,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pv(v: &[f64]) -> ProbVector {
        ProbVector::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn ky_fan_examples() {
        assert!(close(ky_fan_norm(&pv(&[0.5, 0.3, 0.2]), 2).unwrap(), 0.8));
        assert!(close(ky_fan_norm(&pv(&[0.7, 0.15, 0.15]), 1).unwrap(), 0.7));
        assert!(close(
            ky_fan_norm(&pv(&[0.1, 0.2, 0.3, 0.4]), 4).unwrap(),
            1.0
        ));
    }

    #[test]
    fn ky_fan_out_of_range() {
        let p = pv(&[0.5, 0.5]);
        assert!(matches!(ky_fan_norm(&p, 0), Err(Error::Domain(_))));
        assert!(matches!(ky_fan_norm(&p, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn construction_validates() {
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![1.1, -0.1]).is_err());
        assert!(ProbVector::new(vec![]).is_err());
        let p = ProbVector::new(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(p.as_slice()[1], 0.0);
    }

    #[test]
    fn json_is_a_plain_array() {
        let p = pv(&[0.25, 0.75]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[0.25,0.75]");
        let back: ProbVector = serde_json::from_str("[0.25,0.75]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ProbVector>("[0.2,0.2]").is_err());
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes_vector(&pv(&[1.0, 0.0]), &pv(&[0.5, 0.5])));
        assert!(!majorizes_vector(
            &ProbVector::uniform(3),
            &pv(&[0.5, 0.3, 0.2])
        ));
        assert!(majorizes_vector(&pv(&[0.6, 0.4]), &pv(&[0.6, 0.4])));
    }

    #[test]
    fn majorization_pads_shorter_vector() {
        assert!(majorizes_vector(&pv(&[0.6, 0.4]), &pv(&[0.4, 0.3, 0.3])));
        assert!(!majorizes_vector(&pv(&[0.4, 0.3, 0.3]), &pv(&[0.6, 0.4])));
    }

    #[test]
    fn transfer_examples() {
        let d = transfer_matrix(&pv(&[1.0, 0.0]), &pv(&[0.5, 0.5])).unwrap();
        let half = RealMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(d.matrix().max_abs_diff(&half) < 1e-12);

        let d = transfer_matrix(&pv(&[0.7, 0.3]), &pv(&[0.7, 0.3])).unwrap();
        assert!(d.matrix().max_abs_diff(&RealMatrix::identity(2)) < 1e-12);

        // Single T-transform t·p + (1-t)·swap(p) = q solved by t = 0.75.
        let d = transfer_matrix(&pv(&[0.7, 0.3]), &pv(&[0.6, 0.4])).unwrap();
        let t = RealMatrix::from_rows(&[vec![0.75, 0.25], vec![0.25, 0.75]]).unwrap();
        assert!(d.matrix().max_abs_diff(&t) < 1e-12);
    }

    #[test]
    fn transfer_handles_unsorted_inputs() {
        let p = pv(&[0.1, 0.6, 0.3]);
        let q = pv(&[0.3, 0.3, 0.4]);
        let d = transfer_matrix(&p, &q).unwrap();
        let image = d.apply(p.as_slice()).unwrap();
        for (a, b) in image.iter().zip(q.as_slice()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(d.matrix().is_doubly_stochastic(1e-12));
    }

    #[test]
    fn transfer_rejects_non_majorizing_pair() {
        let err = transfer_matrix(&pv(&[0.5, 0.5]), &pv(&[1.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = transfer_matrix(&pv(&[1.0, 0.0]), &pv(&[0.4, 0.3, 0.3])).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    /// Least concave majorant evaluated directly: at each `k`, the best
    /// chord between two envelope points straddling `k`.
    fn concave_majorant_oracle(f: &[f64]) -> Vec<f64> {
        let n = f.len();
        let val = |k: usize| if k == 0 { 0.0 } else { f[k - 1] };
        (1..=n)
            .map(|k| {
                let mut best = val(k);
                for i in 0..k {
                    for j in k + 1..=n {
                        let t = (k - i) as f64 / (j - i) as f64;
                        best = best.max((1.0 - t) * val(i) + t * val(j));
                    }
                }
                best
            })
            .collect()
    }

    #[test]
    fn upper_bound_examples() {
        let r = optimal_upper_bound(&[pv(&[0.2, 0.5, 0.3])]).unwrap();
        for (a, b) in r.as_slice().iter().zip(&[0.5, 0.3, 0.2]) {
            assert!((a - b).abs() < 1e-15);
        }

        let r = optimal_upper_bound(&[pv(&[1.0, 0.0]), pv(&[0.0, 1.0])]).unwrap();
        assert_eq!(r.as_slice(), &[1.0, 0.0]);

        let set = [pv(&[0.6, 0.4, 0.0]), pv(&[0.5, 0.25, 0.25])];
        let envelope = [0.6, 1.0, 1.0];
        let oracle = concave_majorant_oracle(&envelope);
        let r = optimal_upper_bound(&set).unwrap();
        for (a, b) in r.ky_fan_profile().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in r.as_slice().iter().zip(&[0.6, 0.4, 0.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn upper_bound_of_empty_or_mixed_set() {
        assert!(matches!(optimal_upper_bound(&[]), Err(Error::Domain(_))));
        let set = [pv(&[1.0]), pv(&[0.5, 0.5])];
        assert!(matches!(optimal_upper_bound(&set), Err(Error::Domain(_))));
    }

    #[test]
    fn upper_bound_fills_a_concave_kink() {
        // Envelope (0.6, 0.7, 0.9, 1.0, 1.0) rises by 0.1 then 0.2: not concave.
        let set = [
            pv(&[0.6, 0.1, 0.1, 0.1, 0.1]),
            pv(&[0.3, 0.3, 0.3, 0.1, 0.0]),
        ];
        let r = optimal_upper_bound(&set).unwrap();
        let f = concave_majorant_oracle(&[0.6, 0.7, 0.9, 1.0, 1.0]);
        for (a, b) in r.ky_fan_profile().iter().zip(&f) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        for (a, b) in r.as_slice().iter().zip(&[0.6, 0.15, 0.15, 0.1, 0.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    fn arb_prob(n: usize) -> impl Strategy<Value = ProbVector> {
        prop::collection::vec(0.001f64..1.0, n).prop_map(|v| {
            let s: f64 = v.iter().sum();
            ProbVector::new(v.into_iter().map(|x| x / s).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ky_fan_monotone_and_concave_when_sorted(p in (1usize..7).prop_flat_map(arb_prob)) {
            let prof = p.ky_fan_profile();
            prop_assert!((prof[prof.len() - 1] - 1.0).abs() < 1e-12);
            for w in prof.windows(2) {
                prop_assert!(w[1] >= w[0] - 1e-15);
            }
            let mut ext = vec![0.0];
            ext.extend(&prof);
            for w in ext.windows(3) {
                prop_assert!(w[2] - 2.0 * w[1] + w[0] <= 1e-12);
            }
        }

        #[test]
        fn majorization_is_a_preorder(
            (p, q, r) in (1usize..6).prop_flat_map(|n| (arb_prob(n), arb_prob(n), arb_prob(n)))
        ) {
            prop_assert!(majorizes_vector(&p, &p));
            let tol = 3e-9;
            if majorizes_slices(p.as_slice(), q.as_slice(), tol)
                && majorizes_slices(q.as_slice(), r.as_slice(), tol)
            {
                prop_assert!(majorizes_slices(p.as_slice(), r.as_slice(), 2.0 * tol));
            }
        }

        #[test]
        fn transfer_is_doubly_stochastic_and_exact(
            (p, t) in (2usize..7).prop_flat_map(|n| (arb_prob(n), prop::collection::vec(0.0f64..1.0, n)))
        ) {
            // q = D' p for a random product of T-transforms, so p ≻ q.
            let n = p.dim();
            let mut q = p.as_slice().to_vec();
            for (j, lambda) in t.iter().enumerate() {
                let k = (j + 1) % n;
                let (a, b) = (q[j], q[k]);
                q[j] = lambda * a + (1.0 - lambda) * b;
                q[k] = (1.0 - lambda) * a + lambda * b;
            }
            let q = ProbVector::new(q).unwrap();
            prop_assume!(majorizes_vector(&p, &q));
            let d = transfer_matrix(&p, &q).unwrap();
            prop_assert!(d.matrix().is_doubly_stochastic(1e-9));
            let in_unit_interval = (0..n).all(|i| (0..n).all(|j| {
                let v = d.matrix()[(i, j)];
                (-1e-12..=1.0 + 1e-12).contains(&v)
            }));
            prop_assert!(in_unit_interval);
            let image = d.apply(p.as_slice()).unwrap();
            for (a, b) in image.iter().zip(q.as_slice()) {
                prop_assert!((a - b).abs() <= 1e-8);
            }
        }

        #[test]
        fn upper_bound_is_least(
            set in (1usize..6).prop_flat_map(|n| prop::collection::vec(arb_prob(n), 1..5)),
            probe in prop::collection::vec(0.001f64..1.0, 5)
        ) {
            let r = optimal_upper_bound(&set).unwrap();
            for p in &set {
                prop_assert!(majorizes_vector(&r, p));
            }
            for w in r.as_slice().windows(2) {
                prop_assert!(w[0] >= w[1] - 1e-12);
            }
            // Any vector above every member is above r.
            let n = set[0].dim();
            let s: f64 = probe[..n].iter().sum();
            let cand = ProbVector::new(probe[..n].iter().map(|x| x / s).collect()).unwrap();
            if set.iter().all(|p| majorizes_vector(&cand, p)) {
                prop_assert!(majorizes_vector(&cand, &r));
            }
        }
    }
}
