//! Classical channels, superchannels and channel majorization.
//!
//! A channel `N : X → Y` is an `n × m` column-stochastic matrix whose column
//! `x` is the output distribution `p_x`. `N ≻ M` holds when some mixing
//! superchannel (stochastic pre-processing followed by conditioned doubly
//! stochastic post-processing) takes `N` to `M`. This is decided by one
//! small LP per column of `M`: find `s_w ∈ Prob(m)` with
//! `Σ_x s_w(x) p_x↓ ≻ q_w`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RealMatrix;
use crate::lp::{solve_feasibility, FeasibilityProblem, FeasibilityResult, Sense};
use crate::tol::{self, NUM_EPS, SUM_TOL};
use crate::vector::{
    self, kron, ky_fan_profile, majorizes_slices, optimal_upper_bound, sorted_desc,
    sorting_permutation, DoublyStochasticMatrix, ProbVector,
};

/// A classical channel stored column by column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelJson", into = "ChannelJson")]
pub struct ClassicalChannel {
    n: usize,
    columns: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    rows: usize,
    cols: usize,
    transition: Vec<Vec<f64>>,
}

impl TryFrom<ChannelJson> for ClassicalChannel {
    type Error = Error;

    fn try_from(raw: ChannelJson) -> Result<Self> {
        if raw.transition.len() != raw.rows {
            return Err(Error::domain(format!(
                "declared {} rows but transition has {}",
                raw.rows,
                raw.transition.len()
            )));
        }
        if raw.transition.iter().any(|r| r.len() != raw.cols) {
            return Err(Error::domain(format!(
                "every transition row must have {} entries",
                raw.cols
            )));
        }
        ClassicalChannel::from_transition(&raw.transition)
    }
}

impl From<ClassicalChannel> for ChannelJson {
    fn from(c: ClassicalChannel) -> Self {
        ChannelJson {
            rows: c.n,
            cols: c.columns.len(),
            transition: c.transition().to_rows(),
        }
    }
}

impl ClassicalChannel {
    /// Builds a channel from its output distributions `p_x`.
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let n = columns
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::domain("channel needs at least one column"))?;
        let mut cols = Vec::with_capacity(columns.len());
        for (x, c) in columns.into_iter().enumerate() {
            if c.len() != n {
                return Err(Error::domain(format!(
                    "column {x} has {} entries, expected {n}",
                    c.len()
                )));
            }
            let p = ProbVector::new(c).map_err(|e| Error::domain(format!("column {x}: {e}")))?;
            cols.push(p.into_vec());
        }
        Ok(ClassicalChannel { n, columns: cols })
    }

    /// Builds a channel from its row-major `n × m` transition matrix.
    pub fn from_transition(rows: &[Vec<f64>]) -> Result<Self> {
        let m = RealMatrix::from_rows(rows)?;
        Self::from_columns((0..m.cols()).map(|j| m.column(j)).collect())
    }

    pub fn from_matrix(m: &RealMatrix) -> Result<Self> {
        Self::from_columns((0..m.cols()).map(|j| m.column(j)).collect())
    }

    /// The trivial-input channel that prepares `p`.
    pub fn from_vector(p: &ProbVector) -> Self {
        ClassicalChannel {
            n: p.dim(),
            columns: vec![p.as_slice().to_vec()],
        }
    }

    pub fn identity(n: usize) -> Self {
        ClassicalChannel {
            n,
            columns: (0..n)
                .map(|x| ProbVector::point_mass(n, x).into_vec())
                .collect(),
        }
    }

    /// The uniform (completely randomizing) channel with `m` inputs.
    pub fn uniform(n: usize, m: usize) -> Self {
        ClassicalChannel {
            n,
            columns: vec![ProbVector::uniform(n).into_vec(); m],
        }
    }

    pub fn input_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn output_dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, x: usize) -> &[f64] {
        &self.columns[x]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn column_vectors(&self) -> Vec<ProbVector> {
        self.columns
            .iter()
            .map(|c| ProbVector::from_trusted(c.clone()))
            .collect()
    }

    /// The `n × m` transition matrix.
    pub fn transition(&self) -> RealMatrix {
        let mut t = RealMatrix::zeros(self.n, self.columns.len());
        for (j, c) in self.columns.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                t[(i, j)] = v;
            }
        }
        t
    }

    /// `N ⊗ M`; input `(x, x')` maps to index `x * m_M + x'`.
    pub fn tensor(&self, other: &ClassicalChannel) -> ClassicalChannel {
        let mut columns = Vec::with_capacity(self.input_dim() * other.input_dim());
        for a in &self.columns {
            for b in &other.columns {
                columns.push(kron(a, b));
            }
        }
        ClassicalChannel {
            n: self.n * other.n,
            columns,
        }
    }

    /// Largest entrywise difference; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &ClassicalChannel) -> f64 {
        self.transition().max_abs_diff(&other.transition())
    }

    fn sorted_columns(&self) -> Vec<Vec<f64>> {
        self.columns.iter().map(|c| sorted_desc(c)).collect()
    }
}

/// Compares two Ky-Fan profiles level by level, treating differences within
/// `tol` as ties.
fn lex_profile_cmp(a: &[f64], b: &[f64], tol: f64) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if *x > *y + tol {
            return Ordering::Greater;
        }
        if *x < *y - tol {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

/// LP in `s ∈ Prob(g)`: `Σ_x s_x F_x(k) ≥ F_q(k) - slack` for every Ky-Fan
/// level `k`, where `F` are the Ky-Fan profiles of `generators` and `target`.
fn hull_majorization_problem(
    generators: &[Vec<f64>],
    target: &[f64],
    slack: f64,
) -> Result<FeasibilityProblem> {
    let profiles: Vec<Vec<f64>> = generators.iter().map(|g| ky_fan_profile(g)).collect();
    let target = ky_fan_profile(target);
    let mut prob = FeasibilityProblem::new(generators.len(), true)?;
    for (k, &fq) in target.iter().enumerate() {
        let row = profiles.iter().map(|f| -f[k]).collect();
        prob.add_row(row, Sense::Le, -fq + slack)?;
    }
    prob.add_row(vec![1.0; generators.len()], Sense::Eq, 1.0)?;
    Ok(prob)
}

fn hull_majorizes(generators: &[Vec<f64>], target: &[f64]) -> Result<FeasibilityResult> {
    solve_feasibility(&hull_majorization_problem(
        generators,
        target,
        tol::cmp_tol(),
    )?)
}

/// The canonical representative of `N`'s equivalence class.
///
/// Columns are sorted, ordered decreasing-lexicographically by Ky-Fan
/// profile, deduplicated, and then any column majorized by a convex
/// combination of the remaining ones is removed (scanning last to first,
/// one removal per pass) until none is.
pub fn standard_form(channel: &ClassicalChannel) -> Result<ClassicalChannel> {
    let tol = tol::cmp_tol();
    let mut cols = channel.sorted_columns();
    cols.sort_by(|a, b| lex_profile_cmp(&ky_fan_profile(b), &ky_fan_profile(a), tol));
    cols.dedup_by(|a, b| {
        lex_profile_cmp(&ky_fan_profile(a), &ky_fan_profile(b), tol) == Ordering::Equal
    });

    loop {
        let mut removed = false;
        for x in (0..cols.len()).rev() {
            if cols.len() == 1 {
                break;
            }
            let others: Vec<Vec<f64>> = cols
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != x)
                .map(|(_, c)| c.clone())
                .collect();
            if hull_majorizes(&others, &cols[x])?.is_feasible() {
                cols.remove(x);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    Ok(ClassicalChannel {
        n: channel.n,
        columns: cols,
    })
}

/// Pads the output alphabet of `N` with never-produced symbols.
pub fn embed_output(channel: &ClassicalChannel, n_target: usize) -> Result<ClassicalChannel> {
    if n_target < channel.n {
        return Err(Error::domain(format!(
            "cannot embed output of size {} into {n_target}",
            channel.n
        )));
    }
    Ok(ClassicalChannel {
        n: n_target,
        columns: channel
            .columns
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.resize(n_target, 0.0);
                c
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Holds,
    Fails,
}

/// Outcome of [`channel_majorizes`].
///
/// When the relation holds, `stochastic` is the `m × m'` pre-processing
/// matrix `S = (s_{x|w})`. When it fails, `separating` is a non-increasing
/// `s` with `max_x s·p_x↓ < max_w s·q_w↓`, found for column `violated_column`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationCertificate {
    pub relation: Relation,
    pub stochastic: Option<RealMatrix>,
    pub separating: Option<ProbVector>,
    pub violated_column: Option<usize>,
}

impl MajorizationCertificate {
    pub fn holds(&self) -> bool {
        self.relation == Relation::Holds
    }

    /// Re-checks the certificate against the channels it was issued for.
    pub fn verify(&self, n: &ClassicalChannel, m: &ClassicalChannel) -> bool {
        let tol = tol::cmp_tol();
        match self.relation {
            Relation::Holds => {
                let Some(s) = &self.stochastic else {
                    return false;
                };
                if s.rows() != n.input_dim()
                    || s.cols() != m.input_dim()
                    || !s.is_column_stochastic(1e-8)
                {
                    return false;
                }
                let sorted = n.sorted_columns();
                // The LP relaxes each row by exactly `tol`, so its vertex
                // witnesses sit on that boundary up to round-off.
                (0..m.input_dim()).all(|w| {
                    let mix = mixture(&sorted, &s.column(w));
                    majorizes_slices(&mix, m.column(w), tol + NUM_EPS)
                })
            }
            Relation::Fails => {
                let Some(sep) = &self.separating else {
                    return false;
                };
                let p = predictability(n, sep.as_slice());
                let q = predictability(m, sep.as_slice());
                p < q - tol
            }
        }
    }
}

/// `Σ_x weights[x] · columns[x]`.
fn mixture(columns: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let n = columns.first().map_or(0, Vec::len);
    let mut out = vec![0.0; n];
    for (c, &w) in columns.iter().zip(weights) {
        for (o, v) in out.iter_mut().zip(c) {
            *o += w * v;
        }
    }
    out
}

/// `max_x s · p_x↓` for a non-increasing `s`.
pub fn predictability(channel: &ClassicalChannel, s: &[f64]) -> f64 {
    channel
        .columns
        .iter()
        .map(|c| {
            sorted_desc(c)
                .iter()
                .zip(s)
                .map(|(a, b)| a * b)
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Decides `N ≻ M` by one feasibility LP per column of `M`.
pub fn channel_majorizes(
    n: &ClassicalChannel,
    m: &ClassicalChannel,
) -> Result<MajorizationCertificate> {
    if n.output_dim() != m.output_dim() {
        return Err(Error::domain(format!(
            "output dimensions differ ({} vs {}); pad with embed_output first",
            n.output_dim(),
            m.output_dim()
        )));
    }
    let gens = n.sorted_columns();
    let results: Vec<Result<FeasibilityResult>> = m
        .columns
        .par_iter()
        .map(|q| hull_majorizes(&gens, q))
        .collect();

    let mut s = RealMatrix::zeros(n.input_dim(), m.input_dim());
    for (w, res) in results.into_iter().enumerate() {
        let res = res?;
        if let Some(x) = res.witness {
            let total: f64 = x.iter().map(|v| v.max(0.0)).sum();
            for (i, v) in x.iter().enumerate() {
                s[(i, w)] = v.max(0.0) / total;
            }
            continue;
        }
        let y = res
            .farkas_certificate
            .ok_or_else(|| Error::Internal("infeasible LP without certificate".into()))?;
        let sep = separating_vector(&y[..n.output_dim()])?;
        return Ok(MajorizationCertificate {
            relation: Relation::Fails,
            stochastic: None,
            separating: Some(sep),
            violated_column: Some(w),
        });
    }
    Ok(MajorizationCertificate {
        relation: Relation::Holds,
        stochastic: Some(s),
        separating: None,
        violated_column: None,
    })
}

/// `s = Lᵀ t / ‖Lᵀ t‖₁` with `L` the all-ones lower-triangular matrix, so
/// `s_j = Σ_{k ≥ j} t_k` is automatically non-increasing.
fn separating_vector(t: &[f64]) -> Result<ProbVector> {
    let n = t.len();
    let mut s = vec![0.0; n];
    let mut acc = 0.0;
    for j in (0..n).rev() {
        acc += t[j].max(0.0);
        s[j] = acc;
    }
    let total: f64 = s.iter().sum();
    if total <= 0.0 {
        return Err(Error::Solver(
            "Farkas certificate has no Ky-Fan component".into(),
        ));
    }
    Ok(ProbVector::from_trusted(
        s.into_iter().map(|v| v / total).collect(),
    ))
}

/// `N ∼ M`: majorization in both directions.
pub fn equivalent(n: &ClassicalChannel, m: &ClassicalChannel) -> Result<bool> {
    Ok(channel_majorizes(n, m)?.holds() && channel_majorizes(m, n)?.holds())
}

/// A classical superchannel in standard form: pre-processing `S = (s_{x|w})`
/// (`m × m'`) and a post-processing channel `E_{xw}` (`n' × n`) for every
/// pair. It acts as `Θ[N] e_w = Σ_x s_{x|w} E_{xw} p_x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SuperchannelJson", into = "SuperchannelJson")]
pub struct ClassicalSuperchannel {
    pre: RealMatrix,
    post: Vec<Vec<RealMatrix>>,
}

#[derive(Serialize, Deserialize)]
struct SuperchannelJson {
    pre: RealMatrix,
    post: Vec<Vec<RealMatrix>>,
}

impl TryFrom<SuperchannelJson> for ClassicalSuperchannel {
    type Error = Error;

    fn try_from(raw: SuperchannelJson) -> Result<Self> {
        ClassicalSuperchannel::new(raw.pre, raw.post)
    }
}

impl From<ClassicalSuperchannel> for SuperchannelJson {
    fn from(t: ClassicalSuperchannel) -> Self {
        SuperchannelJson {
            pre: t.pre,
            post: t.post,
        }
    }
}

impl ClassicalSuperchannel {
    /// `post[x][w]` is `E_{xw}`.
    pub fn new(pre: RealMatrix, post: Vec<Vec<RealMatrix>>) -> Result<Self> {
        if !pre.is_column_stochastic(SUM_TOL) {
            return Err(Error::domain(
                "pre-processing matrix is not column stochastic",
            ));
        }
        let (m, m2) = (pre.rows(), pre.cols());
        if post.len() != m || post.iter().any(|row| row.len() != m2) {
            return Err(Error::domain(format!(
                "post-processing must be indexed by {m} x {m2} (x, w) pairs"
            )));
        }
        let (n_out, n_in) = (post[0][0].rows(), post[0][0].cols());
        for (x, row) in post.iter().enumerate() {
            for (w, e) in row.iter().enumerate() {
                if e.rows() != n_out || e.cols() != n_in {
                    return Err(Error::domain(format!(
                        "E[{x}][{w}] is {}x{}, expected {n_out}x{n_in}",
                        e.rows(),
                        e.cols()
                    )));
                }
                if !e.is_column_stochastic(SUM_TOL) {
                    return Err(Error::domain(format!(
                        "E[{x}][{w}] is not column stochastic"
                    )));
                }
            }
        }
        Ok(ClassicalSuperchannel { pre, post })
    }

    /// Leaves every channel `X → Y` unchanged.
    pub fn identity(m: usize, n: usize) -> Self {
        ClassicalSuperchannel {
            pre: RealMatrix::identity(m),
            post: vec![vec![RealMatrix::identity(n); m]; m],
        }
    }

    /// Replaces every input channel `X → Y` by the uniform channel
    /// `X' → Y'`.
    pub fn replacement_by_uniform(m: usize, m_out: usize, n: usize, n_out: usize) -> Self {
        let mut pre = RealMatrix::zeros(m, m_out);
        for x in 0..m {
            for w in 0..m_out {
                pre[(x, w)] = 1.0 / m as f64;
            }
        }
        let mut e = RealMatrix::zeros(n_out, n);
        for i in 0..n_out {
            for j in 0..n {
                e[(i, j)] = 1.0 / n_out as f64;
            }
        }
        ClassicalSuperchannel {
            pre,
            post: vec![vec![e; m_out]; m],
        }
    }

    pub fn pre(&self) -> &RealMatrix {
        &self.pre
    }

    pub fn post(&self, x: usize, w: usize) -> &RealMatrix {
        &self.post[x][w]
    }

    /// `|X|` of the channels it accepts.
    pub fn input_alphabet(&self) -> usize {
        self.pre.rows()
    }

    /// `|X'|` of the channels it produces.
    pub fn output_alphabet(&self) -> usize {
        self.pre.cols()
    }

    pub fn channel_output_in(&self) -> usize {
        self.post[0][0].cols()
    }

    pub fn channel_output_out(&self) -> usize {
        self.post[0][0].rows()
    }
}

/// `Θ[N]`: column `w` is `Σ_x s_{x|w} E_{xw} p_x`.
pub fn apply_superchannel(
    theta: &ClassicalSuperchannel,
    channel: &ClassicalChannel,
) -> Result<ClassicalChannel> {
    apply_superchannel_with_side(theta, channel, 1)
}

/// `(Θ ⊗ 1)[N]` for a channel `N : X → Y ⊗ Z` with `|Z| = side_dim`
/// (output index `y * side_dim + z`); `E_{xw}` acts on `Y` only.
pub fn apply_superchannel_with_side(
    theta: &ClassicalSuperchannel,
    channel: &ClassicalChannel,
    side_dim: usize,
) -> Result<ClassicalChannel> {
    let (m, m2) = (theta.input_alphabet(), theta.output_alphabet());
    let (n_in, n_out) = (theta.channel_output_in(), theta.channel_output_out());
    if side_dim == 0 || channel.input_dim() != m || channel.output_dim() != n_in * side_dim {
        return Err(Error::domain(format!(
            "superchannel expects a {}x{m} channel, got {}x{}",
            n_in * side_dim,
            channel.output_dim(),
            channel.input_dim()
        )));
    }
    let side = RealMatrix::identity(side_dim);
    let mut columns = Vec::with_capacity(m2);
    for w in 0..m2 {
        let mut col = vec![0.0; n_out * side_dim];
        for x in 0..m {
            let s = theta.pre[(x, w)];
            if s == 0.0 {
                continue;
            }
            let e = if side_dim == 1 {
                theta.post[x][w].clone()
            } else {
                theta.post[x][w].kron(&side)
            };
            let image = e.mul_vec(channel.column(x))?;
            for (c, v) in col.iter_mut().zip(image) {
                *c += s * v;
            }
        }
        columns.push(col);
    }
    Ok(ClassicalChannel {
        n: n_out * side_dim,
        columns,
    })
}

/// A mixing superchannel taking `N` to `M`, built from a holding
/// certificate: pre-processing `S` and `E_{xw} = D_w P_x`, where `P_x`
/// sorts `p_x` and `D_w` transfers `Σ_x s_{x|w} p_x↓` onto `q_w`.
pub fn realize_mixing(
    n: &ClassicalChannel,
    m: &ClassicalChannel,
    cert: &MajorizationCertificate,
) -> Result<ClassicalSuperchannel> {
    let s = match (&cert.relation, &cert.stochastic) {
        (Relation::Holds, Some(s)) => s,
        _ => return Err(Error::precondition("certificate does not assert N ≻ M")),
    };
    if s.rows() != n.input_dim() || s.cols() != m.input_dim() {
        return Err(Error::precondition(
            "certificate matrix does not match the channels' input sizes",
        ));
    }
    if n.output_dim() != m.output_dim() {
        return Err(Error::domain("output dimensions differ"));
    }
    let sorted = n.sorted_columns();
    let sorters: Vec<DoublyStochasticMatrix> = n
        .columns
        .iter()
        .map(|c| DoublyStochasticMatrix::permutation(&sorting_permutation(c)))
        .collect();
    let mut post = vec![Vec::with_capacity(m.input_dim()); n.input_dim()];
    for w in 0..m.input_dim() {
        let mix = mixture(&sorted, &s.column(w));
        if !majorizes_slices(&mix, m.column(w), 1e-7) {
            return Err(Error::precondition(format!(
                "certificate column {w} does not majorize q_{w}"
            )));
        }
        let d = vector::t_transform_chain(&mix, m.column(w), 1e-7)?;
        for (x, sorter) in sorters.iter().enumerate() {
            post[x].push(d.compose(sorter)?.into());
        }
    }
    let theta = ClassicalSuperchannel::new(s.clone(), post)?;
    let image = apply_superchannel(&theta, n)?;
    let err = image.max_abs_diff(m);
    if err > 1e-7 {
        return Err(Error::Internal(format!(
            "realized superchannel misses M by {err:e}"
        )));
    }
    Ok(theta)
}

/// Every post-processing channel that is actually used (`s_{x|w} > 1e-12`)
/// is doubly stochastic.
pub fn is_mixing_superchannel(theta: &ClassicalSuperchannel) -> bool {
    (0..theta.input_alphabet()).all(|x| {
        (0..theta.output_alphabet())
            .all(|w| theta.pre[(x, w)] <= 1e-12 || theta.post[x][w].is_doubly_stochastic(SUM_TOL))
    })
}

/// `Θ[R] = R'`: the uniform channel is mapped to the uniform channel.
pub fn is_uniformity_preserving(theta: &ClassicalSuperchannel) -> bool {
    let r = ClassicalChannel::uniform(theta.channel_output_in(), theta.input_alphabet());
    let Ok(out) = apply_superchannel(theta, &r) else {
        return false;
    };
    let target = ClassicalChannel::uniform(theta.channel_output_out(), theta.output_alphabet());
    out.max_abs_diff(&target) <= tol::cmp_tol()
}

/// `N : X → Y ⊗ Z` is marginally uniform on `Y` when every output column
/// has the form `u^Y ⊗ r`.
pub fn is_marginally_uniform_classical(channel: &ClassicalChannel, y_dim: usize) -> bool {
    if y_dim == 0 || channel.output_dim() % y_dim != 0 {
        return false;
    }
    let z_dim = channel.output_dim() / y_dim;
    let tol = tol::cmp_tol();
    channel.columns.iter().all(|c| {
        (0..z_dim).all(|z| {
            let reference = c[z];
            (1..y_dim).all(|y| (c[y * z_dim + z] - reference).abs() <= tol)
        })
    })
}

/// Applies `Θ ⊗ 1` to `u^Y ⊗ id^{X→Z}` and tests marginal uniformity of the
/// result, the single-instance test for complete uniformity preservation.
pub fn is_completely_uniformity_preserving(theta: &ClassicalSuperchannel) -> Result<bool> {
    let probe = uniform_tensor_identity(theta.channel_output_in(), theta.input_alphabet());
    let out = apply_superchannel_with_side(theta, &probe, theta.input_alphabet())?;
    Ok(is_marginally_uniform_classical(
        &out,
        theta.channel_output_out(),
    ))
}

/// `u^Y ⊗ id^{X→Z}` with `|Z| = |X| = m`, output index `y * m + z`.
pub fn uniform_tensor_identity(n: usize, m: usize) -> ClassicalChannel {
    let u = ProbVector::uniform(n);
    ClassicalChannel {
        n: n * m,
        columns: (0..m)
            .map(|x| kron(u.as_slice(), ProbVector::point_mass(m, x).as_slice()))
            .collect(),
    }
}

/// Closed-form test of `N ≻ M` for a two-column `N`.
///
/// With sorted columns `p_1, p_2` and `d_k = ‖p_1‖_(k) - ‖p_2‖_(k)`, each
/// column `q_w` needs some `t ∈ [0, 1]` with
/// `t d_k ≥ ‖q_w‖_(k) - ‖p_2‖_(k)` at every level; the levels with
/// positive, negative and zero `d_k` give a lower bound `μ_w`, an upper
/// bound `ν_w` and direct checks. An empty positive (negative) set means
/// `μ_w = 0` (`ν_w = 1`).
pub fn two_column_analytic(n: &ClassicalChannel, m: &ClassicalChannel) -> Result<bool> {
    if n.input_dim() != 2 {
        return Err(Error::domain(format!(
            "two-column test needs exactly 2 inputs, got {}",
            n.input_dim()
        )));
    }
    if n.output_dim() != m.output_dim() {
        return Err(Error::domain("output dimensions differ"));
    }
    let tol = tol::cmp_tol();
    let a = ky_fan_profile(n.column(0));
    let b = ky_fan_profile(n.column(1));
    for q in &m.columns {
        let c = ky_fan_profile(q);
        let mut mu = 0.0f64;
        let mut nu = 1.0f64;
        for k in 0..a.len() {
            let d = a[k] - b[k];
            let rhs = c[k] - b[k] - tol;
            if d > 1e-12 {
                mu = mu.max(rhs / d);
            } else if d < -1e-12 {
                nu = nu.min(rhs / d);
            } else if rhs > 0.0 {
                return Ok(false);
            }
        }
        if mu > nu {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `p ≻ M` iff `p` majorizes the optimal upper bound of `M`'s columns.
pub fn single_column_analytic(p: &ProbVector, m: &ClassicalChannel) -> Result<bool> {
    let n = p.dim().max(m.output_dim());
    let padded = embed_output(m, n)?;
    let r = optimal_upper_bound(&padded.column_vectors())?;
    Ok(vector::majorizes_vector(&p.padded(n), &r))
}

/// Joint vectors realizing `N ≻ M` as a conditional-majorization instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bridge {
    pub holds: bool,
    pub p: Option<ProbVector>,
    pub q: Option<ProbVector>,
    pub stochastic: Option<RealMatrix>,
}

impl Bridge {
    /// Checks `Σ_x s_{w|x} p_x p_x ≻ q_w q_w` for every `w`, where
    /// `s_{w|x} = r̃_{x|w} q_w / p_x`; terms with `p_x = 0` vanish.
    pub fn verify(&self, n: &ClassicalChannel, m: &ClassicalChannel) -> bool {
        let (Some(p), Some(q), Some(r)) = (&self.p, &self.q, &self.stochastic) else {
            return !self.holds;
        };
        let sorted = n.sorted_columns();
        (0..m.input_dim()).all(|w| {
            let mut lhs = vec![0.0; n.output_dim()];
            for (x, col) in sorted.iter().enumerate() {
                let px = p.as_slice()[x];
                if px <= 0.0 {
                    continue;
                }
                let s_wx = r[(x, w)] * q.as_slice()[w] / px;
                for (l, v) in lhs.iter_mut().zip(col) {
                    *l += s_wx * px * v;
                }
            }
            let rhs: Vec<f64> = m.column(w).iter().map(|v| v * q.as_slice()[w]).collect();
            majorizes_slices(&lhs, &rhs, tol::cmp_tol())
        })
    }
}

/// From a holding certificate `r̃`, takes `q` uniform on the inputs of `M`
/// and `p_x = Σ_w r̃_{x|w} q_w`.
pub fn conditional_majorization_bridge(
    n: &ClassicalChannel,
    m: &ClassicalChannel,
) -> Result<Bridge> {
    let cert = channel_majorizes(n, m)?;
    let Some(r) = cert.stochastic.filter(|_| cert.relation == Relation::Holds) else {
        return Ok(Bridge {
            holds: false,
            p: None,
            q: None,
            stochastic: None,
        });
    };
    let q = ProbVector::uniform(m.input_dim());
    let p: Vec<f64> = (0..n.input_dim())
        .map(|x| {
            (0..m.input_dim())
                .map(|w| r[(x, w)] * q.as_slice()[w])
                .sum()
        })
        .collect();
    Ok(Bridge {
        holds: true,
        p: Some(ProbVector::new(p)?),
        q: Some(q),
        stochastic: Some(r),
    })
}
