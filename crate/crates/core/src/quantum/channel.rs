use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{hermitian_eigen, hermitian_eigenvalues, lambda_max};
use super::matrix::ComplexMatrix;
use crate::classical::ClassicalChannel;
use crate::error::{Error, Result};
use crate::sample;

/// Tolerance for CPTP checks on Choi matrices and Kraus completeness.
pub const CPTP_TOL: f64 = 1e-9;
/// Largest input dimension accepted by [`h_min_state_form`].
pub const STATE_FORM_MAX_INPUT: usize = 6;

/// A CPTP map `A → B` kept both as Kraus operators (`|B| × |A|`) and as
/// its unnormalized Choi matrix `J = Σ_{x,y} |x⟩⟨y| ⊗ N(|x⟩⟨y|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelJson", into = "ChannelJson")]
pub struct QuantumChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
    choi: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    #[serde(rename = "in")]
    in_dim: usize,
    #[serde(rename = "out")]
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl TryFrom<ChannelJson> for QuantumChannel {
    type Error = Error;

    fn try_from(raw: ChannelJson) -> Result<Self> {
        let ch = QuantumChannel::from_kraus(raw.kraus)?;
        if ch.in_dim != raw.in_dim || ch.out_dim != raw.out_dim {
            return Err(Error::domain(format!(
                "declared {}→{} but Kraus operators are {}→{}",
                raw.in_dim, raw.out_dim, ch.in_dim, ch.out_dim
            )));
        }
        Ok(ch)
    }
}

impl From<QuantumChannel> for ChannelJson {
    fn from(c: QuantumChannel) -> Self {
        ChannelJson {
            in_dim: c.in_dim,
            out_dim: c.out_dim,
            kraus: c.kraus,
        }
    }
}

/// `J = Σ_{x,y} |x⟩⟨y| ⊗ N(|x⟩⟨y|)`, ordered input first.
pub fn choi_matrix(kraus: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let first = kraus
        .first()
        .ok_or_else(|| Error::domain("at least one Kraus operator is required"))?;
    let (b, a) = (first.rows(), first.cols());
    if kraus.iter().any(|k| k.rows() != b || k.cols() != a) {
        return Err(Error::domain("Kraus operators must share one shape"));
    }
    let mut j = ComplexMatrix::zeros(a * b, a * b);
    for k in kraus {
        // Column (x, b) of the vectorized operator is K[b, x].
        let vec: Vec<Complex64> = (0..a * b).map(|idx| k[(idx % b, idx / b)]).collect();
        for r in 0..a * b {
            if vec[r] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..a * b {
                j[(r, c)] += vec[r] * vec[c].conj();
            }
        }
    }
    Ok(j)
}

impl QuantumChannel {
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let choi = choi_matrix(&kraus)?;
        let (out_dim, in_dim) = (kraus[0].rows(), kraus[0].cols());
        let mut completeness = ComplexMatrix::zeros(in_dim, in_dim);
        for k in &kraus {
            completeness = completeness.add(&k.adjoint().mul(k)?)?;
        }
        let err = completeness.max_abs_diff(&ComplexMatrix::identity(in_dim));
        if err > CPTP_TOL {
            return Err(Error::domain(format!(
                "Kraus operators are not trace preserving (deviation {err:e})"
            )));
        }
        Ok(QuantumChannel {
            in_dim,
            out_dim,
            kraus,
            choi,
        })
    }

    /// Builds the channel from a Choi matrix on `A ⊗ B`, checking complete
    /// positivity and trace preservation. Kraus operators come from the
    /// eigen-decomposition `K_j[b, x] = √λ_j φ_j[x |B| + b]`.
    pub fn from_choi(choi: ComplexMatrix, in_dim: usize, out_dim: usize) -> Result<Self> {
        if choi.rows() != in_dim * out_dim || !choi.is_square() {
            return Err(Error::domain("Choi matrix has the wrong size"));
        }
        let (vals, vecs) = hermitian_eigen(&choi)?;
        let floor = -CPTP_TOL * choi.trace().re.abs().max(1.0);
        if vals.iter().any(|&v| v < floor) {
            return Err(Error::domain("Choi matrix is not positive semidefinite"));
        }
        let marginal = choi.partial_trace(&[in_dim, out_dim], 1)?;
        if marginal.max_abs_diff(&ComplexMatrix::identity(in_dim)) > CPTP_TOL {
            return Err(Error::domain("Choi matrix is not trace preserving"));
        }
        let top = vals.iter().copied().fold(0.0, f64::max);
        let kraus: Vec<ComplexMatrix> = vals
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 1e-14 * top.max(1.0))
            .map(|(j, &v)| {
                let s = v.sqrt();
                ComplexMatrix::from_fn(out_dim, in_dim, |b, x| vecs[(x * out_dim + b, j)] * s)
            })
            .collect();
        Ok(QuantumChannel {
            in_dim,
            out_dim,
            kraus,
            choi,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self::from_kraus(vec![ComplexMatrix::identity(d)]).expect("identity is a channel")
    }

    /// The isometry channel `ρ ↦ V ρ V†`.
    pub fn isometry(v: ComplexMatrix) -> Result<Self> {
        Self::from_kraus(vec![v])
    }

    /// `R^{A→B}`: discards the input and prepares `I/|B|`.
    pub fn uniform(a: usize, b: usize) -> Self {
        let s = Complex64::new(1.0 / (b as f64).sqrt(), 0.0);
        let kraus = (0..a)
            .flat_map(|x| {
                (0..b).map(move |y| {
                    let mut k = ComplexMatrix::zeros(b, a);
                    k[(y, x)] = s;
                    k
                })
            })
            .collect();
        Self::from_kraus(kraus).expect("uniform channel is a channel")
    }

    /// Discards the input and prepares `rho`.
    pub fn replacement(a: usize, rho: &ComplexMatrix) -> Result<Self> {
        let (vals, vecs) = hermitian_eigen(rho)?;
        if vals.iter().any(|&v| v < -CPTP_TOL) || (rho.trace().re - 1.0).abs() > CPTP_TOL {
            return Err(Error::domain("replacement output is not a density matrix"));
        }
        let b = rho.rows();
        let mut kraus = Vec::new();
        for (j, &v) in vals.iter().enumerate() {
            if v <= 0.0 {
                continue;
            }
            for x in 0..a {
                kraus.push(ComplexMatrix::from_fn(b, a, |r, c| {
                    if c == x {
                        vecs[(r, j)] * v.sqrt()
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                }));
            }
        }
        Self::from_kraus(kraus)
    }

    /// Classical channel as a measure-and-prepare map with Kraus operators
    /// `√p(y|x) |y⟩⟨x|`.
    pub fn from_classical(channel: &ClassicalChannel) -> Self {
        let (n, m) = (channel.output_dim(), channel.input_dim());
        let mut kraus = Vec::new();
        for x in 0..m {
            for (y, &p) in channel.column(x).iter().enumerate() {
                if p > 0.0 {
                    let mut k = ComplexMatrix::zeros(n, m);
                    k[(y, x)] = Complex64::new(p.sqrt(), 0.0);
                    kraus.push(k);
                }
            }
        }
        Self::from_kraus(kraus).expect("classical channels are channels")
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.in_dim || !rho.is_square() {
            return Err(Error::domain(format!(
                "channel expects a {0}x{0} input",
                self.in_dim
            )));
        }
        let mut out = ComplexMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out = out.add(&k.sandwich(rho)?)?;
        }
        Ok(out)
    }

    /// `N ⊗ M` on `A_N A_M → B_N B_M`.
    pub fn tensor(&self, other: &QuantumChannel) -> QuantumChannel {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| a.kron(b)))
            .collect();
        Self::from_kraus(kraus).expect("tensor product of channels")
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &QuantumChannel) -> Result<QuantumChannel> {
        if after.in_dim != self.out_dim {
            return Err(Error::domain("composition dimension mismatch"));
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * after.kraus.len());
        for b in &after.kraus {
            for a in &self.kraus {
                kraus.push(b.mul(a)?);
            }
        }
        Self::from_kraus(kraus)
    }

    /// Largest entrywise difference of the Choi matrices.
    pub fn max_abs_diff(&self, other: &QuantumChannel) -> f64 {
        self.choi.max_abs_diff(&other.choi)
    }
}

/// `H_min(N) = -log₂ λ_max(J_N)`, i.e. `log|B| - D_max(N ‖ R)`.
pub fn h_min_channel(channel: &QuantumChannel) -> Result<f64> {
    Ok(-lambda_max(channel.choi())?.log2())
}

/// `log₂ λ_max((Y ⊗ I) J (Y ⊗ I)†)` with `Y = (X X†)^{+1/2} X`, the
/// max-divergence of `(id ⊗ N)(ψ_X)` from `ψ_R ⊗ I` for the pure state
/// with amplitude matrix `X`.
fn state_form_objective(choi: &ComplexMatrix, x: &ComplexMatrix, out_dim: usize) -> Result<f64> {
    let rho_r = x.mul(&x.adjoint())?;
    let top = lambda_max(&rho_r)?;
    let pinv_sqrt = super::eigen::hermitian_function(&rho_r, |v| {
        if v > 1e-12 * top {
            1.0 / v.sqrt()
        } else {
            0.0
        }
    })?;
    let y = pinv_sqrt.mul(x)?.kron(&ComplexMatrix::identity(out_dim));
    Ok(lambda_max(&y.sandwich(choi)?)?.log2())
}

fn normalized(x: &ComplexMatrix) -> ComplexMatrix {
    x.scale_real(1.0 / x.frobenius_norm())
}

/// `min_ψ H_min(B|R)_{(id⊗N)(ψ)}` over pure `ψ^{RA}`, by multi-start
/// projected gradient ascent of the max-divergence. The first start is the
/// maximally entangled state.
pub fn h_min_state_form(channel: &QuantumChannel) -> Result<f64> {
    h_min_state_form_seeded(channel, 0x5eed)
}

pub fn h_min_state_form_seeded(channel: &QuantumChannel, seed: u64) -> Result<f64> {
    const RESTARTS: usize = 20;
    const STEPS: usize = 500;
    const STEP: f64 = 0.05;
    const FD: f64 = 1e-6;

    let m = channel.in_dim();
    if m > STATE_FORM_MAX_INPUT {
        return Err(Error::Resource(format!(
            "state-form optimization limited to |A| ≤ {STATE_FORM_MAX_INPUT}, got {m}"
        )));
    }
    let choi = channel.choi();
    let out = channel.out_dim();
    let f = |x: &ComplexMatrix| state_form_objective(choi, x, out);
    let mut rng = sample::rng(seed);
    let mut best = f64::NEG_INFINITY;
    for restart in 0..RESTARTS {
        let mut x = if restart == 0 {
            normalized(&ComplexMatrix::identity(m))
        } else {
            normalized(&sample::gaussian_matrix(&mut rng, m, m))
        };
        let mut value = f(&x)?;
        let mut step = STEP;
        for _ in 0..STEPS {
            let mut grad = ComplexMatrix::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    for dir in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
                        let mut xp = x.clone();
                        xp[(i, j)] += dir * FD;
                        grad[(i, j)] += dir * ((f(&xp)? - value) / FD);
                    }
                }
            }
            let gnorm = grad.frobenius_norm();
            if gnorm < 1e-9 {
                break;
            }
            let mut improved = false;
            while step > 1e-8 {
                let candidate = normalized(&x.add(&grad.scale_real(step / gnorm))?);
                let v = f(&candidate)?;
                if v > value {
                    x = candidate;
                    value = v;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        best = best.max(value);
    }
    Ok(-best)
}

/// Density matrices spanning the Hermitian operators on `C^d`: the maximally
/// mixed state and `(I + G/‖G‖₂)/d` for every generalized Gell-Mann `G`.
fn spanning_states(d: usize) -> Vec<ComplexMatrix> {
    let mut gens = Vec::new();
    for j in 0..d {
        for k in j + 1..d {
            let mut s = ComplexMatrix::zeros(d, d);
            s[(j, k)] = Complex64::new(1.0, 0.0);
            s[(k, j)] = Complex64::new(1.0, 0.0);
            gens.push(s);
            let mut a = ComplexMatrix::zeros(d, d);
            a[(j, k)] = Complex64::new(0.0, -1.0);
            a[(k, j)] = Complex64::new(0.0, 1.0);
            gens.push(a);
        }
    }
    for l in 1..d {
        let mut diag = vec![0.0; d];
        for v in diag.iter_mut().take(l) {
            *v = 1.0;
        }
        diag[l] = -(l as f64);
        gens.push(ComplexMatrix::diag(&diag));
    }
    let id = ComplexMatrix::identity(d);
    let mut states = vec![id.scale_real(1.0 / d as f64)];
    for g in gens {
        let shifted = id
            .add(&g.scale_real(1.0 / g.frobenius_norm()))
            .expect("square");
        states.push(shifted.scale_real(1.0 / d as f64));
    }
    states
}

/// `E^{RB→B'}` maps `τ ⊗ u^B` to the maximally mixed state for every state
/// `τ` on `R`; checked on a spanning set of states.
pub fn is_conditionally_unital(e: &QuantumChannel, dim_r: usize, dim_b: usize) -> Result<bool> {
    if dim_r * dim_b != e.in_dim() {
        return Err(Error::domain(format!(
            "channel input {} is not {dim_r} x {dim_b}",
            e.in_dim()
        )));
    }
    let u_b = ComplexMatrix::identity(dim_b).scale_real(1.0 / dim_b as f64);
    let target = ComplexMatrix::identity(e.out_dim()).scale_real(1.0 / e.out_dim() as f64);
    for tau in spanning_states(dim_r) {
        let out = e.apply(&tau.kron(&u_b))?;
        if out.max_abs_diff(&target) > 1e-8 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `N^{A→BC} = u^B ⊗ N^{A→C}`, tested as `J_N = u^B ⊗ Tr_B J_N` with the
/// `B` factor reinserted in place.
pub fn is_marginally_uniform(channel: &QuantumChannel, dim_b: usize) -> bool {
    if dim_b == 0 || channel.out_dim() % dim_b != 0 {
        return false;
    }
    let (a, c) = (channel.in_dim(), channel.out_dim() / dim_b);
    let j = channel.choi();
    let Ok(reduced) = j.partial_trace(&[a, dim_b, c], 1) else {
        return false;
    };
    let rebuilt = ComplexMatrix::from_fn(a * dim_b * c, a * dim_b * c, |r, s| {
        let (ra, rb, rc) = (r / (dim_b * c), (r / c) % dim_b, r % c);
        let (sa, sb, sc) = (s / (dim_b * c), (s / c) % dim_b, s % c);
        if rb == sb {
            reduced[(ra * c + rc, sa * c + sc)] / dim_b as f64
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    rebuilt.max_abs_diff(j) <= 1e-8
}

/// Spectrum of the Choi matrix, exposed for diagnostics.
pub fn choi_spectrum(channel: &QuantumChannel) -> Result<Vec<f64>> {
    hermitian_eigenvalues(channel.choi())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn choi_examples() {
        let j = QuantumChannel::identity(2).choi().clone();
        let mut expected = ComplexMatrix::zeros(4, 4);
        for (r, s) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            expected[(r, s)] = c(1.0, 0.0);
        }
        assert_eq!(j, expected);

        let r = QuantumChannel::uniform(2, 3);
        let expected = ComplexMatrix::identity(6).scale_real(1.0 / 3.0);
        assert!(r.choi().max_abs_diff(&expected) < 1e-15);

        let rho = ComplexMatrix::from_rows(&[
            vec![c(0.7, 0.0), c(0.1, 0.2)],
            vec![c(0.1, -0.2), c(0.3, 0.0)],
        ])
        .unwrap();
        let rep = QuantumChannel::replacement(3, &rho).unwrap();
        assert!(
            rep.choi()
                .max_abs_diff(&ComplexMatrix::identity(3).kron(&rho))
                < 1e-12
        );
        assert!((rep.choi().trace().re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn choi_round_trip() {
        let mut rng = sample::rng(31);
        let n = sample::quantum_channel(&mut rng, 2, 3, 3);
        let back = QuantumChannel::from_choi(n.choi().clone(), 2, 3).unwrap();
        assert!(back.max_abs_diff(&n) < 1e-9);
        let rho = sample::density_matrix(&mut rng, 2, 2);
        assert!(
            back.apply(&rho)
                .unwrap()
                .max_abs_diff(&n.apply(&rho).unwrap())
                < 1e-9
        );
        let bad = n.choi().scale_real(2.0);
        assert!(matches!(
            QuantumChannel::from_choi(bad, 2, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn invalid_kraus_rejected() {
        let k = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(
            QuantumChannel::from_kraus(vec![k]),
            Err(Error::Domain(_))
        ));
        let json = r#"{"in":2,"out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
        let id: QuantumChannel = serde_json::from_str(json).unwrap();
        assert_eq!(id, QuantumChannel::identity(2));
        let lying = r#"{"in":3,"out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
        assert!(serde_json::from_str::<QuantumChannel>(lying).is_err());
    }

    #[test]
    fn h_min_examples() {
        assert!((h_min_channel(&QuantumChannel::identity(2)).unwrap() + 1.0).abs() < 1e-12);
        assert!((h_min_channel(&QuantumChannel::uniform(3, 4)).unwrap() - 2.0).abs() < 1e-12);
        let rho = ComplexMatrix::diag(&[0.6, 0.3, 0.1]);
        let rep = QuantumChannel::replacement(2, &rho).unwrap();
        assert!((h_min_channel(&rep).unwrap() + 0.6f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn state_form_examples() {
        let v = h_min_state_form(&QuantumChannel::identity(2)).unwrap();
        assert!((v + 1.0).abs() < 1e-9);
        let v = h_min_state_form(&QuantumChannel::uniform(2, 3)).unwrap();
        assert!((v - 3f64.log2()).abs() < 1e-9);
        let mut rng = sample::rng(32);
        let n = sample::quantum_channel(&mut rng, 3, 3, 2);
        let exact = h_min_channel(&n).unwrap();
        assert!((h_min_state_form(&n).unwrap() - exact).abs() < 1e-4);
        let big = QuantumChannel::identity(7);
        assert!(matches!(h_min_state_form(&big), Err(Error::Resource(_))));
    }

    #[test]
    fn conditional_unitality_examples() {
        // Tr_R ⊗ id_B on R = B = qubit.
        let discard = QuantumChannel::uniform(2, 1).tensor(&QuantumChannel::identity(2));
        assert!(is_conditionally_unital(&discard, 2, 2).unwrap());
        let mut rng = sample::rng(33);
        let u = sample::unitary(&mut rng, 2);
        let rotate = QuantumChannel::uniform(3, 1).tensor(&QuantumChannel::isometry(u).unwrap());
        assert!(is_conditionally_unital(&rotate, 3, 2).unwrap());
        let pure = ComplexMatrix::diag(&[1.0, 0.0]);
        let replace = QuantumChannel::replacement(4, &pure).unwrap();
        assert!(!is_conditionally_unital(&replace, 2, 2).unwrap());
        assert!(matches!(
            is_conditionally_unital(&replace, 3, 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn marginal_uniformity_examples() {
        // u^B ⊗ id^{A→C}: outputs ordered B then C.
        let probe = QuantumChannel::uniform(1, 2);
        let kraus: Vec<ComplexMatrix> = probe
            .kraus()
            .iter()
            .map(|k| k.kron(&ComplexMatrix::identity(3)))
            .collect();
        let n = QuantumChannel::from_kraus(kraus).unwrap();
        assert!(is_marginally_uniform(&n, 2));
        assert!(!is_marginally_uniform(&QuantumChannel::identity(2), 2));
        assert!(is_marginally_uniform(&QuantumChannel::identity(2), 1));
    }

    #[test]
    fn spanning_states_are_states() {
        for d in 1..5 {
            let states = spanning_states(d);
            assert_eq!(states.len(), d * d);
            for s in states {
                assert!((s.trace().re - 1.0).abs() < 1e-12);
                assert!(hermitian_eigenvalues(&s).unwrap()[0] >= -1e-12);
            }
        }
    }
}
