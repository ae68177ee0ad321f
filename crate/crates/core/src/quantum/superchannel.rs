use num_complex::Complex64;

use super::channel::{is_conditionally_unital, is_marginally_uniform, QuantumChannel};
use super::matrix::ComplexMatrix;
use crate::classical::ClassicalSuperchannel;
use crate::error::{Error, Result};

/// Standard form `Θ[N] = E ∘ (id_R ⊗ N) ∘ V` of a superchannel taking
/// channels `A → B` to channels `A' → B'`: an isometry `V : A' → R ⊗ A`
/// and a channel `E : R ⊗ B → B'`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumSuperchannelPieces {
    v: ComplexMatrix,
    dim_r: usize,
    e: QuantumChannel,
}

impl QuantumSuperchannelPieces {
    pub fn new(v: ComplexMatrix, dim_r: usize, e: QuantumChannel) -> Result<Self> {
        if dim_r == 0 || v.rows() % dim_r != 0 || e.in_dim() % dim_r != 0 {
            return Err(Error::domain("memory dimension does not divide V and E"));
        }
        let gram = v.adjoint().mul(&v)?;
        if gram.max_abs_diff(&ComplexMatrix::identity(v.cols())) > 1e-9 {
            return Err(Error::domain("V is not an isometry"));
        }
        Ok(QuantumSuperchannelPieces { v, dim_r, e })
    }

    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn e(&self) -> &QuantumChannel {
        &self.e
    }

    pub fn dim_r(&self) -> usize {
        self.dim_r
    }

    /// `|A|`, the input of the channels the superchannel accepts.
    pub fn dim_a(&self) -> usize {
        self.v.rows() / self.dim_r
    }

    /// `|B|`, the output of the channels the superchannel accepts.
    pub fn dim_b(&self) -> usize {
        self.e.in_dim() / self.dim_r
    }

    /// `Θ[N]`.
    pub fn apply(&self, n: &QuantumChannel) -> Result<QuantumChannel> {
        self.apply_with_side(n, 1)
    }

    /// `(Θ ⊗ 1)[N]` for `N : A → B ⊗ S` with `|S| = side_dim`; the result
    /// maps `A' → B' ⊗ S`.
    pub fn apply_with_side(&self, n: &QuantumChannel, side_dim: usize) -> Result<QuantumChannel> {
        if n.in_dim() != self.dim_a() || n.out_dim() != self.dim_b() * side_dim {
            return Err(Error::domain(format!(
                "superchannel accepts channels {}→{}x{side_dim}, got {}→{}",
                self.dim_a(),
                self.dim_b(),
                n.in_dim(),
                n.out_dim()
            )));
        }
        let id_r = ComplexMatrix::identity(self.dim_r);
        let id_s = ComplexMatrix::identity(side_dim);
        let mut kraus = Vec::with_capacity(self.e.kraus().len() * n.kraus().len());
        for l in self.e.kraus() {
            let l = l.kron(&id_s);
            for k in n.kraus() {
                let inner = id_r.kron(k).mul(&self.v)?;
                kraus.push(l.mul(&inner)?);
            }
        }
        QuantumChannel::from_kraus(kraus)
    }
}

/// `u^B ⊗ id^{A→S}` with outputs ordered `B` then `S`.
pub fn uniform_tensor_identity(dim_a: usize, dim_b: usize) -> QuantumChannel {
    let s = Complex64::new(1.0 / (dim_b as f64).sqrt(), 0.0);
    let kraus = (0..dim_b)
        .map(|b| {
            let mut ket = ComplexMatrix::zeros(dim_b, 1);
            ket[(b, 0)] = s;
            ket.kron(&ComplexMatrix::identity(dim_a))
        })
        .collect();
    QuantumChannel::from_kraus(kraus).expect("isometric splitting")
}

/// Conditional unitality of `E`, cross-checked against marginal uniformity
/// of `(Θ ⊗ 1)[u^B ⊗ id^{A→S}]`. The two tests are equivalent for a
/// superchannel whose memory is fully used, so a disagreement is reported
/// as an internal error.
pub fn is_mixing_superchannel_q(pieces: &QuantumSuperchannelPieces) -> Result<bool> {
    let unital = is_conditionally_unital(pieces.e(), pieces.dim_r(), pieces.dim_b())?;
    let probe = uniform_tensor_identity(pieces.dim_a(), pieces.dim_b());
    let out = pieces.apply_with_side(&probe, pieces.dim_a())?;
    let marginal = is_marginally_uniform(&out, pieces.e().out_dim());
    if unital != marginal {
        return Err(Error::Internal(format!(
            "conditional unitality ({unital}) disagrees with marginal uniformity ({marginal})"
        )));
    }
    Ok(unital)
}

/// The measure-prepare superchannel
/// `Θ[N] = c₁(N) M + c₂(N) Q`, `c₁ = Tr[J_V J_N]/m²`, `c₂ = 1 - c₁`,
/// `Q = (mn R' - M)/(mn - 1)`, which takes the isometry `V : A → B` to an
/// arbitrary `M : C → D` whenever `mn ≥ |C||D|` (`m = |A|`, `n = |B|`).
#[derive(Debug, Clone)]
pub struct IsometryMaximality {
    v: QuantumChannel,
    m: QuantumChannel,
    q: QuantumChannel,
}

pub fn isometry_maximality_superchannel(
    v: &QuantumChannel,
    target: &QuantumChannel,
) -> Result<IsometryMaximality> {
    if v.kraus().len() != 1 {
        return Err(Error::domain("V must be given by a single Kraus operator"));
    }
    let (m, n) = (v.in_dim(), v.out_dim());
    let (c, d) = (target.in_dim(), target.out_dim());
    if m * n < c * d {
        return Err(Error::domain(format!(
            "|A||B| = {} is smaller than |C||D| = {}",
            m * n,
            c * d
        )));
    }
    let q = if m * n == 1 {
        target.clone()
    } else {
        let mn = (m * n) as f64;
        let uniform = QuantumChannel::uniform(c, d);
        let choi = uniform
            .choi()
            .scale_real(mn)
            .sub(target.choi())?
            .scale_real(1.0 / (mn - 1.0));
        QuantumChannel::from_choi(choi, c, d)?
    };
    Ok(IsometryMaximality {
        v: v.clone(),
        m: target.clone(),
        q,
    })
}

impl IsometryMaximality {
    fn m_in(&self) -> usize {
        self.v.in_dim()
    }

    /// `(c₁, c₂)` for the channel `N : A → B`.
    pub fn coefficients(&self, n: &QuantumChannel) -> Result<(f64, f64)> {
        if n.in_dim() != self.v.in_dim() || n.out_dim() != self.v.out_dim() {
            return Err(Error::domain("channel does not match V's dimensions"));
        }
        let m = self.m_in() as f64;
        let c1 = self.v.choi().trace_product(n.choi())?.re / (m * m);
        Ok((c1, 1.0 - c1))
    }

    pub fn apply(&self, n: &QuantumChannel) -> Result<QuantumChannel> {
        let (c1, c2) = self.coefficients(n)?;
        let choi = self
            .m
            .choi()
            .scale_real(c1)
            .add(&self.q.choi().scale_real(c2))?;
        QuantumChannel::from_choi(choi, self.m.in_dim(), self.m.out_dim())
    }

    /// `(Θ ⊗ 1)[N]` for `N : A → B ⊗ S`, with Choi matrix
    /// `J_M ⊗ X₁ + J_Q ⊗ X₂`, `X_i = Tr_{AB}[(Π_i ⊗ I_S) J_N]`; the result
    /// maps `C → D ⊗ S`.
    pub fn apply_with_side(&self, n: &QuantumChannel, side_dim: usize) -> Result<QuantumChannel> {
        let (a, b) = (self.v.in_dim(), self.v.out_dim());
        if n.in_dim() != a || n.out_dim() != b * side_dim {
            return Err(Error::domain("channel does not match V's dimensions"));
        }
        let mf = a as f64;
        let pi1 = self.v.choi().scale_real(1.0 / (mf * mf));
        let pi2 = ComplexMatrix::identity(a * b)
            .scale_real(1.0 / mf)
            .sub(&pi1)?;
        let id_s = ComplexMatrix::identity(side_dim);
        let x1 = pi1
            .kron(&id_s)
            .mul(n.choi())?
            .partial_trace(&[a * b, side_dim], 0)?;
        let x2 = pi2
            .kron(&id_s)
            .mul(n.choi())?
            .partial_trace(&[a * b, side_dim], 0)?;
        let choi = self.m.choi().kron(&x1).add(&self.q.choi().kron(&x2))?;
        QuantumChannel::from_choi(choi, self.m.in_dim(), self.m.out_dim() * side_dim)
    }

    /// Standard-form pieces: memory `R = C ⊗ A'` with `A' ≅ A`,
    /// `V|c⟩ = |c⟩ ⊗ m^{-1/2} Σ_a |a⟩|a⟩`, and `E` measuring `A'B` with the
    /// projectors onto `v = Σ_x |x⟩ ⊗ V|x⟩` and its complement before
    /// preparing `M` or `Q` on `C`.
    pub fn pieces(&self) -> Result<QuantumSuperchannelPieces> {
        let (a, b) = (self.v.in_dim(), self.v.out_dim());
        let c = self.m.in_dim();
        let mf = a as f64;

        let amp = Complex64::new(1.0 / mf.sqrt(), 0.0);
        let mut phi = vec![Complex64::new(0.0, 0.0); a * a];
        for x in 0..a {
            phi[x * a + x] = amp;
        }
        let vin = ComplexMatrix::identity(c).kron(&ComplexMatrix::ket(&phi));

        let big_v = &self.v.kraus()[0];
        let mut vvec = vec![Complex64::new(0.0, 0.0); a * b];
        for x in 0..a {
            for y in 0..b {
                vvec[x * b + y] = big_v[(y, x)];
            }
        }
        let vhat: Vec<Complex64> = vvec.iter().map(|z| z / mf.sqrt()).collect();
        let p1 = ComplexMatrix::outer(&vhat, &vhat);
        let p2 = ComplexMatrix::identity(a * b).sub(&p1)?;

        let mut kraus = Vec::new();
        let bra_v = ComplexMatrix::ket(&vhat).adjoint();
        for km in self.m.kraus() {
            kraus.push(km.kron(&bra_v));
        }
        for kq in self.q.kraus() {
            for j in 0..a * b {
                let mut e = ComplexMatrix::zeros(1, a * b);
                e[(0, j)] = Complex64::new(1.0, 0.0);
                kraus.push(kq.kron(&e.mul(&p2)?));
            }
        }
        let e = QuantumChannel::from_kraus(kraus)?;
        QuantumSuperchannelPieces::new(vin, c * a, e)
    }
}

/// A classical superchannel as quantum pieces: memory `R = X ⊗ X'`,
/// `V|w⟩ = Σ_x √s(x|w) |x, w⟩_R |x⟩_A`, and `E` with Kraus operators
/// `√E_{xw}(y'|y) |y'⟩⟨x, w|_R ⟨y|_B`.
pub fn embed_classical_superchannel(
    theta: &ClassicalSuperchannel,
) -> Result<QuantumSuperchannelPieces> {
    let (m, m2) = (theta.input_alphabet(), theta.output_alphabet());
    let (n, n2) = (theta.channel_output_in(), theta.channel_output_out());
    let dim_r = m * m2;
    let mut v = ComplexMatrix::zeros(dim_r * m, m2);
    for w in 0..m2 {
        for x in 0..m {
            let s = theta.pre()[(x, w)];
            v[((x * m2 + w) * m + x, w)] = Complex64::new(s.sqrt(), 0.0);
        }
    }
    let mut kraus = Vec::new();
    for x in 0..m {
        for w in 0..m2 {
            let e = theta.post(x, w);
            for y in 0..n {
                for y2 in 0..n2 {
                    let p = e[(y2, y)];
                    if p > 0.0 {
                        let mut k = ComplexMatrix::zeros(n2, dim_r * n);
                        k[(y2, (x * m2 + w) * n + y)] = Complex64::new(p.sqrt(), 0.0);
                        kraus.push(k);
                    }
                }
            }
        }
    }
    QuantumSuperchannelPieces::new(v, dim_r, QuantumChannel::from_kraus(kraus)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{apply_superchannel, ClassicalChannel};
    use crate::linalg::RealMatrix;
    use crate::sample;

    #[test]
    fn trace_out_memory_is_mixing() {
        let mut rng = sample::rng(41);
        let v = sample::isometry(&mut rng, 4, 2);
        // E = Tr_R ⊗ id_B with R = B = qubit.
        let e = QuantumChannel::uniform(2, 1).tensor(&QuantumChannel::identity(2));
        let pieces = QuantumSuperchannelPieces::new(v, 2, e).unwrap();
        assert!(is_mixing_superchannel_q(&pieces).unwrap());
    }

    #[test]
    fn replacing_by_pure_state_is_not_mixing() {
        let v = ComplexMatrix::identity(4);
        let pure = ComplexMatrix::diag(&[1.0, 0.0]);
        let e = QuantumChannel::replacement(4, &pure).unwrap();
        let pieces = QuantumSuperchannelPieces::new(v, 2, e).unwrap();
        assert!(!is_mixing_superchannel_q(&pieces).unwrap());
    }

    #[test]
    fn identity_target_example() {
        let theta = isometry_maximality_superchannel(
            &QuantumChannel::identity(2),
            &QuantumChannel::uniform(2, 2),
        )
        .unwrap();
        let (c1, c2) = theta.coefficients(&QuantumChannel::identity(2)).unwrap();
        assert!((c1 - 1.0).abs() < 1e-12 && c2.abs() < 1e-12);
        let out = theta.apply(&QuantumChannel::identity(2)).unwrap();
        assert!(out.max_abs_diff(&QuantumChannel::uniform(2, 2)) < 1e-9);
    }

    #[test]
    fn maximality_construction_properties() {
        let mut rng = sample::rng(42);
        let v = QuantumChannel::isometry(sample::isometry(&mut rng, 2, 2)).unwrap();
        for _ in 0..3 {
            let target = sample::quantum_channel(&mut rng, 2, 2, 2);
            let theta = isometry_maximality_superchannel(&v, &target).unwrap();
            assert!(theta.apply(&v).unwrap().max_abs_diff(&target) < 1e-7);
            let r = theta.apply(&QuantumChannel::uniform(2, 2)).unwrap();
            assert!(r.max_abs_diff(&QuantumChannel::uniform(2, 2)) < 1e-7);
            let (c1, c2) = theta.coefficients(&QuantumChannel::uniform(2, 2)).unwrap();
            assert!((c1 - 0.25).abs() < 1e-12 && (c2 - 0.75).abs() < 1e-12);

            let probe = uniform_tensor_identity(2, 2);
            let side = theta.apply_with_side(&probe, 2).unwrap();
            assert!(is_marginally_uniform(&side, 2));

            let pieces = theta.pieces().unwrap();
            assert!(pieces.apply(&v).unwrap().max_abs_diff(&target) < 1e-7);
            let via_pieces = pieces.apply_with_side(&probe, 2).unwrap();
            assert!(via_pieces.max_abs_diff(&side) < 1e-7);
            assert!(is_mixing_superchannel_q(&pieces).unwrap());
        }
    }

    #[test]
    fn maximality_needs_room() {
        let v = QuantumChannel::identity(2);
        let target = QuantumChannel::uniform(3, 3);
        assert!(matches!(
            isometry_maximality_superchannel(&v, &target),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn classical_embedding_matches_classical_action() {
        let mut rng = sample::rng(43);
        let theta = sample::mixing_superchannel(&mut rng, 2, 2, 2);
        let n = sample::channel(&mut rng, 2, 2);
        let pieces = embed_classical_superchannel(&theta).unwrap();
        let quantum = pieces.apply(&QuantumChannel::from_classical(&n)).unwrap();
        let classical = QuantumChannel::from_classical(&apply_superchannel(&theta, &n).unwrap());
        // Classical outputs agree on the diagonal of the Choi matrix.
        for i in 0..4 {
            assert!((quantum.choi()[(i, i)] - classical.choi()[(i, i)]).norm() < 1e-12);
        }
        assert!(is_mixing_superchannel_q(&pieces).unwrap());
    }

    #[test]
    fn embedded_counterexample_is_not_mixing() {
        let pre = RealMatrix::from_rows(&[vec![0.5], vec![0.5]]).unwrap();
        let e1 = RealMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let e2 = RealMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let theta = ClassicalSuperchannel::new(pre, vec![vec![e1], vec![e2]]).unwrap();
        let pieces = embed_classical_superchannel(&theta).unwrap();
        assert!(!is_mixing_superchannel_q(&pieces).unwrap());
        let r = QuantumChannel::from_classical(&ClassicalChannel::uniform(2, 2));
        let out = pieces.apply(&r).unwrap();
        assert!(out.max_abs_diff(&QuantumChannel::uniform(1, 2)) < 1e-12);
    }
}
