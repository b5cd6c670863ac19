//! Model systems: rank-N kicked Hamiltonians `H₀ + Σ_k λ_k |ψ_k⟩⟨ψ_k| Σ_m δ(t − mT)`
//! with polynomial unperturbed spectra, and the spin-1 kicked top.

use alloc::vec::Vec;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{bail, Error, Result};
use crate::math::{floor, powf, sqrt, wrap_tau, TAU};
use crate::op::{c64, unitary_from_hermitian, CMatrix, CVector, HermitianOperator, StateVector, UnitaryOperator};
use crate::tol;

/// Coefficients `β_0..β_p` of `α_n = ℏ Σ_j β_j nʲ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvaluePolynomial {
    beta: Vec<f64>,
}

impl EigenvaluePolynomial {
    /// Trailing zero coefficients are dropped; what remains must have degree
    /// at least one.
    pub fn new(beta: Vec<f64>) -> Result<Self> {
        if beta.iter().any(|b| !b.is_finite()) {
            bail!(Precondition, "polynomial coefficients must be finite");
        }
        let mut beta = beta;
        while beta.last() == Some(&0.0) {
            beta.pop();
        }
        if beta.len() < 2 {
            bail!(
                Precondition,
                "eigenvalue polynomial must have degree >= 1 with nonzero leading coefficient"
            );
        }
        Ok(Self { beta })
    }

    /// `α_n = nℏω`.
    pub fn harmonic(omega: f64) -> Result<Self> {
        Self::new(alloc::vec![0.0, omega])
    }

    /// `α_n = ℏn²`.
    pub fn rotor() -> Self {
        Self {
            beta: alloc::vec![0.0, 0.0, 1.0],
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.beta
    }

    pub fn degree(&self) -> usize {
        self.beta.len() - 1
    }

    /// Horner evaluation of `Σ_j β_j nʲ`.
    pub fn eval(&self, n: f64) -> f64 {
        self.beta.iter().rev().fold(0.0, |acc, &b| acc * n + b)
    }
}

/// `α_n` for `n = 0..D−1`.
pub fn h0_eigenvalues(poly: &EigenvaluePolynomial, hbar: f64, dim: usize) -> Result<Vec<f64>> {
    if dim == 0 {
        bail!(Precondition, "dimension must be at least 1");
    }
    check_hbar(hbar)?;
    Ok((0..dim).map(|n| hbar * poly.eval(n as f64)).collect())
}

fn check_hbar(hbar: f64) -> Result<()> {
    if !(hbar.is_finite() && hbar > 0.0) {
        bail!(Precondition, "hbar must be positive and finite, got {hbar}");
    }
    Ok(())
}

/// Unperturbed eigenphases `θ_n = 2π·frac(α_n T/(2πℏ)) ∈ [0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenphaseSequence {
    thetas: Vec<f64>,
}

impl EigenphaseSequence {
    /// Wrap raw phases; each must already be finite.
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.iter().any(|t| !t.is_finite()) {
            bail!(Precondition, "eigenphases must be finite");
        }
        Ok(Self {
            thetas: thetas.into_iter().map(wrap_tau).collect(),
        })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// `θ_n / 2π` for `n < count`.
    pub fn unit_points(&self, count: usize) -> Vec<f64> {
        self.thetas[..count.min(self.len())]
            .iter()
            .map(|&t| {
                let u = t / TAU;
                if u >= 1.0 {
                    0.0
                } else {
                    u
                }
            })
            .collect()
    }
}

fn frac(x: f64) -> f64 {
    let f = x - floor(x);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

pub fn eigenphase_sequence(alphas: &[f64], period: f64, hbar: f64) -> Result<EigenphaseSequence> {
    check_hbar(hbar)?;
    if !period.is_finite() || alphas.iter().any(|a| !a.is_finite()) {
        bail!(Precondition, "alphas and period must be finite");
    }
    let scale = period / (TAU * hbar);
    let thetas = alphas.iter().map(|&a| TAU * frac(a * scale)).collect();
    EigenphaseSequence::new(thetas)
}

/// One perturbation vector `|ψ_k⟩ = Σ_n a_n|φ_n⟩` with `a_n = c_k n^{−γ}` on
/// the residue class `n ≡ k (mod N)`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationVector {
    gamma: f64,
    offset: usize,
    stride: usize,
    norm_constant: f64,
    amplitudes: CVector,
}

impl PerturbationVector {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Residue `k` (1-based; `k = N` is the class of multiples of `N`).
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// `c_k` in `|a_n| = c_k n^{−γ}`.
    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `|a_n|²` for every basis index.
    pub fn weights(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn in_support(&self, n: usize) -> bool {
        n >= 1 && n < self.dim() && n % self.stride == self.offset % self.stride
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        let first = if self.offset == 0 { self.stride } else { self.offset };
        (first..self.dim()).step_by(self.stride)
    }

    pub fn state(&self) -> StateVector {
        StateVector::new(self.amplitudes.clone())
    }

    /// Multiply `a_n` by `e^{iφ_n}`. Moduli, support and orthogonality are
    /// unchanged.
    pub fn with_phases(&self, phases: &[f64]) -> Result<Self> {
        if phases.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: phases.len(),
            });
        }
        let mut out = self.clone();
        for (a, &p) in out.amplitudes.iter_mut().zip(phases) {
            *a *= Complex64::from_polar(1.0, p);
        }
        Ok(out)
    }
}

pub fn build_perturbation_vectors(gamma: f64, dim: usize, count: usize) -> Result<Vec<PerturbationVector>> {
    if !(gamma.is_finite() && gamma > 0.0) {
        bail!(Precondition, "decay exponent must be positive, got {gamma}");
    }
    if count == 0 {
        bail!(Precondition, "need at least one perturbation vector");
    }
    if count > dim / 2 {
        bail!(
            Precondition,
            "insufficient support: {count} vectors need dimension >= {}, got {dim}",
            2 * count
        );
    }
    let mut out = Vec::with_capacity(count);
    for k in 1..=count {
        let offset = k % count;
        let first = if offset == 0 { count } else { offset };
        let mut amps = CVector::zeros(dim);
        let mut sq = Vec::new();
        for n in (first..dim).step_by(count) {
            let a = powf(n as f64, -gamma);
            amps[n] = c64(a, 0.0);
            sq.push(a * a);
        }
        let c = 1.0 / sqrt(crate::math::pairwise_sum(&sq));
        amps.iter_mut().for_each(|z| *z *= c);
        out.push(PerturbationVector {
            gamma,
            offset: k,
            stride: count,
            norm_constant: c,
            amplitudes: amps,
        });
    }
    Ok(out)
}

/// Order of the free evolution and the kick within one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ordering {
    /// `V = K·U`: evolve freely, then kick.
    #[default]
    PostKick,
    /// `V = U·K`: kick, then evolve freely.
    PreKick,
}

/// Sign `σ` in the kick `K = exp(σ (i/ℏ) Σ λ_k P_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KickSign {
    #[default]
    Negative,
    Positive,
}

impl KickSign {
    pub fn sigma(self) -> f64 {
        match self {
            KickSign::Negative => -1.0,
            KickSign::Positive => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KickedSystemSpec {
    dim: usize,
    poly: EigenvaluePolynomial,
    period: f64,
    hbar: f64,
    strengths: Vec<f64>,
    vectors: Vec<PerturbationVector>,
    ordering: Ordering,
    sign: KickSign,
}

impl KickedSystemSpec {
    pub fn new(
        poly: EigenvaluePolynomial,
        period: f64,
        hbar: f64,
        strengths: Vec<f64>,
        vectors: Vec<PerturbationVector>,
    ) -> Result<Self> {
        check_hbar(hbar)?;
        if !period.is_finite() {
            bail!(Precondition, "kick period must be finite");
        }
        let Some(first) = vectors.first() else {
            bail!(Precondition, "need at least one perturbation vector");
        };
        let dim = first.dim();
        if strengths.len() != vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: vectors.len(),
                found: strengths.len(),
            });
        }
        if strengths.iter().any(|l| !l.is_finite()) {
            bail!(Precondition, "kick strengths must be finite");
        }
        if vectors.len() > dim {
            bail!(Precondition, "rank {} exceeds dimension {dim}", vectors.len());
        }
        for v in &vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, w) in vectors.iter().enumerate().skip(i) {
                let g = u.amplitudes.dotc(&w.amplitudes);
                let target = if i == j { 1.0 } else { 0.0 };
                let dev = (g - c64(target, 0.0)).norm();
                if dev > tol::PERTURBATION_ORTHO {
                    bail!(
                        Contract,
                        "perturbation vectors not orthonormal: |<psi_{i}|psi_{j}> - delta| = {dev:e}"
                    );
                }
            }
        }
        Ok(Self {
            dim,
            poly,
            period,
            hbar,
            strengths,
            vectors,
            ordering: Ordering::default(),
            sign: KickSign::default(),
        })
    }

    pub fn with_ordering(mut self, ordering: Ordering) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn with_sign(mut self, sign: KickSign) -> Self {
        self.sign = sign;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn poly(&self) -> &EigenvaluePolynomial {
        &self.poly
    }
    pub fn period(&self) -> f64 {
        self.period
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn strengths(&self) -> &[f64] {
        &self.strengths
    }
    pub fn vectors(&self) -> &[PerturbationVector] {
        &self.vectors
    }
    pub fn ordering(&self) -> Ordering {
        self.ordering
    }
    pub fn sign(&self) -> KickSign {
        self.sign
    }
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.dim).map(|n| self.hbar * self.poly.eval(n as f64)).collect()
    }

    pub fn eigenphases(&self) -> EigenphaseSequence {
        eigenphase_sequence(&self.eigenvalues(), self.period, self.hbar)
            .expect("spec invariants guarantee finite phases")
    }

    /// `U = diag(e^{−iα_nT/ℏ}) = diag(e^{−iθ_n})`.
    pub fn free_propagator(&self) -> UnitaryOperator {
        let phases: Vec<f64> = self.eigenphases().thetas().iter().map(|t| -t).collect();
        UnitaryOperator::from_phases(&phases)
    }

    /// `e^{σiλ_k/ℏ} − 1`.
    pub fn kick_factor(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.sign.sigma() * self.strengths[k] / self.hbar) - c64(1.0, 0.0)
    }

    pub fn projector(&self, k: usize) -> CMatrix {
        let v = &self.vectors[k].amplitudes;
        v * v.adjoint()
    }

    /// `W = Σ_k λ_k P_k`.
    pub fn kick_hermitian(&self) -> HermitianOperator {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for k in 0..self.rank() {
            m += self.projector(k).map(|z| z * self.strengths[k]);
        }
        HermitianOperator::new(m).expect("sum of real multiples of projectors is Hermitian")
    }

    /// Closed form `K = I + Σ_k (e^{σiλ_k/ℏ} − 1) P_k`.
    pub fn kick(&self) -> Result<UnitaryOperator> {
        let mut m = CMatrix::identity(self.dim, self.dim);
        for k in 0..self.rank() {
            let f = self.kick_factor(k);
            m += self.projector(k).map(|z| z * f);
        }
        UnitaryOperator::new(m)
    }

    /// The same kick through a dense eigendecomposition of `W`.
    pub fn kick_dense(&self) -> Result<UnitaryOperator> {
        unitary_from_hermitian(&self.kick_hermitian(), -self.sign.sigma() / self.hbar)
    }

    /// `R_k` with `V − U = Σ_k R_k`: `(e^{σiλ_k/ℏ} − 1) P_k U` post-kick,
    /// `(e^{σiλ_k/ℏ} − 1) U P_k` pre-kick.
    pub fn kick_residuals(&self) -> Vec<CMatrix> {
        let u = self.free_propagator();
        (0..self.rank())
            .map(|k| {
                let f = self.kick_factor(k);
                let p = self.projector(k);
                let r = match self.ordering {
                    Ordering::PostKick => p * u.matrix(),
                    Ordering::PreKick => u.matrix() * p,
                };
                r.map(|z| z * f)
            })
            .collect()
    }

    /// Map an eigenphase `x` of `V` to the frame in which the cotangent
    /// identity reads `Σ|a_n|² cot((x'−θ_n)/2) = cot(λ_eff/2ℏ)`: `x' = −x mod 2π`.
    /// Eigenvalues of `V†` are `e^{ix'}`, and `V†` has the form
    /// `diag(e^{iθ_n})·exp(i λ_eff P/ℏ)` up to similarity.
    pub fn combescure_phase(x: f64) -> f64 {
        wrap_tau(-x)
    }

    /// `λ_eff/ℏ = −σλ_k/ℏ` for the frame of [`Self::combescure_phase`].
    pub fn effective_lambda_over_hbar(&self, k: usize) -> f64 {
        -self.sign.sigma() * self.strengths[k] / self.hbar
    }
}

pub fn build_floquet(spec: &KickedSystemSpec) -> Result<UnitaryOperator> {
    let u = spec.free_propagator();
    let k = spec.kick()?;
    match spec.ordering {
        Ordering::PostKick => k.compose(&u),
        Ordering::PreKick => u.compose(&k),
    }
}

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `(J_x, J_y, J_z)` with `(J_i)_{lm} = −iε_{ilm}` (ℏ = 1).
pub fn spin1_generators() -> [CMatrix; 3] {
    let mut out = [CMatrix::zeros(3, 3), CMatrix::zeros(3, 3), CMatrix::zeros(3, 3)];
    for (i, m) in out.iter_mut().enumerate() {
        for l in 0..3 {
            for n in 0..3 {
                let e = levi_civita(i, l, n);
                if e != 0 {
                    m[(l, n)] = c64(0.0, -(e as f64));
                }
            }
        }
    }
    out
}

fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Gell-Mann matrix `λ_k`, `k = 1..=8`.
pub fn gell_mann(k: usize) -> Result<CMatrix> {
    let mut m = CMatrix::zeros(3, 3);
    let i = c64(0.0, 1.0);
    let one = c64(1.0, 0.0);
    match k {
        1 => {
            m[(0, 1)] = one;
            m[(1, 0)] = one;
        }
        2 => {
            m[(0, 1)] = -i;
            m[(1, 0)] = i;
        }
        3 => {
            m[(0, 0)] = one;
            m[(1, 1)] = -one;
        }
        4 => {
            m[(0, 2)] = one;
            m[(2, 0)] = one;
        }
        5 => {
            m[(0, 2)] = -i;
            m[(2, 0)] = i;
        }
        6 => {
            m[(1, 2)] = one;
            m[(2, 1)] = one;
        }
        7 => {
            m[(1, 2)] = -i;
            m[(2, 1)] = i;
        }
        8 => {
            // (1/√3) diag(1, 1, −2), written so that (√3/3)·λ₈ is exact.
            m[(0, 0)] = c64(SQRT3 / 3.0, 0.0);
            m[(1, 1)] = c64(SQRT3 / 3.0, 0.0);
            m[(2, 2)] = c64(-2.0 * SQRT3 / 3.0, 0.0);
        }
        _ => bail!(Domain, "Gell-Mann index must be in 1..=8, got {k}"),
    }
    Ok(m)
}

/// `V = e^{−ic₁λ₇T} e^{−ic₄λ₈}`. The factor `e^{−ic₃}` from splitting
/// `J_z² = λ₂² = (2/3)I + (√3/3)λ₈` is a global phase and is dropped.
pub fn build_kicked_top_spin1(c1: f64, c4: f64, period: f64) -> Result<UnitaryOperator> {
    if !(c1.is_finite() && c4.is_finite() && period.is_finite()) {
        bail!(Precondition, "kicked-top parameters must be finite");
    }
    let l7 = HermitianOperator::new(gell_mann(7)?)?;
    let l8 = gell_mann(8)?;
    let rotation = unitary_from_hermitian(&l7, c1 * period)?;
    let diag = DVector::from_iterator(3, (0..3).map(|i| Complex64::from_polar(1.0, -c4 * l8[(i, i)].re)));
    let twist = UnitaryOperator::new(CMatrix::from_diagonal(&diag))?;
    rotation.compose(&twist)
}

/// [`build_kicked_top_spin1`] with the global phase `e^{−ic₃}` restored.
pub fn build_kicked_top_spin1_with_phase(c1: f64, c3: f64, c4: f64, period: f64) -> Result<UnitaryOperator> {
    if !c3.is_finite() {
        bail!(Precondition, "kicked-top parameters must be finite");
    }
    Ok(build_kicked_top_spin1(c1, c4, period)?.with_global_phase(-c3))
}
