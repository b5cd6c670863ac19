//! Dense complex operator substrate: Hermitian and unitary operators, state
//! vectors, eigenphase decompositions and trace norms.
//!
//! Eigensolves, the Schur form and the SVD come from `nalgebra`; this module
//! owns the contracts around them (validation at construction, phase
//! canonicalisation, reconstruction checks).

use alloc::format;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::wrap_tau;
use crate::tol;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const EIG_EPS: f64 = f64::EPSILON;

// Iteration budget for the QR-type solvers; a handful of sweeps per
// eigenvalue is typical, so this only trips on genuine stagnation.
fn max_iter(dim: usize) -> usize {
    (200 * dim).max(10_000)
}

pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus, `‖M‖_max`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `‖M†M − I‖_max`.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let g = m.adjoint() * m;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - c64(target, 0.0)).norm());
        }
    }
    worst
}

/// `‖M − M†‖_max`.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Square with finite entries.
pub fn check_square_finite(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    /// Accepts `m` if `‖M − M†‖_max ≤ 1e-12`; the stored matrix is the exact
    /// Hermitian part `(M + M†)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square_finite(&m)?;
        let deviation = hermiticity_deviation(&m);
        if deviation > tol::HERMITIAN {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = (&m + m.adjoint()).map(|z| z * 0.5);
        Ok(Self { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(dim, dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&a| c64(a, 0.0)));
        Self {
            matrix: CMatrix::from_diagonal(&d),
        }
    }

    /// `Σ_k w_k |ψ_k⟩⟨ψ_k|`.
    pub fn from_projectors(dim: usize, terms: &[(f64, &CVector)]) -> Result<Self> {
        let mut m = CMatrix::zeros(dim, dim);
        for (w, v) in terms {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            m += (*v * v.adjoint()).map(|z| z * *w);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues in ascending order with matching orthonormal eigenvector
    /// columns.
    pub fn eigen(&self) -> Result<(Vec<f64>, CMatrix)> {
        let eig = SymmetricEigen::try_new(self.matrix.clone(), EIG_EPS, max_iter(self.dim()))
            .ok_or_else(|| {
                Error::Numeric(format!(
                    "Hermitian eigensolver did not converge (dim {})",
                    self.dim()
                ))
            })?;
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        Ok((values, vectors))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator {
    matrix: CMatrix,
}

impl UnitaryOperator {
    /// Accepts `m` if `‖M†M − I‖_max ≤ 1e-10`.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square_finite(&m)?;
        let deviation = unitarity_deviation(&m);
        if deviation > tol::UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix: m })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    /// `diag(e^{i x_n})`.
    pub fn from_phases(phases: &[f64]) -> Self {
        let d = DVector::from_iterator(
            phases.len(),
            phases.iter().map(|&x| Complex64::from_polar(1.0, x)),
        );
        Self {
            matrix: CMatrix::from_diagonal(&d),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// Operator product `self · other` (apply `other` first).
    pub fn compose(&self, other: &UnitaryOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Self::new(&self.matrix * &other.matrix)
    }

    /// Multiply every entry by a global phase `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let z = Complex64::from_polar(1.0, phi);
        Self {
            matrix: self.matrix.map(|e| e * z),
        }
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi.dim(),
            });
        }
        Ok(StateVector {
            amplitudes: &self.matrix * &psi.amplitudes,
        })
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(amplitudes: CVector) -> Self {
        Self { amplitudes }
    }

    /// Rescale to unit norm. Zero vectors are rejected.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let n = amplitudes.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Precondition(format!(
                "cannot normalise a vector of norm {n}"
            )));
        }
        Ok(Self {
            amplitudes: amplitudes.map(|z| z / n),
        })
    }

    /// `|φ_k⟩` in a `dim`-dimensional basis.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, dim });
        }
        let mut v = CVector::zeros(dim);
        v[k] = c64(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= tol::STATE_NORM
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|⟨φ_m|ψ⟩|²` for every basis index.
    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// Eigenphases `x_s ∈ [0, 2π)` (ascending) and orthonormal eigenvectors of a
/// unitary operator, `V = Σ_s e^{ix_s}|v_s⟩⟨v_s|`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenphaseDecomposition {
    phases: Vec<f64>,
    vectors: CMatrix,
}

impl EigenphaseDecomposition {
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn vector(&self, s: usize) -> CVector {
        self.vectors.column(s).into_owned()
    }

    /// `Σ_s e^{i n x_s}|v_s⟩⟨v_s|`, i.e. `Vⁿ` rebuilt from the spectral data.
    pub fn reconstruct_power(&self, n: i64) -> CMatrix {
        let d = DVector::from_iterator(
            self.phases.len(),
            self.phases
                .iter()
                .map(|&x| Complex64::from_polar(1.0, x * n as f64)),
        );
        &self.vectors * CMatrix::from_diagonal(&d) * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.reconstruct_power(1)
    }

    /// Spectral weights `|⟨ψ|v_s⟩|²`.
    pub fn weights(&self, psi: &CVector) -> Vec<f64> {
        (0..self.dim())
            .map(|s| self.vectors.column(s).dotc(psi).norm_sqr())
            .collect()
    }
}

/// `exp(−i t H)` through the eigendecomposition of `H`.
pub fn unitary_from_hermitian(h: &HermitianOperator, t: f64) -> Result<UnitaryOperator> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("scaled time must be finite, got {t}")));
    }
    let (values, vectors) = h.eigen()?;
    let d = DVector::from_iterator(
        values.len(),
        values.iter().map(|&a| Complex64::from_polar(1.0, -a * t)),
    );
    let m = &vectors * CMatrix::from_diagonal(&d) * vectors.adjoint();
    UnitaryOperator::new(m)
}

/// Eigenphases of a unitary via the complex Schur form. For a normal matrix
/// the triangular factor is diagonal up to rounding, so its diagonal carries
/// the eigenvalues and the Schur vectors are the eigenvectors. Each phase is
/// read from the Rayleigh quotient `q_s† V q_s`, which is more accurate than
/// the Schur diagonal when an eigenvalue sits very close to another.
pub fn eigenphases(v: &UnitaryOperator) -> Result<EigenphaseDecomposition> {
    let n = v.dim();
    let schur = Schur::try_new(v.matrix.clone(), EIG_EPS, max_iter(n)).ok_or_else(|| {
        Error::Numeric(format!("complex Schur iteration did not converge (dim {n})"))
    })?;
    let (q, _) = schur.unpack();
    let vq = &v.matrix * &q;
    let raw: Vec<f64> = (0..n).map(|i| wrap_tau(q.column(i).dotc(&vq.column(i)).arg())).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[a].total_cmp(&raw[b]));
    let phases: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| q[(r, order[c])]);
    let decomp = EigenphaseDecomposition { phases, vectors };

    let ortho = unitarity_deviation(&decomp.vectors);
    if ortho > tol::ORTHONORMAL {
        return Err(Error::Numeric(format!(
            "eigenvectors not orthonormal: deviation {ortho:e}"
        )));
    }
    let recon = max_abs(&(decomp.reconstruct() - &v.matrix));
    if recon > tol::RECONSTRUCTION {
        return Err(Error::Numeric(format!(
            "eigenphase reconstruction error {recon:e} exceeds {:e}",
            tol::RECONSTRUCTION
        )));
    }
    Ok(decomp)
}

/// `Vⁿψ` by repeated application.
pub fn apply_power(v: &UnitaryOperator, psi: &StateVector, n: usize) -> Result<StateVector> {
    if psi.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            found: psi.dim(),
        });
    }
    let mut cur = psi.amplitudes.clone();
    let mut next = CVector::zeros(cur.len());
    for _ in 0..n {
        v.matrix.mul_to(&cur, &mut next);
        core::mem::swap(&mut cur, &mut next);
    }
    Ok(StateVector { amplitudes: cur })
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    check_square_finite(m)?;
    let svd = SVD::try_new(m.clone(), false, false, EIG_EPS, max_iter(m.nrows()))
        .ok_or_else(|| Error::Numeric(format!("SVD did not converge (dim {})", m.nrows())))?;
    Ok(svd.singular_values.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::TAU;
    use alloc::vec;

    fn power_series_exp(h: &CMatrix, t: f64, terms: usize) -> CMatrix {
        // Σ_{k≤terms} (−itH)^k / k!
        let n = h.nrows();
        let a = h.map(|z| z * c64(0.0, -t));
        let mut term = CMatrix::identity(n, n);
        let mut sum = term.clone();
        for k in 1..=terms {
            term = (&term * &a).map(|z| z / k as f64);
            sum += &term;
        }
        sum
    }

    fn spin1_jx() -> CMatrix {
        let mut m = CMatrix::zeros(3, 3);
        m[(1, 2)] = c64(0.0, -1.0);
        m[(2, 1)] = c64(0.0, 1.0);
        m
    }

    #[test]
    fn exp_of_zero_is_identity() {
        for d in [1, 3, 7] {
            let u = unitary_from_hermitian(&HermitianOperator::zero(d), 1.0).unwrap();
            assert!(max_abs(&(u.matrix() - CMatrix::identity(d, d))) < 1e-15);
        }
    }

    #[test]
    fn exp_of_diagonal() {
        let alphas = [0.0, 0.3, -1.7, 2.5];
        let t = 0.9;
        let u = unitary_from_hermitian(&HermitianOperator::from_real_diagonal(&alphas), t).unwrap();
        for (i, &a) in alphas.iter().enumerate() {
            let want = Complex64::from_polar(1.0, -a * t);
            assert!((u.matrix()[(i, i)] - want).norm() < 1e-14);
        }
        assert!(max_abs(&(u.matrix() - CMatrix::from_diagonal(&u.matrix().diagonal()))) < 1e-14);
    }

    #[test]
    fn exp_matches_power_series_for_spin1_jx() {
        let h = HermitianOperator::new(spin1_jx()).unwrap();
        let u = unitary_from_hermitian(&h, 0.7).unwrap();
        let oracle = power_series_exp(h.matrix(), 0.7, 40);
        assert!(max_abs(&(u.matrix() - oracle)) < 1e-10);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = c64(1.0, 0.0);
        assert!(matches!(
            HermitianOperator::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert!(matches!(
            UnitaryOperator::new(CMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
        let mut m = CMatrix::identity(2, 2);
        m[(1, 0)] = c64(f64::NAN, 0.0);
        assert!(matches!(
            UnitaryOperator::new(m),
            Err(Error::NonFinite { row: 1, col: 0 })
        ));
    }

    #[test]
    fn identity_has_zero_phases() {
        let e = eigenphases(&UnitaryOperator::identity(5)).unwrap();
        assert!(e.phases().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn diagonal_phases_are_sorted() {
        let v = UnitaryOperator::from_phases(&[2.5, 1.0]);
        let e = eigenphases(&v).unwrap();
        assert!((e.phases()[0] - 1.0).abs() < 1e-14);
        assert!((e.phases()[1] - 2.5).abs() < 1e-14);
    }

    #[test]
    fn negative_phases_wrap_into_range() {
        let v = UnitaryOperator::from_phases(&[-0.5, 7.0]);
        let e = eigenphases(&v).unwrap();
        assert!((e.phases()[0] - (7.0 - TAU)).abs() < 1e-14);
        assert!((e.phases()[1] - (TAU - 0.5)).abs() < 1e-14);
    }

    #[test]
    fn apply_power_zero_and_diagonal() {
        let theta = 0.4;
        let v = UnitaryOperator::from_phases(&[theta, 0.0]);
        let psi = StateVector::normalized(CVector::from_vec(vec![c64(1.0, 0.0), c64(0.0, 1.0)]))
            .unwrap();
        assert_eq!(apply_power(&v, &psi, 0).unwrap(), psi);
        let out = apply_power(&v, &psi, 3).unwrap();
        let want = psi.amplitudes()[0] * Complex64::from_polar(1.0, 3.0 * theta);
        assert!((out.amplitudes()[0] - want).norm() < 1e-15);
        assert!((out.amplitudes()[1] - psi.amplitudes()[1]).norm() < 1e-15);
    }

    #[test]
    fn apply_power_dimension_mismatch() {
        let v = UnitaryOperator::identity(3);
        let psi = StateVector::basis(2, 0).unwrap();
        assert!(matches!(
            apply_power(&v, &psi, 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trace_norm_simple_cases() {
        assert_eq!(trace_norm(&CMatrix::zeros(4, 4)).unwrap(), 0.0);
        let psi = StateVector::normalized(CVector::from_vec(vec![
            c64(1.0, 0.5),
            c64(-0.3, 0.0),
            c64(0.0, 2.0),
        ]))
        .unwrap();
        let p = psi.amplitudes() * psi.amplitudes().adjoint();
        assert!((trace_norm(&p).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn basis_out_of_range() {
        assert!(matches!(
            StateVector::basis(3, 3),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }
}
