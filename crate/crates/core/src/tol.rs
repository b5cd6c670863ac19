//! Tolerances shared by constructors and tests.

/// Entry-wise `‖M − M†‖_max` accepted for a Hermitian operator.
pub const HERMITIAN: f64 = 1e-12;
/// Entry-wise `‖M†M − I‖_max` accepted for a unitary operator.
pub const UNITARY: f64 = 1e-10;
/// Unit-norm tolerance for a state flagged as normalized.
pub const STATE_NORM: f64 = 1e-12;
/// `‖Σ e^{ix_s}|v_s⟩⟨v_s| − V‖_max` after an eigenphase decomposition.
pub const RECONSTRUCTION: f64 = 1e-9;
/// Orthonormality of eigenvector columns.
pub const ORTHONORMAL: f64 = 1e-10;
/// Orthonormality of perturbation vectors `⟨ψ_k|ψ_l⟩ = δ_kl`.
pub const PERTURBATION_ORTHO: f64 = 1e-12;
/// Minimum circular distance between an evaluation point `x` and an
/// eigenphase `θ_n` before the `B⁻¹` and cotangent series are rejected.
pub const SINGULAR_GUARD: f64 = 1e-9;
/// Population rows must sum to one within this bound.
pub const POPULATION_SUM: f64 = 1e-9;
