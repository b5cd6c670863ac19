//! Shared parameters for the kicked oscillator family.

use floquet_core::kicked::{
    build_perturbation_vectors, h0_eigenvalues, EigenvaluePolynomial, KickSign, KickedSystemSpec, Ordering,
    PerturbationVector,
};

use crate::config::Params;
use crate::error::{LabError, LabResult};

pub fn golden() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

#[derive(Debug, Clone)]
pub struct System {
    pub poly: EigenvaluePolynomial,
    pub period: f64,
    pub hbar: f64,
}

impl System {
    /// Keys: `system` (harmonic | rotor | poly), `omega_over_tau`,
    /// `coefficients`, `period`, `hbar`.
    pub fn read(p: &mut Params) -> LabResult<Self> {
        let kind = p.str_or("system", "harmonic")?;
        let poly = match kind.as_str() {
            "harmonic" => {
                let w = p.f64_or("omega_over_tau", golden())?;
                EigenvaluePolynomial::harmonic(std::f64::consts::TAU * w)
            }
            "rotor" => Ok(EigenvaluePolynomial::rotor()),
            "poly" => EigenvaluePolynomial::new(p.f64_list_or("coefficients", &[])?),
            other => return Err(LabError::Config(format!("unknown system `{other}`"))),
        }
        .map_err(LabError::config)?;
        let period = p.f64_or("period", 1.0)?;
        let hbar = p.f64_or("hbar", 1.0)?;
        if !(period.is_finite() && period > 0.0) {
            return Err(LabError::Config(format!("period must be positive, got {period}")));
        }
        h0_eigenvalues(&poly, hbar, 1).map_err(LabError::config)?;
        Ok(Self { poly, period, hbar })
    }

    pub fn alphas(&self, dim: usize) -> LabResult<Vec<f64>> {
        h0_eigenvalues(&self.poly, self.hbar, dim).map_err(LabError::config)
    }
}

pub fn read_gamma(p: &mut Params, default: f64) -> LabResult<f64> {
    let gamma = p.f64_or("gamma", default)?;
    if !(gamma > 0.0 && gamma <= 10.0) {
        return Err(LabError::Config(format!("gamma must lie in (0, 10], got {gamma}")));
    }
    Ok(gamma)
}

/// Keys: `lambda` (one value or one per vector), `ordering` (post | pre),
/// `sign` (negative | positive).
pub fn read_spec(
    p: &mut Params,
    sys: &System,
    vectors: Vec<PerturbationVector>,
) -> LabResult<KickedSystemSpec> {
    let rank = vectors.len();
    let mut lambda = p.f64_list_or("lambda", &[0.8])?;
    if lambda.len() == 1 {
        lambda = vec![lambda[0]; rank];
    }
    if lambda.len() != rank {
        return Err(LabError::Config(format!("lambda has {} values for rank {rank}", lambda.len())));
    }
    let ordering = match p.str_or("ordering", "post")?.as_str() {
        "post" => Ordering::PostKick,
        "pre" => Ordering::PreKick,
        o => return Err(LabError::Config(format!("ordering must be post or pre, got `{o}`"))),
    };
    let sign = match p.str_or("sign", "negative")?.as_str() {
        "negative" => KickSign::Negative,
        "positive" => KickSign::Positive,
        s => return Err(LabError::Config(format!("sign must be negative or positive, got `{s}`"))),
    };
    Ok(KickedSystemSpec::new(sys.poly.clone(), sys.period, sys.hbar, lambda, vectors)
        .map_err(LabError::config)?
        .with_ordering(ordering)
        .with_sign(sign))
}

pub fn vectors(gamma: f64, dim: usize, rank: usize) -> LabResult<Vec<PerturbationVector>> {
    build_perturbation_vectors(gamma, dim, rank).map_err(LabError::config)
}
