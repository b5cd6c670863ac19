//! Stroboscopic evolution diagnostics: energy traces, transition
//! probabilities, Cesàro and RAGE-type averages, growth classification.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{bail, Error, Result};
use crate::math::{ln, pairwise_sum};
use crate::numtheory::ols;
use crate::op::{CVector, EigenphaseDecomposition, StateVector, UnitaryOperator};

/// Energies, norms and basis populations at kicks `n = 0..=n_kicks`.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsTrace {
    dim: usize,
    energies: Vec<f64>,
    norms: Vec<f64>,
    populations: Vec<Vec<f64>>,
}

impl DynamicsTrace {
    /// A trace with only an energy column, e.g. for testing the classifier.
    /// No truncation is implied, so the fit window is the whole trace.
    pub fn from_energies(energies: Vec<f64>) -> Self {
        let norms = alloc::vec![1.0; energies.len()];
        Self {
            dim: usize::MAX,
            energies,
            norms,
            populations: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// `|⟨φ_m|Vⁿψ₀⟩|²`, one row per kick.
    pub fn populations(&self) -> &[Vec<f64>] {
        &self.populations
    }

    pub fn max_norm_drift(&self) -> f64 {
        self.norms.iter().fold(0.0, |a, &n| a.max((n - 1.0).abs()))
    }

    /// `max_n |Σ_m p_m(n) − 1|`.
    pub fn max_population_sum_deviation(&self) -> f64 {
        self.populations
            .iter()
            .fold(0.0, |a, row| a.max((pairwise_sum(row) - 1.0).abs()))
    }

    /// Same energies scaled by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.energies.iter_mut().for_each(|e| *e *= c);
        out
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `E(n) = Σ_m α_m |⟨φ_m|Vⁿψ₀⟩|²` for `n = 0..=n_kicks`.
pub fn evolve_trace(v: &UnitaryOperator, psi0: &StateVector, alphas: &[f64], n_kicks: usize) -> Result<DynamicsTrace> {
    check_dim(v.dim(), psi0.dim())?;
    check_dim(v.dim(), alphas.len())?;
    if n_kicks == 0 {
        bail!(Precondition, "need at least one kick");
    }
    let mut energies = Vec::with_capacity(n_kicks + 1);
    let mut norms = Vec::with_capacity(n_kicks + 1);
    let mut populations = Vec::with_capacity(n_kicks + 1);
    let mut cur = psi0.amplitudes().clone();
    let mut next = CVector::zeros(cur.len());
    let mut weighted = Vec::with_capacity(cur.len());
    for n in 0..=n_kicks {
        if n > 0 {
            v.matrix().mul_to(&cur, &mut next);
            core::mem::swap(&mut cur, &mut next);
        }
        let p: Vec<f64> = cur.iter().map(|z| z.norm_sqr()).collect();
        weighted.clear();
        weighted.extend(p.iter().zip(alphas).map(|(p, a)| p * a));
        energies.push(pairwise_sum(&weighted));
        norms.push(crate::math::sqrt(pairwise_sum(&p)));
        populations.push(p);
    }
    Ok(DynamicsTrace {
        dim: v.dim(),
        energies,
        norms,
        populations,
    })
}

fn check_index(i: usize, dim: usize) -> Result<()> {
    if i >= dim {
        return Err(Error::IndexOutOfRange { index: i, dim });
    }
    Ok(())
}

/// `|⟨φ_k|Vⁿ|φ_l⟩|²` by repeated application.
pub fn transition_prob(v: &UnitaryOperator, k: usize, l: usize, n: usize) -> Result<f64> {
    check_index(k, v.dim())?;
    check_index(l, v.dim())?;
    let out = crate::op::apply_power(v, &StateVector::basis(v.dim(), l)?, n)?;
    Ok(out.amplitudes()[k].norm_sqr())
}

/// `|Σ_s e^{inx_s} ⟨φ_k|v_s⟩⟨v_s|φ_l⟩|²` from a spectral decomposition.
pub fn transition_prob_spectral(e: &EigenphaseDecomposition, k: usize, l: usize, n: usize) -> Result<f64> {
    check_index(k, e.dim())?;
    check_index(l, e.dim())?;
    let vecs = e.vectors();
    let terms: Vec<Complex64> = e
        .phases()
        .iter()
        .enumerate()
        .map(|(s, &x)| Complex64::from_polar(1.0, x * n as f64) * vecs[(k, s)] * vecs[(l, s)].conj())
        .collect();
    let re: Vec<f64> = terms.iter().map(|z| z.re).collect();
    let im: Vec<f64> = terms.iter().map(|z| z.im).collect();
    Ok(Complex64::new(pairwise_sum(&re), pairwise_sum(&im)).norm_sqr())
}

/// `p_{k,l}(n)` for `n = 0..=n_max` and each requested pair, evolving each
/// distinct column `l` once.
pub fn transition_series(v: &UnitaryOperator, pairs: &[(usize, usize)], n_max: usize) -> Result<Vec<Vec<f64>>> {
    for &(k, l) in pairs {
        check_index(k, v.dim())?;
        check_index(l, v.dim())?;
    }
    let mut out = alloc::vec![Vec::with_capacity(n_max + 1); pairs.len()];
    let mut columns: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    columns.sort_unstable();
    columns.dedup();
    for l in columns {
        let mut cur = StateVector::basis(v.dim(), l)?.amplitudes().clone();
        let mut next = CVector::zeros(cur.len());
        for n in 0..=n_max {
            if n > 0 {
                v.matrix().mul_to(&cur, &mut next);
                core::mem::swap(&mut cur, &mut next);
            }
            for (i, &(k, ll)) in pairs.iter().enumerate() {
                if ll == l {
                    out[i].push(cur[k].norm_sqr());
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cesaro {
    /// `Σ_{n≤m} p(n)`.
    pub partial_sums: Vec<f64>,
    /// `(1/(m+1)) Σ_{n≤m} p(n)`.
    pub averages: Vec<f64>,
    /// Log-log slope of the partial sums against `m + 1`.
    pub sum_slope: Option<f64>,
    /// Log-log slope of the running average against `m + 1`.
    pub average_slope: Option<f64>,
}

fn loglog_slope(ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = ys
        .iter()
        .enumerate()
        .filter(|(_, &y)| y > 0.0)
        .map(|(i, &y)| (ln((i + 1) as f64), ln(y)))
        .collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    ols(&xs, &ys).map(|f| f.0)
}

pub fn cesaro_diagnostics(p: &[f64]) -> Result<Cesaro> {
    if p.is_empty() {
        bail!(Precondition, "need at least one term");
    }
    let mut partial_sums = Vec::with_capacity(p.len());
    let mut acc = 0.0;
    for &x in p {
        acc += x;
        partial_sums.push(acc);
    }
    let averages: Vec<f64> = partial_sums
        .iter()
        .enumerate()
        .map(|(i, s)| s / (i + 1) as f64)
        .collect();
    Ok(Cesaro {
        sum_slope: loglog_slope(&partial_sums),
        average_slope: loglog_slope(&averages),
        partial_sums,
        averages,
    })
}

/// `(1/N) Σ_{n=0}^{N−1} ‖C Vⁿ ψ‖²` for the coordinate projector `C` onto
/// `subset`.
pub fn rage_average(subset: &[usize], v: &UnitaryOperator, psi: &StateVector, count: usize) -> Result<f64> {
    check_dim(v.dim(), psi.dim())?;
    if count == 0 {
        bail!(Precondition, "N must be at least 1");
    }
    for &i in subset {
        check_index(i, v.dim())?;
    }
    let mut cur = psi.amplitudes().clone();
    let mut next = CVector::zeros(cur.len());
    let mut terms = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            v.matrix().mul_to(&cur, &mut next);
            core::mem::swap(&mut cur, &mut next);
        }
        let w: Vec<f64> = subset.iter().map(|&i| cur[i].norm_sqr()).collect();
        terms.push(pairwise_sum(&w));
    }
    Ok(pairwise_sum(&terms) / count as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthLabel {
    Recurrent,
    Diffusive,
    Ballistic,
    Indeterminate,
}

impl GrowthLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            GrowthLabel::Recurrent => "recurrent",
            GrowthLabel::Diffusive => "diffusive",
            GrowthLabel::Ballistic => "ballistic",
            GrowthLabel::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBands {
    pub recurrent_max: f64,
    pub diffusive: (f64, f64),
    pub ballistic_min: f64,
    /// Bounded when `max/median` of the envelope is at most this.
    pub bounded_ratio: f64,
}

impl Default for GrowthBands {
    fn default() -> Self {
        Self {
            recurrent_max: 0.15,
            diffusive: (0.7, 1.3),
            ballistic_min: 1.7,
            bounded_ratio: 1.5,
        }
    }
}

impl GrowthBands {
    pub fn label(&self, slope: f64) -> GrowthLabel {
        if slope <= self.recurrent_max {
            GrowthLabel::Recurrent
        } else if slope >= self.diffusive.0 && slope <= self.diffusive.1 {
            GrowthLabel::Diffusive
        } else if slope >= self.ballistic_min {
            GrowthLabel::Ballistic
        } else {
            GrowthLabel::Indeterminate
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthClassification {
    pub label: GrowthLabel,
    pub slope: f64,
    pub bounded: bool,
    /// Truncation `D`; `usize::MAX` for traces without one.
    pub dim: usize,
    /// Heisenberg-time proxy `n* ≈ D`.
    pub heisenberg_time: usize,
    /// Kicks `[lo, hi]` entering the fit.
    pub fit_window: (usize, usize),
}

pub fn classify_growth(trace: &DynamicsTrace) -> Result<GrowthClassification> {
    classify_growth_with(trace, &GrowthBands::default())
}

/// Fits the running maximum `M(n) = max_{m≤n} |E(m) − E(0)|` on a log-log
/// scale over `n ∈ [W/8, W]` with `W = min(n_kicks, D/2)`.
pub fn classify_growth_with(trace: &DynamicsTrace, bands: &GrowthBands) -> Result<GrowthClassification> {
    if trace.len() < 101 {
        bail!(Precondition, "need at least 100 kicks, got {}", trace.len().saturating_sub(1));
    }
    let e0 = trace.energies[0];
    let mut envelope = Vec::with_capacity(trace.len());
    let mut m: f64 = 0.0;
    for &e in &trace.energies {
        m = m.max((e - e0).abs());
        envelope.push(m);
    }
    let last = trace.len() - 1;
    let w = last.min(trace.dim / 2).max(8);
    let lo = (w / 8).max(1);
    let mut out = GrowthClassification {
        label: GrowthLabel::Recurrent,
        slope: 0.0,
        bounded: true,
        dim: trace.dim,
        heisenberg_time: trace.dim,
        fit_window: (lo, w),
    };
    // Relative floor so rounding noise in a constant trace is not fitted.
    let scale = trace.energies.iter().fold(0.0f64, |a, e| a.max(e.abs())).max(1e-300);
    if envelope[last] <= 1e-12 * scale {
        return Ok(out);
    }
    let pts: Vec<(f64, f64)> = (lo..=w)
        .filter(|&n| envelope[n] > 0.0)
        .map(|n| (ln(n as f64), ln(envelope[n])))
        .collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    if let Some((slope, _, _)) = ols(&xs, &ys) {
        out.slope = slope;
    }
    let mut tail: Vec<f64> = envelope[1..].to_vec();
    tail.sort_by(f64::total_cmp);
    let median = tail[tail.len() / 2];
    out.bounded = median > 0.0 && envelope[last] / median <= bands.bounded_ratio;
    out.label = bands.label(out.slope);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn synthetic_ballistic_and_diffusive() {
        let t = DynamicsTrace::from_energies((0..400).map(|n| 3.0 + (n * n) as f64).collect());
        let c = classify_growth(&t).unwrap();
        assert_eq!(c.label, GrowthLabel::Ballistic);
        assert!(!c.bounded);
        let t = DynamicsTrace::from_energies((0..400).map(|n| 3.0 + n as f64).collect());
        let c = classify_growth(&t).unwrap();
        assert_eq!(c.label, GrowthLabel::Diffusive);
        assert!((c.slope - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_trace_is_recurrent() {
        let t = DynamicsTrace::from_energies(vec![2.5; 150]);
        let c = classify_growth(&t).unwrap();
        assert_eq!(c.label, GrowthLabel::Recurrent);
        assert_eq!(c.slope, 0.0);
        assert!(c.bounded);
    }

    #[test]
    fn short_trace_rejected() {
        assert!(classify_growth(&DynamicsTrace::from_energies(vec![1.0; 50])).is_err());
    }

    #[test]
    fn cesaro_constant_and_harmonic() {
        let c = cesaro_diagnostics(&[0.3; 100]).unwrap();
        assert!((c.partial_sums[99] - 30.0).abs() < 1e-12);
        assert!(c.averages.iter().all(|&a| (a - 0.3).abs() < 1e-15));
        let h: Vec<f64> = (1..=10_000).map(|n| 1.0 / n as f64).collect();
        let c = cesaro_diagnostics(&h).unwrap();
        assert!(c.partial_sums.last().unwrap() > &9.0);
        assert!(c.averages.last().unwrap() < &1e-3);
        assert!(c.average_slope.unwrap() < -0.5);
    }

    #[test]
    fn identity_and_zero_projectors() {
        let v = UnitaryOperator::from_phases(&[0.1, 0.7, 2.0]);
        let psi = StateVector::normalized(CVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.5, 0.5),
        ]))
        .unwrap();
        assert!((rage_average(&[0, 1, 2], &v, &psi, 17).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(rage_average(&[], &v, &psi, 17).unwrap(), 0.0);
    }

    #[test]
    fn transition_basics() {
        let v = UnitaryOperator::from_phases(&[0.1, 0.7, 2.0]);
        for n in [0, 1, 5] {
            for k in 0..3 {
                for l in 0..3 {
                    let p = transition_prob(&v, k, l, n).unwrap();
                    assert!((p - if k == l { 1.0 } else { 0.0 }).abs() < 1e-15);
                }
            }
        }
        assert!(matches!(
            transition_prob(&v, 3, 0, 1),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }
}
