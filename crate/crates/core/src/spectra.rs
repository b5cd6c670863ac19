//! Spectral diagnostics for rank-one kicks: the `B⁻¹(x)` series, point
//! masses, the cotangent eigenphase identity, the counting lower bounds, and
//! the analytic side computations (`δ_ε`, `Tr G_ε`, `φ̃`).
//!
//! Phases `x` here live in the frame where the free part contributes
//! `e^{+iθ_n}`; see [`crate::kicked::KickedSystemSpec::combescure_phase`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{bail, Error, Result};
use crate::kicked::{EigenphaseSequence, PerturbationVector};
use crate::math::{circular_distance, cos, exp, ln, pairwise_sum, powf, sin, sqrt, tan, wrap_tau, PI, TAU};
use crate::numtheory::{discrepancy_sorted, exponent_fit, ols};
use crate::quad::{integrate, QuadResult};
use crate::tol;

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() {
        bail!(Domain, "x must be finite");
    }
    Ok(())
}

fn guard(x: f64, n: usize, theta: f64) -> Result<()> {
    let d = circular_distance(x, theta);
    if d < tol::SINGULAR_GUARD {
        return Err(Error::Singular {
            x,
            index: n,
            distance: d,
        });
    }
    Ok(())
}

/// `Σ_{n<N} w_n / sin²((x − θ_n)/2)` for raw weights `w_n = |a_n|²`.
/// Summed in index order, so partial sums are nondecreasing in `N`.
pub fn b_inverse_weights(x: f64, weights: &[f64], thetas: &[f64], count: usize) -> Result<f64> {
    Ok(*b_inverse_ladder(x, weights, thetas, &[count])?.last().expect("one rung"))
}

/// [`b_inverse_weights`] at every rung of an increasing ladder, in one pass.
pub fn b_inverse_ladder(x: f64, weights: &[f64], thetas: &[f64], ladder: &[usize]) -> Result<Vec<f64>> {
    check_x(x)?;
    let top = ladder.last().copied().unwrap_or(0);
    if top > weights.len() || top > thetas.len() {
        bail!(
            Precondition,
            "truncation {top} exceeds available data (weights {}, phases {})",
            weights.len(),
            thetas.len()
        );
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) {
        bail!(Precondition, "ladder must be strictly increasing");
    }
    let mut out = Vec::with_capacity(ladder.len());
    let mut acc = 0.0;
    let mut n = 0;
    for &rung in ladder {
        while n < rung {
            let w = weights[n];
            if w > 0.0 {
                guard(x, n, thetas[n])?;
                let s = sin(0.5 * (x - thetas[n]));
                acc += w / (s * s);
            }
            n += 1;
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn b_inverse(x: f64, psi: &PerturbationVector, thetas: &EigenphaseSequence, count: usize) -> Result<f64> {
    b_inverse_weights(x, &psi.weights(), thetas.thetas(), count)
}

fn check_kick(lambda_over_hbar: f64) -> Result<f64> {
    if !lambda_over_hbar.is_finite() {
        bail!(Domain, "kick strength must be finite");
    }
    let s = sin(0.5 * lambda_over_hbar);
    if s * s < 1e-24 {
        bail!(
            Domain,
            "no kick: lambda/hbar = {lambda_over_hbar} is a multiple of 2 pi, point-mass formula undefined"
        );
    }
    Ok(s * s)
}

/// Point mass `m({x}) = B(x)/sin²(λ/2ℏ)` with `B = 1/B⁻¹`.
pub fn point_mass(x: f64, lambda_over_hbar: f64, b_value: f64) -> Result<f64> {
    check_x(x)?;
    let s2 = check_kick(lambda_over_hbar)?;
    if !(b_value >= 0.0 && b_value.is_finite()) {
        bail!(Domain, "B(x) must be finite and nonnegative, got {b_value}");
    }
    Ok(b_value / s2)
}

/// The prefactor `−4(1+μ)/μ²` with `μ = e^{iλ/ℏ} − 1` and the complex square.
/// Algebraically equal to `1/sin²(λ/2ℏ)`.
pub fn point_mass_factor_complex(lambda_over_hbar: f64) -> Result<Complex64> {
    check_kick(lambda_over_hbar)?;
    let mu = Complex64::from_polar(1.0, lambda_over_hbar) - Complex64::new(1.0, 0.0);
    Ok(Complex64::new(-4.0, 0.0) * (Complex64::new(1.0, 0.0) + mu) / (mu * mu))
}

/// `Σ_n w_n cot((x − θ_n)/2) − cot(λ/2ℏ)`.
pub fn cotg_residual_weights(x: f64, weights: &[f64], thetas: &[f64], lambda_over_hbar: f64) -> Result<f64> {
    check_x(x)?;
    check_kick(lambda_over_hbar)?;
    if weights.len() > thetas.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            found: thetas.len(),
        });
    }
    let mut terms = Vec::with_capacity(weights.len());
    for (n, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            guard(x, n, thetas[n])?;
            terms.push(w / tan(0.5 * (x - thetas[n])));
        }
    }
    Ok(pairwise_sum(&terms) - 1.0 / tan(0.5 * lambda_over_hbar))
}

pub fn cotg_residual(
    x: f64,
    psi: &PerturbationVector,
    thetas: &EigenphaseSequence,
    lambda_over_hbar: f64,
) -> Result<f64> {
    cotg_residual_weights(x, &psi.weights(), thetas.thetas(), lambda_over_hbar)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Threshold `2π n^{−γ}` per term.
    #[default]
    Combescure,
    /// Uniform threshold `2π N^{2(1/2−γ)} (ln N)^{−1/2}`.
    Bourget,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Combescure => "combescure",
            Variant::Bourget => "bourget",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "combescure" => Some(Variant::Combescure),
            "bourget" => Some(Variant::Bourget),
            _ => None,
        }
    }
}

/// `#S(x)`: indices `1 ≤ n ≤ N` with `θ_n` within the variant's threshold
/// of `x` (circular distance).
pub fn count_s(x: f64, gamma: f64, thetas: &EigenphaseSequence, count: usize, variant: Variant) -> Result<usize> {
    check_x(x)?;
    if count < 2 {
        bail!(Precondition, "N must be at least 2, got {count}");
    }
    if count >= thetas.len() {
        bail!(Precondition, "need theta_1..theta_{count}, have {} phases", thetas.len());
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        bail!(Domain, "gamma must be positive");
    }
    let th = thetas.thetas();
    let uniform = TAU * powf(count as f64, 2.0 * (0.5 - gamma)) / sqrt(ln(count as f64));
    Ok((1..=count)
        .filter(|&n| {
            let thr = match variant {
                Variant::Combescure => TAU * powf(n as f64, -gamma),
                Variant::Bourget => uniform,
            };
            circular_distance(x, th[n]) <= thr
        })
        .count())
}

/// Slack `4 (c/2π)²` in `B⁻¹ ≥ 4 (c/2π)² #S` for a vector with
/// `|a_n| = c n^{−γ}`; equal to `4` for the unnormalised `|a_n| = 2π n^{−γ}`.
pub fn chain_factor(norm_constant: f64) -> f64 {
    let r = norm_constant / TAU;
    4.0 * r * r
}

/// The triple behind `|A − 2N^{1−γ}| ≤ N·D_N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalCount {
    pub a: usize,
    pub two_n_pow: f64,
    pub n_times_dn: f64,
}

impl IntervalCount {
    pub fn holds(&self) -> bool {
        (self.a as f64 - self.two_n_pow).abs() <= self.n_times_dn * (1.0 + 1e-12)
    }
}

fn interval_bounds(x: f64, gamma: f64, count: usize) -> Result<(f64, f64)> {
    let half = powf(count as f64, -gamma);
    let c = x / TAU;
    let (lo, hi) = (c - half, c + half);
    if !(lo >= 0.0 && hi < 1.0) {
        bail!(
            Precondition,
            "interval [{lo}, {hi}] for N = {count} escapes [0, 1)"
        );
    }
    Ok((lo, hi))
}

fn count_in(sorted: &[f64], lo: f64, hi: f64) -> usize {
    let a = sorted.partition_point(|&p| p < lo);
    let b = sorted.partition_point(|&p| p <= hi);
    b - a
}

/// Counts `θ_n/2π`, `n < N`, in `J_N(x) = [x/2π − N^{−γ}, x/2π + N^{−γ}]`
/// and pairs it with `N·D_N` of the same points.
pub fn interval_count(x: f64, gamma: f64, thetas: &EigenphaseSequence, count: usize) -> Result<IntervalCount> {
    check_x(x)?;
    if count == 0 || count > thetas.len() {
        bail!(Precondition, "need 1 <= N <= {}, got {count}", thetas.len());
    }
    let (lo, hi) = interval_bounds(x, gamma, count)?;
    let mut pts = thetas.unit_points(count);
    pts.sort_by(f64::total_cmp);
    Ok(IntervalCount {
        a: count_in(&pts, lo, hi),
        two_n_pow: 2.0 * powf(count as f64, 1.0 - gamma),
        n_times_dn: count as f64 * discrepancy_sorted(&pts),
    })
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        bail!(Domain, "epsilon must be positive, got {eps}");
    }
    Ok(())
}

/// `δ_ε(t) = (1/2π)(1 − e^{−2ε})/(1 − 2e^{−ε}cos t + e^{−2ε})`.
pub fn delta_eps(t: f64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if !t.is_finite() {
        bail!(Domain, "t must be finite");
    }
    let r = exp(-eps);
    Ok((1.0 - r * r) / (1.0 - 2.0 * r * cos(t) + r * r) / TAU)
}

/// `(1/2π) Σ_{|n|≤M} e^{−ε|n|} e^{int}`.
pub fn delta_eps_series(t: f64, eps: f64, terms: usize) -> Result<f64> {
    check_eps(eps)?;
    let parts: Vec<f64> = (1..=terms).map(|n| exp(-eps * n as f64) * cos(n as f64 * t)).collect();
    Ok((1.0 + 2.0 * pairwise_sum(&parts)) / TAU)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaKernel {
    epsilon: f64,
}

impl DeltaKernel {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_eps(epsilon)?;
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn eval(&self, t: f64) -> f64 {
        delta_eps(t, self.epsilon).expect("epsilon validated")
    }

    /// `∫_{−π}^{π} f(t) δ_ε(t) dt` by adaptive quadrature, split at the peak.
    pub fn integrate_against<F: Fn(f64) -> f64>(&self, f: F) -> Result<QuadResult> {
        let g = |t: f64| f(t) * self.eval(t);
        let left = integrate(g, -PI, 0.0, 1e-13, 1e-13)?;
        let right = integrate(g, 0.0, PI, 1e-13, 1e-13)?;
        Ok(QuadResult {
            value: left.value + right.value,
            error_estimate: left.error_estimate + right.error_estimate,
            evaluations: left.evaluations + right.evaluations,
        })
    }

    pub fn mass(&self) -> Result<QuadResult> {
        self.integrate_against(|_| 1.0)
    }

    pub fn cos_moment(&self) -> Result<QuadResult> {
        self.integrate_against(cos)
    }
}

/// `Tr G_ε = Σ_n |Aφ_n|² / |1 − e^{−ε} e^{iTα_n/ℏ} e^{iθ}|²`.
pub fn g_eps_trace(a_norms: &[f64], alphas: &[f64], period: f64, hbar: f64, theta: f64, eps: f64) -> Result<f64> {
    if a_norms.len() != alphas.len() {
        return Err(Error::DimensionMismatch {
            expected: alphas.len(),
            found: a_norms.len(),
        });
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        bail!(Domain, "epsilon must be nonnegative, got {eps}");
    }
    if !(hbar > 0.0 && period.is_finite() && theta.is_finite()) {
        bail!(Domain, "need hbar > 0 and finite period and theta");
    }
    let r = exp(-eps);
    let mut terms = Vec::with_capacity(a_norms.len());
    for (n, (&a, &alpha)) in a_norms.iter().zip(alphas).enumerate() {
        let phi = wrap_tau(wrap_tau(period * alpha / hbar) + theta);
        if eps == 0.0 {
            guard(0.0, n, phi).map_err(|_| Error::Singular {
                x: theta,
                index: n,
                distance: circular_distance(phi, 0.0),
            })?;
        }
        let den = 1.0 - 2.0 * r * cos(phi) + r * r;
        terms.push(a * a / den);
    }
    Ok(pairwise_sum(&terms))
}

/// Numerator and denominator of `φ̃`.
pub fn phi_tilde_parts(omega: f64, kappa: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&kappa) {
        bail!(Domain, "kappa must lie in [0, 1], got {kappa}");
    }
    if !omega.is_finite() {
        bail!(Domain, "omega must be finite");
    }
    let w2 = omega * omega;
    let p = 4.0 + w2;
    let k2 = kappa * kappa;
    let k3 = k2 * kappa;
    let n = 4.0 * kappa * (p * p + kappa * omega * p + k2 * (4.0 - w2) - k3 * omega);
    let d = p * p * p - 2.0 * k2 * w2 * p - 16.0 * k3 * omega - k2 * k2 * (4.0 - w2);
    Ok((n, d))
}

/// `φ̃(ω, κ) = π·arctan(n/d)`.
pub fn phi_tilde(omega: f64, kappa: f64) -> Result<f64> {
    let (n, d) = phi_tilde_parts(omega, kappa)?;
    if d == 0.0 {
        bail!(Numeric, "phi-tilde denominator vanishes at omega = {omega}, kappa = {kappa}");
    }
    Ok(PI * crate::math::atan(n / d))
}

/// Parameters of a `B⁻¹` truncation scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BScanConfig {
    pub x_grid: Vec<f64>,
    pub ladder: Vec<usize>,
    pub gamma: f64,
    pub variant: Variant,
    /// Growth: log-log slope of `B⁻¹` against `N` above this, with a
    /// nondecreasing ladder.
    pub growth_slope: f64,
    /// Saturation: last-step relative change of `B⁻¹` below this.
    pub saturation_tol: f64,
}

impl BScanConfig {
    pub const DEFAULT_GROWTH_SLOPE: f64 = 0.1;
    pub const DEFAULT_SATURATION_TOL: f64 = 0.01;

    pub fn new(x_grid: Vec<f64>, ladder: Vec<usize>, gamma: f64, variant: Variant) -> Result<Self> {
        if x_grid.is_empty() {
            bail!(Precondition, "x grid is empty");
        }
        if let Some(x) = x_grid.iter().find(|x| !(**x > 0.0 && **x < TAU)) {
            bail!(Precondition, "x = {x} outside (0, 2 pi)");
        }
        if ladder.is_empty() {
            bail!(Precondition, "truncation ladder is empty");
        }
        if ladder.windows(2).any(|w| w[0] >= w[1]) {
            bail!(Precondition, "truncation ladder must be strictly increasing");
        }
        if ladder[0] < 2 {
            bail!(Precondition, "truncations must be at least 2");
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            bail!(Precondition, "gamma must be positive, got {gamma}");
        }
        Ok(Self {
            x_grid,
            ladder,
            gamma,
            variant,
            growth_slope: Self::DEFAULT_GROWTH_SLOPE,
            saturation_tol: Self::DEFAULT_SATURATION_TOL,
        })
    }

    /// `x_i = 2π(i + 1/2)/points`.
    pub fn midpoint_grid(points: usize) -> Vec<f64> {
        (0..points).map(|i| TAU * (i as f64 + 0.5) / points as f64).collect()
    }

    pub fn max_truncation(&self) -> usize {
        *self.ladder.last().expect("validated nonempty")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BScanRow {
    pub x: f64,
    pub n: usize,
    pub b_inverse: Option<f64>,
    pub count_s: usize,
    pub a: Option<usize>,
    pub two_n_pow: f64,
    pub n_times_dn: f64,
    /// `B⁻¹ ≥ 4(c/2π)²·#S` (Combescure variant only).
    pub chain_holds: Option<bool>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct XSummary {
    pub x: f64,
    pub b_slope: Option<f64>,
    /// `(B(N_max) − B(N_max/2)) / B(N_max)`, the saturation statistic.
    pub relative_change: Option<f64>,
    /// `(B(N_max) − B(N_min)) / B(N_max)` over the whole ladder.
    pub ladder_change: Option<f64>,
    pub monotone: bool,
    pub growth: bool,
    pub saturation: bool,
    /// Log-log slope of `A(J_N, N)` against `N`; expected `1 − γ`.
    pub a_slope: Option<f64>,
    pub a_slope_half_width: Option<f64>,
    pub skipped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BScanResult {
    pub rows: Vec<BScanRow>,
    pub summaries: Vec<XSummary>,
}

impl BScanResult {
    fn fraction(&self, f: impl Fn(&XSummary) -> bool) -> f64 {
        if self.summaries.is_empty() {
            return 0.0;
        }
        self.summaries.iter().filter(|s| f(s)).count() as f64 / self.summaries.len() as f64
    }

    pub fn growth_fraction(&self) -> f64 {
        self.fraction(|s| s.growth)
    }

    pub fn saturation_fraction(&self) -> f64 {
        self.fraction(|s| s.saturation)
    }

    /// Fraction of grid points with growth and an `A` slope within `tol` of
    /// `target`.
    pub fn growth_with_a_slope_fraction(&self, target: f64, tol: f64) -> f64 {
        self.fraction(|s| s.growth && s.a_slope.is_some_and(|a| (a - target).abs() <= tol))
    }
}

/// Precomputed per-rung data shared by every `x` of a scan.
#[derive(Debug, Clone)]
pub struct BScanContext {
    cfg: BScanConfig,
    weights: Vec<f64>,
    thetas: EigenphaseSequence,
    norm_constant: f64,
    sorted_points: Vec<Vec<f64>>,
    n_times_dn: Vec<f64>,
}

impl BScanContext {
    pub fn new(cfg: BScanConfig, psi: &PerturbationVector, thetas: &EigenphaseSequence) -> Result<Self> {
        let top = cfg.max_truncation();
        if psi.dim() < top || thetas.len() < top {
            bail!(
                Precondition,
                "scan to N = {top} needs dimension >= {top} (vector {}, phases {})",
                psi.dim(),
                thetas.len()
            );
        }
        let mut sorted_points = Vec::with_capacity(cfg.ladder.len());
        let mut n_times_dn = Vec::with_capacity(cfg.ladder.len());
        for &n in &cfg.ladder {
            let mut pts = thetas.unit_points(n);
            pts.sort_by(f64::total_cmp);
            n_times_dn.push(n as f64 * discrepancy_sorted(&pts));
            sorted_points.push(pts);
        }
        Ok(Self {
            weights: psi.weights(),
            thetas: thetas.clone(),
            norm_constant: psi.norm_constant(),
            cfg,
            sorted_points,
            n_times_dn,
        })
    }

    pub fn config(&self) -> &BScanConfig {
        &self.cfg
    }

    pub fn scan_x(&self, x: f64) -> (Vec<BScanRow>, XSummary) {
        let cfg = &self.cfg;
        let th = self.thetas.thetas();
        let b = b_inverse_ladder(x, &self.weights, th, &cfg.ladder);
        let singular = match &b {
            Err(Error::Singular { index, .. }) => Some(*index),
            _ => None,
        };
        let factor = chain_factor(self.norm_constant);
        let mut rows = Vec::with_capacity(cfg.ladder.len());
        for (k, &n) in cfg.ladder.iter().enumerate() {
            let count = count_s(x, cfg.gamma, &self.thetas, n - 1, cfg.variant).unwrap_or(0);
            let mut reason = None;
            let b_n = match (&b, singular) {
                (Ok(v), _) => Some(v[k]),
                (Err(_), Some(idx)) if n <= idx => {
                    b_inverse_ladder(x, &self.weights, th, &[n]).ok().map(|v| v[0])
                }
                (Err(e), _) => {
                    reason = Some(format!("{e}"));
                    None
                }
            };
            let (a, two_n_pow) = match interval_bounds(x, cfg.gamma, n) {
                Ok((lo, hi)) => (
                    Some(count_in(&self.sorted_points[k], lo, hi)),
                    2.0 * powf(n as f64, 1.0 - cfg.gamma),
                ),
                Err(e) => {
                    if reason.is_none() {
                        reason = Some(format!("{e}"));
                    }
                    (None, 2.0 * powf(n as f64, 1.0 - cfg.gamma))
                }
            };
            let chain_holds = match (cfg.variant, b_n) {
                (Variant::Combescure, Some(v)) => Some(v >= factor * count as f64 * (1.0 - 1e-12)),
                _ => None,
            };
            rows.push(BScanRow {
                x,
                n,
                b_inverse: b_n,
                count_s: count,
                a,
                two_n_pow,
                n_times_dn: self.n_times_dn[k],
                chain_holds,
                reason,
            });
        }
        let summary = self.summarise(x, &rows);
        (rows, summary)
    }

    fn summarise(&self, x: f64, rows: &[BScanRow]) -> XSummary {
        let cfg = &self.cfg;
        let bs: Option<Vec<f64>> = rows.iter().map(|r| r.b_inverse).collect();
        let mut s = XSummary {
            x,
            b_slope: None,
            relative_change: None,
            ladder_change: None,
            monotone: false,
            growth: false,
            saturation: false,
            a_slope: None,
            a_slope_half_width: None,
            skipped: bs.is_none(),
        };
        if let Some(bs) = bs {
            s.monotone = bs.windows(2).all(|w| w[1] >= w[0]);
            let last = *bs.last().expect("nonempty ladder");
            if last > 0.0 {
                let prev = bs[bs.len().saturating_sub(2)];
                s.relative_change = Some((last - prev) / last);
                s.ladder_change = Some((last - bs[0]) / last);
            }
            if bs.len() >= 2 && bs.iter().all(|&v| v > 0.0) {
                let xs: Vec<f64> = cfg.ladder.iter().map(|&n| ln(n as f64)).collect();
                let ys: Vec<f64> = bs.iter().map(|&v| ln(v)).collect();
                s.b_slope = ols(&xs, &ys).map(|f| f.0);
            }
            s.growth = s.monotone && s.b_slope.is_some_and(|v| v > cfg.growth_slope);
            s.saturation = s.relative_change.is_some_and(|r| r < cfg.saturation_tol);
        }
        let pts: Option<Vec<(f64, f64)>> = rows
            .iter()
            .map(|r| r.a.filter(|&a| a > 0).map(|a| (r.n as f64, a as f64)))
            .collect();
        if let Some(pts) = pts {
            if let Ok(fit) = exponent_fit(&pts) {
                s.a_slope = Some(fit.slope);
                s.a_slope_half_width = Some(fit.half_width);
            } else if pts.len() >= 2 {
                let xs: Vec<f64> = pts.iter().map(|p| ln(p.0)).collect();
                let ys: Vec<f64> = pts.iter().map(|p| ln(p.1)).collect();
                s.a_slope = ols(&xs, &ys).map(|f| f.0);
            }
        }
        s
    }
}

pub fn run_bscan(cfg: &BScanConfig, psi: &PerturbationVector, thetas: &EigenphaseSequence) -> Result<BScanResult> {
    let ctx = BScanContext::new(cfg.clone(), psi, thetas)?;
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &x in &cfg.x_grid {
        let (r, s) = ctx.scan_x(x);
        rows.extend(r);
        summaries.push(s);
    }
    Ok(BScanResult { rows, summaries })
}
