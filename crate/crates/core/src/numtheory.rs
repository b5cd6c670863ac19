//! Equidistribution toolkit: fractional parts, continued fractions and the
//! irrational type, exact discrepancy, the Erdős–Turán bound, Weyl sums and
//! power-law fits.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::math::{cos, floor, fma, ln, pairwise_sum, powf, sin, sqrt, TAU};

/// Largest double below one; fractional parts that round up to `1.0` are
/// clamped here.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Relative precision carried by [`Dd`] values built from exact inputs.
pub const DD_PRECISION: f64 = 7.888_609_052_210_118e-31; // 2^-100

/// Integers up to this bound convert to [`Dd`] exactly.
const DD_EXACT_INT: u128 = 1 << 100;

/// Double-double number `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, fma(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    /// Exact for `n < 2^106`.
    pub fn from_u128(n: u128) -> Self {
        let hi = n as f64;
        let rest = n as i128 - hi as i128;
        Dd::new(hi, rest as f64)
    }

    pub fn from_i128(n: i128) -> Self {
        if n < 0 {
            -Dd::from_u128(n.unsigned_abs())
        } else {
            Dd::from_u128(n as u128)
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (h, l) = quick_two_sum(p, e + self.lo * b);
        Dd { hi: h, lo: l }
    }

    pub fn div(self, b: Dd) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + Dd::from_f64(q3)
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = sqrt(self.hi);
        let (p, e) = two_prod(s, s);
        let r = (self - Dd { hi: p, lo: e }).to_f64();
        Dd::new(s, r / (2.0 * s))
    }

    pub fn floor(self) -> Self {
        let fh = floor(self.hi);
        if fh == self.hi {
            Dd::new(fh, floor(self.lo))
        } else {
            Dd::from_f64(fh)
        }
    }

    /// Fractional part in `[0, 1)`.
    pub fn frac(self) -> Self {
        let f = self - self.floor();
        if f.is_negative() {
            Dd::ZERO
        } else if f.hi >= 1.0 {
            Dd::from_f64(BELOW_ONE)
        } else {
            f
        }
    }

    pub fn lt(self, o: Dd) -> bool {
        self.hi < o.hi || (self.hi == o.hi && self.lo < o.lo)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (h, l) = quick_two_sum(s, e + f);
        Dd { hi: h, lo: l }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let (h, l) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi: h, lo: l }
    }
}

/// `({β}, ⟨β⟩)`: fractional part in `[0, 1)` and distance to the nearest
/// integer in `[0, 1/2]`.
pub fn frac_and_dist(beta: f64) -> (f64, f64) {
    let mut f = beta - floor(beta);
    if f >= 1.0 {
        f = BELOW_ONE;
    }
    (f, f.min(1.0 - f))
}

#[derive(Debug, Clone, PartialEq)]
pub enum IrrationalRepr {
    /// A value with the given relative precision.
    Value { value: Dd, precision: f64 },
    /// `[0; a_1, a_2, …]`, all `a_i ≥ 1`.
    Quotients(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrrationalSpec {
    repr: IrrationalRepr,
    label: String,
}

impl IrrationalSpec {
    /// `(√5 − 1)/2`.
    pub fn golden() -> Self {
        let v = (Dd::from_f64(5.0).sqrt() - Dd::from_f64(1.0)).mul_f64(0.5);
        Self::from_dd(v, DD_PRECISION, "golden")
    }

    pub fn sqrt2() -> Self {
        Self::from_dd(Dd::from_f64(2.0).sqrt(), DD_PRECISION, "sqrt2")
    }

    /// A double taken as the (rounded) real it stands for.
    pub fn from_f64(x: f64, label: &str) -> Self {
        Self::from_dd(Dd::from_f64(x), f64::EPSILON / 2.0, label)
    }

    pub fn from_dd(value: Dd, precision: f64, label: &str) -> Self {
        Self {
            repr: IrrationalRepr::Value {
                value,
                precision: precision.max(DD_PRECISION),
            },
            label: label.to_string(),
        }
    }

    /// `p/q` to double-double precision.
    pub fn ratio(p: i64, q: u64, label: &str) -> Result<Self> {
        if q == 0 {
            bail!(Domain, "zero denominator");
        }
        let v = Dd::from_i128(p as i128).div(Dd::from_u128(q as u128));
        Ok(Self::from_dd(v, DD_PRECISION, label))
    }

    pub fn from_quotients(quotients: Vec<u64>, label: &str) -> Result<Self> {
        if quotients.is_empty() {
            bail!(Precondition, "need at least one partial quotient");
        }
        if quotients.contains(&0) {
            bail!(Precondition, "partial quotients must all be >= 1");
        }
        Ok(Self {
            repr: IrrationalRepr::Quotients(quotients),
            label: label.to_string(),
        })
    }

    pub fn repr(&self) -> &IrrationalRepr {
        &self.repr
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self) -> Dd {
        match &self.repr {
            IrrationalRepr::Value { value, .. } => *value,
            IrrationalRepr::Quotients(a) => {
                let mut x = Dd::from_f64(a[a.len() - 1] as f64);
                for &ai in a[..a.len() - 1].iter().rev() {
                    x = Dd::from_f64(ai as f64) + Dd::from_f64(1.0).div(x);
                }
                Dd::from_f64(1.0).div(x)
            }
        }
    }

    /// Relative precision of [`Self::value`].
    pub fn precision(&self) -> f64 {
        match &self.repr {
            IrrationalRepr::Value { precision, .. } => *precision,
            IrrationalRepr::Quotients(_) => DD_PRECISION,
        }
    }

    /// Estimated correct decimal digits of `{nʲβ}` for `n ≤ n_max`.
    pub fn mod1_digits(&self, j: u32, n_max: u64) -> f64 {
        let scale = self.value().to_f64().abs().max(1.0);
        -libm::log10(powf(n_max as f64, j as f64) * scale * self.precision())
    }
}

/// Continued-fraction expansion `β = [a_0; a_1, a_2, …]` with convergents
/// `p_i/q_i` and `⟨q_iβ⟩ = |q_iβ − p_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuedFraction {
    pub a0: i128,
    /// `a_1, a_2, …`
    pub quotients: Vec<u64>,
    /// `(p_i, q_i)` for `i = 0..=quotients.len()`.
    pub convergents: Vec<(i128, u128)>,
    /// `⟨q_iβ⟩`, aligned with `convergents`; `None` where the data do not
    /// determine it (last convergent of a finite quotient list).
    pub distances: Vec<Option<f64>>,
    /// Expansion stopped before `depth` because precision or the quotient
    /// list ran out.
    pub truncated: bool,
    /// Remainder vanished at a small denominator: the value is rational.
    pub rational: bool,
}

impl ContinuedFraction {
    pub fn depth(&self) -> usize {
        self.quotients.len()
    }
}

pub fn continued_fraction(beta: &IrrationalSpec, depth: usize) -> Result<ContinuedFraction> {
    if depth == 0 {
        bail!(Precondition, "depth must be at least 1");
    }
    match &beta.repr {
        IrrationalRepr::Value { value, precision } => Ok(cf_from_value(*value, *precision, depth)),
        IrrationalRepr::Quotients(a) => Ok(cf_from_quotients(a, depth)),
    }
}

fn cf_from_value(beta: Dd, precision: f64, depth: usize) -> ContinuedFraction {
    let a0 = beta.floor().to_f64() as i128;
    let scale = beta.to_f64().abs().max(1.0);
    let mut out = ContinuedFraction {
        a0,
        quotients: Vec::new(),
        convergents: alloc::vec![(a0, 1)],
        distances: Vec::new(),
        truncated: false,
        rational: false,
    };
    let (mut p_prev, mut q_prev): (i128, u128) = (1, 0);
    let (mut p, mut q): (i128, u128) = (a0, 1);
    let mut r_prev = Dd::from_f64(-1.0);
    let mut r = beta - Dd::from_i128(a0);
    out.distances.push(Some(r.abs().to_f64()));
    let rational_q = powf(precision, -0.25);
    while out.quotients.len() < depth {
        let tol = 4.0 * q as f64 * scale * precision;
        let ar = r.abs();
        if ar.to_f64() <= tol {
            if (q as f64) <= rational_q {
                out.rational = true;
                *out.distances.last_mut().expect("nonempty") = Some(0.0);
            } else {
                out.truncated = true;
            }
            break;
        }
        let arp = r_prev.abs();
        let ratio = arp.div(ar).floor().to_f64();
        if !(ratio < u64::MAX as f64) {
            out.truncated = true;
            break;
        }
        let mut a = ratio as u64;
        let rem = arp - ar.mul_f64(a as f64);
        if rem.is_negative() && a > 1 {
            a -= 1;
        } else if !(rem + Dd::from_f64(tol)).lt(ar) {
            a += 1;
        }
        let next = (a as i128)
            .checked_mul(p)
            .and_then(|x| x.checked_add(p_prev))
            .zip((a as u128).checked_mul(q).and_then(|x| x.checked_add(q_prev)));
        let Some((p_new, q_new)) = next.filter(|&(_, qn)| qn <= DD_EXACT_INT) else {
            out.truncated = true;
            break;
        };
        let r_new = Dd::from_u128(q_new) * beta - Dd::from_i128(p_new);
        out.quotients.push(a);
        out.convergents.push((p_new, q_new));
        out.distances.push(Some(r_new.abs().to_f64()));
        (p_prev, q_prev, p, q) = (p, q, p_new, q_new);
        (r_prev, r) = (r, r_new);
    }
    out
}

fn cf_from_quotients(a: &[u64], depth: usize) -> ContinuedFraction {
    let mut out = ContinuedFraction {
        a0: 0,
        quotients: Vec::new(),
        convergents: alloc::vec![(0, 1)],
        distances: Vec::new(),
        truncated: false,
        rational: false,
    };
    let (mut p_prev, mut q_prev): (i128, u128) = (1, 0);
    let (mut p, mut q): (i128, u128) = (0, 1);
    for &ai in a.iter().take(depth) {
        let next = (ai as i128)
            .checked_mul(p)
            .and_then(|x| x.checked_add(p_prev))
            .zip((ai as u128).checked_mul(q).and_then(|x| x.checked_add(q_prev)));
        let Some((p_new, q_new)) = next else {
            out.truncated = true;
            break;
        };
        out.quotients.push(ai);
        out.convergents.push((p_new, q_new));
        (p_prev, q_prev, p, q) = (p, q, p_new, q_new);
    }
    if out.quotients.len() < depth {
        out.truncated = true;
    }
    // ⟨q_iβ⟩ = 1/(q_i ζ_{i+1} + q_{i−1}) with complete quotients ζ evaluated
    // backward from the listed tail.
    let k = a.len();
    let mut zeta = alloc::vec![0.0f64; k + 1];
    zeta[k - 1] = a[k - 1] as f64;
    for i in (0..k - 1).rev() {
        zeta[i] = a[i] as f64 + 1.0 / zeta[i + 1];
    }
    for i in 0..out.convergents.len() {
        // zeta[i] is ζ_{i+1} in 1-based quotient numbering.
        if i < k {
            let qi = out.convergents[i].1 as f64;
            let q_before = if i == 0 { 0.0 } else { out.convergents[i - 1].1 as f64 };
            out.distances.push(Some(1.0 / (qi * zeta[i] + q_before)));
        } else {
            out.distances.push(None);
        }
    }
    out
}

/// Finite-`Q` estimate of the irrational type.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeEstimate {
    /// Running max of `ln(1/(√5⟨qβ⟩))/ln q` over convergent denominators
    /// `2 ≤ q ≤ Q`. A lower sample of the supremum, not the type itself.
    /// Infinite for rational input, NaN when no denominator qualified.
    pub eta_hat: f64,
    /// Same maximum without the `√5` normalisation.
    pub raw_max: f64,
    /// `(q, ln(1/(√5⟨qβ⟩))/ln q)` per sampled denominator.
    pub samples: Vec<(u128, f64)>,
    pub rational: bool,
    /// Expansion ran out of precision before reaching `Q`.
    pub precision_limited: bool,
}

/// `√5`: Hurwitz's constant, the best possible `c` in `⟨qβ⟩ < 1/(c q)`
/// holding infinitely often for every irrational.
const HURWITZ: f64 = 2.236_067_977_499_79;

pub fn type_estimate(beta: &IrrationalSpec, q_max: u64) -> Result<TypeEstimate> {
    if q_max < 10 {
        bail!(Precondition, "Q must be at least 10, got {q_max}");
    }
    let cf = continued_fraction(beta, 400)?;
    let mut samples = Vec::new();
    let mut eta_hat = f64::NAN;
    let mut raw_max = f64::NAN;
    let mut reached = false;
    for (i, &(_, q)) in cf.convergents.iter().enumerate() {
        if q > q_max as u128 {
            reached = true;
            break;
        }
        let Some(d) = cf.distances[i] else { continue };
        if q < 2 || d <= 0.0 {
            continue;
        }
        let lq = ln(q as f64);
        let e = ln(1.0 / (HURWITZ * d)) / lq;
        let raw = ln(1.0 / d) / lq;
        eta_hat = if eta_hat.is_nan() { e } else { eta_hat.max(e) };
        raw_max = if raw_max.is_nan() { raw } else { raw_max.max(raw) };
        samples.push((q, e));
    }
    if cf.rational {
        eta_hat = f64::INFINITY;
        raw_max = f64::INFINITY;
    }
    Ok(TypeEstimate {
        eta_hat,
        raw_max,
        samples,
        rational: cf.rational,
        precision_limited: !reached && cf.truncated && !cf.rational,
    })
}

fn checked_pow(n: u64, j: u32) -> Option<u128> {
    (n as u128).checked_pow(j).filter(|&v| v <= DD_EXACT_INT)
}

/// `{nʲβ}` for `n = 1..=N`; `nʲ` is formed exactly and the product is
/// reduced in double-double.
pub fn sequence_mod1(j: u32, beta: Dd, count: u64) -> Result<Vec<f64>> {
    if j == 0 {
        bail!(Precondition, "j must be at least 1");
    }
    if checked_pow(count, j).is_none() {
        bail!(Precondition, "N^j = {count}^{j} exceeds the exact range 2^100");
    }
    Ok((1..=count)
        .map(|n| {
            let nj = Dd::from_u128((n as u128).pow(j));
            clamp_unit((nj * beta).frac().to_f64())
        })
        .collect())
}

fn clamp_unit(x: f64) -> f64 {
    if x >= 1.0 {
        BELOW_ONE
    } else {
        x
    }
}

fn check_unit_points(points: &[f64]) -> Result<()> {
    if points.is_empty() {
        bail!(Precondition, "need at least one point");
    }
    if let Some((i, x)) = points.iter().enumerate().find(|(_, x)| !(0.0..1.0).contains(*x)) {
        bail!(Contract, "point {i} = {x} is outside [0, 1)");
    }
    Ok(())
}

/// Extreme discrepancy `sup_{[a,b)} |A([a,b))/N − (b − a)|` via the sorted
/// closed form `(1 + max_i(i − N x_(i)) − min_i(i − N x_(i)))/N`.
pub fn discrepancy_exact(points: &[f64]) -> Result<f64> {
    check_unit_points(points)?;
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    Ok(discrepancy_sorted(&xs))
}

pub(crate) fn discrepancy_sorted(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for (i, &x) in xs.iter().enumerate() {
        let v = i as f64 - n * x;
        hi = hi.max(v);
        lo = lo.min(v);
    }
    (1.0 + hi - lo) / n
}

/// Constant in the Erdős–Turán inequality as used here. The explicit form
/// `D_N ≤ 6/(m+1) + (4/π) Σ_{h≤m} (1/h − 1/(m+1)) |S_h/N|` is dominated
/// term by term by `6 (1/m + Σ_{h≤m} |S_h/N|/h)`.
pub const ERDOS_TURAN_C: f64 = 6.0;

/// `|N⁻¹ Σ_n e^{2πi h x_n}|`.
pub fn exponential_sum_mean(points: &[f64], h: u64) -> f64 {
    let mut re = Vec::with_capacity(points.len());
    let mut im = Vec::with_capacity(points.len());
    for &x in points {
        let (f, _) = frac_and_dist(h as f64 * x);
        re.push(cos(TAU * f));
        im.push(sin(TAU * f));
    }
    let n = points.len() as f64;
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im)).norm() / n
}

pub fn erdos_turan_bound(points: &[f64], m: u64) -> Result<f64> {
    check_unit_points(points)?;
    if m == 0 {
        bail!(Precondition, "m must be at least 1");
    }
    let terms: Vec<f64> = (1..=m)
        .map(|h| exponential_sum_mean(points, h) / h as f64)
        .collect();
    Ok(ERDOS_TURAN_C * (1.0 / m as f64 + pairwise_sum(&terms)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub n: usize,
    pub d_n: f64,
    pub et_bound: f64,
    pub m_used: u64,
}

pub fn discrepancy_report(points: &[f64], m: u64) -> Result<DiscrepancyReport> {
    Ok(DiscrepancyReport {
        n: points.len(),
        d_n: discrepancy_exact(points)?,
        et_bound: erdos_turan_bound(points, m)?,
        m_used: m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylSum {
    pub s: Complex64,
    pub modulus: f64,
}

/// `S = Σ_{n=1}^N exp(2πi h nʲβ)` with `h nʲβ` reduced mod 1 in
/// double-double before exponentiation.
pub fn weyl_sum(j: u32, beta: Dd, h: u64, count: u64) -> Result<WeylSum> {
    if j == 0 || h == 0 || count == 0 {
        bail!(Precondition, "j, h and N must all be at least 1");
    }
    match checked_pow(count, j).and_then(|v| v.checked_mul(h as u128)) {
        Some(v) if v <= DD_EXACT_INT => {}
        _ => bail!(Precondition, "h N^j exceeds the exact range 2^100"),
    }
    let mut re = Vec::with_capacity(count as usize);
    let mut im = Vec::with_capacity(count as usize);
    for n in 1..=count {
        let k = Dd::from_u128((n as u128).pow(j) * h as u128);
        let f = (k * beta).frac().to_f64();
        re.push(cos(TAU * f));
        im.push(sin(TAU * f));
    }
    let s = Complex64::new(pairwise_sum(&re), pairwise_sum(&im));
    Ok(WeylSum { s, modulus: s.norm() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    /// 95% confidence half-width of the slope (Student t).
    pub half_width: f64,
    pub points: usize,
}

/// Minimum spread of a fit ladder, in decades of `N`.
pub const MIN_FIT_DECADES: f64 = 1.5;

const T975: [f64; 30] = [
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160,
    2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056,
    2.052, 2.048, 2.045, 2.042,
];

fn t975(df: usize) -> f64 {
    if df == 0 {
        f64::INFINITY
    } else if df <= T975.len() {
        T975[df - 1]
    } else {
        1.96
    }
}

/// Ordinary least squares `y = a + b x`; returns `(b, a, se(b))`.
pub fn ols(xs: &[f64], ys: &[f64]) -> Option<(f64, f64, f64)> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if !(sxx > 0.0) {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let se = if n > 2 {
        let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| {
                let r = y - a - b * x;
                r * r
            })
            .sum();
        sqrt(ssr / (nf - 2.0) / sxx)
    } else {
        f64::NAN
    };
    Some((b, a, se))
}

/// Least-squares slope of `ln value` against `ln N`.
pub fn exponent_fit(series: &[(f64, f64)]) -> Result<PowerFit> {
    if series.len() < 4 {
        bail!(Precondition, "need at least 4 ladder points, got {}", series.len());
    }
    if let Some((n, v)) = series.iter().find(|(n, v)| !(*n > 0.0 && *v > 0.0 && n.is_finite() && v.is_finite())) {
        bail!(Numeric, "power-law fit needs positive finite data, got ({n}, {v})");
    }
    let nmin = series.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let nmax = series.iter().map(|p| p.0).fold(0.0, f64::max);
    let decades = libm::log10(nmax / nmin);
    if decades < MIN_FIT_DECADES {
        bail!(
            Precondition,
            "ladder spans {decades:.2} decades, need at least {MIN_FIT_DECADES}"
        );
    }
    let xs: Vec<f64> = series.iter().map(|p| ln(p.0)).collect();
    let ys: Vec<f64> = series.iter().map(|p| ln(p.1)).collect();
    let (slope, intercept, se) = ols(&xs, &ys).expect("spread checked above");
    Ok(PowerFit {
        slope,
        intercept,
        half_width: t975(series.len() - 2) * se,
        points: series.len(),
    })
}

/// Admissible decay exponents `(1/2, 1/2 + 1/(2ηj))`.
pub fn gamma_window(j: u32, eta: f64) -> Result<(f64, f64)> {
    if j == 0 {
        bail!(Domain, "j must be at least 1");
    }
    if !(eta >= 1.0 && eta.is_finite()) {
        bail!(Domain, "irrational type must satisfy eta >= 1, got {eta}");
    }
    Ok((0.5, 0.5 + 1.0 / (2.0 * eta * j as f64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn frac_examples() {
        assert_eq!(frac_and_dist(2.25), (0.25, 0.25));
        let (f, d) = frac_and_dist(-0.1);
        assert!((f - 0.9).abs() < 1e-15 && (d - 0.1).abs() < 1e-15);
        assert_eq!(frac_and_dist(0.5).1, 0.5);
        let (f, _) = frac_and_dist(-1e-20);
        assert!(f < 1.0);
    }

    #[test]
    fn dd_arithmetic_basics() {
        let s2 = Dd::from_f64(2.0).sqrt();
        let back = s2 * s2 - Dd::from_f64(2.0);
        assert!(back.to_f64().abs() < 1e-30);
        let third = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        assert!((third.mul_f64(3.0) - Dd::from_f64(1.0)).to_f64().abs() < 1e-31);
        let big = Dd::from_u128((1u128 << 80) + 12345);
        assert_eq!(big.hi as u128, 1u128 << 80);
        assert_eq!(big.lo, 12345.0);
        assert_eq!(Dd::from_f64(-2.5).frac().to_f64(), 0.5);
    }

    #[test]
    fn golden_quotients_all_one() {
        let cf = continued_fraction(&IrrationalSpec::golden(), 60).unwrap();
        assert_eq!(cf.a0, 0);
        assert!(cf.quotients.iter().all(|&a| a == 1), "{:?}", cf.quotients);
        assert!(!cf.rational);
    }

    #[test]
    fn quarter_terminates() {
        let cf = continued_fraction(&IrrationalSpec::ratio(1, 4, "1/4").unwrap(), 10).unwrap();
        assert_eq!((cf.a0, cf.quotients.clone()), (0, vec![4]));
        assert!(cf.rational);
        let cf = continued_fraction(&IrrationalSpec::from_f64(0.25, "0.25"), 10).unwrap();
        assert_eq!(cf.quotients, vec![4]);
        assert!(cf.rational);
    }

    #[test]
    fn three_sevenths_rational() {
        let cf = continued_fraction(&IrrationalSpec::ratio(3, 7, "3/7").unwrap(), 20).unwrap();
        assert_eq!(cf.quotients, vec![2, 3]);
        assert!(cf.rational);
        assert_eq!(*cf.convergents.last().unwrap(), (3, 7));
    }

    #[test]
    fn sqrt2_minus_one_all_twos() {
        let v = Dd::from_f64(2.0).sqrt() - Dd::from_f64(1.0);
        let cf = continued_fraction(&IrrationalSpec::from_dd(v, DD_PRECISION, "s"), 20).unwrap();
        assert_eq!(cf.quotients, vec![2; 20]);
        let cf = continued_fraction(&IrrationalSpec::sqrt2(), 20).unwrap();
        assert_eq!(cf.a0, 1);
        assert_eq!(cf.quotients, vec![2; 20]);
    }

    #[test]
    fn negative_value_expansion() {
        let cf = continued_fraction(&IrrationalSpec::ratio(-7, 2, "-7/2").unwrap(), 10).unwrap();
        assert_eq!(cf.a0, -4);
        assert_eq!(cf.quotients, vec![2]);
        assert!(cf.rational);
    }

    #[test]
    fn quotient_form_distances() {
        let spec = IrrationalSpec::from_quotients(vec![1; 40], "g").unwrap();
        let cf = continued_fraction(&spec, 40).unwrap();
        let golden = IrrationalSpec::golden().value().to_f64();
        for (i, &(p, q)) in cf.convergents.iter().enumerate().take(30) {
            let direct = (q as f64 * golden - p as f64).abs();
            let d = cf.distances[i].unwrap();
            assert!((d - direct).abs() <= 1e-14 * (1.0 + q as f64), "{i}: {d} {direct}");
        }
        assert!(cf.distances.last().unwrap().is_none());
        assert!(!cf.rational);
    }

    #[test]
    fn golden_type_estimate() {
        let t = type_estimate(&IrrationalSpec::golden(), 1_000_000).unwrap();
        assert!((0.95..=1.1).contains(&t.eta_hat), "{}", t.eta_hat);
        assert!(!t.rational);
    }

    #[test]
    fn rational_type_flag() {
        let t = type_estimate(&IrrationalSpec::ratio(3, 7, "3/7").unwrap(), 100).unwrap();
        assert!(t.rational);
        assert!(t.eta_hat.is_infinite());
    }

    #[test]
    fn liouville_style_type_above_two() {
        let spec = IrrationalSpec::from_quotients(vec![1, 10, 100, 10_000, 100_000_000], "liouville").unwrap();
        let t = type_estimate(&spec, 10_000).unwrap();
        assert!(t.eta_hat > 2.0, "{}", t.eta_hat);
    }

    #[test]
    fn sequence_small_cases() {
        assert_eq!(sequence_mod1(1, Dd::from_f64(0.25), 4).unwrap(), vec![0.25, 0.5, 0.75, 0.0]);
        assert_eq!(sequence_mod1(2, Dd::from_f64(0.5), 3).unwrap(), vec![0.5, 0.0, 0.5]);
        assert!(sequence_mod1(0, Dd::from_f64(0.5), 3).is_err());
    }

    #[test]
    fn discrepancy_grid_examples() {
        assert_eq!(discrepancy_exact(&[0.125, 0.375, 0.625, 0.875]).unwrap(), 0.25);
        assert_eq!(discrepancy_exact(&[0.3; 5]).unwrap(), 1.0);
        let grid: Vec<f64> = (0..16).map(|i| i as f64 / 16.0).collect();
        assert_eq!(discrepancy_exact(&grid).unwrap(), 1.0 / 16.0);
        assert!(discrepancy_exact(&[0.5, 1.0]).is_err());
    }

    #[test]
    fn erdos_turan_on_grid_and_atom() {
        let grid: Vec<f64> = (0..64).map(|i| i as f64 / 64.0).collect();
        let b = erdos_turan_bound(&grid, 8).unwrap();
        assert!((b - ERDOS_TURAN_C / 8.0).abs() < 1e-12);
        let atom = [0.37; 10];
        assert!(erdos_turan_bound(&atom, 3).unwrap() >= 1.0);
    }

    #[test]
    fn weyl_cancellation() {
        assert!(weyl_sum(1, Dd::from_f64(0.25), 1, 4).unwrap().modulus <= 1e-12);
        assert!(weyl_sum(1, Dd::from_f64(0.5), 1, 2).unwrap().modulus <= 1e-12);
    }

    #[test]
    fn exact_power_law_fit() {
        let s: Vec<(f64, f64)> = (0..6).map(|k| {
            let n = powf(10.0, k as f64 * 0.5);
            (n, sqrt(n))
        }).collect();
        let f = exponent_fit(&s).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!(exponent_fit(&s[..3]).is_err());
        let mut bad = s.clone();
        bad[2].1 = 0.0;
        assert!(exponent_fit(&bad).is_err());
        let narrow: Vec<(f64, f64)> = (1..=5).map(|k| (k as f64 * 10.0, 1.0 + k as f64)).collect();
        assert!(exponent_fit(&narrow).is_err());
    }

    #[test]
    fn gamma_windows() {
        assert_eq!(gamma_window(1, 1.0).unwrap(), (0.5, 1.0));
        assert_eq!(gamma_window(2, 1.0).unwrap(), (0.5, 0.75));
        assert_eq!(gamma_window(3, 2.0).unwrap(), (0.5, 0.5 + 1.0 / 12.0));
        assert!(gamma_window(1, 0.9).is_err());
    }
}
