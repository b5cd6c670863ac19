//! Adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.

use alloc::vec::Vec;

use crate::error::{bail, Result};

// Kronrod abscissae on [0, 1] (symmetric), Gauss points are the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// `∫_a^b f` to within `max(abs_tol, rel_tol·|∫f|)`, bisecting the interval
/// with the largest local error first.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        bail!(Domain, "integration limits must be finite");
    }
    if !(abs_tol >= 0.0 && rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0) {
        bail!(Domain, "need a positive tolerance");
    }
    const MAX_INTERVALS: usize = 4096;
    let (v0, e0) = gk15(&f, a, b);
    let mut parts: Vec<(f64, f64, f64, f64)> = alloc::vec![(a, b, v0, e0)];
    let mut evaluations = 15;
    loop {
        let value: f64 = parts.iter().map(|p| p.2).sum();
        let error: f64 = parts.iter().map(|p| p.3).sum();
        if !value.is_finite() {
            bail!(Numeric, "integrand produced a non-finite value");
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        if parts.len() >= MAX_INTERVALS {
            bail!(
                Numeric,
                "quadrature did not converge: error estimate {error:e} after {} subintervals",
                parts.len()
            );
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (vl, el) = gk15(&f, lo, mid);
        let (vr, er) = gk15(&f, mid, hi);
        evaluations += 30;
        parts.push((lo, mid, vl, el));
        parts.push((mid, hi, vr, er));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, exp, PI};

    #[test]
    fn polynomials_are_exact() {
        let r = integrate(|x| 3.0 * x * x - x + 1.0, -1.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((r.value - 10.5).abs() < 1e-13, "{}", r.value);
    }

    #[test]
    fn gaussian_bump() {
        let r = integrate(|x| exp(-x * x), -10.0, 10.0, 1e-13, 0.0).unwrap();
        assert!((r.value - crate::math::sqrt(PI)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(|x| cos(20.0 * x), 0.0, PI, 1e-13, 0.0).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn bad_tolerance() {
        assert!(integrate(|x| x, 0.0, 1.0, 0.0, 0.0).is_err());
    }
}
