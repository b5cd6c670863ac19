//! Thin wrappers over `libm` so the rest of the crate reads like ordinary
//! float code without pulling in std.

pub(crate) use core::f64::consts::{PI, TAU};

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub(crate) fn tan(x: f64) -> f64 {
    libm::tan(x)
}
#[inline]
pub(crate) fn atan(x: f64) -> f64 {
    libm::atan(x)
}
#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub(crate) fn fma(a: f64, b: f64, c: f64) -> f64 {
    libm::fma(a, b, c)
}

/// Reduce an angle to `[0, 2π)`.
pub(crate) fn wrap_tau(x: f64) -> f64 {
    let r = x - TAU * floor(x / TAU);
    if !(0.0..TAU).contains(&r) {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub(crate) fn circular_distance(a: f64, b: f64) -> f64 {
    let d = wrap_tau(a - b);
    if d > PI {
        TAU - d
    } else {
        d
    }
}

/// Pairwise summation with a fixed split order, so results do not depend on
/// how callers chunk work.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}
