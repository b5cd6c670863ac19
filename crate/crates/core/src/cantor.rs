//! The middle-thirds Cantor set and its Devil's staircase.
//!
//! Every finite `f64` in `[0, 1]` is a dyadic rational `M / 2^E`, so its
//! ternary digits can be produced exactly with big-integer arithmetic
//! instead of repeated `3x mod 1` in floating point.

use num_bigint::BigUint;

use crate::error::{bail, Result};

pub const DEFAULT_DEPTH: usize = 52;

fn check(x: f64, depth: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        bail!(Domain, "x must lie in [0, 1], got {x}");
    }
    if depth == 0 {
        bail!(Domain, "depth must be at least 1");
    }
    Ok(())
}

/// `(M, E)` with `x = M / 2^E`, for `0 < x < 1`.
fn dyadic(x: f64) -> (u64, usize) {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 {
        (frac, 1074)
    } else {
        (frac | (1u64 << 52), (1075 - exp) as usize)
    }
}

/// Ternary digit step on `r / 2^e`: returns the digit and leaves the
/// remainder in `r`.
fn next_digit(r: &mut BigUint, e: usize) -> u32 {
    *r *= 3u32;
    let d = &*r >> e;
    let digit = u32::try_from(&d).expect("digit below 3");
    if digit != 0 {
        *r -= d << e;
    }
    digit
}

/// Devil's staircase `α(x)`: read ternary digits, stop at the first `1`
/// (emitting a binary `1`), otherwise map `2 → 1`, `0 → 0` and read the
/// result in base 2. Truncation error is at most `2^{−depth}`.
pub fn cantor_value(x: f64, depth: usize) -> Result<f64> {
    check(x, depth)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let (m, e) = dyadic(x);
    let mut r = BigUint::from(m);
    let mut value = 0.0;
    let mut scale = 0.5;
    for _ in 0..depth {
        if r == BigUint::ZERO {
            break;
        }
        match next_digit(&mut r, e) {
            0 => {}
            1 => return Ok(value + scale),
            _ => value += scale,
        }
        scale *= 0.5;
    }
    Ok(value)
}

/// Total length removed after `depth` generations, `Σ_{k≤depth} 2^{k−1}/3^k`.
pub fn removed_measure(depth: usize) -> Result<f64> {
    if depth == 0 {
        bail!(Domain, "depth must be at least 1");
    }
    let mut term = 1.0 / 3.0;
    let mut sum = 0.0;
    for _ in 0..depth {
        sum += term;
        term *= 2.0 / 3.0;
    }
    Ok(sum)
}

/// Membership test on the first `depth` ternary digits.
///
/// The input is treated as the interval of reals that round to it
/// (`x ± ulp/2`). The answer is `false` only when that whole interval sits
/// inside a removed open middle third. An interval touching an endpoint
/// such as `1/3` counts as a member, which resolves `0.1₃ = 0.0222…₃` in
/// favour of the digit-free expansion.
pub fn in_cantor_set(x: f64, depth: usize) -> Result<bool> {
    check(x, depth)?;
    if x == 0.0 || x == 1.0 {
        return Ok(true);
    }
    let (m, e) = dyadic(x);
    let e = e + 1;
    let m2 = BigUint::from(m) << 1usize;
    let mut lo = &m2 - 1u32;
    let mut hi = m2 + 1u32;
    let one = BigUint::from(1u32) << e;
    let two = &one << 1usize;
    for _ in 0..depth {
        if (&hi - &lo) * 3u32 >= one {
            return Ok(true);
        }
        let lo3 = &lo * 3u32;
        let hi3 = &hi * 3u32;
        if lo3 > one && hi3 < two {
            return Ok(false);
        }
        if hi3 <= one {
            lo = lo3;
            hi = hi3;
        } else if lo3 >= two {
            lo = lo3 - &two;
            hi = hi3 - &two;
        } else {
            return Ok(true);
        }
    }
    Ok(true)
}
