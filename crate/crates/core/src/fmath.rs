//! Float math routed through `std` intrinsics or `libm`, so the rest of
//! the crate is oblivious to the `no_std` split.

#![allow(dead_code)]

macro_rules! shim {
    ($name:ident, $libm:ident) => {
        #[cfg(feature = "std")]
        #[inline]
        pub fn $name(x: f64) -> f64 {
            x.$name()
        }
        #[cfg(not(feature = "std"))]
        #[inline]
        pub fn $name(x: f64) -> f64 {
            libm::$libm(x)
        }
    };
}

shim!(sqrt, sqrt);
shim!(cbrt, cbrt);
shim!(floor, floor);
shim!(ceil, ceil);
shim!(round, round);
shim!(trunc, trunc);
shim!(exp, exp);
shim!(ln, log);
shim!(log10, log10);
shim!(sin, sin);
shim!(cos, cos);
shim!(tanh, tanh);

#[cfg(feature = "std")]
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    x.powi(n)
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

#[cfg(feature = "std")]
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    x.hypot(y)
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn hypot3(dx: f64, dy: f64, dz: f64) -> f64 {
    sqrt(dx * dx + dy * dy + dz * dz)
}

/// Pairwise summation: O(log n) rounding depth and a fixed association
/// order, so results do not drift with accumulation order or thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        let mut acc = 0.0;
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}
