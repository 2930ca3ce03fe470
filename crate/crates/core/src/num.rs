//! Scalar abstraction for the numeric core.
//!
//! Everything numeric in this crate is generic over [`Real`], so the same
//! code runs in `f32` or `f64`. The crate root exports `f64` aliases for the
//! common types; `f64` is what the CLI and the test suites use.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, for constants and parsed input.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to any Real")
    }

    /// Widening conversion to `f64`, for reporting and RNG interop.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for `S::from_f64_lossy` at call sites dense with constants.
#[inline]
pub fn real<S: Real>(x: f64) -> S {
    S::from_f64_lossy(x)
}

/// Numerically stable logistic function.
#[inline]
pub fn sigmoid<S: Real>(x: S) -> S {
    if x >= S::zero() {
        let z = (-x).exp();
        S::one() / (S::one() + z)
    } else {
        let z = x.exp();
        z / (S::one() + z)
    }
}

/// Log-odds of a probability in (0, 1).
#[inline]
pub fn logit<S: Real>(p: S) -> S {
    (p / (S::one() - p)).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigmoid_matches_closed_form() {
        assert_eq!(sigmoid(0.0f64), 0.5);
        let x = 3.7f64;
        assert!((sigmoid(x) - 1.0 / (1.0 + (-x).exp())).abs() < 1e-15);
        assert!((sigmoid(-x) - (1.0 - sigmoid(x))).abs() < 1e-15);
    }

    #[test]
    fn logit_inverts_sigmoid() {
        for &x in &[-5.0f64, -0.3, 0.0, 1.2, 6.0] {
            assert!((logit(sigmoid(x)) - x).abs() < 1e-9);
        }
    }

    #[test]
    fn works_in_f32() {
        let p: f32 = sigmoid(0.0);
        assert_eq!(p, 0.5);
    }
}
