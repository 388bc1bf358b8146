use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point type every kernel in this crate is generic over.
///
/// Implemented for `f32` and `f64`. The default tolerances in
/// [`EvalConfig`](crate::EvalConfig) scale with the type's epsilon, so the
/// `f32` instantiation works but only to single precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    #[inline]
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `true` when `self` is an integer (including negative ones).
    #[inline]
    fn is_integer(self) -> bool {
        self.is_finite() && self == self.round()
    }

    /// `true` for 0, −1, −2, …
    #[inline]
    fn is_nonpositive_integer(self) -> bool {
        self <= Self::zero() && self.is_integer()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A real number stored as `sign · exp(ln_abs)`.
///
/// Ratios and products of gamma functions are formed in this representation
/// so that parameters in the low hundreds do not overflow before the final
/// combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog<T> {
    pub ln_abs: T,
    pub sign: T,
}

impl<T: Real> SignedLog<T> {
    pub fn new(ln_abs: T, sign: T) -> Self {
        Self { ln_abs, sign }
    }

    pub fn zero() -> Self {
        Self {
            ln_abs: T::neg_infinity(),
            sign: T::zero(),
        }
    }

    pub fn from_value(x: T) -> Self {
        if x == T::zero() {
            Self::zero()
        } else {
            Self {
                ln_abs: x.abs().ln(),
                sign: x.signum(),
            }
        }
    }

    pub fn value(self) -> T {
        if self.sign == T::zero() {
            T::zero()
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    pub fn scale_ln(self, ln_factor: T) -> Self {
        Self {
            ln_abs: self.ln_abs + ln_factor,
            sign: self.sign,
        }
    }
}

impl<T: Real> std::ops::Mul for SignedLog<T> {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        Self {
            ln_abs: self.ln_abs + other.ln_abs,
            sign: self.sign * other.sign,
        }
    }
}

impl<T: Real> std::ops::Div for SignedLog<T> {
    type Output = Self;

    fn div(self, other: Self) -> Self {
        Self {
            ln_abs: self.ln_abs - other.ln_abs,
            sign: self.sign * other.sign,
        }
    }
}

/// `base^exponent` for a possibly negative base and integer exponent,
/// keeping the sign exact.
pub(crate) fn signed_powi<T: Real>(base: T, exponent: i64) -> T {
    if exponent == 0 {
        return T::one();
    }
    let magnitude = base.abs().powf(T::from_int(exponent));
    if base < T::zero() && exponent % 2 != 0 {
        -magnitude
    } else {
        magnitude
    }
}
