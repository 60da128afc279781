//! Scalar abstractions shared by the counting, formula, and bound code.
//!
//! Exact counts are generic over any [`Exact`] integer type, so a caller can
//! run a small enumeration in `u64` and a large one in `BigUint`. The real
//! valued diagnostics (Stirling approximation, growth roots) are generic over
//! [`Real`].

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// An exact, nonnegative-capable integer type used for counts.
///
/// Fixed-width implementors overflow like any Rust integer; `BigUint` never does.
pub trait Exact:
    Integer + Clone + FromPrimitive + ToPrimitive + Display + Debug + Send + Sync + 'static
{
    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count representable in scalar type")
    }

    fn pow(&self, exp: usize) -> Self {
        num_traits::pow::pow(self.clone(), exp)
    }
}

impl<T> Exact for T where
    T: Integer + Clone + FromPrimitive + ToPrimitive + Display + Debug + Send + Sync + 'static
{
}

/// Floating point scalar for approximate diagnostics.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count representable in float type")
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

/// `count^(1/length)` computed through logarithms so huge counts stay finite.
pub fn root<C: Exact, R: Real>(count: &C, length: usize) -> R {
    if length == 0 || count.is_zero() {
        return R::zero();
    }
    let ln = ln_exact::<C, R>(count);
    (ln / R::from_count(length)).exp()
}

fn ln_exact<C: Exact, R: Real>(value: &C) -> R {
    if let Some(v) = value.to_f64() {
        if v.is_finite() {
            return R::from_f64(v.ln()).expect("finite");
        }
    }
    // Split off powers of two until the mantissa fits in an f64.
    let two = C::from_count(2);
    let mut shifted = value.clone();
    let mut halvings = 0usize;
    while shifted.to_f64().is_none_or(|v| !v.is_finite()) {
        shifted = shifted / two.clone();
        halvings += 1;
    }
    let base = shifted.to_f64().expect("finite after shifting").ln();
    R::from_f64(base + halvings as f64 * std::f64::consts::LN_2).expect("finite")
}

/// Serde adapter writing big integers as decimal strings.
pub mod decimal_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing ratios as `"p/q"` (or `"p"` when integral).
pub mod ratio_string {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
