//! Integer backends for the elimination routines.
//!
//! Every routine is written once against [`Exact`] and returns `None` as soon as a checked
//! operation overflows. [`run_exact`] tries the `i128` backend first and reruns the same code
//! on `BigInt` when that happens.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

pub(crate) trait Exact:
    Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64> + Into<BigInt>
{
}

impl Exact for i128 {}
impl Exact for BigInt {}

/// `a - q * b`, checked.
#[inline]
pub(crate) fn sub_mul<T: Exact>(a: &T, q: &T, b: &T) -> Option<T> {
    a.checked_sub(&q.checked_mul(b)?)
}

/// Runs `f` on the `i128` backend and falls back to `BigInt` on overflow.
pub(crate) fn run_exact<R>(small: impl FnOnce() -> Option<R>, big: impl FnOnce() -> Option<R>) -> R {
    small().or_else(big).expect("the arbitrary-precision backend cannot overflow")
}

pub(crate) fn lift<T: Exact>(entries: &[i64]) -> Vec<T> {
    entries.iter().map(|&x| T::from(x)).collect()
}

pub(crate) fn to_i64<T: Exact>(x: T) -> Option<i64> {
    let big: BigInt = x.into();
    big.to_i64()
}
