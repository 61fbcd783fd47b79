//! Minimal field abstraction so the closed-form generators can be evaluated
//! both in binary64 and in exact rational arithmetic.

use std::ops::{Add, Div, Mul, Sub};

use dashu_ratio::RBig;

pub trait Field:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Field for RBig {
    fn zero() -> Self {
        RBig::ZERO
    }

    fn one() -> Self {
        RBig::ONE
    }

    fn from_i64(v: i64) -> Self {
        RBig::from(v)
    }
}
