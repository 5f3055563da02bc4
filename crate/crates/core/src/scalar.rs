//! Scalar abstraction: the polynomial and linear algebra layers work over any
//! field-like type; exact rationals, floats, complex floats and quadratic
//! tower elements all plug in through the same bounds.

use crate::Rat;
use num_traits::{Num, ToPrimitive};
use std::ops::Neg;

/// Field-like scalar. Blanket-implemented; `Rat`, `f64`, `Complex<f64>` and
/// [`crate::tower::TowerElem`] all qualify.
pub trait Scalar: Num + Clone + Neg<Output = Self> {}
impl<T: Num + Clone + Neg<Output = T>> Scalar for T {}

/// Embedding of the exact rationals into a scalar type.
pub trait FromRat: Sized {
    fn from_rat(r: &Rat) -> Self;
}

impl FromRat for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl FromRat for f64 {
    fn from_rat(r: &Rat) -> Self {
        // Ratio<BigInt>::to_f64 handles magnitudes beyond f64 by scaling.
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromRat for crate::C64 {
    fn from_rat(r: &Rat) -> Self {
        crate::C64::new(f64::from_rat(r), 0.0)
    }
}
