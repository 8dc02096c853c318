//! Involutive commutative semirings used as scalars.

use std::fmt::Debug;

use crate::error::Result;
use crate::frobenius::{self, ClassicalStructure};
use crate::tensor::Mor;

pub use num_complex::Complex64 as C64;

/// Which of the two models a scalar type realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Complex,
    Boolean,
}

/// An involutive commutative semiring.
///
/// `conj` is a semiring automorphism with `conj(conj(x)) == x`.
pub trait Scalar: Copy + PartialEq + Debug + Send + Sync + 'static {
    const MODEL: ModelKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn conj(self) -> Self;
    fn is_zero(&self) -> bool;

    /// Distance used by law checks: `|a - b|` for complex numbers, 0 or 1
    /// for booleans.
    fn distance(self, other: Self) -> f64;

    /// Image of an integer under the unique semiring map from the naturals
    /// (extended to negatives in the complex case).
    fn from_i64(k: i64) -> Self;

    /// Image of a real number; booleans map every nonzero value to `true`.
    fn from_f64(x: f64) -> Self;

    /// Squared modulus viewed as a real weight.
    fn weight(self) -> f64;

    /// Tolerance used when no explicit one is supplied.
    fn default_tolerance() -> f64;

    /// Real and strictly positive (for booleans: `true`).
    fn is_positive(self, tol: f64) -> bool;

    /// Candidate copyable vectors of a structure, in this model's search
    /// strategy. Callers should go through [`ClassicalStructure::find_basis`].
    #[doc(hidden)]
    fn copyables(cs: &ClassicalStructure<Self>, tol: f64) -> Result<Vec<Mor<Self>>>;
}

impl Scalar for C64 {
    const MODEL: ModelKind = ModelKind::Complex;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn conj(self) -> Self {
        C64::conj(&self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }
    fn from_i64(k: i64) -> Self {
        C64::new(k as f64, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        C64::new(x, 0.0)
    }
    fn weight(self) -> f64 {
        self.norm_sqr()
    }
    fn default_tolerance() -> f64 {
        1e-9
    }
    fn is_positive(self, tol: f64) -> bool {
        self.re > tol && self.im.abs() <= tol
    }
    fn copyables(cs: &ClassicalStructure<Self>, tol: f64) -> Result<Vec<Mor<Self>>> {
        frobenius::complex_copyables(cs, tol)
    }
}

impl Scalar for bool {
    const MODEL: ModelKind = ModelKind::Boolean;

    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(self, other: Self) -> Self {
        self | other
    }
    fn mul(self, other: Self) -> Self {
        self & other
    }
    fn conj(self) -> Self {
        self
    }
    fn is_zero(&self) -> bool {
        !*self
    }
    fn distance(self, other: Self) -> f64 {
        if self == other {
            0.0
        } else {
            1.0
        }
    }
    fn from_i64(k: i64) -> Self {
        k != 0
    }
    fn from_f64(x: f64) -> Self {
        x != 0.0
    }
    fn weight(self) -> f64 {
        if self {
            1.0
        } else {
            0.0
        }
    }
    fn default_tolerance() -> f64 {
        0.0
    }
    fn is_positive(self, _tol: f64) -> bool {
        self
    }
    fn copyables(cs: &ClassicalStructure<Self>, _tol: f64) -> Result<Vec<Mor<Self>>> {
        frobenius::boolean_copyables(cs)
    }
}

#[cfg(test)]
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c64() -> impl Strategy<Value = C64> {
        (-4i32..=4, -4i32..=4).prop_map(|(a, b)| C64::new(a as f64, b as f64))
    }

    fn check_laws<S: Scalar>(a: S, b: S, c: S) {
        assert_eq!(a.add(b), b.add(a));
        assert_eq!(a.mul(b), b.mul(a));
        assert_eq!(a.add(b).add(c), a.add(b.add(c)));
        assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
        assert!(a.mul(S::zero()).is_zero());
        assert_eq!(a.mul(S::one()), a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.mul(b).conj(), a.conj().mul(b.conj()));
        assert_eq!(a.add(b).conj(), a.conj().add(b.conj()));
    }

    proptest! {
        #[test]
        fn complex_semiring_laws(a in c64(), b in c64(), c in c64()) {
            check_laws(a, b, c);
        }

        #[test]
        fn boolean_semiring_laws(a: bool, b: bool, c: bool) {
            check_laws(a, b, c);
        }
    }

    #[test]
    fn boolean_conjugation_is_identity() {
        assert!(true.conj());
        assert!(!false.conj());
    }
}
