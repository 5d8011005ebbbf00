//! Scalar field abstraction shared by all tensor code.
//!
//! Two concrete scalars are supported: [`crate::Rational`] (exact
//! arbitrary-precision rationals, always in lowest terms with positive
//! denominator) and `f64` (with equality meaning `|a - b| <= tol` for a
//! session tolerance). The two modes never mix: a computation is generic
//! over one `S: Scalar` and the type system keeps it that way.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Error produced when a scalar literal does not parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("malformed scalar literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// The field over which all tensors live.
///
/// `EXACT` marks whether equality is exact; when it is, the tolerance
/// argument of [`Scalar::is_negligible`] is ignored.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Exact quotient `num/den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Zero test under the session tolerance. Exact scalars ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    fn to_f64(&self) -> f64;

    /// Parse a literal in this mode's grammar.
    ///
    /// Exact mode accepts integers and `p/q`; float mode additionally
    /// accepts decimal and scientific literals.
    fn parse_literal(text: &str) -> Result<Self, ScalarParseError>;

    /// Canonical rendering; `parse_literal(render(s)) == s`.
    fn render(&self) -> String {
        format!("{self}")
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_literal(text: &str) -> Result<Self, ScalarParseError> {
        let text = text.trim();
        // p/q is accepted in float mode too; rationals embed in f64.
        if let Some((num, den)) = text.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
            if den == 0.0 {
                return Err(ScalarParseError::ZeroDenominator(text.to_string()));
            }
            return Ok(num / den);
        }
        let v: f64 = text
            .parse()
            .map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
        if !v.is_finite() {
            return Err(ScalarParseError::Malformed(text.to_string()));
        }
        Ok(v)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        let num = self.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let den = self.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        num / den
    }

    fn parse_literal(text: &str) -> Result<Self, ScalarParseError> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num = BigInt::from_str(num.trim())
                .map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
            let den = BigInt::from_str(den.trim())
                .map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
            if den.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(text.to_string()));
            }
            // BigRational::new reduces and normalizes the denominator sign.
            return Ok(BigRational::new(num, den));
        }
        let n =
            BigInt::from_str(text).map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
        Ok(BigRational::from_integer(n))
    }
}
