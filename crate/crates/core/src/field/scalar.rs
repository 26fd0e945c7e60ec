use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::elim::{self, Echelon};
use super::matrix::Mat;
use crate::error::{Error, Result};

/// Exact Gaussian rational `p/q + (r/s)i`.
pub type GaussianRational = Complex<BigRational>;

/// Which field a computation runs over. Set once per problem, never inferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Exact,
    Gaussian,
    Float,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Exact => "exact",
            FieldKind::Gaussian => "gaussian",
            FieldKind::Float => "float",
        })
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(FieldKind::Exact),
            "gaussian" => Ok(FieldKind::Gaussian),
            "float" => Ok(FieldKind::Float),
            other => Err(Error::Parse(format!("unknown field mode `{other}`"))),
        }
    }
}

/// Thresholds used by the floating-point path.
///
/// `rank_threshold` is relative: a pivot is dropped when it is at most
/// `rank_threshold` times the largest magnitude in play. `equality_threshold`
/// is an absolute cutoff for treating a value as zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub rank_threshold: f64,
    pub equality_threshold: f64,
}

impl ToleranceProfile {
    pub const DEFAULT: ToleranceProfile = ToleranceProfile {
        rank_threshold: 1e-9,
        equality_threshold: 1e-9,
    };

    pub fn new(rank_threshold: f64, equality_threshold: f64) -> Result<Self> {
        if [rank_threshold, equality_threshold].iter().any(|t| t.is_nan() || *t <= 0.0) {
            return Err(Error::Tolerance(
                "thresholds must be strictly positive".into(),
            ));
        }
        if rank_threshold > 1e-6 {
            return Err(Error::Tolerance(
                "rank_threshold must not exceed 1e-6".into(),
            ));
        }
        Ok(ToleranceProfile {
            rank_threshold,
            equality_threshold,
        })
    }
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A field element. Implemented for exact rationals, exact Gaussian
/// rationals and tolerance-aware `f64`.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const KIND: FieldKind;
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn conj(&self) -> Self;
    /// Modulus as a float, used for pivot selection and reporting.
    fn magnitude(&self) -> f64;
    fn to_c64(&self) -> Complex64;

    /// Whether a pivot candidate should be treated as zero relative to `scale`.
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    /// Structural zero, for skipping terms in arithmetic loops. Tolerant
    /// decisions go through `is_zero` or `negligible` instead.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    /// Equality up to the field's notion of closeness.
    fn close_to(&self, other: &Self) -> bool {
        self == other
    }

    /// Short human-readable rendering.
    fn render(&self) -> String;

    /// `(negative, magnitude_text)` when the value can be written with a
    /// leading sign; complex values render as a parenthesized block.
    fn sign_split(&self) -> (bool, String);

    fn to_json(&self) -> Value;
    fn from_json(v: &Value, tol: &ToleranceProfile) -> Result<Self>;

    /// Reduced row echelon form. Exact fields override this with a
    /// fraction-free elimination.
    fn row_reduce(m: &Mat<Self>) -> Echelon<Self> {
        elim::gauss_jordan(m)
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mut num = int_part.abs() * &scale + frac_part;
        if negative {
            num = -num;
        }
        return Ok(BigRational::new(num, scale));
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Lossless `p/q` rendering used in every file format.
pub(crate) fn rational_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for BigRational {
    const KIND: FieldKind = FieldKind::Exact;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(self).abs()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn sign_split(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
    fn to_json(&self) -> Value {
        Value::String(rational_text(self))
    }
    fn from_json(v: &Value, _tol: &ToleranceProfile) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigRational::from_integer(i.into()))
                } else {
                    Err(Error::Parse(format!(
                        "exact mode needs \"p/q\" strings, got number {n}"
                    )))
                }
            }
            other => Err(Error::Parse(format!("expected a scalar, got {other}"))),
        }
    }
    fn row_reduce(m: &Mat<Self>) -> Echelon<Self> {
        elim::bareiss_rational(m)
    }
}

fn parse_gaussian(text: &str) -> Result<GaussianRational> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&s)?, BigRational::zero()));
    };
    // Split at the last sign that is not leading and not part of a `/`-denominator.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/');
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (BigRational::zero(), body),
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
    };
    Ok(Complex::new(re, im))
}

impl Scalar for GaussianRational {
    const KIND: FieldKind = FieldKind::Gaussian;

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn render(&self) -> String {
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => self.re.to_string(),
            (true, false) => format!("{}i", self.im),
            (false, false) if self.im.is_negative() => format!("{}-{}i", self.re, -self.im.clone()),
            (false, false) => format!("{}+{}i", self.re, self.im),
        }
    }
    fn sign_split(&self) -> (bool, String) {
        if Zero::is_zero(&self.im) {
            (self.re.is_negative(), self.re.abs().to_string())
        } else {
            (false, format!("({})", self.render()))
        }
    }
    fn to_json(&self) -> Value {
        let im = if self.im.is_negative() {
            format!("-{}", rational_text(&-self.im.clone()))
        } else {
            format!("+{}", rational_text(&self.im))
        };
        Value::String(format!("{}{}i", rational_text(&self.re), im))
    }
    fn from_json(v: &Value, tol: &ToleranceProfile) -> Result<Self> {
        match v {
            Value::String(s) => parse_gaussian(s),
            other => {
                BigRational::from_json(other, tol).map(|q| Complex::new(q, BigRational::zero()))
            }
        }
    }
    fn row_reduce(m: &Mat<Self>) -> Echelon<Self> {
        elim::bareiss_gaussian(m)
    }
}

/// Binary float paired with the tolerance profile that governs it.
#[derive(Clone, Copy, Debug)]
pub struct Float {
    pub value: f64,
    pub tol: ToleranceProfile,
}

impl Float {
    pub fn new(value: f64, tol: ToleranceProfile) -> Self {
        Float { value, tol }
    }

    // Constants carry the default profile; a non-default profile wins.
    fn merged(&self, other: &Float) -> ToleranceProfile {
        if self.tol == ToleranceProfile::DEFAULT {
            other.tol
        } else {
            self.tol
        }
    }
}

impl From<f64> for Float {
    fn from(value: f64) -> Self {
        Float::new(value, ToleranceProfile::DEFAULT)
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

macro_rules! float_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Float {
            type Output = Float;
            fn $method(self, rhs: Float) -> Float {
                Float { value: self.value $op rhs.value, tol: self.merged(&rhs) }
            }
        }
    };
}

float_binop!(Add, add, +);
float_binop!(Sub, sub, -);
float_binop!(Mul, mul, *);
float_binop!(Div, div, /);

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float {
            value: -self.value,
            tol: self.tol,
        }
    }
}

impl Zero for Float {
    fn zero() -> Self {
        0.0.into()
    }
    fn is_zero(&self) -> bool {
        self.value.abs() <= self.tol.equality_threshold
    }
}

impl One for Float {
    fn one() -> Self {
        1.0.into()
    }
}

impl Scalar for Float {
    const KIND: FieldKind = FieldKind::Float;
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        (n as f64).into()
    }
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q).into()
    }
    fn conj(&self) -> Self {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.value.abs()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.value, 0.0)
    }
    fn is_exact_zero(&self) -> bool {
        self.value == 0.0
    }
    fn negligible(&self, scale: f64) -> bool {
        self.value.abs() <= self.tol.rank_threshold * scale.max(f64::MIN_POSITIVE)
    }
    fn close_to(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.value.abs()).max(other.value.abs());
        (self.value - other.value).abs() <= self.tol.equality_threshold * scale
    }
    fn render(&self) -> String {
        format!("{}", self.value)
    }
    fn sign_split(&self) -> (bool, String) {
        (self.value < 0.0, format!("{}", self.value.abs()))
    }
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(self.value)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
    fn from_json(v: &Value, tol: &ToleranceProfile) -> Result<Self> {
        let value = match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("number {n} out of range")))?,
            Value::String(s) => rational_to_f64(&parse_rational(s)?),
            other => return Err(Error::Parse(format!("expected a scalar, got {other}"))),
        };
        Ok(Float::new(value, *tol))
    }
}
