//! The three-tier exact real value used throughout the crate.
//!
//! Rationals and quadratic irrationals are carried exactly and support
//! infallible arithmetic and exact decisions. Everything else lands in the
//! refinable tier, where decisions are made through adaptive enclosures and
//! may fail with `PrecisionExhausted`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{dist_to_int, rat_cmp, RatInterval};
use super::quadratic::{QuadOrRat, QuadraticReal};
use super::refinable::RefinableReal;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum RealValue {
    Rational(BigRational),
    Quadratic(QuadraticReal),
    Refinable(RefinableReal),
}

impl From<BigRational> for RealValue {
    fn from(r: BigRational) -> Self {
        RealValue::Rational(r)
    }
}

impl From<BigInt> for RealValue {
    fn from(n: BigInt) -> Self {
        RealValue::Rational(BigRational::from_integer(n))
    }
}

impl From<i64> for RealValue {
    fn from(n: i64) -> Self {
        RealValue::Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<QuadOrRat> for RealValue {
    fn from(q: QuadOrRat) -> Self {
        match q {
            QuadOrRat::Quad(v) => RealValue::Quadratic(v),
            QuadOrRat::Rat(r) => RealValue::Rational(r),
        }
    }
}

impl From<RefinableReal> for RealValue {
    fn from(r: RefinableReal) -> Self {
        RealValue::Refinable(r)
    }
}

impl RealValue {
    /// Builds `(a + b*sqrt(d))/c`, downgrading to the rational tier when the
    /// surd part vanishes.
    pub fn quadratic(a: BigInt, b: BigInt, d: BigInt, c: BigInt) -> Result<Self> {
        Ok(QuadraticReal::new(a, b, d, c)?.into())
    }

    pub fn zero() -> Self {
        RealValue::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        RealValue::Rational(BigRational::one())
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, RealValue::Refinable(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RealValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Promotes any tier to a refinable leaf.
    pub fn to_refinable(&self) -> RefinableReal {
        match self {
            RealValue::Rational(r) => RefinableReal::exact(r.clone()),
            RealValue::Quadratic(q) => RefinableReal::surd(q.clone()),
            RealValue::Refinable(r) => r.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        use RealValue::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Rational(x + y),
            (Rational(x), Quadratic(y)) | (Quadratic(y), Rational(x)) => {
                Quadratic(y.add_rat(x))
            }
            (Quadratic(x), Quadratic(y)) if x.same_field(y) => x.add(y).into(),
            _ => Refinable(RefinableReal::add(&self.to_refinable(), &other.to_refinable())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        use RealValue::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Rational(x * y),
            (Rational(x), Quadratic(y)) | (Quadratic(y), Rational(x)) => y.mul_rat(x).into(),
            (Quadratic(x), Quadratic(y)) if x.same_field(y) => x.mul(y).into(),
            _ => Refinable(RefinableReal::mul(&self.to_refinable(), &other.to_refinable())),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        use RealValue::*;
        if let Some(false) = other.exact_zero_hint() {
            // fall through, divisor known nonzero
        } else if let Some(true) = other.exact_zero_hint() {
            return Err(Error::OutOfDomain("division by zero".into()));
        }
        Ok(match (self, other) {
            (Rational(x), Rational(y)) => Rational(x / y),
            (Quadratic(x), Rational(y)) => x.mul_rat(&y.recip()).into(),
            (Rational(x), Quadratic(y)) => y.recip().mul_rat(x).into(),
            (Quadratic(x), Quadratic(y)) if x.same_field(y) => x.mul(&y.recip()).into(),
            _ => Refinable(RefinableReal::div(&self.to_refinable(), &other.to_refinable())),
        })
    }

    pub fn neg(&self) -> Self {
        use RealValue::*;
        match self {
            Rational(x) => Rational(-x.clone()),
            Quadratic(x) => Quadratic(x.neg()),
            Refinable(x) => Refinable(RefinableReal::neg(x)),
        }
    }

    pub fn abs(&self) -> Self {
        use RealValue::*;
        match self {
            Rational(x) => Rational(x.abs()),
            Quadratic(x) => Quadratic(x.abs()),
            Refinable(x) => Refinable(RefinableReal::abs(x)),
        }
    }

    /// Exact sign for the exact tiers; adaptive decision otherwise.
    pub fn sign(&self) -> Result<i8> {
        match self {
            RealValue::Rational(r) => Ok(if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }),
            RealValue::Quadratic(q) => Ok(q.sign()),
            RealValue::Refinable(r) => r.decide("sign", |iv| iv.sign_decided()),
        }
    }

    pub fn is_zero_value(&self) -> Result<bool> {
        Ok(self.sign()? == 0)
    }

    /// `Some(answer)` when zero-ness is decidable without refinement, which
    /// is exactly the exact tiers. Refinable values return `None`: an exact
    /// zero can never be certified from enclosures alone.
    pub fn exact_zero_hint(&self) -> Option<bool> {
        match self {
            RealValue::Rational(r) => Some(r.is_zero()),
            RealValue::Quadratic(_) => Some(false),
            RealValue::Refinable(_) => None,
        }
    }

    pub fn floor(&self) -> Result<BigInt> {
        match self {
            RealValue::Rational(r) => Ok(r.floor().to_integer()),
            RealValue::Quadratic(q) => Ok(q.floor()),
            RealValue::Refinable(r) => r.decide("floor", |iv| iv.floor_decided()),
        }
    }

    /// Fractional part `self - floor(self)`, in `[0, 1)`.
    pub fn mod1(&self) -> Result<Self> {
        let f = self.floor()?;
        Ok(self.sub(&RealValue::from(f)))
    }

    /// Distance to the nearest integer. Never needs a floor decision on the
    /// refinable tier: the enclosure image is used directly.
    pub fn int_distance(&self) -> Self {
        match self {
            RealValue::Rational(r) => RealValue::Rational(dist_to_int(r)),
            RealValue::Quadratic(q) => {
                let f = q.sub_int(&q.floor());
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                if f.cmp_rat(&half) == Ordering::Less {
                    RealValue::Quadratic(f)
                } else {
                    RealValue::Quadratic(f.neg().add_rat(&BigRational::one()))
                }
            }
            RealValue::Refinable(r) => RealValue::Refinable(RefinableReal::int_dist(r)),
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        use RealValue::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Ok(rat_cmp(x, y)),
            (Quadratic(x), Rational(y)) => Ok(x.cmp_rat(y)),
            (Rational(x), Quadratic(y)) => Ok(y.cmp_rat(x).reverse()),
            (Quadratic(x), Quadratic(y)) if x.same_field(y) => Ok(x.cmp(y)),
            _ => {
                let s = self.sub(other).sign()?;
                Ok(match s {
                    1 => Ordering::Greater,
                    -1 => Ordering::Less,
                    _ => Ordering::Equal,
                })
            }
        }
    }

    /// Rational enclosure of the value. Exact tiers give a point or an
    /// interval of width at most `2^-bits`.
    pub fn enclose(&self, bits: u32) -> Result<RatInterval> {
        match self {
            RealValue::Rational(r) => Ok(RatInterval::point(r.clone())),
            RealValue::Quadratic(q) => Ok(q.to_interval(bits)),
            RealValue::Refinable(r) => r.enclose(bits),
        }
    }

    /// Applies a decision budget to the refinable tier; exact tiers are
    /// unaffected.
    pub fn with_budget(&self, budget: u32) -> Self {
        match self {
            RealValue::Refinable(r) => RealValue::Refinable(r.with_budget(budget)),
            other => other.clone(),
        }
    }

    /// Truncated decimal rendering with `frac_digits` fractional digits.
    pub fn decimal_string(&self, frac_digits: usize) -> Result<String> {
        let scale = BigInt::from(10u32).pow(frac_digits as u32);
        let scaled: BigRational = match self {
            RealValue::Rational(r) => r * BigRational::from_integer(scale.clone()),
            RealValue::Quadratic(_) | RealValue::Refinable(_) => {
                let bits = (frac_digits as u32 + 4).saturating_mul(4).max(64);
                let iv = self.enclose(bits)?;
                iv.midpoint() * BigRational::from_integer(scale.clone())
            }
        };
        let neg = scaled.is_negative();
        let mag = scaled.abs().floor().to_integer();
        let (int_part, frac_part) = (mag.clone() / &scale, mag % &scale);
        let mut frac_str = frac_part.to_string();
        while frac_str.len() < frac_digits {
            frac_str.insert(0, '0');
        }
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            Ok(format!("{sign}{int_part}"))
        } else {
            Ok(format!("{sign}{int_part}.{frac_str}"))
        }
    }

    /// Canonical exact rendering when one exists.
    pub fn exact_form(&self) -> Option<String> {
        match self {
            RealValue::Rational(r) => Some(format!("{}/{}", r.numer(), r.denom())),
            RealValue::Quadratic(q) => Some(q.canonical_string()),
            RealValue::Refinable(_) => None,
        }
    }

    /// A loose upper bound on the enclosure radius, for reporting. Exact
    /// tiers have none.
    pub fn radius_estimate(&self) -> Result<BigRational> {
        match self {
            RealValue::Rational(_) | RealValue::Quadratic(_) => Ok(BigRational::zero()),
            RealValue::Refinable(r) => Ok(r.enclose(64)?.width()),
        }
    }

    pub fn to_f64_lossy(&self) -> f64 {
        let iv = match self.enclose(64) {
            Ok(iv) => iv,
            Err(_) => return f64::NAN,
        };
        let m = iv.midpoint();
        m.numer().to_f64().unwrap_or(f64::NAN) / m.denom().to_f64().unwrap_or(f64::NAN)
    }
}

/// The golden section `(sqrt(5)-1)/2`.
pub fn golden_quad() -> QuadraticReal {
    match QuadraticReal::new(BigInt::from(-1), BigInt::one(), BigInt::from(5), BigInt::from(2)) {
        Ok(QuadOrRat::Quad(q)) => q,
        _ => unreachable!(),
    }
}

/// The silver section `sqrt(2)-1`.
pub fn silver_quad() -> QuadraticReal {
    match QuadraticReal::new(BigInt::from(-1), BigInt::one(), BigInt::from(2), BigInt::one()) {
        Ok(QuadOrRat::Quad(q)) => q,
        _ => unreachable!(),
    }
}

pub fn golden() -> RealValue {
    RealValue::Quadratic(golden_quad())
}

pub fn silver() -> RealValue {
    RealValue::Quadratic(silver_quad())
}
