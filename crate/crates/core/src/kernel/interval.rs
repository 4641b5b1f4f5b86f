//! Closed rational intervals used as enclosures for real values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Total order by cross multiplication. The derived `Ord` on rationals
/// recurses once per shared continued fraction digit, which overflows the
/// stack on the nearly equal high-precision endpoints interval arithmetic
/// compares constantly; canonical rationals keep denominators positive, so
/// two multiplications settle it instead.
pub(crate) fn rat_cmp(a: &BigRational, b: &BigRational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

pub(crate) fn rat_le(a: &BigRational, b: &BigRational) -> bool {
    rat_cmp(a, b) != Ordering::Greater
}

/// A closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(rat_le(&lo, &hi), "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        rat_le(&self.lo, v) && rat_le(v, &self.hi)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Intersection, or `None` if the intervals are disjoint.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = if rat_le(&other.lo, &self.lo) { self.lo.clone() } else { other.lo.clone() };
        let hi = if rat_le(&self.hi, &other.hi) { self.hi.clone() } else { other.hi.clone() };
        if rat_le(&lo, &hi) {
            Some(RatInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c1 = &self.lo * &other.lo;
        let c2 = &self.lo * &other.hi;
        let c3 = &self.hi * &other.lo;
        let c4 = &self.hi * &other.hi;
        let mut lo = c1.clone();
        let mut hi = c1;
        for c in [c2, c3, c4] {
            if rat_cmp(&c, &lo) == Ordering::Less {
                lo = c.clone();
            }
            if rat_cmp(&c, &hi) == Ordering::Greater {
                hi = c;
            }
        }
        RatInterval { lo, hi }
    }

    /// Interval division. `None` when the divisor contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let inv = RatInterval {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
        };
        Some(self.mul(&inv))
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let neg_lo = -self.lo.clone();
            let mhi = if rat_cmp(&neg_lo, &self.hi) == Ordering::Greater {
                neg_lo
            } else {
                self.hi.clone()
            };
            RatInterval { lo: BigRational::zero(), hi: mhi }
        }
    }

    /// Image under the distance-to-nearest-integer map. The map is
    /// 1-Lipschitz, so the image is never wider than the input.
    pub fn int_dist_image(&self) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let da = dist_to_int(&self.lo);
        let db = dist_to_int(&self.hi);
        let has_integer = self.hi.floor() >= self.lo.ceil();
        let has_half = (&self.hi - &half).floor() >= (&self.lo - &half).ceil();
        let da_first = rat_le(&da, &db);
        let lo = if has_integer {
            BigRational::zero()
        } else if da_first {
            da.clone()
        } else {
            db.clone()
        };
        let hi = if has_half {
            half
        } else if da_first {
            db
        } else {
            da
        };
        RatInterval { lo, hi }
    }

    /// Smallest enclosing interval with endpoints on the grid `2^-bits`.
    /// Rounding outward keeps denominators bounded through long chains of
    /// derived enclosures, which would otherwise accrete the full literal
    /// precision into every endpoint.
    pub fn round_out(&self, bits: u32) -> Self {
        let lo = (self.lo.numer() << bits).div_floor(self.lo.denom());
        let hi = (self.hi.numer() << bits).div_ceil(self.hi.denom());
        let sc = BigInt::one() << bits;
        RatInterval {
            lo: BigRational::new(lo, sc.clone()),
            hi: BigRational::new(hi, sc),
        }
    }

    /// `Some(n)` when every point of the interval has floor `n`.
    pub fn floor_decided(&self) -> Option<BigInt> {
        let fl = self.lo.floor().to_integer();
        let fh = self.hi.floor().to_integer();
        if fl == fh {
            Some(fl)
        } else {
            None
        }
    }

    /// `Some(sign)` when the sign is the same for every point.
    pub fn sign_decided(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

/// Distance from a rational to the nearest integer.
pub fn dist_to_int(t: &BigRational) -> BigRational {
    let f = t - t.floor();
    let g = BigRational::one() - &f;
    if rat_le(&f, &g) {
        f
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn mul_covers_sign_cases() {
        let a = RatInterval::new(r(-1, 2), r(3, 2));
        let b = RatInterval::new(r(-2, 1), r(1, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, r(-3, 1));
        assert_eq!(p.hi, r(3, 2));
    }

    #[test]
    fn int_dist_image_spans_integer() {
        let a = RatInterval::new(r(9, 10), r(11, 10));
        let d = a.int_dist_image();
        assert_eq!(d.lo, r(0, 1));
        assert_eq!(d.hi, r(1, 10));
    }

    #[test]
    fn int_dist_image_spans_half() {
        let a = RatInterval::new(r(2, 5), r(3, 5));
        let d = a.int_dist_image();
        assert_eq!(d.lo, r(2, 5));
        assert_eq!(d.hi, r(1, 2));
    }

    #[test]
    fn int_dist_image_plain() {
        let a = RatInterval::new(r(1, 10), r(2, 10));
        let d = a.int_dist_image();
        assert_eq!(d.lo, r(1, 10));
        assert_eq!(d.hi, r(2, 10));
        let b = RatInterval::new(r(-13, 10), r(-12, 10));
        let e = b.int_dist_image();
        assert_eq!(e.lo, r(2, 10));
        assert_eq!(e.hi, r(3, 10));
    }

    #[test]
    fn division_by_zero_straddle() {
        let a = RatInterval::new(r(1, 1), r(2, 1));
        let b = RatInterval::new(r(-1, 1), r(1, 1));
        assert!(a.div(&b).is_none());
        let c = RatInterval::new(r(1, 2), r(1, 1));
        let q = a.div(&c).unwrap();
        assert_eq!(q.lo, r(1, 1));
        assert_eq!(q.hi, r(4, 1));
    }
}
