//! Exact arithmetic on real quadratic irrationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::RatInterval;
use crate::error::{Error, Result};

/// A real quadratic irrational `(a + b*sqrt(d))/c` in canonical form:
/// `c > 0`, `d` squarefree and at least 2, `b` nonzero, `gcd(a, b, c) = 1`.
///
/// Values with `b = 0` are rational and are not representable here; the
/// constructors return [`QuadOrRat::Rat`] for them instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticReal {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Result of a construction or arithmetic step that may leave the field.
#[derive(Debug, Clone)]
pub enum QuadOrRat {
    Quad(QuadraticReal),
    Rat(BigRational),
}

impl QuadraticReal {
    /// Builds `(a + b*sqrt(d))/c`, normalizing `d` to its squarefree part.
    /// Returns `Rat` when the value collapses to a rational.
    pub fn new(a: BigInt, b: BigInt, d: BigInt, c: BigInt) -> Result<QuadOrRat> {
        if c.is_zero() {
            return Err(Error::Parse("zero denominator in quadratic".into()));
        }
        if d.is_negative() {
            return Err(Error::Parse("negative radicand is not a real value".into()));
        }
        let (s, d0) = squarefree_decompose(&d)?;
        let b = b * s;
        if d0.is_one() || d0.is_zero() {
            // sqrt(1) = 1 and sqrt(0) = 0: the value is rational.
            let num = if d0.is_one() { a + b } else { a };
            return Ok(QuadOrRat::Rat(BigRational::new(num, c)));
        }
        Ok(normalized(a, b, c, d0))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.d == other.d
    }

    /// Exact sign of the value: -1, 0 never occurs, or 1.
    pub fn sign(&self) -> i8 {
        // b is nonzero and d is squarefree, so the value is irrational and
        // in particular nonzero.
        if self.a.is_zero() {
            return if self.b.is_positive() { 1 } else { -1 };
        }
        match (self.a.is_positive(), self.b.is_positive()) {
            (true, true) => 1,
            (false, false) => -1,
            (true, false) => {
                let aa = &self.a * &self.a;
                let bbd = &self.b * &self.b * &self.d;
                if aa > bbd {
                    1
                } else {
                    -1
                }
            }
            (false, true) => {
                let aa = &self.a * &self.a;
                let bbd = &self.b * &self.b * &self.d;
                if bbd > aa {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Sign of `self - m` for an integer `m`, computed exactly.
    fn sign_minus_int(&self, m: &BigInt) -> i8 {
        let shifted = QuadraticReal {
            a: &self.a - m * &self.c,
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        };
        shifted.sign()
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let bbd = &self.b * &self.b * &self.d;
        let s = bbd.sqrt();
        // b*sqrt(d) lies strictly between s and s+1 in magnitude, so the
        // numerator lies in an open unit interval.
        let low_num = if self.b.is_positive() {
            &self.a + &s
        } else {
            &self.a - &s - BigInt::one()
        };
        let k0 = low_num.div_floor(&self.c);
        let k1 = &k0 + BigInt::one();
        if self.sign_minus_int(&k1) >= 0 {
            k1
        } else {
            k0
        }
    }

    pub fn neg(&self) -> Self {
        QuadraticReal {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; stays in the same field.
    pub fn recip(&self) -> Self {
        // 1/x = c*(a - b*sqrt(d)) / (a^2 - b^2 d)
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        debug_assert!(!norm.is_zero());
        match normalized(&self.a * &self.c, -(&self.b * &self.c), norm, self.d.clone()) {
            QuadOrRat::Quad(q) => q,
            QuadOrRat::Rat(_) => unreachable!("inverse of an irrational is irrational"),
        }
    }

    pub fn add(&self, other: &Self) -> QuadOrRat {
        debug_assert!(self.same_field(other));
        normalized(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            self.d.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> QuadOrRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> QuadOrRat {
        debug_assert!(self.same_field(other));
        normalized(
            &self.a * &other.a + &self.b * &other.b * &self.d,
            &self.a * &other.b + &other.a * &self.b,
            &self.c * &other.c,
            self.d.clone(),
        )
    }

    pub fn add_rat(&self, r: &BigRational) -> Self {
        let (p, q) = (r.numer(), r.denom());
        match normalized(
            &self.a * q + p * &self.c,
            &self.b * q,
            &self.c * q,
            self.d.clone(),
        ) {
            QuadOrRat::Quad(v) => v,
            QuadOrRat::Rat(_) => unreachable!("rational shift preserves irrationality"),
        }
    }

    pub fn mul_rat(&self, r: &BigRational) -> QuadOrRat {
        let (p, q) = (r.numer(), r.denom());
        normalized(&self.a * p, &self.b * p, &self.c * q, self.d.clone())
    }

    pub fn sub_int(&self, m: &BigInt) -> Self {
        self.add_rat(&BigRational::from_integer(-m.clone()))
    }

    /// Compares against a rational, exactly.
    pub fn cmp_rat(&self, r: &BigRational) -> Ordering {
        let shifted = self.add_rat(&(-r.clone()));
        match shifted.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => unreachable!(),
        }
    }

    /// Compares two values of the same field, exactly.
    pub fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other) {
            QuadOrRat::Quad(diff) => {
                if diff.sign() > 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            QuadOrRat::Rat(r) => r.cmp(&BigRational::zero()),
        }
    }

    /// Rational enclosure with width at most `2^-bits`.
    pub fn to_interval(&self, bits: u32) -> RatInterval {
        let p = bits as u64 + self.b.bits() + 2;
        let scale = BigInt::one() << p;
        let s = (&self.d * &scale * &scale).sqrt();
        let s1 = &s + BigInt::one();
        let (nlo, nhi) = if self.b.is_positive() {
            (&self.a * &scale + &self.b * &s, &self.a * &scale + &self.b * &s1)
        } else {
            (&self.a * &scale + &self.b * &s1, &self.a * &scale + &self.b * &s)
        };
        let den = &self.c * &scale;
        RatInterval::new(
            BigRational::new(nlo, den.clone()),
            BigRational::new(nhi, den),
        )
    }

    /// Renders the canonical form `(a+b*sqrt(d))/c`.
    pub fn canonical_string(&self) -> String {
        let sign = if self.b.is_negative() { "-" } else { "+" };
        format!(
            "({}{}{}*sqrt({}))/{}",
            self.a,
            sign,
            self.b.magnitude(),
            self.d,
            self.c
        )
    }
}

/// Normalizes `(a + b*sqrt(d))/c` assuming `d` already squarefree.
fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: BigInt) -> QuadOrRat {
    debug_assert!(!c.is_zero());
    if c.is_negative() {
        a = -a;
        b = -b;
        c = -c;
    }
    if b.is_zero() {
        return QuadOrRat::Rat(BigRational::new(a, c));
    }
    let g = a.gcd(&b).gcd(&c);
    if !g.is_one() {
        a /= &g;
        b /= &g;
        c /= &g;
    }
    QuadOrRat::Quad(QuadraticReal { a, b, c, d })
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Writes `d = s^2 * d0` with `d0` squarefree. Errors when squarefreeness
/// of the residual cannot be certified by trial division at desk scale.
fn squarefree_decompose(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if d.is_zero() || d.is_one() {
        return Ok((BigInt::one(), d.clone()));
    }
    let mut rem = d.clone();
    let mut s = BigInt::one();
    let mut d0 = BigInt::one();
    let mut f = BigInt::from(2u32);
    while &f * &f <= rem && f <= BigInt::from(TRIAL_LIMIT) {
        let mut e = 0u32;
        while (&rem % &f).is_zero() {
            rem /= &f;
            e += 1;
        }
        if e > 0 {
            for _ in 0..(e / 2) {
                s *= &f;
            }
            if e % 2 == 1 {
                d0 *= &f;
            }
        }
        f += if f == BigInt::from(2u32) { BigInt::one() } else { BigInt::from(2u32) };
    }
    if !rem.is_one() {
        let r = rem.sqrt();
        if &r * &r == rem {
            s *= r;
        } else if rem < BigInt::from(10u64).pow(18) {
            // Any square factor would need a prime above the trial limit,
            // putting the residual past 10^18.
            d0 *= &rem;
        } else {
            return Err(Error::Parse(format!(
                "cannot certify that {d} has a squarefree part at desk scale"
            )));
        }
    }
    Ok((s, d0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(a: i64, b: i64, d: i64, c: i64) -> QuadraticReal {
        match QuadraticReal::new(BigInt::from(a), BigInt::from(b), BigInt::from(d), BigInt::from(c))
            .unwrap()
        {
            QuadOrRat::Quad(q) => q,
            QuadOrRat::Rat(r) => panic!("expected irrational, got {r}"),
        }
    }

    #[test]
    fn normalization_extracts_square_part() {
        let q = quad(0, 1, 12, 2);
        // sqrt(12)/2 = sqrt(3)
        assert_eq!(q.a(), &BigInt::zero());
        assert_eq!(q.b(), &BigInt::one());
        assert_eq!(q.d(), &BigInt::from(3));
        assert_eq!(q.c(), &BigInt::one());
    }

    #[test]
    fn square_radicand_collapses_to_rational() {
        match QuadraticReal::new(BigInt::from(1), BigInt::from(2), BigInt::from(9), BigInt::from(2))
            .unwrap()
        {
            QuadOrRat::Rat(r) => assert_eq!(r, BigRational::new(BigInt::from(7), BigInt::from(2))),
            QuadOrRat::Quad(_) => panic!("expected rational"),
        }
    }

    #[test]
    fn sign_of_three_minus_two_sqrt_two() {
        // 3 - 2*sqrt(2) > 0
        let q = quad(3, -2, 2, 1);
        assert_eq!(q.sign(), 1);
        // 2*sqrt(2) - 3 < 0 reversed
        assert_eq!(q.neg().sign(), -1);
    }

    #[test]
    fn floor_values() {
        let silver = quad(-1, 1, 2, 1);
        assert_eq!(silver.floor(), BigInt::zero());
        let golden = quad(-1, 1, 5, 2);
        assert_eq!(golden.floor(), BigInt::zero());
        let sqrt2 = quad(0, 1, 2, 1);
        assert_eq!(sqrt2.floor(), BigInt::one());
        let neg = quad(0, -1, 2, 1);
        assert_eq!(neg.floor(), BigInt::from(-2));
        let big = quad(7, 3, 11, 2);
        // (7 + 3*sqrt(11))/2 = 8.47...
        assert_eq!(big.floor(), BigInt::from(8));
        let negshift = quad(-7, -3, 11, 2);
        assert_eq!(negshift.floor(), BigInt::from(-9));
    }

    #[test]
    fn recip_and_mul_round_trip() {
        let x = quad(3, -2, 2, 5);
        let inv = x.recip();
        match x.mul(&inv) {
            QuadOrRat::Rat(r) => assert_eq!(r, BigRational::one()),
            QuadOrRat::Quad(_) => panic!("x * 1/x must be rational"),
        }
    }

    #[test]
    fn golden_satisfies_its_polynomial() {
        // x = (sqrt(5)-1)/2 satisfies x^2 = 1 - x
        let x = quad(-1, 1, 5, 2);
        let sq = match x.mul(&x) {
            QuadOrRat::Quad(q) => q,
            QuadOrRat::Rat(_) => panic!(),
        };
        let rhs = x.neg().add_rat(&BigRational::one());
        assert_eq!(sq, rhs);
    }

    #[test]
    fn interval_encloses_value() {
        let x = quad(-1, 1, 2, 1);
        let iv = x.to_interval(80);
        assert!(iv.width() <= BigRational::new(BigInt::one(), BigInt::one() << 80));
        // 0.41421356237309504880...
        let lo = BigRational::new(BigInt::from(41421356237u64), BigInt::from(100000000000u64));
        let hi = BigRational::new(BigInt::from(41421356238u64), BigInt::from(100000000000u64));
        assert!(iv.lo > lo && iv.hi < hi);
    }

    #[test]
    fn cmp_across_representations() {
        let x = quad(0, 1, 2, 2); // sqrt(2)/2 = 0.707...
        let y = quad(-1, 1, 2, 1); // 0.414...
        assert_eq!(x.cmp(&y), Ordering::Greater);
        assert_eq!(x.cmp_rat(&BigRational::new(BigInt::from(7071), BigInt::from(10000))), Ordering::Greater);
        assert_eq!(x.cmp_rat(&BigRational::new(BigInt::from(7072), BigInt::from(10000))), Ordering::Less);
    }
}
