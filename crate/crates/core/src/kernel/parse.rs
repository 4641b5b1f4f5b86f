//! The number grammar shared by the library and the CLI.
//!
//! Four forms are accepted:
//!
//! * `rat:P/Q` or `rat:N` for exact rationals,
//! * `quad:(A+B*sqrt(D))/C` for quadratic irrationals,
//! * `dec:<digits>` for decimal literals carrying finite information,
//! * `cf:a1,a2,...` or `cf:a1,...,(p1,...,pr)` for continued fractions,
//!   finite or eventually periodic.
//!
//! A decimal literal with `k` fractional digits denotes a ball of radius
//! `10^-k` around the written value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quadratic::{QuadOrRat, QuadraticReal};
use super::real::RealValue;
use super::refinable::RefinableReal;
use crate::error::{Error, Result};

/// Outcome of parsing one number specification.
#[derive(Debug, Clone)]
pub enum ParsedNumber {
    Value(RealValue),
    CfFinite(Vec<BigInt>),
    CfPeriodic { head: Vec<BigInt>, period: Vec<BigInt> },
}

/// Parses the grammar, leaving continued fraction forms symbolic.
pub fn parse_number(s: &str, budget: u32) -> Result<ParsedNumber> {
    let (prefix, rest) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("missing prefix in number '{s}'")))?;
    match prefix {
        "rat" => Ok(ParsedNumber::Value(RealValue::Rational(parse_rational(rest)?))),
        "quad" => Ok(ParsedNumber::Value(parse_quadratic(rest)?)),
        "dec" => Ok(ParsedNumber::Value(parse_decimal(rest, budget)?)),
        "cf" => parse_cf(rest),
        other => Err(Error::Parse(format!("unknown number prefix '{other}'"))),
    }
}

/// Parses the grammar and folds continued fraction forms into values.
pub fn parse_real(s: &str, budget: u32) -> Result<RealValue> {
    match parse_number(s, budget)? {
        ParsedNumber::Value(v) => Ok(v),
        ParsedNumber::CfFinite(digits) => Ok(RealValue::Rational(fold_finite_cf(&digits))),
        ParsedNumber::CfPeriodic { head, period } => {
            Ok(RealValue::Quadratic(periodic_cf_to_quadratic(&head, &period)?))
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("invalid integer '{s}'")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn parse_quadratic(s: &str) -> Result<RealValue> {
    let err = || Error::Parse(format!("quadratic must look like (A+B*sqrt(D))/C, got '{s}'"));
    let rest = s.strip_prefix('(').ok_or_else(err)?;
    let (inner, tail) = rest.rsplit_once(')').ok_or_else(err)?;
    let c_str = tail.strip_prefix('/').ok_or_else(err)?;
    let (term, d_part) = inner.split_once("*sqrt(").ok_or_else(err)?;
    let d_str = d_part.strip_suffix(')').ok_or_else(err)?;
    // `term` is "A+B" or "A-B" with the split after the first digit-run of A.
    let sep = term
        .char_indices()
        .skip(1)
        .find(|(_, ch)| *ch == '+' || *ch == '-')
        .map(|(i, ch)| (i, ch))
        .ok_or_else(err)?;
    let a = parse_int(&term[..sep.0])?;
    let b_mag = parse_int(&term[sep.0 + 1..])?;
    if b_mag.is_negative() {
        return Err(err());
    }
    let b = if sep.1 == '-' { -b_mag } else { b_mag };
    let d = parse_int(d_str)?;
    let c = parse_int(c_str)?;
    if c.is_zero() {
        return Err(Error::Parse("zero denominator in quadratic".into()));
    }
    RealValue::quadratic(a, b, d, c)
}

fn parse_decimal(s: &str, budget: u32) -> Result<RealValue> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("invalid decimal literal '{s}'")));
    }
    let k = frac_part.len();
    let scale = BigInt::from(10u32).pow(k as u32);
    let digits: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| Error::Parse(format!("invalid decimal literal '{s}'")))?;
    let value = BigRational::new(BigInt::from(sign) * digits, scale.clone());
    let radius = BigRational::new(BigInt::one(), scale);
    Ok(RealValue::Refinable(RefinableReal::literal(value, radius, budget)))
}

fn parse_cf(s: &str) -> Result<ParsedNumber> {
    let parse_digits = |part: &str| -> Result<Vec<BigInt>> {
        part.split(',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let d = parse_int(t)?;
                if d < BigInt::one() {
                    Err(Error::Parse(format!("continued fraction digit {d} below 1")))
                } else {
                    Ok(d)
                }
            })
            .collect()
    };
    match s.find('(') {
        None => {
            let digits = parse_digits(s)?;
            if digits.is_empty() {
                return Err(Error::Parse("empty continued fraction".into()));
            }
            Ok(ParsedNumber::CfFinite(digits))
        }
        Some(i) => {
            let head_part = s[..i].trim_end_matches(',');
            let tail = &s[i + 1..];
            let period_part = tail
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed period in '{s}'")))?;
            let head = parse_digits(head_part)?;
            let period = parse_digits(period_part)?;
            if period.is_empty() {
                return Err(Error::Parse("empty period".into()));
            }
            Ok(ParsedNumber::CfPeriodic { head, period })
        }
    }
}

/// Value of a finite continued fraction `1/(a1 + 1/(a2 + ...))`.
pub fn fold_finite_cf(digits: &[BigInt]) -> BigRational {
    let mut acc = BigRational::zero();
    for a in digits.iter().rev() {
        acc = (BigRational::from_integer(a.clone()) + acc).recip();
    }
    acc
}

/// Value of an eventually periodic continued fraction, as an exact
/// quadratic irrational. The purely periodic tail is the attracting fixed
/// point of one period's Mobius transform; the finite head is then folded
/// on top.
pub fn periodic_cf_to_quadratic(head: &[BigInt], period: &[BigInt]) -> Result<QuadraticReal> {
    // One digit step 1/(a + y) acts as the matrix [[0, 1], [1, a]].
    let (mut m11, mut m12, mut m21, mut m22) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for a in period {
        let n12 = &m11 + &m12 * a;
        let n22 = &m21 + &m22 * a;
        m11 = std::mem::replace(&mut m12, n12);
        m21 = std::mem::replace(&mut m22, n22);
    }
    // y = (m11 y + m12) / (m21 y + m22), the positive root of
    // m21 y^2 + (m22 - m11) y - m12 = 0.
    let lin = &m22 - &m11;
    let disc = &lin * &lin + BigInt::from(4) * &m21 * &m12;
    let y = match QuadraticReal::new(-lin, BigInt::one(), disc, BigInt::from(2) * &m21)? {
        QuadOrRat::Quad(q) => q,
        QuadOrRat::Rat(_) => {
            return Err(Error::Parse(
                "periodic continued fraction collapsed to a rational".into(),
            ))
        }
    };
    let mut v = y;
    for a in head.iter().rev() {
        v = v.add_rat(&BigRational::from_integer(a.clone())).recip();
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{golden_quad, silver_quad};
    use std::cmp::Ordering;

    const B: u32 = 65536;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_forms() {
        let v = parse_real("rat:5/7", B).unwrap();
        assert_eq!(v.as_rational().unwrap(), &r(5, 7));
        let w = parse_real("rat:-3", B).unwrap();
        assert_eq!(w.as_rational().unwrap(), &r(-3, 1));
        assert!(parse_real("rat:1/0", B).is_err());
    }

    #[test]
    fn quadratic_form() {
        let v = parse_real("quad:(-1+1*sqrt(2))/1", B).unwrap();
        assert_eq!(v.cmp_exact(&crate::kernel::silver()).unwrap(), Ordering::Equal);
        let w = parse_real("quad:(3-2*sqrt(2))/1", B).unwrap();
        assert_eq!(w.sign().unwrap(), 1);
        assert!(parse_real("quad:(1+sqrt(2))/1", B).is_err());
    }

    #[test]
    fn decimal_radius_is_ulp() {
        // The enclosure is the ulp ball rounded outward onto the working
        // grid, so it covers [0.24, 0.26] and overshoots by under 2^-60.
        let v = parse_real("dec:0.25", B).unwrap();
        let iv = v.enclose(64).unwrap();
        let eps = BigRational::new(BigInt::one(), BigInt::one() << 60);
        assert!(iv.lo <= r(24, 100) && iv.lo > r(24, 100) - &eps);
        assert!(iv.hi >= r(26, 100) && iv.hi < r(26, 100) + &eps);
        let neg = parse_real("dec:-0.5", B).unwrap();
        let ivn = neg.enclose(64).unwrap();
        assert!((ivn.midpoint() - r(-1, 2)).abs() < eps);
    }

    #[test]
    fn finite_cf_folds_to_rational() {
        assert_eq!(fold_finite_cf(&[BigInt::from(2)]), r(1, 2));
        assert_eq!(fold_finite_cf(&[BigInt::from(1), BigInt::from(2)]), r(2, 3));
        assert_eq!(
            fold_finite_cf(&[BigInt::from(1), BigInt::from(2), BigInt::from(2)]),
            r(5, 7)
        );
        let v = parse_real("cf:1,2,2", B).unwrap();
        assert_eq!(v.as_rational().unwrap(), &r(5, 7));
    }

    #[test]
    fn periodic_cf_values() {
        // All-ones period: the golden section.
        let g = periodic_cf_to_quadratic(&[], &[BigInt::one()]).unwrap();
        assert_eq!(g, golden_quad());
        // All-twos period: the silver section.
        let s = periodic_cf_to_quadratic(&[], &[BigInt::from(2)]).unwrap();
        assert_eq!(s, silver_quad());
        // Period (1,2): sqrt(3) - 1.
        let t = periodic_cf_to_quadratic(&[], &[BigInt::one(), BigInt::from(2)]).unwrap();
        let expected = match QuadraticReal::new(
            BigInt::from(-1),
            BigInt::one(),
            BigInt::from(3),
            BigInt::one(),
        )
        .unwrap()
        {
            QuadOrRat::Quad(q) => q,
            _ => unreachable!(),
        };
        assert_eq!(t, expected);
        let parsed = parse_real("cf:(1,2)", B).unwrap();
        assert_eq!(
            parsed.cmp_exact(&RealValue::Quadratic(expected)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn periodic_cf_with_head() {
        // cf:2,(1): 1/(2 + golden) = (3 - golden... checked numerically.
        let v = parse_real("cf:2,(1)", B).unwrap();
        let f = v.to_f64_lossy();
        assert!((f - 1.0 / (2.0 + 0.6180339887498949)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_digits() {
        assert!(parse_real("cf:1,0,2", B).is_err());
        assert!(parse_real("cf:", B).is_err());
        assert!(parse_real("cf:1,2,(", B).is_err());
        assert!(parse_real("dec:1.2.3", B).is_err());
        assert!(parse_real("foo:1", B).is_err());
        assert!(parse_real("12", B).is_err());
    }
}
