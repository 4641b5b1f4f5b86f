//! Numeration systems attached to a continued fraction: counting numbers
//! in base alpha and signed integers in base -alpha.
//!
//! Digit strings are stored little-endian: `digits[0]` is `d_1`, the digit
//! carrying weight `q_0` (or `q*_0` on the integer side). Table printers
//! reverse the order for display.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cf::{CfStream, ConvergentTable};
use crate::error::{Error, Result, Violation};

/// Which admissibility discipline a digit string is meant to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringKind {
    /// Counting-number digits `c_k` under the Markov conditions.
    LeftAdmissible,
    /// Integer digits `b_k` under the right-adjacency conditions.
    RightAdmissible,
    /// Digits of an absolute real expansion.
    AbsExpansion,
    /// Digits of an alternating real expansion.
    AltExpansion,
}

/// A finite digit string `d_1..d_n`, little-endian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitString {
    pub digits: Vec<BigInt>,
    pub kind: StringKind,
}

impl DigitString {
    pub fn new(digits: Vec<BigInt>, kind: StringKind) -> Self {
        DigitString { digits, kind }
    }

    pub fn left(digits: Vec<BigInt>) -> Self {
        Self::new(digits, StringKind::LeftAdmissible)
    }

    pub fn right(digits: Vec<BigInt>) -> Self {
        Self::new(digits, StringKind::RightAdmissible)
    }

    /// Index of the string: 0 for the empty string.
    pub fn n(&self) -> usize {
        self.digits.len()
    }

    /// Same digits with trailing zeros removed.
    pub fn trimmed(&self) -> DigitString {
        let mut digits = self.digits.clone();
        while digits.last().is_some_and(|d| d.is_zero()) {
            digits.pop();
        }
        DigitString { digits, kind: self.kind }
    }
}

/// Verdict of a validator, listing every violated condition.
#[derive(Debug, Clone)]
pub struct Admissibility {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Conditions that could not be checked (for truncated infinite data).
    pub notes: Vec<String>,
}

impl Admissibility {
    fn accept() -> Self {
        Admissibility { ok: true, violations: Vec::new(), notes: Vec::new() }
    }

    fn from_violations(violations: Vec<Violation>) -> Self {
        Admissibility { ok: violations.is_empty(), violations, notes: Vec::new() }
    }

    pub fn into_result(self) -> Result<()> {
        if self.ok {
            Ok(())
        } else {
            Err(Error::NotAdmissible(self.violations))
        }
    }
}

/// Range of condition (ii) on the integer side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightMode {
    /// Adjacency enforced for `1 <= k <= n-2` only. Admits strings like
    /// silver `<2,1>` that collide with the empty string.
    AsPrinted,
    /// Adjacency enforced for every consecutive pair, restoring the
    /// bijection onto the integer ranges. The default everywhere.
    Corrected,
}

/// The integer range represented by strings of index at most `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeSet {
    pub n: usize,
    pub lo: BigInt,
    pub hi: BigInt,
}

impl RangeSet {
    pub fn contains(&self, t: &BigInt) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    pub fn len(&self) -> BigInt {
        &self.hi - &self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Greedy encoding of a counting number `S >= 0`.
pub fn encode_counting(s: &BigInt, cf: &CfStream) -> Result<DigitString> {
    if s.is_negative() {
        return Err(Error::OutOfDomain(format!("counting numbers are nonnegative, got {s}")));
    }
    let table = ConvergentTable::new(cf);
    let mut digits: Vec<BigInt> = Vec::new();
    let mut s = s.clone();
    while s >= BigInt::one() {
        let n = locate_counting_index(&s, &table)?;
        if digits.is_empty() {
            digits = vec![BigInt::zero(); n];
        }
        let w = table.q(n as i64 - 1)?;
        let c = (&s).div_floor(&w);
        s -= &c * &w;
        digits[n - 1] = c;
    }
    Ok(DigitString::left(digits))
}

/// Smallest index `n >= 1` with `q_{n-1} <= S <= q_n - 1`.
fn locate_counting_index(s: &BigInt, table: &ConvergentTable) -> Result<usize> {
    let mut n = 1usize;
    loop {
        match table.q(n as i64) {
            Ok(q) => {
                if &q > s {
                    return Ok(n);
                }
                n += 1;
            }
            Err(Error::InsufficientDigits { available, .. }) => {
                return Err(Error::InsufficientDigits { needed: n, available });
            }
            Err(e) => return Err(e),
        }
    }
}

/// Dot product with the weights `q_{k-1}`. Validates first.
pub fn decode_counting(ds: &DigitString, cf: &CfStream) -> Result<BigInt> {
    validate_left(ds, cf)?.into_result()?;
    let table = ConvergentTable::new(cf);
    let mut total = BigInt::zero();
    for (i, d) in ds.digits.iter().enumerate() {
        if !d.is_zero() {
            total += d * table.q(i as i64)?;
        }
    }
    Ok(total)
}

/// Checks the counting-side digit conditions:
/// (i) `c_1 <= a_1 - 1`, (ii) `0 <= c_k <= a_k`, and
/// (iii) `c_k = a_k` forces `c_{k-1} = 0`; the top digit must be nonzero.
pub fn validate_left(ds: &DigitString, cf: &CfStream) -> Result<Admissibility> {
    let n = ds.n();
    if n == 0 {
        return Ok(Admissibility::accept());
    }
    let table = ConvergentTable::new(cf);
    let mut violations = Vec::new();
    if ds.digits[n - 1].is_zero() {
        violations.push(Violation { condition: "top digit c_n >= 1", index: n });
    }
    for (i, d) in ds.digits.iter().enumerate() {
        let k = i + 1;
        let a = table.digit(k)?;
        if d.is_negative() {
            violations.push(Violation { condition: "digits are nonnegative", index: k });
            continue;
        }
        if k == 1 {
            if *d > &a - 1 {
                violations.push(Violation { condition: "c_1 <= a_1 - 1", index: 1 });
            }
            continue;
        }
        if *d > a {
            violations.push(Violation { condition: "c_k <= a_k", index: k });
        } else if *d == a && !ds.digits[i - 1].is_zero() {
            violations.push(Violation { condition: "c_k = a_k requires c_{k-1} = 0", index: k });
        }
    }
    Ok(Admissibility::from_violations(violations))
}

fn chi(t: &BigInt) -> BigInt {
    if t.is_negative() {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Encoding of a signed integer against the alternating weights `q*_{k-1}`.
pub fn encode_integer(t: &BigInt, cf: &CfStream) -> Result<DigitString> {
    let table = ConvergentTable::new(cf);
    let mut digits: Vec<BigInt> = Vec::new();
    let mut t = t.clone();
    let one = BigInt::one();
    while !t.is_zero() && t != one {
        let target = t.abs() + chi(&t);
        let np = locate_integer_preindex(&target, &table)?;
        let (n, b);
        let sign_match = if np % 2 == 1 { t.is_positive() } else { t.is_negative() };
        if sign_match {
            n = np;
            let b_trial = t.abs().div_floor(&table.q(n as i64 - 1)?);
            let r = &t - &b_trial * table.q_star(n as i64 - 1)?;
            let q_below = if n >= 2 { table.q(n as i64 - 2)? } else { BigInt::zero() };
            b = if r.abs() + chi(&r) <= q_below { b_trial } else { b_trial + 1 };
        } else {
            n = np + 1;
            b = BigInt::one();
        }
        if digits.len() < n {
            digits.resize(n, BigInt::zero());
        }
        t -= &b * table.q_star(n as i64 - 1)?;
        debug_assert!(digits[n - 1].is_zero());
        digits[n - 1] = b;
    }
    if t == one {
        if digits.is_empty() {
            digits.push(BigInt::zero());
        }
        digits[0] += 1;
    }
    Ok(DigitString::right(digits))
}

/// Smallest index `n' >= 1` with `q_{n'-1} < |T| + chi(T) <= q_{n'}`.
fn locate_integer_preindex(target: &BigInt, table: &ConvergentTable) -> Result<usize> {
    let mut n = 1usize;
    loop {
        match table.q(n as i64) {
            Ok(q) => {
                if &q >= target {
                    return Ok(n);
                }
                n += 1;
            }
            Err(Error::InsufficientDigits { available, .. }) => {
                return Err(Error::InsufficientDigits { needed: n, available });
            }
            Err(e) => return Err(e),
        }
    }
}

/// Dot product with the weights `q*_{k-1}`. Validates first (corrected mode).
pub fn decode_integer(ds: &DigitString, cf: &CfStream) -> Result<BigInt> {
    decode_integer_with(ds, cf, RightMode::Corrected)
}

pub fn decode_integer_with(ds: &DigitString, cf: &CfStream, mode: RightMode) -> Result<BigInt> {
    validate_right(ds, cf, mode)?.into_result()?;
    decode_integer_unchecked(ds, cf)
}

/// The raw dot product, used by the audit layer on strings that may fail
/// validation on purpose.
pub fn decode_integer_unchecked(ds: &DigitString, cf: &CfStream) -> Result<BigInt> {
    let table = ConvergentTable::new(cf);
    let mut total = BigInt::zero();
    for (i, d) in ds.digits.iter().enumerate() {
        if !d.is_zero() {
            total += d * table.q_star(i as i64)?;
        }
    }
    Ok(total)
}

/// Checks the integer-side digit conditions: `0 <= b_k <= a_k`, nonzero top
/// digit, and the adjacency rule `b_k = a_k` forces `b_{k+1} = 0`. The mode
/// selects how far the adjacency rule reaches.
pub fn validate_right(ds: &DigitString, cf: &CfStream, mode: RightMode) -> Result<Admissibility> {
    let n = ds.n();
    if n == 0 {
        return Ok(Admissibility::accept());
    }
    let table = ConvergentTable::new(cf);
    let mut violations = Vec::new();
    if ds.digits[n - 1].is_zero() {
        violations.push(Violation { condition: "top digit b_n >= 1", index: n });
    }
    let adjacency_limit = match mode {
        RightMode::Corrected => n.saturating_sub(1),
        RightMode::AsPrinted => n.saturating_sub(2),
    };
    for (i, d) in ds.digits.iter().enumerate() {
        let k = i + 1;
        let a = table.digit(k)?;
        if d.is_negative() {
            violations.push(Violation { condition: "digits are nonnegative", index: k });
            continue;
        }
        if *d > a {
            violations.push(Violation { condition: "b_k <= a_k", index: k });
        } else if *d == a && k <= adjacency_limit && !ds.digits[i + 1].is_zero() {
            violations.push(Violation { condition: "b_k = a_k requires b_{k+1} = 0", index: k });
        }
    }
    Ok(Admissibility::from_violations(violations))
}

/// The set of integers representable with index at most `n`.
pub fn range_set(n: usize, cf: &CfStream) -> Result<RangeSet> {
    let table = ConvergentTable::new(cf);
    let ni = n as i64;
    let rho_n = ni.rem_euclid(2);
    let rho_prev = (ni - 1).rem_euclid(2);
    let lo = BigInt::one() - table.q(ni - rho_n)?;
    let hi = table.q(ni - rho_prev)?;
    Ok(RangeSet { n, lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{golden, silver};
    use crate::RealValue;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&n| BigInt::from(n)).collect()
    }

    fn silver_cf() -> CfStream {
        CfStream::from_real(&silver()).unwrap()
    }

    fn golden_cf() -> CfStream {
        CfStream::from_real(&golden()).unwrap()
    }

    #[test]
    fn counting_examples() {
        let cf = silver_cf();
        assert_eq!(encode_counting(&big(24), &cf).unwrap().digits, bigs(&[0, 0, 0, 2]));
        assert_eq!(encode_counting(&big(0), &cf).unwrap().digits, bigs(&[]));
        let g = golden_cf();
        assert_eq!(encode_counting(&big(7), &g).unwrap().digits, bigs(&[0, 0, 1, 0, 1]));
        // With a_1 = 1 the window at n = 1 is empty, so S = 1 lands at n = 2.
        assert_eq!(encode_counting(&big(1), &g).unwrap().digits, bigs(&[0, 1]));
    }

    #[test]
    fn counting_decode_examples() {
        let cf = silver_cf();
        assert_eq!(decode_counting(&DigitString::left(bigs(&[0, 1, 1])), &cf).unwrap(), big(7));
        assert_eq!(decode_counting(&DigitString::left(bigs(&[])), &cf).unwrap(), big(0));
        assert_eq!(decode_counting(&DigitString::left(bigs(&[1])), &cf).unwrap(), big(1));
    }

    #[test]
    fn counting_round_trip_and_window() {
        for cf in [silver_cf(), golden_cf()] {
            let table = ConvergentTable::new(&cf);
            for s in 0..200i64 {
                let s = big(s);
                let ds = encode_counting(&s, &cf).unwrap();
                assert_eq!(decode_counting(&ds, &cf).unwrap(), s, "round trip at {s}");
                let n = ds.n();
                if !s.is_zero() {
                    assert!(table.q(n as i64 - 1).unwrap() <= s);
                    assert!(s <= table.q(n as i64).unwrap() - 1);
                }
            }
        }
    }

    #[test]
    fn markov_validation() {
        let cf = silver_cf();
        let bad = validate_left(&DigitString::left(bigs(&[1, 2])), &cf).unwrap();
        assert!(!bad.ok);
        assert_eq!(bad.violations[0].condition, "c_k = a_k requires c_{k-1} = 0");
        assert_eq!(bad.violations[0].index, 2);
        let bad = validate_left(&DigitString::left(bigs(&[2])), &cf).unwrap();
        assert!(!bad.ok);
        assert_eq!(bad.violations[0].condition, "c_1 <= a_1 - 1");
        let good = validate_left(&DigitString::left(bigs(&[0, 2])), &cf).unwrap();
        assert!(good.ok);
        let trailing = validate_left(&DigitString::left(bigs(&[1, 0])), &cf).unwrap();
        assert!(!trailing.ok);
        assert_eq!(trailing.violations[0].condition, "top digit c_n >= 1");
    }

    #[test]
    fn integer_examples() {
        let cf = silver_cf();
        assert_eq!(encode_integer(&big(13), &cf).unwrap().digits, bigs(&[0, 2, 0, 1, 1]));
        assert_eq!(encode_integer(&big(0), &cf).unwrap().digits, bigs(&[]));
        assert_eq!(encode_integer(&big(-3), &cf).unwrap().digits, bigs(&[1, 2]));
        assert_eq!(encode_integer(&big(-21), &cf).unwrap().digits, bigs(&[0, 1, 1, 2]));
        let g = golden_cf();
        assert_eq!(encode_integer(&big(1), &g).unwrap().digits, bigs(&[1]));
        assert_eq!(encode_integer(&big(2), &g).unwrap().digits, bigs(&[0, 0, 1]));
        assert_eq!(encode_integer(&big(3), &g).unwrap().digits, bigs(&[1, 0, 1]));
    }

    #[test]
    fn integer_decode_examples() {
        let cf = silver_cf();
        assert_eq!(decode_integer(&DigitString::right(bigs(&[2, 0, 2])), &cf).unwrap(), big(12));
        assert_eq!(
            decode_integer(&DigitString::right(bigs(&[0, 0, 0, 2])), &cf).unwrap(),
            big(-24)
        );
        let g = golden_cf();
        assert_eq!(decode_integer(&DigitString::right(bigs(&[0, 1])), &g).unwrap(), big(-1));
    }

    #[test]
    fn integer_round_trip() {
        for cf in [silver_cf(), golden_cf()] {
            for t in -150..=150i64 {
                let t = big(t);
                let ds = encode_integer(&t, &cf).unwrap();
                let check = validate_right(&ds, &cf, RightMode::Corrected).unwrap();
                assert!(check.ok, "encode({t}) not admissible: {:?}", check.violations);
                assert_eq!(decode_integer(&ds, &cf).unwrap(), t, "round trip at {t}");
            }
        }
    }

    #[test]
    fn right_validation_modes() {
        let cf = silver_cf();
        let s21 = DigitString::right(bigs(&[2, 1]));
        assert!(!validate_right(&s21, &cf, RightMode::Corrected).unwrap().ok);
        assert!(validate_right(&s21, &cf, RightMode::AsPrinted).unwrap().ok);
        // Its raw value collides with the empty string.
        assert_eq!(decode_integer_unchecked(&s21, &cf).unwrap(), big(0));
        let g = golden_cf();
        let s111 = DigitString::right(bigs(&[1, 1, 1]));
        assert!(!validate_right(&s111, &g, RightMode::Corrected).unwrap().ok);
        assert!(!validate_right(&s111, &g, RightMode::AsPrinted).unwrap().ok);
    }

    #[test]
    fn range_sets_silver() {
        let cf = silver_cf();
        let expected = [(0i64, 0i64), (0, 2), (-4, 2), (-4, 12), (-28, 12)];
        for (n, (lo, hi)) in expected.iter().enumerate() {
            let r = range_set(n, &cf).unwrap();
            assert_eq!((r.lo.clone(), r.hi.clone()), (big(*lo), big(*hi)), "I_{n}");
        }
    }

    #[test]
    fn range_sets_nest_and_match_encoding() {
        let cf = silver_cf();
        for n in 1..6usize {
            let r = range_set(n, &cf).unwrap();
            let prev = range_set(n - 1, &cf).unwrap();
            assert!(r.lo <= prev.lo && prev.hi <= r.hi);
            let mut t = r.lo.clone();
            while t <= r.hi {
                let ds = encode_integer(&t, &cf).unwrap();
                if prev.contains(&t) {
                    assert!(ds.n() < n, "T = {t} should fit below index {n}");
                } else {
                    assert_eq!(ds.n(), n, "T = {t} needs exactly index {n}");
                }
                t += 1;
            }
        }
    }

    #[test]
    fn finite_slopes_run_out_of_digits() {
        let cf = CfStream::from_real(&RealValue::Rational(num_rational::BigRational::new(
            big(5),
            big(7),
        )))
        .unwrap();
        // q = 1, 1, 3, 7; S up to 6 encodes, S = 7 does not.
        assert!(encode_counting(&big(6), &cf).is_ok());
        assert!(matches!(
            encode_counting(&big(7), &cf),
            Err(Error::InsufficientDigits { .. })
        ));
    }
}
