//! Continued fraction digit streams, convergents, and the telescoping
//! series built from them.
//!
//! All slopes live in (0, 1) and have expansions `<a_1, a_2, ...>` with
//! digits at least 1, so that `alpha = 1/(a_1 + 1/(a_2 + ...))`. Rational
//! slopes have finite expansions, canonicalized so the last digit exceeds 1.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{
    fold_finite_cf, DigitRule, ParsedNumber, QuadraticReal, RealValue, RefinableReal,
};

/// A continued fraction digit source with its slope value attached.
///
/// Cloning is cheap and shares the extraction state.
#[derive(Clone)]
pub struct CfStream {
    inner: Arc<Mutex<Inner>>,
    slope: RealValue,
}

struct Inner {
    digits: Vec<BigInt>,
    ext: Extender,
}

enum Extender {
    /// Finite expansion, fully extracted.
    Done,
    /// Quadratic slope: exact digit extraction from the iterated tail.
    Quad { state: QuadraticReal },
    /// Refinable slope: digits are proven from enclosures of increasing
    /// precision; an unprovable digit raises `PrecisionExhausted`.
    Enclosed { src: RefinableReal, bits: u32 },
    /// Digits come from an explicit rule.
    Rule { rule: Arc<dyn DigitRule> },
}

impl CfStream {
    /// Builds a stream for a slope value in (0, 1).
    pub fn from_real(v: &RealValue) -> Result<CfStream> {
        if v.sign()? <= 0 || v.cmp_exact(&RealValue::one())? != std::cmp::Ordering::Less {
            return Err(Error::OutOfDomain("slope must lie strictly between 0 and 1".into()));
        }
        match v {
            RealValue::Rational(r) => {
                let digits = euclid_digits(r);
                Ok(CfStream::assemble(digits, Extender::Done, v.clone()))
            }
            RealValue::Quadratic(q) => Ok(CfStream::assemble(
                Vec::new(),
                Extender::Quad { state: q.clone() },
                v.clone(),
            )),
            RealValue::Refinable(r) => Ok(CfStream::assemble(
                Vec::new(),
                Extender::Enclosed { src: r.clone(), bits: 64 },
                v.clone(),
            )),
        }
    }

    /// Builds a finite stream from explicit digits. A trailing digit of 1 is
    /// folded into its neighbor to keep the expansion canonical.
    pub fn from_digits(mut digits: Vec<BigInt>) -> Result<CfStream> {
        if digits.is_empty() {
            return Err(Error::OutOfDomain("empty continued fraction".into()));
        }
        for d in &digits {
            if d < &BigInt::one() {
                return Err(Error::OutOfDomain(format!("continued fraction digit {d} below 1")));
            }
        }
        if digits.len() >= 2 && digits.last().unwrap().is_one() {
            digits.pop();
            *digits.last_mut().unwrap() += BigInt::one();
        }
        let slope = RealValue::Rational(fold_finite_cf(&digits));
        Ok(CfStream::assemble(digits, Extender::Done, slope))
    }

    /// Builds a stream for an eventually periodic expansion. The digits are
    /// taken verbatim; the slope is the exact quadratic value.
    pub fn from_periodic(head: Vec<BigInt>, period: Vec<BigInt>) -> Result<CfStream> {
        if period.is_empty() {
            return Err(Error::OutOfDomain("empty period".into()));
        }
        for d in head.iter().chain(period.iter()) {
            if d < &BigInt::one() {
                return Err(Error::OutOfDomain(format!("continued fraction digit {d} below 1")));
            }
        }
        let value = crate::kernel::periodic_cf_to_quadratic(&head, &period)?;
        let rule = PeriodicRule { head, period };
        Ok(CfStream::assemble(
            Vec::new(),
            Extender::Rule { rule: Arc::new(rule) },
            RealValue::Quadratic(value),
        ))
    }

    /// Builds an infinite stream from a digit rule (1-based indices). The
    /// slope value is bracketed between consecutive convergents on demand.
    pub fn from_rule<R: DigitRule + 'static>(rule: R) -> CfStream {
        let rule: Arc<dyn DigitRule> = Arc::new(rule);
        let slope = RealValue::Refinable(RefinableReal::cf_bracket(
            rule.clone(),
            crate::kernel::DEFAULT_MAX_BITS,
        ));
        CfStream::assemble(Vec::new(), Extender::Rule { rule }, slope)
    }

    /// Dispatches on a parsed number specification.
    pub fn from_parsed(p: &ParsedNumber) -> Result<CfStream> {
        match p {
            ParsedNumber::Value(v) => CfStream::from_real(v),
            ParsedNumber::CfFinite(d) => CfStream::from_digits(d.clone()),
            ParsedNumber::CfPeriodic { head, period } => {
                CfStream::from_periodic(head.clone(), period.clone())
            }
        }
    }

    fn assemble(digits: Vec<BigInt>, ext: Extender, slope: RealValue) -> CfStream {
        CfStream { inner: Arc::new(Mutex::new(Inner { digits, ext })), slope }
    }

    /// The slope value this stream expands.
    pub fn slope(&self) -> &RealValue {
        &self.slope
    }

    /// Digit `a_k` (1-based). `Ok(None)` means the expansion is finite and
    /// shorter than `k`.
    pub fn digit(&self, k: usize) -> Result<Option<BigInt>> {
        if k == 0 {
            return Err(Error::OutOfDomain("digit indices are 1-based".into()));
        }
        let mut inner = self.inner.lock().unwrap();
        inner.ensure(k)?;
        Ok(inner.digits.get(k - 1).cloned())
    }

    /// The first `n` digits, or all of them when the expansion is finite and
    /// shorter.
    pub fn digits_prefix(&self, n: usize) -> Result<Vec<BigInt>> {
        let mut inner = self.inner.lock().unwrap();
        inner.ensure(n)?;
        Ok(inner.digits.iter().take(n).cloned().collect())
    }

    /// Length of the expansion when it is known to be finite.
    pub fn finite_len(&self) -> Option<usize> {
        let inner = self.inner.lock().unwrap();
        match inner.ext {
            Extender::Done => Some(inner.digits.len()),
            _ => None,
        }
    }
}

impl Inner {
    fn ensure(&mut self, k: usize) -> Result<()> {
        while self.digits.len() < k {
            match &mut self.ext {
                Extender::Done => return Ok(()),
                Extender::Quad { state } => {
                    // a = floor(1/state); next tail is 1/state - a.
                    let inv = state.recip();
                    let a = inv.floor();
                    let next = inv.sub_int(&a);
                    self.digits.push(a);
                    *state = next;
                }
                Extender::Enclosed { src, bits } => {
                    let have = self.digits.len();
                    let mut prev_width: Option<BigRational> = None;
                    loop {
                        let iv = src.enclose(*bits)?;
                        let proven = provable_digits(&iv.lo, &iv.hi);
                        if proven.len() > have {
                            debug_assert!(proven[..have] == self.digits[..have]);
                            self.digits = proven;
                            break;
                        }
                        let w = iv.width();
                        if prev_width.as_ref().is_some_and(|pw| crate::kernel::rat_le(pw, &w)) {
                            return Err(Error::PrecisionExhausted(format!(
                                "continued fraction digit {} is not determined by the input",
                                have + 1
                            )));
                        }
                        if *bits >= src.budget() {
                            return Err(Error::PrecisionExhausted(format!(
                                "continued fraction digit {} undecided within the {}-bit budget",
                                have + 1,
                                src.budget()
                            )));
                        }
                        prev_width = Some(w);
                        *bits = bits.saturating_mul(2).min(src.budget());
                    }
                }
                Extender::Rule { rule } => {
                    let k = self.digits.len() as u64 + 1;
                    let a = rule.digit(k);
                    if a < BigInt::one() {
                        return Err(Error::OutOfDomain(format!(
                            "digit rule produced {a} at index {k}; digits must be at least 1"
                        )));
                    }
                    self.digits.push(a);
                }
            }
        }
        Ok(())
    }
}

struct PeriodicRule {
    head: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl DigitRule for PeriodicRule {
    fn digit(&self, k: u64) -> BigInt {
        let i = (k - 1) as usize;
        if i < self.head.len() {
            self.head[i].clone()
        } else {
            self.period[(i - self.head.len()) % self.period.len()].clone()
        }
    }
}

/// Digits of a rational in (0, 1) by the division algorithm. The final
/// digit always exceeds 1, matching the canonical form.
fn euclid_digits(r: &BigRational) -> Vec<BigInt> {
    let mut p = r.numer().clone();
    let mut q = r.denom().clone();
    let mut digits = Vec::new();
    while !p.is_zero() {
        let (d, rem) = q.div_rem(&p);
        digits.push(d);
        q = std::mem::replace(&mut p, rem);
    }
    digits
}

/// Continued fraction digits provable from an interval `[lo, hi]` that
/// contains the value. A digit is proven when every point of the interval
/// shares it.
fn provable_digits(lo: &BigRational, hi: &BigRational) -> Vec<BigInt> {
    let one = BigRational::one();
    let mut digits = Vec::new();
    let mut l = lo.clone();
    let mut h = hi.clone();
    loop {
        if !l.is_positive() || h >= one {
            return digits;
        }
        // x in [l, h] inside (0, 1), so 1/x in [1/h, 1/l].
        let inv_h = h.recip();
        let inv_l = l.recip();
        let fl = inv_h.floor();
        let fh = inv_l.floor();
        if fl != fh {
            return digits;
        }
        digits.push(fl.to_integer());
        l = inv_h - &fl;
        h = inv_l - fl;
    }
}

/// One row of the convergent table.
#[derive(Debug, Clone)]
pub struct Convergent {
    /// Row index; -1 and 0 are the seed rows.
    pub k: i64,
    /// Digit `a_k`; absent on the seed rows.
    pub a: Option<BigInt>,
    pub p: BigInt,
    pub q: BigInt,
    /// Alternating versions `(-1)^k p_k` and `(-1)^k q_k`.
    pub p_star: BigInt,
    pub q_star: BigInt,
    /// Linear approximation coefficient `theta_k = q_k alpha - p_k`.
    pub theta: RealValue,
    /// `|theta_k| = q*_k alpha - p*_k`, exact by construction.
    pub abs_theta: RealValue,
}

/// Lazily extended convergent rows over one digit stream. Cloning the
/// underlying stream is cheap, so tables are built freely where needed.
pub struct ConvergentTable {
    cf: CfStream,
    rows: Mutex<Vec<Convergent>>,
}

impl ConvergentTable {
    pub fn new(cf: &CfStream) -> Self {
        ConvergentTable { cf: cf.clone(), rows: Mutex::new(Vec::new()) }
    }

    pub fn stream(&self) -> &CfStream {
        &self.cf
    }

    /// Row `k` for `k >= -1`. Fails with `InsufficientDigits` past the end
    /// of a finite expansion.
    pub fn row(&self, k: i64) -> Result<Convergent> {
        debug_assert!(k >= -1);
        if k == -1 {
            return Ok(Convergent {
                k: -1,
                a: None,
                p: BigInt::one(),
                q: BigInt::zero(),
                p_star: BigInt::from(-1),
                q_star: BigInt::zero(),
                theta: RealValue::from(-1),
                abs_theta: RealValue::one(),
            });
        }
        let idx = k as usize;
        let mut rows = self.rows.lock().unwrap();
        if rows.is_empty() {
            let alpha = self.cf.slope().clone();
            rows.push(Convergent {
                k: 0,
                a: None,
                p: BigInt::zero(),
                q: BigInt::one(),
                p_star: BigInt::zero(),
                q_star: BigInt::one(),
                theta: alpha.clone(),
                abs_theta: alpha,
            });
        }
        while rows.len() <= idx {
            let k_next = rows.len();
            let a = match self.cf.digit(k_next)? {
                Some(a) => a,
                None => {
                    return Err(Error::InsufficientDigits {
                        needed: k_next,
                        available: self.cf.finite_len().unwrap_or(k_next - 1),
                    })
                }
            };
            // k = 1 reaches back to the virtual row -1 with p = 1, q = 0.
            let (p2, q2) = if k_next >= 2 {
                (rows[k_next - 2].p.clone(), rows[k_next - 2].q.clone())
            } else {
                (BigInt::one(), BigInt::zero())
            };
            let prev = &rows[k_next - 1];
            let p = &a * &prev.p + p2;
            let q = &a * &prev.q + q2;
            let sign = if k_next % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
            let p_star = &sign * &p;
            let q_star = &sign * &q;
            let alpha = self.cf.slope();
            let theta = alpha.mul(&RealValue::from(q.clone())).sub(&RealValue::from(p.clone()));
            let abs_theta = alpha
                .mul(&RealValue::from(q_star.clone()))
                .sub(&RealValue::from(p_star.clone()));
            rows.push(Convergent { k: k_next as i64, a: Some(a), p, q, p_star, q_star, theta, abs_theta });
        }
        Ok(rows[idx].clone())
    }

    pub fn q(&self, k: i64) -> Result<BigInt> {
        Ok(self.row(k)?.q)
    }

    pub fn q_star(&self, k: i64) -> Result<BigInt> {
        Ok(self.row(k)?.q_star)
    }

    pub fn theta(&self, k: i64) -> Result<RealValue> {
        Ok(self.row(k)?.theta)
    }

    pub fn abs_theta(&self, k: i64) -> Result<RealValue> {
        Ok(self.row(k)?.abs_theta)
    }

    /// Digit `a_k`, failing with `InsufficientDigits` past a finite end.
    pub fn digit(&self, k: usize) -> Result<BigInt> {
        match self.cf.digit(k)? {
            Some(a) => Ok(a),
            None => Err(Error::InsufficientDigits {
                needed: k,
                available: self.cf.finite_len().unwrap_or(0),
            }),
        }
    }
}

/// Convergent rows `k = 0..=n`.
pub fn convergents(cf: &CfStream, n: usize) -> Result<Vec<Convergent>> {
    let table = ConvergentTable::new(cf);
    (0..=n as i64).map(|k| table.row(k)).collect()
}

/// Parity indicator: 0 for even indices, 1 for odd ones; `rho(-1) = 1`.
pub fn rho(k: i64) -> i64 {
    k.rem_euclid(2)
}

/// The telescoping series built from `a_k theta_{k-1}` terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `sum_{k=1..n} a_k |theta_{k-1}|`, converging to `1 + alpha`.
    AbsPartial,
    /// `sum_{k=1..n} a_k theta_{k-1}`, converging to `1 - alpha`.
    AltPartial,
    /// Even-index terms only: `sum a_k |theta_{k-1}|` recovers `alpha`.
    SelfEven,
    /// Odd-index terms only: `sum a_k theta_{k-1}` recovers `1`.
    UnityOdd,
    /// Alternate terms `k = from+1, from+3, ...` of the absolute series.
    AbsTail { from: usize },
    /// Alternate terms of the signed series.
    AltTail { from: usize },
}

#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub upto: usize,
    /// Direct term-by-term sum.
    pub telescoped: RealValue,
    /// Closed form of the same partial sum.
    pub closed: RealValue,
}

impl SeriesReport {
    /// Whether the two sides agree: exactly for exact values, within
    /// `2^-tol_bits` otherwise.
    pub fn matches(&self, tol_bits: u32) -> Result<bool> {
        let diff = self.telescoped.sub(&self.closed);
        if diff.is_exact() {
            Ok(diff.sign()? == 0)
        } else {
            let tol = BigRational::new(BigInt::one(), BigInt::one() << tol_bits);
            let iv = diff.abs().enclose(tol_bits + 8)?;
            Ok(iv.hi < tol)
        }
    }
}

/// Partial sums of the telescoping series against their closed forms.
pub fn series_partials(cf: &CfStream, kind: SeriesKind, n: usize) -> Result<SeriesReport> {
    let t = ConvergentTable::new(cf);
    let term_abs = |k: i64| -> Result<RealValue> {
        let a = RealValue::from(t.digit(k as usize)?);
        Ok(a.mul(&t.abs_theta(k - 1)?))
    };
    let term_alt = |k: i64| -> Result<RealValue> {
        let a = RealValue::from(t.digit(k as usize)?);
        Ok(a.mul(&t.theta(k - 1)?))
    };
    let sum = |ks: Vec<i64>, alt: bool| -> Result<RealValue> {
        let mut acc = RealValue::zero();
        for k in ks {
            acc = acc.add(&if alt { term_alt(k)? } else { term_abs(k)? });
        }
        Ok(acc)
    };
    let alpha = cf.slope().clone();
    let one = RealValue::one();
    let ni = n as i64;
    let (telescoped, closed) = match kind {
        SeriesKind::AbsPartial => {
            let tele = sum((1..=ni).collect(), false)?;
            let closed = one
                .add(&alpha)
                .sub(&t.abs_theta(ni - 1)?)
                .sub(&t.abs_theta(ni)?);
            (tele, closed)
        }
        SeriesKind::AltPartial => {
            let tele = sum((1..=ni).collect(), true)?;
            let closed = one
                .sub(&alpha)
                .add(&t.theta(ni - 1)?)
                .add(&t.theta(ni)?);
            (tele, closed)
        }
        SeriesKind::SelfEven => {
            let tele = sum((1..=ni).filter(|k| k % 2 == 0).collect(), false)?;
            let closed = alpha.sub(&t.theta(ni - rho(ni))?);
            (tele, closed)
        }
        SeriesKind::UnityOdd => {
            let tele = sum((1..=ni).filter(|k| k % 2 == 1).collect(), true)?;
            let closed = one.add(&t.theta(ni - 1 + rho(ni))?);
            (tele, closed)
        }
        SeriesKind::AbsTail { from } => {
            let n0 = from as i64;
            if ni <= n0 {
                (RealValue::zero(), RealValue::zero())
            } else {
                let ks: Vec<i64> = (n0 + 1..=ni).filter(|k| (k - n0) % 2 == 1).collect();
                let last = *ks.last().unwrap();
                let tele = sum(ks, false)?;
                let closed = t.abs_theta(n0 - 1)?.sub(&t.abs_theta(last)?);
                (tele, closed)
            }
        }
        SeriesKind::AltTail { from } => {
            let n0 = from as i64;
            if ni <= n0 {
                (RealValue::zero(), RealValue::zero())
            } else {
                let ks: Vec<i64> = (n0 + 1..=ni).filter(|k| (k - n0) % 2 == 1).collect();
                let last = *ks.last().unwrap();
                let tele = sum(ks, true)?;
                let closed = t.theta(last)?.sub(&t.theta(n0 - 1)?);
                (tele, closed)
            }
        }
    };
    Ok(SeriesReport { kind, upto: n, telescoped, closed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{golden, silver};
    use std::cmp::Ordering;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn rational_digit_extraction() {
        let half = CfStream::from_real(&RealValue::Rational(rat(1, 2))).unwrap();
        assert_eq!(half.digits_prefix(5).unwrap(), vec![big(2)]);
        let two_thirds = CfStream::from_real(&RealValue::Rational(rat(2, 3))).unwrap();
        assert_eq!(two_thirds.digits_prefix(5).unwrap(), vec![big(1), big(2)]);
        let five_sevenths = CfStream::from_real(&RealValue::Rational(rat(5, 7))).unwrap();
        assert_eq!(five_sevenths.digits_prefix(5).unwrap(), vec![big(1), big(2), big(2)]);
        assert_eq!(five_sevenths.finite_len(), Some(3));
        assert_eq!(five_sevenths.digit(4).unwrap(), None);
    }

    #[test]
    fn trailing_one_is_folded() {
        // <1, 2, 1> denotes the same value as <1, 3>.
        let s = CfStream::from_digits(vec![big(1), big(2), big(1)]).unwrap();
        assert_eq!(s.digits_prefix(5).unwrap(), vec![big(1), big(3)]);
        assert_eq!(s.slope().as_rational().unwrap(), &rat(3, 4));
    }

    #[test]
    fn quadratic_digit_extraction() {
        let silver_cf = CfStream::from_real(&silver()).unwrap();
        assert_eq!(
            silver_cf.digits_prefix(6).unwrap(),
            vec![big(2), big(2), big(2), big(2), big(2), big(2)]
        );
        let golden_cf = CfStream::from_real(&golden()).unwrap();
        assert_eq!(golden_cf.digits_prefix(4).unwrap(), vec![big(1); 4]);
        // sqrt(3) - 1 has expansion <1, 2, 1, 2, ...>
        let t = CfStream::from_real(
            &RealValue::quadratic(big(-1), big(1), big(3), big(1)).unwrap(),
        )
        .unwrap();
        assert_eq!(
            t.digits_prefix(5).unwrap(),
            vec![big(1), big(2), big(1), big(2), big(1)]
        );
    }

    #[test]
    fn enclosed_digit_extraction() {
        // 20 decimal digits of the silver section prove at least 5 digits.
        let v = crate::kernel::parse_real("dec:0.41421356237309504880", 65536).unwrap();
        let s = CfStream::from_real(&v).unwrap();
        assert_eq!(s.digits_prefix(5).unwrap(), vec![big(2); 5]);
        // A coarse literal proves nothing.
        let w = crate::kernel::parse_real("dec:0.5", 65536).unwrap();
        let sw = CfStream::from_real(&w).unwrap();
        assert!(matches!(sw.digit(1), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn out_of_domain_slopes_rejected() {
        assert!(CfStream::from_real(&RealValue::zero()).is_err());
        assert!(CfStream::from_real(&RealValue::one()).is_err());
        assert!(CfStream::from_real(&RealValue::Rational(rat(3, 2))).is_err());
    }

    #[test]
    fn convergent_rows_silver() {
        let cf = CfStream::from_real(&silver()).unwrap();
        let rows = convergents(&cf, 3).unwrap();
        let qs: Vec<BigInt> = rows.iter().map(|r| r.q.clone()).collect();
        let ps: Vec<BigInt> = rows.iter().map(|r| r.p.clone()).collect();
        assert_eq!(qs, vec![big(1), big(2), big(5), big(12)]);
        assert_eq!(ps, vec![big(0), big(1), big(2), big(5)]);
    }

    #[test]
    fn convergent_rows_golden_are_fibonacci() {
        let cf = CfStream::from_real(&golden()).unwrap();
        let rows = convergents(&cf, 6).unwrap();
        let qs: Vec<BigInt> = rows.iter().map(|r| r.q.clone()).collect();
        assert_eq!(qs, vec![big(1), big(1), big(2), big(3), big(5), big(8), big(13)]);
    }

    #[test]
    fn theta_recursion_and_signs() {
        let cf = CfStream::from_real(&silver()).unwrap();
        let t = ConvergentTable::new(&cf);
        for k in 1..=8 {
            let a = RealValue::from(t.digit(k as usize).unwrap());
            let lhs = t.theta(k).unwrap();
            let rhs = t.theta(k - 2).unwrap().add(&a.mul(&t.theta(k - 1).unwrap()));
            assert_eq!(lhs.cmp_exact(&rhs).unwrap(), Ordering::Equal);
            // theta alternates sign with parity, and abs_theta is its magnitude.
            let expect_sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(lhs.sign().unwrap(), expect_sign);
            assert_eq!(
                t.abs_theta(k).unwrap().cmp_exact(&lhs.abs()).unwrap(),
                Ordering::Equal
            );
        }
    }

    #[test]
    fn theta_of_finite_expansion_vanishes() {
        let cf = CfStream::from_real(&RealValue::Rational(rat(5, 7))).unwrap();
        let t = ConvergentTable::new(&cf);
        assert_eq!(t.theta(3).unwrap().sign().unwrap(), 0);
        assert!(matches!(
            t.row(4),
            Err(Error::InsufficientDigits { needed: 4, available: 3 })
        ));
    }

    #[test]
    fn series_identities_exact_on_quadratics() {
        for slope in [golden(), silver()] {
            let cf = CfStream::from_real(&slope).unwrap();
            for n in 1..=12 {
                for kind in [
                    SeriesKind::AbsPartial,
                    SeriesKind::AltPartial,
                    SeriesKind::SelfEven,
                    SeriesKind::UnityOdd,
                    SeriesKind::AbsTail { from: 2 },
                    SeriesKind::AltTail { from: 3 },
                ] {
                    let rep = series_partials(&cf, kind, n).unwrap();
                    assert!(
                        rep.matches(100).unwrap(),
                        "series {kind:?} mismatch at n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn series_worked_values_silver() {
        let cf = CfStream::from_real(&silver()).unwrap();
        // Even terms up to 2: a_2 |theta_1| = alpha - theta_2.
        let rep = series_partials(&cf, SeriesKind::SelfEven, 2).unwrap();
        let t = ConvergentTable::new(&cf);
        let direct = RealValue::from(2).mul(&t.abs_theta(1).unwrap());
        assert_eq!(rep.telescoped.cmp_exact(&direct).unwrap(), Ordering::Equal);
        assert_eq!(rep.closed.cmp_exact(&direct).unwrap(), Ordering::Equal);
        // Odd terms up to 1: a_1 theta_0 = 2 alpha = 1 + theta_1.
        let rep = series_partials(&cf, SeriesKind::UnityOdd, 1).unwrap();
        let expected = silver().mul(&RealValue::from(2));
        assert_eq!(rep.telescoped.cmp_exact(&expected).unwrap(), Ordering::Equal);
        assert_eq!(rep.closed.cmp_exact(&expected).unwrap(), Ordering::Equal);
    }

    #[test]
    fn series_on_rule_stream_matches_within_tolerance() {
        let cf = CfStream::from_rule(|k: u64| BigInt::from(k));
        let rep = series_partials(&cf, SeriesKind::AbsPartial, 10).unwrap();
        assert!(rep.matches(100).unwrap());
    }

    #[test]
    fn interleaving_and_quality() {
        let cf = CfStream::from_real(&golden()).unwrap();
        let rows = convergents(&cf, 10).unwrap();
        let alpha = golden();
        for w in rows.windows(2).skip(1) {
            let (r1, r2) = (&w[0], &w[1]);
            let c1 = RealValue::Rational(rat(0, 1))
                .add(&RealValue::from(r1.p.clone()))
                .div(&RealValue::from(r1.q.clone()))
                .unwrap();
            let c2 = RealValue::from(r2.p.clone())
                .div(&RealValue::from(r2.q.clone()))
                .unwrap();
            // consecutive convergents straddle the slope
            let s1 = c1.sub(&alpha).sign().unwrap();
            let s2 = c2.sub(&alpha).sign().unwrap();
            assert_eq!(s1 * s2, -1);
            // |alpha - p/q| < 1/q^2
            let err = c1.sub(&alpha).abs();
            let bound = RealValue::one()
                .div(&RealValue::from((&r1.q * &r1.q).clone()))
                .unwrap();
            assert_eq!(err.cmp_exact(&bound).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn determinant_identity() {
        let cf = CfStream::from_real(&silver()).unwrap();
        let t = ConvergentTable::new(&cf);
        for k in 0..=10i64 {
            let r = t.row(k).unwrap();
            let prev = t.row(k - 1).unwrap();
            let det = &r.q * &prev.p - &r.p * &prev.q;
            let expect = if k % 2 == 0 { big(1) } else { big(-1) };
            assert_eq!(det, expect, "determinant at k = {k}");
        }
    }
}
