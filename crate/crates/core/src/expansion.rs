//! Real-number expansions over the weights `|theta_{k-1}|` (absolute) and
//! `theta_{k-1}` (alternating), with real-line extensions that split off an
//! integer part.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cf::{CfStream, ConvergentTable};
use crate::error::{Error, Result, Violation};
use crate::kernel::RealValue;
use crate::numeration::{Admissibility, DigitString, StringKind};

/// How an expansion run ended.
#[derive(Debug, Clone)]
pub enum ExpansionStatus {
    /// The iterate reached exactly zero after `l` steps. Only possible for
    /// exact inputs.
    TerminatedExact { l: usize },
    /// The digit budget ran out after `n` steps; `remainder` is the final
    /// iterate. The true expansion length is unknown, at least `n`.
    Truncated { n: usize, remainder: RealValue },
}

impl ExpansionStatus {
    pub fn is_terminated(&self) -> bool {
        matches!(self, ExpansionStatus::TerminatedExact { .. })
    }
}

#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub digits: DigitString,
    /// The weight-`|theta_{-1}|` coefficient of the real-line variants;
    /// zero when expanding inside the fundamental domain.
    pub integer_part: BigInt,
    pub status: ExpansionStatus,
}

/// Materializes `base - q*alpha + p`. Every iterate of the expansion loops
/// has this shape, and rebuilding it from the integer accumulators keeps
/// the derivation flat instead of one subtraction deep per digit.
fn flat_iterate(base: &RealValue, alpha: &RealValue, q: &BigInt, p: &BigInt) -> RealValue {
    base.sub(&alpha.mul(&RealValue::from(q.clone())))
        .add(&RealValue::from(p.clone()))
}

/// Greedy expansion of `beta` in `[0, 1)` over the absolute weights.
pub fn expand_absolute(
    beta: &RealValue,
    cf: &CfStream,
    max_digits: usize,
) -> Result<ExpansionResult> {
    if beta.sign()? < 0 || beta.cmp_exact(&RealValue::one())? != std::cmp::Ordering::Less {
        return Err(Error::OutOfDomain("absolute expansion needs 0 <= beta < 1".into()));
    }
    let table = ConvergentTable::new(cf);
    let alpha = cf.slope();
    let mut digits: Vec<BigInt> = Vec::new();
    let mut acc_q = BigInt::zero();
    let mut acc_p = BigInt::zero();
    let mut iterate = beta.clone();
    let mut k = 1usize;
    loop {
        if iterate.sign()? == 0 {
            return Ok(finish(digits, ExpansionStatus::TerminatedExact { l: k - 1 }, StringKind::AbsExpansion));
        }
        if k > max_digits {
            return Ok(finish(
                digits,
                ExpansionStatus::Truncated { n: max_digits, remainder: iterate },
                StringKind::AbsExpansion,
            ));
        }
        // A positive iterate needs a_k to exist: past the end of a finite
        // expansion the weight below would be exactly zero.
        let a = table.digit(k)?;
        let weight = table.abs_theta(k as i64 - 1)?;
        let b = iterate.div(&weight)?.floor()?;
        debug_assert!(b <= a);
        if !b.is_zero() {
            let row = table.row(k as i64 - 1)?;
            acc_q += &b * &row.q_star;
            acc_p += &b * &row.p_star;
            iterate = flat_iterate(beta, alpha, &acc_q, &acc_p);
        }
        digits.push(b);
        k += 1;
    }
}

/// Expansion of `gamma` in `[-alpha, 1-alpha)` over the signed weights.
/// Digits are produced by the sign-gated quotient with a one-step
/// correction toward the smaller-magnitude iterate.
pub fn expand_alternating(
    gamma: &RealValue,
    cf: &CfStream,
    max_digits: usize,
) -> Result<ExpansionResult> {
    let alpha = cf.slope();
    let lo = alpha.neg();
    let hi = RealValue::one().sub(alpha);
    if gamma.cmp_exact(&lo)? == std::cmp::Ordering::Less
        || gamma.cmp_exact(&hi)? != std::cmp::Ordering::Less
    {
        return Err(Error::OutOfDomain(
            "alternating expansion needs -alpha <= gamma < 1 - alpha".into(),
        ));
    }
    let table = ConvergentTable::new(cf);
    let mut digits: Vec<BigInt> = Vec::new();
    let mut acc_q = BigInt::zero();
    let mut acc_p = BigInt::zero();
    let mut iterate = gamma.clone();
    let mut k = 1usize;
    loop {
        let s = iterate.sign()?;
        if s == 0 {
            return Ok(finish(digits, ExpansionStatus::TerminatedExact { l: k - 1 }, StringKind::AltExpansion));
        }
        if k > max_digits {
            return Ok(finish(
                digits,
                ExpansionStatus::Truncated { n: max_digits, remainder: iterate },
                StringKind::AltExpansion,
            ));
        }
        let a = table.digit(k)?;
        let expected = if k % 2 == 1 { 1 } else { -1 };
        let c = if s == expected {
            // The iterate and theta_{k-1} share a sign, so the quotient is
            // a nonnegative integer; bump it when the successor weight
            // bounds the residual more tightly.
            let row = table.row(k as i64 - 1)?;
            let trial = iterate.div(&row.theta)?.floor()?;
            let trial_q = &acc_q + &trial * &row.q;
            let trial_p = &acc_p + &trial * &row.p;
            let residual = flat_iterate(gamma, alpha, &trial_q, &trial_p);
            let next_bound = table.abs_theta(k as i64)?;
            if residual.abs().cmp_exact(&next_bound)? == std::cmp::Ordering::Greater {
                trial + 1
            } else {
                trial
            }
        } else {
            BigInt::zero()
        };
        debug_assert!(c <= a);
        if !c.is_zero() {
            let row = table.row(k as i64 - 1)?;
            acc_q += &c * &row.q;
            acc_p += &c * &row.p;
            iterate = flat_iterate(gamma, alpha, &acc_q, &acc_p);
        }
        digits.push(c);
        k += 1;
    }
}

fn finish(mut digits: Vec<BigInt>, status: ExpansionStatus, kind: StringKind) -> ExpansionResult {
    while digits.last().is_some_and(|d| d.is_zero()) {
        digits.pop();
    }
    ExpansionResult {
        digits: DigitString::new(digits, kind),
        integer_part: BigInt::zero(),
        status,
    }
}

const TAIL_NOTE: &str =
    "tail condition (nonmaximal digits at infinitely many even and odd indices) not evaluated";

/// Digit conditions for absolute-expansion strings: `0 <= b_k <= a_k` and
/// `b_k = a_k` forces `b_{k+1} = 0`. Trailing zeros are allowed here, since
/// truncated prefixes are legitimate carriers.
pub fn validate_absolute(ds: &DigitString, cf: &CfStream) -> Result<Admissibility> {
    let table = ConvergentTable::new(cf);
    let mut violations = Vec::new();
    for (i, d) in ds.digits.iter().enumerate() {
        let k = i + 1;
        let a = table.digit(k)?;
        if d.is_negative() {
            violations.push(Violation { condition: "digits are nonnegative", index: k });
            continue;
        }
        if *d > a {
            violations.push(Violation { condition: "b_k <= a_k", index: k });
        } else if *d == a && i + 1 < ds.digits.len() && !ds.digits[i + 1].is_zero() {
            violations.push(Violation { condition: "b_k = a_k requires b_{k+1} = 0", index: k });
        }
    }
    let mut adm = Admissibility { ok: violations.is_empty(), violations, notes: Vec::new() };
    adm.notes.push(TAIL_NOTE.into());
    Ok(adm)
}

/// Digit conditions for alternating-expansion strings: `c_1 <= a_1 - 1`,
/// `0 <= c_k <= a_k`, and `c_k = a_k` forces `c_{k-1} = 0`.
pub fn validate_alternating(ds: &DigitString, cf: &CfStream) -> Result<Admissibility> {
    let table = ConvergentTable::new(cf);
    let mut violations = Vec::new();
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
    let mut adm = Admissibility { ok: violations.is_empty(), violations, notes: Vec::new() };
    adm.notes.push(TAIL_NOTE.into());
    Ok(adm)
}

/// Weighted sum over the absolute weights. The budget caps enclosure work
/// when the slope is not exact.
pub fn recover_absolute(ds: &DigitString, cf: &CfStream, budget: u32) -> Result<RealValue> {
    validate_absolute(ds, cf)?.into_result()?;
    let table = ConvergentTable::new(cf);
    let mut acc_q = BigInt::zero();
    let mut acc_p = BigInt::zero();
    for (i, d) in ds.digits.iter().enumerate() {
        if !d.is_zero() {
            let row = table.row(i as i64)?;
            acc_q += d * &row.q_star;
            acc_p += d * &row.p_star;
        }
    }
    if acc_q.is_zero() && acc_p.is_zero() {
        return Ok(RealValue::zero());
    }
    let total = cf
        .slope()
        .mul(&RealValue::from(acc_q))
        .sub(&RealValue::from(acc_p));
    Ok(total.with_budget(budget))
}

/// Weighted sum over the signed weights.
pub fn recover_alternating(ds: &DigitString, cf: &CfStream, budget: u32) -> Result<RealValue> {
    validate_alternating(ds, cf)?.into_result()?;
    let table = ConvergentTable::new(cf);
    let mut acc_q = BigInt::zero();
    let mut acc_p = BigInt::zero();
    for (i, d) in ds.digits.iter().enumerate() {
        if !d.is_zero() {
            let row = table.row(i as i64)?;
            acc_q += d * &row.q;
            acc_p += d * &row.p;
        }
    }
    if acc_q.is_zero() && acc_p.is_zero() {
        return Ok(RealValue::zero());
    }
    let total = cf
        .slope()
        .mul(&RealValue::from(acc_q))
        .sub(&RealValue::from(acc_p));
    Ok(total.with_budget(budget))
}

/// Splits `r` as floor plus fractional part and expands the latter, so that
/// `r = b_0 + sum b_k |theta_{k-1}| + remainder`.
pub fn expand_real_absolute(
    r: &RealValue,
    cf: &CfStream,
    max_digits: usize,
) -> Result<ExpansionResult> {
    let b0 = r.floor()?;
    let frac = r.sub(&RealValue::from(b0.clone()));
    let mut out = expand_absolute(&frac, cf, max_digits)?;
    out.integer_part = b0;
    Ok(out)
}

/// Shifts `r` into the fundamental domain of the alternating expansion:
/// `c_0 = -floor(r + alpha)` and `gamma_0 = r + c_0`, so that
/// `r = -c_0 + sum c_k theta_{k-1} + remainder`.
pub fn expand_real_alternating(
    r: &RealValue,
    cf: &CfStream,
    max_digits: usize,
) -> Result<ExpansionResult> {
    let shift = r.add(cf.slope()).floor()?;
    let gamma0 = r.sub(&RealValue::from(shift.clone()));
    let mut out = expand_alternating(&gamma0, cf, max_digits)?;
    out.integer_part = -shift;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{golden, silver};
    use num_rational::BigRational;
    use std::cmp::Ordering;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&n| BigInt::from(n)).collect()
    }

    fn rat(n: i64, d: i64) -> RealValue {
        RealValue::Rational(BigRational::new(big(n), big(d)))
    }

    fn silver_cf() -> CfStream {
        CfStream::from_real(&silver()).unwrap()
    }

    fn golden_cf() -> CfStream {
        CfStream::from_real(&golden()).unwrap()
    }

    #[test]
    fn absolute_examples() {
        let cf = silver_cf();
        // 2(sqrt(2)-1) = 2 alpha is exactly two copies of the first weight.
        let beta = silver().mul(&RealValue::from(2));
        let r = expand_absolute(&beta, &cf, 10).unwrap();
        assert_eq!(r.digits.digits, bigs(&[2]));
        assert!(matches!(r.status, ExpansionStatus::TerminatedExact { l: 1 }));

        let r = expand_absolute(&RealValue::zero(), &cf, 10).unwrap();
        assert!(r.digits.digits.is_empty());
        assert!(matches!(r.status, ExpansionStatus::TerminatedExact { l: 0 }));

        let g = golden_cf();
        let r = expand_absolute(&rat(1, 2), &g, 8).unwrap();
        assert_eq!(r.digits.digits, bigs(&[0, 1, 0, 0, 1, 0, 0, 1]));
        match &r.status {
            ExpansionStatus::Truncated { n, remainder } => {
                assert_eq!(*n, 8);
                let table = ConvergentTable::new(&g);
                let bound = table.abs_theta(8).unwrap();
                assert_eq!(remainder.cmp_exact(&bound).unwrap(), Ordering::Less);
                assert!(remainder.sign().unwrap() >= 0);
            }
            s => panic!("expected truncation, got {s:?}"),
        }
    }

    #[test]
    fn absolute_domain_check() {
        let cf = silver_cf();
        assert!(matches!(
            expand_absolute(&RealValue::one(), &cf, 4),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            expand_absolute(&rat(-1, 2), &cf, 4),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn alternating_examples() {
        let cf = silver_cf();
        let r = expand_alternating(&RealValue::zero(), &cf, 6).unwrap();
        assert!(r.digits.digits.is_empty());
        assert!(matches!(r.status, ExpansionStatus::TerminatedExact { l: 0 }));

        // gamma = theta_1 = 2 alpha - 1.
        let theta1 = silver().mul(&RealValue::from(2)).sub(&RealValue::one());
        let r = expand_alternating(&theta1, &cf, 6).unwrap();
        assert_eq!(r.digits.digits, bigs(&[0, 1]));
        assert!(matches!(r.status, ExpansionStatus::TerminatedExact { l: 2 }));

        // The self expansion: every even digit maxes out.
        let r = expand_alternating(&silver().neg(), &cf, 6).unwrap();
        assert_eq!(r.digits.digits, bigs(&[0, 2, 0, 2, 0, 2]));
        match &r.status {
            ExpansionStatus::Truncated { n: 6, .. } => {}
            s => panic!("expected truncation at 6, got {s:?}"),
        }
    }

    #[test]
    fn alternating_domain_check() {
        let cf = silver_cf();
        let just_below = silver().neg().sub(&rat(1, 1000));
        assert!(matches!(
            expand_alternating(&just_below, &cf, 4),
            Err(Error::OutOfDomain(_))
        ));
        let hi = RealValue::one().sub(&silver());
        assert!(matches!(expand_alternating(&hi, &cf, 4), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn residual_windows_hold() {
        // 0 <= beta_n < |theta_{n-1}| and gamma_n in [-theta_{n-rho}, -theta_{n-1+rho}).
        let cf = golden_cf();
        let table = ConvergentTable::new(&cf);
        let beta = rat(13, 37);
        for n in 1..=12usize {
            let r = expand_absolute(&beta, &cf, n).unwrap();
            if let ExpansionStatus::Truncated { remainder, .. } = &r.status {
                assert!(remainder.sign().unwrap() >= 0);
                let bound = table.abs_theta(n as i64 - 1).unwrap();
                assert_eq!(remainder.cmp_exact(&bound).unwrap(), Ordering::Less);
            }
            let gamma = rat(-13, 43);
            let r = expand_alternating(&gamma, &cf, n).unwrap();
            if let ExpansionStatus::Truncated { remainder, .. } = &r.status {
                let rho = (n % 2) as i64;
                let lo = table.theta(n as i64 - rho).unwrap().neg();
                let hi = table.theta(n as i64 - 1 + rho).unwrap().neg();
                assert!(remainder.cmp_exact(&lo).unwrap() != Ordering::Less);
                assert_eq!(remainder.cmp_exact(&hi).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn produced_digits_are_admissible() {
        let cf = silver_cf();
        for num in 1..60i64 {
            let beta = rat(num, 61);
            let r = expand_absolute(&beta, &cf, 12).unwrap();
            assert!(validate_absolute(&r.digits, &cf).unwrap().ok, "beta = {num}/61");
            let gamma = rat(num, 61).sub(&silver().mul(&rat(num, 61)).mul(&rat(2, 1)));
            // keep gamma in range by construction checks; skip if out of range
            let lo = silver().neg();
            let hi = RealValue::one().sub(&silver());
            if gamma.cmp_exact(&lo).unwrap() != Ordering::Less
                && gamma.cmp_exact(&hi).unwrap() == Ordering::Less
            {
                let r = expand_alternating(&gamma, &cf, 12).unwrap();
                assert!(validate_alternating(&r.digits, &cf).unwrap().ok, "gamma at {num}");
            }
        }
    }

    #[test]
    fn recover_round_trips() {
        let cf = silver_cf();
        let ds = DigitString::new(bigs(&[2]), StringKind::AbsExpansion);
        let v = recover_absolute(&ds, &cf, 256).unwrap();
        let expected = silver().mul(&RealValue::from(2));
        assert_eq!(v.cmp_exact(&expected).unwrap(), Ordering::Equal);

        // Padded alternating string recovers within the tail bound of -alpha.
        let ds = DigitString::new(bigs(&[0, 2, 0, 2, 0, 2]), StringKind::AltExpansion);
        let v = recover_alternating(&ds, &cf, 256).unwrap();
        let table = ConvergentTable::new(&cf);
        let err = v.sub(&silver().neg()).abs();
        assert_eq!(
            err.cmp_exact(&table.abs_theta(5).unwrap()).unwrap(),
            Ordering::Less
        );

        let empty = DigitString::new(vec![], StringKind::AbsExpansion);
        assert_eq!(recover_absolute(&empty, &cf, 64).unwrap().sign().unwrap(), 0);
    }

    #[test]
    fn recover_rejects_bad_digits() {
        let cf = silver_cf();
        let ds = DigitString::new(bigs(&[2, 1]), StringKind::AbsExpansion);
        assert!(matches!(
            recover_absolute(&ds, &cf, 64),
            Err(Error::NotAdmissible(_))
        ));
        // Alternating strings cap the first digit at a_1 - 1.
        let ds = DigitString::new(bigs(&[2]), StringKind::AltExpansion);
        assert!(matches!(
            recover_alternating(&ds, &cf, 64),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn real_line_absolute() {
        let cf = golden_cf();
        let r = expand_real_absolute(&RealValue::from(5), &cf, 8).unwrap();
        assert_eq!(r.integer_part, big(5));
        assert!(r.digits.digits.is_empty());

        let phi_plus_3 = golden().add(&RealValue::from(3));
        let r = expand_real_absolute(&phi_plus_3, &cf, 8).unwrap();
        assert_eq!(r.integer_part, big(3));
        assert_eq!(r.digits.digits, bigs(&[1]));

        let r = expand_real_absolute(&rat(-1, 2), &cf, 8).unwrap();
        assert_eq!(r.integer_part, big(-1));
        assert_eq!(r.digits.digits, bigs(&[0, 1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn real_line_alternating() {
        let cf = golden_cf();
        let r = expand_real_alternating(&RealValue::from(2), &cf, 8).unwrap();
        assert_eq!(r.integer_part, big(-2));
        assert!(r.digits.digits.is_empty());

        let r = expand_real_alternating(&rat(1, 2), &cf, 8).unwrap();
        assert_eq!(r.integer_part, big(-1));
        let recovered = recover_alternating(
            &DigitString::new(r.digits.digits.clone(), StringKind::AltExpansion),
            &cf,
            256,
        )
        .unwrap();
        // c_0 * theta_{-1} + recovered approximates 1/2 within the tail bound.
        let approx = RealValue::from(1).add(&recovered).sub(&rat(1, 2)).abs();
        let table = ConvergentTable::new(&cf);
        assert_eq!(
            approx.cmp_exact(&table.abs_theta(8).unwrap()).unwrap(),
            Ordering::Less
        );

        let s = CfStream::from_real(&silver()).unwrap();
        let r = expand_real_alternating(&silver().neg(), &s, 6).unwrap();
        assert_eq!(r.integer_part, big(0));
        assert_eq!(r.digits.digits, bigs(&[0, 2, 0, 2, 0, 2]));
    }

    #[test]
    fn rational_slope_runs_out() {
        let cf = CfStream::from_real(&rat(5, 7)).unwrap();
        // 5/7 has a 3-digit expansion; a beta needing deeper weights fails.
        let beta = rat(1, 100);
        assert!(matches!(
            expand_absolute(&beta, &cf, 10),
            Err(Error::InsufficientDigits { .. })
        ));
    }
}
