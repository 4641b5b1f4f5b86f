//! Best linear approximate solvers: homogeneous sequences read off the
//! convergents, inhomogeneous sequences driven by the real expansions, and
//! the general-solution certificate that scores both.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cf::{CfStream, ConvergentTable};
use crate::error::{Error, Result};
use crate::expansion::{expand_absolute, expand_alternating, ExpansionStatus};
use crate::kernel::RealValue;
use crate::numeration::DigitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveVariant {
    TotalUnder,
    TotalOver,
    Forward,
    Backward,
    HomPositive,
    HomNegative,
    HomSignedOver,
    HomSignedUnder,
}

impl SolveVariant {
    pub fn is_homogeneous(self) -> bool {
        matches!(
            self,
            SolveVariant::HomPositive
                | SolveVariant::HomNegative
                | SolveVariant::HomSignedOver
                | SolveVariant::HomSignedUnder
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            SolveVariant::TotalUnder => "total-under",
            SolveVariant::TotalOver => "total-over",
            SolveVariant::Forward => "forward",
            SolveVariant::Backward => "backward",
            SolveVariant::HomPositive => "hom-positive",
            SolveVariant::HomNegative => "hom-negative",
            SolveVariant::HomSignedOver => "hom-signed-over",
            SolveVariant::HomSignedUnder => "hom-signed-under",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "total-under" => SolveVariant::TotalUnder,
            "total-over" => SolveVariant::TotalOver,
            "forward" => SolveVariant::Forward,
            "backward" => SolveVariant::Backward,
            "hom-positive" => SolveVariant::HomPositive,
            "hom-negative" => SolveVariant::HomNegative,
            "hom-signed-over" => SolveVariant::HomSignedOver,
            "hom-signed-under" => SolveVariant::HomSignedUnder,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Over,
    Under,
}

/// One approximate `A_n` with its quality data.
#[derive(Debug, Clone)]
pub struct ApproximateTerm {
    pub n: usize,
    pub a: BigInt,
    /// `mod1(A_n alpha)`.
    pub iterate: RealValue,
    /// `||beta - A_n alpha||`.
    pub error: RealValue,
    pub side: Side,
    /// `|A_n| <= q_n`.
    pub bound_ok: bool,
    /// `0 < ||beta - A_n alpha|| < |theta_{n-1}|`; vacuously true on a
    /// terminal exact hit.
    pub error_ok: bool,
}

/// How the tail condition of a general solution was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailVerdict {
    /// The last term has error exactly zero.
    ExactZero { l: usize },
    /// Every computed error sits under the shrinking bound `|theta_{n-1}|`,
    /// which forces convergence to zero as far as computed.
    LimitImplied,
    Failed,
}

#[derive(Debug, Clone)]
pub struct CertificateLine {
    pub n: usize,
    pub bound_ok: bool,
    /// `None` marks the terminal index, where the strict error window gives
    /// way to the exact-hit condition.
    pub error_ok: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub lines: Vec<CertificateLine>,
    pub tail: TailVerdict,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub variant: SolveVariant,
    pub beta: RealValue,
    pub terms: Vec<ApproximateTerm>,
    /// Expansion digits the sequence was read from; absent for the
    /// homogeneous variants.
    pub source_digits: Option<DigitString>,
    pub certificate: Certificate,
    /// Index of a terminal exact hit, when one occurred.
    pub exact_hit: Option<usize>,
}

fn half() -> RealValue {
    RealValue::Rational(BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// Builds one term; the returned flag says whether the error is exactly 0.
fn make_term(
    table: &ConvergentTable,
    beta: &RealValue,
    n: usize,
    a: BigInt,
) -> Result<(ApproximateTerm, bool)> {
    let alpha = table.stream().slope();
    let product = alpha.mul(&RealValue::from(a.clone()));
    let iterate = product.mod1()?;
    let error = beta.sub(&product).int_distance();
    let delta = product.sub(beta).mod1()?;
    let side = if delta.cmp_exact(&half())? == std::cmp::Ordering::Less {
        Side::Over
    } else {
        Side::Under
    };
    let bound_ok = a.abs() <= table.q(n as i64)?;
    let err_zero = error.sign()? == 0;
    let error_ok = if err_zero {
        true
    } else {
        error.cmp_exact(&table.abs_theta(n as i64 - 1)?)? == std::cmp::Ordering::Less
    };
    Ok((ApproximateTerm { n, a, iterate, error, side, bound_ok, error_ok }, err_zero))
}

fn certify(
    terms: &[ApproximateTerm],
    zero_flags: &[bool],
) -> Certificate {
    let mut lines = Vec::with_capacity(terms.len());
    let mut ok = true;
    let mut tail = TailVerdict::LimitImplied;
    for (i, term) in terms.iter().enumerate() {
        let terminal_zero = zero_flags[i] && i + 1 == terms.len();
        if zero_flags[i] && !terminal_zero {
            // A zero error anywhere but the end breaks the strict window.
            ok = false;
            tail = TailVerdict::Failed;
        }
        if terminal_zero {
            tail = TailVerdict::ExactZero { l: term.n };
        }
        let error_ok = if terminal_zero { None } else { Some(term.error_ok) };
        if !term.bound_ok || error_ok == Some(false) {
            ok = false;
        }
        lines.push(CertificateLine { n: term.n, bound_ok: term.bound_ok, error_ok });
    }
    if ok && tail == TailVerdict::LimitImplied && terms.is_empty() {
        tail = TailVerdict::Failed;
        ok = false;
    }
    if tail == TailVerdict::Failed {
        ok = false;
    }
    Certificate { lines, tail, ok }
}

/// Scores an arbitrary sequence of approximates (term `i` is `A_i`).
pub fn check_general_solution(
    cf: &CfStream,
    beta: &RealValue,
    approximates: &[BigInt],
) -> Result<Certificate> {
    let table = ConvergentTable::new(cf);
    let mut terms = Vec::with_capacity(approximates.len());
    let mut zeros = Vec::with_capacity(approximates.len());
    for (n, a) in approximates.iter().enumerate() {
        let (term, z) = make_term(&table, beta, n, a.clone())?;
        terms.push(term);
        zeros.push(z);
    }
    Ok(certify(&terms, &zeros))
}

/// Shared driver: prefix sums of `digit * weight(k-1)` seeded and signed
/// per variant, with terms cut off at an exact hit.
fn sequence_from_expansion(
    cf: &CfStream,
    variant: SolveVariant,
    beta: &RealValue,
    digits: DigitString,
    status: &ExpansionStatus,
    requested: usize,
    seed: BigInt,
    weight_is_q_star: bool,
    negate: bool,
) -> Result<SolveOutput> {
    let table = ConvergentTable::new(cf);
    let last_n = match status {
        ExpansionStatus::TerminatedExact { l } => *l,
        ExpansionStatus::Truncated { n, .. } => *n.min(&requested),
    };
    let mut terms = Vec::with_capacity(last_n + 1);
    let mut zeros = Vec::with_capacity(last_n + 1);
    let mut acc = seed;
    for n in 0..=last_n {
        if n > 0 {
            let d = digits.digits.get(n - 1).cloned().unwrap_or_else(BigInt::zero);
            if !d.is_zero() {
                let w = if weight_is_q_star {
                    table.q_star(n as i64 - 1)?
                } else {
                    table.q(n as i64 - 1)?
                };
                acc += d * w;
            }
        }
        let a = if negate { -acc.clone() } else { acc.clone() };
        let (term, z) = make_term(&table, beta, n, a)?;
        terms.push(term);
        zeros.push(z);
    }
    let exact_hit = match status {
        ExpansionStatus::TerminatedExact { l } => Some(*l),
        ExpansionStatus::Truncated { .. } => None,
    };
    let certificate = certify(&terms, &zeros);
    Ok(SolveOutput {
        variant,
        beta: beta.clone(),
        terms,
        source_digits: Some(digits),
        certificate,
        exact_hit,
    })
}

fn check_unit_interval(beta: &RealValue, allow_zero: bool) -> Result<()> {
    let s = beta.sign()?;
    if s < 0 || (!allow_zero && s == 0) {
        return Err(Error::OutOfDomain(format!(
            "intercept must satisfy {} <= beta < 1",
            if allow_zero { "0" } else { "0 <" }
        )));
    }
    if beta.cmp_exact(&RealValue::one())? != std::cmp::Ordering::Less {
        return Err(Error::OutOfDomain("intercept must lie below 1".into()));
    }
    Ok(())
}

/// Under-approximates `T_n` increasing to `beta`: prefix dot products of
/// the absolute expansion digits with the signed weights.
pub fn solve_total_under(cf: &CfStream, beta: &RealValue, n: usize) -> Result<SolveOutput> {
    check_unit_interval(beta, true)?;
    let exp = expand_absolute(beta, cf, n)?;
    sequence_from_expansion(
        cf,
        SolveVariant::TotalUnder,
        beta,
        exp.digits,
        &exp.status,
        n,
        BigInt::zero(),
        true,
        false,
    )
}

/// Over-approximates decreasing to `beta`: the mirrored total-under run
/// for `1 - beta`.
pub fn solve_total_over(cf: &CfStream, beta: &RealValue, n: usize) -> Result<SolveOutput> {
    if beta.sign()? == 0 {
        return Err(Error::OutOfDomain(
            "the total-over problem is undefined at beta = 0; the homogeneous signed-over \
             sequence plays that role"
                .into(),
        ));
    }
    check_unit_interval(beta, false)?;
    let mirrored = RealValue::one().sub(beta);
    let exp = expand_absolute(&mirrored, cf, n)?;
    sequence_from_expansion(
        cf,
        SolveVariant::TotalOver,
        beta,
        exp.digits,
        &exp.status,
        n,
        BigInt::zero(),
        true,
        true,
    )
}

/// Nonnegative two-sided approximates `S_n = 1 + sum c_k q_{k-1}` from the
/// alternating expansion of `beta - alpha`.
pub fn solve_forward(cf: &CfStream, beta: &RealValue, n: usize) -> Result<SolveOutput> {
    check_unit_interval(beta, true)?;
    let gamma = beta.sub(cf.slope());
    let exp = expand_alternating(&gamma, cf, n)?;
    sequence_from_expansion(
        cf,
        SolveVariant::Forward,
        beta,
        exp.digits,
        &exp.status,
        n,
        BigInt::one(),
        false,
        false,
    )
}

/// Negative approximates `B_n = -1 - sum c_k q_{k-1}` from the alternating
/// expansion of `(1 - beta) - alpha`.
pub fn solve_backward(cf: &CfStream, beta: &RealValue, n: usize) -> Result<SolveOutput> {
    if beta.sign()? == 0 {
        return Err(Error::OutOfDomain(
            "the backward problem is undefined at beta = 0; the homogeneous negative sequence \
             plays that role"
                .into(),
        ));
    }
    check_unit_interval(beta, false)?;
    let gamma = RealValue::one().sub(beta).sub(cf.slope());
    let exp = expand_alternating(&gamma, cf, n)?;
    sequence_from_expansion(
        cf,
        SolveVariant::Backward,
        beta,
        exp.digits,
        &exp.status,
        n,
        BigInt::one(),
        false,
        true,
    )
}

/// The homogeneous sequences: `count` terms taken straight from the
/// convergent denominators, scored against intercept zero.
pub fn homogeneous(cf: &CfStream, variant: SolveVariant, count: usize) -> Result<SolveOutput> {
    if !variant.is_homogeneous() {
        return Err(Error::OutOfDomain(format!(
            "variant {} needs an intercept",
            variant.name()
        )));
    }
    let table = ConvergentTable::new(cf);
    let beta = RealValue::zero();
    let mut terms = Vec::with_capacity(count);
    let mut zeros = Vec::with_capacity(count);
    for k in 0..count {
        let a = match variant {
            SolveVariant::HomPositive => table.q(k as i64)?,
            SolveVariant::HomNegative => -table.q(k as i64)?,
            SolveVariant::HomSignedOver => table.q_star(k as i64)?,
            SolveVariant::HomSignedUnder => -table.q_star(k as i64)?,
            _ => unreachable!(),
        };
        let (term, z) = make_term(&table, &beta, k, a)?;
        terms.push(term);
        zeros.push(z);
    }
    let certificate = certify(&terms, &zeros);
    Ok(SolveOutput {
        variant,
        beta,
        terms,
        source_digits: None,
        certificate,
        exact_hit: None,
    })
}

/// Entry point used by the command line: reduces the intercept mod 1 and
/// dispatches. Homogeneous variants ignore the intercept.
pub fn solve(
    cf: &CfStream,
    variant: SolveVariant,
    intercept: Option<&RealValue>,
    terms: usize,
) -> Result<SolveOutput> {
    if variant.is_homogeneous() {
        return homogeneous(cf, variant, terms);
    }
    let raw = intercept.ok_or_else(|| {
        Error::OutOfDomain(format!("variant {} needs an intercept", variant.name()))
    })?;
    let beta = raw.mod1()?;
    match variant {
        SolveVariant::TotalUnder => solve_total_under(cf, &beta, terms),
        SolveVariant::TotalOver => solve_total_over(cf, &beta, terms),
        SolveVariant::Forward => solve_forward(cf, &beta, terms),
        SolveVariant::Backward => solve_backward(cf, &beta, terms),
        _ => unreachable!(),
    }
}

/// The homogeneous quality measure `|m| * ||m alpha||` against 1.
pub fn is_normal(m: &BigInt, cf: &CfStream) -> Result<(bool, RealValue)> {
    if m.is_zero() {
        return Err(Error::OutOfDomain("normality is defined for m != 0".into()));
    }
    let alpha = cf.slope();
    let product = alpha.mul(&RealValue::from(m.clone())).int_distance();
    let value = product.mul(&RealValue::from(m.abs()));
    let normal = value.cmp_exact(&RealValue::one())? == std::cmp::Ordering::Less;
    Ok((normal, value))
}

/// Side and error of a single approximate, reported relative to index 0.
pub fn classify(m: &BigInt, cf: &CfStream, beta: &RealValue) -> Result<ApproximateTerm> {
    let table = ConvergentTable::new(cf);
    let (term, _) = make_term(&table, beta, 0, m.clone())?;
    Ok(term)
}
