//! Brute-force ground truth.
//!
//! Everything here re-derives results by exhaustive search so the clever
//! paths elsewhere in the crate have something dumb and trustworthy to be
//! checked against: linear sweeps for best approximations, recursive
//! enumeration for admissible strings, and audits that compare the two
//! worlds row by row.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cf::{CfStream, ConvergentTable};
use crate::error::{Error, Result};
use crate::kernel::{RatInterval, RealValue, DEFAULT_MAX_BITS};
use crate::numeration::{
    decode_counting, decode_integer_unchecked, decode_integer_with, encode_counting,
    encode_integer, range_set, DigitString, RightMode,
};
use crate::solver::{is_normal, solve_total_under};
use crate::tables;

/// Largest integer range `brute_best` agrees to sweep.
pub const MAX_BRUTE_RANGE: u64 = 10_000_000;

/// Largest string index `enumerate_admissible` agrees to expand.
pub const MAX_ENUM_INDEX: usize = 12;

/// Side constraint applied during a brute sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteVariant {
    /// Only `m` with `mod1(m alpha) <= beta` compete.
    Under,
    /// Only `m` with `mod1(m alpha) > beta` compete.
    Over,
    /// Every `m` in the range competes.
    TwoSided,
}

/// Linear scan for the best approximant `m` in `[lo, hi]` under the
/// variant's side constraint. The one-sided variants minimize the
/// directed gap, `beta - mod1(m alpha)` for under and its mirror for
/// over, since a one-sided competitor that drifts far below `beta` is a
/// worse under-approximation even when it lands near the next integer.
/// The two-sided variant minimizes `||beta - m alpha||`.
///
/// Ties go to the smaller `|m|`, then to the positive sign. Ties cannot
/// occur at an irrational slope, so the rule only shapes degenerate
/// rational fixtures. An empty constraint set is reported as out of
/// domain rather than as an arbitrary winner.
pub fn brute_best(
    cf: &CfStream,
    beta: &RealValue,
    lo: &BigInt,
    hi: &BigInt,
    variant: BruteVariant,
) -> Result<BigInt> {
    if lo > hi {
        return Err(Error::OutOfDomain(format!(
            "empty search range [{lo}, {hi}]"
        )));
    }
    let span = hi - lo + 1u32;
    if span > BigInt::from(MAX_BRUTE_RANGE) {
        return Err(Error::OutOfDomain(format!(
            "search range of {span} integers exceeds the cap of {MAX_BRUTE_RANGE}"
        )));
    }
    let alpha = cf.slope();
    let b = beta.mod1()?;
    if alpha.is_exact() && b.is_exact() {
        brute_exact(alpha, &b, lo, hi, variant)
    } else {
        brute_scaled(alpha, &b, lo, hi, variant)
    }
}

fn brute_exact(
    alpha: &RealValue,
    b: &RealValue,
    lo: &BigInt,
    hi: &BigInt,
    variant: BruteVariant,
) -> Result<BigInt> {
    let mut best: Option<(BigInt, RealValue)> = None;
    let mut consider = |m: BigInt, frac: &RealValue| -> Result<()> {
        let pass = match variant {
            BruteVariant::TwoSided => true,
            BruteVariant::Under => frac.cmp_exact(b)? != Ordering::Greater,
            BruteVariant::Over => frac.cmp_exact(b)? == Ordering::Greater,
        };
        if !pass {
            return Ok(());
        }
        let err = match variant {
            BruteVariant::Under => b.sub(frac),
            BruteVariant::Over => frac.sub(b),
            BruteVariant::TwoSided => b.sub(frac).int_distance(),
        };
        match &best {
            None => best = Some((m, err)),
            Some((_, cur)) => {
                if err.cmp_exact(cur)? == Ordering::Less {
                    best = Some((m, err));
                }
            }
        }
        Ok(())
    };

    let frac_at = |m: &BigInt| -> Result<RealValue> {
        alpha.mul(&RealValue::from(m.clone())).mod1()
    };

    // Visit candidates in the tie-break order: |m| ascending, positive
    // before negative. When the range sits entirely on one side of zero
    // that order is just the walk away from zero.
    if !lo.is_negative() {
        let mut m = lo.clone();
        while &m <= hi {
            consider(m.clone(), &frac_at(&m)?)?;
            m += 1;
        }
    } else if !hi.is_positive() {
        let mut m = hi.clone();
        while &m >= lo {
            consider(m.clone(), &frac_at(&m)?)?;
            m -= 1;
        }
    } else {
        let kmax = hi.clone().max(-lo.clone());
        let mut k = BigInt::zero();
        while k <= kmax {
            if &k <= hi {
                consider(k.clone(), &frac_at(&k)?)?;
            }
            if !k.is_zero() {
                let mk = -k.clone();
                if &mk >= lo {
                    consider(mk.clone(), &frac_at(&mk)?)?;
                }
            }
            k += 1;
        }
    }

    best.map(|(m, _)| m).ok_or_else(|| {
        Error::OutOfDomain("no integer in the range satisfies the side constraint".into())
    })
}

/// Sweep with every quantity enclosed in scaled-integer intervals at a
/// working precision, restarting at doubled precision whenever a
/// comparison refuses to resolve.
fn brute_scaled(
    alpha: &RealValue,
    b: &RealValue,
    lo: &BigInt,
    hi: &BigInt,
    variant: BruteVariant,
) -> Result<BigInt> {
    let mut bits: u32 = 128;
    loop {
        match brute_scaled_once(alpha, b, lo, hi, variant, bits)? {
            Some(m) => return Ok(m),
            None => {
                if bits >= DEFAULT_MAX_BITS {
                    return Err(Error::PrecisionExhausted(format!(
                        "brute sweep still ambiguous at {bits} bits"
                    )));
                }
                bits = (bits * 2).min(DEFAULT_MAX_BITS);
            }
        }
    }
}

fn scale_interval(iv: &RatInterval, bits: u32) -> (BigInt, BigInt) {
    let sc = BigInt::one() << bits;
    let lo = (iv.lo.numer() * &sc).div_floor(iv.lo.denom());
    let hi = (iv.hi.numer() * &sc).div_ceil(iv.hi.denom());
    (lo, hi)
}

fn brute_scaled_once(
    alpha: &RealValue,
    b: &RealValue,
    lo: &BigInt,
    hi: &BigInt,
    variant: BruteVariant,
    bits: u32,
) -> Result<Option<BigInt>> {
    let scale = BigInt::one() << bits;
    let half = &scale >> 1;
    let (a_lo, a_hi) = scale_interval(&alpha.enclose(bits)?, bits);
    let (b_lo, b_hi) = scale_interval(&b.enclose(bits)?, bits);
    let b_lo = b_lo.max(BigInt::zero());
    let b_hi = b_hi.min(scale.clone());

    let tent = |x: &BigInt| (&scale - x).min(x.clone());

    let mut best: Option<(BigInt, BigInt, BigInt)> = None;
    let mut m = lo.clone();
    while &m <= hi {
        let (t_lo, t_hi) = if m.is_negative() {
            (&m * &a_hi, &m * &a_lo)
        } else {
            (&m * &a_lo, &m * &a_hi)
        };
        let q = t_lo.div_floor(&scale);
        if t_hi.div_floor(&scale) != q {
            return Ok(None);
        }
        let f_lo = &t_lo - &q * &scale;
        let f_hi = &t_hi - &q * &scale;

        let pass = match variant {
            BruteVariant::TwoSided => true,
            BruteVariant::Under => {
                if f_hi <= b_lo {
                    true
                } else if f_lo > b_hi {
                    false
                } else {
                    return Ok(None);
                }
            }
            BruteVariant::Over => {
                if f_lo > b_hi {
                    true
                } else if f_hi <= b_lo {
                    false
                } else {
                    return Ok(None);
                }
            }
        };

        if pass {
            let (e_lo, e_hi) = match variant {
                BruteVariant::Under => {
                    ((&b_lo - &f_hi).max(BigInt::zero()), &b_hi - &f_lo)
                }
                BruteVariant::Over => {
                    ((&f_lo - &b_hi).max(BigInt::zero()), &f_hi - &b_lo)
                }
                BruteVariant::TwoSided => {
                    let d_lo = &b_lo - &f_hi;
                    let d_hi = &b_hi - &f_lo;
                    let (u_lo, u_hi) = if !d_lo.is_negative() {
                        (d_lo, d_hi)
                    } else if !d_hi.is_positive() {
                        (-d_hi, -d_lo)
                    } else {
                        (BigInt::zero(), (-d_lo).max(d_hi))
                    };
                    let e_lo = tent(&u_lo).min(tent(&u_hi));
                    let e_hi = if u_lo <= half && half <= u_hi {
                        half.clone()
                    } else {
                        tent(&u_lo).max(tent(&u_hi))
                    };
                    (e_lo, e_hi)
                }
            };
            match &best {
                None => best = Some((m.clone(), e_lo, e_hi)),
                Some((_, cur_lo, cur_hi)) => {
                    if &e_hi < cur_lo {
                        best = Some((m.clone(), e_lo, e_hi));
                    } else if &e_lo >= cur_hi {
                        // certainly no better than the incumbent
                    } else {
                        return Ok(None);
                    }
                }
            }
        }
        m += 1;
    }

    match best {
        Some((m, _, _)) => Ok(Some(m)),
        None => Err(Error::OutOfDomain(
            "no integer in the range satisfies the side constraint".into(),
        )),
    }
}

/// Which family `enumerate_admissible` lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumKind {
    Left,
    Right(RightMode),
}

/// All admissible strings of index at most `max_index`, each exactly once,
/// ordered lexicographically by their zero-padded digit tuples read from
/// the most significant position down. For counting strings that order is
/// value order.
pub fn enumerate_admissible(
    cf: &CfStream,
    kind: EnumKind,
    max_index: usize,
) -> Result<Vec<DigitString>> {
    if max_index > MAX_ENUM_INDEX {
        return Err(Error::OutOfDomain(format!(
            "enumeration caps at index {MAX_ENUM_INDEX}; {max_index} requested"
        )));
    }
    let table = ConvergentTable::new(cf);
    let mut caps = Vec::with_capacity(max_index);
    for k in 1..=max_index {
        caps.push(table.digit(k)?);
    }
    let mut out = Vec::new();
    let mut current = vec![BigInt::zero(); max_index];
    match kind {
        EnumKind::Left => descend_left(&caps, max_index, false, &mut current, &mut out),
        EnumKind::Right(mode) => descend_right(
            &caps,
            mode,
            max_index,
            &BigInt::zero(),
            false,
            &mut current,
            &mut out,
        ),
    }
    Ok(out)
}

fn trim_trailing_zeros(digits: &[BigInt]) -> Vec<BigInt> {
    let mut v = digits.to_vec();
    while v.last().map_or(false, |d| d.is_zero()) {
        v.pop();
    }
    v
}

fn descend_left(
    caps: &[BigInt],
    k: usize,
    force_zero: bool,
    current: &mut [BigInt],
    out: &mut Vec<DigitString>,
) {
    if k == 0 {
        out.push(DigitString::left(trim_trailing_zeros(current)));
        return;
    }
    let a = &caps[k - 1];
    let cap = if force_zero {
        BigInt::zero()
    } else if k == 1 {
        a - 1u32
    } else {
        a.clone()
    };
    let mut v = BigInt::zero();
    while v <= cap {
        current[k - 1] = v.clone();
        descend_left(caps, k - 1, &v == a, current, out);
        v += 1;
    }
    current[k - 1] = BigInt::zero();
}

fn descend_right(
    caps: &[BigInt],
    mode: RightMode,
    k: usize,
    prev: &BigInt,
    above: bool,
    current: &mut [BigInt],
    out: &mut Vec<DigitString>,
) {
    if k == 0 {
        out.push(DigitString::right(trim_trailing_zeros(current)));
        return;
    }
    let a = &caps[k - 1];
    // The adjacency rule forbids a maximal digit under a nonzero one. In
    // the as-printed reading the pair just below the top digit is exempt.
    let enforced = !prev.is_zero() && (mode == RightMode::Corrected || above);
    let cap = if enforced { a - 1u32 } else { a.clone() };
    let mut v = BigInt::zero();
    while v <= cap {
        current[k - 1] = v.clone();
        descend_right(caps, mode, k - 1, &v, above || !prev.is_zero(), current, out);
        v += 1;
    }
    current[k - 1] = BigInt::zero();
}

/// A claim `audit` knows how to check exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditClaim {
    /// Strings of index at most `max_index` decode one-to-one onto
    /// `[0, q_n)` on the left and onto `I_n` on the right.
    Bijection { max_index: usize, mode: RightMode },
    /// Every normal multiplier up to `max_m` is a convergent denominator.
    NormalityConverse { max_m: u64 },
    /// The embedded silver tables agree with the encoders row by row.
    TableConformance,
    /// The total-under solver beats every competitor in `I_n`, checked on
    /// seeded random rational intercepts.
    Minimality {
        max_index: usize,
        samples: usize,
        seed: u64,
    },
}

impl AuditClaim {
    pub fn id(&self) -> &'static str {
        match self {
            AuditClaim::Bijection { .. } => "bijection",
            AuditClaim::NormalityConverse { .. } => "normality-converse",
            AuditClaim::TableConformance => "table-conformance",
            AuditClaim::Minimality { .. } => "minimality",
        }
    }

    fn parameters(&self) -> String {
        match self {
            AuditClaim::Bijection { max_index, mode } => {
                format!("max_index={max_index}, mode={}", mode_name(*mode))
            }
            AuditClaim::NormalityConverse { max_m } => format!("max_m={max_m}"),
            AuditClaim::TableConformance => "embedded silver tables".into(),
            AuditClaim::Minimality {
                max_index,
                samples,
                seed,
            } => format!("max_index={max_index}, samples={samples}, seed={seed}"),
        }
    }
}

fn mode_name(mode: RightMode) -> &'static str {
    match mode {
        RightMode::Corrected => "corrected",
        RightMode::AsPrinted => "as-printed",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    CounterexampleFound,
}

/// One reproducible discrepancy: the input it happened on, what the claim
/// predicts there, and what actually came out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub claim: String,
    pub parameters: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl AuditReport {
    pub fn confirmed(&self) -> bool {
        self.verdict == Verdict::Confirmed
    }
}

/// Run one exhaustive check. Claim failures land in the report as
/// witnesses; errors are reserved for inputs the check cannot process.
pub fn audit(cf: &CfStream, claim: &AuditClaim) -> Result<AuditReport> {
    let witnesses = match claim {
        AuditClaim::Bijection { max_index, mode } => audit_bijection(cf, *max_index, *mode)?,
        AuditClaim::NormalityConverse { max_m } => audit_normality_converse(cf, *max_m)?,
        AuditClaim::TableConformance => audit_table_conformance(cf)?,
        AuditClaim::Minimality {
            max_index,
            samples,
            seed,
        } => audit_minimality(cf, *max_index, *samples, *seed)?,
    };
    let verdict = if witnesses.is_empty() {
        Verdict::Confirmed
    } else {
        Verdict::CounterexampleFound
    };
    Ok(AuditReport {
        claim: claim.id().into(),
        parameters: claim.parameters(),
        verdict,
        witnesses,
    })
}

fn render_string(ds: &DigitString) -> String {
    if ds.digits.is_empty() {
        "∅".into()
    } else {
        let parts: Vec<String> = ds.digits.iter().map(|d| d.to_string()).collect();
        format!("⟨{}⟩", parts.join(","))
    }
}

/// Checks both decodings for injectivity and exact coverage, index by
/// index, stopping at the first index that fails so the witnesses point
/// at the smallest counterexamples.
fn audit_bijection(cf: &CfStream, max_index: usize, mode: RightMode) -> Result<Vec<Witness>> {
    let table = ConvergentTable::new(cf);
    let mut witnesses = Vec::new();
    for n in 0..=max_index {
        let left = enumerate_admissible(cf, EnumKind::Left, n)?;
        let qn = table.q(n as i64)?;
        let mut seen: BTreeMap<BigInt, DigitString> = BTreeMap::new();
        for ds in &left {
            let s = decode_counting(ds, cf)?;
            if let Some(first) = seen.get(&s) {
                witnesses.push(Witness {
                    input: render_string(ds),
                    expected: "a counting value not already represented".into(),
                    actual: format!("{s}, already the value of {}", render_string(first)),
                });
            } else {
                seen.insert(s, ds.clone());
            }
        }
        let census_ok = BigInt::from(left.len()) == qn
            && seen.first_key_value().map(|(k, _)| k.clone()) == Some(BigInt::zero())
            && seen.last_key_value().map(|(k, _)| k.clone()) == Some(&qn - 1u32);
        if !census_ok {
            witnesses.push(Witness {
                input: format!("left-admissible census at index {n}"),
                expected: format!("{qn} strings onto [0, {qn})"),
                actual: format!(
                    "{} strings onto {} distinct values",
                    left.len(),
                    seen.len()
                ),
            });
        }

        let right = enumerate_admissible(cf, EnumKind::Right(mode), n)?;
        let rs = range_set(n, cf)?;
        let mut seen_t: BTreeMap<BigInt, DigitString> = BTreeMap::new();
        for ds in &right {
            let t = decode_integer_with(ds, cf, mode)?;
            if let Some(first) = seen_t.get(&t) {
                witnesses.push(Witness {
                    input: render_string(ds),
                    expected: "an integer not already represented".into(),
                    actual: format!("{t}, already the value of {}", render_string(first)),
                });
            } else {
                seen_t.insert(t, ds.clone());
            }
        }
        let census_ok = BigInt::from(right.len()) == rs.len()
            && seen_t.first_key_value().map(|(k, _)| k.clone()) == Some(rs.lo.clone())
            && seen_t.last_key_value().map(|(k, _)| k.clone()) == Some(rs.hi.clone());
        if !census_ok {
            witnesses.push(Witness {
                input: format!("right-admissible census at index {n}"),
                expected: format!("{} strings onto [{}, {}]", rs.len(), rs.lo, rs.hi),
                actual: format!(
                    "{} strings onto {} distinct values",
                    right.len(),
                    seen_t.len()
                ),
            });
        }

        if !witnesses.is_empty() {
            break;
        }
    }
    Ok(witnesses)
}

fn audit_normality_converse(cf: &CfStream, max_m: u64) -> Result<Vec<Witness>> {
    let table = ConvergentTable::new(cf);
    let cap = BigInt::from(max_m);
    let mut denoms: BTreeSet<BigInt> = BTreeSet::new();
    let mut k: i64 = 0;
    loop {
        let q = match table.q(k) {
            Ok(q) => q,
            Err(Error::InsufficientDigits { .. }) => break,
            Err(e) => return Err(e),
        };
        if q > cap {
            break;
        }
        denoms.insert(q);
        k += 1;
    }

    let mut witnesses = Vec::new();
    for m in 1..=max_m {
        let mb = BigInt::from(m);
        let (normal, product) = is_normal(&mb, cf)?;
        if normal && !denoms.contains(&mb) {
            witnesses.push(Witness {
                input: format!("m = {m}"),
                expected: "normal multipliers at this slope are convergent denominators".into(),
                actual: format!(
                    "m*||m alpha|| = {} < 1, yet m is no q_k",
                    product.decimal_string(6)?
                ),
            });
        }
    }
    Ok(witnesses)
}

fn audit_table_conformance(cf: &CfStream) -> Result<Vec<Witness>> {
    let prefix = cf.digits_prefix(8)?;
    if prefix.len() != 8 || prefix.iter().any(|d| *d != BigInt::from(2)) {
        return Err(Error::OutOfDomain(
            "the embedded tables are printed for the silver slope".into(),
        ));
    }

    let mut witnesses = Vec::new();
    for row in tables::SILVER_COUNTING {
        let got = encode_counting(&BigInt::from(row.s), cf)?;
        let printed = tables::to_little_endian(row.digits_msb);
        if got.digits != printed {
            witnesses.push(Witness {
                input: format!("counting row S = {}", row.s),
                expected: render_string(&got),
                actual: format!("{} as printed", render_string(&DigitString::left(printed))),
            });
        }
    }
    for row in tables::SILVER_INTEGERS_POS
        .iter()
        .chain(tables::SILVER_INTEGERS_NEG)
    {
        let got = encode_integer(&BigInt::from(row.t), cf)?;
        let printed = DigitString::right(tables::to_little_endian(row.digits_msb));
        if got.digits != printed.digits {
            let decodes_to = decode_integer_unchecked(&printed, cf)?;
            witnesses.push(Witness {
                input: format!("integer row T = {}", row.t),
                expected: render_string(&got),
                actual: format!(
                    "{} as printed, which decodes to {decodes_to}",
                    render_string(&printed)
                ),
            });
        }
    }
    for row in tables::SILVER_RANGES {
        let rs = range_set(row.n, cf)?;
        if rs.lo != BigInt::from(row.lo) || rs.hi != BigInt::from(row.hi) {
            witnesses.push(Witness {
                input: format!("range row n = {}", row.n),
                expected: format!("[{}, {}]", rs.lo, rs.hi),
                actual: format!("[{}, {}] as printed", row.lo, row.hi),
            });
        }
    }
    Ok(witnesses)
}

/// Draws exact rational intercepts and pits every solver term against a
/// linear sweep of its range set.
fn audit_minimality(cf: &CfStream, max_index: usize, samples: usize, seed: u64) -> Result<Vec<Witness>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom: i64 = 1_000_003;
    let mut witnesses = Vec::new();
    for _ in 0..samples {
        let num = rng.gen_range(1..denom);
        let beta = RealValue::Rational(BigRational::new(BigInt::from(num), BigInt::from(denom)));
        let out = solve_total_under(cf, &beta, max_index)?;
        for term in &out.terms {
            let rs = range_set(term.n, cf)?;
            let m = brute_best(cf, &beta, &rs.lo, &rs.hi, BruteVariant::Under)?;
            if m != term.a {
                witnesses.push(Witness {
                    input: format!("beta = {num}/{denom}, index {}", term.n),
                    expected: format!("T_{} = {}", term.n, term.a),
                    actual: format!("exhaustive best over [{}, {}] is {m}", rs.lo, rs.hi),
                });
            }
        }
    }
    Ok(witnesses)
}
