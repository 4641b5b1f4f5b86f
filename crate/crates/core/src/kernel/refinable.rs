//! Lazily refined real values described by expression recipes.
//!
//! A [`RefinableReal`] produces rational enclosures on demand. Enclosures are
//! best-effort: `enclose(bits)` returns the tightest interval it can compute
//! for that request, which may be wider than `2^-bits` when the underlying
//! data carries only finite information (a decimal literal, say). Decisions
//! such as sign or floor are made by [`RefinableReal::decide`], which refines
//! until the question settles or the bit budget runs out.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{rat_cmp, rat_le, RatInterval};
use super::quadratic::QuadraticReal;
use crate::error::{Error, Result};

/// Default decision budget in bits.
pub const DEFAULT_MAX_BITS: u32 = 65536;

/// A rule producing continued fraction digits by index (1-based).
/// Digits must be at least 1.
pub trait DigitRule: Send + Sync {
    fn digit(&self, k: u64) -> BigInt;
}

impl<F> DigitRule for F
where
    F: Fn(u64) -> BigInt + Send + Sync,
{
    fn digit(&self, k: u64) -> BigInt {
        self(k)
    }
}

#[derive(Clone)]
pub struct RefinableReal {
    node: Arc<Node>,
    budget: u32,
}

struct Node {
    recipe: Recipe,
    memo: Mutex<Option<(u32, RatInterval)>>,
}

enum Recipe {
    /// A value known only up to a fixed radius.
    Literal { value: BigRational, radius: BigRational },
    Exact(BigRational),
    Surd(QuadraticReal),
    Add(RefinableReal, RefinableReal),
    Sub(RefinableReal, RefinableReal),
    Mul(RefinableReal, RefinableReal),
    Div(RefinableReal, RefinableReal),
    Neg(RefinableReal),
    Abs(RefinableReal),
    IntDist(RefinableReal),
    /// An irrational pinned between consecutive convergents of a digit rule.
    CfBracket(Arc<dyn DigitRule>),
}

impl fmt::Debug for RefinableReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.node.recipe {
            Recipe::Literal { .. } => "literal",
            Recipe::Exact(_) => "exact",
            Recipe::Surd(_) => "surd",
            Recipe::Add(..) => "add",
            Recipe::Sub(..) => "sub",
            Recipe::Mul(..) => "mul",
            Recipe::Div(..) => "div",
            Recipe::Neg(..) => "neg",
            Recipe::Abs(..) => "abs",
            Recipe::IntDist(..) => "int-dist",
            Recipe::CfBracket(..) => "cf-bracket",
        };
        write!(f, "RefinableReal({kind})")
    }
}

fn node(recipe: Recipe, budget: u32) -> RefinableReal {
    RefinableReal {
        node: Arc::new(Node { recipe, memo: Mutex::new(None) }),
        budget,
    }
}

fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Bits of the largest magnitude in the interval, used to size precision
/// requests for products and quotients.
fn mag_bits(iv: &RatInterval) -> u32 {
    let (la, ha) = (iv.lo.abs(), iv.hi.abs());
    let m = if rat_cmp(&la, &ha) == Ordering::Greater { la } else { ha };
    let c = m.ceil().to_integer();
    c.bits() as u32
}

impl RefinableReal {
    pub fn literal(value: BigRational, radius: BigRational, budget: u32) -> Self {
        debug_assert!(!radius.is_negative());
        node(Recipe::Literal { value, radius }, budget)
    }

    /// Exact leaves carry a zero budget so that mixing one into an expression
    /// never raises the limit the inexact leaves were given.
    pub fn exact(value: BigRational) -> Self {
        node(Recipe::Exact(value), 0)
    }

    pub fn surd(value: QuadraticReal) -> Self {
        node(Recipe::Surd(value), 0)
    }

    pub fn cf_bracket(rule: Arc<dyn DigitRule>, budget: u32) -> Self {
        node(Recipe::CfBracket(rule), budget)
    }

    pub fn add(x: &Self, y: &Self) -> Self {
        let b = x.budget.max(y.budget);
        node(Recipe::Add(x.clone(), y.clone()), b)
    }

    pub fn sub(x: &Self, y: &Self) -> Self {
        let b = x.budget.max(y.budget);
        node(Recipe::Sub(x.clone(), y.clone()), b)
    }

    pub fn mul(x: &Self, y: &Self) -> Self {
        let b = x.budget.max(y.budget);
        node(Recipe::Mul(x.clone(), y.clone()), b)
    }

    pub fn div(x: &Self, y: &Self) -> Self {
        let b = x.budget.max(y.budget);
        node(Recipe::Div(x.clone(), y.clone()), b)
    }

    pub fn neg(x: &Self) -> Self {
        node(Recipe::Neg(x.clone()), x.budget)
    }

    pub fn abs(x: &Self) -> Self {
        node(Recipe::Abs(x.clone()), x.budget)
    }

    pub fn int_dist(x: &Self) -> Self {
        node(Recipe::IntDist(x.clone()), x.budget)
    }

    /// Decision budget in bits. Zero means every leaf is exact; decisions
    /// then fall back to the default rather than failing instantly.
    pub fn budget(&self) -> u32 {
        if self.budget == 0 { DEFAULT_MAX_BITS } else { self.budget }
    }

    /// Same value, different decision budget. The underlying enclosure cache
    /// is shared.
    pub fn with_budget(&self, budget: u32) -> Self {
        RefinableReal { node: self.node.clone(), budget: budget.max(1) }
    }

    /// Best-effort enclosure aiming for width `2^-bits`. Successive calls
    /// always nest: results are intersected with the cached enclosure.
    pub fn enclose(&self, bits: u32) -> Result<RatInterval> {
        {
            let memo = self.node.memo.lock().unwrap();
            if let Some((have, iv)) = memo.as_ref() {
                if *have >= bits {
                    return Ok(iv.clone());
                }
            }
        }
        let fresh = self.eval(bits)?;
        let mut memo = self.node.memo.lock().unwrap();
        let merged = match memo.as_ref() {
            Some((_, old)) => fresh
                .intersect(old)
                .expect("nested enclosures of one value cannot be disjoint"),
            None => fresh,
        };
        *memo = Some((bits, merged.clone()));
        Ok(merged)
    }

    fn eval(&self, bits: u32) -> Result<RatInterval> {
        let target = pow2_neg(bits);
        let grid = bits.saturating_add(2);
        match &self.node.recipe {
            Recipe::Literal { value, radius } => {
                Ok(RatInterval::new(value - radius, value + radius).round_out(grid))
            }
            Recipe::Exact(v) => Ok(RatInterval::point(v.clone())),
            Recipe::Surd(q) => Ok(q.to_interval(bits)),
            Recipe::Add(x, y) => {
                Ok(x.enclose(bits + 2)?.add(&y.enclose(bits + 2)?).round_out(grid))
            }
            Recipe::Sub(x, y) => {
                Ok(x.enclose(bits + 2)?.sub(&y.enclose(bits + 2)?).round_out(grid))
            }
            Recipe::Neg(x) => Ok(x.enclose(bits)?.neg()),
            Recipe::Abs(x) => Ok(x.enclose(bits)?.abs()),
            Recipe::IntDist(x) => Ok(x.enclose(bits + 2)?.int_dist_image()),
            Recipe::Mul(x, y) => {
                let p1 = bits.saturating_add(4);
                let xi = x.enclose(p1)?;
                let yi = y.enclose(p1)?;
                let out1 = xi.mul(&yi);
                if out1.width() <= target {
                    return Ok(out1.round_out(grid));
                }
                // One magnitude-aware correction round.
                let p2 = bits
                    .saturating_add(mag_bits(&xi).max(mag_bits(&yi)))
                    .saturating_add(4);
                let out2 = x.enclose(p2)?.mul(&y.enclose(p2)?);
                Ok(pick_tighter(out1, out2).round_out(grid))
            }
            Recipe::Div(x, y) => {
                let cap = self.budget.max(bits);
                let mut p = bits.saturating_add(4);
                let mut yi = y.enclose(p)?;
                while yi.contains_zero() {
                    if p >= cap {
                        return Err(Error::PrecisionExhausted(
                            "divisor enclosure cannot be separated from zero".into(),
                        ));
                    }
                    p = p.saturating_mul(2).min(cap);
                    yi = y.enclose(p)?;
                }
                let xi = x.enclose(p)?;
                let out1 = xi.div(&yi).expect("zero excluded above");
                if out1.width() <= target {
                    return Ok(out1.round_out(grid));
                }
                let (yla, yha) = (yi.lo.abs(), yi.hi.abs());
                let ymin = if rat_cmp(&yla, &yha) == Ordering::Less { yla } else { yha };
                let em = if rat_le(&BigRational::one(), &ymin) {
                    0
                } else {
                    ymin.recip().ceil().to_integer().bits() as u32
                };
                let p2 = bits
                    .saturating_add(mag_bits(&xi))
                    .saturating_add(em.saturating_mul(2))
                    .saturating_add(6);
                let yi2 = y.enclose(p2)?;
                let xi2 = x.enclose(p2)?;
                let out2 = xi2.div(&yi2).expect("refined divisor still excludes zero");
                Ok(pick_tighter(out1, out2).round_out(grid))
            }
            Recipe::CfBracket(rule) => {
                let goal: BigInt = BigInt::one() << bits;
                let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
                let (mut p, mut q) = (BigInt::zero(), BigInt::one());
                let mut k: u64 = 0;
                loop {
                    k += 1;
                    let a = rule.digit(k);
                    if a < BigInt::one() {
                        return Err(Error::OutOfDomain(format!(
                            "digit rule produced {a} at index {k}; digits must be at least 1"
                        )));
                    }
                    let pn = &a * &p + &p_prev;
                    let qn = &a * &q + &q_prev;
                    p_prev = std::mem::replace(&mut p, pn);
                    q_prev = std::mem::replace(&mut q, qn);
                    if &q_prev * &q >= goal {
                        let r1 = BigRational::new(p_prev.clone(), q_prev.clone());
                        let r2 = BigRational::new(p.clone(), q.clone());
                        return Ok(if rat_le(&r1, &r2) {
                            RatInterval::new(r1, r2)
                        } else {
                            RatInterval::new(r2, r1)
                        });
                    }
                }
            }
        }
    }

    /// Refines until `test` settles the question. Starts at 64 bits and
    /// doubles, stopping with `PrecisionExhausted` when the budget is hit.
    pub fn decide<T>(
        &self,
        what: &str,
        mut test: impl FnMut(&RatInterval) -> Option<T>,
    ) -> Result<T> {
        let budget = self.budget();
        let mut bits = 64u32.min(budget);
        loop {
            let iv = self.enclose(bits)?;
            if let Some(t) = test(&iv) {
                return Ok(t);
            }
            if bits >= budget {
                return Err(Error::PrecisionExhausted(format!(
                    "{what} undecided within the {budget}-bit budget"
                )));
            }
            bits = bits.saturating_mul(2).min(budget);
        }
    }
}

fn pick_tighter(a: RatInterval, b: RatInterval) -> RatInterval {
    match a.intersect(&b) {
        Some(iv) => iv,
        None => {
            if rat_le(&a.width(), &b.width()) {
                a
            } else {
                b
            }
        }
    }
}
