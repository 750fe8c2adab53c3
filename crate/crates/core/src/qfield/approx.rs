use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QElem, Rat};
use crate::error::{Error, Result};

/// Starting precision for consumers that escalate.
pub const DEFAULT_BITS: u64 = 64;
/// Escalation ceiling; past this a [`Error::PrecisionExhausted`] is raised.
pub const MAX_BITS: u64 = 1 << 16;

/// Closed interval `[lo, hi]` with dyadic (or exactly rational) endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn point(x: Rat) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Encloses the real value of `x` (with `√D > 0`) in a dyadic interval of
/// width at most `2^-bits · max(1, |x|)`.
pub fn q_approx(x: &QElem, bits: u64) -> Result<Interval> {
    if bits < 8 {
        return Err(Error::Invalid(format!("precision {bits} is below 8 bits")));
    }
    let Some(d) = x.discriminant() else {
        return Ok(Interval::point(x.rational_part().clone()));
    };
    if d.is_negative() {
        return Err(Error::NegativeDiscriminant(d.clone()));
    }
    let a = x.rational_part();
    let b = x.radical_part();
    let b_bits = b.abs().ceil().to_integer().bits();
    let k = bits + 3 + b_bits;
    let scale = pow2(k);
    // floor(D · 4^k), then an integer square root brackets √D·2^k
    let n = (d.numer() * pow2(2 * k)).div_floor(d.denom());
    let r = n.sqrt();
    let s_lo = Rat::new(r.clone(), scale.clone());
    let s_hi = Rat::new(r + 1, scale.clone());
    let (v_lo, v_hi) = if b.is_negative() {
        (a + b * &s_hi, a + b * &s_lo)
    } else {
        (a + b * &s_lo, a + b * &s_hi)
    };
    let scale_r = Rat::from_integer(scale.clone());
    let lo = Rat::new((v_lo * &scale_r).floor().to_integer(), scale.clone());
    let hi = Rat::new((v_hi * &scale_r).ceil().to_integer(), scale);
    Ok(Interval { lo, hi })
}

/// Rational bounds `lo ≤ |x| ≤ hi`, with `lo > 0` whenever `x ≠ 0`.
///
/// Precision doubles from [`DEFAULT_BITS`] until the enclosure separates
/// `x` from zero.
pub fn abs_bounds(x: &QElem) -> Result<(Rat, Rat)> {
    if x.is_zero() {
        return Ok((Rat::zero(), Rat::zero()));
    }
    let mut bits = DEFAULT_BITS;
    loop {
        let iv = q_approx(x, bits)?;
        if iv.excludes_zero() {
            let (lo, hi) = if iv.lo.is_positive() {
                (iv.lo, iv.hi)
            } else {
                (-iv.hi, -iv.lo)
            };
            return Ok((lo, hi));
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Err(Error::PrecisionExhausted(MAX_BITS));
        }
    }
}
