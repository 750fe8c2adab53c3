//! Spread sets and the stripping procedure that makes a pair of
//! homogeneous polynomials shift-coprime.
//!
//! In eigen coordinates `σᵐ` scales the projective root `r = h₁/h₂` of a
//! polynomial by `(λ₂/λ₁)ᵐ`. A shared factor of `p` and `σᵐq` therefore
//! needs `|ρ|ᵐ = |s|/|r|` for roots `r` of `p`, `s` of `q`, which bounds
//! the candidates by the ratio of root-modulus bounds. Every candidate is
//! then decided by an exact gcd.

use std::collections::BTreeSet;
use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::bipoly::{poly_gcd, BiPoly};
use crate::difffield::DiffField;
use crate::error::{Error, Result};
use crate::qfield::{abs_bounds, q_approx, QElem, Rat, DEFAULT_BITS, MAX_BITS};

pub const DEFAULT_MAX_SHIFT: u32 = 64;

/// `{m ≥ 0 : deg gcd(p, σᵐq) > 0}` for coprime homogeneous `p`, `q`.
///
/// Shifts up to `max_shift` are always checked, whatever the root bounds
/// allow.
pub fn spread_set(p: &BiPoly, q: &BiPoly, fld: &DiffField, max_shift: u32) -> Result<BTreeSet<u32>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_homogeneous() || !q.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let mut out = BTreeSet::new();
    if p.is_constant() || q.is_constant() {
        return Ok(out);
    }
    if !poly_gcd(p, q)?.is_constant() {
        return Err(Error::InfiniteSpread);
    }
    let top = shift_window(p, q, fld)?.map_or(max_shift, |m| m.max(max_shift));
    let mut shifted = q.monic();
    for m in 0..=top {
        if !poly_gcd(p, &shifted)?.is_constant() {
            out.insert(m);
        }
        shifted = fld.apply_sigma(&shifted, 1).monic();
    }
    Ok(out)
}

/// Rational `(L, U)` with `L ≤ |r| ≤ U` for every nonzero root `r` of
/// `Σ c_k r^k`; `None` when there is no such root.
fn root_modulus_bounds(c: &[QElem]) -> Result<Option<(Rat, Rat)>> {
    let lo = c.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroPolynomial)?;
    let hi = c.iter().rposition(|x| !x.is_zero()).unwrap();
    if lo == hi {
        return Ok(None);
    }
    let max_ratio = |range: std::ops::RangeInclusive<usize>, pivot: &QElem| -> Result<Rat> {
        let mut best = Rat::zero();
        for k in range {
            let (_, h) = abs_bounds(&c[k].checked_div(pivot)?)?;
            best = best.max(h);
        }
        Ok(best)
    };
    let upper = Rat::one() + max_ratio(lo..=hi - 1, &c[hi])?;
    let lower = (Rat::one() + max_ratio(lo + 1..=hi, &c[lo])?).recip();
    Ok(Some((lower, upper)))
}

/// Rational `g` with `1 < g ≤ |x|`, given `|x| > 1`.
fn lower_bound_above_one(x: &QElem) -> Result<Rat> {
    let x = x.abs()?;
    let mut bits = DEFAULT_BITS;
    loop {
        let iv = q_approx(&x, bits)?;
        if iv.lo > Rat::one() {
            return Ok(iv.lo);
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Err(Error::PrecisionExhausted(MAX_BITS));
        }
    }
}

/// Largest shift any root pair of `p`, `q` could be related by.
fn shift_window(p: &BiPoly, q: &BiPoly, fld: &DiffField) -> Result<Option<u32>> {
    let Some((lp, up)) = root_modulus_bounds(&fld.to_eigen(p)?)? else {
        return Ok(None);
    };
    let Some((lq, uq)) = root_modulus_bounds(&fld.to_eigen(q)?)? else {
        return Ok(None);
    };
    let rho = fld.lambda1().checked_div(fld.lambda2())?;
    let (g, bound) = match rho.cmp_abs(&QElem::one())? {
        Ordering::Greater => (rho, uq / lp),
        Ordering::Less => (rho.inv()?, up / lq),
        Ordering::Equal => return Err(Error::RootOfUnityRatio),
    };
    let g = lower_bound_above_one(&g)?;
    let mut m = 0u32;
    let mut x = g.clone();
    while x <= bound {
        m += 1;
        x *= &g;
    }
    Ok(Some(m))
}

/// Which side a stripping step removed its factor from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripSide {
    /// `s = gcd(a, σᵏ b)`: `a /= s`, `b /= σ⁻ᵏ s`.
    Leading,
    /// `r = gcd(b, σˡ a)`: `b /= r`, `a /= σ⁻ˡ r`.
    Trailing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripStep {
    pub side: StripSide,
    pub shift: u32,
    pub factor: BiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripResult {
    pub a_final: BiPoly,
    pub b_final: BiPoly,
    pub t: BiPoly,
    pub h: BiPoly,
    /// `−b_final/a_final` when both are constants.
    pub ratio: Option<QElem>,
    pub steps: Vec<StripStep>,
}

/// `∏_{j=1..k} σ⁻ʲ s`.
fn shifted_product(s: &BiPoly, k: u32, fld: &DiffField) -> BiPoly {
    let mut out = BiPoly::one();
    let mut cur = s.clone();
    for _ in 0..k {
        cur = fld.apply_sigma(&cur, -1);
        out = &out * &cur;
    }
    out
}

/// Removes shift-related factors between `p` and `q` so that
/// `p·σw + q·w = 0` turns into `σ(w·t/h) = −(b_final/a_final)·(w·t/h)`.
pub fn strip(p: &BiPoly, q: &BiPoly, fld: &DiffField) -> Result<StripResult> {
    strip_with(p, q, fld, DEFAULT_MAX_SHIFT)
}

pub fn strip_with(p: &BiPoly, q: &BiPoly, fld: &DiffField, max_shift: u32) -> Result<StripResult> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_homogeneous() || !q.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let g = poly_gcd(p, q)?;
    let mut a = p.divide_exact(&g)?;
    let mut b = q.divide_exact(&g)?;
    let mut t = BiPoly::one();
    let mut h = BiPoly::one();
    let mut steps = Vec::new();

    for k in spread_set(&a, &b, fld, max_shift)? {
        let s = poly_gcd(&a, &fld.apply_sigma(&b, i64::from(k)))?;
        if s.is_constant() {
            continue;
        }
        a = a.divide_exact(&s)?;
        b = b.divide_exact(&fld.apply_sigma(&s, -i64::from(k)))?;
        t = &t * &shifted_product(&s, k, fld);
        steps.push(StripStep { side: StripSide::Leading, shift: k, factor: s });
    }
    for l in spread_set(&b, &a, fld, max_shift)? {
        let r = poly_gcd(&b, &fld.apply_sigma(&a, i64::from(l)))?;
        if r.is_constant() {
            continue;
        }
        b = b.divide_exact(&r)?;
        a = a.divide_exact(&fld.apply_sigma(&r, -i64::from(l)))?;
        h = &h * &shifted_product(&r, l, fld);
        steps.push(StripStep { side: StripSide::Trailing, shift: l, factor: r });
    }

    let ratio = match (a.as_constant(), b.as_constant()) {
        (Some(x), Some(y)) => Some(-y.checked_div(&x)?),
        _ => None,
    };
    Ok(StripResult {
        a_final: a,
        b_final: b,
        t,
        h,
        ratio,
        steps,
    })
}
