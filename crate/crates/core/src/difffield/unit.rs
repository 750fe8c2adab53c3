//! Integer solutions of `λ₁ⁱ λ₂ʲ = μ`.
//!
//! With √D irrational, conjugation pins `i − j` (since `|λ₁/λ₂| ≠ 1`) and
//! leaves `(−u)ʲ = μ/λ₁ᵏ` for `j`. With rational eigenvalues the equation
//! becomes a linear system over the valuations at a coprime base of the
//! numerators and denominators involved, plus a sign condition.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qfield::{QElem, Rat};

/// All `(i, j)` with `λ₁ⁱ λ₂ʲ = μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpSolSet {
    Empty,
    Single(i64, i64),
    /// `base + t·step` for every integer `t`.
    Coset { base: (i64, i64), step: (i64, i64) },
}

impl ExpSolSet {
    pub fn contains(&self, i: i64, j: i64) -> bool {
        match *self {
            ExpSolSet::Empty => false,
            ExpSolSet::Single(a, b) => (a, b) == (i, j),
            ExpSolSet::Coset { base, step } => {
                let (di, dj) = (i - base.0, j - base.1);
                // (di, dj) must be an integer multiple of step
                if step.0 != 0 {
                    di % step.0 == 0 && dj * step.0 == di * step.1
                } else {
                    di == 0 && dj % step.1 == 0
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ExpSolSet::Empty)
    }
}

/// Integer relations `λ₁ᵃ λ₂ᵇ = 1`: either only `(0, 0)` or the multiples
/// of one primitive generator with `a ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RelationLattice {
    pub generator: Option<(i64, i64)>,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        usize::from(self.generator.is_some())
    }

    pub(crate) fn from_solutions(s: ExpSolSet) -> RelationLattice {
        match s {
            ExpSolSet::Coset { step, .. } => RelationLattice {
                generator: Some(step),
            },
            _ => RelationLattice { generator: None },
        }
    }
}

pub(crate) fn solve(lambda1: &QElem, lambda2: &QElem, u: &Rat, mu: &QElem) -> Result<ExpSolSet> {
    if mu.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // surface a discriminant mismatch before anything else
    mu.checked_mul(lambda1)?;
    let sols = if lambda1.is_rational() {
        solve_rational(
            lambda1.rational_part(),
            lambda2.rational_part(),
            mu,
        )?
    } else {
        solve_quadratic(lambda1, lambda2, u, mu)?
    };
    let sols = normalize(sols);
    verify(lambda1, lambda2, mu, &sols)?;
    Ok(sols)
}

fn verify(l1: &QElem, l2: &QElem, mu: &QElem, s: &ExpSolSet) -> Result<()> {
    let check = |i: i64, j: i64| -> Result<bool> { Ok(&l1.powi(i)? * &l2.powi(j)? == *mu) };
    let ok = match *s {
        ExpSolSet::Empty => true,
        ExpSolSet::Single(i, j) => check(i, j)?,
        ExpSolSet::Coset { base, step } => {
            check(base.0, base.1)?
                && check(base.0 + step.0, base.1 + step.1)?
                && check(base.0 - step.0, base.1 - step.1)?
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "unit equation solution {s:?} failed exact verification"
        )))
    }
}

fn normalize(s: ExpSolSet) -> ExpSolSet {
    let ExpSolSet::Coset { base, step } = s else {
        return s;
    };
    let step = if step.0 < 0 || (step.0 == 0 && step.1 < 0) {
        (-step.0, -step.1)
    } else {
        step
    };
    // slide the base so that its second coordinate lies in [0, |step.1|)
    let t = if step.1 != 0 {
        Integer::div_floor(&base.1, &step.1.abs()) * step.1.signum()
    } else {
        Integer::div_floor(&base.0, &step.0)
    };
    ExpSolSet::Coset {
        base: (base.0 - t * step.0, base.1 - t * step.1),
        step,
    }
}

/// The integer `k` with `ρᵏ = τ`, if any; requires `|ρ| ≠ 1`.
fn exact_log(rho: &QElem, tau: &QElem) -> Result<Option<i64>> {
    if tau.is_one() {
        return Ok(Some(0));
    }
    let one = QElem::one();
    let (target, flip) = match tau.cmp_abs(&one)? {
        Ordering::Equal => return Ok(None),
        Ordering::Greater => (tau.clone(), 1),
        Ordering::Less => (tau.inv()?, -1),
    };
    let (base, sign) = match rho.cmp_abs(&one)? {
        Ordering::Greater => (rho.clone(), 1),
        Ordering::Less => (rho.inv()?, -1),
        Ordering::Equal => {
            return Err(Error::Invalid("exact_log needs |rho| != 1".into()));
        }
    };
    let mut x = base.clone();
    let mut n: i64 = 1;
    while x.cmp_abs(&target)? == Ordering::Less {
        x = &x * &base;
        n += 1;
    }
    Ok((x == target).then_some(sign * flip * n))
}

fn solve_quadratic(l1: &QElem, l2: &QElem, u: &Rat, mu: &QElem) -> Result<ExpSolSet> {
    let tau = mu.checked_div(&mu.conj())?;
    let rho = l1.checked_div(l2)?;
    let Some(k) = exact_log(&rho, &tau)? else {
        return Ok(ExpSolSet::Empty);
    };
    // pairs (k + j, j): λ₁ᵏ (λ₁λ₂)ʲ = μ
    let eta = mu.checked_div(&l1.powi(k)?)?;
    let Some(eta) = eta.as_rational() else {
        return Ok(ExpSolSet::Empty);
    };
    let w = -u.clone();
    if w.is_one() {
        return Ok(if eta.is_one() {
            ExpSolSet::Coset {
                base: (k, 0),
                step: (1, 1),
            }
        } else {
            ExpSolSet::Empty
        });
    }
    if (-&w).is_one() {
        return Ok(if eta.is_one() {
            ExpSolSet::Coset {
                base: (k, 0),
                step: (2, 2),
            }
        } else if (-eta).is_one() {
            ExpSolSet::Coset {
                base: (k + 1, 1),
                step: (2, 2),
            }
        } else {
            ExpSolSet::Empty
        });
    }
    Ok(match exact_log(&QElem::from(w), &QElem::from(eta.clone()))? {
        Some(j) => ExpSolSet::Single(k + j, j),
        None => ExpSolSet::Empty,
    })
}

/// Refines a list of integers > 1 into pairwise coprime factors.
pub(crate) fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = nums.iter().filter(|n| **n > BigInt::one()).cloned().collect();
    loop {
        base.sort();
        base.dedup();
        let mut split = None;
        'outer: for x in 0..base.len() {
            for y in x + 1..base.len() {
                let g = base[x].gcd(&base[y]);
                if !g.is_one() {
                    split = Some((x, y, g));
                    break 'outer;
                }
            }
        }
        let Some((x, y, g)) = split else {
            return base;
        };
        let (bx, by) = (&base[x] / &g, &base[y] / &g);
        base.remove(y);
        base.remove(x);
        base.extend([g, bx, by].into_iter().filter(|n| *n > BigInt::one()));
    }
}

fn valuations(n: &BigInt, base: &[BigInt]) -> Vec<i64> {
    let mut rest = n.abs();
    let out = base
        .iter()
        .map(|b| {
            let mut e = 0;
            while (&rest % b).is_zero() {
                rest /= b;
                e += 1;
            }
            e
        })
        .collect();
    debug_assert!(rest.is_one(), "coprime base does not cover {n}");
    out
}

fn rat_valuations(x: &Rat, base: &[BigInt]) -> Vec<i64> {
    let num = valuations(x.numer(), base);
    let den = valuations(x.denom(), base);
    num.iter().zip(&den).map(|(a, b)| a - b).collect()
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn solve_rational(l1: &Rat, l2: &Rat, mu: &QElem) -> Result<ExpSolSet> {
    let Some(mu) = mu.as_rational() else {
        return Ok(ExpSolSet::Empty);
    };
    let nums: Vec<BigInt> = [l1, l2, mu]
        .iter()
        .flat_map(|x| [x.numer().abs(), x.denom().clone()])
        .collect();
    let base = coprime_base(&nums);
    let e = rat_valuations(l1, &base);
    let f = rat_valuations(l2, &base);
    let m = rat_valuations(mu, &base);
    let neg = |x: &Rat| x.is_negative();
    let (s1, s2, sm) = (neg(l1), neg(l2), neg(mu));
    // sign of λ₁ⁱλ₂ʲ is negative iff an odd number of negative factors
    let sign_ok = |i: i64, j: i64| ((s1 && i.rem_euclid(2) == 1) ^ (s2 && j.rem_euclid(2) == 1)) == sm;

    let rows: Vec<(i64, i64, i64)> = (0..base.len()).map(|r| (e[r], f[r], m[r])).collect();
    let Some(&(e0, f0, m0)) = rows.iter().find(|(a, b, _)| *a != 0 || *b != 0) else {
        return Err(Error::Invalid(
            "both eigenvalues are ±1; the relation lattice has rank 2".into(),
        ));
    };
    if rows.iter().any(|&(a, b, c)| a == 0 && b == 0 && c != 0) {
        return Ok(ExpSolSet::Empty);
    }
    if let Some(&(e1, f1, m1)) = rows.iter().find(|(a, b, _)| e0 * b - f0 * a != 0) {
        let det = e0 * f1 - f0 * e1;
        let (ni, nj) = (m0 * f1 - f0 * m1, e0 * m1 - m0 * e1);
        if ni % det != 0 || nj % det != 0 {
            return Ok(ExpSolSet::Empty);
        }
        let (i, j) = (ni / det, nj / det);
        let fits = rows.iter().all(|&(a, b, c)| a * i + b * j == c);
        return Ok(if fits && sign_ok(i, j) {
            ExpSolSet::Single(i, j)
        } else {
            ExpSolSet::Empty
        });
    }
    let (g, x, y) = ext_gcd(e0, f0);
    if m0 % g != 0 {
        return Ok(ExpSolSet::Empty);
    }
    let base_pt = (x * (m0 / g), y * (m0 / g));
    if !rows.iter().all(|&(a, b, c)| a * base_pt.0 + b * base_pt.1 == c) {
        return Ok(ExpSolSet::Empty);
    }
    let step = (f0 / g, -e0 / g);
    let step_flips = (s1 && step.0.rem_euclid(2) == 1) ^ (s2 && step.1.rem_euclid(2) == 1);
    Ok(match (sign_ok(base_pt.0, base_pt.1), step_flips) {
        (true, false) => ExpSolSet::Coset { base: base_pt, step },
        (false, false) => ExpSolSet::Empty,
        (true, true) => ExpSolSet::Coset {
            base: base_pt,
            step: (2 * step.0, 2 * step.1),
        },
        (false, true) => ExpSolSet::Coset {
            base: (base_pt.0 + step.0, base_pt.1 + step.1),
            step: (2 * step.0, 2 * step.1),
        },
    })
}
