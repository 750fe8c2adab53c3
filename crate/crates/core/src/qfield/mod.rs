//! Exact scalars: arbitrary-precision rationals and the quadratic extension
//! Q(√D) in which the eigenvalues of the shift matrix live.
//!
//! `√D` is kept as a formal symbol. `D` is never reduced to its squarefree
//! part; when `D` is the square of a rational the radical is folded into the
//! rational part at construction, so such elements are plain rationals.

mod approx;
mod linalg;

pub use approx::{abs_bounds, q_approx, Interval, DEFAULT_BITS, MAX_BITS};
pub use linalg::{linsolve, AffineSolution, Matrix};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational square root, if there is one.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rat::new(rn, rd))
}

/// An element `a + b·√D` of Q(√D).
///
/// Pure rationals carry no discriminant and combine with elements of any
/// extension. Two elements with nonzero radical parts must share `D`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QElem {
    rational: Rat,
    radical: Rat,
    disc: Option<Rat>,
}

impl QElem {
    pub fn new(rational: Rat, radical: Rat, disc: Rat) -> QElem {
        if radical.is_zero() {
            return QElem::from(rational);
        }
        if let Some(root) = rat_sqrt(&disc) {
            return QElem::from(rational + radical * root);
        }
        QElem {
            rational,
            radical,
            disc: Some(disc),
        }
    }

    /// `√D` itself.
    pub fn sqrt_of(disc: Rat) -> QElem {
        QElem::new(Rat::zero(), Rat::one(), disc)
    }

    pub fn zero() -> QElem {
        QElem::from(Rat::zero())
    }

    pub fn one() -> QElem {
        QElem::from(Rat::one())
    }

    pub fn from_int(n: i64) -> QElem {
        QElem::from(rat(n))
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn radical_part(&self) -> &Rat {
        &self.radical
    }

    pub fn discriminant(&self) -> Option<&Rat> {
        self.disc.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.radical.is_zero() && self.rational.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.rational)
    }

    fn join_disc(&self, other: &QElem) -> Result<Option<Rat>> {
        match (&self.disc, &other.disc) {
            (Some(x), Some(y)) if x != y => Err(Error::DiscriminantMismatch(Box::new((x.clone(), y.clone())))),
            (Some(x), _) | (_, Some(x)) => Ok(Some(x.clone())),
            (None, None) => Ok(None),
        }
    }

    fn build(rational: Rat, radical: Rat, disc: Option<Rat>) -> QElem {
        match disc {
            Some(d) if !radical.is_zero() => QElem {
                rational,
                radical,
                disc: Some(d),
            },
            _ => QElem::from(rational),
        }
    }

    pub fn checked_add(&self, other: &QElem) -> Result<QElem> {
        let disc = self.join_disc(other)?;
        Ok(QElem::build(
            &self.rational + &other.rational,
            &self.radical + &other.radical,
            disc,
        ))
    }

    pub fn checked_sub(&self, other: &QElem) -> Result<QElem> {
        let disc = self.join_disc(other)?;
        Ok(QElem::build(
            &self.rational - &other.rational,
            &self.radical - &other.radical,
            disc,
        ))
    }

    pub fn checked_mul(&self, other: &QElem) -> Result<QElem> {
        let disc = self.join_disc(other)?;
        if self.is_rational() {
            return Ok(QElem::build(
                &self.rational * &other.rational,
                &self.rational * &other.radical,
                disc,
            ));
        }
        if other.is_rational() {
            return Ok(QElem::build(
                &self.rational * &other.rational,
                &self.radical * &other.rational,
                disc,
            ));
        }
        let d = disc.as_ref().expect("irrational operands carry a discriminant");
        let a = &self.rational * &other.rational + &self.radical * &other.radical * d;
        let b = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(QElem::build(a, b, disc))
    }

    /// Multiplicative inverse via the conjugate:
    /// `1/(a + b√D) = (a − b√D)/(a² − b²D)`.
    pub fn inv(&self) -> Result<QElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(QElem::from(self.rational.recip()));
        }
        let n = self.norm();
        Ok(QElem::build(
            &self.rational / &n,
            -(&self.radical / &n),
            self.disc.clone(),
        ))
    }

    pub fn checked_div(&self, other: &QElem) -> Result<QElem> {
        self.checked_mul(&other.inv()?)
    }

    /// Galois conjugate `a − b√D`.
    pub fn conj(&self) -> QElem {
        QElem {
            rational: self.rational.clone(),
            radical: -&self.radical,
            disc: self.disc.clone(),
        }
    }

    /// `x · conj(x) = a² − b²D`.
    pub fn norm(&self) -> Rat {
        match &self.disc {
            None => &self.rational * &self.rational,
            Some(d) => &self.rational * &self.rational - &self.radical * &self.radical * d,
        }
    }

    pub fn pow(&self, mut e: u64) -> QElem {
        let mut base = self.clone();
        let mut acc = QElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<QElem> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Exact sign in the real embedding with `√D > 0`.
    pub fn signum(&self) -> Result<Ordering> {
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.radical);
        let Some(d) = &self.disc else {
            return Ok(sa);
        };
        if d.is_negative() {
            return Err(Error::NegativeDiscriminant(d.clone()));
        }
        if sb == Ordering::Equal || sa == sb {
            return Ok(if sa == Ordering::Equal { sb } else { sa });
        }
        if sa == Ordering::Equal {
            return Ok(sb);
        }
        // opposite signs: whichever of a², b²D is larger wins
        let a2 = &self.rational * &self.rational;
        let b2d = &self.radical * &self.radical * d;
        Ok(if a2 > b2d { sa } else { sb })
    }

    pub fn cmp_real(&self, other: &QElem) -> Result<Ordering> {
        self.checked_sub(other)?.signum()
    }

    /// Compares `|self|` with `|other|` exactly.
    pub fn cmp_abs(&self, other: &QElem) -> Result<Ordering> {
        let x2 = self.checked_mul(self)?;
        let y2 = other.checked_mul(other)?;
        x2.cmp_real(&y2)
    }

    pub fn abs(&self) -> Result<QElem> {
        Ok(if self.signum()? == Ordering::Less {
            -self
        } else {
            self.clone()
        })
    }
}

fn sign_of(x: &Rat) -> Ordering {
    match x.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// Exact product in Q(√D); fails when the two discriminants differ.
pub fn q_mul(x: &QElem, y: &QElem) -> Result<QElem> {
    x.checked_mul(y)
}

pub fn q_inv(x: &QElem) -> Result<QElem> {
    x.inv()
}

pub fn q_conj(x: &QElem) -> QElem {
    x.conj()
}

impl From<Rat> for QElem {
    fn from(r: Rat) -> QElem {
        QElem {
            rational: r,
            radical: Rat::zero(),
            disc: None,
        }
    }
}

impl From<i64> for QElem {
    fn from(n: i64) -> QElem {
        QElem::from_int(n)
    }
}

impl Default for QElem {
    fn default() -> QElem {
        QElem::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QElem> for &QElem {
            type Output = QElem;
            fn $method(self, rhs: &QElem) -> QElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QElem> for QElem {
            type Output = QElem;
            fn $method(self, rhs: QElem) -> QElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QElem> for QElem {
            type Output = QElem;
            fn $method(self, rhs: &QElem) -> QElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<QElem> for &QElem {
            type Output = QElem;
            fn $method(self, rhs: QElem) -> QElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        QElem {
            rational: -&self.rational,
            radical: -&self.radical,
            disc: self.disc.clone(),
        }
    }
}

impl Neg for QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        -&self
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = &self.disc else {
            return write!(f, "{}", self.rational);
        };
        let b = &self.radical;
        let mag = b.abs();
        let surd = if mag.is_one() {
            format!("sqrt({d})")
        } else {
            format!("{mag}*sqrt({d})")
        };
        let minus = b.is_negative();
        match (self.rational.is_zero(), minus) {
            (true, false) => f.write_str(&surd),
            (true, true) => write!(f, "-{surd}"),
            (false, false) => write!(f, "{} + {}", self.rational, surd),
            (false, true) => write!(f, "{} - {}", self.rational, surd),
        }
    }
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
