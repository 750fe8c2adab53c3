//! Sparse polynomials in α, β with coefficients in Q(√D).
//!
//! Terms are kept in total-degree lexicographic order with α > β. The shift
//! σ acts by the linear substitution `(α, β) ↦ (α, β)·A^m`.

mod gcd;
mod render;
mod upoly;

pub use gcd::poly_gcd;
pub use upoly::UPoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qfield::{QElem, Rat};

/// Exponent pair `α^i β^j`, ordered by total degree and then by the α
/// exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: u32,
    pub beta: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { alpha: 0, beta: 0 };

    pub fn new(alpha: u32, beta: u32) -> Monomial {
        Monomial { alpha, beta }
    }

    pub fn degree(self) -> u32 {
        self.alpha + self.beta
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.alpha <= other.alpha && self.beta <= other.beta
    }

    /// All monomials of total degree exactly `d`, leading one first.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).rev().map(move |i| Monomial::new(i, d - i))
    }

    /// All monomials of total degree at most `d`, in descending order.
    pub fn up_to_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).rev().flat_map(Monomial::of_degree)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.alpha.cmp(&other.alpha))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.alpha + rhs.alpha, self.beta + rhs.beta)
    }
}

/// Bivariate polynomial. No zero coefficient is ever stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, QElem>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly::default()
    }

    pub fn one() -> BiPoly {
        BiPoly::constant(QElem::one())
    }

    pub fn constant(c: QElem) -> BiPoly {
        BiPoly::term(c, Monomial::ONE)
    }

    pub fn from_int(n: i64) -> BiPoly {
        BiPoly::constant(QElem::from_int(n))
    }

    pub fn from_rat(r: Rat) -> BiPoly {
        BiPoly::constant(QElem::from(r))
    }

    pub fn term(c: QElem, m: Monomial) -> BiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BiPoly { terms }
    }

    pub fn monomial(alpha: u32, beta: u32) -> BiPoly {
        BiPoly::term(QElem::one(), Monomial::new(alpha, beta))
    }

    pub fn alpha() -> BiPoly {
        BiPoly::monomial(1, 0)
    }

    pub fn beta() -> BiPoly {
        BiPoly::monomial(0, 1)
    }

    /// Linear form `x·α + y·β`.
    pub fn linear(x: QElem, y: QElem) -> BiPoly {
        let mut p = BiPoly::term(x, Monomial::new(1, 0));
        p.add_term(Monomial::new(0, 1), y);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, QElem)>) -> BiPoly {
        let mut p = BiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: QElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<QElem> {
        self.is_constant()
            .then(|| self.coeff(Monomial::ONE))
    }

    /// Total degree; `None` is the zero polynomial's sentinel.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.low_degree()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> QElem {
        self.terms.get(&m).cloned().unwrap_or_else(QElem::zero)
    }

    /// Terms in descending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &QElem)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(Monomial, &QElem)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(QElem::is_rational)
    }

    pub fn max_alpha(&self) -> u32 {
        self.terms.keys().map(|m| m.alpha).max().unwrap_or(0)
    }

    pub fn max_beta(&self) -> u32 {
        self.terms.keys().map(|m| m.beta).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &QElem) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: Monomial) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m * mono, x.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> BiPoly {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// The degree-`d` homogeneous part.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components `(degree, part)` in ascending degree.
    pub fn hom_components(&self) -> Vec<(u32, BiPoly)> {
        let mut out: Vec<(u32, BiPoly)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree();
            match out.last_mut() {
                Some((e, part)) if *e == d => {
                    part.terms.insert(*m, c.clone());
                }
                _ => out.push((d, BiPoly::term(c.clone(), *m))),
            }
        }
        out
    }

    /// Leading homogeneous form.
    pub fn leading_form(&self) -> BiPoly {
        match self.degree() {
            Some(d) => self.homogeneous_part(d),
            None => BiPoly::zero(),
        }
    }

    /// Substitutes `α ↦ x`, `β ↦ y`.
    pub fn compose(&self, x: &BiPoly, y: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let xs = powers(x, self.max_alpha());
        let ys = powers(y, self.max_beta());
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let t = &xs[m.alpha as usize] * &ys[m.beta as usize];
            out = out + t.scale(c);
        }
        out
    }

    pub fn eval_q(&self, a: &QElem, b: &QElem) -> QElem {
        let mut acc = QElem::zero();
        for (m, c) in &self.terms {
            acc = acc + c * &a.pow(u64::from(m.alpha)) * b.pow(u64::from(m.beta));
        }
        acc
    }

    /// Exact value at `α = a`, `β = b`.
    pub fn eval(&self, a: &Rat, b: &Rat) -> QElem {
        self.eval_q(&QElem::from(a.clone()), &QElem::from(b.clone()))
    }

    /// Quotient `self / q`, failing unless `q` divides `self` exactly.
    pub fn divide_exact(&self, q: &BiPoly) -> Result<BiPoly> {
        let Some((lm, lc)) = q.leading_term() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible);
            }
            let shift = Monomial::new(m.alpha - lm.alpha, m.beta - lm.beta);
            let k = c * &lc_inv;
            rem = &rem - &q.mul_monomial(shift).scale(&k);
            quot.add_term(shift, k);
        }
        Ok(quot)
    }

    /// Univariate view in α with coefficients in K[β]: entry `i` holds the
    /// coefficient of `α^i`.
    pub(crate) fn to_alpha_rows(&self) -> Vec<UPoly> {
        let mut rows = vec![UPoly::zero(); self.max_alpha() as usize + 1];
        for (m, c) in &self.terms {
            rows[m.alpha as usize].set(m.beta as usize, c.clone());
        }
        rows
    }

    pub(crate) fn from_alpha_rows(rows: &[UPoly]) -> BiPoly {
        let mut p = BiPoly::zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.coeffs().iter().enumerate() {
                p.add_term(Monomial::new(i as u32, j as u32), c.clone());
            }
        }
        p
    }
}

/// Fully reduced echelon basis of the span of `polys`: distinct leading
/// monomials, each monic and absent from every other element. Sorted by
/// leading monomial, smallest first.
pub fn reduced_basis(polys: &[BiPoly]) -> Vec<BiPoly> {
    let mut basis: Vec<BiPoly> = Vec::new();
    for p in polys {
        let mut r = p.clone();
        for b in &basis {
            let lm = b.leading_term().unwrap().0;
            let c = r.coeff(lm);
            if !c.is_zero() {
                r = &r - &b.scale(&c);
            }
        }
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let lm = r.leading_term().unwrap().0;
        for b in basis.iter_mut() {
            let c = b.coeff(lm);
            if !c.is_zero() {
                *b = &*b - &r.scale(&c);
            }
        }
        basis.push(r);
    }
    basis.sort_by_key(|b| b.leading_term().unwrap().0);
    basis
}

fn powers(x: &BiPoly, n: u32) -> Vec<BiPoly> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BiPoly::one());
    for k in 1..=n as usize {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(*m1 * *m2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

/// The shift `σ(α) = β, σ(β) = uα + vβ` as the matrix `A = ((0, u), (1, v))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaContext {
    u: Rat,
    v: Rat,
}

/// 2×2 rational matrix, row-major.
pub type Mat2 = [[Rat; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

impl SigmaContext {
    pub fn new(u: Rat, v: Rat) -> Result<SigmaContext> {
        if u.is_zero() {
            return Err(Error::DegenerateRecurrence);
        }
        Ok(SigmaContext { u, v })
    }

    pub fn u(&self) -> &Rat {
        &self.u
    }

    pub fn v(&self) -> &Rat {
        &self.v
    }

    pub fn matrix(&self) -> Mat2 {
        [
            [Rat::zero(), self.u.clone()],
            [Rat::one(), self.v.clone()],
        ]
    }

    /// `A⁻¹ = ((−v/u, 1), (1/u, 0))`.
    pub fn inverse_matrix(&self) -> Mat2 {
        [
            [-(&self.v / &self.u), Rat::one()],
            [self.u.recip(), Rat::zero()],
        ]
    }

    pub fn matrix_power(&self, m: i64) -> Mat2 {
        let base = if m >= 0 {
            self.matrix()
        } else {
            self.inverse_matrix()
        };
        let mut acc: Mat2 = [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]];
        let mut b = base;
        let mut e = m.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = mat_mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = mat_mul(&b, &b);
            }
        }
        acc
    }

    /// `(σᵐ(α), σᵐ(β))`, read off the columns of `Aᵐ`.
    pub fn images(&self, m: i64) -> (BiPoly, BiPoly) {
        let a = self.matrix_power(m);
        let col = |j: usize| {
            BiPoly::linear(
                QElem::from(a[0][j].clone()),
                QElem::from(a[1][j].clone()),
            )
        };
        (col(0), col(1))
    }
}

/// `σᵐ(p)` for any integer `m`.
pub fn apply_sigma(p: &BiPoly, m: i64, ctx: &SigmaContext) -> BiPoly {
    if m == 0 || p.is_constant() {
        return p.clone();
    }
    let (x, y) = ctx.images(m);
    p.compose(&x, &y)
}

pub fn hom_components(p: &BiPoly) -> Vec<(u32, BiPoly)> {
    p.hom_components()
}

pub fn divide_exact(p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    p.divide_exact(q)
}

pub fn eval(p: &BiPoly, a: &Rat, b: &Rat) -> QElem {
    p.eval(a, b)
}
