//! The difference field `(K(α, β), σ)` with `σ(α) = β`, `σ(β) = uα + vβ`.
//!
//! `σ` acts diagonally on the eigenforms `h_t = α + (λ_t/u)β`, so a
//! homogeneous polynomial written in powers of `h₁, h₂` exposes exactly
//! which parts are semi-invariant.

mod unit;

use num_traits::{Signed, Zero};

pub use unit::{ExpSolSet, RelationLattice};

use crate::bipoly::{apply_sigma, poly_gcd, reduced_basis, BiPoly, Monomial, SigmaContext};
use crate::error::{Error, Result};
use crate::qfield::{linsolve, rat, ratio, Matrix, QElem, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffField {
    sigma: SigmaContext,
    disc: Rat,
    lambda1: QElem,
    lambda2: QElem,
    h1: BiPoly,
    h2: BiPoly,
    norm_form: BiPoly,
    lattice: RelationLattice,
}

pub fn make_field(u: Rat, v: Rat) -> Result<DiffField> {
    DiffField::new(u, v)
}

impl DiffField {
    pub fn new(u: Rat, v: Rat) -> Result<DiffField> {
        let sigma = SigmaContext::new(u.clone(), v.clone())?;
        let disc = &v * &v + rat(4) * &u;
        if disc.is_negative() {
            return Err(Error::NonRealEigenvalues(disc));
        }
        if disc.is_zero() {
            return Err(Error::RepeatedEigenvalue);
        }
        if v.is_zero() {
            return Err(Error::RootOfUnityRatio);
        }
        let half = ratio(1, 2);
        let lambda1 = QElem::new(&v * &half, half.clone(), disc.clone());
        let lambda2 = QElem::new(&v * &half, -half, disc.clone());
        let u_inv = QElem::from(u.recip());
        let h1 = BiPoly::linear(QElem::one(), &lambda1 * &u_inv);
        let h2 = BiPoly::linear(QElem::one(), &lambda2 * &u_inv);
        let norm_form = BiPoly::from_terms([
            (Monomial::new(2, 0), QElem::one()),
            (Monomial::new(1, 1), QElem::from(&v / &u)),
            (Monomial::new(0, 2), -u_inv),
        ]);
        let lattice = RelationLattice::from_solutions(unit::solve(
            &lambda1,
            &lambda2,
            &u,
            &QElem::one(),
        )?);
        Ok(DiffField {
            sigma,
            disc,
            lambda1,
            lambda2,
            h1,
            h2,
            norm_form,
            lattice,
        })
    }

    pub fn fibonacci() -> DiffField {
        DiffField::new(rat(1), rat(1)).expect("valid field")
    }

    pub fn pell() -> DiffField {
        DiffField::new(rat(1), rat(2)).expect("valid field")
    }

    pub fn jacobsthal() -> DiffField {
        DiffField::new(rat(2), rat(1)).expect("valid field")
    }

    pub fn u(&self) -> &Rat {
        self.sigma.u()
    }

    pub fn v(&self) -> &Rat {
        self.sigma.v()
    }

    pub fn discriminant(&self) -> &Rat {
        &self.disc
    }

    pub fn lambda1(&self) -> &QElem {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &QElem {
        &self.lambda2
    }

    pub fn h1(&self) -> &BiPoly {
        &self.h1
    }

    pub fn h2(&self) -> &BiPoly {
        &self.h2
    }

    /// `C = h₁h₂ = α² + (v/u)αβ − (1/u)β²`.
    pub fn norm_form(&self) -> &BiPoly {
        &self.norm_form
    }

    pub fn lattice(&self) -> &RelationLattice {
        &self.lattice
    }

    pub fn sigma(&self) -> &SigmaContext {
        &self.sigma
    }

    /// Whether the eigenvalues are rational.
    pub fn is_split(&self) -> bool {
        self.lambda1.is_rational()
    }

    pub fn apply_sigma(&self, p: &BiPoly, m: i64) -> BiPoly {
        apply_sigma(p, m, &self.sigma)
    }

    /// Coefficients `c_k` of `h₁^k h₂^{n−k}`, `k = 0..=n`. Empty for the
    /// zero polynomial.
    pub fn to_eigen(&self, p: &BiPoly) -> Result<Vec<QElem>> {
        let Some(n) = p.degree() else {
            return Ok(Vec::new());
        };
        if !p.is_homogeneous() {
            return Err(Error::NonHomogeneous);
        }
        // α and β in terms of h₁ (α slot) and h₂ (β slot)
        let delta_inv = (&self.lambda1 - &self.lambda2).inv()?;
        let u = QElem::from(self.u().clone());
        let a = BiPoly::linear(-(&self.lambda2 * &delta_inv), &self.lambda1 * &delta_inv);
        let ud = &u * &delta_inv;
        let b = BiPoly::linear(ud.clone(), -ud);
        let q = p.compose(&a, &b);
        Ok((0..=n).map(|k| q.coeff(Monomial::new(k, n - k))).collect())
    }

    pub fn from_eigen(&self, coeffs: &[QElem]) -> BiPoly {
        let n = coeffs.len().saturating_sub(1) as u32;
        let mut out = BiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u32;
            let t = &self.h1.pow(k) * &self.h2.pow(n - k);
            out = out + t.scale(c);
        }
        out
    }

    /// Multiplicities `(ν₁, ν₂)` of `h₁` and `h₂` as factors of a nonzero
    /// homogeneous `p`.
    pub fn eigen_valuations(&self, p: &BiPoly) -> Result<(u32, u32)> {
        let c = self.to_eigen(p)?;
        let first = c.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroPolynomial)?;
        let last = c.iter().rposition(|x| !x.is_zero()).unwrap();
        Ok((first as u32, (c.len() - 1 - last) as u32))
    }

    /// `(μ, i)` with `σ(p/q) = μ·p/q` and `μ = λ₁ⁱ λ₂^{deg p − deg q − i}`
    /// when `p/q` is semi-invariant.
    pub fn classify_semi_invariant(&self, p: &BiPoly, q: &BiPoly) -> Result<Option<(QElem, i64)>> {
        if q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.is_homogeneous() || !q.is_homogeneous() {
            return Err(Error::NonHomogeneous);
        }
        if p.is_zero() {
            return Ok(None);
        }
        let g = poly_gcd(p, q)?;
        let (p, q) = (p.divide_exact(&g)?, q.divide_exact(&g)?);
        let Some(ip) = single_index(&self.to_eigen(&p)?) else {
            return Ok(None);
        };
        let Some(iq) = single_index(&self.to_eigen(&q)?) else {
            return Ok(None);
        };
        let i = ip - iq;
        let dp = i64::from(p.degree().unwrap());
        let dq = i64::from(q.degree().unwrap());
        let mu = &self.lambda1.powi(i)? * &self.lambda2.powi(dp - dq - i)?;
        Ok(Some((mu, i)))
    }

    /// All integer pairs with `λ₁ⁱ λ₂ʲ = μ`.
    pub fn solve_unit_eq(&self, mu: &QElem) -> Result<ExpSolSet> {
        unit::solve(&self.lambda1, &self.lambda2, self.u(), mu)
    }

    /// Basis of the σ-invariant homogeneous polynomials of each degree up to
    /// `cap`, in ascending degree.
    pub fn invariant_generators(&self, cap: u32) -> Vec<BiPoly> {
        let mut out = Vec::new();
        for d in 0..=cap {
            let monos: Vec<Monomial> = Monomial::of_degree(d).collect();
            let mut mat = Matrix::new(monos.len());
            let images: Vec<BiPoly> = monos
                .iter()
                .map(|m| &self.apply_sigma(&BiPoly::term(QElem::one(), *m), 1) - &BiPoly::term(QElem::one(), *m))
                .collect();
            for row in &monos {
                mat.push_row(images.iter().map(|img| img.coeff(*row)).collect());
            }
            let sol = linsolve(&mat, &vec![QElem::zero(); monos.len()]);
            let polys: Vec<BiPoly> = sol
                .nullspace_basis
                .iter()
                .map(|vec| BiPoly::from_terms(monos.iter().copied().zip(vec.iter().cloned())))
                .collect();
            out.extend(reduced_basis(&polys));
        }
        out
    }
}

fn single_index(c: &[QElem]) -> Option<i64> {
    let mut nz = c.iter().enumerate().filter(|(_, x)| !x.is_zero());
    let (k, _) = nz.next()?;
    nz.next().is_none().then_some(k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::tests::arb_homogeneous;
    use proptest::prelude::*;

    fn a() -> BiPoly {
        BiPoly::alpha()
    }
    fn b() -> BiPoly {
        BiPoly::beta()
    }
    fn q(x: i64) -> QElem {
        QElem::from_int(x)
    }
    fn fields() -> Vec<DiffField> {
        vec![
            DiffField::fibonacci(),
            DiffField::pell(),
            DiffField::jacobsthal(),
            DiffField::new(rat(3), rat(1)).unwrap(),
            DiffField::new(ratio(-1, 3), rat(2)).unwrap(),
            DiffField::new(rat(-1), rat(3)).unwrap(),
            DiffField::new(rat(6), rat(1)).unwrap(),
        ]
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(DiffField::new(rat(0), rat(1)), Err(Error::DegenerateRecurrence)));
        assert!(matches!(DiffField::new(rat(-1), rat(1)), Err(Error::NonRealEigenvalues(_))));
        assert!(matches!(DiffField::new(rat(-1), rat(2)), Err(Error::RepeatedEigenvalue)));
        assert!(matches!(DiffField::new(rat(1), rat(0)), Err(Error::RootOfUnityRatio)));
    }

    #[test]
    fn named_fields() {
        let f = DiffField::fibonacci();
        let half = ratio(1, 2);
        assert_eq!(*f.lambda1(), QElem::new(half.clone(), half.clone(), rat(5)));
        assert_eq!(*f.lambda2(), QElem::new(half.clone(), -half.clone(), rat(5)));
        assert_eq!(*f.h1(), BiPoly::linear(QElem::one(), f.lambda1().clone()));
        assert_eq!(*f.norm_form(), &(&(&a() * &a()) + &(&a() * &b())) - &(&b() * &b()));
        assert_eq!(f.lattice().generator, Some((2, 2)));

        let p = DiffField::pell();
        // 1 ± √2 with √2 = √8/2
        let r2 = (p.lambda1() - &q(1)).pow(2);
        assert_eq!(r2, q(2));
        assert_eq!(p.lambda1() + p.lambda2(), q(2));
        assert!(p.lambda1().cmp_real(p.lambda2()).unwrap().is_gt());

        let j = DiffField::jacobsthal();
        assert_eq!(*j.discriminant(), rat(9));
        assert_eq!(*j.lambda1(), q(2));
        assert_eq!(*j.lambda2(), q(-1));
        assert!(j.is_split());
        assert_eq!(j.lattice().generator, Some((0, 2)));

        assert_eq!(DiffField::new(rat(3), rat(1)).unwrap().lattice().rank(), 0);
        assert_eq!(DiffField::new(rat(-1), rat(3)).unwrap().lattice().generator, Some((1, 1)));
    }

    #[test]
    fn field_invariants() {
        for f in fields() {
            let (l1, l2) = (f.lambda1(), f.lambda2());
            assert_eq!(l1 * l2, -QElem::from(f.u().clone()));
            assert_eq!(l1 + l2, QElem::from(f.v().clone()));
            assert_eq!(f.apply_sigma(f.h1(), 1), f.h1().scale(l1));
            assert_eq!(f.apply_sigma(f.h2(), 1), f.h2().scale(l2));
            assert_eq!(&(f.h1() * f.h2()), f.norm_form());
            let c = f.norm_form();
            assert_eq!(f.apply_sigma(c, 1), c.scale(&-QElem::from(f.u().clone())));
        }
    }

    #[test]
    fn eigen_coordinates() {
        let f = DiffField::fibonacci();
        let b2 = &b() * &b();
        assert_eq!(
            f.to_eigen(&b2).unwrap(),
            vec![QElem::from(ratio(1, 5)), QElem::from(ratio(-2, 5)), QElem::from(ratio(1, 5))]
        );
        assert_eq!(f.to_eigen(f.norm_form()).unwrap(), vec![q(0), q(1), q(0)]);
        assert_eq!(f.to_eigen(&f.h1().pow(3)).unwrap(), vec![q(0), q(0), q(0), q(1)]);
        assert_eq!(f.to_eigen(&f.h2().pow(3)).unwrap(), vec![q(1), q(0), q(0), q(0)]);
        assert_eq!(f.from_eigen(&[q(0), q(1), q(0)]), *f.norm_form());
        assert_eq!(f.from_eigen(&[q(1)]), BiPoly::one());
        assert!(f.from_eigen(&[q(0), q(0), q(0)]).is_zero());
        assert!(matches!(f.to_eigen(&(&a() + &BiPoly::one())), Err(Error::NonHomogeneous)));
        assert_eq!(f.eigen_valuations(&(&f.h1().pow(2) * f.h2())).unwrap(), (2, 1));
    }

    #[test]
    fn semi_invariants() {
        let f = DiffField::fibonacci();
        let one = BiPoly::one();
        assert_eq!(f.classify_semi_invariant(f.norm_form(), &one).unwrap(), Some((q(-1), 1)));
        assert_eq!(f.classify_semi_invariant(&b(), &one).unwrap(), None);
        for f in fields() {
            let r = f.classify_semi_invariant(&f.h1().pow(2), f.h2()).unwrap();
            let mu = f.lambda1().pow(2).checked_div(f.lambda2()).unwrap();
            assert_eq!(r, Some((mu, 2)));
        }
    }

    #[test]
    fn unit_equation_examples() {
        let f = DiffField::fibonacci();
        assert_eq!(
            f.solve_unit_eq(&q(1)).unwrap(),
            ExpSolSet::Coset { base: (0, 0), step: (2, 2) }
        );
        let p = DiffField::pell();
        assert_eq!(p.solve_unit_eq(&q(-2)).unwrap(), ExpSolSet::Empty);
        assert_eq!(
            p.solve_unit_eq(&q(-1)).unwrap(),
            ExpSolSet::Coset { base: (1, 1), step: (2, 2) }
        );
        let j = DiffField::jacobsthal();
        assert_eq!(
            j.solve_unit_eq(&q(-8)).unwrap(),
            ExpSolSet::Coset { base: (3, 1), step: (0, 2) }
        );
        assert_eq!(j.solve_unit_eq(&q(3)).unwrap(), ExpSolSet::Empty);
        let t = DiffField::new(rat(6), rat(1)).unwrap();
        // λ = 3, −2
        assert_eq!(t.solve_unit_eq(&QElem::from(ratio(-9, 8))).unwrap(), ExpSolSet::Single(2, -3));
        assert!(matches!(
            f.solve_unit_eq(&QElem::sqrt_of(rat(2))),
            Err(Error::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn unit_equation_brute_force() {
        for f in fields() {
            let p1: Vec<QElem> = (-20..=20).map(|i| f.lambda1().powi(i).unwrap()).collect();
            let p2: Vec<QElem> = (-20..=20).map(|j| f.lambda2().powi(j).unwrap()).collect();
            let table: Vec<(i64, i64, QElem)> = (-20..=20i64)
                .flat_map(|i| (-20..=20i64).map(move |j| (i, j)))
                .map(|(i, j)| (i, j, &p1[(i + 20) as usize] * &p2[(j + 20) as usize]))
                .collect();
            for (x, y) in [(0, 0), (1, 0), (0, 1), (3, -2), (-4, 1), (2, 5), (-3, -3), (7, 0)] {
                let mu = &f.lambda1().powi(x).unwrap() * &f.lambda2().powi(y).unwrap();
                let sols = f.solve_unit_eq(&mu).unwrap();
                for (i, j, val) in &table {
                    assert_eq!(*val == mu, sols.contains(*i, *j), "{sols:?} at ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn invariants_by_degree() {
        let f = DiffField::fibonacci();
        let g = f.invariant_generators(4);
        assert_eq!(g, vec![BiPoly::one(), f.norm_form().pow(2)]);
        let p = DiffField::pell();
        assert_eq!(p.invariant_generators(3), vec![BiPoly::one()]);
        assert_eq!(p.invariant_generators(0), vec![BiPoly::one()]);
        for w in p.invariant_generators(8) {
            assert_eq!(p.apply_sigma(&w, 1), w);
        }
    }

    proptest! {
        #[test]
        fn eigen_round_trip(p in arb_homogeneous(5), idx in 0usize..7) {
            let f = &fields()[idx];
            let c = f.to_eigen(&p).unwrap();
            prop_assert_eq!(f.from_eigen(&c), p.clone());
            let cs = f.to_eigen(&f.apply_sigma(&p, 1)).unwrap();
            let n = c.len() as u32 - 1;
            for (k, (x, y)) in c.iter().zip(&cs).enumerate() {
                let w = &f.lambda1().pow(k as u64) * &f.lambda2().pow(u64::from(n) - k as u64);
                prop_assert_eq!(&(x * &w), y);
            }
        }

        #[test]
        fn generated_semi_invariants(i in 0u32..4, m in 0u32..4, c in -5i64..6, idx in 0usize..7) {
            prop_assume!(c != 0);
            let f = &fields()[idx];
            let p = (&f.h1().pow(i) * &f.h2().pow(m)).scale(&q(c));
            let (mu, k) = f.classify_semi_invariant(&p, &BiPoly::one()).unwrap().unwrap();
            prop_assert_eq!(k, i64::from(i));
            prop_assert_eq!(f.apply_sigma(&p, 1), p.scale(&mu));
        }

        #[test]
        fn classification_is_sound(p in arb_homogeneous(3), r in arb_homogeneous(2), idx in 0usize..7) {
            let f = &fields()[idx];
            prop_assume!(!r.is_zero());
            if let Some((mu, i)) = f.classify_semi_invariant(&p, &r).unwrap() {
                let lhs = &f.apply_sigma(&p, 1) * &r;
                let rhs = (&p * &f.apply_sigma(&r, 1)).scale(&mu);
                prop_assert_eq!(lhs, rhs);
                let e = i64::from(p.degree().unwrap()) - i64::from(r.degree().unwrap()) - i;
                prop_assert_eq!(mu, &f.lambda1().powi(i).unwrap() * &f.lambda2().powi(e).unwrap());
            }
        }
    }
}
