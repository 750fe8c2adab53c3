use super::{BiPoly, Monomial, UPoly};
use crate::error::{Error, Result};

/// Monic greatest common divisor.
///
/// Homogeneous inputs are handled as univariate gcds in `α/β` plus the
/// common power of β. Anything else goes through a primitive remainder
/// sequence in α over K[β].
pub fn poly_gcd(p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial),
        (true, false) => return Ok(q.monic()),
        (false, true) => return Ok(p.monic()),
        _ => {}
    }
    if p.is_homogeneous() && q.is_homogeneous() {
        Ok(homogeneous_gcd(p, q))
    } else {
        Ok(prs_gcd(p, q))
    }
}

/// `p(x, 1)` with the α exponent as the power of `x`, and the β-power
/// stripped off.
fn dehomogenize(p: &BiPoly) -> (UPoly, u32) {
    let beta_power = p.terms().map(|(m, _)| m.beta).min().unwrap_or(0);
    let mut u = UPoly::zero();
    for (m, c) in p.terms() {
        u.set(m.alpha as usize, c.clone());
    }
    (u, beta_power)
}

fn homogeneous_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    let (up, ep) = dehomogenize(p);
    let (uq, eq) = dehomogenize(q);
    let g = up.gcd(&uq);
    let k = g.degree().unwrap_or(0) as u32;
    let e = ep.min(eq);
    BiPoly::from_terms(
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::new(i as u32, k - i as u32 + e), c.clone())),
    )
}

fn content(rows: &[UPoly]) -> UPoly {
    rows.iter()
        .filter(|r| !r.is_zero())
        .fold(UPoly::zero(), |g, r| g.gcd(r))
}

fn primitive(rows: &[UPoly]) -> (UPoly, Vec<UPoly>) {
    let c = content(rows);
    let pp = rows.iter().map(|r| r.div_rem(&c).0).collect();
    (c, pp)
}

fn trim(rows: &mut Vec<UPoly>) {
    while rows.last().is_some_and(UPoly::is_zero) {
        rows.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in α (both nonzero, `b` trimmed).
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<UPoly> = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        for row in r.iter_mut() {
            *row = row.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&bj.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

fn prs_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    let (cp, mut a) = primitive(&p.to_alpha_rows());
    let (cq, mut b) = primitive(&q.to_alpha_rows());
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_empty() {
            b = Vec::new();
            break;
        }
        b = primitive(&r).1;
        trim(&mut b);
    }
    // a constant-in-α remainder means the primitive parts are coprime
    let pp = if b.is_empty() { a } else { vec![UPoly::one()] };
    let c = cp.gcd(&cq);
    let rows: Vec<UPoly> = pp.iter().map(|r| r.mul(&c)).collect();
    BiPoly::from_alpha_rows(&rows).monic()
}
