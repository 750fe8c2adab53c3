//! Polynomial solutions of `a·σg + b·g = f`.
//!
//! Every solution is a particular one plus an element of the kernel
//! `a·σg + b·g = 0`. The leading homogeneous part `g_d` of a kernel element
//! satisfies `a_n·σg_d + b_n·g_d = 0`, and after stripping that pins `d` to
//! a set read off the unit equation `λ₁ⁱλ₂ʲ = μ`. The actual coefficients
//! come from one exact linear solve over all monomials up to the largest
//! admissible degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::bipoly::{reduced_basis, BiPoly, Monomial};
use crate::difffield::{DiffField, ExpSolSet};
use crate::error::{Error, Result};
use crate::qfield::{linsolve, Matrix, QElem};
use crate::spread::{strip_with, StripResult, DEFAULT_MAX_SHIFT};

/// Largest finite support element the default cap will reach for.
pub const FINITE_CAP_LIMIT: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Progression {
    pub d0: u32,
    pub delta: u32,
}

/// Degrees a kernel element's leading part may have: the listed ones plus,
/// when present, `d0, d0 + Δ, d0 + 2Δ, …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SupportSet {
    pub finite: Vec<u32>,
    pub progression: Option<Progression>,
}

impl SupportSet {
    pub fn empty() -> SupportSet {
        SupportSet::default()
    }

    pub fn from_degrees(mut ds: Vec<u32>) -> SupportSet {
        ds.sort_unstable();
        ds.dedup();
        SupportSet {
            finite: ds,
            progression: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.progression.is_none()
    }

    pub fn contains(&self, d: u32) -> bool {
        self.finite.contains(&d)
            || self
                .progression
                .is_some_and(|p| d >= p.d0 && (d - p.d0).is_multiple_of(p.delta))
    }

    /// Members `≤ cap`, ascending.
    pub fn up_to(&self, cap: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.finite.iter().copied().filter(|&d| d <= cap).collect();
        if let Some(p) = self.progression {
            out.extend((p.d0..=cap).step_by(p.delta as usize));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn max_up_to(&self, cap: u32) -> Option<u32> {
        self.up_to(cap).last().copied()
    }

    /// Whether members beyond `cap` exist.
    pub fn exceeds(&self, cap: u32) -> bool {
        self.progression.is_some() || self.finite.iter().any(|&d| d > cap)
    }

    /// Intersection restricted to degrees `≤ cap`.
    pub fn intersect_up_to(&self, other: &SupportSet, cap: u32) -> SupportSet {
        SupportSet::from_degrees(self.up_to(cap).into_iter().filter(|&d| other.contains(d)).collect())
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.finite.iter().map(u32::to_string).collect();
        if let Some(p) = self.progression {
            for k in 0..3 {
                let d = p.d0 + k * p.delta;
                if !self.finite.contains(&d) {
                    items.push(d.to_string());
                }
            }
            items.push("...".into());
        }
        write!(f, "{{{}}}", items.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Highest kernel degree searched; a default is derived from the
    /// support set when absent.
    pub cap: Option<u32>,
    /// Also require every homogeneous component pair `(a_i, b_i)` to admit
    /// the leading degree. Sound (all output is substituted back) but may
    /// lose kernel elements.
    pub component_pruning: bool,
    pub max_shift: u32,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions {
            cap: None,
            component_pruning: false,
            max_shift: DEFAULT_MAX_SHIFT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Option<BiPoly>,
    /// Reduced echelon basis of the kernel up to `cap_used`, ordered by
    /// leading monomial.
    pub kernel_basis: Vec<BiPoly>,
    /// Nonconstant σ-invariants `W`; `k·W` is in the kernel for every
    /// kernel element `k`.
    pub invariant_family: Vec<BiPoly>,
    pub support: SupportSet,
    pub strip: Option<StripResult>,
    pub cap_used: u32,
    pub complete_up_to_cap: bool,
    pub diagnostics: Vec<String>,
}

impl SolutionSet {
    /// Dimension of the kernel restricted to degree `≤ d`.
    pub fn kernel_dim(&self, d: u32) -> usize {
        self.kernel_basis
            .iter()
            .filter(|k| k.degree().is_some_and(|e| e <= d))
            .count()
    }

    pub fn kernel_dims(&self, up_to: u32) -> Vec<usize> {
        (0..=up_to).map(|d| self.kernel_dim(d)).collect()
    }
}

/// `a·σg + b·g − f == 0`.
pub fn verify_solution(a: &BiPoly, b: &BiPoly, f: &BiPoly, g: &BiPoly, fld: &DiffField) -> bool {
    (&(&(a * &fld.apply_sigma(g, 1)) + &(b * g)) - f).is_zero()
}

fn ceil_div(x: i64, s: i64) -> i64 {
    -((-x).div_euclid(s))
}

/// Degrees `d` for which the leading equation `a_n·σw + b_n·w = 0` can
/// have a nonzero homogeneous solution `w` of degree `d`.
pub fn support_set(a_n: &BiPoly, b_n: &BiPoly, fld: &DiffField) -> Result<(SupportSet, StripResult)> {
    support_set_with(a_n, b_n, fld, DEFAULT_MAX_SHIFT)
}

pub fn support_set_with(a_n: &BiPoly, b_n: &BiPoly, fld: &DiffField, max_shift: u32) -> Result<(SupportSet, StripResult)> {
    if a_n.degree() != b_n.degree() {
        return Err(Error::Invalid("leading forms must have equal degree".into()));
    }
    let s = strip_with(a_n, b_n, fld, max_shift)?;
    let Some(mu) = s.ratio.clone() else {
        return Ok((SupportSet::empty(), s));
    };
    let sols = fld.solve_unit_eq(&mu)?;
    let (h1, h2) = fld.eigen_valuations(&s.h)?;
    let (t1, t2) = fld.eigen_valuations(&s.t)?;
    let dh = i64::from(s.h.degree().unwrap());
    let dt = i64::from(s.t.degree().unwrap());
    // w = c·h₁ⁱh₂ʲ·h/t: the eigen exponents of w are i + c1 and j + c2, and
    // the part of t away from h₁, h₂ has to cancel against h
    let (c1, c2) = (i64::from(h1) - i64::from(t1), i64::from(h2) - i64::from(t2));
    if dt - i64::from(t1 + t2) > dh - i64::from(h1 + h2) {
        return Ok((SupportSet::empty(), s));
    }
    let degree = |i: i64, j: i64| i + j + dh - dt;
    let to_u32 = |d: i64| u32::try_from(d).map_err(|_| Error::Invalid(format!("degree {d} out of range")));

    let support = match sols {
        ExpSolSet::Empty => SupportSet::empty(),
        ExpSolSet::Single(i, j) => {
            if i + c1 >= 0 && j + c2 >= 0 {
                SupportSet::from_degrees(vec![to_u32(degree(i, j))?])
            } else {
                SupportSet::empty()
            }
        }
        ExpSolSet::Coset { base, step } => {
            let (mut lo, mut hi): (Option<i64>, Option<i64>) = (None, None);
            for (x, st) in [(base.0 + c1, step.0), (base.1 + c2, step.1)] {
                match st.signum() {
                    1 => lo = Some(lo.map_or(ceil_div(-x, st), |l| l.max(ceil_div(-x, st)))),
                    -1 => hi = Some(hi.map_or(x.div_euclid(-st), |h| h.min(x.div_euclid(-st)))),
                    _ if x < 0 => return Ok((SupportSet::empty(), s)),
                    _ => {}
                }
            }
            let at = |k: i64| degree(base.0 + k * step.0, base.1 + k * step.1);
            let delta = step.0 + step.1;
            match (lo, hi) {
                (Some(l), Some(h)) if l > h => SupportSet::empty(),
                (Some(l), Some(h)) => SupportSet::from_degrees((l..=h).map(|k| to_u32(at(k))).collect::<Result<_>>()?),
                (Some(l), None) if delta > 0 => progression(to_u32(at(l))?, delta)?,
                (None, Some(h)) if delta < 0 => progression(to_u32(at(h))?, -delta)?,
                (Some(k), None) | (None, Some(k)) if delta == 0 => SupportSet::from_degrees(vec![to_u32(at(k))?]),
                _ => {
                    return Err(Error::Invalid(format!(
                        "unbounded support in the decreasing direction for {sols:?}"
                    )))
                }
            }
        }
    };
    Ok((support, s))
}

fn progression(d0: u32, delta: i64) -> Result<SupportSet> {
    let delta = u32::try_from(delta).map_err(|_| Error::Invalid("progression step out of range".into()))?;
    Ok(SupportSet {
        finite: vec![d0],
        progression: Some(Progression { d0, delta }),
    })
}

/// `max(d*, largest finite element ≤ 32, d₀ + 2Δ)`.
pub fn default_cap(support: &SupportSet, d_star: Option<u32>) -> u32 {
    let finite = support
        .finite
        .iter()
        .copied()
        .filter(|&d| d <= FINITE_CAP_LIMIT)
        .max()
        .unwrap_or(0);
    let prog = support.progression.map_or(0, |p| p.d0 + 2 * p.delta);
    d_star.unwrap_or(0).max(finite).max(prog)
}

/// `a·σm + b·m` for each monomial `m`.
fn operator_images(a: &BiPoly, b: &BiPoly, fld: &DiffField, monos: &[Monomial]) -> Vec<BiPoly> {
    let (sa, sb) = fld.sigma().images(1);
    let max_a = monos.iter().map(|m| m.alpha).max().unwrap_or(0);
    let max_b = monos.iter().map(|m| m.beta).max().unwrap_or(0);
    let pa: Vec<BiPoly> = (0..=max_a).map(|e| sa.pow(e)).collect();
    let pb: Vec<BiPoly> = (0..=max_b).map(|e| sb.pow(e)).collect();
    monos
        .iter()
        .map(|m| {
            let shifted = &pa[m.alpha as usize] * &pb[m.beta as usize];
            &(a * &shifted) + &b.mul_monomial(*m)
        })
        .collect()
}

/// The system `Σ x_m·L(m) = f` over the given column monomials.
fn build_system(images: &[BiPoly], f: &BiPoly) -> (Matrix, Vec<QElem>) {
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in images.iter().chain(std::iter::once(f)) {
        for (m, _) in p.terms() {
            rows.insert(*m, 0);
        }
    }
    for (idx, slot) in rows.values_mut().enumerate() {
        *slot = idx;
    }
    let mut dense = vec![vec![QElem::zero(); images.len()]; rows.len()];
    for (col, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            dense[rows[m]][col] = c.clone();
        }
    }
    let rhs = rows.keys().map(|m| f.coeff(*m)).collect();
    (Matrix::from_rows(images.len(), dense), rhs)
}

fn from_columns(monos: &[Monomial], x: &[QElem]) -> BiPoly {
    BiPoly::from_terms(monos.iter().copied().zip(x.iter().cloned()))
}

/// Kernel elements of degree `≤ degree`, reduced and ordered by leading
/// monomial.
pub fn kernel_up_to(a: &BiPoly, b: &BiPoly, fld: &DiffField, degree: u32) -> Vec<BiPoly> {
    let monos: Vec<Monomial> = Monomial::up_to_degree(degree).collect();
    let images = operator_images(a, b, fld, &monos);
    let (mat, rhs) = build_system(&images, &BiPoly::zero());
    let sol = linsolve(&mat, &rhs);
    let polys: Vec<BiPoly> = sol.nullspace_basis.iter().map(|x| from_columns(&monos, x)).collect();
    reduced_basis(&polys)
}

/// A solution of `a·σg + b·g = f` of degree `≤ degree`, with every free
/// coordinate zero (columns in descending monomial order).
pub fn particular_solution(a: &BiPoly, b: &BiPoly, f: &BiPoly, fld: &DiffField, degree: u32) -> Option<BiPoly> {
    if f.is_zero() {
        return Some(BiPoly::zero());
    }
    let monos: Vec<Monomial> = Monomial::up_to_degree(degree).collect();
    let images = operator_images(a, b, fld, &monos);
    let (mat, rhs) = build_system(&images, f);
    linsolve(&mat, &rhs).particular.map(|x| from_columns(&monos, &x))
}

/// `deg f − max(deg a, deg b)` when nonnegative.
pub fn d_star(a: &BiPoly, b: &BiPoly, f: &BiPoly) -> Option<u32> {
    let n = a.degree().max(b.degree())?;
    f.degree()?.checked_sub(n)
}

struct KernelPlan {
    support: SupportSet,
    strip: Option<StripResult>,
    cap: u32,
    top: Option<u32>,
    diagnostics: Vec<String>,
}

fn plan_kernel(a: &BiPoly, b: &BiPoly, fld: &DiffField, d_star: Option<u32>, opts: &SolveOptions) -> Result<KernelPlan> {
    let mut diagnostics = Vec::new();
    if a.degree() != b.degree() {
        diagnostics.push("deg a != deg b, so the kernel is {0}".to_string());
        let cap = opts.cap.unwrap_or_else(|| d_star.unwrap_or(0));
        return Ok(KernelPlan {
            support: SupportSet::empty(),
            strip: None,
            cap,
            top: None,
            diagnostics,
        });
    }
    let n = a.degree().unwrap();
    let (support, strip) = support_set_with(&a.homogeneous_part(n), &b.homogeneous_part(n), fld, opts.max_shift)?;
    match &strip.ratio {
        Some(mu) => diagnostics.push(format!(
            "leading forms reduce to sigma(w*t/h) = ({mu})*(w*t/h) with t = {}, h = {}",
            strip.t, strip.h
        )),
        None => diagnostics.push(format!(
            "leading forms reduce to the non-constant ratio -({})/({}); no leading kernel part exists",
            strip.b_final, strip.a_final
        )),
    }
    diagnostics.push(format!("support set of kernel degrees: {support}"));
    let cap = opts.cap.unwrap_or_else(|| default_cap(&support, d_star));
    let mut admissible = support.clone();
    if opts.component_pruning {
        for i in 0..n {
            let (ai, bi) = (a.homogeneous_part(i), b.homogeneous_part(i));
            let part = match (ai.is_zero(), bi.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => SupportSet::empty(),
                (false, false) => support_set_with(&ai, &bi, fld, opts.max_shift)?.0,
            };
            diagnostics.push(format!("degree-{i} component pair admits {part}"));
            admissible = admissible.intersect_up_to(&part, cap);
        }
        diagnostics.push(format!("after component pruning: {admissible}"));
    }
    let top = admissible.max_up_to(cap);
    Ok(KernelPlan {
        support,
        strip: Some(strip),
        cap,
        top,
        diagnostics,
    })
}

fn invariant_family(fld: &DiffField) -> Vec<BiPoly> {
    match fld.lattice().generator {
        Some((x, y)) if x >= 0 && y >= 0 => fld
            .invariant_generators((x + y) as u32)
            .into_iter()
            .filter(|w| !w.is_constant())
            .collect(),
        _ => Vec::new(),
    }
}

fn check(a: &BiPoly, b: &BiPoly, f: &BiPoly, g: &BiPoly, fld: &DiffField) -> Result<()> {
    if verify_solution(a, b, f, g, fld) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("substitution check failed for {g}")))
    }
}

/// Kernel of `a·σg + b·g = 0` up to the cap.
pub fn solve_homogeneous(a: &BiPoly, b: &BiPoly, fld: &DiffField, opts: &SolveOptions) -> Result<SolutionSet> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let plan = plan_kernel(a, b, fld, None, opts)?;
    finish_kernel(a, b, fld, plan, BiPoly::zero(), None)
}

fn finish_kernel(
    a: &BiPoly,
    b: &BiPoly,
    fld: &DiffField,
    plan: KernelPlan,
    f: BiPoly,
    particular: Option<BiPoly>,
) -> Result<SolutionSet> {
    let kernel_basis = match plan.top {
        Some(d) => kernel_up_to(a, b, fld, d),
        None => Vec::new(),
    };
    let zero = BiPoly::zero();
    for k in &kernel_basis {
        check(a, b, &zero, k, fld)?;
    }
    if let Some(g) = &particular {
        check(a, b, &f, g, fld)?;
    }
    let mut diagnostics = plan.diagnostics;
    for k in &kernel_basis {
        let stray: Vec<u32> = k
            .hom_components()
            .into_iter()
            .map(|(d, _)| d)
            .filter(|d| !plan.support.contains(*d))
            .collect();
        if !stray.is_empty() {
            diagnostics.push(format!(
                "kernel element {k} has lower components in degrees {stray:?} outside the support set"
            ));
        }
    }
    let invariant_family = if !kernel_basis.is_empty() && plan.support.exceeds(plan.cap) {
        invariant_family(fld)
    } else {
        Vec::new()
    };
    if !invariant_family.is_empty() {
        let ws: Vec<String> = invariant_family.iter().map(|w| w.to_string()).collect();
        diagnostics.push(format!(
            "the kernel continues past the cap: k*W is a solution for every kernel element k and sigma-invariant W in [{}]",
            ws.join(", ")
        ));
    }
    Ok(SolutionSet {
        particular,
        kernel_basis,
        invariant_family,
        support: plan.support,
        strip: plan.strip,
        cap_used: plan.cap,
        complete_up_to_cap: true,
        diagnostics,
    })
}

/// When `a`, `b` are constants, `a·σ + b` acts diagonally on eigen
/// monomials; a component of `f` on a monomial it annihilates cannot be
/// reached.
fn obstruction(a: &BiPoly, b: &BiPoly, f: &BiPoly, fld: &DiffField) -> Option<String> {
    let (ca, cb) = (a.as_constant()?, b.as_constant()?);
    for (d, part) in f.hom_components() {
        let coeffs = fld.to_eigen(&part).ok()?;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u32;
            let mu = &fld.lambda1().pow(u64::from(k)) * &fld.lambda2().pow(u64::from(d - k));
            if (&(&ca * &mu) + &cb).is_zero() {
                let w = fld.from_eigen(&unit_vector(d, k));
                let kind = if mu.is_one() { "sigma-invariant" } else { "sigma-semi-invariant" };
                return Some(format!(
                    "obstruction: f has a nonzero component along the {kind} eigen monomial h1^{k}*h2^{} = {w}, \
                     which a*sigma(g) + b*g can never produce",
                    d - k
                ));
            }
        }
    }
    None
}

fn unit_vector(d: u32, k: u32) -> Vec<QElem> {
    (0..=d).map(|i| if i == k { QElem::one() } else { QElem::zero() }).collect()
}

/// All polynomial solutions up to the cap: a particular solution (if any)
/// plus the kernel, each checked by substitution.
pub fn solve_full(a: &BiPoly, b: &BiPoly, f: &BiPoly, fld: &DiffField, opts: &SolveOptions) -> Result<SolutionSet> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ds = d_star(a, b, f);
    let plan = plan_kernel(a, b, fld, ds, opts)?;
    // a solution of degree above d* has its leading part in the kernel of
    // the leading equation, hence in the support set
    let search = match (ds, plan.support.max_up_to(plan.cap)) {
        (None, None) => None,
        (x, y) => Some(x.unwrap_or(0).max(y.unwrap_or(0))),
    };
    let particular = if f.is_zero() {
        Some(BiPoly::zero())
    } else {
        search.and_then(|d| particular_solution(a, b, f, fld, d))
    };
    let mut set = finish_kernel(a, b, fld, plan, f.clone(), particular)?;
    if set.particular.is_none() {
        let bound = search.map_or("any degree".to_string(), |d| format!("degree {d}"));
        set.diagnostics.push(format!("no polynomial solution up to {bound}"));
        if let Some(msg) = obstruction(a, b, f, fld) {
            set.diagnostics.push(msg);
        }
    }
    Ok(set)
}
