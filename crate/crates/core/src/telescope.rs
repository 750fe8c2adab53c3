//! Indefinite sums of `f(s_n, s_{n+1})` over a sequence with
//! `s_{n+2} = u·s_n + v·s_{n+1}`.
//!
//! A telescoper `g` with `σg − g = f` gives
//! `Σ_{n=n₀}^{m} f(s_n, s_{n+1}) = g(s_{m+1}, s_{m+2}) − g(s_{n₀}, s_{n₀+1})`.

use crate::bipoly::BiPoly;
use crate::difffield::DiffField;
use crate::error::{Error, Result};
use crate::qfield::{rat, QElem, Rat};
use crate::solver::{solve_full, SolutionSet, SolveOptions};

pub const DEFAULT_VERIFY_TERMS: u32 = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub u: Rat,
    pub v: Rat,
    pub s0: Rat,
    pub s1: Rat,
    /// First summation index.
    pub n0: u32,
}

impl Recurrence {
    pub fn new(u: Rat, v: Rat, s0: Rat, s1: Rat, n0: u32) -> Recurrence {
        Recurrence { u, v, s0, s1, n0 }
    }

    pub fn fibonacci() -> Recurrence {
        Recurrence::new(rat(1), rat(1), rat(0), rat(1), 0)
    }

    pub fn pell() -> Recurrence {
        Recurrence::new(rat(1), rat(2), rat(0), rat(1), 0)
    }

    pub fn jacobsthal() -> Recurrence {
        Recurrence::new(rat(2), rat(1), rat(0), rat(1), 0)
    }

    pub fn starting_at(mut self, n0: u32) -> Recurrence {
        self.n0 = n0;
        self
    }

    /// `s_0, …, s_n`.
    pub fn terms(&self, n: usize) -> Vec<Rat> {
        let mut s = vec![self.s0.clone(), self.s1.clone()];
        while s.len() <= n {
            let k = s.len();
            let next = &self.u * &s[k - 2] + &self.v * &s[k - 1];
            s.push(next);
        }
        s.truncate(n + 1);
        s
    }

    pub fn field(&self) -> Result<DiffField> {
        DiffField::new(self.u.clone(), self.v.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub recurrence: Recurrence,
    pub summand: BiPoly,
    pub telescoper: BiPoly,
    pub closed_form: String,
    pub verified_up_to: u32,
}

impl Identity {
    /// `g(s_{n₀}, s_{n₀+1})`.
    pub fn boundary(&self) -> Rat {
        let s = self.recurrence.terms(self.recurrence.n0 as usize + 1);
        rational(&self.telescoper.eval(&s[s.len() - 2], &s[s.len() - 1]))
    }
}

fn rational(x: &QElem) -> Rat {
    x.as_rational().cloned().expect("rational coefficients give rational values")
}

/// Checks the closed form against term-by-term partial sums for every
/// `m` in `n₀..=upto`, exactly.
pub fn numeric_verify(id: &Identity, upto: u32) -> bool {
    let n0 = id.recurrence.n0;
    if upto < n0 {
        return true;
    }
    let s = id.recurrence.terms(upto as usize + 2);
    let boundary = id.boundary();
    let mut acc = Rat::from_integer(0.into());
    for m in n0 as usize..=upto as usize {
        acc += rational(&id.summand.eval(&s[m], &s[m + 1]));
        let rhs = rational(&id.telescoper.eval(&s[m + 1], &s[m + 2])) - &boundary;
        if acc != rhs {
            return false;
        }
    }
    true
}

fn closed_form(rec: &Recurrence, f: &BiPoly, g: &BiPoly) -> String {
    let lhs = f.render_with("s(n)", "s(n+1)");
    let s = rec.terms(rec.n0 as usize + 1);
    let boundary = rational(&g.eval(&s[s.len() - 2], &s[s.len() - 1]));
    let rhs = (g - &BiPoly::from_rat(boundary)).render_with("s(m+1)", "s(m+2)");
    format!("sum_{{n={}}}^{{m}} {lhs} = {rhs}", rec.n0)
}

#[derive(Clone, Debug)]
pub struct TelescopeResult {
    pub field: DiffField,
    pub solution: SolutionSet,
    /// Present exactly when a telescoper exists; always verified.
    pub identity: Option<Identity>,
}

/// Solves `σg − g = f` and, on success, produces a verified identity.
pub fn telescope_sum(rec: &Recurrence, f: &BiPoly, opts: &SolveOptions, verify_terms: u32) -> Result<TelescopeResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_rational() {
        return Err(Error::Invalid("the summand must have rational coefficients".into()));
    }
    let field = rec.field()?;
    let mut solution = solve_full(&BiPoly::one(), &BiPoly::from_int(-1), f, &field, opts)?;
    let identity = match &solution.particular {
        Some(g) => {
            let id = Identity {
                recurrence: rec.clone(),
                summand: f.clone(),
                telescoper: g.clone(),
                closed_form: closed_form(rec, f, g),
                verified_up_to: verify_terms.max(rec.n0),
            };
            if !numeric_verify(&id, id.verified_up_to) {
                return Err(Error::Invalid(format!(
                    "telescoper {g} failed numeric verification"
                )));
            }
            Some(id)
        }
        None => {
            solution.diagnostics.push("no polynomial telescoper".to_string());
            None
        }
    };
    Ok(TelescopeResult {
        field,
        solution,
        identity,
    })
}
