//! JSON and plain-text rendering of results.

use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::difffield::DiffField;
use crate::solver::{SolutionSet, SupportSet};
use crate::spread::StripResult;
use crate::telescope::Identity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solved,
    NoParticular,
    EmptyKernel,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldJson {
    pub u: String,
    pub v: String,
    #[serde(rename = "D")]
    pub d: String,
    pub lambda1: String,
    pub lambda2: String,
}

impl FieldJson {
    pub fn new(fld: &DiffField) -> FieldJson {
        FieldJson {
            u: fld.u().to_string(),
            v: fld.v().to_string(),
            d: fld.discriminant().to_string(),
            lambda1: fld.lambda1().to_string(),
            lambda2: fld.lambda2().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProgressionJson {
    pub d0: u32,
    pub delta: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SupportJson {
    pub finite: Vec<u32>,
    pub progression: Option<ProgressionJson>,
}

impl From<&SupportSet> for SupportJson {
    fn from(s: &SupportSet) -> SupportJson {
        SupportJson {
            finite: s.finite.clone(),
            progression: s.progression.map(|p| ProgressionJson {
                d0: p.d0,
                delta: p.delta,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityJson {
    pub closed_form: String,
    pub verified_up_to: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub alpha: u32,
    pub beta: u32,
    pub coeff: String,
}

pub fn sparse_terms(p: &BiPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson {
            alpha: m.alpha,
            beta: m.beta,
            coeff: c.to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermsJson {
    pub particular: Option<Vec<TermJson>>,
    pub kernel_basis: Vec<Vec<TermJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpreadJson {
    /// `Spr(a, b)`.
    pub forward: Vec<u32>,
    /// `Spr(b, a)`.
    pub backward: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripJson {
    pub a_final: String,
    pub b_final: String,
    pub t: String,
    pub h: String,
    pub ratio: Option<String>,
}

impl From<&StripResult> for StripJson {
    fn from(s: &StripResult) -> StripJson {
        StripJson {
            a_final: s.a_final.to_string(),
            b_final: s.b_final.to_string(),
            t: s.t.to_string(),
            h: s.h.to_string(),
            ratio: s.ratio.as_ref().map(|r| r.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundJson {
    pub d_star: Option<u32>,
    /// Largest possible kernel degree; absent when unbounded.
    pub kernel_degree_bound: Option<u32>,
    pub unbounded: bool,
}

/// Top-level document; the optional trailing keys appear only for the
/// commands that produce them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub status: Status,
    pub field: Option<FieldJson>,
    pub particular: Option<String>,
    pub kernel_basis: Vec<String>,
    pub support: SupportJson,
    pub identity: Option<IdentityJson>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<TermsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spread: Option<SpreadJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strip: Option<StripJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl Report {
    pub fn new(status: Status, fld: Option<&DiffField>) -> Report {
        Report {
            status,
            field: fld.map(FieldJson::new),
            particular: None,
            kernel_basis: Vec::new(),
            support: SupportJson::default(),
            identity: None,
            diagnostics: Vec::new(),
            terms: None,
            spread: None,
            strip: None,
            bound: None,
            verified: None,
        }
    }

    pub fn error(msg: impl Into<String>, fld: Option<&DiffField>) -> Report {
        let mut r = Report::new(Status::Error, fld);
        r.diagnostics.push(msg.into());
        r
    }

    /// `solved` when a particular solution exists (or, for `f = 0`, the
    /// kernel is nontrivial).
    pub fn from_solution(fld: &DiffField, sol: &SolutionSet, homogeneous: bool) -> Report {
        let status = match (&sol.particular, homogeneous) {
            (_, true) if sol.kernel_basis.is_empty() => Status::EmptyKernel,
            (_, true) => Status::Solved,
            (Some(_), false) => Status::Solved,
            (None, false) => Status::NoParticular,
        };
        let mut r = Report::new(status, Some(fld));
        r.particular = sol.particular.as_ref().map(BiPoly::to_string);
        r.kernel_basis = sol.kernel_basis.iter().map(BiPoly::to_string).collect();
        r.support = (&sol.support).into();
        r.diagnostics = sol.diagnostics.clone();
        r.diagnostics.push(format!("kernel searched up to degree {}", sol.cap_used));
        r.terms = Some(TermsJson {
            particular: sol.particular.as_ref().map(sparse_terms),
            kernel_basis: sol.kernel_basis.iter().map(sparse_terms).collect(),
        });
        r.strip = sol.strip.as_ref().map(StripJson::from);
        r
    }

    pub fn with_identity(mut self, id: &Identity) -> Report {
        self.identity = Some(IdentityJson {
            closed_form: id.closed_form.clone(),
            verified_up_to: id.verified_up_to,
        });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        out.push(format!("status: {}", status_name(self.status)));
        if let Some(f) = &self.field {
            out.push(format!(
                "field: u = {}, v = {}, D = {}, lambda1 = {}, lambda2 = {}",
                f.u, f.v, f.d, f.lambda1, f.lambda2
            ));
        }
        if let Some(id) = &self.identity {
            out.push(format!("identity: {}", id.closed_form));
            out.push(format!("verified for every m up to {}", id.verified_up_to));
        }
        if let Some(p) = &self.particular {
            out.push(format!("particular: {p}"));
        }
        if self.terms.is_some() {
            if self.kernel_basis.is_empty() {
                out.push("kernel: {0}".to_string());
            } else {
                out.push("kernel basis:".to_string());
                out.extend(self.kernel_basis.iter().map(|k| format!("  {k}")));
            }
        }
        if let Some(s) = &self.spread {
            out.push(format!("Spr(a, b) = {:?}", s.forward));
            out.push(format!("Spr(b, a) = {:?}", s.backward));
        }
        if let Some(s) = &self.strip {
            out.push(format!(
                "strip: a' = {}, b' = {}, t = {}, h = {}, ratio = {}",
                s.a_final,
                s.b_final,
                s.t,
                s.h,
                s.ratio.as_deref().unwrap_or("none")
            ));
        }
        if let Some(b) = &self.bound {
            let d = b.d_star.map_or("none".to_string(), |d| d.to_string());
            let k = if b.unbounded {
                "unbounded".to_string()
            } else {
                b.kernel_degree_bound.map_or("none".to_string(), |d| d.to_string())
            };
            out.push(format!("d* = {d}, kernel degree bound = {k}"));
        }
        if let Some(v) = self.verified {
            out.push(format!("verified: {v}"));
        }
        out.extend(self.diagnostics.iter().map(|d| format!("note: {d}")));
        out.join("\n")
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Solved => "solved",
        Status::NoParticular => "no_particular",
        Status::EmptyKernel => "empty_kernel",
        Status::Error => "error",
    }
}
