//! Branch-cut algorithms: real-variable (rational and squared radical arguments),
//! complex-parametric, combinations, and semi-algebraic output.

mod combine;
pub mod cv;
pub mod denest;
pub mod rv;
pub mod sa;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::CutClass;
use crate::defining_cuts::{CutCondition, DefiningCut};
use crate::expr::eval::{eval_numeric, Bindings};
use crate::expr::subterms::Subterm;
use crate::expr::Expr;
use crate::interval::ExtInterval;
use crate::poly::solve::RadicalSolution;

pub use combine::{bc_c, bc_c_sa};
pub use cv::bc_f_cv;
pub use denest::{denest, DenestError, Denested};
pub use rv::{bc_f_rv1, bc_f_rv2};
pub use sa::{bc_f_sa, SemiAlgSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rv1,
    Rv2,
    Cv,
}

/// How `bc_c` dispatches each subterm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Real,
    Parametric,
    #[default]
    Auto,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "real" | "realvariables" => Ok(MethodChoice::Real),
            "parametric" | "complexvariable" => Ok(MethodChoice::Parametric),
            "auto" => Ok(MethodChoice::Auto),
            _ => Err(format!("unknown method `{s}` (expected real, parametric or auto)")),
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Real => "real",
            MethodChoice::Parametric => "parametric",
            MethodChoice::Auto => "auto",
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub method: MethodChoice,
    /// Drop de-nesting branches that the sign certificate rules out.
    pub remove_denesting: bool,
    pub params: Bindings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Child indices of the cut-bearing subterm in the analysed expression.
    pub path: Vec<usize>,
    pub subterm: String,
    pub defining_cut: DefiningCut,
    /// Position of the defining cut in the function's table entry.
    pub cut_index: usize,
    pub denested: bool,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum CutForm {
    RealVariable { solution: RadicalSolution, free_range: ExtInterval },
    Parametric { z_of_a: Expr, a_range: ExtInterval },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCut {
    #[serde(flatten)]
    pub form: CutForm,
    pub provenance: Provenance,
    pub classification: CutClass,
}

impl BranchCut {
    pub fn new(form: CutForm, provenance: Provenance) -> Self {
        BranchCut { form, provenance, classification: CutClass::Unclassified }
    }

    /// The range of the curve parameter: the free coordinate, or `a`.
    pub fn range(&self) -> &ExtInterval {
        match &self.form {
            CutForm::RealVariable { free_range, .. } => free_range,
            CutForm::Parametric { a_range, .. } => a_range,
        }
    }

    /// The point of the cut at parameter value `t`.
    pub fn point_at(&self, t: f64) -> Option<Complex64> {
        match &self.form {
            CutForm::RealVariable { solution, .. } => solution.point(t).map(|(x, y)| Complex64::new(x, y)),
            CutForm::Parametric { z_of_a, .. } => eval_numeric(z_of_a, Complex64::new(t, 0.0), &Bindings::new()).ok(),
        }
    }

    /// Canonical infix form of the curve equation.
    pub fn solution_text(&self) -> String {
        match &self.form {
            CutForm::RealVariable { solution, .. } => solution.to_string(),
            CutForm::Parametric { z_of_a, .. } => format!("z = {}", z_of_a.with_var("a")),
        }
    }

    /// Whether two cuts describe the same curve piece (ignoring provenance).
    pub fn same_curve(&self, o: &BranchCut) -> bool {
        self.form == o.form
    }
}

impl fmt::Display for BranchCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            CutForm::RealVariable { solution, free_range } => {
                let free = solution.free();
                if *free_range == ExtInterval::whole() {
                    write!(f, "{{{solution}, {free} free}}")
                } else {
                    write!(f, "{{{solution}, {free} in {free_range}}}")
                }
            }
            CutForm::Parametric { a_range, .. } => write!(f, "{{{}, a in {a_range}}}", self.solution_text()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    ParameterConditional,
    IncompleteSolving,
    DenestingResidue,
    NotSupported,
    Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Warning {
    pub kind: WarningKind,
    pub message: String,
}

impl Warning {
    pub fn new(kind: WarningKind, message: impl Into<String>) -> Self {
        Warning { kind, message: message.into() }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSet {
    pub cuts: Vec<BranchCut>,
    pub warnings: Vec<Warning>,
}

impl CutSet {
    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn warn(&mut self, w: Warning) {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }

    pub fn extend(&mut self, other: CutSet) {
        self.cuts.extend(other.cuts);
        for w in other.warnings {
            self.warn(w);
        }
    }

    /// Stable order: subterm path, then defining cut; branch order within a cut is kept.
    pub fn normalize(&mut self) {
        self.cuts.sort_by(|a, b| {
            (&a.provenance.path, a.provenance.cut_index).cmp(&(&b.provenance.path, b.provenance.cut_index))
        });
    }

    /// Prefixes every provenance path, used when a cut set of a sub-expression is merged.
    pub fn prefix_paths(&mut self, prefix: &[usize]) {
        for c in &mut self.cuts {
            let mut p = prefix.to_vec();
            p.extend_from_slice(&c.provenance.path);
            c.provenance.path = p;
        }
    }
}

impl fmt::Display for CutSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cuts {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Defining cuts of a subterm after checking parameter conditions.
pub(crate) fn active_cuts(sub: &Subterm, params: &Bindings, out: &mut CutSet) -> Vec<(usize, DefiningCut)> {
    let all = crate::defining_cuts::cuts_of(&sub.node);
    let mut keep = Vec::new();
    for (i, c) in all.iter().enumerate() {
        match c.condition {
            None => keep.push((i, c.clone())),
            Some(CutCondition::OrderNotInteger) => {
                let order = match &sub.node {
                    Expr::Apply { params: ps, .. } => ps.first().cloned(),
                    _ => None,
                };
                let Some(order) = order else {
                    keep.push((i, c.clone()));
                    continue;
                };
                let bound = order.substitute_params(params);
                match bound.as_const() {
                    Some(k) if k.im == num_traits::Zero::zero() => {
                        if !k.re.is_integer() {
                            keep.push((i, c.clone()));
                        }
                    }
                    _ => {
                        out.warn(Warning::new(
                            WarningKind::ParameterConditional,
                            format!("branch cuts computed which only occur if {order} is not an integer"),
                        ));
                        keep.push((i, c.clone()));
                    }
                }
            }
        }
    }
    keep
}

pub(crate) fn subterm_text(sub: &Subterm) -> String {
    sub.node.to_string()
}
