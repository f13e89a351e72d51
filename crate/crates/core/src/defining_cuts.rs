//! Table of the cuts of each supported function, loaded from `data/defining_cuts.toml`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::expr::{Expr, Func};
use crate::interval::{Bound, ExtInterval};
use crate::num::parse_rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Real,
    Imaginary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutCondition {
    /// Present only when the function's order parameter is not an integer.
    OrderNotInteger,
}

/// One cut of a function's principal branch: `w = t` (real axis) or `w = i*t` (imaginary axis), `t` in `range`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningCut {
    pub axis: Axis,
    pub range: ExtInterval,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<CutCondition>,
}

impl DefiningCut {
    pub fn contains_f64(&self, w: num_complex::Complex64, tol: f64) -> bool {
        let (on, t) = match self.axis {
            Axis::Real => (w.im.abs() <= tol, w.re),
            Axis::Imaginary => (w.re.abs() <= tol, w.im),
        };
        if !on {
            return false;
        }
        t >= self.range.lo.to_f64() - tol && t <= self.range.hi.to_f64() + tol
    }
}

impl fmt::Display for DefiningCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.axis {
            Axis::Real => "w",
            Axis::Imaginary => "w/I",
        };
        write!(f, "{w} in {}", self.range)?;
        if self.condition.is_some() {
            write!(f, " (order not an integer)")?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawCut {
    axis: Axis,
    lo: String,
    hi: String,
    lo_open: bool,
    hi_open: bool,
    #[serde(default)]
    condition: Option<CutCondition>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    cuts: Vec<RawCut>,
}

#[derive(Deserialize)]
struct RawTable {
    function: Vec<RawEntry>,
}

fn bound(s: &str) -> Bound {
    match s {
        "-inf" => Bound::NegInf,
        "inf" => Bound::PosInf,
        _ => Bound::rat(parse_rat(s).unwrap_or_else(|| panic!("bad bound {s:?} in cut table"))),
    }
}

static TABLE: LazyLock<BTreeMap<String, Vec<DefiningCut>>> = LazyLock::new(|| {
    let raw: RawTable = toml::from_str(include_str!("../data/defining_cuts.toml")).expect("cut table parses");
    raw.function
        .into_iter()
        .map(|e| {
            let cuts = e
                .cuts
                .into_iter()
                .map(|c| DefiningCut {
                    axis: c.axis,
                    range: ExtInterval::new(bound(&c.lo), bound(&c.hi), c.lo_open, c.hi_open),
                    condition: c.condition,
                })
                .collect();
            (e.name, cuts)
        })
        .collect()
});

/// Cuts of a named function (empty when single valued).
pub fn lookup(f: Func) -> &'static [DefiningCut] {
    TABLE.get(f.name()).map(Vec::as_slice).unwrap_or(&[])
}

/// Cuts of `w^q` for non-integer `q`.
pub fn lookup_power() -> &'static [DefiningCut] {
    TABLE.get("power").map(Vec::as_slice).unwrap_or(&[])
}

/// Names present in the table, for diagnostics.
pub fn table_names() -> Vec<&'static str> {
    TABLE.keys().map(String::as_str).collect()
}

/// Whether an expression node is itself cut-bearing (not looking inside it).
pub fn has_cuts(e: &Expr) -> bool {
    match e {
        Expr::Apply { func, .. } => !lookup(*func).is_empty(),
        Expr::Pow(_, q) => !q.is_integer(),
        _ => false,
    }
}

/// The defining cuts of a cut-bearing node.
pub fn cuts_of(e: &Expr) -> &'static [DefiningCut] {
    match e {
        Expr::Apply { func, .. } => lookup(*func),
        Expr::Pow(_, q) if !q.is_integer() => lookup_power(),
        _ => &[],
    }
}
