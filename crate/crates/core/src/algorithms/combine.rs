//! Combinations: the union over all outermost cut-bearing subterms.

use super::cv::bc_f_cv;
use super::rv::{bc_f_rv1, bc_f_rv2};
use super::sa::{prepare, systems_for, SemiAlgSystem};
use super::{active_cuts, subterm_text, CutSet, MethodChoice, Options, Warning, WarningKind};
use crate::expr::subterms::{cut_bearing_subterms, to_rational_function, Subterm};
use crate::expr::Expr;

fn analyse(sub: &Subterm, opts: &Options) -> CutSet {
    if !sub.argument().contains_var() {
        let mut out = CutSet::default();
        out.warn(Warning::new(
            WarningKind::NotSupported,
            format!("{} depends on z only through a parameter slot; not analysed", subterm_text(sub)),
        ));
        return out;
    }
    let rational = to_rational_function(sub.argument()).is_some();
    match opts.method {
        MethodChoice::Auto if rational => bc_f_rv1(sub, opts),
        MethodChoice::Auto | MethodChoice::Parametric => bc_f_cv(sub, opts),
        MethodChoice::Real if rational => bc_f_rv1(sub, opts),
        MethodChoice::Real => match bc_f_rv2(sub, opts) {
            Ok(cs) => cs,
            Err(e) => {
                let mut out = bc_f_cv(sub, opts);
                out.warn(Warning::new(
                    WarningKind::NotSupported,
                    format!("{e}; used the parametric method for {} instead", subterm_text(sub)),
                ));
                out
            }
        },
    }
}

/// Union of the cuts of every outermost cut-bearing subterm of `e`, provenance kept.
pub fn bc_c(e: &Expr, opts: &Options) -> CutSet {
    let e = e.substitute_params(&opts.params);
    let subs = cut_bearing_subterms(&e);
    let parts = crate::par::map(&subs, |s| analyse(s, opts));
    let mut out = CutSet::default();
    for p in parts {
        out.extend(p);
    }
    out.normalize();
    out
}

/// Semi-algebraic systems for every cut-bearing subterm, outer subterms first.
pub fn bc_c_sa(e: &Expr, opts: &Options) -> (Vec<SemiAlgSystem>, Vec<Warning>) {
    let e = e.substitute_params(&opts.params);
    let mut systems = Vec::new();
    let mut warnings = CutSet::default();
    for sub in cut_bearing_subterms(&e) {
        if !sub.argument().contains_var() {
            continue;
        }
        let cuts = active_cuts(&sub, &opts.params, &mut warnings);
        match prepare(sub.argument()) {
            Ok(prep) => systems.extend(systems_for(&prep, &cuts).into_iter().map(|(_, s)| s)),
            Err(err) => warnings.warn(Warning::new(WarningKind::NotSupported, err.to_string())),
        }
        let (inner, w) = bc_c_sa(sub.argument(), opts);
        systems.extend(inner);
        for x in w {
            warnings.warn(x);
        }
    }
    (systems, warnings.warnings)
}
