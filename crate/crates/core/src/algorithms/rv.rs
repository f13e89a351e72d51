//! The real-variable method: rational arguments directly, radical arguments after squaring.

use super::denest::{real_part_sign, DenestError};
use super::sa::{prepare, systems_for, Prepared, SemiAlgSystem};
use super::{
    active_cuts, bc_c, subterm_text, BranchCut, CutForm, CutSet, Method, Options, Provenance, Warning, WarningKind,
};
use crate::defining_cuts::{Axis, DefiningCut};
use crate::expr::subterms::Subterm;
use crate::expr::Expr;
use crate::interval::Bound;
use crate::poly::solve::{restrict_by_inequalities, solve_curve};

/// Cuts from solving each system; unsolved factors become warnings.
pub(crate) fn solve_systems(
    systems: &[(usize, SemiAlgSystem)],
    cuts: &[(usize, DefiningCut)],
    sub: &Subterm,
    method: Method,
    denested: bool,
) -> CutSet {
    let solved = crate::par::map(systems, |(i, s)| {
        let outcome = solve_curve(&s.equation);
        let mut found = Vec::new();
        for sol in &outcome.solutions {
            for iv in restrict_by_inequalities(sol, &s.inequalities) {
                found.push((sol.clone(), iv));
            }
        }
        (*i, outcome.unsolved, found)
    });
    let mut out = CutSet::default();
    let text = subterm_text(sub);
    for (i, unsolved, found) in solved {
        let defining = cuts.iter().find(|(k, _)| *k == i).map(|(_, c)| c.clone()).expect("cut index present");
        for (factor, reason) in unsolved {
            out.warn(Warning::new(
                WarningKind::IncompleteSolving,
                format!("could not solve {} = 0 ({reason}); cuts of {text} may be incomplete", factor),
            ));
        }
        for (solution, free_range) in found {
            let prov = Provenance {
                path: sub.path.clone(),
                subterm: text.clone(),
                defining_cut: defining.clone(),
                cut_index: i,
                denested,
                method,
            };
            out.cuts.push(BranchCut::new(CutForm::RealVariable { solution, free_range }, prov));
        }
    }
    out
}

/// Whether the sign certificate shows `q` never meets the defining cut.
pub(crate) fn ruled_out(q: &Expr, cut: &DefiningCut) -> bool {
    if cut.axis != Axis::Real {
        return false;
    }
    let Some(s) = real_part_sign(q) else { return false };
    let zero = Bound::rat(crate::num::int(0));
    if s > 0 {
        // q has Re >= 0 and vanishes only with q = 0: needs the cut inside (-inf, 0)
        match cut.range.hi.cmp_bound(&zero) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => cut.range.hi_open,
            std::cmp::Ordering::Greater => false,
        }
    } else {
        match cut.range.lo.cmp_bound(&zero) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => cut.range.lo_open,
            std::cmp::Ordering::Less => false,
        }
    }
}

/// Real-variable cuts of `f(p)` for a rational argument `p`.
pub fn bc_f_rv1(sub: &Subterm, opts: &Options) -> CutSet {
    let mut out = CutSet::default();
    let cuts = active_cuts(sub, &opts.params, &mut out);
    match prepare(sub.argument()) {
        Ok(prep @ Prepared::Rational(_)) => {
            let systems = systems_for(&prep, &cuts);
            out.extend(solve_systems(&systems, &cuts, sub, Method::Rv1, false));
        }
        _ => out.warn(Warning::new(
            WarningKind::NotSupported,
            format!("argument of {} is not a rational function", subterm_text(sub)),
        )),
    }
    out
}

/// Real-variable cuts of `f(q)` for a radical argument: squared cuts plus the cuts of `q`.
pub fn bc_f_rv2(sub: &Subterm, opts: &Options) -> Result<CutSet, DenestError> {
    let q = sub.argument();
    let prep = prepare(q)?;
    let mut out = CutSet::default();
    let cuts = active_cuts(sub, &opts.params, &mut out);
    match &prep {
        Prepared::Rational(_) => {
            let systems = systems_for(&prep, &cuts);
            out.extend(solve_systems(&systems, &cuts, sub, Method::Rv1, false));
        }
        Prepared::Squared(_) => {
            let kept: Vec<(usize, DefiningCut)> = if opts.remove_denesting {
                cuts.iter().filter(|(_, c)| !ruled_out(q, c)).cloned().collect()
            } else {
                cuts.clone()
            };
            let systems = systems_for(&prep, &kept);
            let b = solve_systems(&systems, &kept, sub, Method::Rv2, true);
            if !b.cuts.is_empty() {
                out.warn(Warning::new(
                    WarningKind::DenestingResidue,
                    format!("cuts of {} found by squaring {q} may include spurious de-nesting cuts", subterm_text(sub)),
                ));
            }
            out.extend(b);
        }
    }
    let mut a = bc_c(q, opts);
    let mut prefix = sub.path.clone();
    prefix.push(0);
    a.prefix_paths(&prefix);
    out.extend(a);
    Ok(out)
}
