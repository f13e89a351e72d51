//! The complex-parametric method: solve `q(z) = a` (or `i*a`) for `z`.

use num_traits::{One, Zero};

use super::rv::ruled_out;
use super::sa::{prepare, Prepared};
use super::{
    active_cuts, bc_c, subterm_text, BranchCut, CutForm, CutSet, Method, Options, Provenance, Warning, WarningKind,
};
use crate::defining_cuts::Axis;
use crate::expr::subterms::Subterm;
use crate::num::GaussRat;
use crate::poly::param::solve_in_z_with_parameter;
use crate::poly::GPoly;

/// Coefficients (polynomials in `a`) of `num(z) - w(a)*den(z)` where `w = c*a^k`.
fn coefficients(num: &GPoly, den: &GPoly, k: usize, c: GaussRat) -> Vec<GPoly> {
    let n = num.deg().max(den.deg());
    (0..=n)
        .map(|i| {
            let mut v = vec![GaussRat::zero(); k + 1];
            v[0] = num.coeff(i);
            v[k] = v[k].clone() - c.clone() * den.coeff(i);
            GPoly::from_coeffs(v)
        })
        .collect()
}

pub fn bc_f_cv(sub: &Subterm, opts: &Options) -> CutSet {
    let q = sub.argument();
    let mut out = CutSet::default();
    let cuts = active_cuts(sub, &opts.params, &mut out);
    let text = subterm_text(sub);
    match prepare(q) {
        Err(e) => out.warn(Warning::new(
            WarningKind::NotSupported,
            format!("parametric method cannot solve for z in {text} ({e}); its own cuts are omitted"),
        )),
        Ok(prep) => {
            let (p, squared) = match prep {
                Prepared::Rational(p) => (p, false),
                Prepared::Squared(p) => (p, true),
            };
            let mut any = false;
            for (i, c) in &cuts {
                if squared && opts.remove_denesting && ruled_out(q, c) {
                    continue;
                }
                // q = a on the real axis, q = i*a on the imaginary axis; squared: q^2 = a^2 or -a^2
                let coeffs = match (squared, c.axis) {
                    (false, Axis::Real) => coefficients(&p.num, &p.den, 1, GaussRat::one()),
                    (false, Axis::Imaginary) => coefficients(&p.num, &p.den, 1, GaussRat::i()),
                    (true, Axis::Real) => coefficients(&p.num, &p.den, 2, GaussRat::one()),
                    (true, Axis::Imaginary) => coefficients(&p.num, &p.den, 2, -GaussRat::one()),
                };
                let outcome = solve_in_z_with_parameter(&coeffs);
                if let Some(reason) = outcome.unsolved {
                    out.warn(Warning::new(
                        WarningKind::IncompleteSolving,
                        format!("could not solve for z in {text} ({reason}); its cuts may be incomplete"),
                    ));
                }
                for root in outcome.roots {
                    any = true;
                    let prov = Provenance {
                        path: sub.path.clone(),
                        subterm: text.clone(),
                        defining_cut: c.clone(),
                        cut_index: *i,
                        denested: squared,
                        method: Method::Cv,
                    };
                    out.cuts.push(BranchCut::new(CutForm::Parametric { z_of_a: root, a_range: c.range.clone() }, prov));
                }
            }
            if squared && any {
                out.warn(Warning::new(
                    WarningKind::DenestingResidue,
                    format!("cuts of {text} found by squaring {q} may include spurious de-nesting cuts"),
                ));
            }
        }
    }
    let mut a = bc_c(q, opts);
    let mut prefix = sub.path.clone();
    prefix.push(0);
    a.prefix_paths(&prefix);
    out.extend(a);
    out
}
