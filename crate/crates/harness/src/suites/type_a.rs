//! The symmetric and affine symmetric group specializations.

use std::collections::{BTreeSet, HashSet};

use coxword_core::rewriting::{equivalence_class, packed_class, ClosureOptions, Rewriter};
use coxword_core::type_a::{
    alpha_min, atom_pattern_class, fixed_point_commutations, forbidden_subword_scan, ApproxA, SimA,
};
use coxword_core::{CoxeterGroup, GroupElement, Letter, PrimedWord, Window};

use super::{absorb, per_element, sweep, Bounds};
use crate::error::{HarnessError, Result};
use crate::registry::LoadedSystem;
use crate::report::ZRecord;

/// Whether the closure of the first word is exactly `words`; records escapes.
fn closure_matches<R: Rewriter + ?Sized>(
    record: &mut ZRecord,
    key: &str,
    words: &[PrimedWord],
    rewriter: &R,
    bounds: &Bounds,
) -> Result<()> {
    let members: HashSet<&[Letter]> = words.iter().map(|w| w.letters()).collect();
    let longest = words.iter().map(PrimedWord::len).max().unwrap_or(0);
    let options = ClosureOptions::new(longest + 2).with_limit(bounds.closure_limit);
    let mut inside = |w: &[Letter]| members.contains(w);
    if let Some(class) =
        absorb(record, equivalence_class(words[0].letters(), rewriter, options, Some(&mut inside)))?
    {
        record.count(&format!("{key}_class"), class.len());
        record.require(class.len() == members.len(), || {
            format!("{key} class of {} has {} of {} words", words[0], class.len(), members.len())
        });
    }
    Ok(())
}

fn window(z: &GroupElement) -> &Window {
    z.as_window().expect("type-A systems use the permutation backend")
}

pub(super) fn run(sys: &LoadedSystem, bounds: &Bounds) -> Result<Vec<ZRecord>> {
    let ty = sys.type_a().ok_or_else(|| {
        HarnessError::Usage(format!(
            "suite type-a needs A_n, or affA_n with n >= 2; `{}` does not qualify",
            sys.name
        ))
    })?;
    let zs = sweep(sys, bounds)?;
    let engine = &sys.engine;
    let g = sys.group();
    per_element(&zs, |z, rho| {
        let mut record = ZRecord::new("type-a", &sys.name, sys.format_element(z));
        let length = g.length(z);
        record.rho = Some(rho);
        record.length = Some(length);
        let w = window(z);

        // Hecke atoms from the minimal atom and the pattern moves.
        let atoms: BTreeSet<Window> = engine.hecke_atoms(z)?.iter().map(|a| window(a).clone()).collect();
        let min = alpha_min(w)?;
        record.require(atoms.contains(&min), || format!("α_min = {min} is not an atom"));
        let class = atom_pattern_class(&min, ty.is_affine(), bounds.closure_limit)
            .map_err(|e| HarnessError::BoundExceeded(e.to_string()))?;
        record.count("atoms", atoms.len());
        record.require(class == atoms, || {
            let extra = class.symmetric_difference(&atoms).next().map(Window::to_string).unwrap_or_default();
            format!(
                "atom moves from {min} give {} windows, {} atoms; first difference {extra}",
                class.len(),
                atoms.len()
            )
        });

        // The three word sets under the type-A relations.
        let primed = engine.primed_words(z);
        let inv: Vec<PrimedWord> = engine.involution_words(z).iter().map(PrimedWord::from).collect();
        let red: Vec<PrimedWord> = engine.reduced_hecke_words(z)?.iter().map(PrimedWord::from).collect();
        record.count("primed_words", primed.len());
        record.count("words", inv.len());
        record.count("hecke_red_words", red.len());
        closure_matches(&mut record, "sim", &primed, &SimA::new(ty), bounds)?;
        closure_matches(&mut record, "sim_unprimed", &inv, &SimA::unprimed(ty), bounds)?;
        closure_matches(&mut record, "approx", &red, &ApproxA::new(ty), bounds)?;

        // Involution Hecke words up to the length bound.
        let max_len = length + bounds.hecke_extra;
        let expected = engine.count_hecke_words(z, max_len);
        let mut table = engine.table();
        let target = table.id(z);
        let mut folds_to_z = |word: &[u8]| table.fold(word) == target;
        let outcome = packed_class(
            &inv[0].unprimed().0,
            ty.rank(),
            &SimA::with_idempotent(ty),
            max_len,
            bounds.packed_limit,
            &mut folds_to_z,
        );
        if let Some(class) = absorb(&mut record, outcome)? {
            record.count("hecke_words", expected);
            record.require(class.len() as u128 == expected, || {
                format!("idempotent class has {} of {expected} Hecke words", class.len())
            });
        }

        // Forbidden subwords and the fixed-point description of commutations.
        for p in &primed {
            if let Some(v) = forbidden_subword_scan(ty, p.letters()).first() {
                record.fail(format!("{p} contains {} at {}", v.pattern, v.position + 1));
            }
        }
        for word in inv.iter().map(PrimedWord::unprimed) {
            let (fixed, cycles) = fixed_point_commutations(ty, &word.0);
            let comms = engine.commutations(&word.0, z)?;
            record.require(fixed == comms && cycles, || {
                format!("{word}: fixed-point indices {fixed:?} against commutations {comms:?}")
            });
        }
        Ok(record)
    })
}
