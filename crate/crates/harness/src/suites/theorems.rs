//! Spanning checks for the relation sets, the primed cardinality identity and
//! the simply braided equivalence.

use std::collections::HashSet;
use std::sync::Arc;

use coxword_core::rewriting::{
    equivalence_class, is_simply_braided, packed_class, ClosureOptions, RelationSet, Rewriter, SuffixOracle,
};
use coxword_core::{CoxeterGroup, GroupElement, Letter, PrimedWord};

use super::{absorb, per_element, sweep, Bounds, SuiteId};
use crate::error::Result;
use crate::registry::LoadedSystem;
use crate::report::ZRecord;

/// The full relation set a suite checks.
pub(super) fn relation_set(suite: SuiteId, sys: &LoadedSystem) -> Result<RelationSet> {
    let engine = &sys.engine;
    let oracle: Arc<dyn SuffixOracle> = engine.clone();
    Ok(match suite {
        SuiteId::Hh => RelationSet::initial(engine.as_ref())?,
        SuiteId::Hh2 => RelationSet::primed_initial(engine.as_ref())?,
        SuiteId::Primed => RelationSet::primed_minimal(sys.system())?,
        SuiteId::Hecke => RelationSet::initial_hecke(engine)?,
        SuiteId::HeckeMin => RelationSet::hecke_minimal(sys.system(), oracle)?,
        SuiteId::HeckeProp => RelationSet::idempotent(engine.as_ref())?,
        other => unreachable!("{other} has no relation set"),
    })
}

/// Which word set of `z` a suite spans.
#[derive(Clone, Copy)]
enum Target {
    Inv,
    Primed,
    HeckeRed,
}

fn target_words(sys: &LoadedSystem, z: &GroupElement, target: Target) -> Result<Vec<PrimedWord>> {
    let e = &sys.engine;
    Ok(match target {
        Target::Inv => e.involution_words(z).iter().map(PrimedWord::from).collect(),
        Target::Primed => e.primed_words(z),
        Target::HeckeRed => e.reduced_hecke_words(z)?.iter().map(PrimedWord::from).collect(),
    })
}

/// Closure of the first member of `words` under `rewriter`, which must stay
/// inside `words`. Returns whether it reaches every member, or `None` after
/// recording an escape.
fn spans<R: Rewriter + ?Sized>(
    record: &mut ZRecord,
    words: &[PrimedWord],
    rewriter: &R,
    bounds: &Bounds,
) -> Result<Option<bool>> {
    let Some(seed) = words.first() else {
        record.fail("empty word set");
        return Ok(None);
    };
    let members: HashSet<&[Letter]> = words.iter().map(|w| w.letters()).collect();
    let longest = words.iter().map(PrimedWord::len).max().unwrap_or(0);
    let options = ClosureOptions::new(2 * longest + 4).with_limit(bounds.closure_limit);
    let mut inside = |w: &[Letter]| members.contains(w);
    let class = absorb(record, equivalence_class(seed.letters(), rewriter, options, Some(&mut inside)))?;
    Ok(class.map(|c| c.len() == members.len()))
}

fn first_missing(words: &[PrimedWord], rewriter: &RelationSet, bounds: &Bounds) -> String {
    let options = ClosureOptions::new(words.iter().map(PrimedWord::len).max().unwrap_or(0))
        .with_limit(bounds.closure_limit);
    let class: HashSet<PrimedWord> = equivalence_class(words[0].letters(), rewriter, options, None)
        .map(|c| c.into_iter().collect())
        .unwrap_or_default();
    match words.iter().find(|w| !class.contains(*w)) {
        Some(w) => format!("{w} is not reached from {}", words[0]),
        None => "class differs from the word set".into(),
    }
}

pub(super) fn run(
    suite: SuiteId,
    sys: &LoadedSystem,
    set: &RelationSet,
    bounds: &Bounds,
) -> Result<Vec<ZRecord>> {
    let zs = sweep(sys, bounds)?;
    let name = suite.name();
    let mixed = RelationSet::mixed_half_braid(sys.system(), sys.engine.clone());
    per_element(&zs, |z, rho| {
        let mut record = ZRecord::new(name, &sys.name, sys.format_element(z));
        record.rho = Some(rho);
        record.length = Some(sys.group().length(z));
        if suite == SuiteId::HeckeProp {
            hecke_prop(sys, z, set, bounds, &mut record)?;
            return Ok(record);
        }
        let target = match suite {
            SuiteId::Hh => Target::Inv,
            SuiteId::Hh2 | SuiteId::Primed => Target::Primed,
            _ => Target::HeckeRed,
        };
        let words = target_words(sys, z, target)?;
        record.count("words", words.len());
        if suite == SuiteId::HeckeMin {
            record.count("atoms", sys.engine.hecke_atoms(z)?.len());
            record.count("mixed_classes", class_count(&words, &mixed, bounds)?);
        }
        if let Some(full) = spans(&mut record, &words, set, bounds)? {
            if !full {
                let message = first_missing(&words, set, bounds);
                record.fail(message);
            }
        }
        Ok(record)
    })
}

/// Number of classes into which `rewriter` divides `words`.
fn class_count<R: Rewriter + ?Sized>(words: &[PrimedWord], rewriter: &R, bounds: &Bounds) -> Result<usize> {
    let longest = words.iter().map(PrimedWord::len).max().unwrap_or(0);
    let options = ClosureOptions::new(longest).with_limit(bounds.closure_limit);
    let mut seen: HashSet<PrimedWord> = HashSet::new();
    let mut classes = 0;
    for w in words {
        if seen.contains(w) {
            continue;
        }
        classes += 1;
        seen.extend(equivalence_class(w.letters(), rewriter, options, None)?);
    }
    Ok(classes)
}

/// Packed closure of one involution word among Hecke words of length at most
/// `ℓ(z) + extra`, compared with an independent count of that set.
fn hecke_prop(
    sys: &LoadedSystem,
    z: &GroupElement,
    set: &RelationSet,
    bounds: &Bounds,
    record: &mut ZRecord,
) -> Result<()> {
    let engine = &sys.engine;
    let max_len = sys.group().length(z) + bounds.hecke_extra;
    let expected = engine.count_hecke_words(z, max_len);
    record.count("words", expected);
    let seed = engine.involution_words(z)[0].0.clone();
    let mut table = engine.table();
    let target = table.id(z);
    let mut folds_to_z = |w: &[u8]| table.fold(w) == target;
    let outcome =
        packed_class(&seed, sys.system().rank(), set, max_len, bounds.packed_limit, &mut folds_to_z);
    if let Some(class) = absorb(record, outcome)? {
        record.count("class", class.len());
        record.require(class.len() as u128 == expected, || {
            format!("class of {} has {} of the {expected} words", engine.involution_words(z)[0], class.len())
        });
    }
    Ok(())
}

/// `|R⁺(z)| = 2^(2ρ−ℓ)|R(z)|`, with every word having `2ρ − ℓ` commutations.
pub(super) fn cardinality(sys: &LoadedSystem, bounds: &Bounds) -> Result<Vec<ZRecord>> {
    let zs = sweep(sys, bounds)?;
    let engine = &sys.engine;
    per_element(&zs, |z, rho| {
        let mut record = ZRecord::new("cardinality", &sys.name, sys.format_element(z));
        let length = sys.group().length(z);
        record.rho = Some(rho);
        record.length = Some(length);
        let words = engine.involution_words(z);
        let primed = engine.primed_words(z);
        record.count("words", words.len());
        record.count("primed_words", primed.len());
        record.require(2 * rho >= length, || format!("2ρ = {} is below ℓ = {length}", 2 * rho));
        let q = (2 * rho).saturating_sub(length);
        for w in words.iter() {
            let c = engine.commutations(&w.0, z)?.len();
            record.require(c == q, || format!("{w} has {c} commutations, expected {q}"));
        }
        let distinct: HashSet<&PrimedWord> = primed.iter().collect();
        record.require(distinct.len() == primed.len(), || "repeated primed word".into());
        let expected = (words.len() as u128) << q;
        record.require(primed.len() as u128 == expected, || {
            format!("{} primed words, expected {expected}", primed.len())
        });
        for p in &primed {
            record.require(engine.is_involution_word(&p.unprimed().0, z), || {
                format!("{p} does not unprime to an involution word")
            });
        }
        Ok(record)
    })
}

/// Whether braid plus half-braid relations span each word set, and whether
/// that matches the absence of exceptional subsystems.
pub(super) fn simply_braided(sys: &LoadedSystem, bounds: &Bounds) -> Result<Vec<ZRecord>> {
    let zs = sweep(sys, bounds)?;
    let system = sys.system();
    let half = RelationSet::half_braid(system);
    let primed = RelationSet::primed_half_braid(system);
    let mixed = RelationSet::mixed_half_braid(system, sys.engine.clone());
    let mut records = per_element(&zs, |z, rho| {
        let mut record = ZRecord::new("simply-braided", &sys.name, sys.format_element(z));
        record.rho = Some(rho);
        record.length = Some(sys.group().length(z));
        for (key, set, target) in [
            ("inv", &half, Target::Inv),
            ("primed", &primed, Target::Primed),
            ("hecke", &mixed, Target::HeckeRed),
        ] {
            let words = target_words(sys, z, target)?;
            let full = spans(&mut record, &words, set, bounds)?.unwrap_or(false);
            record.flag(key, full);
            if !full {
                record.count(&format!("{key}_classes"), class_count(&words, set, bounds)?);
            }
        }
        Ok(record)
    })?;
    let simply = is_simply_braided(system);
    let mut summary = ZRecord::new("simply-braided", &sys.name, "all");
    summary.flag("simply_braided", simply);
    for key in ["inv", "primed", "hecke"] {
        let all = records.iter().all(|r| r.flags.get(key).copied().unwrap_or(false));
        summary.flag(key, all);
        summary.require(all == simply, || {
            format!("half-braid spanning of {key} words is {all} but simply braided is {simply}")
        });
    }
    records.push(summary);
    Ok(records)
}
