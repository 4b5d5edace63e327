//! Verification suites. Each one sweeps the twisted involutions of a system
//! within bounds and produces one record per element.

mod backend;
mod props;
mod theorems;
mod type_a;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use coxword_core::rewriting::RelationSet;
use coxword_core::{CoxeterError, GroupElement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::registry::LoadedSystem;
use crate::report::{VerificationReport, ZRecord};

/// `ρ` bound used for infinite systems unless overridden.
pub const AFFINE_RHO_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    /// Braid and initial relations span the involution words.
    Hh,
    /// Primed braid and primed initial relations span the primed involution words.
    Hh2,
    /// Primed braid, primed half-braid and exceptional lists span the primed words.
    Primed,
    /// Braid and initial Hecke relations span the reduced involution Hecke words.
    Hecke,
    /// Braid, mixed half-braid and exceptional chains span the reduced Hecke words.
    HeckeMin,
    /// Braid, initial and idempotent relations span the involution Hecke words.
    HeckeProp,
    /// Commutation counts and the size of the primed word set.
    Cardinality,
    /// The twisted braid lengths and the two alternating-suffix propositions.
    Tprop,
    /// Commutations across braid blocks of involution words.
    PrimedLem,
    /// Half-braid relations suffice exactly for simply braided systems.
    SimplyBraided,
    /// The type-A relations, atom moves and forbidden subwords.
    TypeA,
    /// Agreement between the generic and permutation backends.
    Backend,
}

impl SuiteId {
    pub const ALL: [SuiteId; 12] = [
        SuiteId::Hh,
        SuiteId::Hh2,
        SuiteId::Primed,
        SuiteId::Hecke,
        SuiteId::HeckeMin,
        SuiteId::HeckeProp,
        SuiteId::Cardinality,
        SuiteId::Tprop,
        SuiteId::PrimedLem,
        SuiteId::SimplyBraided,
        SuiteId::TypeA,
        SuiteId::Backend,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Hh => "hh",
            SuiteId::Hh2 => "hh2",
            SuiteId::Primed => "primed",
            SuiteId::Hecke => "hecke",
            SuiteId::HeckeMin => "hecke-min",
            SuiteId::HeckeProp => "hecke-prop",
            SuiteId::Cardinality => "cardinality",
            SuiteId::Tprop => "tprop",
            SuiteId::PrimedLem => "primed-lem",
            SuiteId::SimplyBraided => "simply-braided",
            SuiteId::TypeA => "type-a",
            SuiteId::Backend => "backend",
        }
    }

    /// Suites built on a relation set, where fault injection applies.
    pub fn relation_set_suite(self) -> bool {
        matches!(
            self,
            SuiteId::Hh
                | SuiteId::Hh2
                | SuiteId::Primed
                | SuiteId::Hecke
                | SuiteId::HeckeMin
                | SuiteId::HeckeProp
        )
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `ρ(z)` swept; `None` sweeps everything (finite systems only).
    pub rho: Option<usize>,
    /// Hecke words are taken up to length `ℓ(z) + hecke_extra`.
    pub hecke_extra: usize,
    /// Largest class built word by word.
    pub closure_limit: usize,
    /// Largest class built in packed form.
    pub packed_limit: u64,
}

impl Bounds {
    /// Full enumeration for finite systems, `ρ ≤ 6` otherwise.
    pub fn for_system(sys: &LoadedSystem) -> Self {
        Bounds {
            rho: if sys.finite { None } else { Some(AFFINE_RHO_BOUND) },
            hecke_extra: 2,
            closure_limit: 2_000_000,
            packed_limit: 1 << 32,
        }
    }

    pub fn with_rho(mut self, rho: Option<usize>) -> Self {
        if rho.is_some() {
            self.rho = rho;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub bounds: Bounds,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Seed choosing one component to drop from the suite's relation set.
    pub fault_seed: Option<u64>,
}

impl RunOptions {
    pub fn new(sys: &LoadedSystem) -> Self {
        RunOptions { bounds: Bounds::for_system(sys), threads: None, fault_seed: None }
    }
}

/// Runs one suite on one system.
pub fn run_suite(suite: SuiteId, sys: &LoadedSystem, options: &RunOptions) -> Result<VerificationReport> {
    if options.fault_seed.is_some() && !suite.relation_set_suite() {
        return Err(HarnessError::Usage(format!("suite `{suite}` has no relation set to perturb")));
    }
    let start = Instant::now();
    let run = || dispatch(suite, sys, options);
    let (records, fault) = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| HarnessError::Usage(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        system: sys.name.clone(),
        records,
        fault,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn dispatch(
    suite: SuiteId,
    sys: &LoadedSystem,
    options: &RunOptions,
) -> Result<(Vec<ZRecord>, Option<String>)> {
    if suite.relation_set_suite() {
        let set = theorems::relation_set(suite, sys)?;
        let (set, fault) = match options.fault_seed {
            Some(seed) => {
                let (set, dropped) = drop_component(&set, seed)?;
                (set, Some(dropped))
            }
            None => (set, None),
        };
        let records = theorems::run(suite, sys, &set, &options.bounds)?;
        return Ok((records, fault));
    }
    let records = match suite {
        SuiteId::Cardinality => theorems::cardinality(sys, &options.bounds)?,
        SuiteId::Tprop => props::tprop(sys, &options.bounds)?,
        SuiteId::PrimedLem => props::primed_lemma(sys, &options.bounds)?,
        SuiteId::SimplyBraided => theorems::simply_braided(sys, &options.bounds)?,
        SuiteId::TypeA => type_a::run(sys, &options.bounds)?,
        SuiteId::Backend => backend::run(sys)?,
        _ => unreachable!("relation-set suites handled above"),
    };
    Ok((records, None))
}

/// The complete relation set checked by a relation-set suite.
pub fn suite_relation_set(suite: SuiteId, sys: &LoadedSystem) -> Result<RelationSet> {
    if !suite.relation_set_suite() {
        return Err(HarnessError::Usage(format!("suite `{suite}` has no relation set")));
    }
    theorems::relation_set(suite, sys)
}

/// Runs a relation-set suite against an arbitrary relation set.
pub fn run_with_relations(
    suite: SuiteId,
    sys: &LoadedSystem,
    set: &RelationSet,
    bounds: &Bounds,
) -> Result<Vec<ZRecord>> {
    if !suite.relation_set_suite() {
        return Err(HarnessError::Usage(format!("suite `{suite}` has no relation set")));
    }
    theorems::run(suite, sys, set, bounds)
}

/// Removes the component picked by `seed`, returning its description.
pub fn drop_component(set: &RelationSet, seed: u64) -> Result<(RelationSet, String)> {
    let components = set.components();
    if components.is_empty() {
        return Err(HarnessError::Usage(format!("relation set `{}` is empty", set.name())));
    }
    let pick = StdRng::seed_from_u64(seed).gen_range(0..components.len());
    let c = &components[pick];
    Ok((set.without(c), set.describe(c)))
}

/// Twisted involutions within the bounds, in a fixed order.
pub(crate) fn sweep(sys: &LoadedSystem, bounds: &Bounds) -> Result<Vec<(GroupElement, usize)>> {
    match (sys.finite, bounds.rho) {
        (false, None) => {
            Err(HarnessError::BoundExceeded(format!("{} is infinite and needs a bound on rho", sys.name)))
        }
        (_, rho) => Ok(sys.engine.twisted_involutions(rho.unwrap_or(usize::MAX))),
    }
}

/// Runs `check` on every element in parallel, keeping the input order.
pub(crate) fn per_element<F>(zs: &[(GroupElement, usize)], check: F) -> Result<Vec<ZRecord>>
where
    F: Fn(&GroupElement, usize) -> Result<ZRecord> + Sync,
{
    zs.par_iter().map(|(z, rho)| check(z, *rho)).collect()
}

/// Turns closure outcomes into record failures or harness errors.
pub(crate) fn absorb<T>(record: &mut ZRecord, outcome: coxword_core::Result<T>) -> Result<Option<T>> {
    match outcome {
        Ok(v) => Ok(Some(v)),
        Err(CoxeterError::ClosureBoundExceeded(n)) => {
            Err(HarnessError::BoundExceeded(format!("class of {} exceeded {n} words", record.z)))
        }
        Err(e @ CoxeterError::RelationEscapedSet { .. }) => {
            record.fail(e.to_string());
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
        }
        assert!(matches!("nope".parse::<SuiteId>(), Err(HarnessError::UnknownSuite(_))));
    }

    #[test]
    fn infinite_systems_need_a_bound() {
        let sys = LoadedSystem::load("affA2").unwrap();
        let mut bounds = Bounds::for_system(&sys);
        assert_eq!(bounds.rho, Some(AFFINE_RHO_BOUND));
        bounds.rho = None;
        assert!(matches!(sweep(&sys, &bounds), Err(HarnessError::BoundExceeded(_))));
    }

    #[test]
    fn fault_needs_a_relation_set() {
        let sys = LoadedSystem::load("A2").unwrap();
        let mut options = RunOptions::new(&sys);
        options.fault_seed = Some(1);
        assert!(run_suite(SuiteId::Tprop, &sys, &options).is_err());
    }
}
