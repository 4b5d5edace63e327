//! Named systems and element input.

use std::path::Path;
use std::sync::Arc;

use coxword_core::parabolic::{longest_element, DEFAULT_PARABOLIC_LIMIT};
use coxword_core::perm::PermFamily;
use coxword_core::type_a::TypeA;
use coxword_core::{
    AnyGroup, CoxeterError, CoxeterGroup, CoxeterSystem, Engine, GenericGroup, GroupElement, ParabolicSubset,
    PermGroup, Window, Word,
};

use crate::error::{HarnessError, Result};

/// Every built-in system name.
pub const REGISTRY: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "2A3", "2A4", "2A5", "BC3", "D4", "H3", "I2(2)", "I2(3)", "I2(4)", "I2(5)",
    "I2(6)", "I2(7)", "I2(inf)", "2I2(2)", "2I2(3)", "2I2(4)", "2I2(5)", "2I2(6)", "2I2(7)", "affA1",
    "affA2", "affA3",
];

/// Which group implementation backs a loaded system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Generic,
    Permutation,
}

/// A system ready for computation.
pub struct LoadedSystem {
    pub name: String,
    pub engine: Arc<Engine<AnyGroup>>,
    pub finite: bool,
    pub backend: Backend,
}

fn perm_backend(name: &str) -> Option<Result<PermGroup>> {
    let rank = |rest: &str| rest.parse::<usize>().ok().filter(|&n| n >= 1);
    if let Some(n) = name.strip_prefix("affA").and_then(rank) {
        return Some(PermGroup::affine(n + 1).map_err(Into::into));
    }
    if let Some(n) = name.strip_prefix("2A").and_then(rank) {
        return Some(PermGroup::symmetric(n + 1, true).map_err(Into::into));
    }
    if let Some(n) = name.strip_prefix('A').and_then(rank) {
        return Some(PermGroup::symmetric(n + 1, false).map_err(Into::into));
    }
    None
}

fn is_finite(group: &AnyGroup) -> bool {
    if group.as_perm().is_some_and(PermGroup::is_affine) {
        return false;
    }
    let full = ParabolicSubset::full(group.system());
    longest_element(group, full, DEFAULT_PARABOLIC_LIMIT).is_ok()
}

impl LoadedSystem {
    /// Loads a registry name, or a JSON system file when `spec` names an existing path.
    pub fn load(spec: &str) -> Result<Self> {
        let path = Path::new(spec);
        if !REGISTRY.contains(&spec) && path.is_file() {
            let text = std::fs::read_to_string(path)?;
            let system = CoxeterSystem::from_json(&text)?;
            return Ok(Self::from_group(spec, AnyGroup::Generic(GenericGroup::new(system))));
        }
        let (group, backend) = match perm_backend(spec) {
            Some(g) => (AnyGroup::Permutation(g?), Backend::Permutation),
            None => (AnyGroup::Generic(GenericGroup::new(CoxeterSystem::named(spec)?)), Backend::Generic),
        };
        let mut loaded = Self::from_group(spec, group);
        loaded.backend = backend;
        Ok(loaded)
    }

    /// Wraps a group under a display name.
    pub fn from_group(name: &str, group: AnyGroup) -> Self {
        let backend = match group {
            AnyGroup::Generic(_) => Backend::Generic,
            AnyGroup::Permutation(_) => Backend::Permutation,
        };
        let finite = is_finite(&group);
        LoadedSystem { name: name.to_string(), engine: Arc::new(Engine::new(group)), finite, backend }
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.engine.system()
    }

    pub fn group(&self) -> &AnyGroup {
        self.engine.group()
    }

    /// The type-A view of a symmetric or affine symmetric group with `* = id`.
    pub fn type_a(&self) -> Option<TypeA> {
        let perm = self.group().as_perm()?;
        match perm.family() {
            PermFamily::Finite => TypeA::finite(perm.n()).ok(),
            PermFamily::Affine => TypeA::affine(perm.n()).ok(),
            PermFamily::FiniteReversal => None,
        }
    }

    /// Parses an element given as a window `[..]`, cycles `(a,b)(c,d)` or a word.
    ///
    /// A word denotes the product of its letters.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let rank = self.system().rank();
        if let Some(perm) = self.group().as_perm() {
            if text.starts_with('[') {
                let w = Window::parse(text)?;
                perm.check(&w)?;
                return Ok(GroupElement::Permutation(w));
            }
            if text.starts_with('(') && text.contains(',') && !perm.is_affine() {
                let w = Window::from_cycles(text, perm.n())?;
                return Ok(GroupElement::Permutation(w));
            }
        } else if text.starts_with('[') {
            return Err(HarnessError::Usage(format!(
                "window input needs a permutation system, `{}` is generic",
                self.name
            )));
        }
        let word = Word::parse(text, rank)?;
        Ok(self.group().element(word.letters()))
    }

    /// Parses a twisted involution.
    pub fn parse_twisted(&self, text: &str) -> Result<GroupElement> {
        let z = self.parse_element(text)?;
        if !self.engine.is_twisted_involution(&z) {
            return Err(CoxeterError::NotTwistedInvolution.into());
        }
        Ok(z)
    }

    /// Window text for permutation systems, otherwise a reduced word (`e` for the identity).
    pub fn format_element(&self, z: &GroupElement) -> String {
        match z.as_window() {
            Some(w) => w.to_string(),
            None => {
                let word = self.group().reduced_word(z);
                if word.is_empty() {
                    "e".to_string()
                } else {
                    word.to_string()
                }
            }
        }
    }

    /// One-line description for listings.
    pub fn describe(&self) -> String {
        let sys = self.system();
        let star = if sys.star_is_identity() { "trivial" } else { "nontrivial" };
        let backend = match self.backend {
            Backend::Generic => "generic",
            Backend::Permutation => "permutation",
        };
        let size = if self.finite { "finite" } else { "infinite" };
        format!("{}\trank {}\tstar {star}\t{size}\t{backend}", self.name, sys.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_loads() {
        for name in REGISTRY {
            let s = LoadedSystem::load(name).unwrap();
            assert_eq!(s.name, *name);
        }
        assert!(LoadedSystem::load("Q7").is_err());
    }

    #[test]
    fn finiteness_and_backends() {
        let h3 = LoadedSystem::load("H3").unwrap();
        assert!(h3.finite);
        assert_eq!(h3.backend, Backend::Generic);
        let aff = LoadedSystem::load("affA2").unwrap();
        assert!(!aff.finite);
        assert_eq!(aff.backend, Backend::Permutation);
        assert!(aff.type_a().unwrap().is_affine());
        assert!(LoadedSystem::load("2A3").unwrap().type_a().is_none());
        assert!(!LoadedSystem::load("I2(inf)").unwrap().finite);
    }

    #[test]
    fn element_syntax() {
        let a3 = LoadedSystem::load("2A3").unwrap();
        let z = a3.parse_twisted("(1,4)(2,3)").unwrap();
        assert_eq!(a3.format_element(&z), "[4,3,2,1]");
        assert_eq!(a3.parse_element("[4,3,2,1]").unwrap(), z);
        let a1 = LoadedSystem::load("A1").unwrap();
        let s = a1.parse_twisted("s1").unwrap();
        assert_eq!(a1.format_element(&s), "[2,1]");
        let bc3 = LoadedSystem::load("BC3").unwrap();
        let w = bc3.parse_element("1,2,1").unwrap();
        assert_eq!(bc3.format_element(&w), "121");
        assert_eq!(bc3.format_element(&bc3.parse_element("e").unwrap()), "e");
        assert!(bc3.parse_twisted("12").is_err());
    }
}
