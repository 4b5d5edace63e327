//! Detection of the four exceptional twisted subsystems.

use crate::parabolic::{classify_twisted_type, ParabolicSubset, TypeLabel};
use crate::system::CoxeterSystem;

/// Every `J = J*` with `|J| ≤ 4` of type `²A_3`, `BC_3`, `D_4` or `H_3`.
pub fn exceptional_subsets(system: &CoxeterSystem) -> Vec<(ParabolicSubset, TypeLabel)> {
    ParabolicSubset::star_invariant_subsets(system, 4)
        .into_iter()
        .filter_map(|j| {
            let label = classify_twisted_type(system, j).ok()?.label;
            label.is_exceptional().then_some((j, label))
        })
        .collect()
}

pub fn is_simply_braided(system: &CoxeterSystem) -> bool {
    exceptional_subsets(system).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Order;

    #[test]
    fn known_systems() {
        for n in 1..=6 {
            assert!(is_simply_braided(&CoxeterSystem::type_a(n).unwrap()));
        }
        assert!(!is_simply_braided(&CoxeterSystem::bc3()));
        assert!(!is_simply_braided(&CoxeterSystem::twisted_a(3).unwrap()));
        assert!(!is_simply_braided(&CoxeterSystem::d4()));
        assert!(!is_simply_braided(&CoxeterSystem::h3()));
        assert!(is_simply_braided(&CoxeterSystem::twisted_a(4).unwrap()));
        assert!(!is_simply_braided(&CoxeterSystem::twisted_a(5).unwrap()));
        assert!(is_simply_braided(&CoxeterSystem::dihedral(Order::Finite(7)).unwrap()));
        assert!(is_simply_braided(&CoxeterSystem::affine_a(2).unwrap()));
    }
}
