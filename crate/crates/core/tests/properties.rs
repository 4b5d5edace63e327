use std::collections::HashSet;

use coxword_core::type_a::{inversion_count, window_length};
use coxword_core::{CoxeterGroup, CoxeterSystem, Engine, Gen, GenericGroup, PermGroup, Window};
use proptest::prelude::*;

fn word(rank: usize, max: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(0..rank as Gen, 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn affine_windows_agree_on_length(letters in word(4, 14)) {
        let g = PermGroup::affine(4).unwrap();
        let w = g.element(&letters);
        let l = g.length(&w);
        prop_assert_eq!(l, w.length_by_descents());
        prop_assert_eq!(l, inversion_count(&w));
        prop_assert_eq!(window_length(&w).unwrap(), l);
        prop_assert!(l <= letters.len());
        prop_assert_eq!(l % 2, letters.len() % 2);
    }

    #[test]
    fn window_inverse_and_composition(a in word(4, 10), b in word(4, 10)) {
        let g = PermGroup::affine(4).unwrap();
        let (v, w) = (g.element(&a), g.element(&b));
        prop_assert_eq!(v.compose(&v.inverse()), Window::identity(4));
        prop_assert_eq!(g.multiply(&v, &w), v.compose(&w));
        prop_assert_eq!(g.inverse(&v), v.inverse());
    }

    #[test]
    fn backends_agree_on_a3(letters in word(3, 10)) {
        let perm = Engine::new(PermGroup::symmetric(4, true).unwrap());
        let generic = Engine::new(GenericGroup::new(CoxeterSystem::twisted_a(3).unwrap()));
        let z = perm.twisted_fold(&letters);
        let y = generic.twisted_fold(&letters);
        prop_assert_eq!(perm.group().length(&z), generic.group().length(&y));
        prop_assert_eq!(perm.rho(&z), generic.rho(&y));
        let a: HashSet<_> = perm.involution_words(&z).iter().cloned().collect();
        let b: HashSet<_> = generic.involution_words(&y).iter().cloned().collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn folds_are_twisted_involutions(letters in word(3, 9)) {
        let engine = Engine::new(GenericGroup::new(CoxeterSystem::bc3()));
        let z = engine.twisted_fold(&letters);
        prop_assert!(engine.is_twisted_involution(&z));
        let rho = engine.rho(&z);
        prop_assert!(rho <= letters.len());
        prop_assert_eq!(engine.is_involution_word(&letters, &z), rho == letters.len());
    }

    #[test]
    fn primed_count_matches_commutations(letters in word(3, 9)) {
        let engine = Engine::new(GenericGroup::new(CoxeterSystem::named("H3").unwrap()));
        let z = engine.twisted_fold(&letters);
        let words = engine.involution_words(&z);
        let ell = engine.group().length(&z);
        let free = 2 * engine.rho(&z) - ell;
        prop_assert_eq!(engine.primed_words(&z).len(), words.len() << free);
        for r in words.iter() {
            prop_assert_eq!(engine.commutations(r.letters(), &z).unwrap().len(), free);
        }
    }
}
