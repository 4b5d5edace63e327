//! Cross-checks between the permutation and generic backends, and of the
//! affine length against the inversion count.

use std::collections::BTreeSet;

use coxword_core::parabolic::enumerate_group;
use coxword_core::type_a::{inversion_count, window_length};
use coxword_core::{CoxeterGroup, Engine, GenericGroup, GroupElement, Window, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{HarnessError, Result};
use crate::registry::LoadedSystem;
use crate::report::ZRecord;

/// Random affine windows checked per run.
pub const RANDOM_WINDOWS: usize = 1000;
/// Entry range of the random windows.
pub const WINDOW_RANGE: (i64, i64) = (-20, 25);
const SEED: u64 = 0x5eed;
/// Length bound for element-wise comparison on affine groups.
const AFFINE_LENGTH: usize = 4;
const AFFINE_RHO: usize = 4;

/// A uniformly drawn valid window of size `n` with entries in `range`.
pub fn random_window(rng: &mut StdRng, n: usize, range: (i64, i64)) -> Window {
    let target = (n * (n + 1) / 2) as i64;
    loop {
        let mut entries: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(range.0..=range.1)).collect();
        let last = target - entries.iter().sum::<i64>();
        if !(range.0..=range.1).contains(&last) {
            continue;
        }
        entries.push(last);
        let residues: BTreeSet<i64> = entries.iter().map(|e| e.rem_euclid(n as i64)).collect();
        if residues.len() == n {
            return Window(entries);
        }
    }
}

pub(super) fn run(sys: &LoadedSystem) -> Result<Vec<ZRecord>> {
    let perm = sys.group().as_perm().ok_or_else(|| {
        HarnessError::Usage(format!("suite backend needs a permutation system; `{}` is generic", sys.name))
    })?;
    let g = sys.group();
    let generic = Engine::new(GenericGroup::new(sys.system().clone()));
    let h = generic.group();
    let affine = perm.is_affine();
    let elems = enumerate_group(g, if affine { AFFINE_LENGTH } else { usize::MAX });
    let lift = |w: &GroupElement| h.element(g.reduced_word(w).letters());
    let lifted: Vec<_> = elems.iter().map(lift).collect();
    let record = |key: &str| {
        let mut r = ZRecord::new("backend", &sys.name, key);
        r.count("elements", elems.len());
        r
    };
    let mut records = Vec::new();

    let mut lengths = record("lengths");
    let mut descents = record("descents");
    let mut products = record("products");
    for (w, v) in elems.iter().zip(&lifted) {
        lengths.require(g.length(w) == h.length(v), || format!("length of {w:?}"));
        descents.require(
            g.right_descents(w) == h.right_descents(v) && g.left_descents(w) == h.left_descents(v),
            || format!("descents of {w:?}"),
        );
        for s in sys.system().generators() {
            products.require(lift(&g.multiply_gen(w, s)) == h.multiply_gen(v, s), || {
                format!("{w:?} times s{}", s + 1)
            });
            products.require(lift(&g.gen_multiply(s, w)) == h.gen_multiply(s, v), || {
                format!("s{} times {w:?}", s + 1)
            });
        }
    }
    records.extend([lengths, descents, products]);

    let mut demazure = record("demazure");
    let small: Vec<usize> =
        (0..elems.len()).filter(|&i| !affine || g.length(&elems[i]) <= AFFINE_LENGTH / 2 + 1).collect();
    for &i in &small {
        for &j in &small {
            let ok = lift(&g.demazure(&elems[i], &elems[j])) == h.demazure(&lifted[i], &lifted[j]);
            demazure.require(ok, || format!("{:?} ∘ {:?}", elems[i], elems[j]));
        }
    }
    demazure.count("pairs", small.len() * small.len());
    records.push(demazure);

    let mut inv = record("involution-words");
    let mut atoms = record("hecke-atoms");
    let zs = sys.engine.twisted_involutions(if affine { AFFINE_RHO } else { usize::MAX });
    inv.count("twisted_involutions", zs.len());
    for (z, _) in &zs {
        let zg = lift(z);
        inv.require(generic.is_twisted_involution(&zg), || {
            format!("{z:?} is not twisted in the generic backend")
        });
        let a: Vec<Word> = sys.engine.involution_words(z).to_vec();
        let b: Vec<Word> = generic.involution_words(&zg).to_vec();
        inv.require(a == b, || format!("involution words of {z:?}"));
        let pa: BTreeSet<_> = sys.engine.hecke_atoms(z)?.iter().map(lift).collect();
        let pb: BTreeSet<_> = generic.hecke_atoms(&zg)?.into_iter().collect();
        atoms.require(pa == pb, || format!("Hecke atoms of {z:?}"));
    }
    records.extend([inv, atoms]);

    if affine {
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut windows = ZRecord::new("backend", &sys.name, "random-windows");
        let mut total = 0u64;
        for _ in 0..RANDOM_WINDOWS {
            let w = random_window(&mut rng, perm.n(), WINDOW_RANGE);
            match window_length(&w) {
                Ok(l) => total += l as u64,
                Err(_) => windows.fail(format!(
                    "{w}: descent length {} but inversion count {}",
                    w.length_by_descents(),
                    inversion_count(&w)
                )),
            }
        }
        windows.count("windows", RANDOM_WINDOWS);
        windows.count("total_length", total);
        records.push(windows);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_windows_are_valid() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..100 {
            let w = random_window(&mut rng, 4, WINDOW_RANGE);
            assert!(Window::new(w.0.clone()).is_ok());
            assert!(w.0.iter().all(|e| (-20..=25).contains(e)));
        }
    }
}
