//! Relation sets built from the Coxeter data and from enumerated words.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{CoxeterError, Result};
use crate::group::CoxeterGroup;
use crate::involution::Engine;
use crate::parabolic::{classify_twisted_type, ParabolicSubset, TypeLabel};
use crate::system::{CoxeterSystem, Order};
use crate::twisted::m_star;
use crate::word::{Gen, Letter, PrimedWord, Word};

use super::schema::{
    alternating, alternating_ending, plain, PatternFamily, Position, RelationKind, RelationSchema,
    SuffixCondition,
};
use super::Rewriter;

/// Answers suffix queries: the left descent set of the product of a word,
/// or `None` when the word is not reduced.
pub trait SuffixOracle: Send + Sync {
    fn reduced_left_descents(&self, word: &[Gen]) -> Option<u64>;
}

impl<G: CoxeterGroup> SuffixOracle for Engine<G> {
    fn reduced_left_descents(&self, word: &[Gen]) -> Option<u64> {
        Engine::reduced_left_descents(self, word)
    }
}

/// Which word set a family of initial or exceptional relations acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Involution words.
    Plain,
    /// Primed involution words.
    Primed,
    /// Reduced involution Hecke words.
    Hecke,
}

/// Symmetric set of unordered generator pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMask(Vec<u64>);

impl PairMask {
    pub fn all(rank: usize) -> Self {
        let full = if rank == 64 { u64::MAX } else { (1u64 << rank) - 1 };
        PairMask((0..rank).map(|s| full & !(1 << s)).collect())
    }

    pub fn contains(&self, s: Gen, t: Gen) -> bool {
        self.0[s as usize] >> t & 1 == 1
    }

    pub fn remove(&mut self, s: Gen, t: Gen) {
        self.0[s as usize] &= !(1 << t);
        self.0[t as usize] &= !(1 << s);
    }
}

#[derive(Clone, Debug)]
pub enum Rule {
    /// Ordinary braid moves among unprimed letters.
    Braid(PairMask),
    /// The four primed braid rules.
    PrimedBraid(PairMask),
    /// `(…,s,s,…) ∼ (…,s,…)`.
    Idempotent,
    Family(PatternFamily),
}

/// One removable piece of a relation set, used for fault injection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    BraidPair(Gen, Gen),
    PrimedBraidPair(Gen, Gen),
    Idempotent,
    Family(usize),
}

/// A named relation set acting on (primed) words.
#[derive(Clone)]
pub struct RelationSet {
    name: String,
    rank: usize,
    orders: Vec<Option<u32>>,
    rules: Vec<Rule>,
    oracle: Option<Arc<dyn SuffixOracle>>,
}

impl std::fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RelationSet").field("name", &self.name).field("rules", &self.rules.len()).finish()
    }
}

impl RelationSet {
    pub fn empty(system: &CoxeterSystem, name: impl Into<String>) -> Self {
        let rank = system.rank();
        let mut orders = Vec::with_capacity(rank * rank);
        for s in system.generators() {
            for t in system.generators() {
                orders.push(system.m(s, t).finite());
            }
        }
        RelationSet { name: name.into(), rank, orders, rules: Vec::new(), oracle: None }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.push(rule);
        self
    }

    pub fn with_oracle(mut self, oracle: Arc<dyn SuffixOracle>) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn push(&mut self, rule: Rule) {
        if let Rule::Family(f) = &rule {
            if f.members().len() < 2 {
                return;
            }
            let dup = self.rules.iter().any(|r| match r {
                Rule::Family(g) => g.kind == f.kind && g.position == f.position && g.members() == f.members(),
                _ => false,
            });
            if dup {
                return;
            }
        }
        self.rules.push(rule);
    }

    pub fn extend(&mut self, rules: impl IntoIterator<Item = Rule>) {
        for r in rules {
            self.push(r);
        }
    }

    fn order(&self, s: Gen, t: Gen) -> Option<u32> {
        self.orders[s as usize * self.rank + t as usize]
    }

    pub fn families(&self) -> impl Iterator<Item = &PatternFamily> {
        self.rules.iter().filter_map(|r| match r {
            Rule::Family(f) => Some(f),
            _ => None,
        })
    }

    /// Every schema in the set, deduplicated by normal form.
    pub fn schemas(&self) -> Vec<RelationSchema> {
        let mut out = Vec::new();
        for rule in &self.rules {
            match rule {
                Rule::Braid(mask) => {
                    for (s, t, m) in self.braid_pairs(mask) {
                        out.push(RelationSchema::new(
                            RelationKind::Braid,
                            plain(&alternating(s, t, m)),
                            plain(&alternating(t, s, m)),
                            Position::Anywhere,
                        ));
                    }
                }
                Rule::PrimedBraid(mask) => {
                    for (s, t, m) in self.braid_pairs(mask) {
                        for (lhs, rhs) in primed_braid_patterns(s, t, m) {
                            out.push(RelationSchema::new(
                                RelationKind::PrimedBraid,
                                lhs,
                                rhs,
                                Position::Anywhere,
                            ));
                        }
                    }
                }
                Rule::Idempotent => {
                    for s in 0..self.rank as Gen {
                        out.push(RelationSchema::new(
                            RelationKind::Idempotent,
                            plain(&[s, s]),
                            plain(&[s]),
                            Position::Anywhere,
                        ));
                    }
                }
                Rule::Family(f) => out.extend(f.to_schemas()),
            }
        }
        let mut seen = HashSet::new();
        out.retain(|s| seen.insert(s.normal_form()));
        out
    }

    fn braid_pairs(&self, mask: &PairMask) -> Vec<(Gen, Gen, usize)> {
        let mut out = Vec::new();
        for s in 0..self.rank as Gen {
            for t in s + 1..self.rank as Gen {
                if let (true, Some(m)) = (mask.contains(s, t), self.order(s, t)) {
                    out.push((s, t, m as usize));
                }
            }
        }
        out
    }

    /// The removable pieces, in a fixed order.
    pub fn components(&self) -> Vec<Component> {
        let mut out = Vec::new();
        for (i, rule) in self.rules.iter().enumerate() {
            match rule {
                Rule::Braid(mask) => {
                    out.extend(self.braid_pairs(mask).into_iter().map(|(s, t, _)| Component::BraidPair(s, t)))
                }
                Rule::PrimedBraid(mask) => out.extend(
                    self.braid_pairs(mask).into_iter().map(|(s, t, _)| Component::PrimedBraidPair(s, t)),
                ),
                Rule::Idempotent => out.push(Component::Idempotent),
                Rule::Family(_) => out.push(Component::Family(i)),
            }
        }
        out
    }

    pub fn describe(&self, component: &Component) -> String {
        match component {
            Component::BraidPair(s, t) => format!("braid {}{}", s + 1, t + 1),
            Component::PrimedBraidPair(s, t) => format!("primed braid {}{}", s + 1, t + 1),
            Component::Idempotent => "idempotent".into(),
            Component::Family(i) => match &self.rules[*i] {
                Rule::Family(f) => f.label.clone(),
                _ => unreachable!("component index points at a family"),
            },
        }
    }

    /// A copy with one component removed.
    pub fn without(&self, component: &Component) -> RelationSet {
        let mut out = self.clone();
        out.name = format!("{} without {}", self.name, self.describe(component));
        match *component {
            Component::BraidPair(s, t) | Component::PrimedBraidPair(s, t) => {
                for rule in &mut out.rules {
                    if let Rule::Braid(mask) | Rule::PrimedBraid(mask) = rule {
                        mask.remove(s, t);
                    }
                }
            }
            Component::Idempotent => out.rules.retain(|r| !matches!(r, Rule::Idempotent)),
            Component::Family(i) => {
                out.rules.remove(i);
            }
        }
        out
    }

    fn suffix_ok(&self, cond: SuffixCondition, suffix: &[Letter]) -> bool {
        if suffix.iter().any(|l| l.is_primed()) {
            return false;
        }
        let gens: Vec<Gen> = suffix.iter().map(|l| l.gen()).collect();
        let oracle = self.oracle.as_ref().expect("relation sets with suffix conditions carry an oracle");
        match oracle.reduced_left_descents(&gens) {
            Some(desc) => desc & cond.forbidden_left_descents() == 0,
            None => false,
        }
    }

    fn braid_moves(
        &self,
        mask: &PairMask,
        primed: bool,
        w: &[Letter],
        buf: &mut Vec<Letter>,
        emit: &mut dyn FnMut(&[Letter], RelationKind),
    ) {
        let n = w.len();
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (w[i].gen(), w[i + 1].gen());
            if a == b || !mask.contains(a, b) {
                continue;
            }
            let Some(m) = self.order(a, b) else { continue };
            let m = m as usize;
            if i + m > n {
                continue;
            }
            let window = &w[i..i + m];
            if !window.iter().enumerate().all(|(k, l)| l.gen() == if k % 2 == 0 { a } else { b }) {
                continue;
            }
            let first = window[0].is_primed();
            let last = window[m - 1].is_primed();
            let middle = window[1..m - 1].iter().any(|l| l.is_primed());
            let (prime_first, prime_last, kind) = if !primed {
                if first || last || middle {
                    continue;
                }
                (false, false, RelationKind::Braid)
            } else if middle {
                continue;
            } else {
                match (first, last) {
                    (false, false) => (false, false, RelationKind::PrimedBraid),
                    (true, false) => (false, true, RelationKind::PrimedBraid),
                    (false, true) => (true, false, RelationKind::PrimedBraid),
                    (true, true) if m == 2 => (true, true, RelationKind::PrimedBraid),
                    (true, true) => continue,
                }
            };
            buf.clear();
            buf.extend_from_slice(&w[..i]);
            for k in 0..m {
                let g = if k % 2 == 0 { b } else { a };
                let p = (k == 0 && prime_first) || (k == m - 1 && prime_last);
                buf.push(Letter::new(g, p));
            }
            buf.extend_from_slice(&w[i + m..]);
            emit(buf, kind);
        }
    }

    fn family_moves(
        &self,
        f: &PatternFamily,
        w: &[Letter],
        max_len: usize,
        buf: &mut Vec<Letter>,
        emit: &mut dyn FnMut(&[Letter], RelationKind),
    ) {
        let n = w.len();
        for &len in f.lengths() {
            if len > n {
                break;
            }
            let offsets = if f.position == Position::Anywhere { n - len } else { 0 };
            for at in 0..=offsets {
                let pattern = &w[at..at + len];
                if !f.contains(pattern) {
                    continue;
                }
                if let Some(cond) = f.position.suffix_condition() {
                    if !self.suffix_ok(cond, &w[len..]) {
                        continue;
                    }
                }
                for other in f.members() {
                    if other.as_slice() == pattern || n - len + other.len() > max_len {
                        continue;
                    }
                    buf.clear();
                    buf.extend_from_slice(&w[..at]);
                    buf.extend_from_slice(other);
                    buf.extend_from_slice(&w[at + len..]);
                    emit(buf, f.kind);
                }
            }
        }
    }
}

impl Rewriter for RelationSet {
    fn for_each_neighbor(&self, w: &[Letter], max_len: usize, emit: &mut dyn FnMut(&[Letter], RelationKind)) {
        let mut buf = Vec::with_capacity(max_len.max(w.len()) + 1);
        for rule in &self.rules {
            match rule {
                Rule::Braid(mask) => self.braid_moves(mask, false, w, &mut buf, emit),
                Rule::PrimedBraid(mask) => self.braid_moves(mask, true, w, &mut buf, emit),
                Rule::Idempotent => {
                    for i in 0..w.len() {
                        let l = w[i];
                        if l.is_primed() || (i > 0 && w[i - 1] == l) {
                            continue;
                        }
                        if i + 1 < w.len() && w[i + 1] == l {
                            buf.clear();
                            buf.extend_from_slice(&w[..i]);
                            buf.extend_from_slice(&w[i + 1..]);
                            emit(&buf, RelationKind::Idempotent);
                        }
                        if w.len() < max_len {
                            buf.clear();
                            buf.extend_from_slice(&w[..=i]);
                            buf.extend_from_slice(&w[i..]);
                            emit(&buf, RelationKind::Idempotent);
                        }
                    }
                }
                Rule::Family(f) => self.family_moves(f, w, max_len, &mut buf, emit),
            }
        }
    }
}

/// Both directions of each primed braid rule for the pair `s < t`.
fn primed_braid_patterns(s: Gen, t: Gen, m: usize) -> Vec<(Vec<Letter>, Vec<Letter>)> {
    let alt = |a: Gen, b: Gen, first: bool, last: bool| -> Vec<Letter> {
        let gens = alternating(a, b, m);
        gens.iter()
            .enumerate()
            .map(|(k, &g)| Letter::new(g, (k == 0 && first) || (k == m - 1 && last)))
            .collect()
    };
    let mut out = vec![(alt(s, t, false, false), alt(t, s, false, false))];
    if m == 2 {
        out.push((alt(s, t, true, true), alt(t, s, true, true)));
    }
    out.push((alt(s, t, true, false), alt(t, s, false, true)));
    out.push((alt(t, s, true, false), alt(s, t, false, true)));
    out
}

fn dihedral_label(s: Gen, t: Gen) -> String {
    format!("{}{}", s + 1, t + 1)
}

/// Half-braid relations: prefixes of length `m(s,t;*)` for `{s*, t*} = {s, t}`.
pub fn half_braid_families(system: &CoxeterSystem) -> Vec<PatternFamily> {
    let mut out = Vec::new();
    for s in system.generators() {
        for t in s + 1..system.rank() as Gen {
            let (ss, ts) = (system.star(s), system.star(t));
            let Some(m) = system.m(s, t).finite() else { continue };
            let fixed = ss == s && ts == t;
            let swapped = ss == t && ts == s;
            if !(fixed || swapped) || (fixed && m == 2) {
                continue;
            }
            let k = m_star(system, s, t).finite().expect("finite m") as usize;
            out.push(PatternFamily::pair(
                RelationKind::HalfBraid,
                Position::InitialOnly,
                format!("half-braid {}", dihedral_label(s, t)),
                plain(&alternating(s, t, k)),
                plain(&alternating(t, s, k)),
            ));
        }
    }
    out
}

/// Primed half-braid relations, including the `A_1` instance `(s) ∼ (s')`.
pub fn primed_half_braid_families(system: &CoxeterSystem) -> Vec<PatternFamily> {
    let mut out = Vec::new();
    let rank = system.rank() as Gen;
    for s in 0..rank {
        for t in 0..rank {
            let (ss, ts) = (system.star(s), system.star(t));
            let Some(m) = system.m(s, t).finite() else { continue };
            let fixed = ss == s && ts == t;
            let swapped = ss == t && ts == s;
            let k = m_star(system, s, t).finite().expect("finite m") as usize;
            if s < t && (fixed || swapped) {
                out.push(PatternFamily::pair(
                    RelationKind::PrimedHalfBraid,
                    Position::InitialOnly,
                    format!("primed half-braid {}", dihedral_label(s, t)),
                    plain(&alternating_ending(s, t, k)),
                    plain(&alternating_ending(t, s, k)),
                ));
            }
            let toggles = (fixed && m % 2 == 0 && m >= 4) || (swapped && m % 2 == 1);
            if toggles {
                let lhs = plain(&alternating_ending(s, t, k));
                let mut rhs = lhs.clone();
                let last = rhs.len() - 1;
                rhs[last] = rhs[last].toggled();
                out.push(PatternFamily::pair(
                    RelationKind::PrimedHalfBraid,
                    Position::InitialOnly,
                    format!("primed half-braid {} toggle {}", dihedral_label(s, t), s + 1),
                    lhs,
                    rhs,
                ));
            }
        }
    }
    out
}

/// Mixed half-braid relations `(alt_p, r) ∼ (alt_{p+1}, r)`.
pub fn mixed_half_braid_families(system: &CoxeterSystem) -> Vec<PatternFamily> {
    let mut out = Vec::new();
    let rank = system.rank() as Gen;
    for s in 0..rank {
        for t in 0..rank {
            if s == t {
                continue;
            }
            let Some(m) = system.m(s, t).finite() else { continue };
            let k = m_star(system, s, t).finite().expect("finite m");
            for p in k..m {
                out.push(PatternFamily::pair(
                    RelationKind::MixedHalfBraid,
                    Position::InitialWithSuffixCondition(SuffixCondition::NeitherLeftDescent(s, t)),
                    format!("mixed half-braid {} p={}", dihedral_label(s, t), p),
                    plain(&alternating(s, t, p as usize)),
                    plain(&alternating(s, t, p as usize + 1)),
                ));
            }
        }
    }
    out
}

fn spell(pattern: &str, labeling: &[Gen]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for c in pattern.chars() {
        if c == '\'' {
            let last = out.last_mut().expect("prime follows a letter");
            *last = last.toggled();
        } else {
            let idx = (c as u8 - b'a') as usize;
            out.push(Letter::plain(labeling[idx]));
        }
    }
    out
}

fn exceptional_lists(
    label: TypeLabel,
) -> Option<(&'static [(&'static str, &'static str)], &'static [&'static str])> {
    Some(match label {
        TypeLabel::A3Twisted => {
            (&[("bcab", "bcba"), ("bcab", "bcab'"), ("bcba", "bcba'")], &["bcab", "bcba", "bcbab"])
        }
        TypeLabel::BC3 => (
            &[("abcaba", "abcbab"), ("abcaba", "abcaba'"), ("abcbab", "abcbab'")],
            &["abcaba", "abcbab", "abcbaba"],
        ),
        TypeLabel::D4 => (
            &[("dbacbacd", "dbacbadc"), ("dbacbacd", "dbacbacd'"), ("dbacbadc", "dbacbadc'")],
            &["dbacbacd", "dbacbadc", "dbacbadcd"],
        ),
        TypeLabel::H3 => (
            &[("acbacbabc", "acbacbacb"), ("acbacbabc", "acbacbabc'"), ("acbacbacb", "acbacbacb'")],
            &["acbacbabc", "acbacbacb", "acbacbacbc", "acbacbacba", "acbacbacbab"],
        ),
        _ => return None,
    })
}

/// The explicit relation lists for one of the four exceptional types under
/// one labeling of its Coxeter graph.
pub fn exceptional_families(
    label: TypeLabel,
    labeling: &[Gen],
    variant: Variant,
) -> Result<Vec<PatternFamily>> {
    let (primed, chain) =
        exceptional_lists(label).ok_or_else(|| CoxeterError::UnknownType(label.to_string()))?;
    let needed = if label == TypeLabel::D4 { 4 } else { 3 };
    if labeling.len() != needed {
        return Err(CoxeterError::UnknownType(format!("{label} needs {needed} labels")));
    }
    let tag = labeling.iter().map(|g| (g + 1).to_string()).collect::<Vec<_>>().join("");
    let j = ParabolicSubset::new(labeling.iter().copied());
    let out = match variant {
        Variant::Plain => vec![PatternFamily::pair(
            RelationKind::ExceptionalList,
            Position::InitialOnly,
            format!("{label}[{tag}] initial"),
            spell(primed[0].0, labeling),
            spell(primed[0].1, labeling),
        )],
        Variant::Primed => primed
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                PatternFamily::pair(
                    RelationKind::ExceptionalList,
                    Position::InitialOnly,
                    format!("{label}[{tag}] primed {}", i + 1),
                    spell(a, labeling),
                    spell(b, labeling),
                )
            })
            .collect(),
        Variant::Hecke => chain
            .windows(2)
            .enumerate()
            .map(|(i, pair)| {
                PatternFamily::pair(
                    RelationKind::ExceptionalList,
                    Position::InitialWithSuffixCondition(SuffixCondition::MinCosetRep(j)),
                    format!("{label}[{tag}] hecke {}", i + 1),
                    spell(pair[0], labeling),
                    spell(pair[1], labeling),
                )
            })
            .collect(),
    };
    Ok(out)
}

/// Schemas of [`exceptional_families`].
pub fn exceptional_schemas(
    label: TypeLabel,
    labeling: &[Gen],
    variant: Variant,
) -> Result<Vec<RelationSchema>> {
    Ok(exceptional_families(label, labeling, variant)?.iter().flat_map(PatternFamily::to_schemas).collect())
}

fn listed_type(label: TypeLabel, variant: Variant) -> bool {
    match label {
        TypeLabel::A1 => variant == Variant::Primed,
        TypeLabel::I2(Order::Finite(n)) | TypeLabel::I2Twisted(Order::Finite(n)) => n >= 2,
        TypeLabel::I2(_) | TypeLabel::I2Twisted(_) | TypeLabel::Other => false,
        _ => label.is_exceptional(),
    }
}

/// Initial relations for one `J = J*` with `W_J` finite: every pair of words
/// for `w_0^J` in the chosen word set.
pub fn initial_family<G: CoxeterGroup>(
    engine: &Engine<G>,
    j: ParabolicSubset,
    variant: Variant,
) -> Result<PatternFamily> {
    let system = engine.system();
    if !j.is_star_invariant(system) {
        return Err(CoxeterError::NotStarInvariant(j.to_string()));
    }
    let w0 = engine.longest_element(j)?;
    let label = classify_twisted_type(system, j)?.label;
    let family = match variant {
        Variant::Plain => PatternFamily::new(
            RelationKind::Initial,
            Position::InitialOnly,
            format!("initial {label} {j}"),
            engine.involution_words(&w0).iter().map(|w| plain(&w.0)),
        ),
        Variant::Primed => PatternFamily::new(
            RelationKind::Initial,
            Position::InitialOnly,
            format!("primed initial {label} {j}"),
            engine.primed_words(&w0).into_iter().map(|w| w.0),
        ),
        Variant::Hecke => PatternFamily::new(
            RelationKind::InitialHecke,
            Position::InitialWithSuffixCondition(SuffixCondition::MinCosetRep(j)),
            format!("initial hecke {label} {j}"),
            engine.reduced_hecke_words(&w0)?.iter().map(|w| plain(&w.0)),
        ),
    };
    Ok(family)
}

/// Schemas of [`initial_family`].
pub fn initial_relation_schemas<G: CoxeterGroup>(
    engine: &Engine<G>,
    j: ParabolicSubset,
    variant: Variant,
) -> Result<Vec<RelationSchema>> {
    Ok(initial_family(engine, j, variant)?.to_schemas())
}

/// Every `J = J*` of a listed type, with its classification.
fn listed_subsets(
    system: &CoxeterSystem,
    variant: Variant,
) -> Result<Vec<(ParabolicSubset, TypeLabel, Vec<Vec<Gen>>)>> {
    let mut out = Vec::new();
    for j in ParabolicSubset::star_invariant_subsets(system, 4) {
        let c = classify_twisted_type(system, j)?;
        if listed_type(c.label, variant) {
            out.push((j, c.label, c.labelings));
        }
    }
    Ok(out)
}

fn all_initial<G: CoxeterGroup>(engine: &Engine<G>, variant: Variant) -> Result<Vec<Rule>> {
    let mut out = Vec::new();
    for (j, _, _) in listed_subsets(engine.system(), variant)? {
        out.push(Rule::Family(initial_family(engine, j, variant)?));
    }
    Ok(out)
}

fn all_exceptional(system: &CoxeterSystem, variant: Variant) -> Result<Vec<Rule>> {
    let mut out = Vec::new();
    for (_, label, labelings) in listed_subsets(system, variant)? {
        if !label.is_exceptional() {
            continue;
        }
        for labeling in labelings {
            out.extend(exceptional_families(label, &labeling, variant)?.into_iter().map(Rule::Family));
        }
    }
    Ok(out)
}

impl RelationSet {
    /// Ordinary braid relations only.
    pub fn braid(system: &CoxeterSystem) -> Self {
        RelationSet::empty(system, "braid").with_rule(Rule::Braid(PairMask::all(system.rank())))
    }

    /// Braid relations plus every initial relation of a listed type.
    pub fn initial<G: CoxeterGroup>(engine: &Engine<G>) -> Result<Self> {
        let system = engine.system();
        let mut set = RelationSet::braid(system);
        set.name = "braid+initial".into();
        set.extend(all_initial(engine, Variant::Plain)?);
        Ok(set)
    }

    /// Primed braid relations plus every primed initial relation.
    pub fn primed_initial<G: CoxeterGroup>(engine: &Engine<G>) -> Result<Self> {
        let system = engine.system();
        let mut set = RelationSet::empty(system, "primed-braid+primed-initial")
            .with_rule(Rule::PrimedBraid(PairMask::all(system.rank())));
        set.extend(all_initial(engine, Variant::Primed)?);
        Ok(set)
    }

    /// Primed braid and primed half-braid relations with the exceptional lists.
    pub fn primed_minimal(system: &CoxeterSystem) -> Result<Self> {
        let mut set = RelationSet::primed_half_braid(system);
        set.name = "primed-braid+primed-half-braid+exceptional".into();
        set.extend(all_exceptional(system, Variant::Primed)?);
        Ok(set)
    }

    /// Braid relations plus every initial Hecke relation.
    pub fn initial_hecke<G: CoxeterGroup + 'static>(engine: &Arc<Engine<G>>) -> Result<Self> {
        let system = engine.system();
        let mut set = RelationSet::braid(system).with_oracle(engine.clone());
        set.name = "braid+initial-hecke".into();
        set.extend(all_initial(engine.as_ref(), Variant::Hecke)?);
        Ok(set)
    }

    /// Braid and mixed half-braid relations with the exceptional Hecke chains.
    pub fn hecke_minimal(system: &CoxeterSystem, oracle: Arc<dyn SuffixOracle>) -> Result<Self> {
        let mut set = RelationSet::mixed_half_braid(system, oracle);
        set.name = "braid+mixed-half-braid+exceptional".into();
        set.extend(all_exceptional(system, Variant::Hecke)?);
        Ok(set)
    }

    /// [`RelationSet::initial`] plus `(…,s,s,…) ∼ (…,s,…)`.
    pub fn idempotent<G: CoxeterGroup>(engine: &Engine<G>) -> Result<Self> {
        let mut set = RelationSet::initial(engine)?;
        set.name = "braid+initial+idempotent".into();
        set.push(Rule::Idempotent);
        Ok(set)
    }

    /// Braid and half-braid relations.
    pub fn half_braid(system: &CoxeterSystem) -> Self {
        let mut set = RelationSet::braid(system);
        set.name = "braid+half-braid".into();
        set.extend(half_braid_families(system).into_iter().map(Rule::Family));
        set
    }

    /// Primed braid and primed half-braid relations.
    pub fn primed_half_braid(system: &CoxeterSystem) -> Self {
        let mut set = RelationSet::empty(system, "primed-braid+primed-half-braid")
            .with_rule(Rule::PrimedBraid(PairMask::all(system.rank())));
        set.extend(primed_half_braid_families(system).into_iter().map(Rule::Family));
        set
    }

    /// Braid and mixed half-braid relations.
    pub fn mixed_half_braid(system: &CoxeterSystem, oracle: Arc<dyn SuffixOracle>) -> Self {
        let mut set = RelationSet::braid(system).with_oracle(oracle);
        set.name = "braid+mixed-half-braid".into();
        set.extend(mixed_half_braid_families(system).into_iter().map(Rule::Family));
        set
    }
}

fn collect_neighbors(set: &RelationSet, w: &[Letter]) -> BTreeSet<PrimedWord> {
    let mut out = BTreeSet::new();
    set.for_each_neighbor(w, w.len() + 1, &mut |n, _| {
        out.insert(PrimedWord(n.to_vec()));
    });
    out
}

fn unprimed(words: BTreeSet<PrimedWord>) -> BTreeSet<Word> {
    words.into_iter().map(|w| w.unprimed()).collect()
}

/// One braid move at any position.
pub fn braid_neighbors(system: &CoxeterSystem, w: &Word) -> BTreeSet<Word> {
    unprimed(collect_neighbors(&RelationSet::braid(system), &plain(&w.0)))
}

/// One half-braid move on a prefix.
pub fn half_braid_neighbors(system: &CoxeterSystem, w: &Word) -> BTreeSet<Word> {
    let set = RelationSet::empty(system, "half-braid").with_rules(half_braid_families(system));
    unprimed(collect_neighbors(&set, &plain(&w.0)))
}

/// One primed braid move at any position.
pub fn primed_braid_neighbors(system: &CoxeterSystem, w: &PrimedWord) -> BTreeSet<PrimedWord> {
    let set =
        RelationSet::empty(system, "primed-braid").with_rule(Rule::PrimedBraid(PairMask::all(system.rank())));
    collect_neighbors(&set, &w.0)
}

/// One primed half-braid move on a prefix.
pub fn primed_half_braid_neighbors(system: &CoxeterSystem, w: &PrimedWord) -> BTreeSet<PrimedWord> {
    let set = RelationSet::empty(system, "primed-half-braid").with_rules(primed_half_braid_families(system));
    collect_neighbors(&set, &w.0)
}

/// One mixed half-braid move; the suffix condition is checked through `oracle`.
pub fn mixed_half_braid_neighbors(
    system: &CoxeterSystem,
    oracle: Arc<dyn SuffixOracle>,
    w: &Word,
) -> BTreeSet<Word> {
    let set = RelationSet::empty(system, "mixed-half-braid")
        .with_oracle(oracle)
        .with_rules(mixed_half_braid_families(system));
    unprimed(collect_neighbors(&set, &plain(&w.0)))
}

impl RelationSet {
    fn with_rules(mut self, families: Vec<PatternFamily>) -> Self {
        self.extend(families.into_iter().map(Rule::Family));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;

    fn w(s: &str, rank: usize) -> Word {
        Word::parse(s, rank).unwrap()
    }

    fn pw(s: &str, rank: usize) -> PrimedWord {
        PrimedWord::parse(s, rank).unwrap()
    }

    fn words(list: &[&str], rank: usize) -> BTreeSet<Word> {
        list.iter().map(|s| w(s, rank)).collect()
    }

    fn pwords(list: &[&str], rank: usize) -> BTreeSet<PrimedWord> {
        list.iter().map(|s| pw(s, rank)).collect()
    }

    #[test]
    fn braid_moves() {
        let a2 = CoxeterSystem::type_a(2).unwrap();
        assert_eq!(braid_neighbors(&a2, &w("121", 2)), words(&["212"], 2));
        let a3 = CoxeterSystem::type_a(3).unwrap();
        assert_eq!(braid_neighbors(&a3, &w("13", 3)), words(&["31"], 3));
        assert_eq!(braid_neighbors(&a3, &w("1213", 3)), words(&["2123", "1231"], 3));
    }

    #[test]
    fn half_braid_moves() {
        let t = CoxeterSystem::twisted_a(3).unwrap();
        assert_eq!(half_braid_neighbors(&t, &w("1231", 3)), words(&["3231"], 3));
        assert_eq!(half_braid_neighbors(&t, &w("2123", 3)), BTreeSet::new());
        let i2 = CoxeterSystem::dihedral(Order::Finite(2)).unwrap();
        assert!(half_braid_neighbors(&i2, &w("12", 2)).is_empty());
        let a2 = CoxeterSystem::type_a(2).unwrap();
        assert_eq!(half_braid_neighbors(&a2, &w("121", 2)), words(&["211"], 2));
    }

    #[test]
    fn primed_braid_moves() {
        let a3 = CoxeterSystem::type_a(3).unwrap();
        assert_eq!(primed_braid_neighbors(&a3, &pw("1'3'", 3)), pwords(&["3'1'"], 3));
        assert_eq!(primed_braid_neighbors(&a3, &pw("1'3", 3)), pwords(&["31'"], 3));
        assert_eq!(primed_braid_neighbors(&a3, &pw("1'21", 3)), pwords(&["212'"], 3));
        assert_eq!(primed_braid_neighbors(&a3, &pw("212'", 3)), pwords(&["1'21"], 3));
        assert!(primed_braid_neighbors(&a3, &pw("1'21'", 3)).is_empty());
        let bc3 = CoxeterSystem::bc3();
        assert_eq!(primed_braid_neighbors(&bc3, &pw("1'212", 3)), pwords(&["2121'"], 3));
    }

    #[test]
    fn primed_half_braid_moves() {
        let a1 = CoxeterSystem::type_a(1).unwrap();
        assert_eq!(primed_half_braid_neighbors(&a1, &pw("1", 1)), pwords(&["1'"], 1));
        let bc = CoxeterSystem::dihedral(Order::Finite(4)).unwrap();
        let got = primed_half_braid_neighbors(&bc, &pw("212", 2));
        assert!(got.contains(&pw("121", 2)));
        assert!(got.contains(&pw("212'", 2)));
        let i2 = CoxeterSystem::dihedral(Order::Finite(2)).unwrap();
        assert!(!primed_half_braid_neighbors(&i2, &pw("21", 2)).contains(&pw("21'", 2)));
    }

    #[test]
    fn mixed_moves_respect_suffix() {
        let a3 = CoxeterSystem::type_a(3).unwrap();
        let engine = Arc::new(Engine::new(PermGroup::symmetric(4, false).unwrap()));
        let got = mixed_half_braid_neighbors(&a3, engine.clone(), &w("12", 3));
        assert!(got.contains(&w("121", 3)));
        // suffix (1) has s = 1 as a left descent
        let got = mixed_half_braid_neighbors(&a3, engine, &w("121", 3));
        assert!(!got.contains(&w("1211", 3)));
        assert!(got.contains(&w("12", 3)));
    }

    #[test]
    fn exceptional_lists_are_exact() {
        let bc3 = exceptional_schemas(TypeLabel::BC3, &[0, 1, 2], Variant::Primed).unwrap();
        assert!(bc3.iter().any(|s| s.to_string() == "(123121',-) ~ (123121,-)"));
        let d4 = exceptional_schemas(TypeLabel::D4, &[0, 2, 1, 3], Variant::Hecke).unwrap();
        assert!(d4.iter().any(|s| s.to_string() == "(43123142,r) ~ (431231424,r)"));
        let h3 = exceptional_families(TypeLabel::H3, &[0, 1, 2], Variant::Hecke).unwrap();
        assert_eq!(h3.len(), 4);
        assert!(exceptional_schemas(TypeLabel::A1, &[0], Variant::Plain).is_err());
    }

    #[test]
    fn initial_relations_of_small_types() {
        let e = Engine::new(crate::generic::GenericGroup::new(CoxeterSystem::type_a(2).unwrap()));
        let s = initial_relation_schemas(&e, ParabolicSubset::new([0, 1]), Variant::Plain).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].to_string(), "(12,-) ~ (21,-)");
        let e1 = Engine::new(crate::generic::GenericGroup::new(CoxeterSystem::type_a(1).unwrap()));
        let s = initial_relation_schemas(&e1, ParabolicSubset::new([0]), Variant::Primed).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].to_string(), "(1',-) ~ (1,-)");
        let t = Engine::new(crate::generic::GenericGroup::new(
            CoxeterSystem::twisted_dihedral(Order::Finite(2)).unwrap(),
        ));
        let s = initial_relation_schemas(&t, ParabolicSubset::new([0, 1]), Variant::Plain).unwrap();
        assert_eq!(s[0].to_string(), "(1,-) ~ (2,-)");
    }

    #[test]
    fn listed_schemas_match_generated_moves() {
        let system = CoxeterSystem::bc3();
        let set = RelationSet::primed_half_braid(&system);
        let schemas = set.schemas();
        for word in ["1'212", "2121'", "12'", "2'1", "232", "1'3'"] {
            let word = pw(word, 3);
            let mut expected = BTreeSet::new();
            for sc in &schemas {
                for (a, b) in [(&sc.lhs, &sc.rhs), (&sc.rhs, &sc.lhs)] {
                    let n = a.len();
                    let starts: Vec<usize> = match sc.position {
                        Position::Anywhere => (0..=word.len().saturating_sub(n)).collect(),
                        _ => vec![0],
                    };
                    for at in starts {
                        if at + n <= word.len() && word.0[at..at + n] == a.0[..] {
                            let mut v = word.0[..at].to_vec();
                            v.extend_from_slice(&b.0);
                            v.extend_from_slice(&word.0[at + n..]);
                            expected.insert(PrimedWord(v));
                        }
                    }
                }
            }
            assert_eq!(collect_neighbors(&set, &word.0), expected, "{word}");
        }
    }
}
