//! Runtime choice between the two backends.

use std::fmt;

use crate::generic::{GenericElement, GenericGroup};
use crate::group::CoxeterGroup;
use crate::perm::{PermGroup, Window};
use crate::system::CoxeterSystem;
use crate::word::{Gen, Word};

pub enum AnyGroup {
    Generic(GenericGroup),
    Permutation(PermGroup),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Generic(GenericElement),
    Permutation(Window),
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Generic(w) => write!(f, "{w:?}"),
            GroupElement::Permutation(w) => write!(f, "{w}"),
        }
    }
}

impl GroupElement {
    pub fn as_window(&self) -> Option<&Window> {
        match self {
            GroupElement::Permutation(w) => Some(w),
            GroupElement::Generic(_) => None,
        }
    }
}

impl AnyGroup {
    pub fn as_perm(&self) -> Option<&PermGroup> {
        match self {
            AnyGroup::Permutation(g) => Some(g),
            AnyGroup::Generic(_) => None,
        }
    }
}

impl From<GenericGroup> for AnyGroup {
    fn from(g: GenericGroup) -> Self {
        AnyGroup::Generic(g)
    }
}

impl From<PermGroup> for AnyGroup {
    fn from(g: PermGroup) -> Self {
        AnyGroup::Permutation(g)
    }
}

const MIXED: &str = "element from a different backend";

macro_rules! dispatch {
    ($self:ident, $g:ident => $body:expr) => {
        match $self {
            AnyGroup::Generic($g) => $body,
            AnyGroup::Permutation($g) => $body,
        }
    };
}

macro_rules! with_elem {
    ($self:ident, $w:expr, |$g:ident, $e:ident| $gen:expr, $perm:expr) => {
        match ($self, $w) {
            (AnyGroup::Generic($g), GroupElement::Generic($e)) => $gen,
            (AnyGroup::Permutation($g), GroupElement::Permutation($e)) => $perm,
            _ => panic!("{}", MIXED),
        }
    };
}

impl CoxeterGroup for AnyGroup {
    type Elem = GroupElement;

    fn system(&self) -> &CoxeterSystem {
        dispatch!(self, g => g.system())
    }

    fn identity(&self) -> GroupElement {
        match self {
            AnyGroup::Generic(g) => GroupElement::Generic(g.identity()),
            AnyGroup::Permutation(g) => GroupElement::Permutation(g.identity()),
        }
    }

    fn multiply_gen(&self, w: &GroupElement, s: Gen) -> GroupElement {
        with_elem!(
            self,
            w,
            |g, e| GroupElement::Generic(g.multiply_gen(e, s)),
            GroupElement::Permutation(g.multiply_gen(e, s))
        )
    }

    fn gen_multiply(&self, s: Gen, w: &GroupElement) -> GroupElement {
        with_elem!(
            self,
            w,
            |g, e| GroupElement::Generic(g.gen_multiply(s, e)),
            GroupElement::Permutation(g.gen_multiply(s, e))
        )
    }

    fn length(&self, w: &GroupElement) -> usize {
        with_elem!(self, w, |g, e| g.length(e), g.length(e))
    }

    fn reduced_word(&self, w: &GroupElement) -> Word {
        with_elem!(self, w, |g, e| g.reduced_word(e), g.reduced_word(e))
    }

    fn is_right_descent(&self, w: &GroupElement, s: Gen) -> bool {
        with_elem!(self, w, |g, e| g.is_right_descent(e, s), g.is_right_descent(e, s))
    }

    fn is_left_descent(&self, s: Gen, w: &GroupElement) -> bool {
        with_elem!(self, w, |g, e| g.is_left_descent(s, e), g.is_left_descent(s, e))
    }

    fn right_descents(&self, w: &GroupElement) -> u64 {
        with_elem!(self, w, |g, e| g.right_descents(e), g.right_descents(e))
    }

    fn left_descents(&self, w: &GroupElement) -> u64 {
        with_elem!(self, w, |g, e| g.left_descents(e), g.left_descents(e))
    }

    fn inverse(&self, w: &GroupElement) -> GroupElement {
        with_elem!(
            self,
            w,
            |g, e| GroupElement::Generic(g.inverse(e)),
            GroupElement::Permutation(g.inverse(e))
        )
    }

    fn star_elem(&self, w: &GroupElement) -> GroupElement {
        with_elem!(
            self,
            w,
            |g, e| GroupElement::Generic(g.star_elem(e)),
            GroupElement::Permutation(g.star_elem(e))
        )
    }

    fn multiply(&self, v: &GroupElement, w: &GroupElement) -> GroupElement {
        match (self, v, w) {
            (AnyGroup::Generic(g), GroupElement::Generic(a), GroupElement::Generic(b)) => {
                GroupElement::Generic(g.multiply(a, b))
            }
            (AnyGroup::Permutation(g), GroupElement::Permutation(a), GroupElement::Permutation(b)) => {
                GroupElement::Permutation(g.multiply(a, b))
            }
            _ => panic!("{}", MIXED),
        }
    }
}
