//! The twisted braid lengths `m(s, t; θ)`.

use crate::group::CoxeterGroup;
use crate::system::{CoxeterSystem, Order};
use crate::word::Gen;

/// Where a map `θ : {s, t} → W` sends one of the two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Image {
    S,
    T,
    Elsewhere,
}

/// `m(s, t; θ)` from `m = m(s, t)` and the images `θ(s)`, `θ(t)`.
pub fn m_twisted(m: Order, theta_s: Image, theta_t: Image) -> Order {
    let Some(m) = m.finite() else {
        return Order::Infinite;
    };
    let preserves = matches!((theta_s, theta_t), (Image::S, Image::T) | (Image::T, Image::S))
        || (m == 1 && theta_s == Image::S);
    let value = if m % 2 == 1 && preserves {
        m.div_ceil(2)
    } else if m % 2 == 0 && theta_s == Image::S && theta_t == Image::T {
        m / 2 + 1
    } else if m % 2 == 0 && theta_s == Image::T && theta_t == Image::S {
        m / 2
    } else {
        m
    };
    Order::Finite(value)
}

/// Image of `x` under `Ad*_z : w ↦ (z w z⁻¹)*`, relative to `{s, t}`.
///
/// `(z x z⁻¹)* = s` exactly when `z x = s* z`.
pub fn ad_star_image<G: CoxeterGroup>(g: &G, z: &G::Elem, x: Gen, s: Gen, t: Gen) -> Image {
    let sys = g.system();
    let zx = g.multiply_gen(z, x);
    if zx == g.gen_multiply(sys.star(s), z) {
        Image::S
    } else if zx == g.gen_multiply(sys.star(t), z) {
        Image::T
    } else {
        Image::Elsewhere
    }
}

/// `m(s, t; Ad*_z)`.
pub fn m_twisted_at<G: CoxeterGroup>(g: &G, z: &G::Elem, s: Gen, t: Gen) -> Order {
    let m = g.system().m(s, t);
    m_twisted(m, ad_star_image(g, z, s, s, t), ad_star_image(g, z, t, s, t))
}

/// `m(s, t; *)`, the twist by the diagram involution itself.
pub fn m_star(system: &CoxeterSystem, s: Gen, t: Gen) -> Order {
    let image = |x: Gen| {
        let y = system.star(x);
        if y == s {
            Image::S
        } else if y == t {
            Image::T
        } else {
            Image::Elsewhere
        }
    };
    m_twisted(system.m(s, t), image(s), image(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cases() {
        let f = Order::Finite;
        assert_eq!(m_twisted(f(3), Image::S, Image::T), f(2));
        assert_eq!(m_twisted(f(3), Image::T, Image::S), f(2));
        assert_eq!(m_twisted(f(4), Image::S, Image::T), f(3));
        assert_eq!(m_twisted(f(4), Image::T, Image::S), f(2));
        assert_eq!(m_twisted(f(5), Image::Elsewhere, Image::T), f(5));
        assert_eq!(m_twisted(f(2), Image::S, Image::T), f(2));
        assert_eq!(m_twisted(f(2), Image::T, Image::S), f(1));
        assert_eq!(m_twisted(Order::Infinite, Image::S, Image::T), Order::Infinite);
    }

    #[test]
    fn star_twist_of_named_systems() {
        let a3 = CoxeterSystem::twisted_a(3).unwrap();
        assert_eq!(m_star(&a3, 0, 2), Order::Finite(1));
        assert_eq!(m_star(&a3, 1, 1), Order::Finite(1));
        let bc3 = CoxeterSystem::bc3();
        assert_eq!(m_star(&bc3, 0, 1), Order::Finite(3));
        assert_eq!(m_star(&bc3, 1, 2), Order::Finite(2));
        assert_eq!(m_star(&bc3, 0, 2), Order::Finite(2));
    }
}
