use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// The two base groups: `Z² = ⟨a, b | [a, b]⟩` and the Klein bottle group
/// `⟨a, b | a⁻¹bab⟩`. Both have normal form `aⁱbʲ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Z2,
    Klein,
}

/// The element `aⁱbʲ` of a base group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseElement {
    pub i: BigInt,
    pub j: BigInt,
}

impl BaseElement {
    pub fn new(i: impl Into<BigInt>, j: impl Into<BigInt>) -> Self {
        BaseElement {
            i: i.into(),
            j: j.into(),
        }
    }

    pub fn identity() -> Self {
        BaseElement::default()
    }

    pub fn is_identity(&self) -> bool {
        self.i.is_zero() && self.j.is_zero()
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl BaseKind {
    /// Product in normal form. In the Klein bottle group `b a = a b⁻¹`, so
    /// `(i, j)(k, l) = (i + k, (−1)^k j + l)`.
    pub fn mul(self, x: &BaseElement, y: &BaseElement) -> BaseElement {
        let mut out = x.clone();
        self.mul_assign(&mut out, y);
        out
    }

    pub fn mul_assign(self, x: &mut BaseElement, y: &BaseElement) {
        x.i += &y.i;
        if self == BaseKind::Klein && y.i.is_odd() {
            x.j = -&x.j;
        }
        x.j += &y.j;
    }

    pub fn inverse(self, x: &BaseElement) -> BaseElement {
        let j = match self {
            BaseKind::Klein if x.i.is_even() => -&x.j,
            BaseKind::Klein => x.j.clone(),
            BaseKind::Z2 => -&x.j,
        };
        BaseElement { i: -&x.i, j }
    }

    /// `x^m` in closed form. In the Klein bottle group an element with odd
    /// `a`-exponent squares to a pure power of `a`.
    pub fn pow(self, x: &BaseElement, m: &BigInt) -> BaseElement {
        let i = &x.i * m;
        let j = match self {
            BaseKind::Klein if x.i.is_odd() => {
                if m.is_odd() {
                    x.j.clone()
                } else {
                    BigInt::zero()
                }
            }
            _ => &x.j * m,
        };
        BaseElement { i, j }
    }

    /// The exponent `m` with `g = c^m`, if `g` lies in `⟨c⟩`. `c` must not be
    /// the identity (both base groups are torsion-free).
    pub fn cyclic_membership(self, g: &BaseElement, c: &BaseElement) -> Option<BigInt> {
        assert!(!c.is_identity(), "cyclic subgroup generator must be nontrivial");
        let m = if !c.i.is_zero() {
            let (m, r) = g.i.div_rem(&c.i);
            if !r.is_zero() {
                return None;
            }
            m
        } else {
            if !g.i.is_zero() {
                return None;
            }
            let (m, r) = g.j.div_rem(&c.j);
            if !r.is_zero() {
                return None;
            }
            m
        };
        (self.pow(c, &m) == *g).then_some(m)
    }

    /// Generator `a` (index 0) or `b` (index 1).
    pub fn generator(index: usize) -> BaseElement {
        match index {
            0 => BaseElement::new(1, 0),
            1 => BaseElement::new(0, 1),
            _ => panic!("base groups have two generators"),
        }
    }

    /// `a^e` or `b^e`.
    pub fn generator_power(index: usize, e: &BigInt) -> BaseElement {
        match index {
            0 => BaseElement::new(e.clone(), 0),
            1 => BaseElement::new(0, e.clone()),
            _ => panic!("base groups have two generators"),
        }
    }

    /// Whether `x` has infinite order; true for every nontrivial element.
    pub fn infinite_order(self, x: &BaseElement) -> bool {
        !x.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(i: i64, j: i64) -> BaseElement {
        BaseElement::new(i, j)
    }

    /// Repeated multiplication, independent of the closed-form power.
    fn slow_pow(kind: BaseKind, x: &BaseElement, m: i64) -> BaseElement {
        let step = if m < 0 { kind.inverse(x) } else { x.clone() };
        let mut acc = BaseElement::identity();
        for _ in 0..m.unsigned_abs() {
            acc = kind.mul(&acc, &step);
        }
        acc
    }

    /// Multiplication by letters: b·a = a·b⁻¹ applied to a word aⁱbʲ · (gen).
    fn klein_by_letters(letters: &[(usize, i64)]) -> BaseElement {
        // Track the element as a word a^i b^j and push letters one at a time.
        let (mut i, mut j) = (0i64, 0i64);
        for &(g, s) in letters {
            if g == 0 {
                // a^i b^j a^s = a^{i+s} b^{(−1)^s j}
                i += s;
                j = -j;
            } else {
                j += s;
            }
        }
        el(i, j)
    }

    #[test]
    fn klein_law_matches_letter_rewriting() {
        let word = [(0, 1), (1, 1), (0, -1), (1, 1), (0, 1), (0, 1), (1, -1)];
        let mut acc = BaseElement::identity();
        for &(g, s) in &word {
            acc = BaseKind::Klein.mul(&acc, &BaseKind::generator_power(g, &BigInt::from(s)));
        }
        assert_eq!(acc, klein_by_letters(&word));
        // a⁻¹ b a b is trivial.
        let rel = [(0, -1), (1, 1), (0, 1), (1, 1)];
        assert!(klein_by_letters(&rel).is_identity());
    }

    #[test]
    fn klein_membership_examples() {
        let k = BaseKind::Klein;
        assert_eq!(k.cyclic_membership(&el(6, 1), &el(6, 1)), Some(BigInt::from(1)));
        assert_eq!(k.cyclic_membership(&el(0, 0), &el(6, 1)), Some(BigInt::from(0)));
        assert_eq!(k.cyclic_membership(&el(0, 0), &el(0, 3)), Some(BigInt::from(0)));
        assert_eq!(slow_pow(k, &el(6, 1), 2), el(12, 2));
        assert_eq!(k.cyclic_membership(&el(12, 2), &el(6, 1)), Some(BigInt::from(2)));
        assert_eq!(k.cyclic_membership(&el(12, 1), &el(6, 1)), None);
        assert_eq!(k.cyclic_membership(&el(1, 0), &el(2, 0)), None);
        // Odd a-exponent: (a b)² = a².
        assert_eq!(slow_pow(k, &el(1, 1), 2), el(2, 0));
        assert_eq!(k.cyclic_membership(&el(2, 0), &el(1, 1)), Some(BigInt::from(2)));
        assert_eq!(k.cyclic_membership(&el(3, 1), &el(1, 1)), Some(BigInt::from(3)));
        assert_eq!(k.cyclic_membership(&el(3, -1), &el(1, 1)), None);
        assert_eq!(k.cyclic_membership(&el(-1, 1), &el(1, 1)), Some(BigInt::from(-1)));
    }

    #[test]
    fn z2_membership() {
        let z = BaseKind::Z2;
        assert_eq!(z.cyclic_membership(&el(3, 3), &el(1, 1)), Some(BigInt::from(3)));
        assert_eq!(z.cyclic_membership(&el(3, -3), &el(1, -1)), Some(BigInt::from(3)));
        assert_eq!(z.cyclic_membership(&el(3, 2), &el(1, 1)), None);
        assert_eq!(z.cyclic_membership(&el(0, -4), &el(0, 2)), Some(BigInt::from(-2)));
        assert_eq!(z.cyclic_membership(&el(1, -4), &el(0, 2)), None);
    }

    fn arb_el() -> impl Strategy<Value = BaseElement> {
        (-50i64..50, -50i64..50).prop_map(|(i, j)| el(i, j))
    }

    fn arb_kind() -> impl Strategy<Value = BaseKind> {
        prop_oneof![Just(BaseKind::Z2), Just(BaseKind::Klein)]
    }

    proptest! {
        #[test]
        fn associative(k in arb_kind(), x in arb_el(), y in arb_el(), z in arb_el()) {
            prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
        }

        #[test]
        fn inverse_cancels(k in arb_kind(), x in arb_el()) {
            prop_assert!(k.mul(&x, &k.inverse(&x)).is_identity());
            prop_assert!(k.mul(&k.inverse(&x), &x).is_identity());
        }

        #[test]
        fn closed_form_power(k in arb_kind(), x in arb_el(), m in -12i64..12) {
            prop_assert_eq!(k.pow(&x, &BigInt::from(m)), slow_pow(k, &x, m));
        }

        #[test]
        fn membership_finds_powers(k in arb_kind(), c in arb_el(), m in -20i64..20) {
            prop_assume!(!c.is_identity());
            let g = slow_pow(k, &c, m);
            prop_assert_eq!(k.cyclic_membership(&g, &c), Some(BigInt::from(m)));
        }

        #[test]
        fn membership_is_sound(k in arb_kind(), c in arb_el(), g in arb_el()) {
            prop_assume!(!c.is_identity());
            if let Some(m) = k.cyclic_membership(&g, &c) {
                prop_assert_eq!(k.pow(&c, &m), g);
            }
        }
    }
}
