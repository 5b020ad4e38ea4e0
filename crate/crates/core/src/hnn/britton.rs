use std::fmt;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{BaseElement, HnnGroup, Role};
use crate::words::Word;

/// Order in which pinches are removed. All strategies reach a pinch-free
/// form with the same stable-letter sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinchStrategy {
    /// Single left-to-right pass with a stack; each new stable letter is
    /// checked against the innermost open one.
    LeftToRight,
    /// The same pass run from the right end.
    RightToLeft,
    /// Expand the whole alternating sequence, then repeatedly remove a pinch
    /// chosen at random.
    Random(u64),
}

/// `g₀ t₁^{ε₁} g₁ … t_n^{ε_n} g_n` with no pinch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrittonForm {
    bases: Vec<BaseElement>,
    /// `(edge index, inverse)` for each stable letter.
    stables: Vec<(usize, bool)>,
}

impl BrittonForm {
    pub fn bases(&self) -> &[BaseElement] {
        &self.bases
    }

    pub fn stables(&self) -> &[(usize, bool)] {
        &self.stables
    }

    /// Number of stable letters; independent of the reduction order.
    pub fn stable_count(&self) -> usize {
        self.stables.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.stables.is_empty() && self.bases[0].is_identity()
    }

    /// Whether no `t⁻¹ g t` with `g ∈ ⟨domain⟩` or `t g t⁻¹` with
    /// `g ∈ ⟨codomain⟩` remains.
    pub fn is_pinch_free(&self, h: &HnnGroup) -> bool {
        (1..self.bases.len() - 1).all(|k| pinch(h, self.stables[k - 1], &self.bases[k], self.stables[k]).is_none())
    }

    /// Displays the form using the group's generator names.
    pub fn display<'a>(&'a self, h: &'a HnnGroup) -> impl fmt::Display + 'a {
        FormDisplay { form: self, h }
    }
}

struct FormDisplay<'a> {
    form: &'a BrittonForm,
    h: &'a HnnGroup,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let al = self.h.alphabet();
        let a = (0..al.len()).find(|&g| self.h.role(g) == Role::Base(0)).unwrap();
        let b = (0..al.len()).find(|&g| self.h.role(g) == Role::Base(1)).unwrap();
        let mut parts: Vec<String> = Vec::new();
        for (k, g) in self.form.bases.iter().enumerate() {
            if !g.is_identity() {
                let mut s = String::new();
                if g.i != BigInt::from(0) {
                    s.push_str(&format!("{}^{}", al.name(a), g.i));
                }
                if g.j != BigInt::from(0) {
                    if !s.is_empty() {
                        s.push(' ');
                    }
                    s.push_str(&format!("{}^{}", al.name(b), g.j));
                }
                parts.push(s);
            }
            if let Some(&(e, inv)) = self.form.stables.get(k) {
                let name = al.name(self.h.edges[e].stable);
                parts.push(if inv { format!("{name}^-1") } else { name.to_string() });
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

enum Token {
    Base(BaseElement),
    Stable(usize, bool),
}

/// Syllable compression: runs of one base generator become one base
/// element, stable letters stay single.
fn tokenize(h: &HnnGroup, w: &Word) -> Vec<Token> {
    let mut out = Vec::new();
    for (g, e) in w.free_reduce().syllables() {
        match h.role(g) {
            Role::Base(idx) => {
                let el = super::BaseKind::generator_power(idx, &BigInt::from(e));
                match out.last_mut() {
                    Some(Token::Base(prev)) => h.kind.mul_assign(prev, &el),
                    _ => out.push(Token::Base(el)),
                }
            }
            Role::Stable(edge) => {
                for _ in 0..e.unsigned_abs() {
                    out.push(Token::Stable(edge, e < 0));
                }
            }
        }
    }
    out
}

/// The replacement for `left g right` if it is a pinch.
fn pinch(h: &HnnGroup, left: (usize, bool), g: &BaseElement, right: (usize, bool)) -> Option<BaseElement> {
    if left.0 != right.0 || left.1 == right.1 {
        return None;
    }
    let edge = &h.edges[left.0];
    let kind = h.kind;
    if left.1 {
        // t⁻¹ domain^m t = codomain^m
        kind.cyclic_membership(g, &edge.domain)
            .map(|m| kind.pow(&edge.codomain, &m))
    } else {
        // t codomain^m t⁻¹ = domain^m
        kind.cyclic_membership(g, &edge.codomain)
            .map(|m| kind.pow(&edge.domain, &m))
    }
}

pub(super) fn reduce(h: &HnnGroup, w: &Word, strategy: PinchStrategy) -> BrittonForm {
    let tokens = tokenize(h, w);
    match strategy {
        PinchStrategy::LeftToRight => left_to_right(h, tokens),
        PinchStrategy::RightToLeft => right_to_left(h, tokens),
        PinchStrategy::Random(seed) => random_order(h, tokens, seed),
    }
}

fn left_to_right(h: &HnnGroup, tokens: Vec<Token>) -> BrittonForm {
    let kind = h.kind;
    let mut bases = vec![BaseElement::identity()];
    let mut stables: Vec<(usize, bool)> = Vec::new();
    for tok in tokens {
        match tok {
            Token::Base(g) => kind.mul_assign(bases.last_mut().unwrap(), &g),
            Token::Stable(e, inv) => {
                let repl = stables
                    .last()
                    .and_then(|&left| pinch(h, left, bases.last().unwrap(), (e, inv)));
                match repl {
                    Some(r) => {
                        bases.pop();
                        stables.pop();
                        kind.mul_assign(bases.last_mut().unwrap(), &r);
                    }
                    None => {
                        stables.push((e, inv));
                        bases.push(BaseElement::identity());
                    }
                }
            }
        }
    }
    BrittonForm { bases, stables }
}

fn right_to_left(h: &HnnGroup, tokens: Vec<Token>) -> BrittonForm {
    let kind = h.kind;
    // Stored right to left: `bases[0]` is the rightmost base element.
    let mut bases = vec![BaseElement::identity()];
    let mut stables: Vec<(usize, bool)> = Vec::new();
    for tok in tokens.into_iter().rev() {
        match tok {
            Token::Base(g) => {
                let x = bases.last_mut().unwrap();
                *x = kind.mul(&g, x);
            }
            Token::Stable(e, inv) => {
                let repl = stables
                    .last()
                    .and_then(|&right| pinch(h, (e, inv), bases.last().unwrap(), right));
                match repl {
                    Some(r) => {
                        bases.pop();
                        stables.pop();
                        let x = bases.last_mut().unwrap();
                        *x = kind.mul(&r, x);
                    }
                    None => {
                        stables.push((e, inv));
                        bases.push(BaseElement::identity());
                    }
                }
            }
        }
    }
    bases.reverse();
    stables.reverse();
    BrittonForm { bases, stables }
}

fn random_order(h: &HnnGroup, tokens: Vec<Token>, seed: u64) -> BrittonForm {
    let kind = h.kind;
    let mut bases = vec![BaseElement::identity()];
    let mut stables: Vec<(usize, bool)> = Vec::new();
    for tok in tokens {
        match tok {
            Token::Base(g) => kind.mul_assign(bases.last_mut().unwrap(), &g),
            Token::Stable(e, inv) => {
                stables.push((e, inv));
                bases.push(BaseElement::identity());
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let pinches: Vec<(usize, BaseElement)> = (1..bases.len().saturating_sub(1))
            .filter_map(|k| pinch(h, stables[k - 1], &bases[k], stables[k]).map(|r| (k, r)))
            .collect();
        if pinches.is_empty() {
            break;
        }
        let (k, repl) = pinches[rng.gen_range(0..pinches.len())].clone();
        let right = bases.remove(k + 1);
        bases.remove(k);
        let merged = kind.mul(&kind.mul(&bases[k - 1], &repl), &right);
        bases[k - 1] = merged;
        stables.drain(k - 1..=k);
    }
    BrittonForm { bases, stables }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::random_reduced_word;
    use proptest::prelude::*;

    #[test]
    fn klein_examples() {
        let r = HnnGroup::klein(3, 1).unwrap();
        let form = r.britton_reduce(&r.parse_word("t^-1 a^2 t").unwrap());
        assert_eq!(form.stable_count(), 0);
        assert_eq!(form.bases(), &[BaseElement::new(6, 1)]);

        let form = r.britton_reduce(&r.parse_word("t^-1 a t").unwrap());
        assert_eq!(form.stable_count(), 2);
        assert!(form.is_pinch_free(&r));
        assert_eq!(form.display(&r).to_string(), "t^-1 a^1 t");

        let form = r.britton_reduce(&Word::empty());
        assert_eq!(form.bases(), &[BaseElement::identity()]);
        assert!(form.is_trivial());
    }

    #[test]
    fn nested_pinches() {
        let g = HnnGroup::snowflake(2, 1).unwrap();
        // s⁻¹ (s⁻¹ a s)(t⁻¹ a t) s: inner pinches give a^4, outer gives (a^2 b)^4.
        let w = g.parse_word("s^-1 s^-1 a s t^-1 a t s b^-4 a^-8").unwrap();
        assert!(g.is_trivial(&w));
        for strategy in [PinchStrategy::RightToLeft, PinchStrategy::Random(3)] {
            assert!(g.britton_reduce_with(&w, strategy).is_trivial());
        }
    }

    fn strategies_agree(h: &HnnGroup, w: &Word, seed: u64) -> Result<(), TestCaseError> {
        let l = h.britton_reduce_with(w, PinchStrategy::LeftToRight);
        let r = h.britton_reduce_with(w, PinchStrategy::RightToLeft);
        let x = h.britton_reduce_with(w, PinchStrategy::Random(seed));
        for f in [&l, &r, &x] {
            prop_assert!(f.is_pinch_free(h));
        }
        prop_assert_eq!(l.stable_count(), r.stable_count());
        prop_assert_eq!(l.stable_count(), x.stable_count());
        prop_assert_eq!(l.stables(), x.stables());
        prop_assert_eq!(l.is_trivial(), r.is_trivial());
        prop_assert_eq!(l.is_trivial(), x.is_trivial());
        Ok(())
    }

    proptest! {
        #[test]
        fn snowflake_confluence(seed in any::<u64>(), len in 0usize..40, p in 1u32..4, q in 1u32..4) {
            let h = HnnGroup::snowflake(p, q).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let w = random_reduced_word(&mut rng, 4, len);
            strategies_agree(&h, &w, seed)?;
        }

        #[test]
        fn klein_confluence(seed in any::<u64>(), len in 0usize..40, p in 1u32..4, q in 1u32..4) {
            let h = HnnGroup::klein(p, q).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let w = random_reduced_word(&mut rng, 3, len);
            strategies_agree(&h, &w, seed)?;
        }

        #[test]
        fn inverse_product_is_trivial(seed in any::<u64>(), len in 0usize..30) {
            let h = HnnGroup::snowflake(3, 1).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let w = random_reduced_word(&mut rng, 4, len);
            let mut ww = w.clone();
            ww.append(&w.inverse());
            prop_assert!(h.is_trivial(&ww));
        }
    }
}
