use std::cmp::Reverse;
use std::collections::HashSet;

use super::Presentation;
use crate::words::{Alphabet, GenId, Word};

/// Result of [`tietze_simplify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    /// For each generator of `presentation`, its id in the input.
    pub kept: Vec<GenId>,
    /// Eliminated generators in elimination order, each with the word (in
    /// input ids) it was replaced by. A replacement may mention generators
    /// eliminated later.
    pub eliminated: Vec<(GenId, Word)>,
    pub steps: usize,
    /// The step budget ran out before a fixpoint was reached.
    pub exhausted: bool,
}

struct State {
    alive: Vec<bool>,
    relators: Vec<Word>,
    eliminated: Vec<(GenId, Word)>,
    steps: usize,
    budget: usize,
}

impl State {
    fn spend(&mut self) -> bool {
        if self.steps >= self.budget {
            return false;
        }
        self.steps += 1;
        true
    }

    fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Reduction, removal of trivial relators and deduplication up to
    /// rotation and inversion, repeated until nothing changes. Returns false
    /// when the budget ran out.
    fn cheap_moves(&mut self) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.relators.len() {
                let (core, _) = self.relators[i].cyclic_reduce();
                if core != self.relators[i] {
                    if !self.spend() {
                        return false;
                    }
                    self.relators[i] = core;
                    changed = true;
                }
            }
            let mut seen = HashSet::new();
            let mut i = 0;
            while i < self.relators.len() {
                let r = &self.relators[i];
                if r.is_empty() || !seen.insert(r.cyclic_canonical()) {
                    if !self.spend() {
                        return false;
                    }
                    self.relators.remove(i);
                    changed = true;
                } else {
                    i += 1;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Picks the next generator to eliminate: among relators in which some
    /// generator occurs exactly once, the shortest relator first, then the
    /// highest generator id, then the earliest relator. Eliminations that
    /// would increase the total relator length are skipped.
    fn choose_elimination(&self) -> Option<(usize, GenId, Word, Vec<Word>)> {
        let mut candidates: Vec<(usize, Reverse<GenId>, usize)> = Vec::new();
        for (i, r) in self.relators.iter().enumerate() {
            let mut gens: Vec<GenId> = r.iter().map(|l| l.gen).collect();
            gens.sort_unstable();
            gens.dedup();
            for g in gens {
                if r.occurrences(g) == 1 {
                    candidates.push((r.len(), Reverse(g), i));
                }
            }
        }
        candidates.sort();
        let before = self.total_length();
        for (_, Reverse(g), i) in candidates {
            let r = &self.relators[i];
            let pos = r.iter().position(|l| l.gen == g).expect("occurs once");
            let rotated = r.rotate(pos);
            let rest = Word::new(rotated.letters()[1..].to_vec());
            // g·rest = 1 gives g = rest⁻¹; g⁻¹·rest = 1 gives g = rest.
            let expr = if rotated.letters()[0].inverse {
                rest
            } else {
                rest.inverse()
            };
            let rewritten: Vec<Word> = self
                .relators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| replace_gen(w, g, &expr).cyclic_reduce().0)
                .collect();
            let after: usize = rewritten.iter().map(Word::len).sum();
            if after <= before {
                return Some((i, g, expr, rewritten));
            }
        }
        None
    }
}

fn replace_gen(w: &Word, g: GenId, expr: &Word) -> Word {
    let inv = expr.inverse();
    let mut out = Word::empty();
    for &l in w {
        if l.gen == g {
            out.append(if l.inverse { &inv } else { expr });
        } else {
            out.push(l);
        }
    }
    out.free_reduce()
}

/// Simplifies a presentation by Tietze transformations within `budget`
/// moves.
///
/// Cheap moves (free and cyclic reduction, deleting empty relators,
/// deduplicating relators up to rotation and inversion) run to a fixpoint
/// before each elimination. A generator occurring exactly once in a relator
/// is eliminated by solving that relator for it, provided the total relator
/// length does not grow. Surviving generators keep their names.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeOutcome {
    let mut st = State {
        alive: vec![true; p.num_generators()],
        relators: p.relators().to_vec(),
        eliminated: Vec::new(),
        steps: 0,
        budget,
    };
    let mut exhausted = false;
    loop {
        if !st.cheap_moves() {
            exhausted = true;
            break;
        }
        let Some((_, g, expr, rewritten)) = st.choose_elimination() else {
            break;
        };
        if !st.spend() {
            exhausted = true;
            break;
        }
        st.relators = rewritten;
        st.alive[g] = false;
        st.eliminated.push((g, expr));
    }

    let kept: Vec<GenId> = (0..st.alive.len()).filter(|&g| st.alive[g]).collect();
    let mut table = vec![None; st.alive.len()];
    for (new, &old) in kept.iter().enumerate() {
        table[old] = Some(new);
    }
    let names: Vec<&str> = kept.iter().map(|&g| p.alphabet().name(g)).collect();
    let alphabet = Alphabet::new(&names).expect("names were valid in the input");
    let relators = st.relators.iter().map(|r| r.renumber(&table)).collect();
    TietzeOutcome {
        presentation: Presentation::new(alphabet, relators).expect("renumbered in range"),
        kept,
        eliminated: st.eliminated,
        steps: st.steps,
        exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Letter;
    use crate::presentations::{abelian_invariants, character_check, make_snowflake_g, CharacterMap};
    use proptest::prelude::*;

    #[test]
    fn eliminates_trivial_generator() {
        let p = Presentation::parse(&["a", "b"], &["b"]).unwrap();
        let out = tietze_simplify(&p, 100);
        assert_eq!(out.presentation.num_generators(), 1);
        assert_eq!(out.presentation.num_relators(), 0);
        assert_eq!(out.kept, vec![0]);
        assert_eq!(out.eliminated, vec![(1, Word::empty())]);
        assert!(!out.exhausted);
    }

    #[test]
    fn eliminates_paired_generator() {
        // The shape produced by rewriting the Klein relator at both cosets.
        let p = Presentation::parse(
            &["x", "y", "z", "s", "u"],
            &["y z", "x^-1 z x y", "s^-1 x^3 s y^-1 x^-5", "u^-1 x^3 u z^-1 x^-5"],
        )
        .unwrap();
        let out = tietze_simplify(&p, 100);
        assert_eq!(out.kept, vec![0, 1, 3, 4]);
        assert_eq!(out.eliminated, vec![(2, p.parse_word("y^-1").unwrap())]);
        assert_eq!(
            out.presentation.relator_strings(),
            vec!["x^-1 y^-1 x y", "s^-1 x^3 s y^-1 x^-5", "u^-1 x^3 u y x^-5"]
        );

        // With one conjugation relator only, y is eliminable as well.
        let p = Presentation::parse(
            &["x", "y", "z", "s"],
            &["y z", "x^-1 z x y", "s^-1 x^3 s y^-1 x^-5"],
        )
        .unwrap();
        assert_eq!(tietze_simplify(&p, 100).kept, vec![0, 3]);
    }

    #[test]
    fn fixpoint_is_unchanged() {
        for p in [make_snowflake_g(3, 1).unwrap(), Presentation::parse(&["a", "b"], &["[a, b]"]).unwrap()] {
            let out = tietze_simplify(&p, 100);
            assert_eq!(out.presentation, p);
            assert_eq!(out.steps, 0);
        }
    }

    #[test]
    fn deduplicates_rotations_and_inverses() {
        let p = Presentation::parse(&["a", "b"], &["a b a^-1 b^-1", "b^-1 a b a^-1", "a^3", "a^-3"]).unwrap();
        let out = tietze_simplify(&p, 100);
        assert_eq!(out.presentation.num_relators(), 2);
    }

    #[test]
    fn budget_exhaustion_flags() {
        let p = Presentation::parse(&["a", "b", "c"], &["b", "c", "a^2", "a^-2"]).unwrap();
        let out = tietze_simplify(&p, 1);
        assert!(out.exhausted);
        assert_eq!(out.steps, 1);
        let out = tietze_simplify(&p, 100);
        assert!(!out.exhausted);
        assert_eq!(out.presentation.relator_strings(), vec!["a^2"]);
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        prop::collection::vec(
            prop::collection::vec((0usize..4, any::<bool>()), 1..8)
                .prop_map(|v| v.into_iter().map(|(gen, inverse)| Letter { gen, inverse }).collect::<Word>()),
            1..5,
        )
        .prop_map(|rels| Presentation::new(Alphabet::new(&["a", "b", "c", "d"]).unwrap(), rels).unwrap())
    }

    proptest! {
        #[test]
        fn preserves_abelian_invariants(p in arb_presentation()) {
            let out = tietze_simplify(&p, 1000);
            prop_assert_eq!(abelian_invariants(&out.presentation), abelian_invariants(&p));
        }

        #[test]
        fn preserves_character_verdicts(p in arb_presentation(), residues in prop::collection::vec(0i64..3, 4)) {
            let out = tietze_simplify(&p, 1000);
            // Only characters vanishing on eliminated generators' defining
            // words restrict meaningfully; check those defined on survivors.
            let c = CharacterMap::new(3, &residues).unwrap();
            let restricted: Vec<i64> = out.kept.iter().map(|&g| residues[g]).collect();
            let c2 = CharacterMap::new(3, &restricted).unwrap();
            let consistent = out.eliminated.iter().all(|(g, w)| c.value(w) == c.residue(*g));
            if consistent {
                prop_assert_eq!(character_check(&p, &c).unwrap(), character_check(&out.presentation, &c2).unwrap());
            }
        }
    }
}
