//! Word problem for HNN extensions of `Z²` and of the Klein bottle group
//! with cyclic associated subgroups, by Britton's lemma.
//!
//! This covers `R_{p,q}` (one stable letter over the Klein bottle group) and
//! the snowflake groups `G_{p,q}` (two stable letters over `Z²`). Words over
//! the original generators `x, y, t` of `R_{p,q}` go through
//! [`RpqSolver`], which rewrites them into the Klein generators first.

mod base;
mod britton;
mod witness;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::presentations::{klein_forward_map, Family};
use crate::words::{random_reduced_word, Alphabet, GenId, GeneratorMap, Word, WordError};

pub use base::{BaseElement, BaseKind};
pub use britton::{BrittonForm, PinchStrategy};
pub use witness::{snowflake_witness, witness_exponent, witness_length, SnowflakeWitness};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HnnError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("generator {0} is used both as a base generator and a stable letter")]
    RoleClash(GenId),
    #[error("edge for stable letter {0} has a trivial associated generator")]
    TrivialEdge(GenId),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One stable letter `t` with `t⁻¹ domain t = codomain`, extended to the
/// cyclic subgroups: `t⁻¹ domain^m t = codomain^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDatum {
    pub stable: GenId,
    pub domain: BaseElement,
    pub codomain: BaseElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Role {
    /// Base generator `a` (0) or `b` (1).
    Base(usize),
    /// Stable letter of the edge with this index.
    Stable(usize),
}

/// An HNN extension of a two-generator base group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnGroup {
    kind: BaseKind,
    alphabet: Alphabet,
    roles: Vec<Role>,
    edges: Vec<EdgeDatum>,
}

/// Which of the two HNN structures to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnnFamily {
    /// `R_{p,q}` over the Klein bottle group.
    KleinR,
    /// `G_{p,q}` over `Z²`.
    Snowflake,
}

impl HnnGroup {
    /// `base_gens` names the generators playing `a` and `b`; every other
    /// generator must be the stable letter of exactly one edge.
    pub fn new(
        kind: BaseKind,
        alphabet: Alphabet,
        base_gens: [GenId; 2],
        edges: Vec<EdgeDatum>,
    ) -> Result<Self, HnnError> {
        let mut roles: Vec<Option<Role>> = vec![None; alphabet.len()];
        for (idx, &g) in base_gens.iter().enumerate() {
            if g >= alphabet.len() || roles[g].is_some() {
                return Err(HnnError::RoleClash(g));
            }
            roles[g] = Some(Role::Base(idx));
        }
        for (e, edge) in edges.iter().enumerate() {
            let g = edge.stable;
            if g >= alphabet.len() || roles[g].is_some() {
                return Err(HnnError::RoleClash(g));
            }
            if !kind.infinite_order(&edge.domain) || !kind.infinite_order(&edge.codomain) {
                return Err(HnnError::TrivialEdge(g));
            }
            roles[g] = Some(Role::Stable(e));
        }
        let roles = roles
            .into_iter()
            .enumerate()
            .map(|(g, r)| r.ok_or(HnnError::RoleClash(g)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HnnGroup {
            kind,
            alphabet,
            roles,
            edges,
        })
    }

    /// `R_{p,q} = ⟨a, b, t | a⁻¹bab, t⁻¹ a^{2q} t = a^{2p} b⟩`.
    pub fn klein(p: u32, q: u32) -> Result<Self, HnnError> {
        check_pq(p, q)?;
        HnnGroup::new(
            BaseKind::Klein,
            Alphabet::new(&["a", "b", "t"])?,
            [0, 1],
            vec![EdgeDatum {
                stable: 2,
                domain: BaseElement::new(2 * q as i64, 0),
                codomain: BaseElement::new(2 * p as i64, 1),
            }],
        )
    }

    /// `G_{p,q}` over `Z² = ⟨a, b⟩` with stable letters `s` and `t`.
    pub fn snowflake(p: u32, q: u32) -> Result<Self, HnnError> {
        check_pq(p, q)?;
        HnnGroup::new(
            BaseKind::Z2,
            Alphabet::new(&["a", "b", "s", "t"])?,
            [0, 1],
            vec![
                EdgeDatum {
                    stable: 2,
                    domain: BaseElement::new(q, 0),
                    codomain: BaseElement::new(p, 1),
                },
                EdgeDatum {
                    stable: 3,
                    domain: BaseElement::new(q, 0),
                    codomain: BaseElement::new(p, -1),
                },
            ],
        )
    }

    /// `Z² = ⟨a, b | [a, b]⟩`, an HNN extension with no stable letters.
    pub fn free_abelian() -> Self {
        HnnGroup::new(BaseKind::Z2, Alphabet::new(&["a", "b"]).unwrap(), [0, 1], vec![])
            .expect("static structure")
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn edges(&self) -> &[EdgeDatum] {
        &self.edges
    }

    pub(crate) fn role(&self, g: GenId) -> Role {
        self.roles[g]
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        self.alphabet.parse_word(text)
    }

    /// Pinch-free form by the default left-to-right strategy.
    pub fn britton_reduce(&self, w: &Word) -> BrittonForm {
        self.britton_reduce_with(w, PinchStrategy::LeftToRight)
    }

    pub fn britton_reduce_with(&self, w: &Word, strategy: PinchStrategy) -> BrittonForm {
        britton::reduce(self, w, strategy)
    }

    /// Britton's lemma: `w` is trivial iff its pinch-free form has no stable
    /// letters and a trivial base part.
    pub fn is_trivial(&self, w: &Word) -> bool {
        self.britton_reduce(w).is_trivial()
    }

    /// The word `a^i b^j` for a base element with machine-size exponents.
    pub fn base_word(&self, g: &BaseElement) -> Word {
        use num_traits::ToPrimitive;
        let a = self.roles.iter().position(|r| *r == Role::Base(0)).unwrap();
        let b = self.roles.iter().position(|r| *r == Role::Base(1)).unwrap();
        let i = g.i.to_i64().expect("exponent fits in i64");
        let j = g.j.to_i64().expect("exponent fits in i64");
        let mut w = Word::power_of(a, i);
        w.append(&Word::power_of(b, j));
        w
    }
}

fn check_pq(p: u32, q: u32) -> Result<(), HnnError> {
    if p == 0 || q == 0 {
        return Err(HnnError::Params(format!(
            "p and q must be positive, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

pub fn make_hnn(family: HnnFamily, p: u32, q: u32) -> Result<HnnGroup, HnnError> {
    match family {
        HnnFamily::KleinR => HnnGroup::klein(p, q),
        HnnFamily::Snowflake => HnnGroup::snowflake(p, q),
    }
}

/// A solved word problem over a fixed alphabet.
pub trait WordProblem {
    fn alphabet(&self) -> &Alphabet;
    fn is_trivial(&self, w: &Word) -> bool;
}

impl WordProblem for HnnGroup {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_trivial(&self, w: &Word) -> bool {
        HnnGroup::is_trivial(self, w)
    }
}

/// Word problem of `R_{p,q}` over `x, y, t`, solved in the Klein form after
/// the substitution `x ↦ a, y ↦ ab`.
#[derive(Clone, Debug)]
pub struct RpqSolver {
    alphabet: Alphabet,
    to_klein: GeneratorMap,
    klein: HnnGroup,
}

impl RpqSolver {
    pub fn new(p: u32, q: u32) -> Result<Self, HnnError> {
        Ok(RpqSolver {
            alphabet: Alphabet::new(&["x", "y", "t"])?,
            to_klein: klein_forward_map(),
            klein: HnnGroup::klein(p, q)?,
        })
    }

    pub fn to_klein(&self, w: &Word) -> Word {
        w.substitute(&self.to_klein).expect("map covers x, y, t")
    }

    pub fn klein(&self) -> &HnnGroup {
        &self.klein
    }

    pub fn britton_reduce(&self, w: &Word) -> BrittonForm {
        self.klein.britton_reduce(&self.to_klein(w))
    }
}

impl WordProblem for RpqSolver {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_trivial(&self, w: &Word) -> bool {
        self.klein.is_trivial(&self.to_klein(w))
    }
}

/// A word-problem solver for the family, when one is available. The general
/// `R(m, n, k, l)` has none here.
pub fn solver_for(family: &Family) -> Option<Box<dyn WordProblem + Send + Sync>> {
    match *family {
        Family::R(_) => None,
        Family::Rpq { p, q } => RpqSolver::new(p, q).ok().map(|s| Box::new(s) as _),
        Family::Klein { p, q } => HnnGroup::klein(p, q).ok().map(|s| Box::new(s) as _),
        Family::Snowflake { p, q } => HnnGroup::snowflake(p, q).ok().map(|s| Box::new(s) as _),
        Family::FreeAbelian => Some(Box::new(HnnGroup::free_abelian())),
    }
}

/// Outcome of [`confluence_trial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceSummary {
    pub words: usize,
    pub trivial: usize,
    /// Words on which two strategies disagree on triviality or on the
    /// stable-letter sequence of the pinch-free form.
    pub disagreements: Vec<Word>,
}

/// Reduces `count` random words of length at most `max_len` with every
/// [`PinchStrategy`] and compares the results. Every other word is a
/// product of conjugates of `relators`, so trivial words are well
/// represented.
pub fn confluence_trial(g: &HnnGroup, relators: &[Word], count: usize, max_len: usize, seed: u64) -> ConfluenceSummary {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = g.alphabet().len();
    let mut summary = ConfluenceSummary {
        words: 0,
        trivial: 0,
        disagreements: Vec::new(),
    };
    for i in 0..count {
        let mut w = Word::empty();
        if i % 2 == 1 && !relators.is_empty() {
            for _ in 0..rng.gen_range(1..=3) {
                let r = &relators[rng.gen_range(0..relators.len())];
                let r = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
                let c_len = rng.gen_range(0..=3);
                w = w.concat(&r.conjugate_by(&random_reduced_word(&mut rng, n, c_len)));
            }
            w = w.free_reduce();
        }
        if i % 2 == 0 || w.len() > max_len {
            let len = rng.gen_range(0..=max_len);
            w = random_reduced_word(&mut rng, n, len);
        }
        let forms: Vec<BrittonForm> = [
            PinchStrategy::LeftToRight,
            PinchStrategy::RightToLeft,
            PinchStrategy::Random(rng.gen()),
        ]
        .into_iter()
        .map(|s| g.britton_reduce_with(&w, s))
        .collect();
        summary.words += 1;
        if forms[0].is_trivial() {
            summary.trivial += 1;
        }
        let agree = forms
            .iter()
            .all(|f| f.is_trivial() == forms[0].is_trivial() && f.stables() == forms[0].stables());
        if !agree {
            summary.disagreements.push(w);
        }
    }
    summary
}
