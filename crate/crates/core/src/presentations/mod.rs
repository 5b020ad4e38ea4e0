//! Finite presentations, the group families built from them, Tietze
//! simplification and finite cyclic characters.

mod abelian;
mod families;
mod tietze;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{Alphabet, GenId, Word, WordError};

pub use abelian::{abelian_invariants, AbelianInvariants};
pub use families::{
    free_abelian_rank2, klein_backward_map, klein_forward_map, make_klein_form,
    make_one_relator_r, make_snowflake_g, r_pq, verify_rewrite, Family, OneRelatorParams,
};
pub use tietze::{tietze_simplify, TietzeOutcome};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("relator uses generator {gen} but the alphabet has {len} generators")]
    GeneratorOutOfRange { gen: GenId, len: usize },
    #[error("character covers {got} generators, presentation has {expected}")]
    CharacterArity { expected: usize, got: usize },
    #[error("malformed presentation text: {0}")]
    Format(String),
}

/// A group presentation `⟨alphabet | relators⟩`.
///
/// Relators are stored freely and cyclically reduced; empty relators are
/// dropped on construction. An equation `u = v` is stored as `u v⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let len = alphabet.len();
        let mut stored = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(gen) = r.max_gen().filter(|&g| g >= len) {
                return Err(PresentationError::GeneratorOutOfRange { gen, len });
            }
            let (core, _) = r.cyclic_reduce();
            if !core.is_empty() {
                stored.push(core);
            }
        }
        Ok(Presentation {
            alphabet,
            relators: stored,
        })
    }

    /// Builds a presentation from generator names and relators in word
    /// syntax.
    pub fn parse<S: AsRef<str>>(generators: &[S], relators: &[&str]) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::new(generators)?;
        let words = relators
            .iter()
            .map(|r| alphabet.parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, words)
    }

    /// Builds a presentation from equations `(lhs, rhs)`, each stored as
    /// `lhs · rhs⁻¹`.
    pub fn from_equations<S: AsRef<str>>(
        generators: &[S],
        equations: &[(&str, &str)],
    ) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::new(generators)?;
        let mut words = Vec::new();
        for (lhs, rhs) in equations {
            let l = alphabet.parse_word(lhs)?;
            let r = alphabet.parse_word(rhs)?;
            words.push(l.concat(&r.inverse()));
        }
        Presentation::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        self.alphabet.parse_word(text)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format(w)
    }

    /// Relators formatted in word syntax.
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.alphabet.format(r)).collect()
    }

    /// The text file form: a `gens:` line followed by one relator per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("gens:");
        for name in self.alphabet.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for r in self.relator_strings() {
            out.push_str(&r);
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.alphabet.names().collect();
        write!(f, "< {} | {} >", gens.join(", "), self.relator_strings().join(", "))
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Reads the text file form. Blank lines and lines starting with `#` are
    /// ignored.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| PresentationError::Format("missing `gens:` line".into()))?;
        let names = header
            .strip_prefix("gens:")
            .ok_or_else(|| PresentationError::Format(format!("expected `gens:`, found {header:?}")))?;
        let names: Vec<&str> = names.split_whitespace().collect();
        let alphabet = Alphabet::new(&names)?;
        let relators = lines
            .map(|l| alphabet.parse_word(l))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, relators)
    }
}

/// A homomorphism to `Z/modulus` given by one residue per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMap {
    modulus: u64,
    residues: Vec<u64>,
}

impl CharacterMap {
    pub fn new(modulus: u64, residues: &[i64]) -> Result<Self, PresentationError> {
        if modulus == 0 {
            return Err(PresentationError::Params("character modulus must be positive".into()));
        }
        let m = modulus as i64;
        Ok(CharacterMap {
            modulus,
            residues: residues.iter().map(|r| r.rem_euclid(m) as u64).collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn residue(&self, gen: GenId) -> u64 {
        self.residues[gen]
    }

    /// Value of a word: the residue-weighted exponent sum mod `modulus`.
    pub fn value(&self, w: &Word) -> u64 {
        let m = self.modulus as i128;
        let total: i128 = w
            .iter()
            .map(|l| l.sign() as i128 * self.residues[l.gen] as i128)
            .sum();
        total.rem_euclid(m) as u64
    }

    /// Whether the residues generate all of `Z/modulus`.
    pub fn is_surjective(&self) -> bool {
        use num_integer::Integer;
        self.residues
            .iter()
            .fold(self.modulus, |g, &r| g.gcd(&r))
            == 1
    }
}

/// Whether `c` is a well-defined homomorphism on the group of `p`, i.e. every
/// relator has value zero.
pub fn character_check(p: &Presentation, c: &CharacterMap) -> Result<bool, PresentationError> {
    if c.residues.len() != p.num_generators() {
        return Err(PresentationError::CharacterArity {
            expected: p.num_generators(),
            got: c.residues.len(),
        });
    }
    Ok(p.relators.iter().all(|r| c.value(r) == 0))
}
