use num_bigint::{BigInt, BigUint};

use super::{BaseElement, HnnError, HnnGroup};
use crate::words::{Letter, Word};

/// Letters `a, b, s, t` of the snowflake alphabet.
const A: usize = 0;
const S: usize = 2;
const T: usize = 3;

/// The level-`k` word `w_k` of `G_{p,q}` with `w_0 = a` and
/// `w_{k+1} = s⁻¹ w_k^q s · t⁻¹ w_k^q t`, which equals `a^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnowflakeWitness {
    pub p: u32,
    pub q: u32,
    pub level: u32,
    pub word: Word,
    /// `(2p)^k`.
    pub exponent: BigUint,
    pub len: usize,
}

/// `(2p)^k`, the power of `a` represented by `w_k`.
pub fn witness_exponent(p: u32, k: u32) -> BigUint {
    BigUint::from(2 * p).pow(k)
}

/// `|w_k|` from `|w_0| = 1` and `|w_{k+1}| = 2q |w_k| + 4`.
pub fn witness_length(q: u32, k: u32) -> BigUint {
    let mut len = BigUint::from(1u32);
    for _ in 0..k {
        len = len * (2 * q) + 4u32;
    }
    len
}

/// Builds `w_k` letter by letter. The word has `witness_length(q, k)`
/// letters, so `k` should stay small.
pub fn snowflake_witness(p: u32, q: u32, k: u32) -> Result<SnowflakeWitness, HnnError> {
    if p == 0 || q == 0 {
        return Err(HnnError::Params(format!(
            "p and q must be positive, got p = {p}, q = {q}"
        )));
    }
    let mut w = Word::gen(A);
    for _ in 0..k {
        let mut next = Word::empty();
        for stable in [S, T] {
            next.push(Letter::neg(stable));
            for _ in 0..q {
                next.append(&w);
            }
            next.push(Letter::pos(stable));
        }
        w = next;
    }
    let len = w.len();
    Ok(SnowflakeWitness {
        p,
        q,
        level: k,
        word: w,
        exponent: witness_exponent(p, k),
        len,
    })
}

impl SnowflakeWitness {
    /// Whether `w_k = a^exponent` in `g`, read off the pinch-free form so
    /// the power of `a` is never written out.
    pub fn verify(&self, g: &HnnGroup) -> bool {
        let form = g.britton_reduce(&self.word);
        form.stable_count() == 0
            && form.bases()[0] == BaseElement::new(BigInt::from(self.exponent.clone()), 0)
    }
}
