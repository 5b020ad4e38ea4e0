use std::fmt;

use super::{Presentation, PresentationError};
use crate::hnn::HnnGroup;
use crate::report::Report;
use crate::words::{commutator, Alphabet, GeneratorMap, Word};

/// Parameters `(m, n, k, l)` of the one-relator family
/// `⟨x, y, t | x^m = y^n, t⁻¹ x^k t = x^l y⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneRelatorParams {
    pub m: i64,
    pub n: i64,
    pub k: i64,
    pub l: i64,
}

impl OneRelatorParams {
    pub fn new(m: i64, n: i64, k: i64, l: i64) -> Result<Self, PresentationError> {
        if m.abs() < 2 || n.abs() < 2 {
            return Err(PresentationError::Params(format!(
                "need |m|, |n| >= 2, got m = {m}, n = {n}"
            )));
        }
        if k == 0 {
            return Err(PresentationError::Params("need k != 0".into()));
        }
        if l.rem_euclid(m) == 0 {
            return Err(PresentationError::Params(format!(
                "need l not divisible by m, got l = {l}, m = {m}"
            )));
        }
        Ok(OneRelatorParams { m, n, k, l })
    }

    /// The specialization `(m, n, k, l) = (2, 2, 2q, 2p - 1)`.
    pub fn r_pq(p: u32, q: u32) -> Result<Self, PresentationError> {
        check_pq(p, q)?;
        Self::new(2, 2, 2 * q as i64, 2 * p as i64 - 1)
    }
}

fn check_pq(p: u32, q: u32) -> Result<(), PresentationError> {
    if p == 0 || q == 0 {
        return Err(PresentationError::Params(format!(
            "p and q must be positive, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

fn alphabet(names: &[&str]) -> Alphabet {
    Alphabet::new(names).expect("static alphabet")
}

/// `t⁻¹ base^k t · rhs⁻¹` over the given stable letter.
fn conjugation_relator(t: usize, base: usize, k: i64, rhs: &Word) -> Word {
    let mut w = Word::gen(t).inverse();
    w.append(&Word::power_of(base, k));
    w.push(crate::words::Letter::pos(t));
    w.concat(&rhs.inverse())
}

pub fn make_one_relator_r(params: &OneRelatorParams) -> Presentation {
    let al = alphabet(&["x", "y", "t"]);
    let (x, y, t) = (0, 1, 2);
    let first = Word::power_of(x, params.m).concat(&Word::power_of(y, -params.n));
    let rhs = Word::power_of(x, params.l).concat(&Word::gen(y));
    let second = conjugation_relator(t, x, params.k, &rhs);
    Presentation::new(al, vec![first, second]).expect("generators in range")
}

/// The one-relator group `R_{p,q}` in its original generators `x, y, t`.
pub fn r_pq(p: u32, q: u32) -> Result<Presentation, PresentationError> {
    Ok(make_one_relator_r(&OneRelatorParams::r_pq(p, q)?))
}

/// `R_{p,q}` over the Klein bottle generators: `⟨a, b, t | a⁻¹bab,
/// t⁻¹ a^{2q} t = a^{2p} b⟩`.
pub fn make_klein_form(p: u32, q: u32) -> Result<Presentation, PresentationError> {
    check_pq(p, q)?;
    let al = alphabet(&["a", "b", "t"]);
    let (a, b, t) = (0, 1, 2);
    let klein = Word::new(vec![
        crate::words::Letter::neg(a),
        crate::words::Letter::pos(b),
        crate::words::Letter::pos(a),
        crate::words::Letter::pos(b),
    ]);
    let rhs = Word::power_of(a, 2 * p as i64).concat(&Word::gen(b));
    let edge = conjugation_relator(t, a, 2 * q as i64, &rhs);
    Presentation::new(al, vec![klein, edge])
}

/// The snowflake group `⟨a, b, s, t | [a, b], s⁻¹ a^q s = a^p b,
/// t⁻¹ a^q t = a^p b⁻¹⟩`.
pub fn make_snowflake_g(p: u32, q: u32) -> Result<Presentation, PresentationError> {
    check_pq(p, q)?;
    let al = alphabet(&["a", "b", "s", "t"]);
    let (a, b, s, t) = (0, 1, 2, 3);
    let comm = commutator(&Word::gen(a), &Word::gen(b));
    let ap = Word::power_of(a, p as i64);
    let first = conjugation_relator(s, a, q as i64, &ap.concat(&Word::gen(b)));
    let second = conjugation_relator(t, a, q as i64, &ap.concat(&Word::gen(b).inverse()));
    Presentation::new(al, vec![comm, first, second])
}

/// `⟨a, b | [a, b]⟩`.
pub fn free_abelian_rank2() -> Presentation {
    let comm = commutator(&Word::gen(0), &Word::gen(1));
    Presentation::new(alphabet(&["a", "b"]), vec![comm]).expect("generators in range")
}

/// `x ↦ a, y ↦ ab, t ↦ t`, from the `x, y, t` alphabet to `a, b, t`.
pub fn klein_forward_map() -> GeneratorMap {
    let (a, b, t) = (0, 1, 2);
    GeneratorMap::from_images(vec![
        Word::gen(a),
        Word::gen(a).concat(&Word::gen(b)),
        Word::gen(t),
    ])
}

/// `a ↦ x, b ↦ x⁻¹y, t ↦ t`, inverse to [`klein_forward_map`].
pub fn klein_backward_map() -> GeneratorMap {
    let (x, y, t) = (0, 1, 2);
    GeneratorMap::from_images(vec![
        Word::gen(x),
        Word::gen(x).inverse().concat(&Word::gen(y)),
        Word::gen(t),
    ])
}

/// Checks the change of generators between `R_{p,q}` and its Klein form:
/// the two generator maps are mutually inverse on generators, and every
/// relator of `R_{p,q}` maps to the identity of the Klein form group.
pub fn verify_rewrite(p: u32, q: u32) -> Result<Report, PresentationError> {
    let original = r_pq(p, q)?;
    let klein = make_klein_form(p, q)?;
    let target = HnnGroup::klein(p, q).map_err(|e| PresentationError::Params(e.to_string()))?;
    let fwd = klein_forward_map();
    let back = klein_backward_map();
    let mut report = Report::new();

    let round = fwd.then(&back)?;
    for g in 0..original.num_generators() {
        let img = round.image(g).expect("total map");
        report.push(
            format!("backward(forward({})) = {}", original.alphabet().name(g), original.alphabet().name(g)),
            *img == Word::gen(g),
            original.format_word(img),
        );
    }
    let round = back.then(&fwd)?;
    for g in 0..klein.num_generators() {
        let img = round.image(g).expect("total map");
        report.push(
            format!("forward(backward({})) = {}", klein.alphabet().name(g), klein.alphabet().name(g)),
            *img == Word::gen(g),
            klein.format_word(img),
        );
    }
    for r in original.relators() {
        let image = r.substitute(&fwd)?;
        report.push(
            format!("image of {} is trivial", original.format_word(r)),
            target.is_trivial(&image),
            klein.format_word(&image),
        );
    }
    Ok(report)
}

/// The presentations the command line and the verification pipelines know
/// how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// General `R(m, n, k, l)` over `x, y, t`.
    R(OneRelatorParams),
    /// `R_{p,q}` over `x, y, t`.
    Rpq { p: u32, q: u32 },
    /// `R_{p,q}` over the Klein bottle generators `a, b, t`.
    Klein { p: u32, q: u32 },
    /// The snowflake group `G_{p,q}` over `a, b, s, t`.
    Snowflake { p: u32, q: u32 },
    /// `Z² = ⟨a, b | [a, b]⟩`.
    FreeAbelian,
}

impl Family {
    pub fn presentation(&self) -> Result<Presentation, PresentationError> {
        match *self {
            Family::R(params) => Ok(make_one_relator_r(&params)),
            Family::Rpq { p, q } => r_pq(p, q),
            Family::Klein { p, q } => make_klein_form(p, q),
            Family::Snowflake { p, q } => make_snowflake_g(p, q),
            Family::FreeAbelian => Ok(free_abelian_rank2()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::R(OneRelatorParams { m, n, k, l }) => write!(f, "R({m},{n},{k},{l})"),
            Family::Rpq { p, q } => write!(f, "R_{{{p},{q}}}"),
            Family::Klein { p, q } => write!(f, "R_{{{p},{q}}} (Klein form)"),
            Family::Snowflake { p, q } => write!(f, "G_{{{p},{q}}}"),
            Family::FreeAbelian => write!(f, "Z^2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_family() {
        let p = make_one_relator_r(&OneRelatorParams::new(2, 2, 2, 5).unwrap());
        assert_eq!(p.relator_strings(), vec!["x^2 y^-2", "t^-1 x^2 t y^-1 x^-5"]);
        assert_eq!(OneRelatorParams::r_pq(3, 1).unwrap(), OneRelatorParams::new(2, 2, 2, 5).unwrap());

        let p = r_pq(1, 1).unwrap();
        assert_eq!(p.relator_strings(), vec!["x^2 y^-2", "t^-1 x^2 t y^-1 x^-1"]);

        assert!(OneRelatorParams::new(2, 2, 0, 1).is_err());
        assert!(OneRelatorParams::new(1, 2, 1, 1).is_err());
        assert!(OneRelatorParams::new(3, 2, 1, 6).is_err());
        assert!(OneRelatorParams::new(-3, 2, 1, 4).is_ok());
        assert!(r_pq(0, 1).is_err());
    }

    #[test]
    fn klein_form() {
        let k = make_klein_form(3, 1).unwrap();
        assert_eq!(k.relator_strings(), vec!["a^-1 b a b", "t^-1 a^2 t b^-1 a^-6"]);
        let k = make_klein_form(1, 1).unwrap();
        assert_eq!(k.relator_strings()[1], "t^-1 a^2 t b^-1 a^-2");
        let k = make_klein_form(2, 3).unwrap();
        assert_eq!(k.relator_strings()[1], "t^-1 a^6 t b^-1 a^-4");
    }

    #[test]
    fn snowflake() {
        let g = make_snowflake_g(3, 1).unwrap();
        assert_eq!(
            g.relator_strings(),
            vec!["a^-1 b^-1 a b", "s^-1 a s b^-1 a^-3", "t^-1 a t b a^-3"]
        );
        let g = make_snowflake_g(1, 1).unwrap();
        assert_eq!(g.relator_strings()[1..], ["s^-1 a s b^-1 a^-1", "t^-1 a t b a^-1"]);
        let g = make_snowflake_g(2, 2).unwrap();
        assert_eq!(g.relator_strings()[1..], ["s^-1 a^2 s b^-1 a^-2", "t^-1 a^2 t b a^-2"]);
    }

    #[test]
    fn constructors_give_cyclically_reduced_relators() {
        for p in 1..5 {
            for q in 1..5 {
                for pres in [r_pq(p, q), make_klein_form(p, q), make_snowflake_g(p, q)] {
                    for r in pres.unwrap().relators() {
                        assert_eq!(r.cyclic_reduce(), (r.clone(), Word::empty()));
                    }
                }
            }
        }
    }

    #[test]
    fn rewrite_verification() {
        for (p, q) in [(3, 1), (2, 1), (1, 1), (5, 2), (2, 3)] {
            let report = verify_rewrite(p, q).unwrap();
            assert!(report.all_passed(), "({p},{q}):\n{report}");
            assert_eq!(report.checks.len(), 8);
        }
        let report = verify_rewrite(3, 1).unwrap();
        let image = &report.checks[6];
        assert_eq!(image.detail, "a^2 b^-1 a^-1 b^-1 a^-1");
    }
}
