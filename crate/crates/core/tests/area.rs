mod common;

use std::collections::{HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use snowflake_core::dehn::{area_profile, min_area, AreaLimits, AreaResult};
use snowflake_core::hnn::HnnGroup;
use snowflake_core::presentations::{free_abelian_rank2, make_snowflake_g, Presentation};
use snowflake_core::words::{commutator, Letter, Word};

use common::{relator_conjugates, winding_area};

fn limits() -> AreaLimits {
    AreaLimits { max_depth: 32, max_len: 40, max_states: 2_000_000 }
}

/// Plain breadth-first search over freely reduced linear words: insert any
/// rotation of a relator or its inverse at any position.
fn naive_area(p: &Presentation, w: &Word, max_len: usize, max_depth: u32) -> Option<u32> {
    let mut rels = Vec::new();
    for r in p.relators() {
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len() {
                rels.push(base.rotate(k));
            }
        }
    }
    let start = w.free_reduce();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0u32)]);
    while let Some((x, d)) = queue.pop_front() {
        if x.is_empty() {
            return Some(d);
        }
        if d == max_depth {
            continue;
        }
        for i in 0..=x.len() {
            for r in &rels {
                let mut y: Vec<Letter> = x.letters()[..i].to_vec();
                y.extend_from_slice(r.letters());
                y.extend_from_slice(&x.letters()[i..]);
                let y = Word::new(y).free_reduce();
                if y.len() <= max_len && seen.insert(y.clone()) {
                    queue.push_back((y, d + 1));
                }
            }
        }
    }
    None
}

fn z2_commutator(m: i64, n: i64) -> Word {
    commutator(&Word::power_of(0, m), &Word::power_of(1, n))
}

#[test]
fn basic_values() {
    let z = free_abelian_rank2();
    assert_eq!(min_area(&z, &Word::empty(), &limits()), AreaResult::Exact(0));
    assert_eq!(min_area(&z, &z.relators()[0], &limits()), AreaResult::Exact(1));
    assert_eq!(min_area(&z, &z.relators()[0].inverse().rotate(1), &limits()), AreaResult::Exact(1));
    assert_eq!(min_area(&z, &z2_commutator(2, 1), &limits()), AreaResult::Exact(2));
    let g = make_snowflake_g(3, 1).unwrap();
    for r in g.relators() {
        assert_eq!(min_area(&g, r, &limits()), AreaResult::Exact(1));
    }
}

#[test]
fn commutators_match_oracles() {
    let z = free_abelian_rank2();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3), (3, 2)] {
        let w = z2_commutator(m, n);
        let area = min_area(&z, &w, &limits());
        assert_eq!(area, AreaResult::Exact((m * n) as u32));
        assert_eq!(winding_area(&w), Some((m * n) as u64));
        if m * n <= 4 {
            assert_eq!(naive_area(&z, &w, 12, 4), Some((m * n) as u32), "[a^{m},b^{n}]");
        }
    }
}

/// Winding is a lower bound; backtracking loops can need more cells.
#[test]
fn z2_random_loops() {
    let z = free_abelian_rank2();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let w = relator_conjugates(&mut rng, &z, 3, 3);
        let area = min_area(&z, &w, &limits()).exact().unwrap();
        assert!(u64::from(area) >= winding_area(&w).unwrap(), "{}", z.format_word(&w));
    }
    for _ in 0..30 {
        let w = relator_conjugates(&mut rng, &z, 2, 2);
        let area = min_area(&z, &w, &limits()).exact().unwrap();
        assert_eq!(Some(area), naive_area(&z, &w, w.len() + 6, 2), "{}", z.format_word(&w));
    }
    let w = z.parse_word("a^-1 b^-1 a^-1 b a^3 b^-1 a^-1 b^2 a b^-1 a^-1 b^-1 a b^2 a^-1 b^-1").unwrap();
    assert_eq!(winding_area(&w), Some(1));
    assert_eq!(min_area(&z, &w, &limits()), AreaResult::Exact(3));
    assert_eq!(naive_area(&z, &w, 26, 3), Some(3));
}

#[test]
fn conjugation_invariance() {
    let z = free_abelian_rank2();
    let w = z2_commutator(2, 1);
    let base = min_area(&z, &w, &limits());
    for g in ["a", "b^-1", "a b"] {
        let c = z.parse_word(g).unwrap();
        assert_eq!(min_area(&z, &w.conjugate_by(&c).free_reduce(), &limits()), base);
    }
    let g = make_snowflake_g(2, 1).unwrap();
    let w = g.relators()[1].clone();
    let c = g.parse_word("t a").unwrap();
    assert_eq!(min_area(&g, &w.conjugate_by(&c).free_reduce(), &limits()), AreaResult::Exact(1));
}

#[test]
fn subadditivity() {
    let z = free_abelian_rank2();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let u = relator_conjugates(&mut rng, &z, 2, 2);
        let v = relator_conjugates(&mut rng, &z, 1, 3);
        let (au, av) = (min_area(&z, &u, &limits()), min_area(&z, &v, &limits()));
        let auv = min_area(&z, &u.concat(&v), &limits());
        assert!(auv.exact().unwrap() <= au.exact().unwrap() + av.exact().unwrap());
    }
}

#[test]
fn snowflake_conjugate_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, q) in [(1, 1), (2, 1), (3, 1)] {
        let g = make_snowflake_g(p, q).unwrap();
        for c in 1..=4 {
            let w = relator_conjugates(&mut rng, &g, c, 2);
            let a = min_area(&g, &w, &limits());
            assert!(a.upper().is_some_and(|n| n <= c as u32), "{} -> {a:?}", g.format_word(&w));
        }
    }
}

#[test]
fn z2_profile() {
    let z = free_abelian_rank2();
    let prof = area_profile(&z, &HnnGroup::free_abelian(), 8, &limits());
    assert_eq!(prof.max_area, vec![0, 0, 0, 0, 1, 1, 2, 2, 4]);
    assert_eq!(prof.trivial[1], 0);
    assert_eq!((prof.inexact, prof.unknown), (0, 0));
    let one = area_profile(&z, &HnnGroup::free_abelian(), 1, &limits());
    assert_eq!(one.max_area, vec![0, 0]);
}

#[test]
fn snowflake_profile() {
    let g = make_snowflake_g(1, 1).unwrap();
    let oracle = HnnGroup::snowflake(1, 1).unwrap();
    let prof = area_profile(&g, &oracle, 8, &limits());
    assert!(prof.max_area.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!((prof.inexact, prof.unknown), (0, 0));
    // Recorded values.
    assert_eq!(prof.max_area, vec![0, 0, 0, 0, 1, 2, 2, 3, 5]);
    assert_eq!(prof.trivial, vec![0, 0, 0, 0, 1, 4, 2, 16, 56]);
}

