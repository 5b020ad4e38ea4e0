#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use snowflake_core::presentations::Presentation;
use snowflake_core::words::{random_reduced_word, Word};

/// Sum over unit squares of the absolute winding number of the lattice path
/// of a closed word in `⟨a, b | [a, b]⟩`. A lower bound for its area, equal
/// to it for simple closed paths.
pub fn winding_area(w: &Word) -> Option<u64> {
    let (mut x, mut y) = (0i64, 0i64);
    // Signed crossings of each vertical edge, keyed by (x, y) of its lower end.
    let mut crossing: HashMap<(i64, i64), i64> = HashMap::new();
    for l in w {
        match (l.gen, l.sign()) {
            (0, s) => x += s,
            (1, 1) => {
                *crossing.entry((x, y)).or_default() += 1;
                y += 1;
            }
            (1, _) => {
                y -= 1;
                *crossing.entry((x, y)).or_default() -= 1;
            }
            _ => return None,
        }
    }
    if (x, y) != (0, 0) {
        return None;
    }
    // Winding of cell (cx, cy) counts the vertical crossings to its right.
    let mut by_row: HashMap<i64, Vec<(i64, i64)>> = HashMap::new();
    for (&(cx, cy), &c) in &crossing {
        if c != 0 {
            by_row.entry(cy).or_default().push((cx, c));
        }
    }
    let mut total = 0u64;
    for (_, mut row) in by_row {
        row.sort();
        let mut acc = 0i64;
        let mut prev = None;
        for &(cx, c) in row.iter().rev() {
            if let Some(px) = prev {
                total += acc.unsigned_abs() * (px - cx) as u64;
            }
            acc += c;
            prev = Some(cx);
        }
        assert_eq!(acc, 0);
    }
    Some(total)
}

/// Product of `c` conjugates of relators or their inverses by random words.
pub fn relator_conjugates<R: Rng>(rng: &mut R, p: &Presentation, c: usize, conj_len: usize) -> Word {
    let mut w = Word::empty();
    for _ in 0..c {
        let r = &p.relators()[rng.gen_range(0..p.num_relators())];
        let r = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
        let len = rng.gen_range(0..=conj_len);
        let g = random_reduced_word(rng, p.num_generators(), len);
        w = w.concat(&r.conjugate_by(&g));
    }
    w.free_reduce()
}
