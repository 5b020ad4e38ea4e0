use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use rustc_hash::FxHashSet;

use crate::hnn::WordProblem;
use crate::presentations::Presentation;
use crate::words::{Letter, Word};

/// Bounds on one area computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AreaLimits {
    /// Longest relator-application sequence considered.
    pub max_depth: u32,
    /// Longest intermediate cyclic word kept.
    pub max_len: usize,
    /// Total distinct states stored across both search phases.
    pub max_states: usize,
}

impl Default for AreaLimits {
    fn default() -> Self {
        AreaLimits {
            max_depth: 64,
            max_len: 64,
            max_states: 10_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AreaResult {
    /// The minimal number of relator applications.
    Exact(u32),
    /// A filling with this many applications exists; a smaller one was not
    /// excluded within the limits.
    UpperBound(u32),
    /// No filling found within the limits.
    Unknown,
}

impl AreaResult {
    /// Best known upper bound.
    pub fn upper(self) -> Option<u32> {
        match self {
            AreaResult::Exact(n) | AreaResult::UpperBound(n) => Some(n),
            AreaResult::Unknown => None,
        }
    }

    pub fn exact(self) -> Option<u32> {
        match self {
            AreaResult::Exact(n) => Some(n),
            _ => None,
        }
    }
}

type Code = u8;

fn inv(c: Code) -> Code {
    c ^ 1
}

/// Free and then cyclic reduction of a code word.
fn cyclic_reduce(w: &[Code]) -> Vec<Code> {
    let mut out = Vec::with_capacity(w.len());
    cyclic_reduce_into(w, &mut out);
    out
}

fn cyclic_reduce_into(w: &[Code], out: &mut Vec<Code>) {
    out.clear();
    for &c in w {
        if out.last() == Some(&inv(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == inv(out[j - 1]) {
        i += 1;
        j -= 1;
    }
    out.truncate(j);
    out.drain(..i);
}

/// Start of the lexicographically least rotation.
fn least_rotation(s: &[Code]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j) % n.max(1)
}

fn rotated(s: &[Code], k: usize) -> Vec<Code> {
    let mut v = Vec::with_capacity(s.len());
    v.extend_from_slice(&s[k..]);
    v.extend_from_slice(&s[..k]);
    v
}

/// Least rotation of `w` or `w⁻¹`, for a cyclically reduced `w`.
fn canonical(w: &[Code]) -> Vec<Code> {
    let mut out = Vec::with_capacity(w.len());
    canonical_into(w, &mut Vec::new(), &mut out);
    out
}

/// As [`canonical`], with caller buffers; the result is left in `out`.
fn canonical_into(w: &[Code], scratch: &mut Vec<Code>, out: &mut Vec<Code>) {
    let n = w.len();
    scratch.clear();
    scratch.extend(w.iter().rev().map(|&c| inv(c)));
    let a = least_rotation(w);
    let b = least_rotation(scratch);
    let first = (0..n).map(|i| w[(a + i) % n]).cmp((0..n).map(|i| scratch[(b + i) % n]));
    out.clear();
    if first.is_le() {
        out.extend_from_slice(&w[a..]);
        out.extend_from_slice(&w[..a]);
    } else {
        out.extend_from_slice(&scratch[b..]);
        out.extend_from_slice(&scratch[..b]);
    }
}

fn to_codes(w: &Word) -> Vec<Code> {
    w.iter().map(|l| l.code() as Code).collect()
}

/// Cyclic rotations of every relator and its inverse, indexed by their last
/// letter, plus the canonical classes of the relators.
struct Moves {
    by_last: Vec<Vec<Vec<Code>>>,
    relator_classes: HashSet<Vec<Code>>,
    relator_lens: Vec<usize>,
}

impl Moves {
    fn new(p: &Presentation) -> Self {
        let mut by_last = vec![Vec::new(); 2 * p.num_generators()];
        let mut seen = HashSet::new();
        let mut relator_classes = HashSet::new();
        for r in p.relators() {
            let c = to_codes(r);
            relator_classes.insert(canonical(&c));
            let ci: Vec<Code> = c.iter().rev().map(|&x| inv(x)).collect();
            for base in [c, ci] {
                for k in 0..base.len() {
                    let rot = rotated(&base, k);
                    if seen.insert(rot.clone()) {
                        by_last[*rot.last().unwrap() as usize].push(rot);
                    }
                }
            }
        }
        let relator_lens = relator_classes.iter().map(Vec::len).collect();
        Moves {
            by_last,
            relator_classes,
            relator_lens,
        }
    }

    /// Canonical results of inserting a relator rotation before some letter
    /// of `x` so that its last letter cancels that letter. Removing a face
    /// along the boundary of a van Kampen diagram is such a move, so these
    /// moves realize the area.
    /// Only results whose length passes `keep` are canonicalized and passed
    /// to `f`.
    fn successors(
        &self,
        x: &[Code],
        buf: &mut Buffers,
        mut keep: impl FnMut(usize) -> bool,
        mut f: impl FnMut(&[Code]),
    ) {
        let n = x.len();
        for i in 0..n {
            for rho in &self.by_last[inv(x[i]) as usize] {
                let mut k = 0;
                while k < rho.len() && k < n && rho[rho.len() - 1 - k] == inv(x[(i + k) % n]) {
                    k += 1;
                }
                buf.raw.clear();
                buf.raw.extend_from_slice(&rho[..rho.len() - k]);
                buf.raw.extend((k..n).map(|j| x[(i + j) % n]));
                cyclic_reduce_into(&buf.raw, &mut buf.reduced);
                if !keep(buf.reduced.len()) {
                    continue;
                }
                canonical_into(&buf.reduced, &mut buf.scratch, &mut buf.out);
                f(&buf.out);
            }
        }
    }
}

#[derive(Default)]
struct Buffers {
    raw: Vec<Code>,
    reduced: Vec<Code>,
    scratch: Vec<Code>,
    out: Vec<Code>,
}

/// Best-first search preferring short words; returns the depth of the
/// first filling found.
fn greedy(moves: &Moves, start: &[Code], limits: &AreaLimits, budget: &mut usize) -> Option<u32> {
    let mut seen: FxHashSet<Vec<Code>> = FxHashSet::default();
    let mut buf = Buffers::default();
    let mut heap = BinaryHeap::new();
    seen.insert(start.to_vec());
    heap.push(Reverse((start.len(), 0u32, start.to_vec())));
    while let Some(Reverse((_, d, x))) = heap.pop() {
        if x.is_empty() {
            return Some(d);
        }
        if moves.relator_classes.contains(&x) {
            if d < limits.max_depth {
                return Some(d + 1);
            }
            continue;
        }
        if d >= limits.max_depth {
            continue;
        }
        let mut stop = false;
        moves.successors(&x, &mut buf, |n| n <= limits.max_len, |y| {
            if stop || seen.contains(y) {
                return;
            }
            if *budget == 0 {
                stop = true;
                return;
            }
            *budget -= 1;
            seen.insert(y.to_vec());
            heap.push(Reverse((y.len(), d + 1, y.to_vec())));
        });
        if stop {
            return None;
        }
    }
    None
}

enum Layered {
    Found(u32),
    /// No filling shorter than the bound exists.
    AtLeast,
    Incomplete,
}

/// Breadth-first search by depth. Looks for fillings of length below
/// `bound`.
fn layered(moves: &Moves, start: &[Code], bound: u32, limits: &AreaLimits, budget: &mut usize) -> Layered {
    let mut seen: FxHashSet<Vec<Code>> = FxHashSet::default();
    let mut buf = Buffers::default();
    seen.insert(start.to_vec());
    let mut level = vec![start.to_vec()];
    // Every state pruned for length lies at this level or deeper.
    let mut min_pruned: Option<u32> = None;
    let mut k = 0u32;
    loop {
        // Levels below k are expanded without reaching a relator class or
        // the empty word.
        let lower = match min_pruned {
            Some(j) => (k + 2).min(j + 2),
            None => k + 2,
        };
        if lower >= bound {
            return Layered::AtLeast;
        }
        if k + 1 > limits.max_depth {
            return Layered::Incomplete;
        }
        // The level about to be generated is the last one that can matter.
        let last = k + 3 >= bound;
        let mut next = Vec::new();
        let mut empty = false;
        let mut relator = false;
        let mut out_of_budget = false;
        for x in &level {
            let keep = |n: usize| {
                if n > limits.max_len {
                    min_pruned.get_or_insert(k + 1);
                    return false;
                }
                !last || n == 0 || moves.relator_lens.contains(&n)
            };
            moves.successors(x, &mut buf, keep, |y| {
                if y.is_empty() {
                    empty = true;
                    return;
                }
                if moves.relator_classes.contains(y) {
                    relator = true;
                    return;
                }
                if last || out_of_budget || seen.contains(y) {
                    return;
                }
                if *budget == 0 {
                    out_of_budget = true;
                    return;
                }
                *budget -= 1;
                seen.insert(y.to_vec());
                next.push(y.to_vec());
            });
            if empty {
                break;
            }
        }
        if empty && k + 1 < bound {
            return Layered::Found(k + 1);
        }
        if relator && k + 2 < bound {
            return Layered::Found(k + 2);
        }
        if out_of_budget {
            return Layered::Incomplete;
        }
        level = next;
        k += 1;
    }
}

/// Minimal number of relator applications turning the trivial word `w` into
/// the empty word, working with cyclic words up to inversion.
///
/// A best-first search for short words gives an upper bound; a
/// breadth-first search then tries to rule out anything smaller.
pub fn min_area(p: &Presentation, w: &Word, limits: &AreaLimits) -> AreaResult {
    let start = canonical(&cyclic_reduce(&to_codes(w)));
    if start.is_empty() {
        return AreaResult::Exact(0);
    }
    let moves = Moves::new(p);
    if moves.relator_classes.contains(&start) {
        return AreaResult::Exact(1);
    }
    let mut budget = limits.max_states;
    let upper = greedy(&moves, &start, limits, &mut budget);
    let bound = upper.unwrap_or(limits.max_depth + 1);
    match (layered(&moves, &start, bound, limits, &mut budget), upper) {
        (Layered::Found(d), _) => AreaResult::Exact(d),
        (Layered::AtLeast, Some(u)) => AreaResult::Exact(u),
        (Layered::AtLeast, None) | (Layered::Incomplete, None) => AreaResult::Unknown,
        (Layered::Incomplete, Some(u)) => AreaResult::UpperBound(u),
    }
}

/// Maximal area of trivial words by length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaProfile {
    /// `max_area[n]`: largest area among trivial words of length at most
    /// `n`, using exact values and upper bounds alike.
    pub max_area: Vec<u32>,
    /// Cyclic word classes of length exactly `n` examined.
    pub examined: Vec<u64>,
    /// Trivial classes of length exactly `n`.
    pub trivial: Vec<u64>,
    /// Classes whose area was not determined exactly.
    pub inexact: u64,
    /// Classes for which no filling was found.
    pub unknown: u64,
}

/// Area profile up to length `max_len`. Words of length `n` are enumerated
/// as cyclically reduced words up to rotation and inversion; words that are
/// not cyclically reduced have the area of a shorter class.
pub fn area_profile(p: &Presentation, oracle: &dyn WordProblem, max_len: usize, limits: &AreaLimits) -> AreaProfile {
    let codes = 2 * p.num_generators() as Code;
    let mut profile = AreaProfile {
        max_area: vec![0; max_len + 1],
        examined: vec![0; max_len + 1],
        trivial: vec![0; max_len + 1],
        inexact: 0,
        unknown: 0,
    };
    let mut word: Vec<Code> = Vec::with_capacity(max_len);
    for n in 1..=max_len {
        let mut best = 0u32;
        enumerate(&mut word, n, codes, &mut |w| {
            if w.len() >= 2 && w[0] == inv(w[w.len() - 1]) {
                return;
            }
            if canonical(w) != w {
                return;
            }
            profile.examined[n] += 1;
            let word = Word::new(w.iter().map(|&c| Letter::from_code(c as usize)).collect());
            if !oracle.is_trivial(&word) {
                return;
            }
            profile.trivial[n] += 1;
            match min_area(p, &word, limits) {
                AreaResult::Exact(a) => best = best.max(a),
                AreaResult::UpperBound(a) => {
                    profile.inexact += 1;
                    best = best.max(a);
                }
                AreaResult::Unknown => profile.unknown += 1,
            }
        });
        profile.max_area[n] = best.max(profile.max_area[n - 1]);
    }
    profile
}

/// Calls `f` on every freely reduced word of length `n`.
fn enumerate(word: &mut Vec<Code>, n: usize, codes: Code, f: &mut dyn FnMut(&[Code])) {
    if word.len() == n {
        f(word);
        return;
    }
    for c in 0..codes {
        if word.last() == Some(&inv(c)) {
            continue;
        }
        word.push(c);
        enumerate(word, n, codes, f);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn booth_matches_naive() {
        let cases: [&[Code]; 5] = [&[3, 1, 2, 1, 2], &[0, 0, 0], &[2, 1, 2, 1], &[5, 4, 3, 2, 1, 0], &[1, 0, 1, 0, 0]];
        for s in cases {
            let naive = (0..s.len()).map(|k| rotated(s, k)).min().unwrap();
            assert_eq!(rotated(s, least_rotation(s)), naive, "{s:?}");
        }
    }

    proptest::proptest! {
        #[test]
        fn booth_matches_naive_random(s in proptest::collection::vec(0u8..4, 1..30)) {
            let naive = (0..s.len()).map(|k| rotated(&s, k)).min().unwrap();
            proptest::prop_assert_eq!(rotated(&s, least_rotation(&s)), naive);
        }
    }

    #[test]
    fn reduction() {
        assert_eq!(cyclic_reduce(&[0, 2, 3, 1]), Vec::<Code>::new());
        assert_eq!(cyclic_reduce(&[0, 2, 4, 3, 1]), vec![4]);
        assert_eq!(cyclic_reduce(&[2, 0, 1, 4]), vec![2, 4]);
    }
}
