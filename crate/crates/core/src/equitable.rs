//! Equitable sets for the two-edge tubular structure of `G_{p,q}`: the
//! vertex group `Z²` with edge lines spanned by `(q, 0)`, `(p, 1)` and
//! `(p, −1)`.

use std::fmt;

use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    pub u: i64,
    pub v: i64,
}

impl IntVector {
    pub const fn new(u: i64, v: i64) -> Self {
        IntVector { u, v }
    }

    pub fn is_zero(self) -> bool {
        self.u == 0 && self.v == 0
    }

    /// Representative of `±self` whose first nonzero coordinate is positive.
    pub fn normalized(self) -> Self {
        if self.u < 0 || (self.u == 0 && self.v < 0) {
            -self
        } else {
            self
        }
    }

    /// Max-norm `max(|u|, |v|)`.
    pub fn norm_max(self) -> u64 {
        self.u.unsigned_abs().max(self.v.unsigned_abs())
    }
}

impl std::ops::Neg for IntVector {
    type Output = IntVector;

    fn neg(self) -> IntVector {
        IntVector::new(-self.u, -self.v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// A nonempty multiset of nonzero vectors, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquitableCandidate {
    vectors: Vec<IntVector>,
}

impl EquitableCandidate {
    /// `None` if `vectors` is empty or contains the zero vector.
    pub fn new(mut vectors: Vec<IntVector>) -> Option<Self> {
        if vectors.is_empty() || vectors.iter().any(|x| x.is_zero()) {
            return None;
        }
        vectors.sort();
        Some(EquitableCandidate { vectors })
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }
}

impl fmt::Display for EquitableCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vectors.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `|ad − bc|` for `x = (a, b)`, `y = (c, d)`.
pub fn intersection_number(x: IntVector, y: IntVector) -> u64 {
    (x.u as i128 * y.v as i128 - x.v as i128 * y.u as i128).unsigned_abs() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(u64),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// Index in `Z²` of the lattice spanned by `vectors`, by reducing the
/// `2 × k` matrix of columns to lower triangular form.
pub fn lattice_index(vectors: &[IntVector]) -> LatticeIndex {
    let mut cols: Vec<(i64, i64)> = vectors.iter().map(|x| (x.u, x.v)).collect();
    // Euclid on the top row until at most one column has a nonzero top.
    let mut pivot: Option<(i64, i64)> = None;
    let mut rest = Vec::new();
    for c in cols.drain(..) {
        let Some(mut p) = pivot else {
            if c.0 == 0 {
                rest.push(c.1);
            } else {
                pivot = Some(c);
            }
            continue;
        };
        let mut c = c;
        while c.0 != 0 {
            let k = Integer::div_floor(&p.0, &c.0);
            p = (p.0 - k * c.0, p.1 - k * c.1);
            std::mem::swap(&mut p, &mut c);
        }
        rest.push(c.1);
        pivot = Some(p);
    }
    let Some(p) = pivot else {
        return LatticeIndex::Infinite;
    };
    let h = rest.iter().fold(0i64, |g, &x| g.gcd(&x));
    if h == 0 {
        LatticeIndex::Infinite
    } else {
        LatticeIndex::Finite(p.0.unsigned_abs() * h.unsigned_abs())
    }
}

/// The three sums of the equitability condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarSums {
    /// `Σ |q vᵢ|`
    pub sum_q: u64,
    /// `Σ |p vᵢ − uᵢ|`
    pub sum_minus: u64,
    /// `Σ |p vᵢ + uᵢ|`
    pub sum_plus: u64,
    pub holds: bool,
}

pub fn star_condition(p: u32, q: u32, s: &[IntVector]) -> StarSums {
    let edges = [
        IntVector::new(q as i64, 0),
        IntVector::new(p as i64, 1),
        IntVector::new(p as i64, -1),
    ];
    let sum = |e: IntVector| s.iter().map(|&x| intersection_number(e, x)).sum::<u64>();
    let (sum_q, sum_minus, sum_plus) = (sum(edges[0]), sum(edges[1]), sum(edges[2]));
    StarSums {
        sum_q,
        sum_minus,
        sum_plus,
        holds: sum_q == sum_minus && sum_minus == sum_plus,
    }
}

/// Symbolic non-existence argument for `p > q`, checkable on any set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityTrace {
    pub p: u32,
    pub q: u32,
    pub steps: Vec<String>,
}

/// The inequality chain of [`InfeasibilityTrace`] evaluated on one set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEvaluation {
    /// `Σ |p vᵢ − uᵢ| + |p vᵢ + uᵢ|`
    pub triangle: u64,
    /// `2 Σ |p vᵢ|`
    pub doubled_p: u64,
    /// `2 Σ |q vᵢ|`
    pub doubled_q: u64,
    pub all_v_zero: bool,
    /// The chain holds and excludes the set.
    pub refuted: bool,
}

impl InfeasibilityTrace {
    fn new(p: u32, q: u32) -> Self {
        let steps = vec![
            format!("suppose S satisfies sum|{q}v| = sum|{p}v - u| = sum|{p}v + u|"),
            format!("triangle inequality: sum(|{p}v - u| + |{p}v + u|) >= 2 sum|{p}v|"),
            format!("{p} > {q}: 2 sum|{p}v| >= 2 sum|{q}v|, with equality only if every v = 0"),
            format!("the assumption makes both ends equal to 2 sum|{q}v|, so every v = 0"),
            "then sum|qv| = 0 while sum|pv - u| = sum|u| > 0 since S has no zero vector".into(),
        ];
        InfeasibilityTrace { p, q, steps }
    }

    pub fn evaluate(&self, s: &[IntVector]) -> TraceEvaluation {
        let (p, q) = (self.p as i64, self.q as i64);
        let triangle: u64 = s
            .iter()
            .map(|x| (p * x.v - x.u).unsigned_abs() + (p * x.v + x.u).unsigned_abs())
            .sum();
        let doubled_p: u64 = s.iter().map(|x| 2 * (p * x.v).unsigned_abs()).sum();
        let doubled_q: u64 = s.iter().map(|x| 2 * (q * x.v).unsigned_abs()).sum();
        let all_v_zero = s.iter().all(|x| x.v == 0);
        let sums = star_condition(self.p, self.q, s);
        let chain = triangle >= doubled_p && doubled_p >= doubled_q;
        let excluded = if all_v_zero {
            sums.sum_q == 0 && sums.sum_minus > 0
        } else {
            // Strict middle step, so the sum of two equals cannot hold.
            doubled_p > doubled_q && sums.sum_minus + sums.sum_plus == triangle && triangle > 2 * sums.sum_q
        };
        TraceEvaluation {
            triangle,
            doubled_p,
            doubled_q,
            all_v_zero,
            refuted: chain && excluded && !sums.holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Feasible {
        candidate: EquitableCandidate,
        sums: StarSums,
        index: u64,
    },
    Infeasible(InfeasibilityTrace),
}

impl Certificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Certificate::Feasible { .. })
    }

    /// Feasible: the sums and the finite index are recomputed and compared.
    /// Infeasible: the trace belongs to `(p, q)` and `p > q`.
    pub fn validate(&self, p: u32, q: u32) -> bool {
        match self {
            Certificate::Feasible { candidate, sums, index } => {
                let fresh = star_condition(p, q, candidate.vectors());
                fresh == *sums && fresh.holds && lattice_index(candidate.vectors()) == LatticeIndex::Finite(*index)
            }
            Certificate::Infeasible(trace) => trace.p == p && trace.q == q && p > q,
        }
    }
}

/// Decides existence of an equitable set: `{(q, 1), (q, −1)}` works when
/// `p ≤ q`, and none exists when `p > q`.
pub fn decide_equitable(p: u32, q: u32) -> Certificate {
    if p <= q {
        let candidate = EquitableCandidate::new(vec![IntVector::new(q as i64, 1), IntVector::new(q as i64, -1)])
            .expect("nonzero vectors");
        let sums = star_condition(p, q, candidate.vectors());
        let LatticeIndex::Finite(index) = lattice_index(candidate.vectors()) else {
            unreachable!("(q, ±1) span a finite-index lattice")
        };
        Certificate::Feasible { candidate, sums, index }
    } else {
        Certificate::Infeasible(InfeasibilityTrace::new(p, q))
    }
}

/// First multiset of at most `max_size` vectors with coordinates bounded by
/// `coord_bound` that satisfies the sum condition and spans a finite-index
/// lattice. Vectors are taken up to sign. Bounds are tried in increasing
/// order, sizes within a bound in increasing order, and multisets of a given
/// size in lexicographic order of their sorted normalized vectors.
pub fn exhaustive_search(p: u32, q: u32, coord_bound: u32, max_size: usize) -> Option<EquitableCandidate> {
    let b = coord_bound as i64;
    let mut all: Vec<IntVector> = (-b..=b)
        .flat_map(|u| (-b..=b).map(move |v| IntVector::new(u, v)))
        .filter(|x| !x.is_zero() && x.normalized() == *x)
        .collect();
    all.sort();
    for bound in 1..=coord_bound as u64 {
        let vecs: Vec<IntVector> = all.iter().copied().filter(|x| x.norm_max() <= bound).collect();
        for size in 1..=max_size {
            let mut idx = vec![0usize; size];
            loop {
                let s: Vec<IntVector> = idx.iter().map(|&i| vecs[i]).collect();
                let new_at_bound = s.iter().any(|x| x.norm_max() == bound);
                if new_at_bound && star_condition(p, q, &s).holds && lattice_index(&s) != LatticeIndex::Infinite {
                    return EquitableCandidate::new(s);
                }
                // Next nondecreasing index tuple.
                let Some(k) = (0..size).rev().find(|&k| idx[k] + 1 < vecs.len()) else {
                    break;
                };
                idx[k] += 1;
                for m in k + 1..size {
                    idx[m] = idx[k];
                }
            }
        }
    }
    None
}
