use num_integer::Integer;

use super::Presentation;

/// Isomorphism type of the abelianization: `Z^free_rank ⊕ ⊕ Z/dᵢ` with
/// `d₁ | d₂ | …` and every `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u128>,
}

/// Abelianization of the group of `p`, from the Smith normal form of the
/// relator exponent-sum matrix.
pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let cols = p.num_generators();
    let mut m: Vec<Vec<i128>> = p
        .relators()
        .iter()
        .map(|r| (0..cols).map(|g| r.exponent_sum(g) as i128).collect())
        .collect();
    let mut diag = smith_diagonal(&mut m, cols);
    diag.retain(|&d| d != 0);
    let rank = diag.len();
    AbelianInvariants {
        free_rank: cols - rank,
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
    }
}

/// Nonzero diagonal of the Smith normal form of `m` (rows × `cols`), in
/// divisibility order. Destroys `m`.
fn smith_diagonal(m: &mut [Vec<i128>], cols: usize) -> Vec<u128> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero |entry| in the remaining block.
        let mut pivot = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && pivot.is_none_or(|(_, _, best): (usize, usize, i128)| v.abs() < best) {
                    pivot = Some((i, j, v.abs()));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            let pv = m[t][t];
            for i in t + 1..rows {
                let q = Integer::div_floor(&m[i][t], &pv);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&m[t][j], &pv);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // The pivot must also divide the rest of the block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % pv != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j];
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t into the pivot.
            let mut best = (t, t, m[t][t].abs());
            for i in t + 1..rows {
                let v = m[i][t].abs();
                if v != 0 && v < best.2 {
                    best = (i, t, v);
                }
            }
            for j in t + 1..cols {
                let v = m[t][j].abs();
                if v != 0 && v < best.2 {
                    best = (t, j, v);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].unsigned_abs());
        t += 1;
    }
    // Enforce the divisibility chain.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (a, b) = (diag[i], diag[j]);
            let g = a.gcd(&b);
            diag[i] = g;
            diag[j] = a.checked_div(g).map_or(0, |x| x * b);
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{free_abelian_rank2, make_klein_form, make_snowflake_g};

    fn inv(free_rank: usize, torsion: &[u128]) -> AbelianInvariants {
        AbelianInvariants {
            free_rank,
            torsion: torsion.to_vec(),
        }
    }

    #[test]
    fn small_groups() {
        assert_eq!(abelian_invariants(&free_abelian_rank2()), inv(2, &[]));
        let p = Presentation::parse(&["a"], &["a^4"]).unwrap();
        assert_eq!(abelian_invariants(&p), inv(0, &[4]));
        let p = Presentation::parse(&["a", "b"], &["a^4", "b^6"]).unwrap();
        assert_eq!(abelian_invariants(&p), inv(0, &[2, 12]));
        let p = Presentation::parse(&["a", "b"], &["a^2 b^4", "a^6 b^8"]).unwrap();
        // det = 2·8 − 4·6 = −8, gcd of entries 2
        assert_eq!(abelian_invariants(&p), inv(0, &[2, 4]));
    }

    #[test]
    fn klein_bottle_and_snowflake() {
        // Klein bottle group abelianizes to Z ⊕ Z/2.
        let k = Presentation::parse(&["a", "b"], &["a^-1 b a b"]).unwrap();
        assert_eq!(abelian_invariants(&k), inv(1, &[2]));
        // Columns a, b, t: rows (0, 2, 0) and (2q − 2p, −1, 0).
        let r = make_klein_form(3, 1).unwrap();
        assert_eq!(abelian_invariants(&r), inv(1, &[8]));
        // G_{p,q}: rows (0,0,0,0), (q−p, −1, 0, 0), (q−p, 1, 0, 0).
        let g = make_snowflake_g(3, 1).unwrap();
        assert_eq!(abelian_invariants(&g), inv(2, &[4]));
        let g = make_snowflake_g(2, 2).unwrap();
        assert_eq!(abelian_invariants(&g), inv(3, &[]));
    }
}
