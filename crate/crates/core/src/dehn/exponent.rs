use num_integer::Integer;
use num_traits::ToPrimitive;

use super::DehnError;
use crate::hnn::{snowflake_witness, witness_exponent, witness_length};

/// Levels whose witness words are built explicitly in [`alpha_exponent`];
/// longer ones use the length recurrence.
const MAX_BUILT_LEN: u64 = 200_000;

/// Levels `k` for which slope samples `s_k` are reported.
pub const SLOPE_LEVELS: u32 = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentReport {
    pub p: u32,
    pub q: u32,
    /// `2p/q` in lowest terms.
    pub ratio: (u64, u64),
    /// `log₂(2p/q)`
    pub alpha: f64,
    /// `2α`
    pub dehn_exponent: f64,
    /// `s_k = (ln N_{k+1} − ln N_k) / (ln ℓ_{k+1} − ln ℓ_k)` for the witness
    /// words `w_k = a^{N_k}` of length `ℓ_k`, `k = 0, 1, …`.
    pub slopes: Vec<f64>,
    /// Limit of the slopes, `ln(2p) / ln(2q)`.
    pub slope_limit: f64,
}

fn witness_len(p: u32, q: u32, k: u32) -> f64 {
    let len = witness_length(q, k);
    if len <= MAX_BUILT_LEN.into() {
        snowflake_witness(p, q, k).expect("p, q positive").len as f64
    } else {
        len.to_f64().expect("finite")
    }
}

pub fn alpha_exponent(p: u32, q: u32) -> Result<ExponentReport, DehnError> {
    if p == 0 || q == 0 {
        return Err(DehnError::Params(format!("p and q must be positive, got p = {p}, q = {q}")));
    }
    let (num, den) = (2 * p as u64, q as u64);
    let g = num.gcd(&den);
    let alpha = (num as f64 / den as f64).log2();
    let lens: Vec<f64> = (0..=SLOPE_LEVELS).map(|k| witness_len(p, q, k)).collect();
    let slopes = (0..SLOPE_LEVELS as usize)
        .map(|k| {
            let n0 = witness_exponent(p, k as u32).to_f64().expect("finite").ln();
            let n1 = witness_exponent(p, k as u32 + 1).to_f64().expect("finite").ln();
            (n1 - n0) / (lens[k + 1].ln() - lens[k].ln())
        })
        .collect();
    Ok(ExponentReport {
        p,
        q,
        ratio: (num / g, den / g),
        alpha,
        dehn_exponent: 2.0 * alpha,
        slopes,
        slope_limit: (2.0 * p as f64).ln() / (2.0 * q as f64).ln(),
    })
}

/// `2 log₂(2p/q)`
pub fn dehn_exponent_of(p: u64, q: u64) -> f64 {
    2.0 * (2.0 * p as f64 / q as f64).log2()
}

/// The pair with the smallest `q ≤ q_max` such that `p`, the integer nearest
/// to `q·2^{ρ/2 − 1}`, satisfies `p ≥ q` and `|2 log₂(2p/q) − ρ| < eps`.
pub fn find_pq_for_exponent(rho: f64, eps: f64, q_max: u64) -> Result<(u64, u64), DehnError> {
    if !rho.is_finite() || rho < 2.0 || eps.is_nan() || eps <= 0.0 {
        return Err(DehnError::Params(format!("need rho >= 2 and eps > 0, got rho = {rho}, eps = {eps}")));
    }
    let scale = (rho / 2.0 - 1.0).exp2();
    let mut best: Option<((u64, u64), f64)> = None;
    for q in 1..=q_max {
        let p = (q as f64 * scale).round() as u64;
        if p < q {
            continue;
        }
        let err = (dehn_exponent_of(p, q) - rho).abs();
        if err < eps {
            return Ok((p, q));
        }
        if best.is_none_or(|(_, e)| err < e) {
            best = Some(((p, q), err));
        }
    }
    Err(DehnError::NotFound {
        best: best.map(|(pq, _)| pq),
        error: best.map_or(f64::INFINITY, |(_, e)| e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_values() {
        let r = alpha_exponent(3, 1).unwrap();
        assert_eq!(r.ratio, (6, 1));
        assert!((r.alpha - 6f64.log2()).abs() < 1e-12);
        assert!((r.alpha - 2.585).abs() < 1e-3);
        assert!((r.dehn_exponent - 5.170).abs() < 1e-3);
        let r = alpha_exponent(1, 1).unwrap();
        assert_eq!((r.alpha, r.dehn_exponent), (1.0, 2.0));
        let r = alpha_exponent(2, 1).unwrap();
        assert_eq!((r.alpha, r.dehn_exponent), (2.0, 4.0));
        assert_eq!(alpha_exponent(3, 2).unwrap().ratio, (3, 1));
        assert_eq!(alpha_exponent(4, 6).unwrap().ratio, (4, 3));
        assert!(alpha_exponent(0, 1).is_err());
    }

    #[test]
    fn alpha_iff() {
        for p in 1..8 {
            for q in 1..8 {
                let r = alpha_exponent(p, q).unwrap();
                assert_eq!(r.alpha > 1.0, p > q);
                if p >= q {
                    assert!(r.dehn_exponent >= 2.0);
                }
            }
        }
    }

    /// Slopes from `ℓ_k = 5·2^k − 4` by hand for q = 1.
    #[test]
    fn unit_q_slopes() {
        for p in [2u32, 3] {
            let r = alpha_exponent(p, 1).unwrap();
            let len = |k: i32| 5.0 * 2f64.powi(k) - 4.0;
            for (k, &s) in r.slopes.iter().enumerate() {
                let k = k as i32;
                let hand = (2.0 * p as f64).ln() / (len(k + 1) / len(k)).ln();
                assert!((s - hand).abs() < 1e-12);
            }
            assert!(r.slopes.windows(2).all(|w| w[0] < w[1]));
            assert!((r.slopes[8] - (2.0 * p as f64).log2()).abs() < 0.02);
            assert!(r.slopes[8] < r.slope_limit);
        }
        let r = alpha_exponent(3, 1).unwrap();
        assert!((r.slopes[8] - 2.5792).abs() < 1e-4);
        let r = alpha_exponent(2, 1).unwrap();
        assert!((r.slopes[8] - 1.9955).abs() < 1e-4);
    }

    #[test]
    fn density_examples() {
        assert_eq!(find_pq_for_exponent(2.0, 0.5, 1).unwrap(), (1, 1));
        assert_eq!(find_pq_for_exponent(4.0, 0.001, 1).unwrap(), (2, 1));
        // q = 12 is the first denominator within 0.01 of 3.
        assert_eq!(find_pq_for_exponent(3.0, 0.01, 1000).unwrap(), (17, 12));
        assert!((dehn_exponent_of(17, 12) - 3.0).abs() < 0.01);
        assert!((dehn_exponent_of(41, 29) - 2.99914).abs() < 1e-5);
        for rho in [2.5, 3.0, std::f64::consts::PI, 5.0, 7.3] {
            let (p, q) = find_pq_for_exponent(rho, 0.01, 1000).unwrap();
            assert!(p >= q && (dehn_exponent_of(p, q) - rho).abs() < 0.01);
        }
        match find_pq_for_exponent(3.0, 1e-9, 5) {
            Err(DehnError::NotFound { best: Some((p, q)), .. }) => assert!(q <= 5 && p >= q),
            other => panic!("{other:?}"),
        }
        assert!(find_pq_for_exponent(1.5, 0.01, 10).is_err());
    }

    /// Oracle: scan all q with every p in a window, not just the nearest.
    #[test]
    fn density_smallest_q() {
        for rho in [2.5, 3.0, std::f64::consts::PI] {
            let (_, q) = find_pq_for_exponent(rho, 0.01, 1000).unwrap();
            for q2 in 1..q {
                for p2 in q2..=4 * q2 {
                    assert!((dehn_exponent_of(p2, q2) - rho).abs() >= 0.01, "rho={rho} ({p2},{q2})");
                }
            }
        }
    }
}
