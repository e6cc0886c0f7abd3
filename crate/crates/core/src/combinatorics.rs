//! Binomials, Macaulay `i`-binomial expansions and O-sequences.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k < 0` or `n < k`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < k {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// The `i`-binomial expansion `n = C(n_i, i) + C(n_{i-1}, i-1) + ... + C(n_j, j)`
/// with `n_i > n_{i-1} > ... > n_j >= j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialExpansion {
    pub n: u64,
    pub i: u32,
    /// `(n_k, k)` pairs, `k` descending.
    pub parts: Vec<(u64, u32)>,
}

impl BinomialExpansion {
    pub fn growth(&self) -> BigUint {
        self.parts
            .iter()
            .map(|&(top, k)| binomial(top as i64 + 1, k as i64 + 1))
            .sum()
    }
}

impl std::fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(t, k)| format!("C({t},{k})")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Greedy expansion: take the largest `n_k` with `C(n_k, k) <= remainder`, then recurse on `k - 1`.
pub fn macaulay_expansion(n: u64, i: u32) -> Result<BinomialExpansion> {
    if n == 0 || i == 0 {
        return Err(Error::OutOfRange(format!("expansion needs n >= 1 and i >= 1, got n={n}, i={i}")));
    }
    let mut parts = Vec::new();
    let mut rest = n as u128;
    let mut k = i;
    while rest > 0 && k >= 1 {
        // C(top, k) starting from top = k; grow top while the next binomial fits
        let mut top = k as u64;
        let mut value: u128 = 1;
        loop {
            let next = value * (top as u128 + 1) / (top as u128 + 1 - k as u128);
            if next > rest {
                break;
            }
            value = next;
            top += 1;
        }
        parts.push((top, k));
        rest -= value;
        k -= 1;
    }
    Ok(BinomialExpansion { n, i, parts })
}

/// `n^<i>`; `0^<i> = 0`.
pub fn macaulay_growth(n: u64, i: u32) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::zero());
    }
    Ok(macaulay_expansion(n, i)?.growth())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OSequenceVerdict {
    pub is_o_sequence: bool,
    /// Degree `d` of the first violation `h_{d+1} > h_d^<d>`.
    pub first_violation: Option<usize>,
}

/// Checks `h_0 = 1` and Macaulay's bound `h_{d+1} <= h_d^<d>` for every `d >= 1`.
/// A violation of `h_0 = 1` is reported at degree 0.
pub fn is_o_sequence(h: &[i64]) -> Result<OSequenceVerdict> {
    if let Some(&neg) = h.iter().find(|&&x| x < 0) {
        return Err(Error::OutOfRange(format!("negative entry {neg}")));
    }
    let fail = |d| OSequenceVerdict { is_o_sequence: false, first_violation: Some(d) };
    if !h.is_empty() && h[0] != 1 {
        return Ok(fail(0));
    }
    for d in 1..h.len().saturating_sub(1) {
        let bound = macaulay_growth(h[d] as u64, d as u32)?;
        if BigUint::from(h[d + 1] as u64) > bound {
            return Ok(fail(d));
        }
    }
    Ok(OSequenceVerdict { is_o_sequence: true, first_violation: None })
}

pub(crate) fn is_o_sequence_u64(h: &[u64]) -> bool {
    let signed: Vec<i64> = h.iter().map(|&x| x as i64).collect();
    is_o_sequence(&signed).map(|v| v.is_o_sequence).unwrap_or(false)
}

/// `sum_{h=2}^{j} (-1)^h C(t,h) C(t-h, j-h)`, summed term by term.
pub fn lemma27_lhs(t: i64, j: i64) -> Result<BigInt> {
    if !(j >= 2 && t >= j) {
        return Err(Error::OutOfRange(format!("need t >= j >= 2, got t={t}, j={j}")));
    }
    Ok(alternating_sum(t, j, 2))
}

/// `(j - 1) C(t, j)`.
pub fn lemma27_rhs(t: i64, j: i64) -> BigInt {
    BigInt::from(j - 1) * BigInt::from(binomial(t, j))
}

/// `sum_{h=0}^{j} (-1)^h C(t,h) C(t-h, j-h)`, which vanishes for `t >= j >= 1`.
pub fn full_alternating_sum(t: i64, j: i64) -> BigInt {
    alternating_sum(t, j, 0)
}

fn alternating_sum(t: i64, j: i64, from: i64) -> BigInt {
    (from..=j)
        .map(|h| {
            let term = BigInt::from(binomial(t, h) * binomial(t - h, j - h));
            if h % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}
