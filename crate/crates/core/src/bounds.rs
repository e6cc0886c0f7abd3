//! Lower bounds for h-vectors of generic level quotients and the
//! predicates derived from them.
//!
//! For a level h-vector `h` of type `t` and socle degree `e`, the generic
//! type-`c` quotient satisfies, in every degree `u` with `i = e - u`,
//!
//! ```text
//! H_u >= ((t - c) h_i + (c t - 1) h_u) / (t^2 - 1)
//! ```
//!
//! and since `H_u` is an integer the bound is rounded up entry by entry.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::combinatorics::{is_o_sequence_u64, macaulay_growth};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::Field;
use crate::inverse::{HVector, InverseSystemModule};
use crate::report::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    MainTheorem,
    Iarrobino,
    GhmsTightened,
    Chained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVector {
    pub entries: Vec<u64>,
    pub provenance: Provenance,
}

impl BoundVector {
    pub fn as_h_vector(&self) -> HVector {
        HVector::new(self.entries.clone())
    }

    /// Entrywise maximum; keeps the provenance of `self`.
    pub fn max_with(&self, other: &BoundVector) -> BoundVector {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| *a.max(b)).collect();
        BoundVector { entries, provenance: self.provenance }
    }
}

impl std::fmt::Display for BoundVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_h_vector())
    }
}

fn ceil_div(num: u64, den: u64) -> u64 {
    num.div_ceil(den)
}

fn check_level(h: &HVector, t: u64) -> Result<usize> {
    if h.len() < 2 {
        return Err(Error::OutOfRange("h-vector needs socle degree at least 1".into()));
    }
    if h.get(0) != 1 {
        return Err(Error::OutOfRange(format!("h_0 must be 1, got {}", h.get(0))));
    }
    if h.top() != t {
        return Err(Error::OutOfRange(format!("h_e = {} does not match type {t}", h.top())));
    }
    Ok(h.socle_degree())
}

/// `ceil(((t - c) h_{e-u} + (c t - 1) h_u) / (t^2 - 1))` for `u = 1..=e`, with entry 0 equal to 1.
pub fn main_theorem_bound(h: &HVector, t: u64, c: u64) -> Result<BoundVector> {
    if t < 2 {
        return Err(Error::OutOfRange(format!("type {t} must be at least 2")));
    }
    if c == 0 || c >= t {
        return Err(Error::OutOfRange(format!("quotient type {c} must lie in 1..={}", t - 1)));
    }
    let e = check_level(h, t)?;
    let den = t * t - 1;
    let mut entries = vec![1];
    for u in 1..=e {
        entries.push(ceil_div((t - c) * h.get(e - u) + (c * t - 1) * h.get(u), den));
    }
    Ok(BoundVector { entries, provenance: Provenance::MainTheorem })
}

/// Type-2 bound `ceil((h_u + h_{e-u}) / 3)`.
pub fn iarrobino_bound(h: &HVector) -> Result<BoundVector> {
    let e = check_level(h, 2)?;
    let mut entries = vec![1];
    for u in 1..=e {
        entries.push(ceil_div(h.get(u) + h.get(e - u), 3));
    }
    Ok(BoundVector { entries, provenance: Provenance::Iarrobino })
}

/// Smallest `delta_u` with `h_i >= 2 h_u - 2 - 3 delta_u`, i.e. `ceil((2 h_u - h_i - 2) / 3)`.
pub fn iarrobino_delta(h: &HVector, u: usize) -> i64 {
    let e = h.socle_degree();
    let num = 2 * h.get(u) as i64 - h.get(e - u) as i64 - 2;
    num.div_euclid(3) + i64::from(num.rem_euclid(3) != 0)
}

/// Outcome of comparing the empirical `H_u^{1,gen}` with `h_{e-u} - Sigma_u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem24Check {
    pub u: usize,
    pub generic_h_u: u64,
    pub h_i: u64,
    pub sigma_u: i64,
    pub holds: bool,
}

/// Computes `Sigma_u` on randomly re-mixed generators and checks
/// `H_u^{1,gen} >= h_{e-u} - Sigma_u`.
pub fn theorem24_check<F: Field>(m: &InverseSystemModule<F>, u: usize, trials: usize, seed: u64) -> Result<Theorem24Check> {
    if m.num_generators() < 2 {
        return Err(Error::OutOfRange("needs at least two generators".into()));
    }
    let generic = m.remixed(seed)?;
    let sigma_u = generic.sigma_u(u)?;
    let h = m.h_vector();
    let generic_h_u = m.empirical_generic_h(1, trials, seed)?.h.get(u);
    let h_i = h.get(m.socle_degree() - u);
    Ok(Theorem24Check { u, generic_h_u, h_i, sigma_u, holds: generic_h_u as i64 >= h_i as i64 - sigma_u })
}

/// `h_{e-1} >= t (r - 1)`: the generic Gorenstein quotient then has codimension `r`.
pub fn corollary26_predicate(h: &HVector, t: u64) -> bool {
    let e = h.socle_degree();
    let r = h.codimension() as i64;
    e >= 1 && h.get(e - 1) as i64 >= t as i64 * (r - 1)
}

/// `h_{e-1} >= -t^2 + r t + 2`: the generic type-`(t-1)` quotient then has codimension `r`.
pub fn corollary210_predicate(h: &HVector, t: u64) -> bool {
    let e = h.socle_degree();
    let (r, t) = (h.codimension() as i64, t as i64);
    e >= 1 && h.get(e - 1) as i64 >= -t * t + r * t + 2
}

/// For a level h-vector `(1, r, ..., a, t)`: true iff `r > 7` or `a >= r`.
pub fn theorem214_predicate(h: &HVector) -> bool {
    let e = h.socle_degree();
    let r = h.codimension();
    r > 7 || e < 1 || h.get(e - 1) >= r
}

/// Edge constraints between consecutive entries of a candidate quotient
/// h-vector `l` of a type-`t` parent `h`.
struct Feasibility<'a> {
    h: &'a [u64],
    /// Whether the reversed difference `h - l` must be an O-sequence,
    /// which holds when the quotient drops the type by exactly one.
    difference: bool,
}

impl Feasibility<'_> {
    fn growth(n: u64, d: usize) -> BigUint {
        macaulay_growth(n, d as u32).expect("degree is positive")
    }

    /// Can entry `u` equal `a` while entry `u + 1` equals `b`?
    fn edge(&self, u: usize, a: u64, b: u64) -> bool {
        if u >= 1 && BigUint::from(b) > Self::growth(a, u) {
            return false;
        }
        let e = self.h.len() - 1;
        if self.difference && u + 2 <= e {
            let (lower, upper) = (self.h[u] - a, self.h[u + 1] - b);
            if BigUint::from(lower) > Self::growth(upper, e - u - 1) {
                return false;
            }
        }
        true
    }
}

fn check_lengths(h: &HVector, l: &[u64]) -> Result<()> {
    if h.len() != l.len() {
        return Err(Error::OutOfRange(format!("length mismatch: h has {} entries, candidate {}", h.len(), l.len())));
    }
    Ok(())
}

/// Whether `l` can be the h-vector of a type-`c` level quotient of an
/// algebra with h-vector `h`: `l` must be an O-sequence below `h` ending in
/// `c`, and when `c = t - 1` the reverse of `h - l` must be an O-sequence too.
pub fn ghms_feasible(h: &HVector, l: &HVector, c: u64) -> Result<bool> {
    check_lengths(h, l.entries())?;
    let t = h.top();
    if !h.dominates(l) || l.top() != c || c > t {
        return Ok(false);
    }
    if c == t {
        return Ok(h == l);
    }
    if !is_o_sequence_u64(l.entries()) {
        return Ok(false);
    }
    if t - c == 1 {
        let reversed: Vec<u64> = h.entries().iter().zip(l.entries()).map(|(a, b)| a - b).rev().collect();
        return Ok(is_o_sequence_u64(&reversed));
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tightened {
    pub bound: BoundVector,
    /// False when no feasible vector lies between the input bound and `h`;
    /// the input bound is returned unchanged in that case.
    pub feasible: bool,
}

/// Raises `l` to the entrywise minimum over every vector `v` with
/// `l <= v <= h`, `v_0 = 1`, `v_e = c` and `ghms_feasible(h, v, c)`.
///
/// All feasibility conditions only couple neighbouring entries, so the
/// feasible values of each entry are found with one forward and one
/// backward sweep over the admissible ranges.
pub fn ghms_tighten(h: &HVector, l: &BoundVector, c: u64) -> Result<Tightened> {
    check_lengths(h, &l.entries)?;
    let e = h.socle_degree();
    let t = h.top();
    let unchanged = || Tightened { bound: l.clone(), feasible: false };
    if c > t || l.entries.iter().zip(h.entries()).any(|(a, b)| a > b) || e == 0 {
        return Ok(unchanged());
    }
    if c == t {
        let feasible = l.entries == h.entries();
        return Ok(Tightened { bound: l.clone(), feasible });
    }
    let allowed: Vec<Vec<u64>> = (0..=e)
        .map(|u| match u {
            0 => vec![1],
            _ if u == e => vec![c],
            _ => (l.entries[u]..=h.get(u)).collect(),
        })
        .collect();
    if l.entries[0] > 1 || l.entries[e] > c || h.get(0) != 1 {
        return Ok(unchanged());
    }
    let rules = Feasibility { h: h.entries(), difference: t - c == 1 };

    let mut forward: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); e + 1];
    forward[0] = allowed[0].iter().copied().collect();
    for u in 0..e {
        let next: BTreeSet<u64> = allowed[u + 1]
            .iter()
            .copied()
            .filter(|&b| forward[u].iter().any(|&a| rules.edge(u, a, b)))
            .collect();
        forward[u + 1] = next;
    }
    let mut feasible: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); e + 1];
    feasible[e] = forward[e].clone();
    for u in (0..e).rev() {
        let here: BTreeSet<u64> = forward[u]
            .iter()
            .copied()
            .filter(|&a| feasible[u + 1].iter().any(|&b| rules.edge(u, a, b)))
            .collect();
        feasible[u] = here;
    }
    if feasible.iter().any(BTreeSet::is_empty) {
        return Ok(unchanged());
    }
    let entries = feasible.iter().map(|s| *s.first().expect("nonempty")).collect();
    Ok(Tightened { bound: BoundVector { entries, provenance: Provenance::GhmsTightened }, feasible: true })
}

/// Bound for the generic type-`c` quotient obtained by passing through
/// generic quotients of the intermediate types in `path` (which starts at
/// `t` and ends at `c`), combined entrywise with the direct bound.
///
/// With `tighten`, the first intermediate bound is sharpened with
/// [`ghms_tighten`]; later steps only know a lower bound for their parent,
/// so the difference condition no longer applies to them.
pub fn chained_bound(h: &HVector, t: u64, path: &[u64], tighten: bool) -> Result<BoundVector> {
    if path.len() < 2 || path[0] != t || path.windows(2).any(|w| w[1] >= w[0]) || path[path.len() - 1] == 0 {
        return Err(Error::OutOfRange(format!("path {path:?} must descend strictly from {t} to a positive type")));
    }
    let c = *path.last().expect("nonempty");
    let direct = main_theorem_bound(h, t, c)?;
    let mut parent = h.clone();
    for (step, w) in path.windows(2).enumerate() {
        let mut b = main_theorem_bound(&parent, w[0], w[1])?;
        if tighten && step == 0 {
            let tightened = ghms_tighten(&parent, &b, w[1])?;
            if tightened.feasible {
                b = tightened.bound;
            }
        }
        parent = b.as_h_vector();
    }
    let chained = BoundVector { entries: parent.into_entries(), provenance: Provenance::Chained };
    Ok(chained.max_with(&direct))
}

/// Computes the parent h-vector, the bound and the empirical generic
/// h-vector of the type-`c` quotient, and compares them.
pub fn verify_instance<F: Field>(m: &InverseSystemModule<F>, c: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify_instance_with(m, c, trials, seed, Execution::default())
}

pub fn verify_instance_with<F: Field>(
    m: &InverseSystemModule<F>,
    c: usize,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<VerificationReport> {
    let t = m.num_generators();
    if c == 0 || c >= t {
        return Err(Error::OutOfRange(format!("quotient type {c} must lie in 1..={}", t.saturating_sub(1))));
    }
    let h = m.h_vector_with(exec);
    let bound = main_theorem_bound(&h, t as u64, c as u64)?;
    let empirical = m.empirical_generic_h_with(c, trials, seed, exec)?;
    let satisfied = empirical.h.dominates(&bound.as_h_vector());
    let tight_degrees = (0..h.len()).filter(|&u| empirical.h.get(u) == bound.entries[u]).collect();
    Ok(VerificationReport {
        label: m.label().to_string(),
        h,
        c,
        bound: bound.entries,
        empirical: empirical.h.clone(),
        satisfied,
        tight_degrees,
        trials,
        seed,
        field: m.field().spec().to_string(),
        trial_h: empirical.per_trial,
    })
}
