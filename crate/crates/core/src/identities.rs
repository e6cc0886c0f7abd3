//! Inclusion-exclusion identities among the intersection dimensions of the
//! derivative spaces of generic generators, checked degree by degree.
//!
//! With `W_j` the degree-`u` derivative space of the `j`-th generator,
//! `d_u(S)` is the dimension of the intersection of the `W_j` for `j` in `S`
//! and `D_u(q)` is the dimension of such an intersection over `q` generators
//! modulo the sum of the others. The checks compare
//!
//! * `Sigma_u` against `t H_u^{1,gen} - h_u`,
//! * `Sigma_u` against `sum_j (j - 1) C(t, j) D_u(j)`,
//! * for `t = 3`, the three decompositions of `H_u^{1,gen}`, `h_u` and `Sigma_u`,
//! * that `D_u(q)` does not depend on the chosen `q` generators,
//! * and the inequality `H_u^{1,gen} >= h_{e-u} - Sigma_u`.

use num_traits::ToPrimitive;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::inverse::{big_d_from_spaces, sigma_from_spaces, InverseSystemModule};
use crate::report::CheckOutcome;

/// Largest type for which every generator subset is enumerated.
pub const MAX_ENUMERATED_TYPE: usize = 12;

pub const SIGMA_VS_GENERIC: &str = "sigma=tH-h";
pub const SIGMA_VS_D: &str = "sigma=sum(j-1)C(t,j)D(j)";
pub const T3_GENERIC: &str = "t3:H=D1+2D2+D3";
pub const T3_PARENT: &str = "t3:h=3D1+3D2+D3";
pub const T3_SIGMA: &str = "t3:sigma=3D2+2D3";
pub const SUBSET_INDEPENDENCE: &str = "D(q) subset-independent";
pub const GENERIC_LOWER_BOUND: &str = "H>=h_i-sigma";

/// Per-degree quantities on one generic presentation of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub u: usize,
    pub h_u: u64,
    pub h_i: u64,
    pub generic_h_u: u64,
    pub sigma_u: i64,
    /// `D_u(q)` on the first `q` generators, index `q - 1`.
    pub d: Vec<usize>,
    /// `(min, max)` of `D_u(q)` over all `q`-subsets, index `q - 1`.
    pub d_range: Vec<(usize, usize)>,
}

/// Computes `Sigma_u` and every `D_u(q)` on generators re-mixed with `seed`,
/// and the empirical `H^{1,gen}` from `trials` samples.
pub fn degree_data<F: Field>(m: &InverseSystemModule<F>, trials: usize, seed: u64) -> Result<Vec<DegreeData>> {
    let t = m.num_generators();
    if !(2..=MAX_ENUMERATED_TYPE).contains(&t) {
        return Err(Error::OutOfRange(format!("type {t} must lie in 2..={MAX_ENUMERATED_TYPE}")));
    }
    let e = m.socle_degree();
    let h = m.h_vector();
    let generic_h = m.empirical_generic_h(1, trials, seed)?.h;
    let generic = m.remixed(seed)?;
    let mut out = Vec::new();
    for u in 1..e {
        let spaces = generic.single_spaces(u)?;
        let sigma_u = sigma_from_spaces(&spaces);
        let mut d_range = vec![(usize::MAX, 0usize); t];
        let mut d = vec![0; t];
        for mask in 1u32..(1 << t) {
            let chosen: Vec<bool> = (0..t).map(|j| mask >> j & 1 == 1).collect();
            let q = mask.count_ones() as usize;
            let value = big_d_from_spaces(&spaces, &chosen);
            let (lo, hi) = &mut d_range[q - 1];
            *lo = (*lo).min(value);
            *hi = (*hi).max(value);
            if mask == (1 << q) - 1 {
                d[q - 1] = value;
            }
        }
        out.push(DegreeData {
            u,
            h_u: h.get(u),
            h_i: h.get(e - u),
            generic_h_u: generic_h.get(u),
            sigma_u,
            d,
            d_range,
        });
    }
    Ok(out)
}

/// Runs every identity and inequality check on `m`.
pub fn check_identities<F: Field>(m: &InverseSystemModule<F>, trials: usize, seed: u64) -> Result<Vec<CheckOutcome>> {
    let t = m.num_generators();
    let label = m.label();
    let mut out = Vec::new();
    let mut push = |name: &str, u: usize, lhs: i64, rhs: i64, passed: bool| {
        out.push(CheckOutcome { label: label.to_string(), name: name.to_string(), u, lhs, rhs, passed });
    };
    for data in degree_data(m, trials, seed)? {
        let u = data.u;
        let (h_u, h_i, gen) = (data.h_u as i64, data.h_i as i64, data.generic_h_u as i64);
        let sigma = data.sigma_u;
        let d = |q: usize| data.d[q - 1] as i64;

        let rhs = t as i64 * gen - h_u;
        push(SIGMA_VS_GENERIC, u, sigma, rhs, sigma == rhs);

        let rhs: i64 = (2..=t)
            .map(|j| (j as i64 - 1) * binomial(t as i64, j as i64).to_i64().expect("small binomial") * d(j))
            .sum();
        push(SIGMA_VS_D, u, sigma, rhs, sigma == rhs);

        if t == 3 {
            let rhs = d(1) + 2 * d(2) + d(3);
            push(T3_GENERIC, u, gen, rhs, gen == rhs);
            let rhs = 3 * d(1) + 3 * d(2) + d(3);
            push(T3_PARENT, u, h_u, rhs, h_u == rhs);
            let rhs = 3 * d(2) + 2 * d(3);
            push(T3_SIGMA, u, sigma, rhs, sigma == rhs);
        }

        for (q, &(lo, hi)) in data.d_range.iter().enumerate() {
            push(&format!("{SUBSET_INDEPENDENCE} q={}", q + 1), u, lo as i64, hi as i64, lo == hi);
        }

        let rhs = h_i - sigma;
        push(GENERIC_LOWER_BOUND, u, gen, rhs, gen >= rhs);
    }
    Ok(out)
}
