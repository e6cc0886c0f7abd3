//! Constructors for example families and seeded random modules.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::inverse::InverseSystemModule;
use crate::poly::{apply_operator, DerivativeAction, Form, Monomial, MonomialBasis};
use crate::seed::{self, tag};

/// Regenerations allowed when random forms come out dependent.
pub const MAX_REGENERATIONS: usize = 50;

/// Upper end of the range conic parameters are drawn from.
pub const CONIC_PARAMETER_RANGE: i64 = 10_000;

/// Level algebra of type `t`, codimension `(t + 1) p`, with generators
/// `F_j = y_{jp+1} y_1^{e-1} + y_{jp+2} y_2^{e-1} + ... + y_{(j+1)p} y_p^{e-1}`.
/// Its h-vector is `(1, (t+1)p, ..., (t+1)p, t)` and every type-`c`
/// quotient has `(1, (c+1)p, ..., (c+1)p, c)`.
pub fn example211<F: Field>(t: usize, p: usize, e: usize, field: F) -> Result<InverseSystemModule<F>> {
    if t < 2 || p < 1 || e < 2 {
        return Err(Error::OutOfRange(format!("example211 needs t >= 2, p >= 1, e >= 2; got t={t}, p={p}, e={e}")));
    }
    let r = (t + 1) * p;
    let generators = (1..=t)
        .map(|j| {
            let terms = (1..=p).map(|k| {
                let mut exps = vec![0u32; r];
                exps[j * p + k - 1] += 1;
                exps[k - 1] += (e - 1) as u32;
                (Monomial::new(exps), field.one())
            });
            Form::from_terms(&field, r, e, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    let label = format!("example211 t={t} p={p} e={e}");
    InverseSystemModule::new(field, generators, label)
}

/// `sum_k lambda_k (y1 + s_k y2 + s_k^2 y3)^n`.
fn conic_power_sum<F: Field>(field: &F, points: &[i64], weights: &[F::Elem], n: usize) -> Result<Form<F>> {
    let mut terms = Vec::new();
    for (&s, w) in points.iter().zip(weights) {
        let s = BigInt::from(s);
        for b in 0..=n {
            for c in 0..=n - b {
                let a = n - b - c;
                // multinomial n! / (a! b! c!) = C(n, a) C(b + c, b)
                let multinomial = BigInt::from(binomial(n as i64, a as i64) * binomial((b + c) as i64, b as i64));
                let value = multinomial * s.pow((b + 2 * c) as u32);
                let coeff = field.mul(w, &field.from_bigint(&value));
                terms.push((Monomial::new(vec![a as u32, b as u32, c as u32]), coeff));
            }
        }
    }
    Form::from_terms(field, 3, n, terms)
}

/// Type-3 module generated by the first partial derivatives of
/// `F = sum_k lambda_k l_k^{e+1}`, where `l_k = y1 + s_k y2 + s_k^2 y3`
/// for the given conic parameters `s_k`. This realizes the truncation in
/// degree `e` of the Gorenstein algebra of `F`.
pub fn conic_module<F: Field>(field: F, points: &[i64], weights: &[F::Elem], e: usize) -> Result<InverseSystemModule<F>> {
    if points.len() < 3 || e < 3 {
        return Err(Error::OutOfRange(format!("need at least 3 points and e >= 3; got {} points, e={e}", points.len())));
    }
    let distinct: BTreeSet<i64> = points.iter().copied().collect();
    if distinct.len() != points.len() {
        return Err(Error::Degenerate("conic parameters must be distinct".into()));
    }
    let big = conic_power_sum(&field, points, weights, e + 1)?;
    let generators: Vec<Form<F>> = (0..3)
        .map(|j| apply_operator(&field, &Monomial::var(3, j), &big, DerivativeAction::Differentiate))
        .collect();
    let label = format!("truncated-gorenstein-conic s={} e={e}", points.len());
    InverseSystemModule::new(field, generators, label)
}

/// [`conic_module`] with `s` random distinct parameters in `[1, 10^4]` and
/// random nonzero weights, redrawn on coincidences.
pub fn truncated_gorenstein_conic<F: Field>(s: usize, e: usize, field: F, seed: u64) -> Result<InverseSystemModule<F>> {
    if s < 3 || e < 3 {
        return Err(Error::OutOfRange(format!("truncated conic needs s >= 3 and e >= 3; got s={s}, e={e}")));
    }
    let mut rng = seed::rng(seed, &[tag::CONIC, s as u64, e as u64]);
    for _ in 0..MAX_REGENERATIONS {
        let points: Vec<i64> = (0..s).map(|_| rng.gen_range(1..=CONIC_PARAMETER_RANGE)).collect();
        let weights: Vec<F::Elem> = (0..s).map(|_| field.random_coefficient(&mut rng)).collect();
        match conic_module(field.clone(), &points, &weights, e) {
            Ok(m) => return Ok(m.with_label(format!("truncated-gorenstein-conic s={s} e={e} seed={seed}"))),
            Err(Error::Degenerate(_) | Error::DependentGenerators { .. } | Error::ZeroForm) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::Degenerate(format!("no usable conic sample after {MAX_REGENERATIONS} draws")))
}

fn check_random_params(r: usize, e: usize, t: usize) -> Result<usize> {
    if r == 0 || e == 0 || t == 0 {
        return Err(Error::OutOfRange(format!("need r, e, t >= 1; got r={r}, e={e}, t={t}")));
    }
    let dim = MonomialBasis::new(r, e).len();
    if t > dim {
        return Err(Error::OutOfRange(format!("t={t} exceeds dim S_{e} = {dim} in {r} variables")));
    }
    Ok(dim)
}

/// `t` independent random forms; each monomial of degree `e` enters with
/// probability `density` and a random nonzero coefficient.
pub fn random_module<F: Field>(r: usize, e: usize, t: usize, density: f64, seed: u64, field: F) -> Result<InverseSystemModule<F>> {
    check_random_params(r, e, t)?;
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::OutOfRange(format!("density {density} must lie in (0, 1]")));
    }
    let basis = MonomialBasis::new(r, e);
    let mut rng = seed::rng(seed, &[tag::RANDOM_MODULE, r as u64, e as u64, t as u64]);
    let label = format!("random r={r} e={e} t={t} density={density} seed={seed}");
    for _ in 0..MAX_REGENERATIONS {
        let forms = (0..t)
            .map(|_| {
                let mut terms: Vec<(Monomial, F::Elem)> = Vec::new();
                for m in basis.iter() {
                    if density >= 1.0 || rng.gen_bool(density) {
                        terms.push((m.clone(), field.random_coefficient(&mut rng)));
                    }
                }
                if terms.is_empty() {
                    let m = basis.monomial(rng.gen_range(0..basis.len())).clone();
                    terms.push((m, field.random_coefficient(&mut rng)));
                }
                Form::from_terms(&field, r, e, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        match InverseSystemModule::new(field.clone(), forms, label.clone()) {
            Ok(m) => return Ok(m),
            Err(Error::DependentGenerators { .. } | Error::ZeroForm) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::Degenerate(format!("dependent forms after {MAX_REGENERATIONS} regenerations")))
}

/// `t` distinct random monomials of degree `e`.
pub fn monomial_module<F: Field>(r: usize, e: usize, t: usize, seed: u64, field: F) -> Result<InverseSystemModule<F>> {
    let dim = check_random_params(r, e, t)?;
    let basis = MonomialBasis::new(r, e);
    let mut rng = seed::rng(seed, &[tag::MONOMIAL, r as u64, e as u64, t as u64]);
    let mut picks = sample(&mut rng, dim, t).into_vec();
    picks.sort_unstable();
    let forms = picks.into_iter().map(|i| Form::monomial(&field, basis.monomial(i).clone())).collect();
    InverseSystemModule::new(field, forms, format!("monomial r={r} e={e} t={t} seed={seed}"))
}

/// A module family with its parameters, as written in experiment manifests.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Example211 { t: usize, p: usize, e: usize },
    TruncatedGorensteinConic { s: usize, e: usize, seed: u64 },
    RandomDense { r: usize, e: usize, t: usize, seed: u64 },
    RandomSparse { r: usize, e: usize, t: usize, density: f64, seed: u64 },
    Monomial { r: usize, e: usize, t: usize, seed: u64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Example211 { .. } => "example211",
            FamilySpec::TruncatedGorensteinConic { .. } => "truncated-gorenstein-conic",
            FamilySpec::RandomDense { .. } => "random-dense",
            FamilySpec::RandomSparse { .. } => "random-sparse",
            FamilySpec::Monomial { .. } => "monomial",
        }
    }

    /// The type `t` of the modules this family produces.
    pub fn num_generators(&self) -> usize {
        match *self {
            FamilySpec::Example211 { t, .. } => t,
            FamilySpec::TruncatedGorensteinConic { .. } => 3,
            FamilySpec::RandomDense { t, .. } | FamilySpec::RandomSparse { t, .. } | FamilySpec::Monomial { t, .. } => t,
        }
    }

    pub fn build<F: Field>(&self, field: F) -> Result<InverseSystemModule<F>> {
        let m = match *self {
            FamilySpec::Example211 { t, p, e } => example211(t, p, e, field)?,
            FamilySpec::TruncatedGorensteinConic { s, e, seed } => truncated_gorenstein_conic(s, e, field, seed)?,
            FamilySpec::RandomDense { r, e, t, seed } => random_module(r, e, t, 1.0, seed, field)?,
            FamilySpec::RandomSparse { r, e, t, density, seed } => random_module(r, e, t, density, seed, field)?,
            FamilySpec::Monomial { r, e, t, seed } => monomial_module(r, e, t, seed, field)?,
        };
        Ok(m.with_label(self.to_string()))
    }

    /// The same family with its seed replaced, for families that have one.
    pub fn with_seed(&self, new_seed: u64) -> FamilySpec {
        let mut out = self.clone();
        match &mut out {
            FamilySpec::Example211 { .. } => {}
            FamilySpec::TruncatedGorensteinConic { seed, .. }
            | FamilySpec::RandomDense { seed, .. }
            | FamilySpec::RandomSparse { seed, .. }
            | FamilySpec::Monomial { seed, .. } => *seed = new_seed,
        }
        out
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match self {
            FamilySpec::Example211 { t, p, e } => write!(f, " t={t} p={p} e={e}"),
            FamilySpec::TruncatedGorensteinConic { s, e, seed } => write!(f, " s={s} e={e} seed={seed}"),
            FamilySpec::RandomDense { r, e, t, seed } | FamilySpec::Monomial { r, e, t, seed } => {
                write!(f, " r={r} e={e} t={t} seed={seed}")
            }
            FamilySpec::RandomSparse { r, e, t, density, seed } => {
                write!(f, " r={r} e={e} t={t} density={density} seed={seed}")
            }
        }
    }
}
