//! Level algebras through their inverse systems.
//!
//! A module `M = <F_1, ..., F_t>` of degree-`e` forms determines the level
//! algebra `R / Ann(M)`; its h-vector in degree `u` is the dimension of the
//! span of all order-`(e - u)` derivatives of the generators. Generic level
//! quotients of type `c` are sampled as `c` random combinations of the
//! generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::Field;
use crate::linalg::Subspace;
use crate::poly::{derivative_space, DerivativeAction, Form};
use crate::seed::{self, tag};

/// Attempts at drawing independent random combinations before giving up.
pub const MAX_SAMPLE_ATTEMPTS: usize = 100;

/// Default number of trials behind an empirical generic h-vector.
pub const DEFAULT_TRIALS: usize = 5;

/// Graded dimensions `(h_0, ..., h_e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(entries: Vec<u64>) -> Self {
        HVector(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn socle_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// `h_1`, the codimension.
    pub fn codimension(&self) -> u64 {
        self.0.get(1).copied().unwrap_or(0)
    }

    /// Last entry; the type for a level h-vector.
    pub fn top(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn get(&self, u: usize) -> u64 {
        self.0[u]
    }

    pub fn dominates(&self, other: &HVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn entrywise_max(&self, other: &HVector) -> HVector {
        assert_eq!(self.0.len(), other.0.len());
        HVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

impl From<Vec<u64>> for HVector {
    fn from(v: Vec<u64>) -> Self {
        HVector(v)
    }
}

/// `t` linearly independent forms of common degree `e`.
#[derive(Clone, Debug)]
pub struct InverseSystemModule<F: Field> {
    field: F,
    num_vars: usize,
    degree: usize,
    generators: Vec<Form<F>>,
    label: String,
    action: DerivativeAction,
}

impl<F: Field> InverseSystemModule<F> {
    pub fn new(field: F, generators: Vec<Form<F>>, label: impl Into<String>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::OutOfRange("a module needs at least one generator".into()))?;
        let (num_vars, degree) = (first.num_vars(), first.degree());
        if degree == 0 {
            return Err(Error::OutOfRange("socle degree must be at least 1".into()));
        }
        if generators.iter().any(|g| !g.same_shape(first)) {
            return Err(Error::MixedParameters);
        }
        if generators.iter().any(Form::is_zero) {
            return Err(Error::ZeroForm);
        }
        field.spec().check_degree(degree)?;
        let module = InverseSystemModule {
            field,
            num_vars,
            degree,
            generators,
            label: label.into(),
            action: DerivativeAction::default(),
        };
        let rank = module.span_dim(&module.generators);
        if rank != module.generators.len() {
            return Err(Error::DependentGenerators { rank, expected: module.generators.len() });
        }
        Ok(module)
    }

    pub fn with_action(mut self, action: DerivativeAction) -> Self {
        self.action = action;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn socle_degree(&self) -> usize {
        self.degree
    }

    /// The type `t`.
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Form<F>] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self) -> DerivativeAction {
        self.action
    }

    fn span_dim(&self, forms: &[Form<F>]) -> usize {
        derivative_space(&self.field, forms, self.degree, self.action)
            .expect("forms share the module shape")
            .dim()
    }

    /// Span of the order-`(e - u)` derivatives of the given generators.
    pub fn derivative_space_of(&self, forms: &[Form<F>], u: usize) -> Result<Subspace<F>> {
        derivative_space(&self.field, forms, u, self.action)
    }

    pub fn derivative_space(&self, u: usize) -> Result<Subspace<F>> {
        self.derivative_space_of(&self.generators, u)
    }

    pub fn h_vector(&self) -> HVector {
        self.h_vector_with(Execution::default())
    }

    pub fn h_vector_with(&self, exec: Execution) -> HVector {
        let dims = exec.map_range(0..self.degree + 1, |u| {
            self.derivative_space(u).expect("degree in range").dim() as u64
        });
        HVector(dims)
    }

    /// The submodule generated by `combinations[k] = sum_j coeffs[k][j] F_j`.
    pub fn submodule(&self, coeffs: &[Vec<F::Elem>]) -> Result<Self> {
        let t = self.generators.len();
        if coeffs.iter().any(|row| row.len() != t) {
            return Err(Error::OutOfRange(format!("coefficient rows must have length {t}")));
        }
        let forms: Vec<Form<F>> = coeffs
            .iter()
            .map(|row| Form::combination(&self.field, &self.generators, row))
            .collect();
        Ok(InverseSystemModule::new(self.field.clone(), forms, self.label.clone())?.with_action(self.action))
    }

    fn check_type(&self, c: usize) -> Result<()> {
        let t = self.generators.len();
        if c == 0 || c >= t {
            return Err(Error::OutOfRange(format!("quotient type {c} must lie in 1..={}", t.saturating_sub(1))));
        }
        Ok(())
    }

    /// Draws `count` independent random combinations of the generators from
    /// the stream `(seed, stream...)`.
    fn random_combinations(&self, count: usize, seed: u64, stream: &[u64]) -> Result<(Vec<Vec<F::Elem>>, Self)> {
        let t = self.generators.len();
        let mut rng = seed::rng(seed, stream);
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            let coeffs: Vec<Vec<F::Elem>> = (0..count)
                .map(|_| (0..t).map(|_| self.field.random_coefficient(&mut rng)).collect())
                .collect();
            match self.submodule(&coeffs) {
                Ok(sub) => return Ok((coeffs, sub)),
                Err(Error::DependentGenerators { .. } | Error::ZeroForm) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::Degenerate(format!(
            "no independent combinations after {MAX_SAMPLE_ATTEMPTS} attempts"
        )))
    }

    /// The same module presented by `t` random independent combinations of
    /// its generators, which makes the generators generic.
    pub fn remixed(&self, seed: u64) -> Result<Self> {
        let t = self.generators.len() as u64;
        let (_, sub) = self.random_combinations(t as usize, seed, &[tag::REMIX, t])?;
        Ok(sub)
    }

    /// One generic level quotient of type `c`.
    pub fn sample_generic_quotient(&self, c: usize, seed: u64) -> Result<QuotientSample<F>> {
        self.sample_trial(c, seed, 0)
    }

    fn sample_trial(&self, c: usize, seed: u64, trial: u64) -> Result<QuotientSample<F>> {
        self.check_type(c)?;
        let (coefficients, quotient) = self.random_combinations(c, seed, &[tag::QUOTIENT, c as u64, trial])?;
        let h_vector = quotient.h_vector_with(Execution::Sequential);
        Ok(QuotientSample { c, coefficients, seed, trial, h_vector, quotient })
    }

    /// Entrywise maximum of the quotient h-vectors over `trials` samples.
    pub fn empirical_generic_h(&self, c: usize, trials: usize, seed: u64) -> Result<EmpiricalH> {
        self.empirical_generic_h_with(c, trials, seed, Execution::default())
    }

    pub fn empirical_generic_h_with(&self, c: usize, trials: usize, seed: u64, exec: Execution) -> Result<EmpiricalH> {
        self.check_type(c)?;
        if trials == 0 {
            return Err(Error::OutOfRange("at least one trial is required".into()));
        }
        let samples = exec.map_range(0..trials, |k| self.sample_trial(c, seed, k as u64));
        let per_trial = samples
            .into_iter()
            .map(|s| s.map(|s| s.h_vector))
            .collect::<Result<Vec<_>>>()?;
        Ok(EmpiricalH::from_trials(per_trial))
    }

    fn check_inner_degree(&self, u: usize) -> Result<()> {
        if u == 0 || u >= self.degree {
            return Err(Error::OutOfRange(format!(
                "degree {u} must lie in 1..={}",
                self.degree.saturating_sub(1)
            )));
        }
        Ok(())
    }

    /// Derivative spaces in degree `u` of each generator on its own.
    pub fn single_spaces(&self, u: usize) -> Result<Vec<Subspace<F>>> {
        self.generators
            .iter()
            .map(|g| self.derivative_space_of(std::slice::from_ref(g), u))
            .collect()
    }

    /// Alternating sum of `d_u` over generator subsets of size 2 through `t`,
    /// subsets of size `q` entering with sign `(-1)^q`.
    pub fn sigma_u(&self, u: usize) -> Result<i64> {
        self.check_inner_degree(u)?;
        let spaces = self.single_spaces(u)?;
        Ok(sigma_from_spaces(&spaces))
    }

    /// Dimension of the intersection of the derivative spaces of `subset`
    /// (default: the first `q` generators) modulo the sum of the derivative
    /// spaces of the remaining generators.
    pub fn big_d_u(&self, q: usize, u: usize, subset: Option<&[usize]>) -> Result<usize> {
        self.check_inner_degree(u)?;
        let t = self.generators.len();
        if q == 0 || q > t {
            return Err(Error::BadSubset(format!("q = {q} must lie in 1..={t}")));
        }
        let default: Vec<usize> = (0..q).collect();
        let subset = subset.unwrap_or(&default);
        let mut seen = vec![false; t];
        for &j in subset {
            if j >= t || seen[j] {
                return Err(Error::BadSubset(format!("{subset:?} is not a set of generator indices")));
            }
            seen[j] = true;
        }
        if subset.len() != q {
            return Err(Error::BadSubset(format!("expected {q} indices, got {}", subset.len())));
        }
        let spaces = self.single_spaces(u)?;
        Ok(big_d_from_spaces(&spaces, &seen))
    }
}

/// Dimension of the common part of several derivative spaces.
pub(crate) fn intersect_all<F: Field>(spaces: &[&Subspace<F>]) -> Subspace<F> {
    let mut acc = spaces[0].clone();
    for s in &spaces[1..] {
        if acc.is_zero() {
            break;
        }
        acc = acc.intersection(s).expect("same ambient space");
    }
    acc
}

pub(crate) fn sigma_from_spaces<F: Field>(spaces: &[Subspace<F>]) -> i64 {
    let t = spaces.len();
    let mut total = 0i64;
    for mask in 1u32..(1 << t) {
        let q = mask.count_ones();
        if q < 2 {
            continue;
        }
        let members: Vec<&Subspace<F>> = (0..t).filter(|j| mask >> j & 1 == 1).map(|j| &spaces[j]).collect();
        let d = intersect_all(&members).dim() as i64;
        total += if q % 2 == 0 { d } else { -d };
    }
    total
}

pub(crate) fn big_d_from_spaces<F: Field>(spaces: &[Subspace<F>], chosen: &[bool]) -> usize {
    let inside: Vec<&Subspace<F>> = spaces.iter().zip(chosen).filter(|(_, &c)| c).map(|(s, _)| s).collect();
    let common = intersect_all(&inside);
    let field = spaces[0].field().clone();
    let mut rest = Subspace::zero(field, spaces[0].ambient_dim());
    for (s, _) in spaces.iter().zip(chosen).filter(|(_, &c)| !c) {
        rest = rest.sum(s).expect("same ambient space");
    }
    common.relative_dim(&rest).expect("same ambient space")
}

/// Dimension of the intersection of the degree-`u` derivative spaces of
/// each form in `forms`.
pub fn d_u<F: Field>(field: &F, forms: &[Form<F>], u: usize, action: DerivativeAction) -> Result<usize> {
    let first = forms.first().ok_or_else(|| Error::BadSubset("d_u needs at least one form".into()))?;
    if forms.iter().any(|f| !f.same_shape(first)) {
        return Err(Error::MixedParameters);
    }
    if u == 0 || u >= first.degree() {
        return Err(Error::OutOfRange(format!("degree {u} must lie in 1..={}", first.degree().saturating_sub(1))));
    }
    let spaces = forms
        .iter()
        .map(|g| derivative_space(field, std::slice::from_ref(g), u, action))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Subspace<F>> = spaces.iter().collect();
    Ok(intersect_all(&refs).dim())
}

/// A sampled level quotient of type `c`.
#[derive(Clone, Debug)]
pub struct QuotientSample<F: Field> {
    pub c: usize,
    /// `c x t` combination coefficients.
    pub coefficients: Vec<Vec<F::Elem>>,
    pub seed: u64,
    pub trial: u64,
    pub h_vector: HVector,
    pub quotient: InverseSystemModule<F>,
}

/// Empirical generic h-vector with the per-trial record it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalH {
    pub h: HVector,
    pub per_trial: Vec<HVector>,
}

impl EmpiricalH {
    pub fn from_trials(per_trial: Vec<HVector>) -> Self {
        let h = per_trial[1..].iter().fold(per_trial[0].clone(), |acc, v| acc.entrywise_max(v));
        EmpiricalH { h, per_trial }
    }

    /// True when every trial produced the same h-vector.
    pub fn trials_agree(&self) -> bool {
        self.per_trial.iter().all(|v| *v == self.h)
    }
}
