use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::monomial::{Monomial, MonomialBasis};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, Subspace};

/// How a monomial operator `x^a` of `R = k[x_1..x_r]` acts on `S = k[y_1..y_r]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DerivativeAction {
    /// `x_i` acts as `d/dy_i`.
    #[default]
    Differentiate,
    /// `x_i` lowers the exponent of `y_i` by one with coefficient 1.
    Contract,
}

/// A nonzero-coefficient, homogeneous polynomial in `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<F: Field> {
    num_vars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(num_vars: usize, degree: usize) -> Self {
        Form { num_vars, degree, terms: BTreeMap::new() }
    }

    pub fn monomial(field: &F, m: Monomial) -> Self {
        let mut f = Self::zero(m.num_vars(), m.degree());
        f.terms.insert(m, field.one());
        f
    }

    /// Collects terms, combining like monomials and dropping zeros.
    pub fn from_terms(
        field: &F,
        num_vars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<Self> {
        let mut f = Self::zero(num_vars, degree);
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(Error::MixedParameters);
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: m.degree() });
            }
            f.add_term(field, m, &c);
        }
        Ok(f)
    }

    pub(crate) fn add_term(&mut self, field: &F, m: Monomial, c: &F::Elem) {
        if field.is_zero(c) {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F::Elem> {
        self.terms.get(m)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.degree == other.degree
    }

    /// `self + scale * other`.
    pub fn add_scaled(&self, field: &F, scale: &F::Elem, other: &Self) -> Self {
        assert!(self.same_shape(other));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), &field.mul(scale, c));
        }
        out
    }

    /// `sum_j coeffs[j] * forms[j]`.
    pub fn combination(field: &F, forms: &[Form<F>], coeffs: &[F::Elem]) -> Self {
        assert_eq!(forms.len(), coeffs.len());
        let first = &forms[0];
        let mut out = Self::zero(first.num_vars, first.degree);
        for (f, c) in forms.iter().zip(coeffs) {
            out = out.add_scaled(field, c, f);
        }
        out
    }

    /// Dense coefficient vector in the graded reverse-lexicographic basis of `S_degree`.
    pub fn coefficients(&self, field: &F, basis: &MonomialBasis) -> Vec<F::Elem> {
        let mut row = vec![field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.index_of(m).expect("monomial belongs to the basis");
            row[i] = c.clone();
        }
        row
    }

    /// Image under `y^a -> a! y^a`. Contraction on the image matches
    /// differentiation on `self`, so both actions describe the same algebra.
    pub fn divided_power_image(&self, field: &F) -> Self {
        let mut out = Self::zero(self.num_vars, self.degree);
        for (m, c) in &self.terms {
            let mut scale = BigInt::from(1);
            for &a in m.exponents() {
                for k in 2..=a {
                    scale *= k;
                }
            }
            out.add_term(field, m.clone(), &field.mul(c, &field.from_bigint(&scale)));
        }
        out
    }

    /// Text in the form-file grammar; `None` if a coefficient is not an integer.
    pub fn to_text(&self, field: &F) -> Option<String> {
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut s = field.display(c);
            if s.starts_with('(') || s.starts_with("-(") {
                return None;
            }
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if s != "1" {
                out.push_str(&s);
                out.push('*');
            }
            out.push_str(&m.to_string());
        }
        if out.is_empty() {
            out.push('0');
        }
        Some(out)
    }
}

/// Acts on `form` by the monomial operator `op` of degree `i <= deg(form)`.
/// The result is homogeneous of degree `deg(form) - i`, possibly zero.
pub fn apply_operator<F: Field>(
    field: &F,
    op: &Monomial,
    form: &Form<F>,
    action: DerivativeAction,
) -> Form<F> {
    assert!(op.degree() <= form.degree, "operator degree exceeds form degree");
    let mut out = Form::zero(form.num_vars, form.degree - op.degree());
    for (m, c) in &form.terms {
        if !op.divides(m) {
            continue;
        }
        let reduced = op.quotient_of(m);
        let coeff = match action {
            DerivativeAction::Contract => c.clone(),
            DerivativeAction::Differentiate => {
                let mut k = c.clone();
                for (&a, &b) in m.exponents().iter().zip(op.exponents()) {
                    // falling factorial a (a-1) ... (a-b+1)
                    for j in 0..b {
                        k = field.mul(&k, &field.from_i64((a - j) as i64));
                    }
                }
                k
            }
        };
        out.add_term(field, reduced, &coeff);
    }
    out
}

fn check_shared<F: Field>(forms: &[Form<F>]) -> Result<(usize, usize)> {
    let first = forms.first().ok_or(Error::MixedParameters)?;
    if forms.iter().any(|f| !f.same_shape(first)) {
        return Err(Error::MixedParameters);
    }
    Ok((first.num_vars, first.degree))
}

fn catalecticant_rows<'a, F: Field>(
    field: &'a F,
    forms: &'a [Form<F>],
    ops: &'a MonomialBasis,
    target: &'a MonomialBasis,
    action: DerivativeAction,
) -> impl Iterator<Item = Vec<F::Elem>> + 'a {
    forms.iter().flat_map(move |f| {
        ops.iter()
            .map(move |op| apply_operator(field, op, f, action).coefficients(field, target))
    })
}

/// Matrix of the order-`i` operators acting on `forms`: one row per
/// (form, degree-`i` operator) pair, one column per monomial of degree `e - i`.
pub fn catalecticant<F: Field>(
    field: &F,
    forms: &[Form<F>],
    i: usize,
    action: DerivativeAction,
) -> Result<Matrix<F>> {
    let (r, e) = check_shared(forms)?;
    if i > e {
        return Err(Error::OutOfRange(format!("operator order {i} exceeds degree {e}")));
    }
    let ops = MonomialBasis::new(r, i);
    let target = MonomialBasis::new(r, e - i);
    let rows = catalecticant_rows(field, forms, &ops, &target, action).collect();
    Ok(Matrix::from_rows(field.clone(), target.len(), rows))
}

/// Span in `S_u` of all order-`(e - u)` derivatives of `forms`.
pub fn derivative_space<F: Field>(
    field: &F,
    forms: &[Form<F>],
    u: usize,
    action: DerivativeAction,
) -> Result<Subspace<F>> {
    let (r, e) = check_shared(forms)?;
    if u > e {
        return Err(Error::OutOfRange(format!("degree {u} exceeds socle degree {e}")));
    }
    let ops = MonomialBasis::new(r, e - u);
    let target = MonomialBasis::new(r, u);
    let mut ech = Echelon::new(field.clone(), target.len());
    for row in catalecticant_rows(field, forms, &ops, &target, action) {
        ech.insert(row);
        if ech.dim() == target.len() {
            break;
        }
    }
    Ok(ech.into_subspace())
}
