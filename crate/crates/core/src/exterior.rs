//! Exterior algebra over a finite, 1-based basis of covectors `e^1, e^2, ...`
//! with exact coefficients, and nilpotent Lie algebras presented by the
//! differentials of their dual basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::scalar::{parity_sign, Scalar};

/// Sorts `idx` in place and reports whether the permutation was odd.
/// Returns `None` when an index repeats.
pub(crate) fn sort_with_parity(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// A homogeneous exterior form `sum c_I e^I` with sparse exact coefficients.
///
/// Keys are strictly increasing index tuples of length `degree`; no stored
/// coefficient is zero.
#[derive(Clone, PartialEq)]
pub struct Form<T> {
    degree: usize,
    terms: BTreeMap<Vec<usize>, T>,
}

impl<T: Scalar> Form<T> {
    pub fn zero(degree: usize) -> Self {
        Form {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `1` as a 0-form.
    pub fn one() -> Self {
        Self::monomial(T::one(), &[])
    }

    /// `e^{i_1} ∧ ... ∧ e^{i_k}`; indices in any order, repeated indices give zero.
    pub fn basis(indices: &[usize]) -> Self {
        Self::monomial(T::one(), indices)
    }

    pub fn monomial(coeff: T, indices: &[usize]) -> Self {
        let mut f = Self::zero(indices.len());
        f.add_term(indices, coeff);
        f
    }

    /// Builds a form from `(coefficient, indices)` pairs of a common degree.
    pub fn from_terms<I>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (T, Vec<usize>)>,
    {
        let mut f = Self::zero(degree);
        for (c, idx) in terms {
            assert_eq!(idx.len(), degree, "term degree mismatch");
            f.add_term(&idx, c);
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &T)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient of `e^I`, where `I` may be unsorted.
    pub fn coeff(&self, indices: &[usize]) -> T {
        let mut idx = indices.to_vec();
        match sort_with_parity(&mut idx) {
            None => T::zero(),
            Some(odd) => self
                .terms
                .get(&idx)
                .map(|c| c.clone() * parity_sign(odd))
                .unwrap_or_else(T::zero),
        }
    }

    /// Largest basis index mentioned, 0 for the zero form.
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|k| k.last().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn mentions(&self, index: usize) -> bool {
        self.terms.keys().any(|k| k.contains(&index))
    }

    /// Adds `coeff · e^I`, normalising `I` to increasing order with the
    /// permutation sign.
    pub fn add_term(&mut self, indices: &[usize], coeff: T) {
        assert_eq!(indices.len(), self.degree, "term degree mismatch");
        if coeff.is_zero() {
            return;
        }
        let mut idx = indices.to_vec();
        if let Some(odd) = sort_with_parity(&mut idx) {
            let c = coeff * parity_sign(odd);
            self.add_sorted(idx, c);
        }
    }

    fn add_sorted(&mut self, idx: Vec<usize>, c: T) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Form {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut idx = Vec::with_capacity(a.len() + b.len());
                idx.extend_from_slice(a);
                idx.extend_from_slice(b);
                if let Some(odd) = sort_with_parity(&mut idx) {
                    out.add_sorted(idx, ca.clone() * cb.clone() * parity_sign(odd));
                }
            }
        }
        out
    }

    /// Contraction with the basis vector `e_index` in the first slot:
    /// `(ι_X f)(Y, ...) = f(X, Y, ...)`.
    pub fn interior(&self, index: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (k, c) in &self.terms {
            if let Some(p) = k.iter().position(|&i| i == index) {
                let mut rest = k.clone();
                rest.remove(p);
                out.add_sorted(rest, c.clone() * parity_sign(p % 2 == 1));
            }
        }
        out
    }

    /// Relabels every basis index through `f`, re-normalising signs.
    /// `f` must be injective on the indices in use.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.degree);
        for (k, c) in &self.terms {
            let idx: Vec<usize> = k.iter().map(|&i| f(i)).collect();
            out.add_term(&idx, c.clone());
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&[usize]) -> bool) -> Self {
        Form {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<T: Scalar> fmt::Debug for Form<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form<{}>({})", self.degree, self)
    }
}

impl<T: Scalar> AddAssign<&Form<T>> for Form<T> {
    fn add_assign(&mut self, rhs: &Form<T>) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = rhs.degree;
        }
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        for (k, v) in &rhs.terms {
            self.add_sorted(k.clone(), v.clone());
        }
    }
}

impl<T: Scalar> SubAssign<&Form<T>> for Form<T> {
    fn sub_assign(&mut self, rhs: &Form<T>) {
        *self += &(-rhs);
    }
}

impl<T: Scalar> Add for &Form<T> {
    type Output = Form<T>;
    fn add(self, rhs: &Form<T>) -> Form<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Scalar> Add for Form<T> {
    type Output = Form<T>;
    fn add(mut self, rhs: Form<T>) -> Form<T> {
        self += &rhs;
        self
    }
}

impl<T: Scalar> Sub for &Form<T> {
    type Output = Form<T>;
    fn sub(self, rhs: &Form<T>) -> Form<T> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<T: Scalar> Sub for Form<T> {
    type Output = Form<T>;
    fn sub(mut self, rhs: Form<T>) -> Form<T> {
        self -= &rhs;
        self
    }
}

impl<T: Scalar> Neg for &Form<T> {
    type Output = Form<T>;
    fn neg(self) -> Form<T> {
        Form {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), -v.clone()))
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for Form<T> {
    type Output = Form<T>;
    fn neg(self) -> Form<T> {
        -&self
    }
}

/// A nilpotent Lie algebra in Malcev notation: entry `k` is `de^k`.
///
/// Sign convention: `de^k(X, Y) = -e^k([X, Y])`, so `[e_1, e_2] = e_3` reads
/// `(0,0,-e^{12})`.
#[derive(Clone, PartialEq)]
pub struct MalcevPresentation<T> {
    differentials: Vec<Form<T>>,
}

impl<T: Scalar> MalcevPresentation<T> {
    /// Checks that every entry is a 2-form and that `de^k` only mentions
    /// indices below `k`.
    pub fn new(differentials: Vec<Form<T>>) -> Result<Self> {
        if differentials.is_empty() {
            return Err(Error::EmptyPresentation);
        }
        for (pos, de) in differentials.iter().enumerate() {
            let k = pos + 1;
            if !de.is_zero() && de.degree() != 2 {
                return Err(Error::Degree {
                    expected: 2,
                    found: de.degree(),
                });
            }
            if let Some(bad) = de.terms().flat_map(|(idx, _)| idx.iter()).find(|&&i| i >= k) {
                return Err(if *bad > differentials.len() {
                    Error::IndexOutOfRange {
                        index: *bad,
                        dim: differentials.len(),
                    }
                } else {
                    Error::Filtration {
                        entry: k,
                        index: *bad,
                    }
                });
            }
        }
        let differentials = differentials
            .into_iter()
            .map(|de| if de.is_zero() { Form::zero(2) } else { de })
            .collect();
        Ok(MalcevPresentation { differentials })
    }

    pub fn abelian(dim: usize) -> Self {
        MalcevPresentation {
            differentials: vec![Form::zero(2); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.differentials.len()
    }

    /// `de^k`, 1-based.
    pub fn de(&self, k: usize) -> &Form<T> {
        &self.differentials[k - 1]
    }

    pub fn differentials(&self) -> &[Form<T>] {
        &self.differentials
    }

    pub fn is_abelian(&self) -> bool {
        self.differentials.iter().all(Form::is_zero)
    }

    /// Chevalley–Eilenberg differential, extended from `de^k` as an
    /// antiderivation: `d(a ∧ b) = da ∧ b + (-1)^{deg a} a ∧ db`.
    pub fn d(&self, f: &Form<T>) -> Form<T> {
        let mut out = Form::zero(f.degree() + 1);
        for (idx, c) in f.terms() {
            for (r, &i) in idx.iter().enumerate() {
                let de = self.de(i);
                if de.is_zero() {
                    continue;
                }
                let left = Form::basis(&idx[..r]);
                let right = Form::basis(&idx[r + 1..]);
                let piece = left
                    .wedge(de)
                    .wedge(&right)
                    .scale(&(c.clone() * parity_sign(r % 2 == 1)));
                out += &piece;
            }
        }
        out
    }

    /// Structure constants: `[e_i, e_j] = sum_k c^k_{ij} e_k`, returned as
    /// `(k, c^k_{ij})` pairs.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, T)> {
        if i == j {
            return Vec::new();
        }
        self.differentials
            .iter()
            .enumerate()
            .filter_map(|(pos, de)| {
                let c = de.coeff(&[i, j]);
                (!c.is_zero()).then(|| (pos + 1, -c))
            })
            .collect()
    }

    /// Relabels the basis through an injective map, returning the
    /// differentials in the new slot order. The result is not re-validated.
    pub(crate) fn relabel_unchecked(&self, old_to_new: &[usize]) -> Vec<Form<T>> {
        let mut out = vec![Form::zero(2); self.dim()];
        for (pos, de) in self.differentials.iter().enumerate() {
            out[old_to_new[pos] - 1] = de.map_indices(|i| old_to_new[i - 1]);
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for MalcevPresentation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Malcev{}", self)
    }
}
