use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use super::field::PrimeField;
use super::monomial::{enumerate_monomials, Monomial};
use super::PolyError;

/// Largest supported ambient dimension (so at most 9 variables).
pub const MAX_DIMENSION: usize = 8;

/// A homogeneous polynomial in `x_0..x_n` with coefficients in a prime field.
///
/// Terms are kept sparse, keyed by monomial, with no stored zeros. Iteration
/// through [`HomogeneousForm::terms`] runs in descending graded-lex order.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    n: usize,
    degree: u32,
    field: PrimeField,
    terms: BTreeMap<Monomial, u64>,
}

impl HomogeneousForm {
    pub fn zero(n: usize, degree: u32, field: PrimeField) -> Self {
        HomogeneousForm {
            n,
            degree,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from (monomial, coefficient) pairs, combining repeats.
    pub fn from_terms<I>(n: usize, degree: u32, field: PrimeField, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        if n > MAX_DIMENSION {
            return Err(PolyError::DimensionTooLarge(n));
        }
        let mut form = Self::zero(n, degree, field);
        for (m, c) in terms {
            if m.nvars() != n + 1 {
                return Err(PolyError::DimensionMismatch {
                    left: n,
                    right: m.nvars().saturating_sub(1),
                });
            }
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous {
                    expected: degree,
                    found: m.degree(),
                });
            }
            form.add_term(m, field.reduce_u64(c));
        }
        Ok(form)
    }

    /// Reduces an integer-coefficient form into `field`.
    pub fn from_integer_terms(
        n: usize,
        degree: u32,
        field: PrimeField,
        terms: &[(Monomial, i64)],
    ) -> Result<Self, PolyError> {
        Self::from_terms(
            n,
            degree,
            field,
            terms.iter().map(|(m, c)| (m.clone(), field.reduce_i64(*c))),
        )
    }

    /// `Σ x_i^d`.
    pub fn fermat(n: usize, degree: u32, field: PrimeField) -> Self {
        let mut form = Self::zero(n, degree, field);
        for i in 0..=n {
            let mut e = vec![0u16; n + 1];
            e[i] = degree as u16;
            form.add_term(Monomial::new(e), 1);
        }
        form
    }

    /// `Σ c_i x_i`.
    pub fn linear(field: PrimeField, coeffs: &[u64]) -> Self {
        let n = coeffs.len() - 1;
        let mut form = Self::zero(n, 1, field);
        for (i, &c) in coeffs.iter().enumerate() {
            form.add_term(Monomial::var(n + 1, i), field.reduce_u64(c));
        }
        form
    }

    pub fn monomial(n: usize, field: PrimeField, m: Monomial) -> Self {
        let mut form = Self::zero(n, m.degree(), field);
        form.add_term(m, 1);
        form
    }

    /// Uniformly random coefficients on every degree-`degree` monomial.
    pub fn random<R: Rng + ?Sized>(n: usize, degree: u32, field: PrimeField, rng: &mut R) -> Self {
        let mut form = Self::zero(n, degree, field);
        for m in enumerate_monomials(n, degree) {
            let c = rng.gen_range(0..field.modulus());
            form.add_term(m, c);
        }
        form
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Adds `c·m`; `m` must have this form's degree and variable count.
    pub fn add_term(&mut self, m: Monomial, c: u64) {
        debug_assert_eq!(m.degree(), self.degree);
        debug_assert_eq!(m.nvars(), self.n + 1);
        if c == 0 {
            return;
        }
        let field = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(PolyError::NotHomogeneous {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rest = if self.is_zero() { self } else { other };
        for (m, c) in rest.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = self.field.reduce_u64(c);
        let mut out = Self::zero(self.n, self.degree, self.field);
        if c != 0 {
            for (m, v) in self.terms() {
                out.terms.insert(m.clone(), self.field.mul(v, c));
            }
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.degree + other.degree, self.field);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.mul(b), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// `∂F/∂x_i`.
    pub fn derivative(&self, i: usize) -> Result<Self, PolyError> {
        if self.degree == 0 {
            return Err(PolyError::DegreeZero);
        }
        if i > self.n {
            return Err(PolyError::VariableOutOfRange {
                index: i,
                n: self.n,
                position: 0,
            });
        }
        let mut out = Self::zero(self.n, self.degree - 1, self.field);
        for (m, c) in self.terms() {
            let e = m.exponents()[i];
            if let Some(q) = m.div_var(i) {
                out.add_term(q, self.field.mul(c, self.field.reduce_u64(e as u64)));
            }
        }
        Ok(out)
    }

    /// `(∂F/∂x_0, …, ∂F/∂x_n)`.
    pub fn partial_derivatives(&self) -> Result<Vec<Self>, PolyError> {
        (0..=self.n).map(|i| self.derivative(i)).collect()
    }

    /// Checks Euler's identity `d·F = Σ x_i ∂F/∂x_i` term by term.
    pub fn euler_check(&self) -> bool {
        let Ok(partials) = self.partial_derivatives() else {
            return false;
        };
        let mut rhs = Self::zero(self.n, self.degree, self.field);
        for (i, g) in partials.iter().enumerate() {
            for (m, c) in g.terms() {
                rhs.add_term(m.mul_var(i), c);
            }
        }
        rhs == self.scale(self.degree as u64)
    }

    /// Replaces the stored coefficient of `m` without normalising.
    ///
    /// Only for building deliberately corrupted forms in tests.
    #[doc(hidden)]
    pub fn corrupt_coefficient(&mut self, m: Monomial, c: u64) {
        self.terms.insert(m, c);
    }
}

impl fmt::Display for HomogeneousForm {
    /// Prints in the input grammar, so output can be parsed back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let s = self.field.signed(c);
            let (neg, mag) = if s < 0 { (true, -s) } else { (false, s) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "HomogeneousForm(n={}, d={}, {:?}: {})",
            self.n, self.degree, self.field, self
        )
    }
}
