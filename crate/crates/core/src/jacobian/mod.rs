//! The Jacobian ring `R = k[x_0..x_n] / (∂F/∂x_0, …, ∂F/∂x_n)`, degree by
//! degree.
//!
//! Graded pieces are computed lazily in increasing degree and cached for the
//! ring's lifetime. Each piece records a standard-monomial basis of `R_p`
//! and normal forms for all other degree-`p` monomials, which is what the
//! multiplication maps in [`crate::lefschetz`] are built from.
//!
//! Smoothness is certified through Artinian-ness: `R_{s+1} = 0` for the
//! socle degree `s = (n+1)(d-2)`. Over `F_p` this implies the partials form
//! a regular sequence over `Q` as well, because the rank of the integer
//! Macaulay matrix can only drop under reduction mod `p`. The converse does
//! not hold, so a failure only means "not certified at this prime".

mod hilbert;
mod piece;

use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::exactla::FieldMatrix;
use crate::polyring::{binomial, HomogeneousForm, Monomial, MonomialBasis, PolyError, PrimeField};

pub use hilbert::{ci_coefficient, ci_hilbert_coefficients, HilbertFunction};
pub(crate) use piece::GradedPiece;

/// Largest `dim S_p` for which a graded piece will be built.
pub const MAX_PIECE_COLUMNS: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobianError {
    #[error("degree {0} is too small; the Jacobian ring needs d >= 2")]
    DegreeTooSmall(u32),
    #[error("characteristic {prime} must exceed the degree {degree}")]
    FieldTooSmall { prime: u64, degree: u32 },
    #[error("degree {degree} needs {columns} monomials, above the limit of {limit}")]
    ResourceLimit { degree: u32, columns: usize, limit: usize },
    #[error("Hilbert function mismatch at degree {degree}: expected {expected}, found {found} (implementation bug)")]
    HilbertMismatch {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Standard monomials whose residues form a basis of `R_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothnessCertificate {
    /// `R_{s+1} = 0`, `dim R_s = 1`, and the Hilbert function is the
    /// complete-intersection one.
    Certified { hilbert: HilbertFunction },
    /// `R_{s+1} ≠ 0` at this prime. `dims` covers degrees `0..=s+1`.
    NotCertified {
        degree: usize,
        dim: usize,
        dims: Vec<usize>,
    },
}

impl SmoothnessCertificate {
    /// Classifies the graded dimensions for degrees `0..=s+1`.
    pub fn from_dims(n: usize, d: u32, dims: &[usize]) -> Result<Self, JacobianError> {
        let expected = ci_hilbert_coefficients(n, d);
        let socle = expected.len() - 1;
        assert_eq!(dims.len(), socle + 2, "need dimensions through degree socle + 1");
        if dims[socle + 1] != 0 {
            return Ok(SmoothnessCertificate::NotCertified {
                degree: socle + 1,
                dim: dims[socle + 1],
                dims: dims.to_vec(),
            });
        }
        for (p, (&e, &f)) in expected.iter().zip(dims).enumerate() {
            if e != f {
                return Err(JacobianError::HilbertMismatch {
                    degree: p,
                    expected: e,
                    found: f,
                });
            }
        }
        Ok(SmoothnessCertificate::Certified {
            hilbert: HilbertFunction(dims[..=socle].to_vec()),
        })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, SmoothnessCertificate::Certified { .. })
    }

    /// Dimensions for degrees `0..=s+1`.
    pub fn dims(&self) -> Vec<usize> {
        match self {
            SmoothnessCertificate::Certified { hilbert } => {
                let mut v = hilbert.0.clone();
                v.push(0);
                v
            }
            SmoothnessCertificate::NotCertified { dims, .. } => dims.clone(),
        }
    }
}

/// Options controlling how graded pieces are computed.
#[derive(Clone, Copy, Debug)]
pub struct RingOptions {
    /// Stop eliminating in degree `p` once `dim R_p` reaches the
    /// complete-intersection value, which is a lower bound for every
    /// `n+1` forms of degree `d-1` (semicontinuity; the generic sequence is
    /// regular). The exact pieces are the same either way.
    pub use_dimension_floor: bool,
}

impl Default for RingOptions {
    fn default() -> Self {
        RingOptions {
            use_dimension_floor: true,
        }
    }
}

/// Jacobian ring of a form `F` of degree `d ≥ 2` in `n+1` variables over `F_p`, `p > d`.
#[derive(Debug)]
pub struct JacobianRing {
    form: HomogeneousForm,
    partials: Vec<HomogeneousForm>,
    options: RingOptions,
    pieces: Mutex<Vec<Arc<GradedPiece>>>,
}

impl JacobianRing {
    pub fn new(form: HomogeneousForm) -> Result<Self, JacobianError> {
        Self::with_options(form, RingOptions::default())
    }

    pub fn with_options(form: HomogeneousForm, options: RingOptions) -> Result<Self, JacobianError> {
        let d = form.degree();
        if d < 2 {
            return Err(JacobianError::DegreeTooSmall(d));
        }
        if form.field().modulus() <= d as u64 {
            return Err(JacobianError::FieldTooSmall {
                prime: form.field().modulus(),
                degree: d,
            });
        }
        let partials = form.partial_derivatives()?;
        Ok(JacobianRing {
            form,
            partials,
            options,
            pieces: Mutex::new(Vec::new()),
        })
    }

    /// Ring of the Fermat form `Σ x_i^d`.
    pub fn fermat(n: usize, d: u32, field: PrimeField) -> Result<Self, JacobianError> {
        Self::new(HomogeneousForm::fermat(n, d, field))
    }

    pub fn form(&self) -> &HomogeneousForm {
        &self.form
    }

    pub fn partials(&self) -> &[HomogeneousForm] {
        &self.partials
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn field(&self) -> PrimeField {
        self.form.field()
    }

    /// `(n+1)(d-2)`.
    pub fn socle_degree(&self) -> u32 {
        (self.n() as u32 + 1) * (self.degree() - 2)
    }

    /// The Macaulay matrix of `J_p`: rows `m·F'_i` for every monomial `m` of
    /// degree `p-d+1` and every `i`, columns the degree-`p` monomials in
    /// descending grlex order.
    pub fn ideal_matrix(&self, p: u32) -> Result<FieldMatrix, JacobianError> {
        let n = self.n();
        let columns = binomial(n + p as usize, n);
        self.check_guard(p, columns)?;
        let basis = MonomialBasis::new(n, p);
        let field = self.field();
        let mut rows = Vec::new();
        if p + 1 >= self.degree() {
            let multipliers = MonomialBasis::new(n, p + 1 - self.degree());
            for m in multipliers.monomials() {
                for g in &self.partials {
                    let row = g
                        .terms()
                        .map(|(t, c)| (basis.index_of(&t.mul(m)).unwrap() as u32, c))
                        .collect();
                    rows.push(row);
                }
            }
        }
        Ok(FieldMatrix::from_sparse_rows(basis.len(), field, rows))
    }

    fn check_guard(&self, p: u32, columns: usize) -> Result<(), JacobianError> {
        if columns > MAX_PIECE_COLUMNS {
            return Err(JacobianError::ResourceLimit {
                degree: p,
                columns,
                limit: MAX_PIECE_COLUMNS,
            });
        }
        Ok(())
    }

    /// The cached piece of degree `p`, computing lower degrees as needed.
    pub(crate) fn piece(&self, p: u32) -> Result<Arc<GradedPiece>, JacobianError> {
        let mut pieces = self.pieces.lock().unwrap();
        let n = self.n();
        let d = self.degree();
        while pieces.len() <= p as usize {
            let q = pieces.len() as u32;
            let prev_zero = pieces.last().is_some_and(|pc| pc.dim() == 0);
            if !prev_zero {
                self.check_guard(q, binomial(n + q as usize, n))?;
            }
            let piece = if q + 1 < d {
                GradedPiece::free(n, q)
            } else if q + 1 == d {
                GradedPiece::from_generators(n, self.field(), &self.partials)
            } else {
                let floor = self
                    .options
                    .use_dimension_floor
                    .then(|| ci_coefficient(n, d, q as usize));
                let below = (q >= 2).then(|| pieces[q as usize - 2].as_ref());
                pieces[q as usize - 1].next(below, n, self.field(), floor)
            };
            pieces.push(Arc::new(piece));
        }
        Ok(pieces[p as usize].clone())
    }

    /// `dim R_p = C(n+p, n) - rank J_p`.
    pub fn graded_dim(&self, p: u32) -> Result<usize, JacobianError> {
        Ok(self.piece(p)?.dim())
    }

    /// `rank J_p`.
    pub fn ideal_rank(&self, p: u32) -> Result<usize, JacobianError> {
        Ok(self.piece(p)?.ideal_rank())
    }

    pub fn quotient_basis(&self, p: u32) -> Result<QuotientBasis, JacobianError> {
        let piece = self.piece(p)?;
        let monomials = match piece.basis() {
            Some(b) => piece
                .standard_indices()
                .iter()
                .map(|&i| b.get(i as usize).clone())
                .collect(),
            None => Vec::new(),
        };
        Ok(QuotientBasis { degree: p, monomials })
    }

    /// `dim R_0, …, dim R_top`.
    pub fn hilbert_function(&self, top: u32) -> Result<Vec<usize>, JacobianError> {
        (0..=top).map(|p| self.graded_dim(p)).collect()
    }

    /// Coordinates of the class of `g` in the quotient basis of its degree.
    pub fn normal_form(&self, g: &HomogeneousForm) -> Result<Vec<u64>, JacobianError> {
        if g.n() != self.n() {
            return Err(PolyError::DimensionMismatch {
                left: self.n(),
                right: g.n(),
            }
            .into());
        }
        if g.field() != self.field() {
            return Err(PolyError::FieldMismatch.into());
        }
        let piece = self.piece(g.degree())?;
        let mut acc = vec![0u64; piece.dim()];
        if let Some(basis) = piece.basis() {
            for (m, c) in g.terms() {
                let idx = basis.index_of(m).expect("monomial of the piece degree");
                piece.accumulate_nf(self.field(), idx, c, &mut acc);
            }
        }
        Ok(acc)
    }

    /// Whether `g ∈ J`.
    pub fn in_ideal(&self, g: &HomogeneousForm) -> Result<bool, JacobianError> {
        Ok(self.normal_form(g)?.iter().all(|&x| x == 0))
    }

    /// The form `Σ coords[k]·b_k` over the quotient basis of degree `p`.
    pub fn lift(&self, p: u32, coords: &[u64]) -> Result<HomogeneousForm, JacobianError> {
        let qb = self.quotient_basis(p)?;
        assert_eq!(coords.len(), qb.len());
        Ok(HomogeneousForm::from_terms(
            self.n(),
            p,
            self.field(),
            qb.monomials.into_iter().zip(coords.iter().copied()),
        )?)
    }

    /// Checks `R_{s+1} = 0` and records the Hilbert function.
    pub fn certify_smooth(&self) -> Result<SmoothnessCertificate, JacobianError> {
        let dims = self.hilbert_function(self.socle_degree() + 1)?;
        SmoothnessCertificate::from_dims(self.n(), self.degree(), &dims)
    }
}

#[cfg(test)]
mod tests;
