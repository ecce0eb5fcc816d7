//! One graded piece `R_p = S_p / J_p`, and the step that builds `R_{p+1}`
//! from `R_p` and `R_{p-1}`.
//!
//! A piece stores its standard monomials (the non-pivot columns of the
//! leftmost-pivot echelon form of `J_p` over the grlex-descending monomial
//! basis) and, for every other monomial, its normal form in standard
//! coordinates.
//!
//! Building `R_{p+1}` avoids the full Macaulay matrix. Every degree-`p+1`
//! monomial is congruent to a combination of the "border" monomials
//! `T = { x_i·b : b standard in degree p }` via
//! `E_i(M) = x_i · NF_p(M / x_i)`, and `J_{p+1} ∩ span(T)` is spanned by the
//! differences `E_i(M) - E_j(M)`. A difference whose `M / (x_i x_j)` is
//! non-standard in degree `p-1` already follows from smaller monomials and
//! is skipped. The pivots of the reduced differences are then exactly the
//! leftmost-pivot columns of `J_{p+1}`.
//!
//! Monomials outside `T` never enter that elimination: if `M / x_i` lies
//! outside `T`, every difference involving `x_i` is skipped. Their normal
//! forms are therefore filled in lazily, on first request.

use std::sync::{Arc, OnceLock};

use crate::exactla::RowEchelon;
use crate::polyring::{binomial, HomogeneousForm, MonomialBasis, PrimeField};

const NONE: u32 = u32::MAX;

/// Normal form of a single monomial.
pub(crate) enum Nf<'a> {
    /// The monomial is the standard monomial at this position.
    Standard(usize),
    /// Dense coordinates over the standard monomials.
    Combination(&'a [u64]),
    /// The piece is zero.
    Zero,
}

#[derive(Debug)]
pub(crate) struct GradedPiece {
    degree: u32,
    /// `None` for pieces known to vanish, which are never enumerated.
    basis: Option<MonomialBasis>,
    ambient_dim: usize,
    /// Indices into `basis` of standard monomials, increasing.
    standard: Vec<u32>,
    /// Per monomial index: position among standard monomials, or `NONE`.
    std_pos: Vec<u32>,
    /// Per monomial index: row of `nf_table`, or `NONE` for standard ones.
    nf_row: Vec<u32>,
    /// Row-major, `standard.len()` entries per non-standard monomial.
    nf_table: Vec<u64>,
    /// Deferred normal forms, for monomials outside the border set.
    lazy: Option<Lazy>,
}

#[derive(Debug)]
struct Lazy {
    field: PrimeField,
    prev: Arc<GradedPiece>,
    /// `times_var[s * (n+1) + i]` is the index of `x_i · b_s`.
    times_var: Vec<u32>,
    cells: Vec<OnceLock<Vec<u64>>>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn ideal_rank(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn basis(&self) -> Option<&MonomialBasis> {
        self.basis.as_ref()
    }

    /// Monomial indices of the standard monomials.
    pub fn standard_indices(&self) -> &[u32] {
        &self.standard
    }

    pub fn is_standard(&self, idx: usize) -> bool {
        self.std_pos.get(idx).is_some_and(|&s| s != NONE)
    }

    pub fn nf(&self, idx: usize) -> Nf<'_> {
        if self.standard.is_empty() {
            return Nf::Zero;
        }
        let s = self.std_pos[idx];
        if s != NONE {
            return Nf::Standard(s as usize);
        }
        let r = self.nf_row[idx];
        if r == NONE {
            let lazy = self.lazy.as_ref().expect("deferred normal form");
            let row = lazy.cells[idx].get_or_init(|| self.deferred_nf(lazy, idx));
            return Nf::Combination(row);
        }
        let r = r as usize;
        let w = self.standard.len();
        Nf::Combination(&self.nf_table[r * w..(r + 1) * w])
    }

    /// Adds `c · NF(monomial idx)` into `acc`.
    pub fn accumulate_nf(&self, field: PrimeField, idx: usize, c: u64, acc: &mut [u64]) {
        match self.nf(idx) {
            Nf::Zero => {}
            Nf::Standard(s) => acc[s] = field.add(acc[s], c),
            Nf::Combination(row) => {
                let m = field.shoup(c);
                for (a, &x) in acc.iter_mut().zip(row) {
                    if x != 0 {
                        *a = field.add(*a, m.mul(x));
                    }
                }
            }
        }
    }

    /// `NF(M) = NF(x_i · NF(M / x_i))` for the first variable dividing `M`.
    fn deferred_nf(&self, lazy: &Lazy, idx: usize) -> Vec<u64> {
        let basis = self.basis.as_ref().unwrap();
        let prev_basis = lazy.prev.basis.as_ref().unwrap();
        let nvars = basis.get(0).nvars();
        let m = basis.get(idx);
        let i = (0..nvars).find(|&i| m.exponents()[i] > 0).unwrap();
        let u_idx = prev_basis.index_of(&m.div_var(i).unwrap()).unwrap();
        let mut acc = vec![0u64; self.standard.len()];
        match lazy.prev.nf(u_idx) {
            Nf::Zero => {}
            Nf::Standard(s) => self.accumulate_nf(lazy.field, lazy.times_var[s * nvars + i] as usize, 1, &mut acc),
            Nf::Combination(row) => {
                for (s, &x) in row.iter().enumerate() {
                    if x != 0 {
                        let t = lazy.times_var[s * nvars + i] as usize;
                        self.accumulate_nf(lazy.field, t, x, &mut acc);
                    }
                }
            }
        }
        acc
    }

    /// Every monomial standard: degrees below `d - 1`.
    pub fn free(n: usize, degree: u32) -> Self {
        let basis = MonomialBasis::new(n, degree);
        let len = basis.len();
        GradedPiece {
            degree,
            ambient_dim: len,
            standard: (0..len as u32).collect(),
            std_pos: (0..len as u32).collect(),
            nf_row: vec![NONE; len],
            nf_table: Vec::new(),
            lazy: None,
            basis: Some(basis),
        }
    }

    /// A piece past the point where the ring vanishes.
    pub fn zero(n: usize, degree: u32) -> Self {
        GradedPiece {
            degree,
            basis: None,
            ambient_dim: binomial(n + degree as usize, n),
            standard: Vec::new(),
            std_pos: Vec::new(),
            nf_row: Vec::new(),
            nf_table: Vec::new(),
            lazy: None,
        }
    }

    /// Degree `d - 1`: the ideal is spanned by the partials themselves.
    pub fn from_generators(n: usize, field: PrimeField, partials: &[HomogeneousForm]) -> Self {
        let degree = partials[0].degree();
        let basis = MonomialBasis::new(n, degree);
        let mut ech = RowEchelon::new(field, basis.len());
        for g in partials {
            let mut row = vec![0u64; basis.len()];
            for (m, c) in g.terms() {
                row[basis.index_of(m).expect("partial has the right degree")] = c;
            }
            ech.push(row);
        }
        let is_col = vec![true; basis.len()];
        Self::from_echelon(degree, basis, &is_col, &ech, field)
    }

    /// Assembles a piece from an echelon form whose columns are the monomials
    /// flagged in `in_subset`, in basis order. Normal forms of monomials
    /// outside the subset are left to the caller.
    fn from_echelon(
        degree: u32,
        basis: MonomialBasis,
        in_subset: &[bool],
        ech: &RowEchelon,
        field: PrimeField,
    ) -> Self {
        let len = basis.len();
        let columns: Vec<u32> = (0..len as u32).filter(|&i| in_subset[i as usize]).collect();
        let mut standard = Vec::new();
        let mut std_pos = vec![NONE; len];
        for (k, &idx) in columns.iter().enumerate() {
            if !ech.is_pivot(k) {
                std_pos[idx as usize] = standard.len() as u32;
                standard.push(idx);
            }
        }
        let w = standard.len();
        let mut nf_row = vec![NONE; len];
        let mut nf_table = Vec::new();
        for (k, &idx) in columns.iter().enumerate() {
            if let Some(row) = ech.pivot_row(k) {
                nf_row[idx as usize] = (nf_table.len() / w.max(1)) as u32;
                let start = nf_table.len();
                nf_table.resize(start + w, 0);
                let mut s = 0;
                for (kk, &x) in row.iter().enumerate() {
                    if !ech.is_pivot(kk) {
                        nf_table[start + s] = field.neg(x);
                        s += 1;
                    }
                }
            }
        }
        GradedPiece {
            degree,
            ambient_dim: len,
            basis: Some(basis),
            standard,
            std_pos,
            nf_row,
            nf_table,
            lazy: None,
        }
    }

    /// Builds `R_{p+1}` from `R_p` (`self`) and `R_{p-1}` (`below`).
    ///
    /// `dim_floor`, when given, is a lower bound on `dim R_{p+1}`; elimination
    /// stops once the rank reaches the matching upper bound.
    pub fn next(
        self: &Arc<Self>,
        below: Option<&GradedPiece>,
        n: usize,
        field: PrimeField,
        dim_floor: Option<usize>,
    ) -> Self {
        let degree = self.degree + 1;
        if self.dim() == 0 {
            return Self::zero(n, degree);
        }
        let prev_basis = self.basis.as_ref().expect("nonzero piece has a basis");
        let basis = MonomialBasis::new(n, degree);
        let len = basis.len();
        let nvars = n + 1;

        // products x_i · b for standard b, as monomial indices of degree p+1
        let mut in_t = vec![false; len];
        let mut times_var = vec![NONE; self.standard.len() * nvars];
        for (s, &b) in self.standard.iter().enumerate() {
            let mb = prev_basis.get(b as usize);
            for i in 0..nvars {
                let idx = basis.index_of(&mb.mul_var(i)).unwrap();
                in_t[idx] = true;
                times_var[s * nvars + i] = idx as u32;
            }
        }
        let mut t_col = vec![NONE; len];
        let mut tcols = 0usize;
        for (idx, &t) in in_t.iter().enumerate() {
            if t {
                t_col[idx] = tcols as u32;
                tcols += 1;
            }
        }

        // E_i(M) over T columns, written into `out` (cleared first)
        let border = |m_idx: usize, i: usize, out: &mut Vec<u64>| {
            out.clear();
            out.resize(tcols, 0);
            let u = basis.get(m_idx).div_var(i).unwrap();
            let u_idx = prev_basis.index_of(&u).unwrap();
            match self.nf(u_idx) {
                Nf::Zero => {}
                Nf::Standard(_) => out[t_col[m_idx] as usize] = 1,
                Nf::Combination(row) => {
                    for (s, &x) in row.iter().enumerate() {
                        if x != 0 {
                            let col = t_col[times_var[s * nvars + i] as usize] as usize;
                            out[col] = field.add(out[col], x);
                        }
                    }
                }
            }
        };
        let divisor_standard = |m_idx: usize, i: usize| -> bool {
            let u = basis.get(m_idx).div_var(i).unwrap();
            self.is_standard(prev_basis.index_of(&u).unwrap())
        };

        let rank_cap = dim_floor.map_or(tcols, |f| tcols.saturating_sub(f));
        let mut ech = RowEchelon::new(field, tcols);
        let mut e_ref = Vec::new();
        let mut e_other = Vec::new();
        'monomials: for m_idx in 0..len {
            if ech.rank() >= rank_cap {
                break;
            }
            let m = basis.get(m_idx);
            let divisors: Vec<usize> = (0..nvars).filter(|&i| m.exponents()[i] > 0).collect();
            let std_flags: Vec<bool> = divisors.iter().map(|&i| divisor_standard(m_idx, i)).collect();
            if std_flags.iter().all(|&s| s) {
                continue;
            }
            let r = std_flags.iter().position(|&s| s).unwrap_or(0);
            let i0 = divisors[r];
            let mut have_ref = false;
            for (k, &i) in divisors.iter().enumerate() {
                if k == r || (std_flags[k] && std_flags[r]) {
                    continue;
                }
                if let (Some(below), Some(w)) = (below, m.div_var(i).and_then(|q| q.div_var(i0))) {
                    let implied = below
                        .basis
                        .as_ref()
                        .and_then(|b| b.index_of(&w))
                        .is_some_and(|wi| !below.is_standard(wi));
                    if implied {
                        continue;
                    }
                }
                if !have_ref {
                    border(m_idx, i0, &mut e_ref);
                    have_ref = true;
                }
                border(m_idx, i, &mut e_other);
                for (a, &b) in e_other.iter_mut().zip(&e_ref) {
                    *a = field.sub(*a, b);
                }
                ech.push(std::mem::take(&mut e_other));
                if ech.rank() >= rank_cap {
                    break 'monomials;
                }
            }
        }

        let mut piece = Self::from_echelon(degree, basis, &in_t, &ech, field);
        if piece.dim() > 0 {
            piece.lazy = Some(Lazy {
                field,
                prev: Arc::clone(self),
                times_var,
                cells: (0..len).map(|_| OnceLock::new()).collect(),
            });
        }
        piece
    }
}
