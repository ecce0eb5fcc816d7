//! Multiplication maps `×h: R_{p-e} → R_p` between quotient bases, and
//! randomized certification that a general `h` gives a map of maximal rank.
//!
//! Maximal rank is a Zariski-open condition on the coefficients of `h`, so a
//! single sample that reaches it certifies the general case over the field.
//! Failing samples only bound the probability that a good `h` was missed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::FieldMatrix;
use crate::jacobian::{JacobianError, JacobianRing};
use crate::polyring::HomogeneousForm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error("cannot multiply by a form of degree {form_degree} into degree {target}")]
    DegreeMismatch { form_degree: u32, target: u32 },
    #[error("form has {found} variables, ring has {expected}")]
    VariableMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
}

/// The matrix of `×h: R_{p-e} → R_p`, one column per source basis monomial.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub h: HomogeneousForm,
    pub source_degree: u32,
    pub target_degree: u32,
    pub matrix: FieldMatrix,
    pub rank: usize,
}

impl GradedMap {
    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn required_rank(&self) -> usize {
        self.source_dim().min(self.target_dim())
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim()
    }

    pub fn has_max_rank(&self) -> bool {
        self.rank == self.required_rank()
    }

    /// Source-coordinate vectors spanning the kernel.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        if self.is_injective() {
            return Vec::new();
        }
        self.matrix.kernel_basis()
    }
}

pub fn mult_map(ring: &JacobianRing, h: &HomogeneousForm, p: u32) -> Result<GradedMap, LefschetzError> {
    let e = h.degree();
    if e == 0 || p < e {
        return Err(LefschetzError::DegreeMismatch {
            form_degree: e,
            target: p,
        });
    }
    if h.n() != ring.n() {
        return Err(LefschetzError::VariableMismatch {
            expected: ring.n(),
            found: h.n(),
        });
    }
    let field = ring.field();
    let source = ring.quotient_basis(p - e)?;
    let target = ring.piece(p)?;
    let (rows, cols) = (target.dim(), source.len());
    let mut data = vec![0u64; rows * cols];
    if let Some(tb) = target.basis() {
        let mut col = vec![0u64; rows];
        for (j, b) in source.monomials.iter().enumerate() {
            col.iter_mut().for_each(|x| *x = 0);
            for (t, c) in h.terms() {
                let idx = tb.index_of(&b.mul(t)).expect("product has the target degree");
                target.accumulate_nf(field, idx, c, &mut col);
            }
            for (i, &x) in col.iter().enumerate() {
                data[i * cols + j] = x;
            }
        }
    }
    let matrix = FieldMatrix::from_dense(rows, cols, field, data);
    let rank = matrix.rank();
    Ok(GradedMap {
        h: h.clone(),
        source_degree: p - e,
        target_degree: p,
        matrix,
        rank,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankOutcome {
    CertifiedMaxRank,
    /// Every sample fell short; the verdict carries a failure bound.
    ProbablyDeficient,
    /// Every sample fell short and the field is too small for the bound to
    /// say anything.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankVerdict {
    pub outcome: RankOutcome,
    pub source_degree: u32,
    pub target_degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub best_rank: usize,
    pub required_rank: usize,
    /// The successful sample, or the last one tried.
    pub h: HomogeneousForm,
    /// A form `G` of the source degree with `h·G ∈ J`. Only present when
    /// injectivity was required and not reached.
    pub witness: Option<HomogeneousForm>,
    pub trials_used: u32,
    /// `(required_rank / p)^trials`, an upper bound on the chance that every
    /// sample missed an `h` of maximal rank. Zero when certified.
    pub failure_bound: f64,
}

impl RankVerdict {
    pub fn is_certified(&self) -> bool {
        self.outcome == RankOutcome::CertifiedMaxRank
    }

    /// Certified with full column rank.
    pub fn is_injective(&self) -> bool {
        self.is_certified() && self.best_rank == self.source_dim
    }
}

/// RNG stream for one sampling task; parallel and serial runs agree.
pub fn task_rng(seed: u64, e: u32, p: u32, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((e as u64) << 48) | ((p as u64) << 24) | trial as u64);
    rng
}

/// Uniform coefficients on every degree-`e` monomial.
pub fn sample_form(ring: &JacobianRing, e: u32, rng: &mut ChaCha8Rng) -> HomogeneousForm {
    HomogeneousForm::random(ring.n(), e, ring.field(), rng)
}

/// Samples `h` of degree `e` until `×h: R_{p-e} → R_p` reaches maximal rank.
pub fn certify_general_max_rank(
    ring: &JacobianRing,
    e: u32,
    p: u32,
    trials: u32,
    seed: u64,
) -> Result<RankVerdict, LefschetzError> {
    assert!(trials >= 1, "at least one trial is needed");
    let mut best: Option<GradedMap> = None;
    let mut last = None;
    for trial in 0..trials {
        let h = sample_form(ring, e, &mut task_rng(seed, e, p, trial));
        let map = mult_map(ring, &h, p)?;
        if map.has_max_rank() {
            return Ok(certified(map, trial + 1));
        }
        if best.as_ref().is_none_or(|b| map.rank > b.rank) {
            best = Some(map.clone());
        }
        last = Some(map);
    }
    let (best, last) = (best.unwrap(), last.unwrap());
    Ok(deficient(ring, &best, &last, trials))
}

fn certified(map: GradedMap, trials_used: u32) -> RankVerdict {
    RankVerdict {
        outcome: RankOutcome::CertifiedMaxRank,
        source_degree: map.source_degree,
        target_degree: map.target_degree,
        source_dim: map.source_dim(),
        target_dim: map.target_dim(),
        best_rank: map.rank,
        required_rank: map.required_rank(),
        h: map.h,
        witness: None,
        trials_used,
        failure_bound: 0.0,
    }
}

fn deficient(ring: &JacobianRing, best: &GradedMap, last: &GradedMap, trials: u32) -> RankVerdict {
    let required = best.required_rank();
    let bound = (required as f64 / ring.field().modulus() as f64).powi(trials as i32);
    let witness = (last.source_dim() <= last.target_dim())
        .then(|| kernel_form(ring, last))
        .flatten();
    RankVerdict {
        outcome: if bound < 1.0 {
            RankOutcome::ProbablyDeficient
        } else {
            RankOutcome::Indeterminate
        },
        source_degree: best.source_degree,
        target_degree: best.target_degree,
        source_dim: best.source_dim(),
        target_dim: best.target_dim(),
        best_rank: best.rank,
        required_rank: required,
        h: last.h.clone(),
        witness,
        trials_used: trials,
        failure_bound: bound.min(1.0),
    }
}

/// A kernel vector of `map` lifted to a form, re-checked by multiplying
/// back and reducing.
pub fn kernel_form(ring: &JacobianRing, map: &GradedMap) -> Option<HomogeneousForm> {
    let v = map.matrix.kernel_witness()?;
    let g = ring.lift(map.source_degree, &v).ok()?;
    let product = map.h.multiply(&g).ok()?;
    assert!(
        ring.in_ideal(&product).unwrap_or(false),
        "kernel witness does not multiply into the ideal"
    );
    Some(g)
}

/// Per-degree results of the weak Lefschetz sweep.
#[derive(Clone, Debug)]
pub struct WlpReport {
    /// Verdicts for `×ℓ: R_{p-1} → R_p`, `p = 1..=socle`.
    pub verdicts: Vec<RankVerdict>,
    /// Whether one shared `ℓ` had maximal rank in every degree.
    pub shared_form_sufficed: bool,
    pub holds: bool,
}

/// Checks `×ℓ: R_{p-1} → R_p` for every `p` up to the socle degree. A single
/// shared `ℓ` is tried first; degrees where it falls short are resampled.
pub fn wlp_sweep(ring: &JacobianRing, trials: u32, seed: u64) -> Result<WlpReport, LefschetzError> {
    let socle = ring.socle_degree();
    let shared = sample_form(ring, 1, &mut task_rng(seed, 1, 0, 0));
    let mut verdicts = Vec::new();
    let mut shared_ok = true;
    for p in 1..=socle {
        let map = mult_map(ring, &shared, p)?;
        if map.has_max_rank() {
            verdicts.push(certified(map, 1));
        } else {
            shared_ok = false;
            verdicts.push(certify_general_max_rank(ring, 1, p, trials, seed)?);
        }
    }
    let holds = verdicts.iter().all(RankVerdict::is_certified);
    Ok(WlpReport {
        verdicts,
        shared_form_sufficed: shared_ok,
        holds,
    })
}

/// Whether `×ℓ: R_{p-1} → R_p` is injective for every `1 ≤ p ≤ top`.
pub fn injectivity_descends(ring: &JacobianRing, l: &HomogeneousForm, top: u32) -> Result<bool, LefschetzError> {
    for p in 1..=top {
        if !mult_map(ring, l, p)?.is_injective() {
            return Ok(false);
        }
    }
    Ok(true)
}
