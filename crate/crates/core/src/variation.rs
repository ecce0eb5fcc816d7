//! Maximal-variation criteria for linear systems on smooth hypersurfaces and
//! on double covers of projective space, decided in the Jacobian ring.
//!
//! Both reduce to one ring predicate: `×h: R_{d-e} → R_d` is injective for a
//! general `h` of degree `e`. For `e = 1` that is an equivalence. For larger
//! `e` it is only sufficient, so no report ever claims that variation fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::jacobian::{JacobianError, JacobianRing, SmoothnessCertificate};
use crate::lefschetz::{certify_general_max_rank, LefschetzError, RankVerdict};
use crate::polyring::{enumerate_monomials, HomogeneousForm, Monomial, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VariationError {
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeometryKind {
    /// `X = {F = 0} ⊂ P^n` with the system `|O_X(e)|`.
    Hypersurface,
    /// `X → P^n` branched along `B = {F = 0}`, with `|π^* O_P(e)|`.
    DoubleCover,
}

#[derive(Clone, Debug)]
pub struct GeometryInput {
    pub kind: GeometryKind,
    pub form: HomogeneousForm,
    pub e: u32,
}

impl GeometryInput {
    pub fn new(kind: GeometryKind, form: HomogeneousForm, e: u32) -> Self {
        GeometryInput { kind, form, e }
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn d(&self) -> u32 {
        self.form.degree()
    }

    /// The violated inequality, if any.
    pub fn gate_violation(&self) -> Option<String> {
        let (n, d) = (self.n(), self.d());
        if self.e == 0 {
            return Some("e >= 1".into());
        }
        match self.kind {
            GeometryKind::Hypersurface => {
                if n < 3 {
                    Some(format!("n >= 3 (got n = {n})"))
                } else if d < 3 {
                    Some(format!("d >= 3 (got d = {d})"))
                } else if n == 3 && d < 4 {
                    Some(format!("d >= 4 if n = 3 (got d = {d})"))
                } else {
                    None
                }
            }
            GeometryKind::DoubleCover => {
                if n < 2 {
                    Some(format!("n >= 2 (got n = {n})"))
                } else if d % 2 == 1 {
                    Some(format!("d even (got d = {d})"))
                } else if d < 4 {
                    Some(format!("d >= 4 (got d = {d})"))
                } else if n == 2 && d < 6 {
                    Some(format!("d >= 6 if n = 2 (got d = {d})"))
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    MaximalVariationCertified,
    /// The criterion was not met by any sample.
    NoEvidence {
        failure_bound: f64,
        witness: Option<HomogeneousForm>,
    },
    TriviallyCertified {
        reason: String,
    },
    PreconditionViolated {
        detail: String,
    },
    /// `R_{s+1} ≠ 0` at this prime.
    SmoothnessNotCertified {
        degree: usize,
        dim: usize,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::MaximalVariationCertified => "maximal-variation-certified",
            Verdict::NoEvidence { .. } => "no-evidence",
            Verdict::TriviallyCertified { .. } => "trivially-certified",
            Verdict::PreconditionViolated { .. } => "precondition-violated",
            Verdict::SmoothnessNotCertified { .. } => "smoothness-not-certified",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(
            self,
            Verdict::MaximalVariationCertified | Verdict::TriviallyCertified { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub prime: u64,
    pub seed: u64,
    pub trials: u32,
    /// `dim R_{d-e}`, when the map was examined.
    pub source_dim: Option<usize>,
    /// `dim R_d`.
    pub target_dim: Option<usize>,
    pub rank: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Gate or smoothness check stopped the run.
    None,
    /// `R_{d-e} = 0`.
    EmptySource,
    /// `e = d`: the source is `R_0` and `R_d ≠ 0`.
    NonzeroTarget,
    /// Double cover with `e ≥ d`.
    LargeTwist,
    /// `×ℓ: R_{d-1} → R_d` for general linear `ℓ`.
    LinearInjectivity,
    /// `×h: R_{d-e} → R_d` for general `h` of degree `e`.
    FormInjectivity,
    /// Double cover with `1 < e < d`, decided by the linear criterion.
    LinearImpliesTwist,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariationReport {
    pub kind: GeometryKind,
    pub n: usize,
    pub d: u32,
    pub e: u32,
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub provenance: Provenance,
    /// Graded dimensions `0..=s+1` when the smoothness check ran.
    pub dims: Option<Vec<usize>>,
    pub rank_verdict: Option<RankVerdict>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct VariationOptions {
    pub trials: u32,
    pub seed: u64,
    /// Refuse inputs outside the ranges where the criteria apply.
    pub enforce_gates: bool,
}

impl Default for VariationOptions {
    fn default() -> Self {
        VariationOptions {
            trials: 3,
            seed: 0,
            enforce_gates: true,
        }
    }
}

const RETRY_NOTE: &str = "not certified at this prime; retry with other primes";
const EQUIVALENCE_NOTE: &str =
    "for e = 1 the criterion is an equivalence: no evidence at several primes points to a genuine failure";
const SUFFICIENT_NOTE: &str =
    "for e >= 2 the criterion is only sufficient: no evidence here says nothing about maximal variation";
const TWIST_NOTE: &str = "for 1 < e < d the linear criterion is only sufficient for the twisted system";

/// Outcome of the shared ring predicate for one `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct PredicateOutcome {
    pub certified: bool,
    pub rank_verdict: RankVerdict,
    pub failure_bound: f64,
    pub witness: Option<HomogeneousForm>,
}

/// Is `×h: R_{d-e} → R_d` injective for a sampled `h` of degree `e`?
pub fn injectivity_predicate(
    ring: &JacobianRing,
    e: u32,
    trials: u32,
    seed: u64,
) -> Result<PredicateOutcome, VariationError> {
    let d = ring.degree();
    let v = certify_general_max_rank(ring, e, d, trials, seed)?;
    if v.is_injective() {
        return Ok(PredicateOutcome {
            certified: true,
            failure_bound: 0.0,
            witness: None,
            rank_verdict: v,
        });
    }
    let witness = v
        .witness
        .clone()
        .filter(|g| witness_in_ideal(ring, &v.h, g).unwrap_or(false));
    // maximal rank below the source dimension cannot give injectivity
    let failure_bound = if v.is_certified() { 1.0 } else { v.failure_bound };
    Ok(PredicateOutcome {
        certified: false,
        failure_bound,
        witness,
        rank_verdict: v,
    })
}

/// `h·G ∈ J_d`, decided by appending `h·G` to the explicit Macaulay matrix.
pub fn witness_in_ideal(ring: &JacobianRing, h: &HomogeneousForm, g: &HomogeneousForm) -> Result<bool, VariationError> {
    let product = h.multiply(g).map_err(JacobianError::from)?;
    let p = product.degree();
    let m = ring.ideal_matrix(p)?;
    let basis = crate::polyring::MonomialBasis::new(ring.n(), p);
    let row: Vec<(u32, u64)> = product
        .terms()
        .map(|(t, c)| (basis.index_of(t).unwrap() as u32, c))
        .collect();
    let extra = crate::exactla::FieldMatrix::from_sparse_rows(m.cols(), ring.field(), vec![row]);
    Ok(m.vstack(&extra).rank() == m.rank())
}

struct Draft {
    input_kind: GeometryKind,
    n: usize,
    d: u32,
    e: u32,
    provenance: Provenance,
}

impl Draft {
    fn new(input: &GeometryInput, options: &VariationOptions) -> Self {
        Draft {
            input_kind: input.kind,
            n: input.n(),
            d: input.d(),
            e: input.e,
            provenance: Provenance {
                prime: input.form.field().modulus(),
                seed: options.seed,
                trials: options.trials,
                source_dim: None,
                target_dim: None,
                rank: None,
            },
        }
    }

    fn finish(
        self,
        verdict: Verdict,
        criterion: Criterion,
        dims: Option<Vec<usize>>,
        rank_verdict: Option<RankVerdict>,
        notes: Vec<String>,
    ) -> VariationReport {
        VariationReport {
            kind: self.input_kind,
            n: self.n,
            d: self.d,
            e: self.e,
            verdict,
            criterion,
            provenance: self.provenance,
            dims,
            rank_verdict,
            notes,
        }
    }
}

enum Prepared {
    Ready(Vec<usize>),
    Stopped(Verdict, Option<Vec<usize>>, Vec<String>),
}

/// Gate and smoothness checks shared by both geometries.
fn prepare(
    input: &GeometryInput,
    certificate: &SmoothnessCertificate,
    options: &VariationOptions,
    draft: &mut Draft,
) -> Prepared {
    if options.enforce_gates {
        if let Some(detail) = input.gate_violation() {
            return Prepared::Stopped(Verdict::PreconditionViolated { detail }, None, Vec::new());
        }
    }
    let dims = certificate.dims();
    if let SmoothnessCertificate::NotCertified { degree, dim, .. } = certificate {
        let note = format!("{RETRY_NOTE} (p = {})", draft.provenance.prime);
        return Prepared::Stopped(
            Verdict::SmoothnessNotCertified {
                degree: *degree,
                dim: *dim,
            },
            Some(dims),
            vec![note],
        );
    }
    let (d, e) = (input.d() as usize, input.e as usize);
    draft.provenance.target_dim = Some(dims[d]);
    draft.provenance.source_dim = Some(if e <= d { dims[d - e] } else { 0 });
    Prepared::Ready(dims)
}

fn predicate_verdict(outcome: &PredicateOutcome) -> Verdict {
    if outcome.certified {
        Verdict::MaximalVariationCertified
    } else {
        Verdict::NoEvidence {
            failure_bound: outcome.failure_bound,
            witness: outcome.witness.clone(),
        }
    }
}

/// Runs the criterion for `input` on a ring already built from `input.form`,
/// with its smoothness certificate.
pub fn maxvar_in_ring(
    input: &GeometryInput,
    ring: &JacobianRing,
    certificate: &SmoothnessCertificate,
    options: &VariationOptions,
) -> Result<VariationReport, VariationError> {
    assert_eq!(ring.form(), &input.form, "ring does not belong to the input");
    let mut draft = Draft::new(input, options);
    let dims = match prepare(input, certificate, options, &mut draft) {
        Prepared::Ready(dims) => dims,
        Prepared::Stopped(verdict, dims, notes) => {
            return Ok(draft.finish(verdict, Criterion::None, dims, None, notes))
        }
    };
    match input.kind {
        GeometryKind::Hypersurface => hypersurface(input, ring, dims, options, draft),
        GeometryKind::DoubleCover => double_cover(input, ring, dims, options, draft),
    }
}

fn hypersurface(
    input: &GeometryInput,
    ring: &JacobianRing,
    dims: Vec<usize>,
    options: &VariationOptions,
    mut draft: Draft,
) -> Result<VariationReport, VariationError> {
    let (d, e) = (input.d(), input.e);
    if e > d {
        let reason = format!("e = {e} > d = {d}, so R_{{d-e}} = 0");
        return Ok(draft.finish(
            Verdict::TriviallyCertified { reason },
            Criterion::EmptySource,
            Some(dims),
            None,
            Vec::new(),
        ));
    }
    if e == d {
        assert!(
            ring.socle_degree() >= d && dims[d as usize] >= 1,
            "R_d vanishes on a certified ring"
        );
        let reason = format!("e = d = {d}: the source is R_0 and dim R_d = {} > 0", dims[d as usize]);
        return Ok(draft.finish(
            Verdict::TriviallyCertified { reason },
            Criterion::NonzeroTarget,
            Some(dims),
            None,
            Vec::new(),
        ));
    }
    let outcome = injectivity_predicate(ring, e, options.trials, options.seed)?;
    draft.provenance.rank = Some(outcome.rank_verdict.best_rank);
    let (criterion, note) = if e == 1 {
        (Criterion::LinearInjectivity, EQUIVALENCE_NOTE)
    } else {
        (Criterion::FormInjectivity, SUFFICIENT_NOTE)
    };
    let notes = if outcome.certified {
        Vec::new()
    } else {
        vec![note.to_string(), RETRY_NOTE.to_string()]
    };
    Ok(draft.finish(
        predicate_verdict(&outcome),
        criterion,
        Some(dims),
        Some(outcome.rank_verdict),
        notes,
    ))
}

fn double_cover(
    input: &GeometryInput,
    ring: &JacobianRing,
    dims: Vec<usize>,
    options: &VariationOptions,
    mut draft: Draft,
) -> Result<VariationReport, VariationError> {
    let (d, e) = (input.d(), input.e);
    if e >= d {
        let reason = format!("e = {e} >= d = {d}");
        return Ok(draft.finish(
            Verdict::TriviallyCertified { reason },
            Criterion::LargeTwist,
            Some(dims),
            None,
            Vec::new(),
        ));
    }
    let outcome = injectivity_predicate(ring, 1, options.trials, options.seed)?;
    draft.provenance.source_dim = Some(dims[d as usize - 1]);
    draft.provenance.rank = Some(outcome.rank_verdict.best_rank);
    let (criterion, mut notes) = if e == 1 {
        (Criterion::LinearInjectivity, vec![EQUIVALENCE_NOTE.to_string()])
    } else {
        (Criterion::LinearImpliesTwist, vec![TWIST_NOTE.to_string()])
    };
    if outcome.certified {
        notes.clear();
    } else {
        notes.push(RETRY_NOTE.to_string());
    }
    Ok(draft.finish(
        predicate_verdict(&outcome),
        criterion,
        Some(dims),
        Some(outcome.rank_verdict),
        notes,
    ))
}

/// Checks the gate, certifies smoothness and runs the criterion for the
/// input's geometry.
pub fn maxvar(input: &GeometryInput, options: &VariationOptions) -> Result<VariationReport, VariationError> {
    if options.enforce_gates {
        if let Some(detail) = input.gate_violation() {
            let draft = Draft::new(input, options);
            return Ok(draft.finish(
                Verdict::PreconditionViolated { detail },
                Criterion::None,
                None,
                None,
                Vec::new(),
            ));
        }
    }
    let ring = JacobianRing::new(input.form.clone())?;
    let certificate = ring.certify_smooth()?;
    maxvar_in_ring(input, &ring, &certificate, options)
}

/// Maximal variation of `|O_X(e)|` on the smooth hypersurface `X = {F = 0}`.
pub fn maxvar_hypersurface(
    input: &GeometryInput,
    options: &VariationOptions,
) -> Result<VariationReport, VariationError> {
    assert_eq!(input.kind, GeometryKind::Hypersurface);
    maxvar(input, options)
}

/// Maximal variation of `|π^* O_P(e)|` on the double cover branched along
/// `B = {F = 0}`.
pub fn maxvar_double_cover(
    input: &GeometryInput,
    options: &VariationOptions,
) -> Result<VariationReport, VariationError> {
    assert_eq!(input.kind, GeometryKind::DoubleCover);
    maxvar(input, options)
}

/// Integer coefficients in `[-bound, bound]` on every degree-`d` monomial.
pub fn random_integer_terms(n: usize, d: u32, bound: i64, seed: u64) -> Vec<(Monomial, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    enumerate_monomials(n, d)
        .into_iter()
        .map(|m| (m, rng.gen_range(-bound..=bound)))
        .collect()
}

/// Classes of hypersurfaces on which the hypersurface criterion is known to
/// hold for the linear system `|O_X(1)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnownCase {
    /// `d ≥ n + 2`.
    HighDegree,
    /// Surfaces in `P^3` with `d ≥ 4`.
    Surface,
    /// Cubic threefolds in `P^4`.
    CubicThreefold,
}

impl KnownCase {
    pub fn covers(self, n: usize, d: u32) -> bool {
        match self {
            KnownCase::HighDegree => d as usize >= n + 2,
            KnownCase::Surface => n == 3 && d >= 4,
            KnownCase::CubicThreefold => n == 4 && d == 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KnownCaseResult {
    pub case: KnownCase,
    pub n: usize,
    pub d: u32,
    pub form_seed: u64,
    /// Primes tried, in order, with the verdict label at each.
    pub attempts: Vec<(u64, &'static str)>,
    pub certified: bool,
}

/// Runs the hypersurface criterion with `e = 1` on `count` random smooth
/// integer forms per `(case, n, d)`. A form that is not certified at the
/// first prime is retried at each further prime; it fails only if no prime
/// certifies it.
pub fn known_cases_suite(
    cases: &[(KnownCase, usize, u32)],
    count: usize,
    primes: &[u64],
    options: &VariationOptions,
) -> Result<Vec<KnownCaseResult>, VariationError> {
    let mut results = Vec::new();
    for &(case, n, d) in cases {
        assert!(case.covers(n, d), "{case:?} does not cover (n, d) = ({n}, {d})");
        let mut seed = 0u64;
        let mut done = 0;
        while done < count {
            let terms = random_integer_terms(n, d, 100, (n as u64) << 40 | (d as u64) << 32 | seed);
            seed += 1;
            let mut attempts = Vec::new();
            let mut certified = false;
            let mut smooth_anywhere = false;
            for &p in primes {
                let field = PrimeField::new(p).map_err(JacobianError::from)?;
                let form = HomogeneousForm::from_integer_terms(n, d, field, &terms).map_err(JacobianError::from)?;
                let report = maxvar_hypersurface(&GeometryInput::new(GeometryKind::Hypersurface, form, 1), options)?;
                attempts.push((p, report.verdict.label()));
                if !matches!(report.verdict, Verdict::SmoothnessNotCertified { .. }) {
                    smooth_anywhere = true;
                }
                if report.verdict.is_certified() {
                    certified = true;
                    break;
                }
            }
            if !smooth_anywhere {
                continue;
            }
            results.push(KnownCaseResult {
                case,
                n,
                d,
                form_seed: seed - 1,
                attempts,
                certified,
            });
            done += 1;
        }
    }
    Ok(results)
}
