use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::polyring::{enumerate_monomials, parse_form, DEFAULT_PRIME, SECONDARY_PRIME};

fn small() -> PrimeField {
    PrimeField::new(10007).unwrap()
}

fn random_ring(n: usize, d: u32, field: PrimeField, seed: u64, options: RingOptions) -> JacobianRing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    JacobianRing::with_options(HomogeneousForm::random(n, d, field, &mut rng), options).unwrap()
}

/// Standard monomials and normal forms read straight off the echelon form of
/// the Macaulay matrix.
fn macaulay_piece(ring: &JacobianRing, p: u32) -> (Vec<usize>, Vec<(usize, Vec<u64>)>) {
    let m = ring.ideal_matrix(p).unwrap();
    let ech = m.column_echelon();
    let free = ech.free_columns();
    let field = ring.field();
    let nfs = ech
        .pivot_columns
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let coords = free.iter().map(|&f| field.neg(ech.reduced.get(k, f))).collect();
            (c, coords)
        })
        .collect();
    (free, nfs)
}

fn assert_engine_matches_macaulay(ring: &JacobianRing, top: u32) {
    for p in 0..=top {
        let piece = ring.piece(p).unwrap();
        let (free, nfs) = macaulay_piece(ring, p);
        let standard: Vec<usize> = piece.standard_indices().iter().map(|&i| i as usize).collect();
        assert_eq!(standard, free, "standard set differs at degree {p}");
        for (c, coords) in nfs {
            let mut acc = vec![0u64; piece.dim()];
            piece.accumulate_nf(ring.field(), c, 1, &mut acc);
            assert_eq!(acc, coords, "normal form of monomial {c} differs at degree {p}");
        }
    }
}

#[test]
fn fermat_quartic_ideal_matrices() {
    let ring = JacobianRing::fermat(3, 4, small()).unwrap();
    let j3 = ring.ideal_matrix(3).unwrap();
    assert_eq!((j3.rows(), j3.cols()), (4, 20));
    assert_eq!(j3.rank(), 4);
    assert_eq!(j3.dense_rank_oracle().unwrap(), 4);
    let j4 = ring.ideal_matrix(4).unwrap();
    assert_eq!((j4.rows(), j4.cols()), (16, 35));
    assert_eq!(j4.rank(), 16);
    assert_eq!(j4.dense_rank_oracle().unwrap(), 16);
    let j0 = ring.ideal_matrix(0).unwrap();
    assert_eq!((j0.rows(), j0.cols()), (0, 1));
}

#[test]
fn fermat_quartic_dimensions() {
    let ring = JacobianRing::fermat(3, 4, small()).unwrap();
    assert_eq!(ring.socle_degree(), 8);
    assert_eq!(ring.graded_dim(3).unwrap(), 16);
    assert_eq!(ring.graded_dim(4).unwrap(), 19);
    assert_eq!(ring.graded_dim(9).unwrap(), 0);
    assert_eq!(ring.graded_dim(0).unwrap(), 1);
    for p in 0..=9 {
        let oracle = binomial(3 + p as usize, 3) - ring.ideal_matrix(p).unwrap().dense_rank_oracle().unwrap();
        assert_eq!(ring.graded_dim(p).unwrap(), oracle);
    }
}

#[test]
fn fermat_quartic_cubic_basis_excludes_pure_cubes() {
    let ring = JacobianRing::fermat(3, 4, small()).unwrap();
    let qb = ring.quotient_basis(3).unwrap();
    assert_eq!(qb.len(), 16);
    let pure: Vec<Monomial> = (0..4)
        .map(|i| {
            let mut e = vec![0u16; 4];
            e[i] = 3;
            Monomial::new(e)
        })
        .collect();
    let expected: Vec<Monomial> = enumerate_monomials(3, 3)
        .into_iter()
        .filter(|m| !pure.contains(m))
        .collect();
    assert_eq!(qb.monomials, expected);
    for m in &pure {
        assert!(ring
            .in_ideal(&HomogeneousForm::monomial(3, small(), m.clone()))
            .unwrap());
    }
    for m in &expected {
        assert!(!ring
            .in_ideal(&HomogeneousForm::monomial(3, small(), m.clone()))
            .unwrap());
    }
    assert_eq!(ring.quotient_basis(0).unwrap().monomials, vec![Monomial::one(4)]);
    assert!(ring.quotient_basis(9).unwrap().is_empty());
}

#[test]
fn fermat_hilbert_functions() {
    let cert = JacobianRing::fermat(3, 4, small()).unwrap().certify_smooth().unwrap();
    assert_eq!(
        cert,
        SmoothnessCertificate::Certified {
            hilbert: HilbertFunction(vec![1, 4, 10, 16, 19, 16, 10, 4, 1])
        }
    );
    let cubic = JacobianRing::fermat(4, 3, small()).unwrap().certify_smooth().unwrap();
    assert_eq!(cubic.dims(), vec![1, 5, 10, 10, 5, 1, 0]);
    let sextic = JacobianRing::fermat(2, 6, small()).unwrap();
    assert_eq!(sextic.graded_dim(5).unwrap(), 18);
    assert_eq!(sextic.graded_dim(6).unwrap(), 19);
}

#[test]
fn singular_forms_are_not_certified() {
    let f = parse_form("x0^4", 3, small()).unwrap();
    let cert = JacobianRing::new(f).unwrap().certify_smooth().unwrap();
    match cert {
        SmoothnessCertificate::NotCertified { degree, dim, .. } => {
            assert_eq!(degree, 9);
            assert_eq!(dim, binomial(3 + 9, 3) - binomial(3 + 9 - 3, 3));
        }
        other => panic!("expected NotCertified, got {other:?}"),
    }
    // a node: x0*x1*x2 + x3^3 has singular points on the plane x3 = 0
    let node = parse_form("x0*x1*x2 + x3^3", 3, small()).unwrap();
    assert!(!JacobianRing::new(node)
        .unwrap()
        .certify_smooth()
        .unwrap()
        .is_certified());
}

#[test]
fn random_quartic_is_certified() {
    let ring = random_ring(3, 4, small(), 1, RingOptions::default());
    let cert = ring.certify_smooth().unwrap();
    assert!(cert.is_certified());
    assert_eq!(cert.dims(), {
        let mut v = ci_hilbert_coefficients(3, 4);
        v.push(0);
        v
    });
}

#[test]
fn engine_matches_macaulay_echelon() {
    let cases = [
        (2, 4, 11u64),
        (3, 3, 12),
        (3, 4, 13),
        (2, 5, 14),
        (4, 3, 15),
        (1, 6, 16),
    ];
    for (n, d, seed) in cases {
        for floor in [false, true] {
            let options = RingOptions {
                use_dimension_floor: floor,
            };
            let ring = random_ring(n, d, small(), seed, options);
            assert_engine_matches_macaulay(&ring, ring.socle_degree() + 1);
        }
    }
    let fermat = JacobianRing::fermat(3, 4, small()).unwrap();
    assert_engine_matches_macaulay(&fermat, 9);
}

#[test]
fn engine_matches_macaulay_on_degenerate_forms() {
    let field = PrimeField::new(101).unwrap();
    for text in ["x0^4", "x0^2*x1^2 + x2^4", "x0*x1*x2*x3", "x0^3*x1 + x1^3*x2 + x2^3*x3"] {
        for floor in [false, true] {
            let f = parse_form(text, 3, field).unwrap();
            let ring = JacobianRing::with_options(
                f,
                RingOptions {
                    use_dimension_floor: floor,
                },
            )
            .unwrap();
            assert_engine_matches_macaulay(&ring, 9);
        }
    }
}

#[test]
fn two_primes_agree() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let terms: Vec<(Monomial, i64)> = enumerate_monomials(3, 4)
        .into_iter()
        .map(|m| (m, rng.gen_range(-50..=50)))
        .collect();
    let mut hilberts = Vec::new();
    for p in [DEFAULT_PRIME, SECONDARY_PRIME] {
        let field = PrimeField::new(p).unwrap();
        let f = HomogeneousForm::from_integer_terms(3, 4, field, &terms).unwrap();
        let cert = JacobianRing::new(f).unwrap().certify_smooth().unwrap();
        hilberts.push(cert.dims());
    }
    assert_eq!(hilberts[0], hilberts[1]);
}

#[test]
fn normal_form_and_lift() {
    let ring = random_ring(3, 4, small(), 21, RingOptions::default());
    let field = small();
    for g in ring.partials() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = HomogeneousForm::random(3, 2, field, &mut rng);
        assert!(ring.in_ideal(&g.multiply(&h).unwrap()).unwrap());
    }
    let coords: Vec<u64> = (0..ring.graded_dim(4).unwrap() as u64).collect();
    let lifted = ring.lift(4, &coords).unwrap();
    assert_eq!(ring.normal_form(&lifted).unwrap(), coords);
}

#[test]
fn gates() {
    let f = parse_form("x0^3 + x1^3", 1, PrimeField::new(3).unwrap()).unwrap();
    assert!(matches!(
        JacobianRing::new(f),
        Err(JacobianError::FieldTooSmall { prime: 3, degree: 3 })
    ));
    let lin = parse_form("x0 + x1", 1, small()).unwrap();
    assert!(matches!(JacobianRing::new(lin), Err(JacobianError::DegreeTooSmall(1))));
    let big = JacobianRing::fermat(8, 20, small()).unwrap();
    assert!(matches!(big.certify_smooth(), Err(JacobianError::ResourceLimit { .. })));
}

#[test]
fn concurrent_requests_agree() {
    let ring = random_ring(3, 4, small(), 8, RingOptions::default());
    let shared = &ring;
    let dims: Vec<Vec<usize>> = std::thread::scope(|s| {
        let handles: Vec<_> = [9u32, 4, 7, 2]
            .into_iter()
            .map(|top| s.spawn(move || shared.hilbert_function(top).unwrap()))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let full = ring.hilbert_function(9).unwrap();
    for d in dims {
        assert_eq!(d[..], full[..d.len()]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certified_rings_are_gorenstein(seed in any::<u64>(), n in 1usize..=3, d in 3u32..=4) {
        let ring = random_ring(n, d, small(), seed, RingOptions::default());
        if let SmoothnessCertificate::Certified { hilbert } = ring.certify_smooth().unwrap() {
            prop_assert!(hilbert.is_palindromic());
            prop_assert_eq!(hilbert.values()[0], 1);
            prop_assert_eq!(*hilbert.values().last().unwrap(), 1);
            prop_assert_eq!(hilbert.values(), &ci_hilbert_coefficients(n, d)[..]);
            for p in 0..=ring.socle_degree() {
                prop_assert_eq!(ring.quotient_basis(p).unwrap().len(), ring.graded_dim(p).unwrap());
            }
        }
    }

    #[test]
    fn floor_does_not_change_pieces(seed in any::<u64>(), n in 1usize..=3, d in 3u32..=5) {
        let a = random_ring(n, d, small(), seed, RingOptions { use_dimension_floor: true });
        let b = random_ring(n, d, small(), seed, RingOptions { use_dimension_floor: false });
        for p in 0..=a.socle_degree() + 1 {
            prop_assert_eq!(a.quotient_basis(p).unwrap(), b.quotient_basis(p).unwrap());
        }
    }
}
