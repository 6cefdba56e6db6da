use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use severi_core::polynomial::{finite_difference_degree, q_polynomial};
use severi_core::{interpolate, node_polynomial, severi_degree, RationalPolynomial};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #[test]
    fn interpolation_roundtrip(
        coeffs in prop::collection::vec((-50i64..50, 1i64..6), 1..6),
        start in -5i64..5,
    ) {
        let p = RationalPolynomial::new(coeffs.iter().map(|&(n, d)| r(n, d)).collect());
        let points: Vec<(i64, BigRational)> =
            (start..start + coeffs.len() as i64).map(|x| (x, p.eval_int(x))).collect();
        let q = interpolate(&points).unwrap();
        prop_assert_eq!(&q, &p);
        for (x, y) in &points {
            prop_assert_eq!(&q.eval_int(*x), y);
        }
    }

    #[test]
    fn coefficient_strings_roundtrip(coeffs in prop::collection::vec((-50i64..50, 1i64..6), 0..6)) {
        let p = RationalPolynomial::new(coeffs.iter().map(|&(n, d)| r(n, d)).collect());
        prop_assert_eq!(RationalPolynomial::from_coeff_strings(&p.to_coeff_strings()).unwrap(), p);
    }
}

#[test]
fn interpolation_examples() {
    let steiner = interpolate(&[(1, r(0, 1)), (2, r(3, 1)), (3, r(12, 1))]).unwrap();
    assert_eq!(steiner, RationalPolynomial::from_integers(&[3, -6, 3]));
    assert_eq!(
        interpolate(&[(0, r(7, 3))]).unwrap(),
        RationalPolynomial::constant(r(7, 3))
    );
    assert!(interpolate(&[(1, r(1, 1)), (1, r(2, 1))]).is_err());
}

#[test]
fn difference_degrees() {
    assert_eq!(finite_difference_degree(&[r(5, 1), r(5, 1), r(5, 1)]), 0);
    let steiner: Vec<_> = (1..=6).map(|d| r(3 * (d - 1) * (d - 1), 1)).collect();
    assert_eq!(finite_difference_degree(&steiner), 2);
    let linear: Vec<_> = (4..=9).map(|k| r(40 * k - 16, 1)).collect();
    assert_eq!(finite_difference_degree(&linear), 1);
}

#[test]
fn node_polynomials_reproduce_severi_degrees() {
    for delta in 1..=3u32 {
        let p = node_polynomial(delta).unwrap();
        assert_eq!(p.degree(), 2 * delta as usize);
        for d in delta + 2..=delta + 12 {
            assert_eq!(
                p.eval_int(d as i64),
                BigRational::from_integer(severi_degree(d, delta).into()),
                "delta = {delta}, d = {d}"
            );
        }
    }
}

#[test]
fn known_node_polynomials() {
    assert_eq!(
        node_polynomial(1).unwrap(),
        RationalPolynomial::from_integers(&[3, -6, 3])
    );
    let cayley = node_polynomial(2).unwrap();
    assert_eq!(cayley.factored("d"), "3/2 (d - 1) (d - 2) (3d^2 - 3d - 11)");
    let roberts = RationalPolynomial::new(vec![
        r(525, 1),
        r(-829, 2),
        r(-229, 1),
        r(423, 2),
        r(9, 2),
        r(-27, 1),
        r(9, 2),
    ]);
    assert_eq!(node_polynomial(3).unwrap(), roberts);
}

#[test]
fn q_polynomials_are_quadratic() {
    assert_eq!(
        q_polynomial(1).unwrap(),
        RationalPolynomial::from_integers(&[3, -6, 3])
    );
    for delta in 1..=3 {
        assert!(q_polynomial(delta).unwrap().degree() <= 2);
    }
}
