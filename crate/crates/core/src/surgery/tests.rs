use num_bigint::BigInt;
use num_integer::Integer;

use super::*;

#[test]
fn hopf_test_examples() {
    assert!(hopf_s3_test(1, 1, 0, 1).unwrap());
    assert!(hopf_s3_test(2, 1, 1, 1).unwrap());
    assert!(!hopf_s3_test(2, 1, 2, 1).unwrap());
}

#[test]
fn hopf_test_rejects_bad_slopes() {
    assert!(hopf_s3_test(0, 0, 1, 1).is_err());
    assert!(hopf_s3_test(1, 1, 0, 0).is_err());
    assert!(hopf_s3_test(2, 4, 1, 1).is_err());
    assert!(hopf_s3_test(1, 0, 3, 6).is_err());
}

#[test]
fn shared_slope_examples() {
    assert_eq!(shared_slopes(2, -1).unwrap(), (3, 4, 5, 6));
    assert_eq!(shared_slopes(0, 1).unwrap(), (-3, -2, -1, -2));
    assert_eq!(shared_slopes(-4, -1).unwrap(), (-3, -2, -1, -6));
    assert!(shared_slopes(0, 0).is_err());
    assert!(shared_slopes(0, 2).is_err());
}

#[test]
fn shared_slopes_first_three_strictly_increase() {
    for n in -50..=50 {
        for lk in [-1, 1] {
            let (a, b, c, _) = shared_slopes(n, lk).unwrap();
            assert!(a < b && b < c, "n = {n}, lk = {lk}");
        }
    }
}

#[test]
fn homology_order_examples() {
    assert_eq!(homology_order(&[vec![1]]).unwrap(), BigInt::from(1));
    assert_eq!(homology_order(&[vec![0]]).unwrap(), BigInt::from(0));
    assert_eq!(
        homology_order(&[vec![2, 1], vec![1, 1]]).unwrap(),
        BigInt::from(1)
    );
    assert!(homology_order(&[vec![1, 2]]).is_err());
}

#[test]
fn hopf_test_agrees_with_integer_framed_determinant() {
    for p in -10..=10i64 {
        for r in -10..=10i64 {
            let lhs = hopf_s3_test(p, 1, r, 1).unwrap();
            let order = homology_order(&[vec![p, 1], vec![1, r]]).unwrap();
            assert_eq!(lhs, order == BigInt::from(1), "p = {p}, r = {r}");
        }
    }
}

#[test]
fn determinant_matches_cofactor_expansion_on_3x3() {
    let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
    assert_eq!(homology_order(&m).unwrap(), BigInt::from(4));
    let singular = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]];
    assert_eq!(homology_order(&singular).unwrap(), BigInt::from(0));
    let empty: Vec<Vec<i64>> = vec![];
    assert_eq!(homology_order(&empty).unwrap(), BigInt::from(1));
}

#[test]
fn hopf_truth_table_over_small_coprime_slopes() {
    for p in -5..=5i64 {
        for q in -5..=5i64 {
            if (p, q) == (0, 0) || p.gcd(&q) != 1 {
                continue;
            }
            for r in -5..=5i64 {
                for s in -5..=5i64 {
                    if (r, s) == (0, 0) || r.gcd(&s) != 1 {
                        continue;
                    }
                    let want = (p * r - q * s).abs() == 1;
                    assert_eq!(hopf_s3_test(p, q, r, s).unwrap(), want, "({p},{q},{r},{s})");
                }
            }
        }
    }
}
