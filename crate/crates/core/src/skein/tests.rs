use num_bigint::BigInt;
use num_traits::Signed;

use super::*;
use crate::diagram::{braid_closure, prime_knot_corpus, random_diagram, two_bridge_knot};

fn pd(s: &str) -> Diagram {
    s.parse().unwrap()
}

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

/// |H(1, z)| at z^2 = -4: the knot determinant. Checks that the z-exponents
/// are even and non-negative, as they must be for a knot.
fn determinant(h: &HomflyPoly) -> BigInt {
    let mut acc = BigInt::from(0);
    let mut by_z: std::collections::BTreeMap<i64, BigInt> = std::collections::BTreeMap::new();
    for ((_, ze), c) in h.iter() {
        *by_z.entry(ze).or_default() += c;
    }
    for (ze, c) in by_z {
        assert!(
            ze >= 0 && ze % 2 == 0,
            "odd/negative z-exponent {} for a knot",
            ze
        );
        acc += c * BigInt::from(-4).pow((ze / 2) as u32);
    }
    acc.abs()
}

#[test]
fn unlinks_and_unknot() {
    let e = SkeinEngine::new();
    assert!(e.f_polynomial(&Diagram::unknot()).unwrap().is_one());
    assert!(e.homfly(&Diagram::unknot()).unwrap() == HomflyPoly::one());
    assert_eq!(e.f_polynomial(&Diagram::unlink(2)).unwrap(), lp("v^-2 - 1"));
    assert_eq!(
        e.homfly(&Diagram::unlink(2)).unwrap(),
        HomflyPoly::unlink_factor()
    );
    // a kinked unknot and a 2-crossing split pair reach the same values
    let kink = braid_closure(2, &[1]).unwrap();
    assert!(e.f_polynomial(&kink).unwrap().is_one());
    assert!(e.homfly(&kink).unwrap() == HomflyPoly::one());
}

#[test]
fn trefoil_and_figure_eight() {
    let e = SkeinEngine::new();
    // right trefoil as the closure of sigma_1^3
    let right = braid_closure(2, &[1, 1, 1]).unwrap();
    assert_eq!(e.f_polynomial(&right).unwrap(), lp("-v^4 + 2v^2"));
    let h = e.homfly(&right).unwrap();
    // H = -v^4 + 2v^2 + v^2 z^2
    assert_eq!(h.coeff(4, 0), BigInt::from(-1));
    assert_eq!(h.coeff(2, 0), BigInt::from(2));
    assert_eq!(h.coeff(2, 2), BigInt::from(1));
    assert_eq!(h.num_terms(), 3);
    // left trefoil via the standard PD
    let left = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    assert_eq!(e.f_polynomial(&left).unwrap(), lp("2v^-2 - v^-4"));
    // figure-eight
    let f8 = two_bridge_knot(5, 2).unwrap();
    assert_eq!(e.f_polynomial(&f8).unwrap(), lp("v^2 - 1 + v^-2"));
    let h8 = e.homfly(&f8).unwrap();
    assert_eq!(h8.coeff(2, 0), BigInt::from(1));
    assert_eq!(h8.coeff(0, 0), BigInt::from(-1));
    assert_eq!(h8.coeff(-2, 0), BigInt::from(1));
    assert_eq!(h8.coeff(0, 2), BigInt::from(-1));
    assert_eq!(h8.num_terms(), 4);
}

#[test]
fn hopf_link_and_split_formula() {
    let e = SkeinEngine::new();
    let hopf = braid_closure(2, &[1, 1]).unwrap();
    let f = e.f_polynomial(&hopf).unwrap();
    assert_eq!(f, lp("1 - v^2"));
    let ones = [LaurentPoly::one(), LaurentPoly::one()];
    let lk1 = vec![vec![0, 1], vec![1, 0]];
    assert_eq!(f_split_formula(&ones, &lk1).unwrap(), f);
    // single unknot with an empty matrix
    assert!(f_split_formula(&[LaurentPoly::one()], &[])
        .unwrap()
        .is_one());
    // dimension and symmetry errors
    assert!(f_split_formula(&ones, &[vec![0, 1]]).is_err());
    assert!(f_split_formula(&ones, &[vec![0, 1], vec![2, 0]]).is_err());
    assert!(f_split_formula(&[], &[]).is_err());
}

#[test]
fn corpus_oracle_equivalence_and_determinants() {
    let e = SkeinEngine::new();
    // C(p/q) has determinant p: validates that each corpus diagram is the
    // intended knot
    let fractions = [3u64, 5, 5, 7, 9, 11, 13, 7, 11, 13, 15, 17, 19, 21];
    let corpus = prime_knot_corpus();
    assert_eq!(corpus.len(), 14);
    let mut homflys = Vec::new();
    for ((name, d), &p) in corpus.iter().zip(fractions.iter()) {
        let h = e.homfly(d).unwrap();
        assert_eq!(determinant(&h), BigInt::from(p), "determinant of {}", name);
        let direct = e.f_polynomial(d).unwrap();
        let via_h = e.f_from_homfly(d).unwrap();
        assert_eq!(direct, via_h, "oracle mismatch on {}", name);
        homflys.push(h);
    }
    // the 14 knots are pairwise distinct, and HOMFLYPT sees that
    for i in 0..homflys.len() {
        for j in 0..i {
            assert_ne!(homflys[i], homflys[j], "{} vs {}", corpus[i].0, corpus[j].0);
        }
    }
}

#[test]
fn random_diagrams_oracle_and_strategy_independence() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let e1 = SkeinEngine::new();
    let e2 = SkeinEngine::new().with_strategy(Strategy::Shifted(1));
    for _ in 0..15 {
        let d = random_diagram(&mut rng, 4, 9);
        let f1 = e1.f_polynomial(&d).unwrap();
        let f2 = e2.f_polynomial(&d).unwrap();
        assert_eq!(f1, f2);
        let h1 = e1.homfly(&d).unwrap();
        let h2 = e2.homfly(&d).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(f1, e1.f_from_homfly(&d).unwrap());
    }
}

#[test]
fn mirror_property() {
    let e = SkeinEngine::new();
    for (name, d) in prime_knot_corpus() {
        let f = e.f_polynomial(&d).unwrap();
        let fm = e.f_polynomial(&d.mirror_diagram()).unwrap();
        assert_eq!(fm, f.mirror(), "mirror property on {}", name);
    }
}

#[test]
fn workers_agree_with_sequential() {
    let seq = SkeinEngine::new();
    let par = SkeinEngine::new().with_workers(4);
    for (_, d) in prime_knot_corpus().into_iter().take(6) {
        assert_eq!(seq.f_polynomial(&d).unwrap(), par.f_polynomial(&d).unwrap());
        assert_eq!(seq.homfly(&d).unwrap(), par.homfly(&d).unwrap());
    }
}

#[test]
fn budget_errors() {
    let tiny = SkeinEngine::new().with_budget(Budget {
        max_crossings: 2,
        timeout: None,
    });
    let d = two_bridge_knot(7, 2).unwrap();
    assert!(matches!(
        tiny.f_polynomial(&d),
        Err(Error::BudgetExceeded(_))
    ));
    let instant = SkeinEngine::new().with_budget(Budget {
        max_crossings: 64,
        timeout: Some(Duration::from_nanos(1)),
    });
    assert!(matches!(instant.homfly(&d), Err(Error::BudgetExceeded(_))));
}

#[test]
fn choose_crossing_behaviour() {
    let t = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    let order = TraversalOrder::default_for(&t);
    let c = choose_crossing(&t, &order).unwrap();
    assert!(c < 3);
    let u = Diagram::unknot();
    let order = TraversalOrder::default_for(&u);
    assert!(choose_crossing(&u, &order).is_err());
}

#[test]
fn stats_track_cache_activity() {
    let e = SkeinEngine::new();
    let d = two_bridge_knot(7, 3).unwrap();
    e.f_polynomial(&d).unwrap();
    let s1 = e.stats();
    assert!(s1.nodes > 0 && s1.misses > 0);
    // second run is answered from the cache at the root
    e.f_polynomial(&d).unwrap();
    let s2 = e.stats();
    assert_eq!(s2.misses, s1.misses);
    assert!(s2.hits > s1.hits);
    e.reset_stats();
    assert_eq!(e.stats(), CacheStats::default());
}
