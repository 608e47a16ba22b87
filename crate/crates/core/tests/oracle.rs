//! The brute-force oracle against the library, and the oracle against values
//! worked out by hand.

mod common;

use common::*;
use num_bigint::BigInt;
use realrank::apolarity::{complex_rank, ApolarProfile};
use realrank::real_rank::{admissible_rank, real_rank, SearchBudget};
use realrank::BinaryForm;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn oracle_square_free_test() {
    assert!(square_free(&ints(&[1, 0, -1])));
    assert!(!square_free(&ints(&[1, 2, 1])));
    assert!(!square_free(&ints(&[0, 0, 1])));
    assert!(square_free(&ints(&[0, 1, 0])));
    assert!(!square_free(&ints(&[0, 1, 0, 0])));
    assert!(square_free(&ints(&[1, 0, 0, -1])));
    assert!(!square_free(&ints(&[0, 0, 0])));
}

#[test]
fn oracle_kernel_by_hand() {
    // x^2 - y^2: a = (1, 0, -1); b0 a0 + b1 a1 + b2 a2 = b0 - b2 = 0
    let k = kernel(&[1, 0, -1], 2);
    assert_eq!(k.len(), 2);
    for v in &k {
        assert_eq!(&v[0], &v[2]);
    }
    // x^2 y = 3 a_1 x^2 y with a_1 = 1/3: Y^2 is the only apolar quadric
    let k = kernel(&[0, 1, 0, 0], 2);
    assert_eq!(k.len(), 1);
    assert_eq!(k[0], vec![q(0), q(0), q(1)]);
}

#[test]
fn oracle_ranks_by_hand() {
    assert_eq!(oracle_rank(&[1, 0, 0, 1]), 2);
    assert_eq!(oracle_rank(&[0, 1, 0, 0]), 3);
    assert_eq!(oracle_rank(&[1, 0, 0, 0, 0]), 1);
    for d in 3..=5 {
        let mut c = vec![0; d + 1];
        c[1] = 1;
        assert_eq!(oracle_rank(&c), d, "x^{}y", d - 1);
    }
}

/// Kernel dimensions and ranks agree with the library on all small forms.
#[test]
fn library_matches_oracle_for_low_degree() {
    for d in 1..=4 {
        for c in canonical_corpus(d, 2) {
            let f = BinaryForm::from_ints(&c).unwrap();
            let profile = ApolarProfile::new(&f).unwrap();
            for s in 1..=d {
                assert_eq!(profile.kernel_dim(s), kernel(&c, s).len(), "{c:?} s={s}");
            }
            let expected = oracle_rank(&c);
            assert_eq!(complex_rank(&profile).unwrap().0, expected, "{c:?}");
            assert_eq!(admissible_rank(&profile).unwrap().0, expected, "{c:?}");
        }
    }
}

/// Real rank of `x^(d-1) y` is `d`: no square-free apolar form below `d`,
/// and a real-rooted one at `d`.
#[test]
fn real_rank_of_near_pure_powers() {
    for d in 3..=5 {
        let mut c = vec![0i64; d + 1];
        c[1] = 1;
        assert_eq!(oracle_rank(&c), d);
        assert!(real_rooted_top_member(&c, 3).is_some(), "d={d}");
        let f = BinaryForm::from_ints(&c).unwrap();
        let profile = ApolarProfile::new(&f).unwrap();
        let (r, _) = real_rank(&profile, &SearchBudget::default()).unwrap();
        assert_eq!(r.exact(), Some(d));
    }
}

/// A sampled quartic of real rank 4: no real-rooted square-free cubic is
/// apolar to it (checked completely by the library on a pencil) while the
/// oracle finds a real-rooted apolar quartic.
#[test]
fn quartic_with_real_rank_four() {
    use realrank::sampler::{sample_forms, SampleConfig};
    let samples = sample_forms(&SampleConfig::new(4, 400, 100, 1)).unwrap();
    let budget = SearchBudget::default();
    let hit = samples
        .iter()
        .find(|s| {
            let p = ApolarProfile::new(&s.form).unwrap();
            real_rank(&p, &budget).unwrap().0.exact() == Some(4)
        })
        .expect("some quartic of real rank 4");
    let c = &hit.coefficients;
    assert_eq!(oracle_rank(c), 3);
    assert_eq!(kernel(c, 3).len(), 2);
    assert!(real_rooted_top_member(c, 4).is_some());
}
