mod common;

use common::*;
use dynsamp::completeness::{
    fitting_projector_eig1, has_eigenvalue_one, placement_default, placement_greedy,
    placement_search, single_source_construct, single_source_exists, single_vector_test,
    spectral_projectors, test_auto, test_general, test_rank, verify_certificate, Method,
    ProblemDef, VerdictRecord,
};
use dynsamp::field::{unit, Mat, Q};
use dynsamp::{Error, Execution};
use proptest::prelude::*;

type Problem = (Mat<Q>, Vec<Vec<Q>>, Vec<Vec<Q>>);

fn independent(d: usize, k: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(nonzero_vector(d, 2), k)
        .prop_filter("independent", move |v| rank_of_columns(d, v) == k)
}

fn problems(max_d: usize) -> impl Strategy<Value = Problem> {
    (2..=max_d).prop_flat_map(|d| {
        (1..=2usize.min(d), 1..=3usize).prop_flat_map(move |(k, l)| {
            (
                square(d),
                independent(d, k),
                prop::collection::vec(nonzero_vector(d, 2), l),
            )
        })
    })
}

fn dense_problems(max_d: usize) -> impl Strategy<Value = Problem> {
    (2..=max_d).prop_flat_map(|d| {
        (1..=2usize.min(d), 1..=3usize).prop_flat_map(move |(k, l)| {
            (
                matrix(d, d, 2),
                independent(d, k),
                prop::collection::vec(nonzero_vector(d, 2), l),
            )
        })
    })
}

fn standard(d: usize) -> Vec<Vec<Q>> {
    (0..d).map(|k| unit(d, k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_and_general_tests_agree((a, w, b) in dense_problems(5)) {
        prop_assume!(!has_eigenvalue_one(&a));
        let p = ProblemDef::new(a, &w, b).unwrap();
        let rank = test_rank(&p).unwrap();
        let general = test_general(&p).unwrap();
        prop_assert_eq!(rank.complete, general.complete);
        prop_assert_eq!(rank.rank, general.rank);
        prop_assert_eq!(test_auto(&p).unwrap().method, Method::RankTest);
    }

    #[test]
    fn verdict_ignores_sensor_order((a, w, b) in problems(5), shift in 0usize..3) {
        let p = ProblemDef::new(a, &w, b.clone()).unwrap();
        let base = test_general(&p).unwrap();
        let mut rotated = b.clone();
        rotated.rotate_left(shift % b.len());
        let mut reversed = b;
        reversed.reverse();
        for order in [rotated, reversed] {
            let v = test_general(&p.with_sensors(order).unwrap()).unwrap();
            prop_assert_eq!(v.complete, base.complete);
            prop_assert_eq!(v.rank, base.rank);
        }
    }

    #[test]
    fn complete_needs_enough_sensors((a, w, b) in problems(5)) {
        let p = ProblemDef::new(a, &w, b.clone()).unwrap();
        let v = test_auto(&p).unwrap();
        if v.complete {
            prop_assert!(b.len() >= w.len());
            prop_assert!(rank_of_columns(p.d(), &b) >= w.len());
        }
        prop_assert!(v.rank <= v.required);
    }

    #[test]
    fn certificate_from_chain((a, w, b) in problems(5)) {
        let p = ProblemDef::new(a, &w, b.clone()).unwrap();
        let chain = p.chain().unwrap();
        let g = chain.characteristic_vectors();
        let l = b.len();
        let mut m = Mat::zeros(l, l);
        for (j, link) in chain.links.iter().enumerate() {
            for i in 0..l {
                m[(i, j)] = link.image_coeffs[i].clone();
            }
        }
        prop_assert_eq!(verify_certificate(&p, &g, &m).unwrap(), test_general(&p).unwrap().complete);
        let mut broken = m.clone();
        broken[(0, 0)] = broken[(0, 0)].clone() + q(1);
        prop_assert!(!verify_certificate(&p, &g, &broken).unwrap());
    }

    #[test]
    fn fitting_projector_matches_spectral(seed in any::<u64>(), d in 1usize..=6) {
        let (a, factors) = conjugated_jordan(seed, d, false);
        let e1 = fitting_projector_eig1(&a).unwrap();
        let spectral = spectral_projectors(&a, &factors).unwrap();
        match factors.iter().position(|(l, _)| *l == q(1)) {
            Some(i) => prop_assert_eq!(&e1, &spectral[i]),
            None => prop_assert!(e1.is_zero()),
        }
        prop_assert_eq!(e1.mul(&e1).unwrap(), e1.clone());
        prop_assert_eq!(e1.mul(&a).unwrap(), a.mul(&e1).unwrap());
    }

    #[test]
    fn single_source_agrees_with_search(a in (2usize..=5).prop_flat_map(square), k in 0usize..5) {
        let d = a.rows();
        let omega = unit(d, k % d);
        let exists = single_source_exists(&a, &omega).unwrap();
        let mut pool = standard(d);
        if exists {
            let b = single_source_construct(&a, &omega).unwrap();
            prop_assert!(single_vector_test(&a, &omega, &b).unwrap());
            pool.push(b);
        } else {
            prop_assert_eq!(single_source_construct(&a, &omega), Err(Error::NotRecoverable));
        }
        let base = ProblemDef::new(a, &[omega], vec![]).unwrap();
        let found = placement_search(&base, &pool, 1, Execution::Sequential).unwrap();
        prop_assert_eq!(found.size() == Some(1), exists);
        for s in &found.subsets {
            prop_assert!(test_general(&base.with_sensors(vec![pool[s[0]].clone()]).unwrap()).unwrap().complete);
        }
    }

    #[test]
    fn greedy_and_default_are_minimal((a, w, _) in dense_problems(5)) {
        prop_assume!(!has_eigenvalue_one(&a));
        let d = a.rows();
        let base = ProblemDef::new(a.clone(), &w, vec![]).unwrap();
        let default = placement_default(&a, &w).unwrap();
        prop_assert!(test_general(&base.with_sensors(default).unwrap()).unwrap().complete);
        let chosen = placement_greedy(&base, &standard(d)).unwrap().expect("standard basis is complete");
        prop_assert_eq!(chosen.len(), w.len());
        let sensors = chosen.iter().map(|&i| unit(d, i)).collect();
        prop_assert!(test_general(&base.with_sensors(sensors).unwrap()).unwrap().complete);
        let found = placement_search(&base, &standard(d), w.len(), Execution::Parallel).unwrap();
        prop_assert_eq!(found.size(), Some(w.len()));
        prop_assert!(found.subsets.contains(&chosen));
    }

    #[test]
    fn search_is_execution_independent((a, w, _) in problems(4), max_l in 1usize..=3) {
        let d = a.rows();
        let base = ProblemDef::new(a, &w, vec![]).unwrap();
        let pool = standard(d);
        let seq = placement_search(&base, &pool, max_l, Execution::Sequential).unwrap();
        let par = placement_search(&base, &pool, max_l, Execution::Parallel).unwrap();
        prop_assert_eq!(&seq, &par);
        let mut sorted = seq.subsets.clone();
        sorted.sort();
        prop_assert_eq!(sorted, seq.subsets);
    }

    #[test]
    fn verdict_record_round_trips((a, w, b) in problems(4)) {
        let p = ProblemDef::new(a, &w, b).unwrap();
        let record = test_auto(&p).unwrap().record();
        let text = serde_json::to_string(&record).unwrap();
        let back: VerdictRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, record);
    }
}

#[test]
fn problem_validation() {
    let a: Mat<Q> = Mat::identity(3);
    assert!(matches!(
        ProblemDef::new(a.clone(), &[], vec![]),
        Err(Error::EmptySubspace)
    ));
    assert!(matches!(
        ProblemDef::new(a.clone(), &[qv(&[1, 0, 0]), qv(&[2, 0, 0])], vec![]),
        Err(Error::DependentBasis)
    ));
    assert!(matches!(
        ProblemDef::new(a.clone(), &[qv(&[1, 0, 0])], vec![qv(&[0, 0, 0])]),
        Err(Error::ZeroVector)
    ));
    assert!(matches!(
        ProblemDef::new(a, &[qv(&[1, 0])], vec![]),
        Err(Error::DimensionMismatch { .. })
    ));
    let p = ProblemDef::new(Mat::identity(2), &[qv(&[1, 0])], vec![qv(&[1, 0])]).unwrap();
    assert_eq!(test_rank(&p).unwrap_err(), Error::EigenvalueOnePresent);
    assert_eq!(test_auto(&p).unwrap().method, Method::GeneralTest);
}
