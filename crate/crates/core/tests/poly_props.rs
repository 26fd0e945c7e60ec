mod common;

use common::*;
use dynsamp::field::{Mat, Q};
use dynsamp::poly::{hermite_interpolant, indicator_values, reciprocal_shift_values, Poly};
use dynsamp::Error;
use proptest::prelude::*;

fn falling(n: usize, k: usize) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

// k-th derivative straight from the coefficient list.
fn derivative_at(p: &Poly<Q>, k: usize, t: &Q) -> Q {
    let mut acc = q(0);
    for (n, c) in p.coeffs().iter().enumerate().skip(k) {
        let mut term = c.clone() * q(falling(n, k));
        for _ in 0..n - k {
            term *= t.clone();
        }
        acc += term;
    }
    acc
}

fn naive_eval(p: &Poly<Q>, t: &Q) -> Q {
    derivative_at(p, 0, t)
}

fn distinct_nodes() -> impl Strategy<Value = Vec<(Q, usize)>> {
    prop::collection::btree_map(-4i64..=4, 1usize..=3, 1..=4)
        .prop_map(|m| m.into_iter().map(|(l, n)| (q(l), n)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hat_identity(p in poly(7, 5)) {
        let lhs = &(&Poly::linear(&q(1)) * &p.hat()) + &Poly::constant(p.eval(&q(1)));
        prop_assert_eq!(lhs, p);
    }

    #[test]
    fn hat_product_rule(u in poly(5, 4), v in poly(5, 4)) {
        let lhs = (&u * &v).hat();
        let rhs = &(&u.hat() * &v) + &v.hat().scale(&u.eval(&q(1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn horner_matches_naive_sum(p in poly(8, 6), t in -5i64..=5) {
        prop_assert_eq!(p.eval(&q(t)), naive_eval(&p, &q(t)));
    }

    #[test]
    fn divmod_multiplies_back(p in poly(8, 5), d in poly(4, 5)) {
        match p.divmod(&d) {
            Ok((quot, rem)) => {
                prop_assert_eq!(&(&quot * &d) + &rem, p);
                prop_assert!(rem.is_zero() || rem.degree() < d.degree());
            }
            Err(e) => {
                prop_assert!(d.is_zero());
                prop_assert_eq!(e, Error::DivisionByZeroPolynomial);
            }
        }
    }

    #[test]
    fn gcd_divides_both(u in poly(5, 4), v in poly(5, 4), w in poly(3, 3)) {
        let a = &u * &w;
        let b = &v * &w;
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        if !w.is_zero() && !(a.is_zero() && b.is_zero()) {
            prop_assert!(g.is_monic());
            prop_assert!(w.divides(&g));
        }
    }

    #[test]
    fn taylor_shift_translates(p in poly(6, 4), c in -3i64..=3, t in -3i64..=3) {
        prop_assert_eq!(p.taylor_shift(&q(c)).eval(&q(t)), p.eval(&q(t + c)));
    }

    #[test]
    fn series_inverse_is_inverse(p in poly(5, 4), n in 1usize..8) {
        prop_assume!(p.coeff(0) != q(0));
        let inv = p.series_inverse(n).unwrap();
        prop_assert_eq!((&p * &inv).truncate(n), Poly::one());
    }

    #[test]
    fn eval_on_vector_composes(
        (a, b) in (1usize..=5).prop_flat_map(|d| (matrix(d, d, 2), vector(d, 3))),
        u in poly(4, 3),
        v in poly(4, 3),
    ) {
        let lhs = (&u * &v).eval_on_vector(&a, &b).unwrap();
        let rhs = u.eval_on_vector(&a, &v.eval_on_vector(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, (&u * &v).eval_on_matrix(&a).unwrap().mul_vec(&b).unwrap());
    }

    #[test]
    fn hermite_reproduces_derivatives(
        nodes in distinct_nodes(),
        seed in prop::collection::vec(-5i64..=5, 12),
    ) {
        let mut it = seed.iter().cycle();
        let values: Vec<Vec<Q>> = nodes
            .iter()
            .map(|(_, n)| (0..*n).map(|_| q(*it.next().unwrap())).collect())
            .collect();
        let h = hermite_interpolant(&nodes, &values).unwrap();
        let total: usize = nodes.iter().map(|(_, n)| n).sum();
        prop_assert!(h.degree().is_none_or(|deg| deg < total));
        for ((l, n), vals) in nodes.iter().zip(&values) {
            for k in 0..*n {
                prop_assert_eq!(derivative_at(&h, k, l), vals[k].clone());
            }
        }
    }

    #[test]
    fn hermite_indicators_partition_unity(nodes in distinct_nodes()) {
        let mut sum = Poly::zero();
        for t in 0..nodes.len() {
            sum = &sum + &hermite_interpolant(&nodes, &indicator_values(&nodes, t)).unwrap();
        }
        prop_assert_eq!(sum, Poly::one());
    }

    #[test]
    fn reciprocal_values_match_derivatives(l in -4i64..=4, n in 1usize..=4) {
        prop_assume!(l != 1);
        let vals = reciprocal_shift_values(&q(l), n).unwrap();
        // f(x) = 1/(x-1): f^(k)(λ) = (-1)^k k! / (λ-1)^{k+1}
        let mut fact = 1i64;
        for (k, v) in vals.iter().enumerate() {
            if k > 0 {
                fact *= k as i64;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut denom = q(1);
            for _ in 0..=k {
                denom *= q(l - 1);
            }
            prop_assert_eq!(v.clone(), q(sign * fact) / denom);
        }
    }
}

#[test]
fn reciprocal_interpolant_on_two_nodes() {
    let nodes = vec![(q(2), 1), (q(3), 1)];
    let values = nodes
        .iter()
        .map(|(l, n)| reciprocal_shift_values(l, *n).unwrap())
        .collect::<Vec<_>>();
    let h = hermite_interpolant(&nodes, &values).unwrap();
    assert_eq!(
        h,
        Poly::from_coeffs(vec![q(2), Q::new((-1).into(), 2.into())])
    );
    assert_eq!(
        reciprocal_shift_values(&q(1), 2),
        Err(Error::EigenvalueOnePresent)
    );
}

#[test]
fn renders_expanded_and_factored() {
    let p = Poly::from_roots(&[(q(1), 3)]);
    assert_eq!(p.to_string(), "x^3 - 3x^2 + 3x - 1");
    assert_eq!(p.render_factored(&[q(1)]), "(x-1)^3");
    let r = Poly::from_roots(&[(q(-2), 1), (q(0), 2)]);
    assert_eq!(r.render_factored(&[q(0), q(-2)]), "x^2(x+2)");
    assert_eq!(Poly::<Q>::zero().to_string(), "0");
}

#[test]
fn eval_on_vector_checks_dimensions() {
    let a: Mat<Q> = Mat::identity(3);
    let p = Poly::from_coeffs(qv(&[1, 1]));
    assert!(matches!(
        p.eval_on_vector(&a, &qv(&[1, 2])),
        Err(Error::DimensionMismatch { .. })
    ));
}
