use proptest::prelude::*;

use orbifold_voa::fock::{HalfPartition, Partition, Sector, TBasis, TVector, UBasis, UVector};
use orbifold_voa::fusion::FusionTable;
use orbifold_voa::{ModuleLabel, Scalar, Sign, Q};

fn scalar(k: u32) -> impl Strategy<Value = Scalar> {
    let n = 4 * k as i64;
    prop::collection::vec((-5i64..=5, 1i64..=4, 0..n, -3i64..=3), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (p, q, a, b)| {
            let t = Scalar::ratio(p, q) * Scalar::zeta_pow(k, a) * Scalar::t_pow(k, b);
            acc + t
        })
    })
}

fn with_k<T: std::fmt::Debug>(f: impl Fn(u32) -> BoxedStrategy<T>) -> impl Strategy<Value = (u32, T)> {
    (1u32..=4).prop_flat_map(move |k| (Just(k), f(k)))
}

fn uvector(k: u32) -> BoxedStrategy<UVector> {
    prop::collection::vec((prop::collection::vec(1u32..=4, 0..3), -6i64..=6, -3i64..=3), 1..4)
        .prop_map(move |terms| {
            UVector::from_terms(
                k,
                terms
                    .into_iter()
                    .map(|(parts, r, c)| (UBasis::new(Partition::new(parts), r), Scalar::from_int(c))),
            )
        })
        .boxed()
}

fn tvector(k: u32) -> BoxedStrategy<TVector> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 0..3), 1u8..=2, -3i64..=3), 1..4)
        .prop_map(move |terms| {
            TVector::from_terms(
                k,
                terms.into_iter().map(|(parts, i, c)| {
                    let doubled = parts.into_iter().map(|p| 2 * p + 1).collect();
                    (TBasis::new(HalfPartition::from_doubled(doubled), Sector::from_index(i)), Scalar::from_int(c))
                }),
            )
        })
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((_, (a, b, c)) in with_k(|k| (scalar(k), scalar(k), scalar(k)).boxed())) {
        prop_assert!((&a + &b - (&b + &a)).is_zero());
        prop_assert!((&a * &b - &b * &a).is_zero());
        prop_assert!((&(&a * &b) * &c - &a * &(&b * &c)).is_zero());
        prop_assert!((&a * &(&b + &c) - (&a * &b + &a * &c)).is_zero());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a * &Scalar::one() - a.clone()).is_zero());
    }

    #[test]
    fn enclosure_tracks_arithmetic((_, (a, b)) in with_k(|k| (scalar(k), scalar(k)).boxed())) {
        let (x, _) = a.enclosure();
        let (y, _) = b.enclosure();
        let (s, rs) = (&a + &b).enclosure();
        let (p, rp) = (&a * &b).enclosure();
        prop_assert!((s - (x + y)).norm() <= rs + 1e-9 * (1.0 + x.norm() + y.norm()));
        prop_assert!((p - x * y).norm() <= rp + 1e-9 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn zeta_is_a_homomorphism(k in 1u32..=5, a in -40i64..40, b in -40i64..40) {
        let n = 4 * k as i64;
        prop_assert_eq!(Scalar::zeta_pow(k, a) * Scalar::zeta_pow(k, b), Scalar::zeta_pow(k, a + b));
        prop_assert_eq!(Scalar::zeta_pow(k, a + n), Scalar::zeta_pow(k, a));
        prop_assert!((Scalar::zeta_pow(k, a + n / 2) + Scalar::zeta_pow(k, a)).is_zero());
    }

    #[test]
    fn two_pow_is_a_homomorphism(k in 1u32..=5, a in -12i64..12, b in -12i64..12) {
        let d = 2 * k as i64;
        let (p, q) = (Q::new(a, d), Q::new(b, d));
        let lhs = Scalar::two_pow(k, p).unwrap() * Scalar::two_pow(k, q).unwrap();
        let rhs = Scalar::two_pow(k, p + q).unwrap();
        prop_assert!((&lhs - &rhs).is_zero());
        if a + b == 0 {
            prop_assert!(rhs.is_one());
        }
        let (x, _) = rhs.enclosure();
        prop_assert!((x.re - 2f64.powf(((a + b) as f64) / d as f64)).abs() < 1e-9 * x.norm().max(1.0));
    }

    #[test]
    fn theta_is_an_involution_splitting_into_eigenspaces((_, v) in with_k(uvector)) {
        prop_assert_eq!(v.theta().theta(), v.clone());
        let (p, m) = (v.project_eigen(Sign::Plus), v.project_eigen(Sign::Minus));
        prop_assert_eq!(p.plus(&m), v.clone());
        prop_assert_eq!(p.theta(), p.clone());
        prop_assert_eq!(m.theta(), m.scale_q(Q::from_integer(-1)));
    }

    #[test]
    fn twisted_theta_is_an_involution((_, v) in with_k(tvector)) {
        prop_assert_eq!(v.theta().theta(), v.clone());
        let (p, m) = (v.project_eigen(Sign::Plus), v.project_eigen(Sign::Minus));
        prop_assert_eq!(p.plus(&m), v);
    }

    #[test]
    fn heisenberg_relations((k, v) in with_k(uvector), m in -4i64..=4, n in -4i64..=4) {
        let lhs = v.alpha(n).alpha(m).minus(&v.alpha(m).alpha(n));
        let c = if m + n == 0 { 2 * k as i64 * m } else { 0 };
        prop_assert_eq!(lhs, v.scale_q(Q::from_integer(c)));
    }

    #[test]
    fn twisted_heisenberg_relations((k, v) in with_k(tvector), m in -3i64..=2, n in -3i64..=2) {
        let (m2, n2) = (2 * m + 1, 2 * n + 1);
        let lhs = v.alpha_half(n2).alpha_half(m2).minus(&v.alpha_half(m2).alpha_half(n2));
        // [alpha(m2/2), alpha(n2/2)] = 2k (m2/2) delta
        let c = if m2 + n2 == 0 { k as i64 * m2 } else { 0 };
        prop_assert_eq!(lhs, v.scale_q(Q::from_integer(c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fusion_symmetries(k in 1u32..=8, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let table = FusionTable::build(k).unwrap();
        let labels = ModuleLabel::all(k);
        let n = labels.len();
        let (x, y, z) = (labels[a % n], labels[b % n], labels[c % n]);
        let v = table.fusion(x, y, z).unwrap();
        prop_assert!(v <= 1);
        prop_assert_eq!(table.fusion(y, x, z).unwrap(), v);
        prop_assert_eq!(table.fusion(x, z.contragredient(k), y.contragredient(k)).unwrap(), v);
    }
}
