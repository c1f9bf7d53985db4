use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use moddiag::matchings::matching_counts;
use moddiag::oracle::{count_modular, for_each_perfect_matching, max_mutual_crossing, modular_diagrams};
use moddiag::series::Exponents;
use moddiag::{MultiPoly, Poly, PowerSeries};

fn coeffs(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, len)
}

fn series() -> impl Strategy<Value = PowerSeries> {
    coeffs(1..12).prop_map(|c| {
        let order = c.len() - 1;
        PowerSeries::from_i64(&c, order)
    })
}

fn unit_series() -> impl Strategy<Value = PowerSeries> {
    (prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)], coeffs(0..11)).prop_map(|(c0, mut c)| {
        c.insert(0, c0);
        let order = c.len() - 1;
        PowerSeries::from_i64(&c, order)
    })
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    let term = (-5i64..=5, prop::array::uniform5(0u32..3)).prop_map(|(c, e): (i64, Exponents)| (c, e));
    prop::collection::vec(term, 0..6).prop_map(|t| MultiPoly::from_terms(&t, 4))
}

fn naive_compose(f: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    let order = f.order().min(g.order());
    let mut acc = PowerSeries::zero(order);
    let mut power = PowerSeries::one(order);
    for n in 0..=order {
        acc = &acc + &power.scale(f.coeff(n));
        power = &power * g;
    }
    acc
}

fn brute_matchings(k: usize, s: usize) -> BigUint {
    let mut count = BigUint::default();
    for_each_perfect_matching(s, |d| {
        if max_mutual_crossing(d) < k {
            count += 1u32;
        }
    });
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.truncate(a.order().min(b.order())));
    }

    #[test]
    fn division_inverts_multiplication(a in series(), b in unit_series()) {
        let q = (&a * &b).try_div(&b).unwrap();
        prop_assert_eq!(q, a.truncate(a.order().min(b.order())));
        let one = &b * &b.inverse().unwrap();
        prop_assert_eq!(one, PowerSeries::one(b.order()));
    }

    #[test]
    fn compose_matches_naive_sum(f in series(), mut g in coeffs(1..12)) {
        g[0] = 0;
        let order = g.len() - 1;
        let g = PowerSeries::from_i64(&g, order);
        let fast = f.compose(&g).unwrap();
        let slow = naive_compose(&f, &g);
        prop_assert!(fast.order() >= slow.order());
        prop_assert_eq!(fast.truncate(slow.order()), slow);
    }

    #[test]
    fn compose_rational_matches_compose(
        f in series(),
        mut numer in coeffs(2..6),
        d0 in prop_oneof![Just(1i64), Just(-1), Just(2), Just(5)],
        mut denom in coeffs(0..5),
        order in 0usize..14,
    ) {
        numer[0] = 0;
        denom.insert(0, d0);
        let (numer, denom) = (Poly::from_i64(&numer), Poly::from_i64(&denom));
        prop_assume!(!numer.is_zero());
        let inner = PowerSeries::from_poly(&numer, order).div_poly(&denom).unwrap();
        let direct = f.compose(&inner).unwrap();
        let sparse = f.compose_rational(&numer, &denom, order).unwrap();
        let common = direct.order().min(sparse.order());
        prop_assert_eq!(direct.truncate(common), sparse.truncate(common));
    }

    #[test]
    fn poly_division_identity(a in coeffs(0..8), b in coeffs(1..5)) {
        let (a, b) = (Poly::from_i64(&a), Poly::from_i64(&b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(a.div_rem(&g).1.is_zero());
        prop_assert!(b.div_rem(&g).1.is_zero());
    }

    #[test]
    fn multipoly_ring_laws(a in multipoly(), b in multipoly(), c in multipoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn modular_set_is_mirror_closed(k in 2usize..5, n in 0usize..13) {
        let all: BTreeSet<String> = modular_diagrams(k, n).iter().map(|d| d.to_string()).collect();
        prop_assert_eq!(BigUint::from(all.len()), count_modular(k, n));
        for d in modular_diagrams(k, n) {
            prop_assert!(all.contains(&d.mirror().to_string()), "{}", d);
        }
    }

    #[test]
    fn walk_counts_match_brute_force(k in 2usize..5, s in 0usize..7) {
        let walks = matching_counts(k, s).unwrap();
        prop_assert_eq!(walks[s].clone(), brute_matchings(k, s));
    }
}
