use innerform::globalize::{
    build_cocycle, global_division_algebra, is_prime, plan_places, q_star, split_primes, HasseVector, PlaceLabel, QZ,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of roots of `x^2 - a` in `Z/p`, by enumeration.
fn root_count(a: i64, p: u64) -> usize {
    let a = a.rem_euclid(p as i64) as u64;
    (0..p).filter(|x| x * x % p == a).count()
}

/// 2 splits in `Q(sqrt(D))`, `D = 1 mod 4`, iff the minimal polynomial
/// `x^2 - x - (D-1)/4` of `(1 + sqrt D)/2` has two roots mod 2.
fn two_splits(d: i64) -> bool {
    let c = (d - 1) / 4;
    (0..2i64).filter(|x| (x * x - x - c).rem_euclid(2) == 0).count() == 2
}

fn oracle(p: u64, q: u64) -> bool {
    if p == 2 {
        two_splits(q_star(q))
    } else {
        root_count(q_star(q), p) == 2
    }
}

#[test]
fn split_primes_match_root_counting() {
    for p in (2..200).filter(|&p| is_prime(p)) {
        let qs = split_primes(p, 10).unwrap();
        assert_eq!(qs.len(), 10);
        let last = *qs.last().unwrap();
        let expect: Vec<u64> = (3..=last).filter(|&q| q % 2 == 1 && q != p && is_prime(q) && oracle(p, q)).collect();
        assert_eq!(qs, expect, "p = {p}");
    }
    assert!(split_primes(2, 10).unwrap().contains(&17));
    assert!(!split_primes(2, 10).unwrap().contains(&3));
}

#[test]
fn tower_degree_is_minimal() {
    for l in 1..=1000usize {
        let plan = plan_places(3, l).unwrap();
        let deg = plan.degree as usize;
        assert!(deg >= l && deg < 2 * l, "l = {l}");
        assert_eq!(plan.tower_primes.len(), plan.r as usize);
        assert_eq!(plan.places.len(), l);
    }
}

#[test]
fn cocycle_verdicts_exhaustive() {
    let t = plan_places(5, 36).unwrap().places;
    for order in 1..=12u64 {
        for class in (1..order).filter(|c| c % order != 0) {
            for s in 1..=36usize {
                let c = build_cocycle(&t, &t[..s], order, class).unwrap();
                assert_eq!(c.valid, (s as u64 * class) % order == 0, "order {order}, class {class}, |S| {s}");
                if c.valid && s + order as usize <= 36 {
                    assert!(build_cocycle(&t, &t[..s + order as usize], order, class).unwrap().valid);
                }
            }
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng) -> (u64, Vec<(i64, i64)>) {
    let n = rng.gen_range(1..=12u64);
    let divisors: Vec<i64> = (1..=n as i64).filter(|d| n as i64 % d == 0).collect();
    let k = rng.gen_range(1..=6);
    let v = (0..k)
        .map(|_| {
            let d = divisors[rng.gen_range(0..divisors.len())];
            (rng.gen_range(0..d), d)
        })
        .collect();
    (n, v)
}

/// Exact oracle: sum over the common denominator, no reduction.
fn sums_to_integer(v: &[(i64, i64)]) -> bool {
    let l = v.iter().fold(1i128, |l, &(_, d)| num_integer::lcm(l, d as i128));
    v.iter().map(|&(a, d)| a as i128 * (l / d as i128)).sum::<i128>() % l == 0
}

fn to_hasse(v: &[(i64, i64)]) -> HasseVector {
    let mut h = HasseVector::new();
    for (i, &(a, d)) in v.iter().enumerate() {
        h.insert(PlaceLabel::finite(format!("v{i}"), None), QZ::new(a, d));
    }
    h
}

#[test]
fn division_algebra_verdicts_on_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let (n, v) = random_vector(&mut rng);
        let r = global_division_algebra(n, &to_hasse(&v)).unwrap();
        assert_eq!(r.valid, sums_to_integer(&v), "{n} {v:?}");
        for l in &r.local {
            assert_eq!(l.m * l.d, n);
        }
    }
}

proptest! {
    #[test]
    fn verdict_ignores_order_and_needs_every_nonzero_entry(seed in any::<u64>(), drop in any::<prop::sample::Index>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, mut v) = random_vector(&mut rng);
        let base = global_division_algebra(n, &to_hasse(&v)).unwrap().valid;
        v.reverse();
        prop_assert_eq!(global_division_algebra(n, &to_hasse(&v)).unwrap().valid, base);
        if base {
            let i = drop.index(v.len());
            let removed = v.remove(i);
            let after = global_division_algebra(n, &to_hasse(&v)).unwrap().valid;
            prop_assert_eq!(after, removed.0 == 0);
        }
    }
}
