use innerform::kottwitz::{ad_quotient_order, inner_form_classes_gl, kottwitz_group, kottwitz_report};
use innerform::rootdata::{cartan_matrix, center_torsion, from_cartan_adjoint, from_cartan_sc, Series};
use proptest::prelude::*;

/// Bareiss elimination, exact over i128.
fn det(c: &[Vec<i64>]) -> i128 {
    let n = c.len();
    let mut a: Vec<Vec<i128>> = c.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn irreducible_types() -> Vec<(Series, usize)> {
    let mut v = Vec::new();
    for n in 1..=8 {
        v.push((Series::A, n));
    }
    for n in 2..=8 {
        v.push((Series::B, n));
        v.push((Series::C, n));
    }
    for n in 4..=8 {
        v.push((Series::D, n));
    }
    v.extend([(Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)]);
    v
}

#[test]
fn adjoint_order_is_the_determinant_of_the_cartan_matrix() {
    for (s, n) in irreducible_types() {
        let c = cartan_matrix(s, n);
        let ad = from_cartan_adjoint("ad", &c);
        let sc = from_cartan_sc("sc", &c);
        assert_eq!(kottwitz_group(&ad).order() as i128, det(&c).abs(), "{s:?}{n}");
        assert_eq!(ad_quotient_order(&sc) as i128, det(&c).abs(), "{s:?}{n}");
        assert!(kottwitz_group(&sc).is_trivial(), "{s:?}{n}");
        // the dual of the adjoint group is simply connected, with centre pi_1(G_ad)
        assert_eq!(kottwitz_group(&ad), center_torsion(&ad.dual()));
        assert_eq!(kottwitz_group(&ad).invariant_factors, center_torsion(&sc).invariant_factors, "{s:?}{n}");
        assert!(kottwitz_report(&ad).semisimple);
    }
}

#[test]
fn even_spin_has_klein_four_adjoint_quotient() {
    for n in [4, 6, 8] {
        let ad = from_cartan_adjoint("ad", &cartan_matrix(Series::D, n));
        assert_eq!(kottwitz_group(&ad).invariant_factors, vec![2, 2]);
    }
    let ad = from_cartan_adjoint("ad", &cartan_matrix(Series::D, 5));
    assert_eq!(kottwitz_group(&ad).invariant_factors, vec![4]);
}

fn phi(d: u64) -> usize {
    (1..=d).filter(|&k| num_integer::gcd(k, d) == 1).count()
}

proptest! {
    #[test]
    fn inner_forms_of_gl_count_by_totient(n in 1u64..=64) {
        let classes = inner_form_classes_gl(n);
        prop_assert_eq!(classes.len() as u64, n);
        let mut total = 0;
        for d in (1..=n).filter(|d| n % d == 0) {
            let k = classes.iter().filter(|c| c.d == d).count();
            prop_assert_eq!(k, phi(d));
            total += k;
        }
        prop_assert_eq!(total as u64, n);
        for c in &classes {
            prop_assert_eq!(c.j_prime * c.n, c.j * c.d);
        }
    }
}
