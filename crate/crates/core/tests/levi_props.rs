use innerform::levi::{analyze_levi, FactorKind, LeviDescriptor};
use innerform::rootdata::{build_catalog_group, BasedRootDatum};
use proptest::prelude::*;

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n)).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// Block sizes of the composition of `n` cut at the simple roots outside theta.
fn composition(n: usize, theta: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 1;
    for i in 0..n - 1 {
        if theta.contains(&i) {
            run += 1;
        } else {
            out.push(run);
            run = 1;
        }
    }
    out.push(run);
    out
}

#[test]
fn gl_levis_are_their_own_envelopes() {
    for n in 1..=8 {
        let g = build_catalog_group("GL", &[n as i64]).unwrap();
        for theta in subsets(n - 1) {
            let r = analyze_levi(&LeviDescriptor::new(g.clone(), &theta).unwrap());
            assert!(r.condition_one, "GL({n}) {theta:?}");
            let env = r.gl_envelope.unwrap();
            let mut got = env.sizes();
            got.sort_unstable();
            let mut want = composition(n, &theta);
            want.sort_unstable();
            assert_eq!(got, want, "GL({n}) {theta:?}");
            assert!(env.isomorphic);
            assert_eq!(env.gl1, env.gl1_lower_bound);
            assert!(env.blocks.iter().all(|b| b.kind == FactorKind::Gl));
        }
    }
}

fn simply_connected_catalog() -> Vec<BasedRootDatum> {
    let specs: &[(&str, &[i64])] = &[
        ("SL", &[2]), ("SL", &[5]), ("SL", &[8]), ("Sp", &[8]), ("Sp", &[14]),
        ("Spin", &[9]), ("Spin", &[15]), ("Spin", &[8]), ("Spin", &[14]),
        ("E6sc", &[]), ("E7sc", &[]), ("F4", &[]), ("G2", &[]),
    ];
    specs.iter().map(|(t, p)| build_catalog_group(t, p).unwrap()).collect()
}

#[test]
fn simply_connected_levis_have_simply_connected_derived_groups() {
    for g in simply_connected_catalog() {
        for theta in subsets(g.semisimple_rank()) {
            let r = analyze_levi(&LeviDescriptor::new(g.clone(), &theta).unwrap());
            assert!(r.derived_pi1.is_trivial(), "{} {theta:?}", g.name);
            if r.derived_type.all_type_a() {
                assert!(r.condition_one, "{} {theta:?}", g.name);
            }
        }
    }
}

fn mixed_catalog() -> Vec<BasedRootDatum> {
    let specs: &[(&str, &[i64])] = &[
        ("GL", &[5]), ("PGL", &[4]), ("SO", &[8]), ("SO", &[9]), ("GSp", &[8]),
        ("GSpin", &[10]), ("GSpin", &[9]), ("Spin", &[10]), ("E6ad", &[]),
    ];
    specs.iter().map(|(t, p)| build_catalog_group(t, p).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn split_rank_is_antitone_and_envelope_ranks_add_up(pick in 0usize..9, a in any::<u32>(), b in any::<u32>()) {
        let g = mixed_catalog().swap_remove(pick);
        let l = g.semisimple_rank();
        let small: Vec<usize> = (0..l).filter(|i| a >> i & 1 == 1 && b >> i & 1 == 1).collect();
        let big: Vec<usize> = (0..l).filter(|i| a >> i & 1 == 1).collect();
        let r1 = analyze_levi(&LeviDescriptor::new(g.clone(), &small).unwrap());
        let r2 = analyze_levi(&LeviDescriptor::new(g.clone(), &big).unwrap());
        prop_assert!(r1.split_component_rank >= r2.split_component_rank);
        prop_assert_eq!(r1.split_component_rank + small.len(), g.rank);
        for (r, theta) in [(&r1, &small), (&r2, &big)] {
            if let Some(env) = &r.gl_envelope {
                let s: usize = env.sizes().iter().map(|n| n - 1).sum();
                prop_assert_eq!(s, theta.len());
                prop_assert_eq!(s, r.derived_type.semisimple_rank());
                prop_assert!(env.gl1 >= env.gl1_lower_bound);
            }
        }
    }
}
