//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock time
//! against a pinned bound. Exits nonzero if any criterion fails.

use innerform::globalize::{
    build_cocycle, global_division_algebra, is_prime, plan_places, q_star, split_primes, HasseVector, PlaceLabel, QZ,
};
use innerform::grothendieck::{lj_map, prime_tag, steinberg, trivial_gl2, BasisElement, Side, VirtualElement};
use innerform::kottwitz::kottwitz_group;
use innerform::levi::LeviDescriptor;
use innerform::rootdata::{
    build_catalog_group, cartan_matrix, fundamental_group, from_cartan_adjoint, from_cartan_sc, BasedRootDatum, Series,
};
use innerform::satake::check_catalog;
use innerform::weyl::{find_w_theta, positive_roots, reduced_roots, weyl_group_order};
use innerform_verify::{compositions, det, splits_in_quadratic, weyl_order};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

/// Per invocation of the command line.
const APPENDIX_LIMIT: Duration = Duration::from_secs(1);
/// Both invocations plus comparison.
const APPENDIX_TOTAL_LIMIT: Duration = Duration::from_secs(3);
const KOTTWITZ_LIMIT: Duration = Duration::from_secs(1);
const WEYL_LIMIT: Duration = Duration::from_secs(30);
const GLOBAL_LIMIT: Duration = Duration::from_secs(10);
const LJ_LIMIT: Duration = Duration::from_secs(5);
const CROSS_LIMIT: Duration = Duration::from_secs(30);

struct Verdict {
    ok: bool,
    summary: String,
    details: Vec<String>,
}

fn pass(summary: impl Into<String>) -> Verdict {
    Verdict { ok: true, summary: summary.into(), details: vec![] }
}

fn fail(summary: impl Into<String>) -> Verdict {
    Verdict { ok: false, summary: summary.into(), details: vec![] }
}

fn criterion(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    let ok = v.ok && took <= limit;
    let timing = format!("{:.3} s, limit {} s", took.as_secs_f64(), limit.as_secs());
    let summary = if v.ok && took > limit { format!("too slow; {}", v.summary) } else { v.summary };
    println!("{} [{id}] {name} ({timing}): {summary}", if ok { "PASS" } else { "FAIL" });
    for d in v.details {
        println!("      {d}");
    }
    ok
}

fn cli(args: &[&str]) -> (String, Duration) {
    let start = Instant::now();
    let out = innerform_cli::execute(std::iter::once("innerform").chain(args.iter().copied()));
    let took = start.elapsed();
    assert_eq!(out.code, 0, "{args:?} failed: {}", out.stderr);
    (out.stdout, took)
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden").join(name);
    std::fs::read_to_string(p).expect("golden file")
}

fn appendix() -> Verdict {
    let (md, t_md) = cli(&["appendix-a"]);
    let (json, t_json) = cli(&["--json", "appendix-a"]);
    if md != golden("appendix_a.md") {
        return fail("markdown differs from the committed golden");
    }
    if json != golden("appendix_a.json") {
        return fail("JSON differs from the committed golden");
    }
    let slowest = t_md.max(t_json);
    if slowest > APPENDIX_LIMIT {
        return fail(format!("one run took {:.3} s", slowest.as_secs_f64()));
    }
    let required = [
        "M = M_θ ≅ GL_n × SL_2 ↪ M̃ = GL_n × GL_2",
        "M′(F) ≅ GL_{n/2}(D_2)",
        "GL_1(F) × GL_1(D_2) × GL_3(F) × GL_2(D_2)",
        "M′(F) ↪ GL_1(F) × GL_{n-2}(F) × GL_1(D_2) × GL_1(D_2) = M̃′(F)",
        "M′(F) ↪ GL_1(F) × GL_{n-2}(F) × GL_1(D_2) × GL_2(F) = M̃′(F)",
    ];
    if let Some(r) = required.iter().find(|r| !md.contains(*r)) {
        return fail(format!("missing {r:?}"));
    }
    let value: serde_json::Value = serde_json::from_str(&json).expect("json");
    let entries = value["entries"].as_array().expect("entries");
    for key in ["E_8", "F_4", "G_2"] {
        let e = entries.iter().find(|e| e["key"] == key);
        if e.map_or(true, |e| !e["variants"].as_array().is_some_and(|v| v.is_empty())) {
            return fail(format!("{key} should list no inner forms"));
        }
    }
    let families: BTreeSet<&str> = entries.iter().filter_map(|e| e["family"].as_str()).collect();
    pass(format!(
        "{} entries over {} families byte-identical to goldens, slowest run {:.3} s",
        entries.len(),
        families.len(),
        slowest.as_secs_f64()
    ))
}

fn irreducible_types(max_rank: usize) -> Vec<(Series, usize)> {
    let mut v: Vec<(Series, usize)> = (1..=max_rank).map(|n| (Series::A, n)).collect();
    v.extend((2..=max_rank).flat_map(|n| [(Series::B, n), (Series::C, n)]));
    v.extend((4..=max_rank).map(|n| (Series::D, n)));
    v.extend([(Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)]);
    v.retain(|t| t.1 <= max_rank);
    v
}

fn kottwitz() -> Verdict {
    for n in 2..=8i64 {
        let g = build_catalog_group("PGL", &[n]).expect("PGL");
        if kottwitz_group(&g).order() != n as u64 {
            return fail(format!("|A(PGL_{n})| = {}", kottwitz_group(&g).order()));
        }
    }
    for tag in ["E8", "F4", "G2"] {
        let g = build_catalog_group(tag, &[]).expect("exceptional");
        if kottwitz_group(&g).order() != 1 {
            return fail(format!("|A({tag})| != 1"));
        }
    }
    let types = irreducible_types(8);
    for &(s, n) in &types {
        let c = cartan_matrix(s, n);
        let order = fundamental_group(&from_cartan_adjoint("ad", &c)).order() as i128;
        if order != det(&c).abs() {
            return fail(format!("{s:?}{n}: |pi_1| = {order}, |det| = {}", det(&c).abs()));
        }
    }
    pass(format!("PGL_2..PGL_8, E8/F4/G2, and |pi_1(G_ad)| = |det C| for {} types", types.len()))
}

fn catalog_up_to_rank_six() -> Vec<BasedRootDatum> {
    let mut v = Vec::new();
    for n in 2..=7 {
        v.push(build_catalog_group("SL", &[n]).unwrap());
        v.push(build_catalog_group("GL", &[n]).unwrap());
        v.push(build_catalog_group("PGL", &[n]).unwrap());
    }
    for m in [4, 6, 8, 10, 12] {
        v.push(build_catalog_group("Sp", &[m]).unwrap());
        v.push(build_catalog_group("GSp", &[m]).unwrap());
    }
    for m in 5..=13 {
        v.push(build_catalog_group("SO", &[m]).unwrap());
        v.push(build_catalog_group("Spin", &[m]).unwrap());
        v.push(build_catalog_group("GSpin", &[m]).unwrap());
    }
    for tag in ["E6sc", "E6ad", "F4", "G2"] {
        v.push(build_catalog_group(tag, &[]).unwrap());
    }
    v.retain(|g| g.semisimple_rank() <= 6);
    v
}

fn weyl() -> Verdict {
    let mut orders = 0;
    let mut cases: Vec<(Series, usize)> = (1..=5).map(|n| (Series::A, n)).collect();
    cases.extend((2..=4).flat_map(|n| [(Series::B, n), (Series::C, n)]));
    cases.extend([(Series::D, 4), (Series::G, 2)]);
    for (s, n) in cases {
        let g = from_cartan_sc("g", &cartan_matrix(s, n));
        match weyl_group_order(&g) {
            Ok(o) if Some(o) == weyl_order(s.letter(), n as u64) => orders += 1,
            other => return fail(format!("|W({s:?}{n})| = {other:?}, expected {:?}", weyl_order(s.letter(), n as u64))),
        }
    }
    let mut pairs = 0;
    for g in catalog_up_to_rank_six() {
        let c = g.cartan();
        let l = c.len();
        let n_pos = |subset: &[usize]| {
            let sub: Vec<Vec<i64>> = subset.iter().map(|&i| subset.iter().map(|&j| c[i][j]).collect()).collect();
            positive_roots(&sub).len()
        };
        let all: Vec<usize> = (0..l).collect();
        for mask in 0u32..1 << l {
            let theta: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).collect();
            let (w, image) = match find_w_theta(&g, &theta) {
                Ok(x) => x,
                Err(e) => return fail(format!("{} {theta:?}: {e}", g.name)),
            };
            if w.len() != n_pos(&all) - n_pos(&theta) {
                return fail(format!("{} {theta:?}: length {}", g.name, w.len()));
            }
            for &a in &theta {
                let mut e = vec![0; l];
                e[a] = 1;
                let img = w.act_on_root(&c, &e);
                let simple = img.iter().filter(|&&x| x != 0).count() == 1 && img.iter().any(|&x| x == 1);
                let k = img.iter().position(|&x| x == 1);
                if !simple || !k.is_some_and(|k| image.contains(&k)) {
                    return fail(format!("{} {theta:?}: w(alpha_{}) = {img:?} is not in Delta", g.name, a + 1));
                }
            }
            pairs += 1;
        }
    }
    pass(format!("{orders} closed-form orders; w_theta(theta) within Delta for {pairs} (group, theta) pairs"))
}

fn globalization() -> Verdict {
    let mut primes = 0;
    for p in (2..200).filter(|&p| is_prime(p)) {
        let qs = split_primes(p, 10).expect("prime");
        let last = *qs.last().expect("ten outputs");
        let want: Vec<u64> = (3..=last).filter(|&q| q % 2 == 1 && q != p && is_prime(q) && splits_in_quadratic(p, q_star(q))).collect();
        if qs != want {
            return fail(format!("split_primes({p}) = {qs:?}, oracle {want:?}"));
        }
        primes += 1;
    }
    for l in 1..=1000usize {
        let plan = plan_places(5, l).expect("plan");
        let r = plan.r;
        if (1u64 << r) < l as u64 || (r > 0 && (1u64 << (r - 1)) >= l as u64) {
            return fail(format!("l = {l}: r = {r} is not minimal"));
        }
    }
    let t = plan_places(3, 36).expect("plan").places;
    let mut cocycles = 0;
    for order in 1..=12u64 {
        for class in 1..order {
            for s in 1..=36usize {
                let c = build_cocycle(&t, &t[..s], order, class).expect("cocycle");
                if c.valid != ((s as u64 * class) % order == 0) {
                    return fail(format!("cocycle order {order} class {class} |S| {s}"));
                }
                cocycles += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=12u64);
        let divisors: Vec<i64> = (1..=n as i64).filter(|d| n as i64 % d == 0).collect();
        let mut h = HasseVector::new();
        let mut exact = Ratio::<i128>::from_integer(0);
        for i in 0..rng.gen_range(1..=6) {
            let d = divisors[rng.gen_range(0..divisors.len())];
            let a = rng.gen_range(0..d);
            h.insert(PlaceLabel::finite(format!("v{i}"), None), QZ::new(a, d));
            exact += Ratio::new(a as i128, d as i128);
        }
        let r = global_division_algebra(n, &h).expect("valid input");
        if r.valid != exact.is_integer() {
            return fail(format!("verdict {} for {h:?}", r.valid));
        }
    }
    pass(format!("{primes} primes x 10 outputs, l <= 1000, {cocycles} cocycles, 10000 Hasse vectors"))
}

fn random_element(rng: &mut ChaCha8Rng, n: u32) -> VirtualElement {
    let comps = compositions(n);
    let side = Side::Split { n };
    let mut x = VirtualElement::zero(side);
    for _ in 0..rng.gen_range(0..6) {
        let comp = comps[rng.gen_range(0..comps.len())].clone();
        let labels = (0..comp.len()).map(|_| ["a", "b", "c"][rng.gen_range(0..3)].to_string()).collect();
        x.add_term(rng.gen_range(-9..=9), BasisElement::new(comp, labels, side).unwrap()).unwrap();
    }
    x
}

fn lj_suite() -> Verdict {
    let lj = |x: &VirtualElement, d| lj_map(x, d, &prime_tag).expect("lj");
    let st_prime = lj(&steinberg(2), 2);
    if st_prime.to_string() != "(1):St'" {
        return fail(format!("LJ(St) = {st_prime}"));
    }
    if lj(&trivial_gl2(), 2) != st_prime.scale(-1) {
        return fail("LJ(1) != -St'");
    }
    let torus = VirtualElement::parse("(1,1):nu^-1/2,nu^1/2", Side::Split { n: 2 }).unwrap();
    if !lj(&torus, 2).is_zero() {
        return fail("LJ(i(delta^-1/2)) != 0");
    }
    let mut pairs = 0;
    for n in 1..=12u32 {
        for d in (1..=n).filter(|d| n % d == 0) {
            let mut image = BTreeSet::new();
            for comp in compositions(n) {
                let labels = (0..comp.len()).map(|i| format!("s{i}")).collect();
                let x = VirtualElement::basis(BasisElement::new(comp, labels, Side::Split { n }).unwrap());
                image.extend(lj(&x, d).terms().map(|(b, _)| b.composition.clone()));
            }
            let want: BTreeSet<Vec<u32>> = compositions(n / d).into_iter().collect();
            if image != want {
                return fail(format!("not onto for n = {n}, d = {d}"));
            }
            pairs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let n = [2u32, 4, 6, 8, 12][rng.gen_range(0..5)];
        let ds: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
        let d = ds[rng.gen_range(0..ds.len())];
        let (x, y) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let c = rng.gen_range(-9..=9);
        let lhs = lj(&x.add(&y).unwrap().scale(c), d);
        let rhs = lj(&x, d).scale(c).add(&lj(&y, d).scale(c)).unwrap();
        if lhs != rhs {
            return fail(format!("not linear at {x} and {y}"));
        }
    }
    pass(format!("quaternion examples, onto for {pairs} (n, d) with n <= 12, 1000 linearity checks"))
}

fn cross_module() -> Verdict {
    let report = check_catalog();
    let mut details = Vec::new();
    let mut broken = Vec::new();
    let mut samples = 0;
    for c in report.checks.iter().filter(|c| !c.stated_m_prime.is_empty()) {
        samples += 1;
        if c.computed_m_prime.is_empty() {
            broken.push(format!("{} {}: no recomputation ({:?})", c.key, c.params, c.issues));
        }
    }
    let six = report.checks.iter().find(|c| c.key == "E_6/α_2").expect("E6 entry");
    let six_ok = six.issues.iter().any(|i| i.starts_with("arithmetic"))
        && six.notes.iter().any(|n| n.contains("GL_3(D_2), GL_2(D_3), GL_1(D_6)"));
    if !six_ok {
        broken.push("six-by-two entry is not flagged with its candidates".into());
    }
    let mut disagree: Vec<String> = Vec::new();
    for c in report.checks.iter().filter(|c| c.key != "E_6/α_2") {
        if c.issues.iter().any(|i| i.starts_with("inner form")) {
            let tag = format!("{} [{}]", c.key, c.variant);
            if !disagree.contains(&tag) {
                disagree.push(tag);
            }
        }
    }
    let mut maximal = 0;
    for g in catalog_up_to_rank_six() {
        let l = g.semisimple_rank();
        let c = g.cartan();
        for k in 0..l {
            let desc = LeviDescriptor::removing(g.clone(), &[k]).unwrap();
            let classes = reduced_roots(&g, &desc.theta).unwrap();
            let outside: BTreeSet<Vec<i64>> = positive_roots(&c)
                .into_iter()
                .filter(|r| r.coeffs[k] != 0)
                .map(|r| r.coeffs)
                .collect();
            let mut seen = BTreeSet::new();
            let disjoint = classes.iter().flat_map(|r| &r.preimages).all(|p| seen.insert(p.clone()));
            if classes.len() != 1 || !disjoint || seen != outside {
                broken.push(format!("{} removing a{}: reduced roots do not partition", g.name, k + 1));
            }
            maximal += 1;
        }
    }
    if !broken.is_empty() {
        let mut v = fail(format!("{} problems", broken.len()));
        v.details = broken;
        return v;
    }
    if disagree.is_empty() {
        return pass(format!(
            "{samples} variant samples recomputed, six-by-two entry flagged, {maximal} maximal Levis partition"
        ));
    }
    details.push(format!(
        "recomputation ran for all {samples} variant samples; six-by-two entry flagged with candidates; {maximal} maximal Levis partition"
    ));
    details.push("printed M′ disagrees with the recomputation from the drawn diagram beyond the six-by-two entry:".into());
    for d in &disagree {
        details.push(format!("  {d}"));
    }
    details.push("each is recorded as a catalog issue with the printed text kept verbatim (see appendix_a.md)".into());
    Verdict {
        ok: false,
        summary: format!("{} entries besides the six-by-two entry disagree with the printed M′", disagree.len()),
        details,
    }
}

fn main() {
    // goldens are rendered with the Unicode diagrams
    std::env::remove_var("INNERFORM_ASCII");
    let results = [
        criterion(1, "appendix-a golden reproduction", APPENDIX_TOTAL_LIMIT, appendix),
        criterion(2, "Kottwitz orders", KOTTWITZ_LIMIT, kottwitz),
        criterion(3, "Weyl oracle", WEYL_LIMIT, weyl),
        criterion(4, "globalization arithmetic", GLOBAL_LIMIT, globalization),
        criterion(5, "LJ suite", LJ_LIMIT, lj_suite),
        criterion(6, "cross-module consistency", CROSS_LIMIT, cross_module),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
