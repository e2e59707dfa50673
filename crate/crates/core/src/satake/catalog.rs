//! Maximal Levi subgroups in the sandwich condition together with their
//! inner forms, for the split groups of types A through G.
//!
//! Each entry keeps the statement as published (text plus the numbers it
//! implies at a given rank) and is re-derived at sample ranks from the root
//! datum and the black vertices of the Satake diagram. Disagreements are
//! recorded as issues, never corrected in place.

use super::{degrees_from_diagram, render, transfer_levi, RenderStyle, SatakeDiagram};
use crate::kottwitz::ad_quotient_order;
use crate::levi::{analyze_levi, FactorKind, LeviDescriptor};
use crate::rootdata::build_catalog_group;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatedVariant {
    /// Range of validity, e.g. "any n" or "n even".
    pub label: String,
    /// Black vertices, Bourbaki labels.
    pub black: String,
    pub m_prime: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub key: String,
    pub family: String,
    pub group: String,
    /// Removed simple roots, Bourbaki labels.
    pub removed: String,
    /// Same roots with the chain numbered first and the branch node last.
    pub removed_chain_labels: Option<String>,
    pub m: String,
    /// Empty when the group has no non-quasi-split inner form.
    pub variants: Vec<StatedVariant>,
    pub param_names: Vec<String>,
    pub samples: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCheck {
    pub key: String,
    pub variant: String,
    pub params: String,
    pub group: String,
    /// 1-based Bourbaki labels.
    pub removed: Vec<usize>,
    pub black: Vec<usize>,
    pub diagram: String,
    pub derived_type: String,
    pub envelope: String,
    pub kinds: Vec<FactorKind>,
    pub gl1: usize,
    pub isomorphic: bool,
    pub stated_envelope: String,
    pub stated_m_prime: String,
    pub computed_m_prime: String,
    pub computed_levi: String,
    pub issues: Vec<String>,
    pub notes: Vec<String>,
}

impl CatalogCheck {
    pub fn flagged(&self) -> bool {
        !self.issues.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub entries: Vec<CatalogEntry>,
    pub checks: Vec<CatalogCheck>,
}

/// Published numbers at one rank.
struct Instance {
    tag: &'static str,
    tag_params: Vec<i64>,
    /// 0-based.
    removed: Vec<usize>,
    env: Vec<i64>,
    env_gl1: usize,
    iso: bool,
    /// One per stated variant; `None` when the variant does not apply.
    variants: Vec<Option<VariantInstance>>,
}

struct VariantInstance {
    /// 0-based.
    black: Vec<usize>,
    factors: Vec<(Rational64, i64)>,
    gl1: usize,
}

type Builder = fn(&[i64]) -> Instance;

struct Template {
    entry: CatalogEntry,
    build: Option<Builder>,
}

fn q(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn half(n: i64) -> Rational64 {
    Rational64::new(n, 2)
}

/// 0-based indices `k < bound` with `k` even, i.e. odd Bourbaki labels.
fn odd_labels(bound: usize) -> Vec<usize> {
    (0..bound).step_by(2).collect()
}

fn variant(label: &str, black: &str, m_prime: &str) -> StatedVariant {
    StatedVariant {
        label: label.into(),
        black: black.into(),
        m_prime: m_prime.into(),
    }
}

#[allow(clippy::too_many_arguments)]
fn entry(
    key: &str,
    family: &str,
    group: &str,
    removed: &str,
    chain: Option<&str>,
    m: &str,
    variants: Vec<StatedVariant>,
    params: &[&str],
    samples: Vec<Vec<i64>>,
) -> CatalogEntry {
    CatalogEntry {
        key: key.into(),
        family: family.into(),
        group: group.into(),
        removed: removed.into(),
        removed_chain_labels: chain.map(Into::into),
        m: m.into(),
        variants,
        param_names: params.iter().map(|s| s.to_string()).collect(),
        samples,
    }
}

fn vi(black: Vec<usize>, factors: Vec<(Rational64, i64)>, gl1: usize) -> Option<VariantInstance> {
    Some(VariantInstance { black, factors, gl1 })
}

fn type_a(tag: &'static str, p: &[i64], iso: bool) -> Instance {
    let (big_n, d, m1) = (p[0], p[1], p[2]);
    let m2 = big_n / d - m1;
    Instance {
        tag,
        tag_params: vec![big_n],
        removed: vec![(m1 * d - 1) as usize],
        env: vec![m1 * d, m2 * d],
        env_gl1: 0,
        iso,
        variants: vec![vi(
            (0..(big_n - 1) as usize).filter(|k| (k + 1) % d as usize != 0).collect(),
            vec![(q(m1), d), (q(m2), d)],
            0,
        )],
    }
}

fn type_b(tag: &'static str, n: i64, iso: bool, second: (i64, i64)) -> Instance {
    let nu = n as usize;
    Instance {
        tag,
        tag_params: vec![2 * n + 1],
        removed: vec![nu - 2],
        env: vec![n, 2],
        env_gl1: 0,
        iso,
        variants: vec![vi(vec![nu - 1], vec![(q(n), 1), (q(second.0), second.1)], 0)],
    }
}

fn d_minus_2(tag: &'static str, n: i64, env_gl1: usize, iso: bool) -> Instance {
    let nu = n as usize;
    let lower = (n % 2 == 0).then(|| VariantInstance {
        black: odd_labels(nu - 1),
        factors: vec![(q(n - 2), 1), (q(1), 2), (q(2), 1)],
        gl1: 1,
    });
    Instance {
        tag,
        tag_params: vec![2 * n],
        removed: vec![nu - 3],
        env: vec![n - 2, 2, 2],
        env_gl1,
        iso,
        variants: vec![vi(vec![nu - 2, nu - 1], vec![(q(n - 2), 1), (q(1), 2), (q(1), 2)], 1), lower],
    }
}

fn d_minus_3_black_lower(n: usize) -> Vec<usize> {
    let mut b = odd_labels(n - 2);
    b.extend([n - 2, n - 1]);
    b
}

fn templates() -> Vec<Template> {
    let a_samples = vec![vec![4, 2, 1], vec![6, 2, 2], vec![6, 3, 1], vec![8, 2, 1], vec![8, 4, 1], vec![9, 3, 2]];
    let a_params = ["n+1", "d", "m_1"];
    let a_black = "all but α_d, α_{2d}, …";
    let mut t = vec![
        Template {
            entry: entry(
                "A/GL", "A_n", "GL_{n+1}", "α_{m_1 d}", None,
                "M = M_θ = GL_{m_1 d} × GL_{m_2 d} = M̃",
                vec![variant("n+1 = d(m+1)", a_black, "M′(F) = GL_{m_1}(D_d) × GL_{m_2}(D_d)")],
                &a_params, a_samples.clone(),
            ),
            build: Some(|p| type_a("GL", p, true)),
        },
        Template {
            entry: entry(
                "A/SL", "A_n", "SL_{n+1}", "α_{m_1 d}", None,
                "M = M_θ = G ∩ (GL_{m_1 d} × GL_{m_2 d}) ↪ GL_{m_1 d} × GL_{m_2 d} = M̃",
                vec![variant("n+1 = d(m+1)", a_black, "M′(F) = G′(F) ∩ (GL_{m_1}(D_d) × GL_{m_2}(D_d))")],
                &a_params, a_samples,
            ),
            build: Some(|p| type_a("SL", p, false)),
        },
        Template {
            entry: entry(
                "B/Spin", "B_n", "Spin_{2n+1}", "α_{n-1}", None,
                "M = M_θ ≅ GL_n × SL_2 ↪ M̃ = GL_n × GL_2",
                vec![variant("any n", "α_n", "M′(F) ≅ GL_n(F) × SL_1(D_2)")],
                &["n"], vec![vec![3], vec![4], vec![5]],
            ),
            build: Some(|p| type_b("Spin", p[0], false, (1, 2))),
        },
        Template {
            entry: entry(
                "B/GSpin", "B_n", "GSpin_{2n+1}", "α_{n-1}", None,
                "M = M_θ ≅ GL_n × GL_2 = M̃",
                vec![variant("any n", "α_n", "M′(F) ≅ GL_n(F) × GL_1(D_2)")],
                &["n"], vec![vec![3], vec![4], vec![5]],
            ),
            build: Some(|p| type_b("GSpin", p[0], true, (1, 2))),
        },
        Template {
            entry: entry(
                "C/Sp even", "C_n", "Sp_{2n}", "α_n", None,
                "M = M_θ ≅ GL_n = M̃ (Siegel Levi)",
                vec![variant("n even", "α_1, α_3, …, α_{n-1}", "M′(F) ≅ GL_{n/2}(D_2)")],
                &["n"], vec![vec![2], vec![4], vec![6]],
            ),
            build: Some(|p| {
                let n = p[0];
                Instance {
                    tag: "Sp",
                    tag_params: vec![2 * n],
                    removed: vec![n as usize - 1],
                    env: vec![n],
                    env_gl1: 0,
                    iso: true,
                    variants: vec![vi(odd_labels(n as usize), vec![(half(n), 2)], 0)],
                }
            }),
        },
        Template {
            entry: entry(
                "C/GSp even", "C_n", "GSp_{2n}", "α_n", None,
                "M = M_θ ≅ GL_n × GL_1 = M̃",
                vec![variant("n even", "α_1, α_3, …, α_{n-1}", "M′(F) ≅ GL_{n/2}(D_2) × GL_1(F)")],
                &["n"], vec![vec![2], vec![4], vec![6]],
            ),
            build: Some(|p| {
                let n = p[0];
                Instance {
                    tag: "GSp",
                    tag_params: vec![2 * n],
                    removed: vec![n as usize - 1],
                    env: vec![n],
                    env_gl1: 1,
                    iso: true,
                    variants: vec![vi(odd_labels(n as usize), vec![(half(n), 2)], 1)],
                }
            }),
        },
        Template {
            entry: entry(
                "C/Sp odd", "C_n", "Sp_{2n}", "α_{n-1}", None,
                "M = M_θ ≅ GL_{n-1} × SL_2 ↪ GL_{n-1} × GL_2 = M̃",
                vec![variant("n odd", "α_1, α_3, …, α_n", "M′(F) ≅ GL_{(n-1)/2}(D_2) × SL_1(D_2)")],
                &["n"], vec![vec![3], vec![5], vec![7]],
            ),
            build: Some(|p| {
                let n = p[0];
                Instance {
                    tag: "Sp",
                    tag_params: vec![2 * n],
                    removed: vec![n as usize - 2],
                    env: vec![n - 1, 2],
                    env_gl1: 0,
                    iso: false,
                    variants: vec![vi(odd_labels(n as usize), vec![(half(n - 1), 2), (q(1), 2)], 0)],
                }
            }),
        },
        Template {
            entry: entry(
                "C/GSp odd", "C_n", "GSp_{2n}", "α_{n-1}", None,
                "M = M_θ ≅ GL_n × GL_2 = M̃",
                vec![variant("n odd", "α_1, α_3, …, α_n", "M′(F) ≅ GL_{(n-1)/2}(D_2) × GL_1(D_2)")],
                &["n"], vec![vec![3], vec![5], vec![7]],
            ),
            build: Some(|p| {
                let n = p[0];
                Instance {
                    tag: "GSp",
                    tag_params: vec![2 * n],
                    removed: vec![n as usize - 2],
                    env: vec![n, 2],
                    env_gl1: 0,
                    iso: true,
                    variants: vec![vi(odd_labels(n as usize), vec![(half(n - 1), 2), (q(1), 2)], 0)],
                }
            }),
        },
    ];
    let d_even = vec![vec![4], vec![6], vec![8]];
    t.extend([
        Template {
            entry: entry(
                "D_n-1/Spin", "D_n", "Spin_{2n}", "α_n", None,
                "M_der = SL_n ↪ M = M_θ ↪ GL_1 × GL_n = M̃",
                vec![variant("n even", "α_1, α_3, …, α_{n-1}", "M′(F) ↪ GL_1(F) × GL_{n/2}(D_2) = M̃′(F)")],
                &["n"], d_even.clone(),
            ),
            build: Some(|p| d_minus_1("Spin", p[0], 1, false, 1)),
        },
        Template {
            entry: entry(
                "D_n-1/GSpin", "D_n", "GSpin_{2n}", "α_n", None,
                "M = M_θ ≅ GL_1 × GL_n = M̃",
                vec![variant("n even", "α_1, α_3, …, α_{n-1}", "M′(F) ≅ GL_1 × GL_{n/2}(D_2)")],
                &["n"], d_even.clone(),
            ),
            build: Some(|p| d_minus_1("GSpin", p[0], 1, true, 1)),
        },
        Template {
            entry: entry(
                "D_n-1/SO", "D_n", "SO_{2n}", "α_n", None,
                "M = M_θ ≅ GL_n = M̃ (Siegel Levi)",
                vec![variant("n even", "α_1, α_3, …, α_{n-1}", "M′(F) ≅ GL_{n/2}(D_2)")],
                &["n"], d_even,
            ),
            build: Some(|p| d_minus_1("SO", p[0], 0, true, 0)),
        },
        Template {
            entry: entry(
                "D_n-2/Spin", "D_n", "Spin_{2n}", "α_{n-2}", None,
                "M_der ≅ SL_{n-2} × SL_2 × SL_2 ↪ M = M_θ ↪ GL_1 × GL_{n-2} × GL_2 × GL_2 = M̃",
                vec![
                    variant("any n", "α_{n-1}, α_n", "M′(F) ↪ GL_1(F) × GL_{n-2}(F) × GL_1(D_2) × GL_1(D_2) = M̃′(F)"),
                    variant("n even", "α_1, α_3, …, α_{n-1}", "M′(F) ↪ GL_1(F) × GL_{n-2}(F) × GL_1(D_2) × GL_2(F) = M̃′(F)"),
                ],
                &["n"], vec![vec![4], vec![5], vec![6]],
            ),
            build: Some(|p| d_minus_2("Spin", p[0], 1, false)),
        },
        Template {
            entry: entry(
                "D_n-2/GSpin", "D_n", "GSpin_{2n}", "α_{n-2}", None,
                "M = M_θ ≅ GL_{n-2} × GL_2 × GL_2 = M̃",
                vec![
                    variant("any n", "α_{n-1}, α_n", "M′(F) ≅ GL_1(F) × GL_{n-2}(F) × GL_1(D_2) × GL_1(D_2)"),
                    variant("n even", "α_1, α_3, …, α_{n-1}", "M′(F) ≅ GL_1(F) × GL_{n-2}(F) × GL_1(D_2) × GL_2(F)"),
                ],
                &["n"], vec![vec![4], vec![5], vec![6]],
            ),
            build: Some(|p| d_minus_2("GSpin", p[0], 0, true)),
        },
        Template {
            entry: entry(
                "D_n-3/Spin", "D_n", "Spin_{2n}", "α_{n-3}", None,
                "M_der ≅ SL_{n-3} × SL_4 ↪ M = M_θ ↪ GL_1 × GL_{n-3} × GL_4 = M̃",
                vec![
                    variant("any n", "α_{n-1}, α_n", "M′(F) ↪ GL_1(F) × GL_{n-3}(F) × GL_2(D_2) = M̃′(F)"),
                    variant("n odd", "α_1, α_3, …, α_{n-2}, α_{n-1}, α_n", "M′(F) ↪ GL_1(F) × GL_{(n-3)/2}(D_2) × GL_1(D_4) = M̃′(F)"),
                ],
                &["n"], vec![vec![5], vec![6], vec![7]],
            ),
            build: Some(|p| {
                let (n, nu) = (p[0], p[0] as usize);
                Instance {
                    tag: "Spin",
                    tag_params: vec![2 * n],
                    removed: vec![nu - 4],
                    env: vec![n - 3, 4],
                    env_gl1: 1,
                    iso: false,
                    variants: vec![
                        vi(vec![nu - 2, nu - 1], vec![(q(n - 3), 1), (q(2), 2)], 1),
                        (n % 2 == 1).then(|| VariantInstance {
                            black: d_minus_3_black_lower(nu),
                            factors: vec![(half(n - 3), 2), (q(1), 4)],
                            gl1: 1,
                        }),
                    ],
                }
            }),
        },
        Template {
            entry: entry(
                "D_n-3/GSpin", "D_n", "GSpin_{2n}", "α_{n-3}", None,
                "M = M_θ ≅ GL_{n-2} × GL_4 = M̃",
                vec![
                    variant("any n", "α_{n-1}, α_n", "M′(F) ≅ GL_{n-2}(F) × GL_2(D_2)"),
                    variant("n odd", "α_1, α_3, …, α_{n-2}, α_{n-1}, α_n", "M′(F) ≅ GL_{(n-2)/2}(D_2) × GL_1(D_4)"),
                ],
                &["n"], vec![vec![5], vec![6], vec![7]],
            ),
            build: Some(|p| {
                let (n, nu) = (p[0], p[0] as usize);
                Instance {
                    tag: "GSpin",
                    tag_params: vec![2 * n],
                    removed: vec![nu - 4],
                    env: vec![n - 2, 4],
                    env_gl1: 0,
                    iso: true,
                    variants: vec![
                        vi(vec![nu - 2, nu - 1], vec![(q(n - 2), 1), (q(2), 2)], 0),
                        (n % 2 == 1).then(|| VariantInstance {
                            black: d_minus_3_black_lower(nu),
                            factors: vec![(half(n - 2), 2), (q(1), 4)],
                            gl1: 0,
                        }),
                    ],
                }
            }),
        },
        Template {
            entry: entry(
                "E_6/α_4", "E_6", "E_6 simply connected", "α_4", Some("α_3"),
                "M_der ≅ SL_3 × SL_3 × SL_2 ↪ M = M_θ ↪ GL_1 × GL_3 × GL_3 × GL_2 = M̃",
                vec![variant("", "α_1, α_3, α_5, α_6", "M′(F) ↪ GL_1 × GL_1(D_3) × GL_1(D_3) × GL_2(F) = M̃′(F)")],
                &[], vec![vec![]],
            ),
            build: Some(|_| exceptional("E6sc", &[3], &[3, 3, 2], vec![(q(1), 3), (q(1), 3), (q(2), 1)], &[0, 2, 4, 5])),
        },
        Template {
            entry: entry(
                "E_6/α_2", "E_6", "E_6 simply connected", "α_2", Some("α_6"),
                "M_der ≅ SL_6 ↪ M = M_θ ↪ GL_1 × GL_6 = M̃",
                vec![variant("", "α_1, α_3, α_5, α_6", "M′(F) ↪ GL_1(F) × GL_2(D_2) = M̃′(F)")],
                &[], vec![vec![]],
            ),
            build: Some(|_| exceptional("E6sc", &[1], &[6], vec![(q(2), 2)], &[0, 2, 4, 5])),
        },
        Template {
            entry: entry(
                "E_6/α_2,α_4", "E_6", "E_6 simply connected", "α_2, α_4", Some("α_3, α_6"),
                "M_der ≅ SL_3 × SL_3 ↪ M = M_θ ↪ GL_1 × GL_3 × GL_3 = M̃",
                vec![variant("", "α_1, α_3, α_5, α_6", "M′(F) ↪ GL_1(F) × GL_1(D_3) × GL_1(D_3) = M̃′(F)")],
                &[], vec![vec![]],
            ),
            build: Some(|_| exceptional("E6sc", &[1, 3], &[3, 3], vec![(q(1), 3), (q(1), 3)], &[0, 2, 4, 5])),
        },
        Template {
            entry: entry(
                "E_7/α_4", "E_7", "E_7 simply connected", "α_4", Some("α_4"),
                "M_der ≅ SL_2 × SL_3 × SL_4 ↪ M = M_θ ↪ GL_1 × GL_2 × GL_3 × GL_4 = M̃",
                vec![variant("", "α_2, α_5, α_7", "M′(F) ↪ GL_1(F) × GL_1(D_2) × GL_3(F) × GL_2(D_2) = M̃′(F)")],
                &[], vec![vec![]],
            ),
            build: Some(|_| {
                exceptional("E7sc", &[3], &[2, 3, 4], vec![(q(1), 2), (q(3), 1), (q(2), 2)], &[1, 4, 6])
            }),
        },
        Template {
            entry: entry(
                "E_7/α_3", "E_7", "E_7 simply connected", "α_3", Some("α_5"),
                "M_der ≅ SL_6 × SL_2 ↪ M = M_θ ↪ GL_1 × GL_6 × GL_2 = M̃",
                vec![variant("", "α_2, α_5, α_7", "M′(F) ↪ GL_1(F) × GL_3(D_2) × GL_2(F) = M̃′(F)")],
                &[], vec![vec![]],
            ),
            build: Some(|_| exceptional("E7sc", &[2], &[6, 2], vec![(q(3), 2), (q(2), 1)], &[1, 4, 6])),
        },
    ]);
    for (key, tag) in [("E_8", "E_8"), ("F_4", "F_4"), ("G_2", "G_2")] {
        t.push(Template {
            entry: entry(key, tag, tag, "", None, "no non-quasi-split inner forms", vec![], &[], vec![vec![]]),
            build: None,
        });
    }
    t
}

fn d_minus_1(tag: &'static str, n: i64, env_gl1: usize, iso: bool, gl1: usize) -> Instance {
    let nu = n as usize;
    Instance {
        tag,
        tag_params: vec![2 * n],
        removed: vec![nu - 1],
        env: vec![n],
        env_gl1,
        iso,
        variants: vec![vi(odd_labels(nu - 1), vec![(half(n), 2)], gl1)],
    }
}

fn exceptional(
    tag: &'static str,
    removed: &[usize],
    env: &[i64],
    factors: Vec<(Rational64, i64)>,
    black: &[usize],
) -> Instance {
    Instance {
        tag,
        tag_params: vec![],
        removed: removed.to_vec(),
        env: env.to_vec(),
        env_gl1: 1,
        iso: false,
        variants: vec![vi(black.to_vec(), factors, 1)],
    }
}

/// The catalog as published, without recomputation.
pub fn appendix_catalog() -> Vec<CatalogEntry> {
    templates().into_iter().map(|t| t.entry).collect()
}

fn gl_list(gl1: usize, sizes: &[i64]) -> String {
    let mut parts = vec!["GL_1".to_string(); gl1];
    parts.extend(sizes.iter().map(|n| format!("GL_{n}")));
    parts.join(" × ")
}

fn m_text(m: Rational64) -> String {
    if m.is_integer() {
        m.to_integer().to_string()
    } else {
        format!("{{{m}}}")
    }
}

fn inner_list(gl1: usize, factors: &[(Rational64, i64)]) -> String {
    let mut parts = vec!["GL_1(F)".to_string(); gl1];
    for &(m, d) in factors {
        parts.push(if d == 1 {
            format!("GL_{}(F)", m_text(m))
        } else {
            format!("GL_{}(D_{d})", m_text(m))
        });
    }
    parts.join(" × ")
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn params_text(names: &[String], values: &[i64]) -> String {
    names.iter().zip(values).map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", ")
}

fn group_text(tag: &str, params: &[i64]) -> String {
    match params {
        [] => tag.to_string(),
        _ => format!("{tag}({})", params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")),
    }
}

fn check_variant(
    entry: &CatalogEntry,
    inst: &Instance,
    label: &str,
    params: String,
    v: &VariantInstance,
) -> CatalogCheck {
    let g = build_catalog_group(inst.tag, &inst.tag_params).expect("catalog group");
    let desc = LeviDescriptor::removing(g.clone(), &inst.removed).expect("catalog Levi");
    let report = analyze_levi(&desc);
    let diagram = SatakeDiagram::of_datum(&g, &v.black).expect("catalog diagram");
    let mut issues = Vec::new();
    let mut notes = Vec::new();
    let stated_env = gl_list(inst.env_gl1, &inst.env);
    let stated_m_prime = inner_list(v.gl1, &v.factors);
    let mut check = CatalogCheck {
        key: entry.key.clone(),
        variant: label.to_string(),
        params,
        group: group_text(inst.tag, &inst.tag_params),
        removed: inst.removed.iter().map(|i| i + 1).collect(),
        black: v.black.iter().map(|i| i + 1).collect(),
        diagram: render(&diagram, RenderStyle::Unicode),
        derived_type: report.derived_type.label(),
        envelope: String::new(),
        kinds: Vec::new(),
        gl1: 0,
        isomorphic: false,
        stated_envelope: stated_env,
        stated_m_prime,
        computed_m_prime: String::new(),
        computed_levi: String::new(),
        issues: Vec::new(),
        notes: Vec::new(),
    };
    let Some(env) = report.gl_envelope.clone() else {
        check.issues.push(format!("Levi of type {} fails the sandwich condition", check.derived_type));
        return check;
    };
    check.envelope = env.describe();
    check.kinds = env.blocks.iter().map(|b| b.kind).collect();
    check.gl1 = env.gl1;
    check.isomorphic = env.isomorphic;

    let computed_sizes: Vec<i64> = env.blocks.iter().map(|b| b.size as i64).collect();
    if sorted(&computed_sizes) != sorted(&inst.env) {
        issues.push(format!(
            "envelope: stated {}, computed {}",
            gl_list(0, &sorted(&inst.env)),
            gl_list(0, &sorted(&computed_sizes))
        ));
    }
    if inst.iso && !env.isomorphic {
        let kinds: Vec<&str> = env.blocks.iter().map(|b| b.kind.label()).collect();
        issues.push(format!("stated M = M̃, computed M is a proper subgroup (kinds {})", kinds.join(", ")));
    }
    if let Some(&(m, _)) = v.factors.iter().find(|(m, _)| !m.is_integer()) {
        issues.push(format!("stated multiplicity {m} is not an integer"));
    }
    let products: Vec<Rational64> = v.factors.iter().map(|&(m, d)| m * d).collect();
    let stated_n: Vec<Rational64> = inst.env.iter().map(|&n| q(n)).collect();
    if sorted(&products) != sorted(&stated_n) {
        let shown: Vec<String> = sorted(&products).into_iter().map(m_text).collect();
        issues.push(format!(
            "arithmetic: stated m·d = {{{}}} against stated n_i = {{{}}}",
            shown.join(", "),
            sorted(&inst.env).iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
        ));
        let mut unmatched = sorted(&inst.env);
        for p in &products {
            if let Some(pos) = unmatched.iter().position(|&n| q(n) == *p) {
                unmatched.remove(pos);
            }
        }
        for n in unmatched {
            let cands: Vec<String> = (2..=n).filter(|d| n % d == 0).map(|d| format!("GL_{}(D_{d})", n / d)).collect();
            notes.push(format!("consistent candidates for n_i = {n}: {}", cands.join(", ")));
        }
    }
    match degrees_from_diagram(&desc, &v.black).and_then(|d| transfer_levi(&report, &d)) {
        Ok(shape) => {
            check.computed_m_prime = shape.describe_envelope();
            check.computed_levi = shape.describe();
            let got: Vec<(Rational64, i64)> = sorted(
                &shape.factors.iter().map(|f| (q(f.m as i64), f.d as i64)).collect::<Vec<_>>(),
            );
            if got != sorted(&v.factors) {
                issues.push(format!(
                    "inner form: stated {}, diagram gives {}",
                    inner_list(0, &sorted(&v.factors)),
                    inner_list(0, &got)
                ));
            }
        }
        Err(e) => issues.push(format!("diagram: {e}")),
    }
    if inst.env_gl1 != env.gl1 || v.gl1 != env.gl1 {
        notes.push(format!(
            "central GL_1 factors: stated {} in M̃ and {} in M̃′, minimal computed {}",
            inst.env_gl1, v.gl1, env.gl1
        ));
    }
    check.issues = issues;
    check.notes = notes;
    check
}

fn check_no_inner_forms(entry: &CatalogEntry) -> CatalogCheck {
    let tag = entry.key.replace('_', "");
    let g = build_catalog_group(&tag, &[]).expect("exceptional tag");
    let order = ad_quotient_order(&g);
    let diagram = SatakeDiagram::of_datum(&g, &[]).expect("diagram");
    CatalogCheck {
        key: entry.key.clone(),
        variant: String::new(),
        params: String::new(),
        group: tag,
        removed: vec![],
        black: vec![],
        diagram: render(&diagram, RenderStyle::Unicode),
        derived_type: String::new(),
        envelope: String::new(),
        kinds: vec![],
        gl1: 0,
        isomorphic: false,
        stated_envelope: String::new(),
        stated_m_prime: String::new(),
        computed_m_prime: String::new(),
        computed_levi: String::new(),
        issues: if order == 1 { vec![] } else { vec![format!("|A(G_ad)| = {order}, expected 1")] },
        notes: vec![format!("|A(G_ad)| = {order}")],
    }
}

/// Recomputes every entry at its sample ranks.
pub fn check_catalog() -> CatalogReport {
    let mut checks = Vec::new();
    let mut entries = Vec::new();
    for t in templates() {
        match t.build {
            None => checks.push(check_no_inner_forms(&t.entry)),
            Some(build) => {
                for s in &t.entry.samples {
                    let inst = build(s);
                    for (stated, v) in t.entry.variants.iter().zip(&inst.variants) {
                        if let Some(v) = v {
                            let params = params_text(&t.entry.param_names, s);
                            checks.push(check_variant(&t.entry, &inst, &stated.label, params, v));
                        }
                    }
                }
            }
        }
        entries.push(t.entry);
    }
    CatalogReport { entries, checks }
}

fn cell(s: &str) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.replace('|', "\\|")
    }
}

impl CatalogReport {
    /// Keys and variant labels of entries with at least one issue.
    pub fn flagged(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> =
            self.checks.iter().filter(|c| c.flagged()).map(|c| (c.key.clone(), c.variant.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Maximal Levi subgroups and their inner forms\n\n");
        out.push_str("Roots are labelled in Bourbaki order. Each entry lists the published statement, ");
        out.push_str("then a recomputation at sample ranks from the root datum and the Satake diagram.\n");
        for e in &self.entries {
            let _ = writeln!(out, "\n## {}\n", e.key);
            let _ = writeln!(out, "- group: {}", e.group);
            if !e.removed.is_empty() {
                let _ = write!(out, "- removed: {}", e.removed);
                if let Some(c) = &e.removed_chain_labels {
                    let _ = write!(out, " (chain labels: {c})");
                }
                out.push('\n');
            }
            let _ = writeln!(out, "- M: {}", e.m);
            for v in &e.variants {
                let label = if v.label.is_empty() { String::new() } else { format!(" [{}]", v.label) };
                let _ = writeln!(out, "- M′{label}: {} (black: {})", v.m_prime, v.black);
            }
            let checks: Vec<&CatalogCheck> = self.checks.iter().filter(|c| c.key == e.key).collect();
            if e.variants.is_empty() {
                for c in &checks {
                    let _ = writeln!(out, "\n```text\n{}\n```\n", c.diagram);
                    let _ = writeln!(out, "- {}: {}", c.group, c.notes.join("; "));
                    let status = if c.flagged() { c.issues.join("; ") } else { "ok".to_string() };
                    let _ = writeln!(out, "- status: {status}");
                }
                continue;
            }
            if let Some(first) = checks.first() {
                let _ = writeln!(out, "\n```text\n{}\n```", first.diagram);
            }
            out.push_str("\n| sample | variant | group | M_der | envelope (kinds) | stated M̃′ | computed M̃′ | status |\n");
            out.push_str("|---|---|---|---|---|---|---|---|\n");
            for c in &checks {
                let kinds: Vec<&str> = c.kinds.iter().map(|k| k.label()).collect();
                let env = if c.envelope.is_empty() {
                    "-".to_string()
                } else {
                    format!("{} ({})", c.envelope, kinds.join(", "))
                };
                let status = if c.flagged() { format!("FLAG: {}", c.issues.join("; ")) } else { "ok".to_string() };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    cell(&c.params),
                    cell(&c.variant),
                    cell(&c.group),
                    cell(&c.derived_type),
                    cell(&env),
                    cell(&c.stated_m_prime),
                    cell(&c.computed_m_prime),
                    cell(&status)
                );
            }
            let notes: Vec<&String> = checks.iter().flat_map(|c| &c.notes).collect();
            let mut seen = Vec::new();
            for n in notes {
                if !seen.contains(&n) {
                    seen.push(n);
                }
            }
            if !seen.is_empty() {
                out.push('\n');
                for n in seen {
                    let _ = writeln!(out, "- note: {n}");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_checked() {
        let r = check_catalog();
        assert_eq!(r.entries.len(), 23);
        for e in &r.entries {
            assert!(r.checks.iter().any(|c| c.key == e.key), "{}", e.key);
        }
    }

    #[test]
    fn siegel_entries_agree() {
        let r = check_catalog();
        for c in r.checks.iter().filter(|c| c.key == "C/Sp even" || c.key == "D_n-1/SO") {
            assert!(!c.flagged(), "{c:?}");
        }
        let e7 = r.checks.iter().find(|c| c.key == "E_7/α_4").unwrap();
        assert_eq!(e7.computed_m_prime, "GL_1(D_2) × GL_3(F) × GL_2(D_2)");
        assert!(!e7.flagged());
    }

    #[test]
    fn six_by_two_is_flagged_with_candidates() {
        let r = check_catalog();
        let c = r.checks.iter().find(|c| c.key == "E_6/α_2").unwrap();
        assert!(c.issues.iter().any(|i| i.starts_with("arithmetic")));
        assert!(c.notes.iter().any(|n| n.contains("GL_3(D_2), GL_2(D_3), GL_1(D_6)")));
        assert_eq!(c.computed_m_prime, "GL_1(F) × GL_2(D_3)");
    }
}
