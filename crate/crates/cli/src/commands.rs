use crate::labels::{parse_list, parse_removed, show};
use crate::{CliError, DivisionArgs, GlobalizeArgs, GroupSel, InnerFormsArgs, LeviArgs, LjArgs, Output, SatakeArgs, WeylArgs};
use innerform::globalize::{global_division_algebra, globalization_plan, HasseVector};
use innerform::grothendieck::{character_sign, lj_map, Side, VirtualElement};
use innerform::kottwitz::{ad_quotient_order, inner_form_classes_gl, kottwitz_report};
use innerform::levi::{analyze_levi, envelope_blocks, FactorKind, LeviDescriptor};
use innerform::rootdata::{parse_group_expr, AbelianShape, BasedRootDatum};
use innerform::satake::{check_catalog, degrees_from_diagram, parse_diagram, render, render_ascii, transfer_levi, RenderStyle, SatakeDiagram};
use innerform::weyl::{find_w_theta, rank_one_decomposition, reduced_roots, weyl_group_order, WeylError};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Read;

fn ok<T: Serialize>(text: String, value: &T) -> Result<Output, CliError> {
    Ok(Output {
        text,
        json: serde_json::to_value(value).expect("serializable output"),
        code: 0,
    })
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn group(sel: &GroupSel) -> Result<BasedRootDatum, CliError> {
    let text = sel
        .group
        .as_deref()
        .or(sel.group_flag.as_deref())
        .ok_or_else(|| CliError::Usage("a group is required, e.g. Sp(8) or --group E7sc".into()))?;
    parse_group_expr(text).map_err(|e| CliError::Usage(format!("group {text:?}: {e}")))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<22}{value}");
}

fn descriptor(g: BasedRootDatum, remove: Option<&str>, theta: Option<&str>) -> Result<LeviDescriptor, CliError> {
    let l = g.semisimple_rank();
    match (remove, theta) {
        (Some(r), _) => LeviDescriptor::removing(g, &parse_removed(r, l)?).map_err(domain),
        (None, Some(t)) => LeviDescriptor::new(g, &parse_list(t, l)?).map_err(domain),
        (None, None) => Err(CliError::Usage("give --remove or --theta".into())),
    }
}

#[derive(Serialize)]
struct BlockOut {
    size: usize,
    vertices: Vec<usize>,
    kind: FactorKind,
}

#[derive(Serialize)]
struct EnvelopeOut {
    description: String,
    gl1: usize,
    gl1_lower_bound: usize,
    blocks: Vec<BlockOut>,
    isomorphic: bool,
}

#[derive(Serialize)]
struct LeviOut {
    group: String,
    rank: usize,
    semisimple_rank: usize,
    removed: Vec<usize>,
    theta: Vec<usize>,
    derived_type: String,
    split_component_rank: usize,
    derived_pi1: Vec<u64>,
    condition_one: bool,
    is_maximal: bool,
    character_quotient: AbelianShape,
    cocharacter_quotient: AbelianShape,
    envelope: Option<EnvelopeOut>,
}

pub fn levi(a: &LeviArgs) -> Result<Output, CliError> {
    let g = group(&a.group)?;
    let desc = descriptor(g, a.remove.as_deref(), a.theta.as_deref())?;
    let r = analyze_levi(&desc);
    let out = LeviOut {
        group: desc.ambient.name.clone(),
        rank: desc.ambient.rank,
        semisimple_rank: desc.ambient.semisimple_rank(),
        removed: one_based(&desc.removed()),
        theta: one_based(&desc.theta),
        derived_type: r.derived_type.label(),
        split_component_rank: r.split_component_rank,
        derived_pi1: r.derived_pi1.invariant_factors.clone(),
        condition_one: r.condition_one,
        is_maximal: r.is_maximal,
        character_quotient: r.character_quotient.clone(),
        cocharacter_quotient: r.cocharacter_quotient.clone(),
        envelope: r.gl_envelope.as_ref().map(|e| EnvelopeOut {
            description: e.describe(),
            gl1: e.gl1,
            gl1_lower_bound: e.gl1_lower_bound,
            blocks: e
                .blocks
                .iter()
                .map(|b| BlockOut { size: b.size, vertices: one_based(&b.vertices), kind: b.kind })
                .collect(),
            isomorphic: e.isomorphic,
        }),
    };
    let mut t = String::new();
    row(&mut t, "group", &out.group);
    row(&mut t, "rank", format!("{} (semisimple {})", out.rank, out.semisimple_rank));
    row(&mut t, "removed", show(&desc.removed()));
    row(&mut t, "theta", show(&desc.theta));
    row(&mut t, "derived type", &out.derived_type);
    row(&mut t, "split rank", out.split_component_rank);
    row(&mut t, "pi_1(M_der)", &r.derived_pi1);
    row(&mut t, "condition (1)", out.condition_one);
    row(&mut t, "maximal", out.is_maximal);
    row(&mut t, "X / Z Phi_theta", &out.character_quotient);
    row(&mut t, "Y / Z Phi_theta^vee", &out.cocharacter_quotient);
    match &r.gl_envelope {
        Some(e) => {
            row(&mut t, "envelope", e.describe());
            let kinds: Vec<&str> = e.blocks.iter().map(|b| b.kind.label()).collect();
            row(&mut t, "kinds", kinds.join(", "));
            row(&mut t, "M = M~", e.isomorphic);
        }
        None => row(&mut t, "envelope", "-"),
    }
    ok(t, &out)
}

/// Black vertices realising the given degrees on every envelope block.
fn black_from_degrees(desc: &LeviDescriptor, degrees: &[usize]) -> Vec<usize> {
    let mut black = Vec::new();
    for (b, &d) in envelope_blocks(desc).iter().zip(degrees) {
        for (k, &v) in b.iter().enumerate() {
            if d > 0 && (k + 1) % d != 0 {
                black.push(v);
            }
        }
    }
    black.sort_unstable();
    black
}

fn parse_degrees(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad degree {t:?}"))))
        .collect()
}

#[derive(Serialize)]
struct FactorOut {
    m: usize,
    d: usize,
    kind: FactorKind,
}

#[derive(Serialize)]
struct SatakeOut {
    group: String,
    removed: Vec<usize>,
    black: Vec<usize>,
    diagram: String,
    degrees: Vec<usize>,
    envelope: String,
    factors: Vec<FactorOut>,
    gl1: usize,
    inner_envelope: String,
    inner_levi: String,
}

pub fn satake(a: &SatakeArgs) -> Result<Output, CliError> {
    let g = group(&a.group)?;
    let desc = descriptor(g, Some(&a.remove), None)?;
    let report = analyze_levi(&desc);
    let l = desc.ambient.semisimple_rank();
    let (degrees, black) = match (&a.degrees, &a.black) {
        (Some(d), _) => {
            let d = parse_degrees(d)?;
            let shape = transfer_levi(&report, &d).map_err(domain)?;
            let black = black_from_degrees(&desc, &shape.factors.iter().map(|f| f.d).collect::<Vec<_>>());
            (d, black)
        }
        (None, Some(b)) => {
            let black = parse_list(b, l)?;
            (degrees_from_diagram(&desc, &black).map_err(domain)?, black)
        }
        (None, None) => return Err(CliError::Usage("give --degrees or --black".into())),
    };
    let shape = transfer_levi(&report, &degrees).map_err(domain)?;
    let diagram = SatakeDiagram::of_datum(&desc.ambient, &black).map_err(domain)?;
    let env = report.gl_envelope.as_ref().expect("transfer succeeded");
    let out = SatakeOut {
        group: desc.ambient.name.clone(),
        removed: one_based(&desc.removed()),
        black: one_based(&black),
        diagram: render(&diagram, RenderStyle::Unicode),
        degrees: degrees.clone(),
        envelope: env.describe(),
        factors: shape.factors.iter().map(|f| FactorOut { m: f.m, d: f.d, kind: f.kind }).collect(),
        gl1: shape.gl1,
        inner_envelope: shape.describe_envelope(),
        inner_levi: shape.describe(),
    };
    let mut t = String::new();
    row(&mut t, "group", &out.group);
    row(&mut t, "removed", show(&desc.removed()));
    row(&mut t, "black", show(&black));
    let _ = writeln!(t, "diagram");
    for line in render_ascii(&diagram).lines() {
        let _ = writeln!(t, "  {line}");
    }
    row(&mut t, "degrees", degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
    row(&mut t, "envelope", &out.envelope);
    row(&mut t, "M~'(F)", &out.inner_envelope);
    row(&mut t, "M'(F)", &out.inner_levi);
    ok(t, &out)
}

fn env_ascii() -> bool {
    std::env::var("INNERFORM_ASCII").map(|v| !v.is_empty() && v != "0").unwrap_or(false)
}

pub fn appendix_a() -> Result<Output, CliError> {
    let report = check_catalog();
    let mut shown = report.clone();
    if env_ascii() {
        for c in &mut shown.checks {
            if let Ok(d) = parse_diagram(&c.diagram) {
                c.diagram = render(&d, RenderStyle::Ascii);
            }
        }
    }
    ok(shown.to_markdown(), &report)
}

#[derive(Serialize)]
struct ReducedRootOut {
    direction: Vec<i64>,
    preimages: Vec<Vec<i64>>,
    m_alpha_type: String,
}

#[derive(Serialize)]
struct WeylOut {
    group: String,
    theta: Vec<usize>,
    order: Option<u64>,
    w_word: Vec<usize>,
    image_of_theta: Vec<usize>,
    reduced_roots: Vec<ReducedRootOut>,
}

pub fn weyl(a: &WeylArgs) -> Result<Output, CliError> {
    let g = group(&a.group)?;
    let theta = match (&a.remove, &a.theta) {
        (None, None) => Vec::new(),
        (r, t) => descriptor(g.clone(), r.as_deref(), t.as_deref())?.theta,
    };
    let order = match weyl_group_order(&g) {
        Ok(o) => Some(o),
        Err(WeylError::RankTooLarge { .. }) => None,
        Err(e) => return Err(domain(e)),
    };
    let (word, image) = find_w_theta(&g, &theta).map_err(domain)?;
    let roots = reduced_roots(&g, &theta).map_err(domain)?;
    let factors = rank_one_decomposition(&g, &theta).map_err(domain)?;
    let out = WeylOut {
        group: g.name.clone(),
        theta: one_based(&theta),
        order,
        w_word: one_based(&word.letters),
        image_of_theta: one_based(&image),
        reduced_roots: roots
            .iter()
            .zip(&factors)
            .map(|(r, f)| ReducedRootOut {
                direction: r.direction.clone(),
                preimages: r.preimages.clone(),
                m_alpha_type: f.m_alpha_type.label(),
            })
            .collect(),
    };
    let mut t = String::new();
    row(&mut t, "group", &out.group);
    row(&mut t, "theta", show(&theta));
    row(&mut t, "|W|", order.map_or("not enumerated above rank 6".to_string(), |o| o.to_string()));
    let w = if word.is_empty() {
        "1".to_string()
    } else {
        word.letters.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
    };
    row(&mut t, "w_theta", w);
    row(&mut t, "w_theta(theta)", show(&image));
    let _ = writeln!(t, "reduced roots");
    for r in &out.reduced_roots {
        let _ = writeln!(t, "  {:?}  M_alpha {}  ({} roots)", r.direction, r.m_alpha_type, r.preimages.len());
    }
    ok(t, &out)
}

#[derive(Serialize)]
struct KottwitzOut {
    group: String,
    invariant_factors: Vec<u64>,
    order: u64,
    dual_center_dim: usize,
    semisimple: bool,
    adjoint_quotient_order: u64,
}

pub fn kottwitz(a: &GroupSel) -> Result<Output, CliError> {
    let g = group(a)?;
    let r = kottwitz_report(&g);
    let out = KottwitzOut {
        group: g.name.clone(),
        invariant_factors: r.group.invariant_factors.clone(),
        order: r.order,
        dual_center_dim: r.dual_center_dim,
        semisimple: r.semisimple,
        adjoint_quotient_order: ad_quotient_order(&g),
    };
    let mut t = String::new();
    row(&mut t, "group", &out.group);
    row(&mut t, "A(G)", &r.group);
    row(&mut t, "|A(G)|", out.order);
    row(&mut t, "dim Z(G^)", out.dual_center_dim);
    row(&mut t, "|A(G_ad)|", out.adjoint_quotient_order);
    ok(t, &out)
}

#[derive(Serialize)]
struct InnerFormOut {
    j: u64,
    invariant: String,
    d: u64,
    m: u64,
    description: String,
}

#[derive(Serialize)]
struct InnerFormsOut {
    n: u64,
    classes: Vec<InnerFormOut>,
}

fn gl_size(text: &str) -> Result<u64, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    t.strip_prefix("GL(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| CliError::Usage(format!("expected GL(n), got {text:?}")))
}

pub fn inner_forms(a: &InnerFormsArgs) -> Result<Output, CliError> {
    let n = match (&a.group, a.n) {
        (Some(g), _) => gl_size(g)?,
        (None, Some(n)) => n,
        (None, None) => return Err(CliError::Usage("give GL(n) or --n".into())),
    };
    if n == 0 {
        return Err(CliError::Domain("n must be positive".into()));
    }
    let classes: Vec<InnerFormOut> = inner_form_classes_gl(n)
        .into_iter()
        .map(|c| InnerFormOut {
            j: c.j,
            invariant: if c.j == 0 { "0".into() } else { format!("{}/{}", c.j_prime, c.d) },
            d: c.d,
            m: c.m(),
            description: c.describe(),
        })
        .collect();
    let mut t = format!("{:>4}  {:<8}{:>4}  form\n", "j", "inv", "d");
    for c in &classes {
        let _ = writeln!(t, "{:>4}  {:<8}{:>4}  {}", c.j, c.invariant, c.d, c.description);
    }
    ok(t, &InnerFormsOut { n, classes })
}

pub fn globalize(a: &GlobalizeArgs) -> Result<Output, CliError> {
    let plan = globalization_plan(a.prime, a.places, a.class_order, a.class).map_err(domain)?;
    let p = &plan.places;
    let mut t = String::new();
    row(&mut t, "base prime", p.base_prime);
    row(&mut t, "places requested", p.places.len());
    row(&mut t, "r", p.r);
    let qs: Vec<String> = p.tower_primes.iter().map(|q| q.to_string()).collect();
    row(&mut t, "tower primes", if qs.is_empty() { "-".to_string() } else { qs.join(", ") });
    row(&mut t, "degree", p.degree);
    let names = |v: &[innerform::globalize::PlaceLabel]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    row(&mut t, "T", names(&p.places));
    row(&mut t, "S", names(&plan.s));
    row(&mut t, "|S| multiple of", plan.s_multiple_of);
    row(&mut t, "class", format!("{}/{}", a.class % a.class_order, a.class_order));
    row(&mut t, "sum over places", plan.cocycle.sum);
    row(&mut t, "cocycle valid", plan.cocycle.valid);
    row(&mut t, "assumption", &p.assumption);
    ok(t, &plan)
}

pub fn division_algebra(a: &DivisionArgs) -> Result<Output, CliError> {
    let inv: HasseVector = a.inv.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    let r = global_division_algebra(a.n, &inv).map_err(domain)?;
    let mut t = String::new();
    row(&mut t, "n", r.n);
    for l in &r.local {
        let form = if l.d == 1 { format!("M_{}(F_v)", l.m) } else { format!("M_{}(D_{})", l.m, l.d) };
        let _ = writeln!(t, "  {:<12}{:<8}d = {}, m = {}  {}", l.place.to_string(), l.invariant.to_string(), l.d, l.m, form);
    }
    row(&mut t, "sum", r.sum);
    row(&mut t, "ramified", r.ramified.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
    row(&mut t, "valid", r.valid);
    let mut out = ok(t, &r)?;
    if !r.valid {
        out.text.push_str("no global algebra: the invariants do not sum to 0 in Q/Z\n");
        out.code = 1;
    }
    Ok(out)
}

#[derive(Serialize)]
struct LjOut {
    n: u32,
    d: u32,
    m: u32,
    input: VirtualElement,
    output: VirtualElement,
    printed: String,
    sign: i32,
    compatible: bool,
}

pub fn lj(a: &LjArgs) -> Result<Output, CliError> {
    let text = match a.element.as_deref() {
        Some(e) if e != "-" => e.to_string(),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
            s
        }
    };
    if a.n == 0 || a.d == 0 || a.n % a.d != 0 {
        return Err(CliError::Domain(format!("d = {} does not divide n = {}", a.d, a.n)));
    }
    let x = VirtualElement::parse(text.trim(), Side::Split { n: a.n }).map_err(|e| CliError::Usage(e.to_string()))?;
    let suffix = a.suffix.clone();
    let y = lj_map(&x, a.d, &|t: &str| format!("{t}{suffix}")).map_err(domain)?;
    let m = a.n / a.d;
    let out = LjOut {
        n: a.n,
        d: a.d,
        m,
        printed: y.to_string(),
        compatible: !y.is_zero(),
        sign: character_sign(a.n, m).map_err(domain)?,
        input: x,
        output: y,
    };
    ok(format!("{}\n", out.printed), &out)
}
