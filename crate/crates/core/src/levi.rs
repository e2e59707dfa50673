//! Standard Levi subgroups `M_theta`: derived type, split component,
//! the condition `prod SL_{n_i} <= M <= prod GL_{n_i}`, and an explicit
//! minimal envelope `M~ = GL_1^k x prod GL_{n_i}`.

use crate::rootdata::{
    classify, fundamental_group, snf, AbelianShape, BasedRootDatum, DynkinType, FiniteAbelianGroup, Series,
};
use crate::weyl::{normalize_theta, WeylError};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Cap on candidate evaluations in the envelope search.
pub const ENVELOPE_SEARCH_CAP: usize = 20_000;
/// Cap on candidates examined for factor kinds once the minimal count is reached.
pub const KIND_SEARCH_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviDescriptor {
    pub ambient: BasedRootDatum,
    pub theta: Vec<usize>,
}

impl LeviDescriptor {
    pub fn new(ambient: BasedRootDatum, theta: &[usize]) -> Result<Self, WeylError> {
        let theta = normalize_theta(&ambient, theta)?;
        Ok(LeviDescriptor { ambient, theta })
    }

    /// `theta = Delta - removed`.
    pub fn removing(ambient: BasedRootDatum, removed: &[usize]) -> Result<Self, WeylError> {
        let l = ambient.semisimple_rank();
        if let Some(&index) = removed.iter().find(|&&i| i >= l) {
            return Err(WeylError::BadTheta { index, count: l });
        }
        let theta: Vec<usize> = (0..l).filter(|i| !removed.contains(i)).collect();
        Self::new(ambient, &theta)
    }

    pub fn removed(&self) -> Vec<usize> {
        (0..self.ambient.semisimple_rank()).filter(|i| !self.theta.contains(i)).collect()
    }
}

pub fn levi_datum(desc: &LeviDescriptor) -> BasedRootDatum {
    let mut d = desc.ambient.restrict(&desc.theta);
    d.name = format!("M[{}]", desc.ambient.name);
    d
}

pub fn is_maximal(desc: &LeviDescriptor) -> bool {
    desc.theta.len() + 1 == desc.ambient.semisimple_rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// `GL_{n_i}` is a direct factor of `M`.
    Gl,
    /// `SL_{n_i}` is a direct factor of `M`.
    Sl,
    /// Neither; `M` sits strictly between on this factor.
    Sandwich,
}

impl FactorKind {
    pub fn label(self) -> &'static str {
        match self {
            FactorKind::Gl => "GL",
            FactorKind::Sl => "SL",
            FactorKind::Sandwich => "sandwich",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeBlock {
    pub size: usize,
    /// Theta indices along the path, starting at the lower-index end.
    pub vertices: Vec<usize>,
    pub kind: FactorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    /// Ordered by size, then by smallest vertex.
    pub blocks: Vec<EnvelopeBlock>,
    /// Number of extra `GL_1` factors.
    pub gl1: usize,
    /// Exact minimum of `gl1` over all envelopes; equal to `gl1` when the search certifies.
    pub gl1_lower_bound: usize,
    /// Images in `X` of the standard characters of `M~`: per block `e_1..e_{n_i}`, then the `GL_1`s.
    pub embedding: Vec<Vec<i64>>,
    /// `M = M~`.
    pub isomorphic: bool,
}

impl Envelope {
    /// `n_i` of every factor, `GL_1`s first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut v = vec![1; self.gl1];
        v.extend(self.blocks.iter().map(|b| b.size));
        v
    }

    /// e.g. "GL_1 × GL_2 × GL_3".
    pub fn describe(&self) -> String {
        self.sizes().iter().map(|n| format!("GL_{n}")).collect::<Vec<_>>().join(" × ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviReport {
    pub theta: Vec<usize>,
    /// Semisimple type of `M_der`.
    pub derived_type: DynkinType,
    pub split_component_rank: usize,
    pub derived_pi1: FiniteAbelianGroup,
    pub condition_one: bool,
    pub is_maximal: bool,
    /// `X / Z Phi_theta`.
    pub character_quotient: AbelianShape,
    /// `Y / Z Phi_theta^vee`.
    pub cocharacter_quotient: AbelianShape,
    pub gl_envelope: Option<Envelope>,
}

pub fn analyze_levi(desc: &LeviDescriptor) -> LeviReport {
    let m = levi_datum(desc);
    let mut derived_type = classify(&m).expect("sub-datum of a valid datum");
    derived_type.torus_rank = 0;
    let derived_pi1 = fundamental_group(&m);
    let theta_coroots: Vec<Vec<i64>> = m.simple_coroots.clone();
    let theta_roots: Vec<Vec<i64>> = m.simple_roots.clone();
    let split_component_rank = snf::integer_kernel(m.rank, &theta_roots).len();
    let condition_one = derived_type.all_type_a() && derived_pi1.is_trivial();
    let gl_envelope = condition_one.then(|| envelope(desc, &m));
    LeviReport {
        theta: desc.theta.clone(),
        derived_type,
        split_component_rank,
        derived_pi1,
        condition_one,
        is_maximal: is_maximal(desc),
        character_quotient: snf::quotient_shape(m.rank, &theta_roots),
        cocharacter_quotient: snf::quotient_shape(m.rank, &theta_coroots),
        gl_envelope,
    }
}

/// Type-A components of `M` in envelope order, as theta indices along the path.
pub fn envelope_blocks(desc: &LeviDescriptor) -> Vec<Vec<usize>> {
    let m = levi_datum(desc);
    let mut blocks: Vec<Vec<usize>> = m
        .components()
        .into_iter()
        .filter(|c| c.series == Series::A)
        .map(|c| c.vertices.iter().map(|&k| desc.theta[k]).collect())
        .collect();
    blocks.sort_by_key(|b: &Vec<usize>| (b.len(), *b.iter().min().unwrap()));
    blocks
}

fn add_scaled(v: &mut [i64], w: &[i64], c: i64) {
    for (a, b) in v.iter_mut().zip(w) {
        *a += c * b;
    }
}

fn quotient_generators(s: usize, rows: &[Vec<i64>]) -> usize {
    snf::quotient_shape(s, rows).generator_count()
}

fn primes_dividing(n: usize) -> Vec<u64> {
    let mut n = n as u64;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rank of integer rows modulo a prime.
fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = mod_inverse(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let e = a.extended_gcd(&p);
    e.x.rem_euclid(p)
}

/// Enumerates integer vectors of the given length by increasing L1 norm.
fn shells(len: usize, max_norm: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..=max_norm).flat_map(move |norm| {
        let mut out = Vec::new();
        let mut cur = vec![0i64; len];
        fill(&mut out, &mut cur, 0, norm);
        out
    })
}

fn fill(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, pos: usize, left: i64) {
    if pos == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for v in -left..=left {
        cur[pos] = v;
        fill(out, cur, pos + 1, left - v.abs());
    }
    cur[pos] = 0;
}

fn envelope(desc: &LeviDescriptor, m: &BasedRootDatum) -> Envelope {
    let r = m.rank;
    let theta_coroots = &m.simple_coroots;
    let blocks = envelope_blocks(desc);
    let pos_in_theta = |v: usize| desc.theta.iter().position(|&t| t == v).unwrap();
    let root = |v: usize| &desc.ambient.simple_roots[v];

    // A: characters vanishing on the theta coroots
    let a_basis = snf::integer_kernel(r, theta_coroots);
    let s = a_basis.len();
    let c = blocks.len();

    // p_i: pairs to 1 with the first coroot of block i, 0 with the other theta coroots
    let p: Vec<Vec<i64>> = blocks
        .iter()
        .map(|b| {
            let mut rhs = vec![0; desc.theta.len()];
            rhs[pos_in_theta(b[0])] = 1;
            snf::solve_integer(r, theta_coroots, &rhs).expect("theta coroots saturated")
        })
        .collect();

    // coordinates in the A basis
    let a_coords = |x: &[i64]| -> Vec<i64> {
        let cols: Vec<Vec<i64>> = (0..r).map(|k| a_basis.iter().map(|a| a[k]).collect()).collect();
        snf::solve_integer(s, &cols, x).expect("element of A")
    };

    // q_i = n_i p_i - sum_j (n_i - j) beta_j lies in A
    let q: Vec<Vec<i64>> = blocks
        .iter()
        .zip(&p)
        .map(|(b, pi)| {
            let n = (b.len() + 1) as i64;
            let mut x: Vec<i64> = pi.iter().map(|v| v * n).collect();
            for (j, &v) in b.iter().enumerate() {
                add_scaled(&mut x, root(v), -(n - 1 - j as i64));
            }
            a_coords(&x)
        })
        .collect();
    let sizes: Vec<usize> = blocks.iter().map(|b| b.len() + 1).collect();

    // exact minimum of the GL_1 count
    let mut best_rank = s.min(c);
    let mut all_primes: Vec<u64> = sizes.iter().flat_map(|&n| primes_dividing(n)).collect();
    all_primes.sort_unstable();
    all_primes.dedup();
    for &pr in &all_primes {
        let fixed: Vec<Vec<i64>> = (0..c).filter(|&i| sizes[i] as u64 % pr == 0).map(|i| q[i].clone()).collect();
        let free = (0..c).filter(|&i| sizes[i] as u64 % pr != 0).count();
        let rk = if s == 0 { 0 } else { rank_mod_p(&fixed, pr) };
        best_rank = best_rank.min(rk + free);
    }
    let lower = s - best_rank.min(s);

    // search a_i so that A / <q_i + n_i a_i> needs `lower` generators,
    // preferring embeddings with fewer sandwich factors
    let build = |coef: &[i64]| build_rows(r, s, &blocks, &p, &q, &sizes, &a_basis, root, coef);
    let mut best: Option<(usize, usize, Vec<Vec<i64>>, Vec<usize>)> = None;
    let mut kind_evals = 0;
    for (evals, coef) in shells(c * s, 3).enumerate() {
        if evals >= ENVELOPE_SEARCH_CAP {
            break;
        }
        let k = quotient_generators(s, &v_rows(&q, &sizes, s, &coef));
        if best.as_ref().is_some_and(|b| k > b.0 || (b.0 == lower && kind_evals >= KIND_SEARCH_CAP)) {
            if best.as_ref().is_some_and(|b| b.0 == lower) && kind_evals >= KIND_SEARCH_CAP {
                break;
            }
            continue;
        }
        kind_evals += 1;
        let (rows, starts) = build(&coef);
        let sandwiches = factor_kinds(r, &rows, &starts, &sizes)
            .iter()
            .filter(|&&k| k == FactorKind::Sandwich)
            .count();
        if best.as_ref().map_or(true, |b| (k, sandwiches) < (b.0, b.1)) {
            best = Some((k, sandwiches, rows, starts));
        }
        if best.as_ref().is_some_and(|b| b.0 == lower && b.1 == 0) {
            break;
        }
    }
    let (gl1, _, rows, starts) = best.expect("at least one candidate");
    let mut kinds = factor_kinds(r, &rows, &starts, &sizes);
    // SL_{n_i} is a direct factor iff Y = Z Phi_i^vee + ann_Y(Phi_i); this does
    // not depend on the embedding found above
    for (i, b) in blocks.iter().enumerate() {
        if kinds[i] != FactorKind::Sandwich {
            continue;
        }
        let block_roots: Vec<Vec<i64>> = b.iter().map(|&v| root(v).clone()).collect();
        let mut gens: Vec<Vec<i64>> = b.iter().map(|&v| desc.ambient.simple_coroots[v].clone()).collect();
        gens.extend(snf::integer_kernel(r, &block_roots));
        if snf::quotient_shape(r, &gens).is_trivial() {
            kinds[i] = FactorKind::Sl;
        }
    }

    let isomorphic = sizes.iter().sum::<usize>() + gl1 == r;
    Envelope {
        blocks: blocks
            .into_iter()
            .zip(kinds)
            .map(|(b, kind)| EnvelopeBlock { size: b.len() + 1, vertices: b, kind })
            .collect(),
        gl1,
        gl1_lower_bound: lower,
        embedding: rows,
        isomorphic,
    }
}

fn v_rows(q: &[Vec<i64>], sizes: &[usize], s: usize, coef: &[i64]) -> Vec<Vec<i64>> {
    q.iter()
        .enumerate()
        .map(|(i, qi)| (0..s).map(|k| qi[k] + sizes[i] as i64 * coef[i * s + k]).collect())
        .collect()
}

/// Embedding rows for the coefficient choice `coef` (`a_i` in the A basis),
/// and the first row of each block.
#[allow(clippy::too_many_arguments)]
fn build_rows<'a>(
    r: usize,
    s: usize,
    blocks: &[Vec<usize>],
    p: &[Vec<i64>],
    q: &[Vec<i64>],
    sizes: &[usize],
    a_basis: &[Vec<i64>],
    root: impl Fn(usize) -> &'a Vec<i64>,
    coef: &[i64],
) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut starts = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let mut si = p[i].clone();
        for k in 0..s {
            add_scaled(&mut si, &a_basis[k], coef[i * s + k]);
        }
        starts.push(rows.len());
        rows.push(si.clone());
        for &v in b {
            add_scaled(&mut si, root(v), -1);
            rows.push(si.clone());
        }
    }
    // GL_1 characters: lifts of the generators of A / <v_i>
    if s > 0 {
        let v = v_rows(q, sizes, s, coef);
        let (winv, diag): (Vec<Vec<i64>>, Vec<i64>) = if v.is_empty() {
            ((0..s).map(|j| (0..s).map(|k| i64::from(j == k)).collect()).collect(), vec![])
        } else {
            let d = snf::smith_normal_form(&snf::IntMatrix::from_rows(s, &v));
            let w = d.v.to_i64_rows().expect("small entries");
            // row j of W^{-1}
            let cols: Vec<Vec<i64>> = (0..s)
                .map(|k| {
                    let mut e = vec![0; s];
                    e[k] = 1;
                    snf::solve_integer(s, &w, &e).expect("unimodular")
                })
                .collect();
            let inv = (0..s).map(|j| (0..s).map(|k| cols[k][j]).collect()).collect();
            (inv, d.diagonal().iter().map(|x| x.to_i64().unwrap()).collect())
        };
        for (j, wj) in winv.iter().enumerate() {
            if diag.get(j) == Some(&1) {
                continue;
            }
            let mut t = vec![0; r];
            for (k, ak) in a_basis.iter().enumerate() {
                add_scaled(&mut t, ak, wj[k]);
            }
            rows.push(t);
        }
    }
    (rows, starts)
}

/// Kind of each block factor, read off the cocharacter lattice `Y`
/// embedded in `Z^N` by the rows.
fn factor_kinds(r: usize, rows: &[Vec<i64>], starts: &[usize], sizes: &[usize]) -> Vec<FactorKind> {
    let total = rows.len();
    starts
        .iter()
        .zip(sizes)
        .map(|(&st, &n)| {
            let range = st..st + n;
            let others: Vec<Vec<i64>> = (0..total).filter(|k| !range.contains(k)).map(|k| rows[k].clone()).collect();
            let mine: Vec<Vec<i64>> = range.clone().map(|k| rows[k].clone()).collect();
            let here = snf::integer_kernel(r, &others);
            if here.len() == n {
                FactorKind::Gl
            } else if here.len() + 1 == n {
                let mut both = here;
                both.extend(snf::integer_kernel(r, &mine));
                if both.len() == r && snf::quotient_shape(r, &both).is_trivial() {
                    FactorKind::Sl
                } else {
                    FactorKind::Sandwich
                }
            } else {
                FactorKind::Sandwich
            }
        })
        .collect()
}
