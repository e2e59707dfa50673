//! Weyl group machinery: root enumeration, group orders, the element
//! `w = w_{l,Delta} w_{l,theta}`, reduced roots relative to `A_M` and the
//! rank-one groups `M_alpha`.

use crate::rootdata::{classify::classify_cartan, snf, BasedRootDatum, DynkinType};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet, VecDeque};

/// Enumeration bound for [`weyl_group_order`].
pub const MAX_ENUMERATION_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("semisimple rank {rank} exceeds the enumeration bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("theta index {index} out of range for {count} simple roots")]
    BadTheta { index: usize, count: usize },
}

/// `letters = [a_1, ..., a_k]` stands for `s_{a_1} s_{a_2} ... s_{a_k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Acts on a vector written in simple-root coordinates.
    pub fn act_on_root(&self, cartan: &[Vec<i64>], beta: &[i64]) -> Vec<i64> {
        let mut b = beta.to_vec();
        for &i in self.letters.iter().rev() {
            reflect_root(cartan, i, &mut b);
        }
        b
    }

    /// Acts on the character lattice by the reflections `x - <x, a_i^vee> a_i`.
    pub fn act_on_character(&self, datum: &BasedRootDatum, x: &[i64]) -> Vec<i64> {
        let mut v = x.to_vec();
        for &i in self.letters.iter().rev() {
            let p = crate::rootdata::dot(&v, &datum.simple_coroots[i]);
            for (vk, ak) in v.iter_mut().zip(&datum.simple_roots[i]) {
                *vk -= p * ak;
            }
        }
        v
    }
}

/// `s_i(beta) = beta - <beta, a_i^vee> a_i` in simple-root coordinates.
fn reflect_root(cartan: &[Vec<i64>], i: usize, b: &mut [i64]) {
    let p: i64 = b.iter().enumerate().map(|(j, bj)| bj * cartan[j][i]).sum();
    b[i] -= p;
}

/// `s_i(g) = g - <a_i, g> a_i^vee` in simple-coroot coordinates.
fn reflect_coroot(cartan: &[Vec<i64>], i: usize, g: &mut [i64]) {
    let p: i64 = g.iter().enumerate().map(|(k, gk)| cartan[i][k] * gk).sum();
    g[i] -= p;
}

/// `s_i(l) = l - l_i * (row i of C)` in fundamental-weight coordinates.
fn reflect_weight(cartan: &[Vec<i64>], i: usize, l: &mut [i64]) {
    let li = l[i];
    for (lk, ck) in l.iter_mut().zip(&cartan[i]) {
        *lk -= li * ck;
    }
}

/// A positive root with its coroot, both in simple coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub coeffs: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// The root as a character.
    pub fn character(&self, datum: &BasedRootDatum) -> Vec<i64> {
        combine(&self.coeffs, &datum.simple_roots, datum.rank)
    }

    /// The coroot as a cocharacter.
    pub fn cocharacter(&self, datum: &BasedRootDatum) -> Vec<i64> {
        combine(&self.coroot, &datum.simple_coroots, datum.rank)
    }
}

fn combine(coeffs: &[i64], basis: &[Vec<i64>], rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for (c, b) in coeffs.iter().zip(basis) {
        for (vk, bk) in v.iter_mut().zip(b) {
            *vk += c * bk;
        }
    }
    v
}

/// All positive roots, sorted by height then coefficients.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<PositiveRoot> {
    let l = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..l {
        let mut e = vec![0; l];
        e[i] = 1;
        let r = PositiveRoot { coeffs: e.clone(), coroot: e.clone() };
        seen.insert(e);
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..l {
            let mut b = r.coeffs.clone();
            reflect_root(cartan, i, &mut b);
            if b.iter().any(|&x| x < 0) || seen.contains(&b) {
                continue;
            }
            let mut g = r.coroot.clone();
            reflect_coroot(cartan, i, &mut g);
            seen.insert(b.clone());
            queue.push_back(PositiveRoot { coeffs: b, coroot: g });
        }
        out.push(r);
    }
    out.sort_by(|a, b| (a.height(), &a.coeffs).cmp(&(b.height(), &b.coeffs)));
    out
}

/// Order of the Weyl group, as the orbit of `rho`.
pub fn weyl_group_order(datum: &BasedRootDatum) -> Result<u64, WeylError> {
    let l = datum.semisimple_rank();
    if l > MAX_ENUMERATION_RANK {
        return Err(WeylError::RankTooLarge { rank: l, bound: MAX_ENUMERATION_RANK });
    }
    let c = datum.cartan();
    let rho = vec![1i64; l];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([rho.clone()]);
    let mut queue = VecDeque::from([rho]);
    while let Some(v) = queue.pop_front() {
        for i in 0..l {
            let mut w = v.clone();
            reflect_weight(&c, i, &mut w);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Sorted, deduplicated theta; rejects out-of-range indices.
pub fn normalize_theta(datum: &BasedRootDatum, theta: &[usize]) -> Result<Vec<usize>, WeylError> {
    let count = datum.semisimple_rank();
    let mut t = theta.to_vec();
    t.sort_unstable();
    t.dedup();
    if let Some(&index) = t.iter().find(|&&i| i >= count) {
        return Err(WeylError::BadTheta { index, count });
    }
    Ok(t)
}

/// Longest element of the parabolic subgroup `W_J`, by the greedy descent on `rho_J`.
pub fn longest_element(cartan: &[Vec<i64>], subset: &[usize]) -> WeylWord {
    let l = cartan.len();
    let mut lam = vec![0i64; l];
    for &i in subset {
        lam[i] = 1;
    }
    let mut applied = Vec::new();
    while let Some(&i) = subset.iter().find(|&&i| lam[i] > 0) {
        reflect_weight(cartan, i, &mut lam);
        applied.push(i);
    }
    applied.reverse();
    WeylWord { letters: applied }
}

/// A reduced word for the element whose action on `rho` is given.
fn reduced_word_from_image(cartan: &[Vec<i64>], mut mu: Vec<i64>) -> WeylWord {
    let mut letters = Vec::new();
    while let Some(i) = mu.iter().position(|&x| x < 0) {
        reflect_weight(cartan, i, &mut mu);
        letters.push(i);
    }
    WeylWord { letters }
}

/// `w = w_{l,Delta} w_{l,theta}` as a reduced word, and the simple roots `w(theta)`.
pub fn find_w_theta(datum: &BasedRootDatum, theta: &[usize]) -> Result<(WeylWord, Vec<usize>), WeylError> {
    let theta = normalize_theta(datum, theta)?;
    let c = datum.cartan();
    let l = c.len();
    let all: Vec<usize> = (0..l).collect();
    let mut raw = longest_element(&c, &all).letters;
    raw.extend(longest_element(&c, &theta).letters);
    let raw = WeylWord { letters: raw };

    let mut mu = vec![1i64; l];
    for &i in raw.letters.iter().rev() {
        reflect_weight(&c, i, &mut mu);
    }
    let word = reduced_word_from_image(&c, mu);

    let mut image = Vec::with_capacity(theta.len());
    for &a in &theta {
        let mut e = vec![0; l];
        e[a] = 1;
        let w = word.act_on_root(&c, &e);
        let k = w.iter().position(|&x| x == 1);
        let simple = k.is_some() && w.iter().filter(|&&x| x != 0).count() == 1;
        assert!(simple, "w(alpha_{a}) = {w:?} is not simple");
        image.push(k.unwrap());
    }
    image.sort_unstable();
    Ok((word, image))
}

/// A class of `Phi(P, A_M)`: a primitive direction in the `A_M` coordinates
/// and the positive roots of `G` restricting to a positive multiple of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedRoot {
    pub direction: Vec<i64>,
    /// Simple-root coordinates.
    pub preimages: Vec<Vec<i64>>,
}

/// Basis of the cocharacters of `A_M`: the integer annihilator of the theta roots.
pub fn split_component_basis(datum: &BasedRootDatum, theta: &[usize]) -> Vec<Vec<i64>> {
    let rows: Vec<Vec<i64>> = theta.iter().map(|&i| datum.simple_roots[i].clone()).collect();
    snf::integer_kernel(datum.rank, &rows)
}

fn supported_on(coeffs: &[i64], theta: &[usize]) -> bool {
    coeffs.iter().enumerate().all(|(i, &c)| c == 0 || theta.contains(&i))
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

fn restrictions(datum: &BasedRootDatum, theta: &[usize]) -> Vec<(PositiveRoot, Vec<i64>)> {
    let basis = split_component_basis(datum, theta);
    positive_roots(&datum.cartan())
        .into_iter()
        .filter(|r| !supported_on(&r.coeffs, theta))
        .map(|r| {
            let x = r.character(datum);
            let res = basis.iter().map(|y| crate::rootdata::dot(&x, y)).collect();
            (r, res)
        })
        .collect()
}

/// `Phi(P, A_M)`: one class per positive-proportionality class of restrictions.
/// Classes are ordered by the height of their lowest preimage.
pub fn reduced_roots(datum: &BasedRootDatum, theta: &[usize]) -> Result<Vec<RestrictedRoot>, WeylError> {
    let theta = normalize_theta(datum, theta)?;
    let mut classes: Vec<RestrictedRoot> = Vec::new();
    let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (r, res) in restrictions(datum, &theta) {
        let dir = primitive(&res);
        match index.get(&dir) {
            Some(&k) => classes[k].preimages.push(r.coeffs),
            None => {
                index.insert(dir.clone(), classes.len());
                classes.push(RestrictedRoot { direction: dir, preimages: vec![r.coeffs] });
            }
        }
    }
    Ok(classes)
}

/// Distinct restrictions of the positive roots outside theta, without
/// collapsing multiples (so `t` and `t^2` both appear).
pub fn restricted_roots(datum: &BasedRootDatum, theta: &[usize]) -> Result<Vec<Vec<i64>>, WeylError> {
    let theta = normalize_theta(datum, theta)?;
    let mut out: Vec<Vec<i64>> = Vec::new();
    for (_, res) in restrictions(datum, &theta) {
        if !out.contains(&res) {
            out.push(res);
        }
    }
    Ok(out)
}

/// One factor of the rank-one product formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneFactor {
    pub alpha: RestrictedRoot,
    pub m_alpha_type: DynkinType,
    /// Simple roots of `M_alpha`, in simple-root coordinates of `G`.
    pub m_alpha_simple: Vec<Vec<i64>>,
}

/// For each `alpha` in `Phi(P, A_M)`, the type of `M_alpha = Z_G(A_alpha)`:
/// its roots are those restricting to zero or to a multiple of `alpha`.
pub fn rank_one_decomposition(datum: &BasedRootDatum, theta: &[usize]) -> Result<Vec<RankOneFactor>, WeylError> {
    let theta = normalize_theta(datum, theta)?;
    let c = datum.cartan();
    let pos = positive_roots(&c);
    let inner: Vec<&PositiveRoot> = pos.iter().filter(|r| supported_on(&r.coeffs, &theta)).collect();
    let mut out = Vec::new();
    for alpha in reduced_roots(datum, &theta)? {
        let mut sub: Vec<&PositiveRoot> = inner.clone();
        sub.extend(pos.iter().filter(|r| alpha.preimages.contains(&r.coeffs)));
        let sums: HashSet<Vec<i64>> = sub
            .iter()
            .flat_map(|a| sub.iter().map(move |b| a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect()))
            .collect();
        let simple: Vec<&PositiveRoot> = sub.iter().copied().filter(|r| !sums.contains(&r.coeffs)).collect();
        let cm: Vec<Vec<i64>> = simple
            .iter()
            .map(|a| {
                simple
                    .iter()
                    .map(|b| {
                        let mut s = 0;
                        for (k, ak) in a.coeffs.iter().enumerate() {
                            for (m, gm) in b.coroot.iter().enumerate() {
                                s += ak * c[k][m] * gm;
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let comps = classify_cartan(&cm).expect("closed subsystem of a finite root system");
        let mut components: Vec<_> = comps.iter().map(|k| (k.series, k.rank)).collect();
        components.sort();
        out.push(RankOneFactor {
            alpha,
            m_alpha_type: DynkinType { components, torus_rank: datum.rank - simple.len() },
            m_alpha_simple: simple.iter().map(|r| r.coeffs.clone()).collect(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_catalog_group;

    fn g(tag: &str, p: &[i64]) -> BasedRootDatum {
        build_catalog_group(tag, p).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(&g("SL", &[4]).cartan()).len(), 6);
        assert_eq!(positive_roots(&g("G2", &[]).cartan()).len(), 6);
        assert_eq!(positive_roots(&g("E8", &[]).cartan()).len(), 120);
        assert_eq!(positive_roots(&g("F4", &[]).cartan()).len(), 24);
    }

    #[test]
    fn orders() {
        assert_eq!(weyl_group_order(&g("SL", &[3])).unwrap(), 6);
        assert_eq!(weyl_group_order(&g("Spin", &[7])).unwrap(), 48);
        assert_eq!(weyl_group_order(&g("G2", &[])).unwrap(), 12);
        assert_eq!(weyl_group_order(&g("E6sc", &[])).unwrap(), 51840);
        assert!(matches!(weyl_group_order(&g("E7sc", &[])), Err(WeylError::RankTooLarge { .. })));
    }

    #[test]
    fn w_theta_examples() {
        let (w, img) = find_w_theta(&g("SL", &[3]), &[0]).unwrap();
        assert_eq!(img, vec![1]);
        assert_eq!(w.len(), 2);
        let (w, img) = find_w_theta(&g("SL", &[4]), &[0, 1, 2]).unwrap();
        assert!(w.is_empty());
        assert_eq!(img, vec![0, 1, 2]);
        // C_n: w_0 = -1, so theta is fixed
        let (_, img) = find_w_theta(&g("Sp", &[4]), &[0]).unwrap();
        assert_eq!(img, vec![0]);
    }

    #[test]
    fn longest_lengths() {
        let c = g("E6sc", &[]).cartan();
        assert_eq!(longest_element(&c, &(0..6).collect::<Vec<_>>()).len(), 36);
        assert_eq!(longest_element(&c, &[0, 2]).len(), 3);
    }

    #[test]
    fn reduced_root_examples() {
        let sl3 = g("SL", &[3]);
        assert!(reduced_roots(&sl3, &[0, 1]).unwrap().is_empty());
        assert_eq!(reduced_roots(&sl3, &[]).unwrap().len(), 3);
        let sp4 = g("Sp", &[4]);
        assert_eq!(reduced_roots(&sp4, &[0]).unwrap().len(), 1);
        assert_eq!(reduced_roots(&sp4, &[1]).unwrap().len(), 1);
        // Siegel Levi of Sp(4): the radical is abelian, one restriction
        assert_eq!(restricted_roots(&sp4, &[0]).unwrap().len(), 1);
        // GL(1)xSp(2): restrictions t and t^2
        assert_eq!(restricted_roots(&sp4, &[1]).unwrap().len(), 2);
    }

    #[test]
    fn rank_one_examples() {
        let sl3 = g("SL", &[3]);
        let f = rank_one_decomposition(&sl3, &[0]).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].m_alpha_type.label(), "A2");
        assert!(rank_one_decomposition(&sl3, &[0, 1]).unwrap().is_empty());
    }
}
