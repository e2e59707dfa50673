//! Cartan matrix classification with Bourbaki vertex ordering.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Whether (series, rank) names an irreducible type, before canonicalization.
pub fn type_exists(series: Series, rank: usize) -> bool {
    match series {
        Series::A => rank >= 1,
        Series::B | Series::C => rank >= 2,
        Series::D => rank >= 4,
        Series::E => (6..=8).contains(&rank),
        Series::F => rank == 4,
        Series::G => rank == 2,
    }
}

/// Canonical label for small-rank coincidences: B1, C1 -> A1; D3 -> A3.
/// D2 splits and is handled by the caller.
pub fn canonical(series: Series, rank: usize) -> (Series, usize) {
    match (series, rank) {
        (Series::B | Series::C, 1) => (Series::A, 1),
        (Series::D, 3) => (Series::A, 3),
        other => other,
    }
}

/// Cartan matrix `C[i][j] = <alpha_i, alpha_j^vee>` in Bourbaki numbering
/// (0-based). B_n has alpha_n short, C_n has alpha_n long, G_2 has alpha_1 short.
/// Accepts the degenerate labels B1, C1, D2, D3.
pub fn cartan_matrix(series: Series, rank: usize) -> Vec<Vec<i64>> {
    let n = rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series {
        Series::A => {
            for i in 1..n {
                link(&mut c, i - 1, i);
            }
        }
        Series::B | Series::C => {
            for i in 1..n {
                link(&mut c, i - 1, i);
            }
            if n >= 2 {
                if series == Series::B {
                    c[n - 2][n - 1] = -2;
                } else {
                    c[n - 1][n - 2] = -2;
                }
            }
        }
        Series::D => {
            if n >= 3 {
                for i in 1..n - 1 {
                    link(&mut c, i - 1, i);
                }
                link(&mut c, n - 3, n - 1);
            }
        }
        Series::E => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 3..n {
                link(&mut c, i - 1, i);
            }
        }
        Series::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[1][2] = -2;
        }
        Series::G => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    c
}

/// One irreducible component of a Dynkin diagram. `vertices[k]` is the
/// input index playing the role of Bourbaki alpha_{k+1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub series: Series,
    pub rank: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("Cartan matrix is not square")]
    NotSquare,
    #[error("entry ({0},{1}) violates the Cartan matrix axioms")]
    BadEntry(usize, usize),
    #[error("component on vertices {0:?} is not of finite type")]
    NotFinite(Vec<usize>),
}

/// Checks the Cartan axioms: diagonal 2, off-diagonal <= 0, zero pattern symmetric.
pub fn check_cartan(c: &[Vec<i64>]) -> Result<(), ClassifyError> {
    let n = c.len();
    if c.iter().any(|r| r.len() != n) {
        return Err(ClassifyError::NotSquare);
    }
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(ClassifyError::BadEntry(i, i));
        }
        for j in 0..n {
            if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                return Err(ClassifyError::BadEntry(i, j));
            }
        }
    }
    Ok(())
}

/// Connected components, each as a sorted vertex list, ordered by smallest vertex.
pub fn connected_components(c: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = c.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for w in 0..n {
                if !seen[w] && c[v][w] != 0 {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Classifies every component and orders its vertices in Bourbaki fashion.
/// Type A paths start at the endpoint with the smaller index.
pub fn classify_cartan(c: &[Vec<i64>]) -> Result<Vec<Component>, ClassifyError> {
    check_cartan(c)?;
    connected_components(c)
        .into_iter()
        .map(|comp| classify_connected(c, &comp))
        .collect()
}

fn classify_connected(c: &[Vec<i64>], comp: &[usize]) -> Result<Component, ClassifyError> {
    let bad = || ClassifyError::NotFinite(comp.to_vec());
    let nbrs = |v: usize| -> Vec<usize> {
        comp.iter().copied().filter(|&w| w != v && c[v][w] != 0).collect()
    };
    let mult = |a: usize, b: usize| c[a][b] * c[b][a];
    let k = comp.len();
    let edges: usize = comp.iter().map(|&v| nbrs(v).len()).sum::<usize>() / 2;
    if edges != k - 1 {
        return Err(bad());
    }

    let order: Vec<usize>;
    let series: Series;
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| nbrs(v).len() >= 3).collect();
    let heavy: Vec<(usize, usize)> = comp
        .iter()
        .flat_map(|&a| nbrs(a).into_iter().map(move |b| (a, b)))
        .filter(|&(a, b)| a < b && mult(a, b) > 1)
        .collect();

    if k == 1 {
        series = Series::A;
        order = comp.to_vec();
    } else if !branch.is_empty() {
        if branch.len() != 1 || !heavy.is_empty() {
            return Err(bad());
        }
        let centre = branch[0];
        let nb = nbrs(centre);
        if nb.len() != 3 {
            return Err(bad());
        }
        let mut arms: Vec<Vec<usize>> = nb.iter().map(|&s| walk(c, comp, centre, s)).collect();
        if arms.iter().any(|a| a.is_empty()) {
            return Err(bad());
        }
        // shortest arms first, ties by smallest far-end index
        arms.sort_by_key(|a| (a.len(), *a.last().unwrap()));
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        match lens.as_slice() {
            [1, 1, _] => {
                series = Series::D;
                let mut chain: Vec<usize> = arms[2].iter().rev().copied().collect();
                chain.push(centre);
                let (mut x, mut y) = (arms[0][0], arms[1][0]);
                if lens[2] == 1 {
                    // D4: the smallest leaf plays alpha_1
                    let mut leaves = vec![arms[0][0], arms[1][0], arms[2][0]];
                    leaves.sort_unstable();
                    chain = vec![leaves[0], centre];
                    x = leaves[1];
                    y = leaves[2];
                }
                if x > y {
                    std::mem::swap(&mut x, &mut y);
                }
                chain.push(x);
                chain.push(y);
                order = chain;
            }
            [1, 2, 2..=4] => {
                series = Series::E;
                let (mut short, mut long) = (arms[1].clone(), arms[2].clone());
                if lens[2] == 2 && short.last() > long.last() {
                    std::mem::swap(&mut short, &mut long);
                }
                let mut o = vec![short[1], arms[0][0], short[0], centre];
                o.extend(long.iter().copied());
                order = o;
            }
            _ => return Err(bad()),
        }
    } else {
        // a path
        let ends: Vec<usize> = comp.iter().copied().filter(|&v| nbrs(v).len() == 1).collect();
        if ends.len() != 2 {
            return Err(bad());
        }
        let path_from = |s: usize| -> Vec<usize> {
            let mut p = vec![s];
            p.extend(walk(c, comp, usize::MAX, s).into_iter().skip(1));
            p
        };
        match heavy.as_slice() {
            [] => {
                series = Series::A;
                order = path_from(ends[0].min(ends[1]));
            }
            [(a, b)] => {
                let m = mult(*a, *b);
                if m == 3 {
                    if k != 2 {
                        return Err(bad());
                    }
                    series = Series::G;
                    // alpha_2 is the long root: C[long][short] = -3
                    order = if c[*a][*b] == -3 { vec![*b, *a] } else { vec![*a, *b] };
                } else if m == 2 {
                    // long end of the double bond: C[long][short] = -2
                    let (long, short) = if c[*a][*b] == -2 { (*a, *b) } else { (*b, *a) };
                    if k == 2 {
                        if long < short {
                            series = Series::B;
                            order = vec![long, short];
                        } else {
                            series = Series::C;
                            order = vec![short, long];
                        }
                    } else {
                        let short_end = ends.iter().copied().find(|&e| e == short);
                        let long_end = ends.iter().copied().find(|&e| e == long);
                        if let Some(s) = short_end {
                            series = Series::B;
                            let p = path_from(s);
                            order = p.into_iter().rev().collect();
                        } else if let Some(l) = long_end {
                            series = Series::C;
                            order = path_from(l).into_iter().rev().collect();
                        } else if k == 4 {
                            series = Series::F;
                            // alpha_1, alpha_2 long
                            let start = ends
                                .iter()
                                .copied()
                                .find(|&e| nbrs(e)[0] == long)
                                .ok_or_else(bad)?;
                            order = path_from(start);
                        } else {
                            return Err(bad());
                        }
                    }
                } else {
                    return Err(bad());
                }
            }
            _ => return Err(bad()),
        }
    }

    let rank = order.len();
    let (cs, cr) = canonical(series, rank);
    // verify against the standard matrix in the chosen ordering
    let std = cartan_matrix(cs, cr);
    for i in 0..rank {
        for j in 0..rank {
            if c[order[i]][order[j]] != std[i][j] {
                return Err(bad());
            }
        }
    }
    Ok(Component {
        series: cs,
        rank: cr,
        vertices: order,
    })
}

/// Follows a path starting at `start`, never stepping back to `from`.
/// Stops where the path ends or branches.
fn walk(c: &[Vec<i64>], comp: &[usize], from: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let next: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&w| w != cur && w != prev && c[cur][w] != 0)
            .collect();
        if next.len() != 1 || out.contains(&next[0]) {
            return out;
        }
        prev = cur;
        cur = next[0];
        out.push(cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(series: Series, rank: usize) {
        let c = cartan_matrix(series, rank);
        let comps = classify_cartan(&c).unwrap();
        assert_eq!(comps.len(), 1, "{series}{rank}");
        assert_eq!((comps[0].series, comps[0].rank), (series, rank));
        assert_eq!(comps[0].vertices, (0..rank).collect::<Vec<_>>(), "{series}{rank}");
    }

    #[test]
    fn standard_matrices_classify_to_themselves() {
        for r in 1..=8 {
            roundtrip(Series::A, r);
        }
        for r in 2..=8 {
            roundtrip(Series::B, r);
            roundtrip(Series::C, r);
        }
        for r in 4..=8 {
            roundtrip(Series::D, r);
        }
        for r in 6..=8 {
            roundtrip(Series::E, r);
        }
        roundtrip(Series::F, 4);
        roundtrip(Series::G, 2);
    }

    #[test]
    fn permuted_matrix_recovers_ordering() {
        // E7 has no diagram symmetry, so the ordering is forced
        let std = cartan_matrix(Series::E, 7);
        let perm = [3, 5, 0, 6, 1, 4, 2];
        let mut c = vec![vec![0; 7]; 7];
        for i in 0..7 {
            for j in 0..7 {
                c[perm[i]][perm[j]] = std[i][j];
            }
        }
        let comps = classify_cartan(&c).unwrap();
        assert_eq!(comps[0].series, Series::E);
        assert_eq!(comps[0].vertices, perm.to_vec());
    }

    #[test]
    fn small_rank_coincidences() {
        let d3 = classify_cartan(&cartan_matrix(Series::D, 3)).unwrap();
        assert_eq!((d3[0].series, d3[0].rank), (Series::A, 3));
        let d2 = classify_cartan(&cartan_matrix(Series::D, 2)).unwrap();
        assert_eq!(d2.len(), 2);
        assert!(d2.iter().all(|c| (c.series, c.rank) == (Series::A, 1)));
    }

    #[test]
    fn rejects_affine() {
        // affine A2: a triangle
        let c = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(classify_cartan(&c).is_err());
        let bad = vec![vec![2, -1], vec![0, 2]];
        assert!(check_cartan(&bad).is_err());
    }
}
