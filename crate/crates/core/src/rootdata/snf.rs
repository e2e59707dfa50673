//! Smith normal form over arbitrary-precision integers, and the lattice
//! computations built on it (quotients, integer kernels, integer solves).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have
    /// `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Converts back to machine integers; `None` if an entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `d`, in order. They form a divisibility chain.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form of a rectangular integer matrix.
///
/// Returns unimodular `u`, `v` and diagonal `d` with `u * m * v == d`,
/// nonnegative diagonal, and `d[i][i] | d[i+1][i+1]`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // pivot: smallest nonzero magnitude in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if d.get(pi, pj).abs() <= x.abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t).div_floor(d.get(t, t)));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j).div_floor(d.get(t, t)));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // divisibility of the trailing block by the pivot
            let p = d.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithDecomposition {
    SmithDecomposition { u, d, v }
}

/// Shape of a finitely generated abelian group `Z^free ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianShape {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianShape {
    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_count() == 0
    }
}

impl fmt::Display for AbelianShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// The quotient `Z^dim / span(generators)`.
pub fn quotient_shape(dim: usize, generators: &[Vec<i64>]) -> AbelianShape {
    if generators.is_empty() {
        return AbelianShape {
            free_rank: dim,
            torsion: vec![],
        };
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(dim, generators));
    let diag = snf.diagonal();
    let torsion = diag
        .iter()
        .filter(|v| !v.is_one())
        .map(|v| v.to_u64().expect("torsion coefficient exceeds u64"))
        .collect();
    AbelianShape {
        free_rank: dim - diag.len(),
        torsion,
    }
}

/// Basis (as rows) of the saturated lattice `{x in Z^n : m x = 0}`.
pub fn integer_kernel(n: usize, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(n, m));
    let r = snf.rank();
    let vt = snf.v.transpose();
    (r..n)
        .map(|j| {
            vt.row(j)
                .iter()
                .map(|x| x.to_i64().expect("kernel vector exceeds i64"))
                .collect()
        })
        .collect()
}

/// Some integer solution `x` of `m x = b`, if one exists.
pub fn solve_integer(n: usize, m: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(m.len(), b.len());
    if m.is_empty() {
        return Some(vec![0; n]);
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(n, m));
    let rows = m.len();
    let bm = IntMatrix::from_rows(1, &b.iter().map(|v| vec![*v]).collect::<Vec<_>>());
    let ub = snf.u.mul(&bm);
    let diag = snf.diagonal();
    let mut y = IntMatrix::zeros(n, 1);
    for i in 0..rows {
        let c = ub.get(i, 0);
        if i < diag.len() {
            if !c.is_multiple_of(&diag[i]) {
                return None;
            }
            y.set(i, 0, c / &diag[i]);
        } else if !c.is_zero() {
            return None;
        }
    }
    let x = snf.v.mul(&y);
    (0..n).map(|i| x.get(i, 0).to_i64()).collect()
}

/// Rank of the lattice spanned by the rows.
pub fn lattice_rank(n: usize, rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    smith_normal_form(&IntMatrix::from_rows(n, rows)).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_of(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = IntMatrix::from_rows(rows[0].len(), rows);
        smith_normal_form(&m)
            .diagonal()
            .iter()
            .map(|v| v.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn identity_is_its_own_normal_form() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(snf_of(&id), vec![1, 1, 1]);
    }

    #[test]
    fn rank_one_cartan() {
        assert_eq!(snf_of(&[vec![2]]), vec![2]);
    }

    #[test]
    fn zero_matrix_has_empty_diagonal() {
        assert!(snf_of(&[vec![0, 0], vec![0, 0]]).is_empty());
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) is not in normal form; expect (1, 6)
        assert_eq!(snf_of(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn kernel_and_solve() {
        let m = vec![vec![1, -1, 0], vec![0, 1, -1]];
        let k = integer_kernel(3, &m);
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec![1, 1, 1] || k[0] == vec![-1, -1, -1]);

        let x = solve_integer(3, &m, &[1, 0]).unwrap();
        assert_eq!(x[0] - x[1], 1);
        assert_eq!(x[1] - x[2], 0);

        assert!(solve_integer(1, &[vec![2]], &[1]).is_none());
    }

    #[test]
    fn quotient_of_d4_root_lattice_in_weights() {
        // Cartan matrix of D4 as generators: coweight / coroot quotient is Z/2 x Z/2
        let d4 = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        let q = quotient_shape(4, &d4);
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, vec![2, 2]);
        assert_eq!(q.to_string(), "Z/2 x Z/2");
    }
}
