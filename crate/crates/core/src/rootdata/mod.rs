//! Based root data in explicit coordinates, the group catalog, and
//! lattice invariants computed through Smith normal form.

pub mod classify;
pub mod parse;
pub mod snf;

use serde::{Deserialize, Serialize};
use std::fmt;

pub use classify::{cartan_matrix, Component, Series};
pub use parse::{parse_group_expr, ParseError};
pub use snf::{smith_normal_form, AbelianShape, IntMatrix, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootDataError {
    #[error("unknown group tag `{0}`")]
    UnknownTag(String),
    #[error("invalid parameters {params:?} for `{tag}`: {reason}")]
    InvalidRank {
        tag: String,
        params: Vec<i64>,
        reason: String,
    },
    #[error("malformed root datum: {0}")]
    Malformed(String),
    #[error(transparent)]
    Classify(#[from] classify::ClassifyError),
}

/// Character lattice `Z^rank` with simple roots, cocharacter lattice `Z^rank`
/// with simple coroots; the pairing is the dot product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasedRootDatum {
    pub name: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] += 1;
    v[j] -= 1;
    v
}

impl BasedRootDatum {
    /// Validates the datum: matching lengths, coordinates in `Z^rank`,
    /// and a classifiable Cartan matrix.
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self, RootDataError> {
        let d = BasedRootDatum {
            name: name.into(),
            rank,
            simple_roots,
            simple_coroots,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), RootDataError> {
        if self.simple_roots.len() != self.simple_coroots.len() {
            return Err(RootDataError::Malformed(
                "root and coroot counts differ".into(),
            ));
        }
        if self.simple_roots.len() > self.rank {
            return Err(RootDataError::Malformed("more simple roots than rank".into()));
        }
        if self
            .simple_roots
            .iter()
            .chain(&self.simple_coroots)
            .any(|v| v.len() != self.rank)
        {
            return Err(RootDataError::Malformed("vector length differs from rank".into()));
        }
        classify::classify_cartan(&self.cartan())?;
        Ok(())
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// `C[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        self.simple_roots
            .iter()
            .map(|a| self.simple_coroots.iter().map(|c| dot(a, c)).collect())
            .collect()
    }

    /// Components with Bourbaki vertex orderings.
    pub fn components(&self) -> Vec<Component> {
        classify::classify_cartan(&self.cartan()).expect("validated datum")
    }

    /// Same lattices with roots and coroots exchanged.
    pub fn dual(&self) -> BasedRootDatum {
        BasedRootDatum {
            name: format!("dual({})", self.name),
            rank: self.rank,
            simple_roots: self.simple_coroots.clone(),
            simple_coroots: self.simple_roots.clone(),
        }
    }

    /// Keeps the simple roots indexed by `theta`, lattices unchanged.
    pub fn restrict(&self, theta: &[usize]) -> BasedRootDatum {
        BasedRootDatum {
            name: format!("{}|{:?}", self.name, theta),
            rank: self.rank,
            simple_roots: theta.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            simple_coroots: theta.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
        }
    }

    /// Direct sum of root data.
    pub fn product(&self, other: &BasedRootDatum) -> BasedRootDatum {
        let r = self.rank + other.rank;
        let lift = |v: &Vec<i64>, off: usize| {
            let mut w = vec![0; r];
            w[off..off + v.len()].copy_from_slice(v);
            w
        };
        let mut roots: Vec<Vec<i64>> = self.simple_roots.iter().map(|v| lift(v, 0)).collect();
        roots.extend(other.simple_roots.iter().map(|v| lift(v, self.rank)));
        let mut coroots: Vec<Vec<i64>> = self.simple_coroots.iter().map(|v| lift(v, 0)).collect();
        coroots.extend(other.simple_coroots.iter().map(|v| lift(v, self.rank)));
        BasedRootDatum {
            name: format!("{}x{}", self.name, other.name),
            rank: r,
            simple_roots: roots,
            simple_coroots: coroots,
        }
    }

    /// The adjoint datum of the semisimple part: `X = Z Phi`, simple roots the unit vectors.
    pub fn adjoint_semisimple(&self) -> BasedRootDatum {
        from_cartan_adjoint(format!("ad({})", self.name), &self.cartan())
    }
}

/// Simply connected semisimple datum: `X` in the fundamental-weight basis.
pub fn from_cartan_sc(name: impl Into<String>, c: &[Vec<i64>]) -> BasedRootDatum {
    let l = c.len();
    BasedRootDatum {
        name: name.into(),
        rank: l,
        simple_roots: c.to_vec(),
        simple_coroots: (0..l).map(|i| unit(l, i)).collect(),
    }
}

/// Adjoint semisimple datum: `X` is the root lattice.
pub fn from_cartan_adjoint(name: impl Into<String>, c: &[Vec<i64>]) -> BasedRootDatum {
    let l = c.len();
    BasedRootDatum {
        name: name.into(),
        rank: l,
        simple_roots: (0..l).map(|i| unit(l, i)).collect(),
        simple_coroots: (0..l).map(|j| (0..l).map(|i| c[i][j]).collect()).collect(),
    }
}

/// Irreducible type label, or a direct sum of such, plus a central torus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DynkinType {
    /// Sorted by (series, rank).
    pub components: Vec<(Series, usize)>,
    pub torus_rank: usize,
}

impl DynkinType {
    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    pub fn all_type_a(&self) -> bool {
        self.components.iter().all(|c| c.0 == Series::A)
    }

    /// Component labels such as "A2+A2+A1" without the torus.
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "-".into();
        }
        self.components
            .iter()
            .map(|(s, r)| format!("{s}{r}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())?;
        if self.torus_rank > 0 {
            write!(f, " (torus rank {})", self.torus_rank)?;
        }
        Ok(())
    }
}

/// `Z/d_1 x ... x Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup {
                invariant_factors: vec![n],
            }
        }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.invariant_factors.iter().all(|&d| d >= 2)
            && self.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl From<&AbelianShape> for FiniteAbelianGroup {
    fn from(s: &AbelianShape) -> Self {
        FiniteAbelianGroup {
            invariant_factors: s.torsion.clone(),
        }
    }
}

pub fn classify(datum: &BasedRootDatum) -> Result<DynkinType, RootDataError> {
    let comps = classify::classify_cartan(&datum.cartan())?;
    let mut components: Vec<(Series, usize)> = comps.iter().map(|c| (c.series, c.rank)).collect();
    components.sort();
    Ok(DynkinType {
        components,
        torus_rank: datum.rank - datum.semisimple_rank(),
    })
}

/// Torsion of `Y / Z Phi^vee`.
pub fn fundamental_group(datum: &BasedRootDatum) -> FiniteAbelianGroup {
    (&snf::quotient_shape(datum.rank, &datum.simple_coroots)).into()
}

/// Torsion of `X / Z Phi`, the character group of the component group of the centre.
pub fn center_torsion(datum: &BasedRootDatum) -> FiniteAbelianGroup {
    (&snf::quotient_shape(datum.rank, &datum.simple_roots)).into()
}

fn invalid(tag: &str, params: &[i64], reason: &str) -> RootDataError {
    RootDataError::InvalidRank {
        tag: tag.into(),
        params: params.to_vec(),
        reason: reason.into(),
    }
}

/// Tags that take one integer parameter.
pub const PARAMETRIC_TAGS: &[&str] = &["GL", "SL", "PGL", "Sp", "GSp", "SO", "Spin", "GSpin"];
/// Tags without parameters; `Xnsc` and `Xnad` are also accepted for any valid type.
pub const EXCEPTIONAL_TAGS: &[&str] = &["E6sc", "E6ad", "E7sc", "E7ad", "E8", "F4", "G2"];

/// Constructor for the named groups.
///
/// `GL(n)`, `SL(n)`, `PGL(n)` take `n`; `Sp(2n)`, `GSp(2n)`, `SO(m)`,
/// `Spin(m)`, `GSpin(m)` take the dimension of the standard representation.
pub fn build_catalog_group(tag: &str, params: &[i64]) -> Result<BasedRootDatum, RootDataError> {
    let need_one = || -> Result<usize, RootDataError> {
        match params {
            [n] if *n >= 1 => Ok(*n as usize),
            _ => Err(invalid(tag, params, "expected one positive integer")),
        }
    };
    let need_none = || -> Result<(), RootDataError> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(invalid(tag, params, "takes no parameters"))
        }
    };
    let name = if params.is_empty() {
        tag.to_string()
    } else {
        format!("{tag}({})", params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    };
    let half_even = |m: usize, min: usize| -> Result<usize, RootDataError> {
        if m % 2 != 0 || m / 2 < min {
            Err(invalid(tag, params, &format!("expected an even number >= {}", 2 * min)))
        } else {
            Ok(m / 2)
        }
    };

    let d = match tag {
        "GL" => {
            let n = need_one()?;
            BasedRootDatum {
                name,
                rank: n,
                simple_roots: (0..n - 1).map(|i| diff(n, i, i + 1)).collect(),
                simple_coroots: (0..n - 1).map(|i| diff(n, i, i + 1)).collect(),
            }
        }
        "SL" | "PGL" => {
            let n = need_one()?;
            if n < 2 {
                return Err(invalid(tag, params, "n must be at least 2"));
            }
            let c = cartan_matrix(Series::A, n - 1);
            if tag == "SL" {
                from_cartan_sc(name, &c)
            } else {
                from_cartan_adjoint(name, &c)
            }
        }
        "Sp" => {
            let n = half_even(need_one()?, 1)?;
            let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut coroots = roots.clone();
            let mut last = vec![0; n];
            last[n - 1] = 2;
            roots.push(last);
            coroots.push(unit(n, n - 1));
            BasedRootDatum { name, rank: n, simple_roots: roots, simple_coroots: coroots }
        }
        "GSp" => {
            // Z^{n+1}, index 0 is the similitude coordinate
            let n = half_even(need_one()?, 1)?;
            let r = n + 1;
            let mut roots: Vec<Vec<i64>> = (1..n).map(|i| diff(r, i, i + 1)).collect();
            let mut coroots = roots.clone();
            let mut last = vec![0; r];
            last[n] = 2;
            last[0] = -1;
            roots.push(last);
            coroots.push(unit(r, n));
            BasedRootDatum { name, rank: r, simple_roots: roots, simple_coroots: coroots }
        }
        "SO" => {
            let m = need_one()?;
            if m % 2 == 1 {
                let n = (m - 1) / 2;
                if n < 1 {
                    return Err(invalid(tag, params, "expected m >= 3"));
                }
                let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut coroots = roots.clone();
                roots.push(unit(n, n - 1));
                let mut last = vec![0; n];
                last[n - 1] = 2;
                coroots.push(last);
                BasedRootDatum { name, rank: n, simple_roots: roots, simple_coroots: coroots }
            } else {
                let n = half_even(m, 2)?;
                let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut last = vec![0; n];
                last[n - 2] = 1;
                last[n - 1] = 1;
                roots.push(last);
                BasedRootDatum { name, rank: n, simple_roots: roots.clone(), simple_coroots: roots }
            }
        }
        "Spin" => {
            let m = need_one()?;
            if m % 2 == 1 {
                if m < 3 {
                    return Err(invalid(tag, params, "expected m >= 3"));
                }
                let n = (m - 1) / 2;
                from_cartan_sc(name, &cartan_matrix(Series::B, n))
            } else {
                let n = half_even(m, 2)?;
                from_cartan_sc(name, &cartan_matrix(Series::D, n))
            }
        }
        "GSpin" => {
            let m = need_one()?;
            if m % 2 == 1 {
                let n = (m - 1) / 2;
                if n < 1 {
                    return Err(invalid(tag, params, "expected m >= 3"));
                }
                let r = n + 1;
                let mut roots: Vec<Vec<i64>> = (1..n).map(|i| diff(r, i, i + 1)).collect();
                let mut coroots = roots.clone();
                roots.push(unit(r, n));
                let mut last = vec![0; r];
                last[n] = 2;
                last[0] = -1;
                coroots.push(last);
                BasedRootDatum { name, rank: r, simple_roots: roots, simple_coroots: coroots }
            } else {
                let n = half_even(m, 2)?;
                let r = n + 1;
                let mut roots: Vec<Vec<i64>> = (1..n).map(|i| diff(r, i, i + 1)).collect();
                let mut coroots = roots.clone();
                let mut lr = vec![0; r];
                lr[n - 1] = 1;
                lr[n] = 1;
                let mut lc = lr.clone();
                lc[0] = -1;
                roots.push(lr);
                coroots.push(lc);
                BasedRootDatum { name, rank: r, simple_roots: roots, simple_coroots: coroots }
            }
        }
        "E8" | "F4" | "G2" => {
            need_none()?;
            let s = Series::from_letter(tag.chars().next().unwrap()).unwrap();
            let r = tag[1..].parse().unwrap();
            from_cartan_sc(name, &cartan_matrix(s, r))
        }
        _ => {
            need_none()?;
            let (s, r, sc) = parse_generic_tag(tag).ok_or_else(|| RootDataError::UnknownTag(tag.into()))?;
            let c = cartan_matrix(s, r);
            if sc {
                from_cartan_sc(name, &c)
            } else {
                from_cartan_adjoint(name, &c)
            }
        }
    };
    d.validate()?;
    Ok(d)
}

/// `Xnsc` / `Xnad` for a valid irreducible type, e.g. "E6sc", "D4ad", "B3sc".
pub fn parse_generic_tag(tag: &str) -> Option<(Series, usize, bool)> {
    let sc = if tag.ends_with("sc") {
        true
    } else if tag.ends_with("ad") {
        false
    } else {
        return None;
    };
    let body = &tag[..tag.len() - 2];
    let mut chars = body.chars();
    let s = Series::from_letter(chars.next()?)?;
    if !body.chars().next()?.is_ascii_uppercase() {
        return None;
    }
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    let r: usize = digits.parse().ok()?;
    if !classify::type_exists(s, r) && !(s == Series::D && r == 3) {
        return None;
    }
    Some((s, r, sc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(d: &BasedRootDatum) -> String {
        classify(d).unwrap().to_string()
    }

    #[test]
    fn sl2_convention() {
        let d = build_catalog_group("SL", &[2]).unwrap();
        assert_eq!(d.rank, 1);
        assert_eq!(d.simple_roots, vec![vec![2]]);
        assert_eq!(d.simple_coroots, vec![vec![1]]);
    }

    #[test]
    fn gl3_convention() {
        let d = build_catalog_group("GL", &[3]).unwrap();
        assert_eq!(d.rank, 3);
        assert_eq!(d.simple_roots, vec![vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(ty(&d), "A2 (torus rank 1)");
    }

    #[test]
    fn sp4_is_c2() {
        let d = build_catalog_group("Sp", &[4]).unwrap();
        // hand-written C_2: alpha_2 long
        assert_eq!(d.cartan(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(ty(&d), "C2");
    }

    #[test]
    fn golden_classification() {
        let table: &[(&str, &[i64], &str)] = &[
            ("SL", &[5], "A4"),
            ("PGL", &[4], "A3"),
            ("GL", &[1], "- (torus rank 1)"),
            ("Sp", &[8], "C4"),
            ("GSp", &[6], "C3 (torus rank 1)"),
            ("SO", &[7], "B3"),
            ("SO", &[8], "D4"),
            ("SO", &[6], "A3"),
            ("SO", &[4], "A1+A1"),
            ("Spin", &[9], "B4"),
            ("Spin", &[10], "D5"),
            ("GSpin", &[8], "D4 (torus rank 1)"),
            ("GSpin", &[7], "B3 (torus rank 1)"),
            ("E6sc", &[], "E6"),
            ("E7ad", &[], "E7"),
            ("E8", &[], "E8"),
            ("F4", &[], "F4"),
            ("G2", &[], "G2"),
            ("D4ad", &[], "D4"),
        ];
        for (tag, p, want) in table {
            let d = build_catalog_group(tag, p).unwrap();
            assert_eq!(ty(&d), *want, "{tag}{p:?}");
        }
    }

    #[test]
    fn gspin8_graph_is_d4() {
        let d = build_catalog_group("GSpin", &[8]).unwrap();
        let c = d.cartan();
        // reference D4 adjacency: a centre joined to three leaves
        let deg: Vec<usize> = (0..4).map(|i| (0..4).filter(|&j| j != i && c[i][j] != 0).count()).collect();
        let mut sorted = deg.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 1, 3]);
    }

    #[test]
    fn fundamental_groups() {
        assert!(fundamental_group(&build_catalog_group("SL", &[6]).unwrap()).is_trivial());
        assert_eq!(
            fundamental_group(&build_catalog_group("PGL", &[6]).unwrap()).invariant_factors,
            vec![6]
        );
        assert_eq!(
            fundamental_group(&build_catalog_group("D4ad", &[]).unwrap()).invariant_factors,
            vec![2, 2]
        );
        assert_eq!(
            fundamental_group(&build_catalog_group("SO", &[9]).unwrap()).invariant_factors,
            vec![2]
        );
        assert!(fundamental_group(&build_catalog_group("GSpin", &[10]).unwrap()).is_trivial());
        assert!(fundamental_group(&build_catalog_group("GSp", &[6]).unwrap()).is_trivial());
    }

    #[test]
    fn errors() {
        assert!(matches!(build_catalog_group("XY", &[]), Err(RootDataError::UnknownTag(_))));
        assert!(matches!(build_catalog_group("SL", &[1]), Err(RootDataError::InvalidRank { .. })));
        assert!(matches!(build_catalog_group("Sp", &[5]), Err(RootDataError::InvalidRank { .. })));
        assert!(matches!(build_catalog_group("E9sc", &[]), Err(RootDataError::UnknownTag(_))));
        let bad = BasedRootDatum::new("x", 1, vec![vec![1]], vec![vec![1]]);
        assert!(bad.is_err());
    }
}
