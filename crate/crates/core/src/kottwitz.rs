//! `A(G)` for split `G`: the character group of `pi_0` of the centre of the
//! dual group, and the inner forms of `GL_n` labelled by `Br(F)_n`.

use crate::rootdata::{center_torsion, BasedRootDatum, FiniteAbelianGroup};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// `pi_0(Z(G^))^D`. With `G^` built by swapping roots and coroots this is the
/// torsion of `Y / Z Phi^vee`, i.e. the torsion of `pi_1(G)`.
pub fn kottwitz_group(datum: &BasedRootDatum) -> FiniteAbelianGroup {
    center_torsion(&datum.dual())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KottwitzReport {
    pub group: FiniteAbelianGroup,
    pub order: u64,
    /// Dimension of `Z(G^)`; positive exactly when `G` has a central torus.
    pub dual_center_dim: usize,
    pub semisimple: bool,
}

pub fn kottwitz_report(datum: &BasedRootDatum) -> KottwitzReport {
    let group = kottwitz_group(datum);
    let dual_center_dim = datum.rank - datum.semisimple_rank();
    KottwitzReport {
        order: group.order(),
        group,
        dual_center_dim,
        semisimple: dual_center_dim == 0,
    }
}

/// `|A(G^ad)|`, the number of inner classes.
pub fn ad_quotient_order(datum: &BasedRootDatum) -> u64 {
    kottwitz_group(&datum.adjoint_semisimple()).order()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerFormClass {
    /// Residue `j` modulo `n`; invariant `j/n` in `Q/Z`.
    pub j: u64,
    pub n: u64,
    /// Index of the division algebra, `n / gcd(j, n)`.
    pub d: u64,
    /// Reduced numerator: `j/n = j'/d`.
    pub j_prime: u64,
}

impl InnerFormClass {
    pub fn m(&self) -> u64 {
        self.n / self.d
    }

    /// e.g. "GL_2(D_2)" or "GL_4(F)".
    pub fn describe(&self) -> String {
        if self.d == 1 {
            format!("GL_{}(F)", self.n)
        } else {
            format!("GL_{}(D_{})", self.m(), self.d)
        }
    }
}

pub fn inner_form_classes_gl(n: u64) -> Vec<InnerFormClass> {
    (0..n)
        .map(|j| {
            let g = j.gcd(&n);
            InnerFormClass {
                j,
                n,
                d: n / g,
                j_prime: j / g,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_catalog_group;

    fn order(tag: &str, p: &[i64]) -> u64 {
        kottwitz_group(&build_catalog_group(tag, p).unwrap()).order()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order("SL", &[5]), 1);
        assert_eq!(order("PGL", &[5]), 5);
        assert_eq!(order("GL", &[5]), 1);
        assert_eq!(order("E8", &[]), 1);
        assert_eq!(order("F4", &[]), 1);
        assert_eq!(order("G2", &[]), 1);
        assert_eq!(order("SO", &[8]), 2);
        assert_eq!(kottwitz_group(&build_catalog_group("D4ad", &[]).unwrap()).invariant_factors, vec![2, 2]);
    }

    #[test]
    fn adjoint_orders() {
        let sl = build_catalog_group("SL", &[6]).unwrap();
        assert_eq!(ad_quotient_order(&sl), 6);
        assert_eq!(ad_quotient_order(&build_catalog_group("Sp", &[8]).unwrap()), 2);
        assert_eq!(ad_quotient_order(&build_catalog_group("GSpin", &[10]).unwrap()), 4);
        assert_eq!(ad_quotient_order(&build_catalog_group("G2", &[]).unwrap()), 1);
    }

    #[test]
    fn gl_classes() {
        let c = inner_form_classes_gl(4);
        assert_eq!(c[2].d, 2);
        assert_eq!(c[2].describe(), "GL_2(D_2)");
        assert_eq!(c[0].describe(), "GL_4(F)");
        assert_eq!((c[3].d, c[3].j_prime), (4, 3));
        assert_eq!(inner_form_classes_gl(1).len(), 1);
    }

    #[test]
    fn non_semisimple_flag() {
        let r = kottwitz_report(&build_catalog_group("GSp", &[6]).unwrap());
        assert!(!r.semisimple);
        assert_eq!(r.order, 1);
        assert!(kottwitz_report(&build_catalog_group("Sp", &[6]).unwrap()).semisimple);
    }
}
